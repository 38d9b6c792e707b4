use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("spin j = 0 is not supported (twice_j must be at least 1)")]
    TrivialSpin,
    #[error("twice_m = {twice_m} is not a magnetic index of spin twice_j = {twice_j}")]
    InvalidMagneticIndex { twice_j: u32, twice_m: i32 },
    #[error("missing phase for twice_m = {0}")]
    MissingPhase(u32),
    #[error("unexpected phase key twice_m = {0}")]
    UnexpectedPhase(u32),
    #[error("phase for twice_m = {twice_m} is not finite: {value}")]
    NonFinitePhase { twice_m: u32, value: f64 },
    #[error("spin mismatch: expected twice_j = {expected}, found twice_j = {found}")]
    SpinMismatch { expected: u32, found: u32 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("state is not normalized (norm = {0})")]
    NotNormalized(f64),
    #[error("twice_j = {twice_j} exceeds the dense matrix limit of {limit}")]
    MatrixGuard { twice_j: u32, limit: u32 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
