//! CHSH inequality for two spin-j particles.
//!
//! Each observable flips `|m⟩ ↔ |-m⟩` on one particle with an antisymmetric
//! phase, which makes it Hermitian, unitary and dichotomic. On the singlet
//! the CHSH expectation has a closed form in the phases; this crate
//! evaluates it, cross-checks it against brute-force linear algebra on the
//! `(2j+1)^2` product space, and searches for the maximal violation.

pub mod chsh;
pub mod error;
pub mod lhv;
pub mod matrix;
pub mod operators;
pub mod optimizer;
pub mod phase;
pub mod spin;
pub mod state;

pub use chsh::{
    chsh_expectation_closed_form, chsh_expectation_matrix, chsh_operator, correlator_closed_form,
    spectral_norm, CorrelatorReport, MATRIX_GUARD, TSIRELSON_BOUND,
};
pub use error::{Error, Result};
pub use lhv::{chsh_of_strategy, lhv_bound, DeterministicStrategy};
pub use matrix::ComplexMatrix;
pub use operators::{
    embed, observable_matrix, spin_component_matrices, total_spin_matrices, Party,
};
pub use optimizer::{
    analytic_optimum, gradient_ascent, grid_search, violation_curve, AscentOptions, Method,
    OptimizationResult,
};
pub use phase::{canonical_phase, ChshSetting, PhaseProfile, Slot};
pub use spin::{MagneticIndex, SpinJ};
pub use state::{make_singlet, BipartiteState};
