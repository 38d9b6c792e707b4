//! Local deterministic strategies and the classical CHSH bound.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Pre-assigned outcomes `a₁, a₂, b₁, b₂ ∈ {-1, +1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DeterministicStrategy {
    pub a1: i8,
    pub a2: i8,
    pub b1: i8,
    pub b2: i8,
}

impl DeterministicStrategy {
    /// Returns `None` unless every outcome is ±1.
    pub fn new(a1: i8, a2: i8, b1: i8, b2: i8) -> Option<Self> {
        [a1, a2, b1, b2]
            .iter()
            .all(|v| v.abs() == 1)
            .then_some(Self { a1, a2, b1, b2 })
    }

    /// All 16 strategies.
    pub fn all() -> impl Iterator<Item = Self> {
        (0u8..16).map(|bits| {
            let pick = |k: u8| if bits >> k & 1 == 1 { -1 } else { 1 };
            Self {
                a1: pick(3),
                a2: pick(2),
                b1: pick(1),
                b2: pick(0),
            }
        })
    }
}

pub fn chsh_of_strategy(s: DeterministicStrategy) -> i32 {
    let [a1, a2, b1, b2] = [s.a1, s.a2, s.b1, s.b2].map(i32::from);
    a1 * b1 + a2 * b1 + a1 * b2 - a2 * b2
}

/// Maximum of `|CHSH|` over deterministic strategies, enumerated exactly.
pub fn lhv_bound() -> f64 {
    let best = DeterministicStrategy::all()
        .map(|s| chsh_of_strategy(s).abs())
        .max()
        .expect("16 strategies");
    f64::from(best)
}

/// CHSH values of `samples` random mixtures of the 16 strategies, with
/// weights from normalized exponential draws (uniform on the simplex).
pub fn mixture_values(samples: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values: Vec<f64> = DeterministicStrategy::all()
        .map(|s| f64::from(chsh_of_strategy(s)))
        .collect();
    (0..samples)
        .map(|_| {
            let w: Vec<f64> = values
                .iter()
                .map(|_| -(1.0 - rng.random::<f64>()).ln())
                .collect();
            let total: f64 = w.iter().sum();
            w.iter().zip(&values).map(|(wi, v)| wi * v).sum::<f64>() / total
        })
        .collect()
}
