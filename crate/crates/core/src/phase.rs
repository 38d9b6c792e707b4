//! Antisymmetric phase profiles and the four-profile CHSH setting.

use std::f64::consts::{PI, TAU};

use rand::Rng;

use crate::error::{Error, Result};
use crate::spin::{MagneticIndex, SpinJ};

/// Reduces a finite angle to `(-π, π]`.
pub fn canonical_phase(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Draws a phase uniformly from `(-π, π]`.
pub fn random_phase<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // random::<f64>() is in [0, 1), so PI - TAU * u is in (-π, π].
    PI - TAU * rng.random::<f64>()
}

/// Phases `(α)_m` of one observable.
///
/// Only strictly positive `m` are stored; `phase(-m) = -phase(m)` and, for
/// integer spin, `phase(0) = 0` follow from the representation.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseProfile {
    spin: SpinJ,
    // Indexed by position in `spin.positive_twice_ms()`.
    positive: Vec<f64>,
}

impl PhaseProfile {
    /// Builds a profile from `(twice_m, phase)` pairs. Every positive slot
    /// must be given exactly once.
    pub fn new(spin: SpinJ, phases: impl IntoIterator<Item = (u32, f64)>) -> Result<Self> {
        let mut slots: Vec<Option<f64>> = vec![None; spin.positive_count()];
        for (twice_m, value) in phases {
            let k = Self::slot(spin, twice_m).ok_or(Error::UnexpectedPhase(twice_m))?;
            if !value.is_finite() {
                return Err(Error::NonFinitePhase { twice_m, value });
            }
            if slots[k].replace(canonical_phase(value)).is_some() {
                return Err(Error::UnexpectedPhase(twice_m));
            }
        }
        let positive = spin
            .positive_twice_ms()
            .zip(slots)
            .map(|(twice_m, v)| v.ok_or(Error::MissingPhase(twice_m)))
            .collect::<Result<_>>()?;
        Ok(Self { spin, positive })
    }

    pub fn from_fn(spin: SpinJ, mut f: impl FnMut(u32) -> f64) -> Result<Self> {
        Self::new(spin, spin.positive_twice_ms().map(|tm| (tm, f(tm))))
    }

    /// The same phase in every positive slot.
    pub fn uniform(spin: SpinJ, value: f64) -> Result<Self> {
        Self::from_fn(spin, |_| value)
    }

    pub fn zero(spin: SpinJ) -> Self {
        Self {
            spin,
            positive: vec![0.0; spin.positive_count()],
        }
    }

    pub fn random<R: Rng + ?Sized>(spin: SpinJ, rng: &mut R) -> Self {
        let positive = (0..spin.positive_count())
            .map(|_| random_phase(rng))
            .collect();
        Self { spin, positive }
    }

    fn slot(spin: SpinJ, twice_m: u32) -> Option<usize> {
        let first = if spin.is_integer() { 2 } else { 1 };
        (twice_m >= first && twice_m <= spin.twice_j() && (twice_m - first).is_multiple_of(2))
            .then(|| ((twice_m - first) / 2) as usize)
    }

    pub fn spin(&self) -> SpinJ {
        self.spin
    }

    /// Phase at any magnetic index, extended by antisymmetry.
    pub fn phase(&self, m: MagneticIndex) -> f64 {
        let tm = m.twice_m();
        match Self::slot(self.spin, tm.unsigned_abs()) {
            Some(k) if tm > 0 => self.positive[k],
            Some(k) => -self.positive[k],
            None => 0.0,
        }
    }

    /// Stored `(twice_m, phase)` pairs, ascending in `twice_m`.
    pub fn positive_phases(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.spin
            .positive_twice_ms()
            .zip(self.positive.iter().copied())
    }

    pub fn positive_values(&self) -> &[f64] {
        &self.positive
    }
}

/// Which of the two observables on a side: `A₁`/`A₂` or `B₁`/`B₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    One,
    Two,
}

impl Slot {
    pub const BOTH: [Slot; 2] = [Slot::One, Slot::Two];

    /// 1-based label.
    pub fn label(self) -> usize {
        match self {
            Slot::One => 1,
            Slot::Two => 2,
        }
    }

    pub(crate) fn idx(self) -> usize {
        self.label() - 1
    }
}

/// The four profiles defining `A₁, A₂, B₁, B₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChshSetting {
    pub alpha1: PhaseProfile,
    pub alpha2: PhaseProfile,
    pub beta1: PhaseProfile,
    pub beta2: PhaseProfile,
}

impl ChshSetting {
    pub fn new(
        alpha1: PhaseProfile,
        alpha2: PhaseProfile,
        beta1: PhaseProfile,
        beta2: PhaseProfile,
    ) -> Result<Self> {
        let expected = alpha1.spin();
        for p in [&alpha2, &beta1, &beta2] {
            if p.spin() != expected {
                return Err(Error::SpinMismatch {
                    expected: expected.twice_j(),
                    found: p.spin().twice_j(),
                });
            }
        }
        Ok(Self {
            alpha1,
            alpha2,
            beta1,
            beta2,
        })
    }

    pub fn zero(spin: SpinJ) -> Self {
        let z = PhaseProfile::zero(spin);
        Self {
            alpha1: z.clone(),
            alpha2: z.clone(),
            beta1: z.clone(),
            beta2: z,
        }
    }

    /// Same four constants in every positive-m slot.
    pub fn uniform(spin: SpinJ, alpha1: f64, alpha2: f64, beta1: f64, beta2: f64) -> Result<Self> {
        Self::new(
            PhaseProfile::uniform(spin, alpha1)?,
            PhaseProfile::uniform(spin, alpha2)?,
            PhaseProfile::uniform(spin, beta1)?,
            PhaseProfile::uniform(spin, beta2)?,
        )
    }

    pub fn random<R: Rng + ?Sized>(spin: SpinJ, rng: &mut R) -> Self {
        Self {
            alpha1: PhaseProfile::random(spin, rng),
            alpha2: PhaseProfile::random(spin, rng),
            beta1: PhaseProfile::random(spin, rng),
            beta2: PhaseProfile::random(spin, rng),
        }
    }

    pub fn spin(&self) -> SpinJ {
        self.alpha1.spin()
    }

    pub fn alpha(&self, slot: Slot) -> &PhaseProfile {
        match slot {
            Slot::One => &self.alpha1,
            Slot::Two => &self.alpha2,
        }
    }

    pub fn beta(&self, slot: Slot) -> &PhaseProfile {
        match slot {
            Slot::One => &self.beta1,
            Slot::Two => &self.beta2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spin(tj: u32) -> SpinJ {
        SpinJ::new(tj).unwrap()
    }

    #[test]
    fn canonicalization_endpoints() {
        assert_eq!(canonical_phase(PI), PI);
        assert_eq!(canonical_phase(-PI), PI);
        assert_eq!(canonical_phase(0.0), 0.0);
        assert!((canonical_phase(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn missing_and_extra_keys_are_rejected() {
        let s = spin(3);
        assert_eq!(
            PhaseProfile::new(s, [(1, 0.1)]),
            Err(Error::MissingPhase(3))
        );
        assert_eq!(
            PhaseProfile::new(s, [(1, 0.1), (3, 0.2), (2, 0.0)]),
            Err(Error::UnexpectedPhase(2))
        );
        assert_eq!(
            PhaseProfile::new(s, [(1, 0.1), (1, 0.2), (3, 0.0)]),
            Err(Error::UnexpectedPhase(1))
        );
        assert!(matches!(
            PhaseProfile::new(s, [(1, f64::NAN), (3, 0.0)]),
            Err(Error::NonFinitePhase { twice_m: 1, .. })
        ));
    }

    #[test]
    fn integer_spin_zero_phase() {
        let s = spin(2);
        let p = PhaseProfile::uniform(s, 1.0).unwrap();
        assert_eq!(p.phase(MagneticIndex::new(s, 0).unwrap()), 0.0);
        assert_eq!(p.phase(MagneticIndex::new(s, -2).unwrap()), -1.0);
    }

    #[test]
    fn setting_requires_common_spin() {
        let a = PhaseProfile::zero(spin(1));
        let b = PhaseProfile::zero(spin(2));
        assert!(ChshSetting::new(a.clone(), a.clone(), a, b).is_err());
    }

    proptest! {
        #[test]
        fn canonical_phase_is_in_range_and_equivalent(x in -1e3f64..1e3) {
            let c = canonical_phase(x);
            prop_assert!(c > -PI && c <= PI);
            prop_assert!((c.sin() - x.sin()).abs() < 1e-9);
            prop_assert!((c.cos() - x.cos()).abs() < 1e-9);
        }

        #[test]
        fn profiles_are_antisymmetric(tj in 1u32..20, seed in any::<u64>()) {
            use rand::SeedableRng;
            let s = spin(tj);
            let p = PhaseProfile::random(s, &mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            for m in s.magnetic_indices() {
                prop_assert_eq!(p.phase(m.negated()), -p.phase(m));
                prop_assert!(p.phase(m) > -PI && p.phase(m) <= PI);
            }
        }
    }
}
