//! Pure two-particle states over the `(2j+1)^2` product basis.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::vector_norm;
use crate::spin::{MagneticIndex, SpinJ};

pub const NORM_TOLERANCE: f64 = 1e-12;

/// Normalized amplitude vector. The ket `|m⟩⊗|n⟩` sits at flat index
/// `row(m) * (2j+1) + row(n)`, party A being the first factor.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState {
    spin: SpinJ,
    amplitudes: Vec<Complex64>,
}

impl BipartiteState {
    pub fn new(spin: SpinJ, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != spin.product_dim() {
            return Err(Error::DimensionMismatch {
                expected: spin.product_dim(),
                found: amplitudes.len(),
            });
        }
        let norm = vector_norm(&amplitudes);
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { spin, amplitudes })
    }

    /// `|m⟩ ⊗ |n⟩`.
    pub fn product(a: MagneticIndex, b: MagneticIndex, spin: SpinJ) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); spin.product_dim()];
        amplitudes[flat_index(spin, a, b)] = Complex64::new(1.0, 0.0);
        Self { spin, amplitudes }
    }

    pub fn spin(&self) -> SpinJ {
        self.spin
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, a: MagneticIndex, b: MagneticIndex) -> Complex64 {
        self.amplitudes[flat_index(self.spin, a, b)]
    }

    pub fn norm(&self) -> f64 {
        vector_norm(&self.amplitudes)
    }
}

pub fn flat_index(spin: SpinJ, a: MagneticIndex, b: MagneticIndex) -> usize {
    a.row() * spin.dim() + b.row()
}

/// Total-spin-zero state `Σ_m (-1)^(j-m) |m⟩⊗|-m⟩ / √(2j+1)`.
pub fn make_singlet(spin: SpinJ) -> BipartiteState {
    let scale = 1.0 / (spin.dim() as f64).sqrt();
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); spin.product_dim()];
    for m in spin.magnetic_indices() {
        amplitudes[flat_index(spin, m, m.negated())] =
            Complex64::new(m.singlet_sign() * scale, 0.0);
    }
    BipartiteState { spin, amplitudes }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(s: SpinJ, tm: i32) -> MagneticIndex {
        MagneticIndex::new(s, tm).unwrap()
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn spin_half_singlet() {
        let s = SpinJ::new(1).unwrap();
        let psi = make_singlet(s);
        assert_eq!(psi.amplitude(idx(s, 1), idx(s, -1)).re, 0.7071067811865475);
        assert_eq!(psi.amplitude(idx(s, -1), idx(s, 1)).re, -0.7071067811865475);
        assert_eq!(
            psi.amplitude(idx(s, 1), idx(s, 1)),
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn spin_one_singlet_center() {
        let s = SpinJ::new(2).unwrap();
        let psi = make_singlet(s);
        let a = psi.amplitude(idx(s, 0), idx(s, 0));
        assert!((a.re + 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((a.re + 0.5773502692).abs() < 1e-10);
    }

    #[test]
    fn singlet_is_normalized() {
        for tj in 1..=40 {
            let psi = make_singlet(SpinJ::new(tj).unwrap());
            assert!((psi.norm() - 1.0).abs() <= NORM_TOLERANCE);
        }
    }

    #[test]
    fn constructor_validates() {
        let s = SpinJ::new(1).unwrap();
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        assert!(BipartiteState::new(s, vec![one, zero, zero]).is_err());
        assert!(matches!(
            BipartiteState::new(s, vec![one, one, zero, zero]),
            Err(Error::NotNormalized(_))
        ));
        assert!(BipartiteState::new(s, vec![zero, one, zero, zero]).is_ok());
    }
}
