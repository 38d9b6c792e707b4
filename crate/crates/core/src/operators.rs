//! Matrix representations: the phase observables, their embedding into the
//! product space, and single-particle spin matrices.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::phase::PhaseProfile;
use crate::spin::SpinJ;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Party {
    A,
    B,
}

/// Single-party matrix of the observable defined by `profile`.
///
/// Party A maps `|-m⟩ → e^{iα_m} |m⟩`; party B maps `|-n⟩ → e^{-iβ_n} |n⟩`.
/// Both are anti-diagonal in the ascending-m basis.
pub fn observable_matrix(profile: &PhaseProfile, party: Party) -> ComplexMatrix {
    let spin = profile.spin();
    let sign = match party {
        Party::A => 1.0,
        Party::B => -1.0,
    };
    let mut out = ComplexMatrix::zeros(spin.dim());
    for m in spin.magnetic_indices() {
        out.set(
            m.row(),
            m.negated().row(),
            Complex64::from_polar(1.0, sign * profile.phase(m)),
        );
    }
    out
}

/// `M ⊗ I` for party A, `I ⊗ M` for party B.
pub fn embed(one_party: &ComplexMatrix, party: Party, spin: SpinJ) -> Result<ComplexMatrix> {
    if one_party.dim() != spin.dim() {
        return Err(Error::DimensionMismatch {
            expected: spin.dim(),
            found: one_party.dim(),
        });
    }
    let id = ComplexMatrix::identity(spin.dim());
    Ok(match party {
        Party::A => one_party.kron(&id),
        Party::B => id.kron(one_party),
    })
}

/// Single-particle `(S_x, S_y, S_z)` with ħ = 1, ascending-m basis.
pub fn spin_component_matrices(spin: SpinJ) -> (ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    let n = spin.dim();
    let tj = i64::from(spin.twice_j());
    let mut raise = ComplexMatrix::zeros(n);
    let mut sz = ComplexMatrix::zeros(n);
    for m in spin.magnetic_indices() {
        sz.set(m.row(), m.row(), Complex64::new(m.m(), 0.0));
        if m.row() + 1 < n {
            // ⟨m+1|S+|m⟩ = √(j(j+1) - m(m+1)), written in twice-values.
            let tm = i64::from(m.twice_m());
            let k = (tj * (tj + 2) - tm * (tm + 2)) as f64 / 4.0;
            raise.set(m.row() + 1, m.row(), Complex64::new(k.sqrt(), 0.0));
        }
    }
    let lower = raise.adjoint();
    let sx = (&raise + &lower).scale(Complex64::new(0.5, 0.0));
    let sy = (&raise - &lower).scale(Complex64::new(0.0, -0.5));
    (sx, sy, sz)
}

/// Total spin components `S_k ⊗ I + I ⊗ S_k` on the product space.
pub fn total_spin_matrices(spin: SpinJ) -> Result<[ComplexMatrix; 3]> {
    let (sx, sy, sz) = spin_component_matrices(spin);
    let total = |s: &ComplexMatrix| -> Result<ComplexMatrix> {
        Ok(&embed(s, Party::A, spin)? + &embed(s, Party::B, spin)?)
    };
    Ok([total(&sx)?, total(&sy)?, total(&sz)?])
}
