//! The CHSH operator on the singlet: closed form, brute-force matrix path,
//! and the operator norm.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{inner, ComplexMatrix};
use crate::operators::{embed, observable_matrix, Party};
use crate::phase::{ChshSetting, Slot};
use crate::state::BipartiteState;

/// Largest `twice_j` for which dense eigensolving of `O_CHSH` is attempted.
pub const MATRIX_GUARD: u32 = 40;

pub const TSIRELSON_BOUND: f64 = 2.0 * std::f64::consts::SQRT_2;

/// The four correlators `⟨A_i B_j⟩` and their CHSH combination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelatorReport {
    /// `values[i-1][j-1] = ⟨A_i B_j⟩`.
    pub values: [[f64; 2]; 2],
    /// `⟨A₁B₁⟩ + ⟨A₂B₁⟩ + ⟨A₁B₂⟩ - ⟨A₂B₂⟩`.
    pub chsh_value: f64,
    /// Largest imaginary part seen among the quadratic forms; zero for the
    /// closed form, which is real by construction.
    pub imaginary_residue: f64,
}

impl CorrelatorReport {
    pub fn correlator(&self, a: Slot, b: Slot) -> f64 {
        self.values[a.idx()][b.idx()]
    }

    /// Largest absolute difference over the correlators and the CHSH value.
    pub fn max_abs_difference(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .flatten()
            .zip(other.values.iter().flatten())
            .map(|(x, y)| (x - y).abs())
            .fold((self.chsh_value - other.chsh_value).abs(), f64::max)
    }
}

fn chsh_combination(values: &[[f64; 2]; 2]) -> f64 {
    values[0][0] + values[1][0] + values[0][1] - values[1][1]
}

/// `⟨ψ_s|A_i B_j|ψ_s⟩ = ((-1)^{2j} / (2j+1)) Σ_m cos(α_i(m) + β_j(m))`.
pub fn correlator_closed_form(setting: &ChshSetting, a: Slot, b: Slot) -> f64 {
    let spin = setting.spin();
    let (alpha, beta) = (setting.alpha(a), setting.beta(b));
    let sum: f64 = spin
        .magnetic_indices()
        .map(|m| (alpha.phase(m) + beta.phase(m)).cos())
        .sum();
    let sign = if spin.is_integer() { 1.0 } else { -1.0 };
    sign * sum / spin.dim() as f64
}

pub fn chsh_expectation_closed_form(setting: &ChshSetting) -> CorrelatorReport {
    let mut values = [[0.0; 2]; 2];
    for a in Slot::BOTH {
        for b in Slot::BOTH {
            values[a.idx()][b.idx()] = correlator_closed_form(setting, a, b);
        }
    }
    CorrelatorReport {
        values,
        chsh_value: chsh_combination(&values),
        imaginary_residue: 0.0,
    }
}

struct Embedded {
    a: [ComplexMatrix; 2],
    b: [ComplexMatrix; 2],
}

fn embedded_observables(setting: &ChshSetting) -> Result<Embedded> {
    let spin = setting.spin();
    let one = |slot, party| -> Result<ComplexMatrix> {
        let profile = match party {
            Party::A => setting.alpha(slot),
            Party::B => setting.beta(slot),
        };
        embed(&observable_matrix(profile, party), party, spin)
    };
    Ok(Embedded {
        a: [one(Slot::One, Party::A)?, one(Slot::Two, Party::A)?],
        b: [one(Slot::One, Party::B)?, one(Slot::Two, Party::B)?],
    })
}

/// Brute-force `⟨ψ|A_i B_j|ψ⟩` and `⟨ψ|O_CHSH|ψ⟩` in full complex arithmetic
/// on the product space.
pub fn chsh_expectation_matrix(
    setting: &ChshSetting,
    state: &BipartiteState,
) -> Result<CorrelatorReport> {
    if state.spin() != setting.spin() {
        return Err(Error::SpinMismatch {
            expected: setting.spin().twice_j(),
            found: state.spin().twice_j(),
        });
    }
    let ops = embedded_observables(setting)?;
    let psi = state.amplitudes();
    let b_psi = [ops.b[0].apply(psi)?, ops.b[1].apply(psi)?];

    let mut values = [[0.0; 2]; 2];
    let mut residue: f64 = 0.0;
    for (i, a) in ops.a.iter().enumerate() {
        for (j, bv) in b_psi.iter().enumerate() {
            let z = inner(psi, &a.apply(bv)?);
            values[i][j] = z.re;
            residue = residue.max(z.im.abs());
        }
    }

    // O ψ = A₁(B₁ + B₂)ψ + A₂(B₁ - B₂)ψ, evaluated without going through the
    // correlators above.
    let sum: Vec<Complex64> = b_psi[0].iter().zip(&b_psi[1]).map(|(x, y)| x + y).collect();
    let diff: Vec<Complex64> = b_psi[0].iter().zip(&b_psi[1]).map(|(x, y)| x - y).collect();
    let o_psi: Vec<Complex64> = ops.a[0]
        .apply(&sum)?
        .iter()
        .zip(ops.a[1].apply(&diff)?)
        .map(|(x, y)| x + y)
        .collect();
    let chsh = inner(psi, &o_psi);
    residue = residue.max(chsh.im.abs());

    Ok(CorrelatorReport {
        values,
        chsh_value: chsh.re,
        imaginary_residue: residue,
    })
}

/// `O_CHSH = (A₁ + A₂)B₁ + (A₁ - A₂)B₂` on the product space, formed from the
/// embedded observables.
pub fn chsh_operator(setting: &ChshSetting) -> Result<ComplexMatrix> {
    let ops = embedded_observables(setting)?;
    let plus = &ops.a[0] + &ops.a[1];
    let minus = &ops.a[0] - &ops.a[1];
    Ok(&(&plus * &ops.b[0]) + &(&minus * &ops.b[1]))
}

/// Largest absolute eigenvalue of `O_CHSH`, by dense Hermitian eigensolve.
pub fn spectral_norm(setting: &ChshSetting) -> Result<f64> {
    let twice_j = setting.spin().twice_j();
    if twice_j > MATRIX_GUARD {
        return Err(Error::MatrixGuard {
            twice_j,
            limit: MATRIX_GUARD,
        });
    }
    let o = chsh_operator(setting)?;
    Ok(o.hermitian_eigenvalues()
        .into_iter()
        .map(f64::abs)
        .fold(0.0, f64::max))
}
