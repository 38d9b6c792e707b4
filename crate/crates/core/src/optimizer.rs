//! Searching phase settings for the largest singlet CHSH violation.
//!
//! The singlet expectation is a sum of identical per-m blocks
//! `cos(α₁+β₁) + cos(α₂+β₁) + cos(α₁+β₂) - cos(α₂+β₂)` plus, for integer
//! spin, a phase-independent `m = 0` term. Three searches are offered: the
//! closed-form assignment, an exhaustive grid over one block, and a
//! multi-start gradient ascent over all phases jointly.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chsh::chsh_expectation_closed_form;
use crate::error::{Error, Result};
use crate::phase::{random_phase, ChshSetting, PhaseProfile};
use crate::spin::SpinJ;

/// Phases `(α₁, α₂, β₁, β₂)` applied in every positive-m slot.
pub const ANALYTIC_PHASES: [f64; 4] = [-FRAC_PI_4, FRAC_PI_4, 0.0, FRAC_PI_2];

pub const DEFAULT_GRID_STEPS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Analytic,
    Grid,
    Gradient,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Analytic => "analytic",
            Method::Grid => "grid",
            Method::Gradient => "gradient",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    pub setting: ChshSetting,
    /// `|⟨O_CHSH⟩|` at `setting`.
    pub best_value: f64,
    /// Signed `⟨O_CHSH⟩` at `setting`.
    pub chsh_value: f64,
    pub method: Method,
    pub iterations: usize,
    pub converged: bool,
}

impl OptimizationResult {
    fn evaluate(setting: ChshSetting, method: Method, iterations: usize, converged: bool) -> Self {
        let chsh_value = chsh_expectation_closed_form(&setting).chsh_value;
        Self {
            setting,
            best_value: chsh_value.abs(),
            chsh_value,
            method,
            iterations,
            converged,
        }
    }
}

/// The fixed quarter-turn assignment in every slot.
pub fn analytic_optimum(spin: SpinJ) -> OptimizationResult {
    let [a1, a2, b1, b2] = ANALYTIC_PHASES;
    let setting = ChshSetting::uniform(spin, a1, a2, b1, b2).expect("finite constant phases");
    OptimizationResult::evaluate(setting, Method::Analytic, 0, true)
}

/// `(twice_j, max violation)` for `twice_j = 1..=twice_j_max`.
pub fn violation_curve(twice_j_max: u32) -> Result<Vec<(u32, f64)>> {
    if twice_j_max == 0 {
        return Err(Error::InvalidArgument(
            "twice_j_max must be at least 1".into(),
        ));
    }
    (1..=twice_j_max)
        .map(|tj| Ok((tj, analytic_optimum(SpinJ::new(tj)?).best_value)))
        .collect()
}

/// Value of one per-m block.
pub fn block_value([a1, a2, b1, b2]: [f64; 4]) -> f64 {
    (a1 + b1).cos() + (a2 + b1).cos() + (a1 + b2).cos() - (a2 + b2).cos()
}

/// Extremes of a single block over a uniform grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockExtremes {
    pub max: (f64, [f64; 4]),
    pub min: (f64, [f64; 4]),
    pub evaluated: usize,
}

/// Exhaustive search of one block over `steps^4` points
/// `-π + 2πk/steps, k = 1..=steps`.
pub fn grid_block_extremes(steps: usize) -> BlockExtremes {
    let grid: Vec<f64> = (1..=steps)
        .map(|k| -PI + TAU * k as f64 / steps as f64)
        .collect();
    let mut max = (f64::NEG_INFINITY, [0.0; 4]);
    let mut min = (f64::INFINITY, [0.0; 4]);
    let mut evaluated = 0;
    for &a1 in &grid {
        for &a2 in &grid {
            for &b1 in &grid {
                for &b2 in &grid {
                    let p = [a1, a2, b1, b2];
                    let v = block_value(p);
                    evaluated += 1;
                    if v > max.0 {
                        max = (v, p);
                    }
                    if v < min.0 {
                        min = (v, p);
                    }
                }
            }
        }
    }
    BlockExtremes {
        max,
        min,
        evaluated,
    }
}

/// Grid search exploiting block separability.
///
/// Every positive-m block enters the objective with the same weight and the
/// same functional form, so the best block found once is the best block for
/// every slot. Both the largest and the smallest block value are kept, since
/// either sign of the total can give the larger magnitude.
pub fn grid_search(spin: SpinJ, steps_per_phase: usize) -> Result<OptimizationResult> {
    if steps_per_phase < 4 {
        return Err(Error::InvalidArgument(format!(
            "steps_per_phase must be at least 4, got {steps_per_phase}"
        )));
    }
    let ext = grid_block_extremes(steps_per_phase);
    let build = |[a1, a2, b1, b2]: [f64; 4]| ChshSetting::uniform(spin, a1, a2, b1, b2);
    let hi = OptimizationResult::evaluate(build(ext.max.1)?, Method::Grid, ext.evaluated, true);
    let lo = OptimizationResult::evaluate(build(ext.min.1)?, Method::Grid, ext.evaluated, true);
    Ok(if lo.best_value > hi.best_value {
        lo
    } else {
        hi
    })
}

/// Free phases of a setting, flattened as `[α₁ | α₂ | β₁ | β₂]`, each block
/// ordered by ascending positive `twice_m`.
pub fn setting_to_params(setting: &ChshSetting) -> Vec<f64> {
    [
        &setting.alpha1,
        &setting.alpha2,
        &setting.beta1,
        &setting.beta2,
    ]
    .iter()
    .flat_map(|p| p.positive_values().iter().copied())
    .collect()
}

pub fn params_to_setting(spin: SpinJ, params: &[f64]) -> Result<ChshSetting> {
    let k = spin.positive_count();
    if params.len() != 4 * k {
        return Err(Error::DimensionMismatch {
            expected: 4 * k,
            found: params.len(),
        });
    }
    let profile = |block: usize| {
        PhaseProfile::new(
            spin,
            spin.positive_twice_ms()
                .zip(params[block * k..].iter().copied()),
        )
    };
    ChshSetting::new(profile(0)?, profile(1)?, profile(2)?, profile(3)?)
}

fn block_params(params: &[f64], k: usize, slot: usize) -> [f64; 4] {
    [
        params[slot],
        params[k + slot],
        params[2 * k + slot],
        params[3 * k + slot],
    ]
}

/// Signed singlet CHSH value as a function of the flattened phases.
pub fn chsh_from_params(spin: SpinJ, params: &[f64]) -> f64 {
    let k = spin.positive_count();
    let blocks: f64 = (0..k)
        .map(|s| block_value(block_params(params, k, s)))
        .sum();
    let (sign, constant) = if spin.is_integer() {
        (1.0, 2.0)
    } else {
        (-1.0, 0.0)
    };
    sign * (constant + 2.0 * blocks) / spin.dim() as f64
}

/// Ascent objective `⟨O_CHSH⟩²`.
pub fn objective(spin: SpinJ, params: &[f64]) -> f64 {
    chsh_from_params(spin, params).powi(2)
}

/// Analytic gradient of [`objective`].
pub fn objective_gradient(spin: SpinJ, params: &[f64]) -> Vec<f64> {
    let k = spin.positive_count();
    let value = chsh_from_params(spin, params);
    let sign = if spin.is_integer() { 1.0 } else { -1.0 };
    // d(value²) = 2·value·d(value); d(value)/d(block) = 2·sign/(2j+1).
    let scale = 2.0 * value * 2.0 * sign / spin.dim() as f64;
    let mut grad = vec![0.0; 4 * k];
    for s in 0..k {
        let [a1, a2, b1, b2] = block_params(params, k, s);
        let (s11, s21, s12, s22) = (
            (a1 + b1).sin(),
            (a2 + b1).sin(),
            (a1 + b2).sin(),
            (a2 + b2).sin(),
        );
        grad[s] = scale * (-s11 - s12);
        grad[k + s] = scale * (-s21 + s22);
        grad[2 * k + s] = scale * (-s11 - s21);
        grad[3 * k + s] = scale * (-s12 + s22);
    }
    grad
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AscentOptions {
    pub starts: usize,
    pub seed: u64,
    pub max_iters: usize,
    /// Convergence threshold on the gradient infinity-norm.
    pub tol: f64,
}

impl Default for AscentOptions {
    fn default() -> Self {
        Self {
            starts: 16,
            seed: 0,
            max_iters: 10_000,
            tol: 1e-8,
        }
    }
}

const INITIAL_STEP: f64 = 0.5;
const ARMIJO: f64 = 1e-4;
const MIN_STEP: f64 = 1e-16;

struct Run {
    params: Vec<f64>,
    value: f64,
    iterations: usize,
    converged: bool,
}

fn ascend(spin: SpinJ, mut x: Vec<f64>, max_iters: usize, tol: f64) -> Run {
    let mut f = objective(spin, &x);
    for iter in 0..max_iters {
        let g = objective_gradient(spin, &x);
        let g_inf = g.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        if g_inf <= tol {
            return Run {
                params: x,
                value: f,
                iterations: iter,
                converged: true,
            };
        }
        let g_sq: f64 = g.iter().map(|v| v * v).sum();
        let mut step = INITIAL_STEP;
        loop {
            let trial: Vec<f64> = x.iter().zip(&g).map(|(xi, gi)| xi + step * gi).collect();
            let ft = objective(spin, &trial);
            if ft >= f + ARMIJO * step * g_sq {
                x = trial;
                f = ft;
                break;
            }
            step *= 0.5;
            if step < MIN_STEP {
                // No ascent direction left at double precision.
                return Run {
                    params: x,
                    value: f,
                    iterations: iter + 1,
                    converged: false,
                };
            }
        }
    }
    let converged = objective_gradient(spin, &x).iter().all(|v| v.abs() <= tol);
    Run {
        params: x,
        value: f,
        iterations: max_iters,
        converged,
    }
}

/// Multi-start backtracking gradient ascent on `⟨O_CHSH⟩²` over all
/// `4 × #positive-m` phases.
///
/// Starts are drawn uniformly from `(-π, π]` with a ChaCha8 generator seeded
/// by `opts.seed`. The best converged run is returned; if no run converges
/// the best run overall is returned with `converged = false`.
pub fn gradient_ascent(spin: SpinJ, opts: &AscentOptions) -> Result<OptimizationResult> {
    if opts.starts == 0 {
        return Err(Error::InvalidArgument("starts must be at least 1".into()));
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tol must be positive, got {}",
            opts.tol
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let n = 4 * spin.positive_count();
    let runs: Vec<Run> = (0..opts.starts)
        .map(|_| {
            let x0 = (0..n).map(|_| random_phase(&mut rng)).collect();
            ascend(spin, x0, opts.max_iters, opts.tol)
        })
        .collect();
    let pick = |only_converged: bool| {
        runs.iter()
            .filter(|r| r.converged || !only_converged)
            .max_by(|a, b| a.value.total_cmp(&b.value))
    };
    let best = pick(true)
        .or_else(|| pick(false))
        .expect("at least one start");
    let setting = params_to_setting(spin, &best.params)?;
    Ok(OptimizationResult::evaluate(
        setting,
        Method::Gradient,
        best.iterations,
        best.converged,
    ))
}
