//! Subcommand implementations. Each returns its standard output as a
//! string so that the binary and the tests share one code path.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use spinj_chsh::matrix::vector_norm;
use spinj_chsh::optimizer::DEFAULT_GRID_STEPS;
use spinj_chsh::{
    analytic_optimum, chsh_expectation_closed_form, chsh_expectation_matrix, embed,
    gradient_ascent, grid_search, lhv_bound, make_singlet, observable_matrix, spectral_norm,
    total_spin_matrices, violation_curve, AscentOptions, ChshSetting, ComplexMatrix,
    CorrelatorReport, Party, SpinJ, MATRIX_GUARD, TSIRELSON_BOUND,
};

use crate::document::{parse_amplitudes, SettingDocument};
use crate::error::CliError;

/// Tolerance at which `expectation --method both` reports an internal inconsistency.
pub const PATH_AGREEMENT: f64 = 1e-8;
/// Distance from 2√2 below which a value counts as saturating the bound.
pub const SATURATION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(
    name = "spinj-chsh",
    version,
    about = "CHSH violation for two spin-j particles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximal violation for every spin up to a limit.
    Scan {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        twice_j_max: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Evaluate the CHSH expectation of a setting file.
    Expectation {
        #[arg(long)]
        setting: PathBuf,
        #[arg(long, value_enum, default_value_t = StateKind::Singlet, conflicts_with = "amplitudes")]
        state: StateKind,
        /// JSON array of [re, im] pairs replacing the singlet.
        #[arg(long)]
        amplitudes: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = EvalMethod::Both)]
        method: EvalMethod,
    },
    /// Search for the phases of maximal violation.
    Optimize {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        twice_j: u32,
        #[arg(long, value_enum, default_value_t = OptMethod::Analytic)]
        method: OptMethod,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 16)]
        starts: usize,
        #[arg(long, default_value_t = DEFAULT_GRID_STEPS)]
        steps: usize,
        #[arg(long, default_value_t = 10_000)]
        max_iters: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Run the operator and bound invariants on random settings.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        twice_j: u32,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StateKind {
    Singlet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalMethod {
    Closed,
    Matrix,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OptMethod {
    Analytic,
    Grid,
    Gradient,
}

/// What a command produced: standard output, plus the error that decides
/// the exit code. Some failures still carry a full report on stdout.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub error: Option<CliError>,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            error: None,
        }
    }

    fn failed(stdout: String, error: CliError) -> Self {
        Self {
            stdout,
            error: Some(error),
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(0, CliError::exit_code)
    }
}

impl From<CliError> for Outcome {
    fn from(error: CliError) -> Self {
        Self {
            stdout: String::new(),
            error: Some(error),
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Scan {
            twice_j_max,
            format,
        } => cmd_scan(twice_j_max, format).into(),
        Command::Expectation {
            setting,
            state: _,
            amplitudes,
            method,
        } => cmd_expectation(&setting, amplitudes.as_deref(), method),
        Command::Optimize {
            twice_j,
            method,
            seed,
            starts,
            steps,
            max_iters,
            tol,
        } => cmd_optimize(twice_j, method, seed, starts, steps, max_iters, tol),
        Command::Verify {
            twice_j,
            trials,
            seed,
        } => cmd_verify(twice_j, trials, seed),
    }
}

impl From<Result<String, CliError>> for Outcome {
    fn from(r: Result<String, CliError>) -> Self {
        match r {
            Ok(s) => Outcome::ok(s),
            Err(e) => e.into(),
        }
    }
}

fn spin_arg(twice_j: u32) -> Result<SpinJ, CliError> {
    SpinJ::new(twice_j).map_err(|e| CliError::Usage(e.to_string()))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

#[derive(Debug, Serialize)]
struct ScanRow {
    twice_j: u32,
    j_display: String,
    max_violation: f64,
    violates_classical: bool,
    saturates_tsirelson: bool,
}

pub fn cmd_scan(twice_j_max: u32, format: Format) -> Result<String, CliError> {
    let curve = violation_curve(twice_j_max).map_err(|e| CliError::Usage(e.to_string()))?;
    let classical = lhv_bound();
    let rows: Vec<ScanRow> = curve
        .into_iter()
        .map(|(twice_j, v)| ScanRow {
            twice_j,
            j_display: spin_arg(twice_j).expect("twice_j >= 1").j_display(),
            max_violation: v,
            violates_classical: v > classical,
            saturates_tsirelson: (v - TSIRELSON_BOUND).abs() <= SATURATION_TOLERANCE,
        })
        .collect();
    Ok(match format {
        Format::Csv => {
            let mut out = String::from(
                "twice_j,j_display,max_violation,violates_classical,saturates_tsirelson\n",
            );
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.twice_j,
                    r.j_display,
                    r.max_violation,
                    r.violates_classical,
                    r.saturates_tsirelson
                )
                .unwrap();
            }
            out
        }
        Format::Json => to_json(&json!({ "rows": rows })),
    })
}

#[derive(Debug, Serialize)]
struct ReportJson {
    correlators: [[f64; 2]; 2],
    chsh_value: f64,
    imaginary_residue: f64,
}

impl From<&CorrelatorReport> for ReportJson {
    fn from(r: &CorrelatorReport) -> Self {
        Self {
            correlators: r.values,
            chsh_value: r.chsh_value,
            imaginary_residue: r.imaginary_residue,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn cmd_expectation(
    setting_path: &Path,
    amplitudes: Option<&Path>,
    method: EvalMethod,
) -> Outcome {
    let setting = match read(setting_path).and_then(|t| SettingDocument::parse(&t)) {
        Ok(s) => s,
        Err(e) => return e.into(),
    };
    let spin = setting.spin();
    let state =
        match amplitudes {
            None => make_singlet(spin),
            Some(_) if method != EvalMethod::Matrix => return CliError::Usage(
                "the closed form holds for the singlet only; use --method matrix with --amplitudes"
                    .into(),
            )
            .into(),
            Some(path) => match read(path).and_then(|t| parse_amplitudes(&t, spin)) {
                Ok(s) => s,
                Err(e) => return e.into(),
            },
        };

    let closed = (method != EvalMethod::Matrix).then(|| chsh_expectation_closed_form(&setting));
    let matrix = if method == EvalMethod::Closed {
        None
    } else {
        match chsh_expectation_matrix(&setting, &state) {
            Ok(r) => Some(r),
            Err(e) => return CliError::Mismatch(e.to_string()).into(),
        }
    };
    let difference = closed.zip(matrix).map(|(c, m)| c.max_abs_difference(&m));

    let mut doc = json!({
        "twice_j": spin.twice_j(),
        "j_display": spin.j_display(),
        "state": if amplitudes.is_some() { "amplitudes" } else { "singlet" },
        "method": format!("{method:?}").to_lowercase(),
    });
    if let Some(c) = &closed {
        doc["closed"] = json!(ReportJson::from(c));
    }
    if let Some(m) = &matrix {
        doc["matrix"] = json!(ReportJson::from(m));
    }
    if let Some(d) = difference {
        doc["max_abs_difference"] = json!(d);
    }
    let stdout = to_json(&doc);
    match difference {
        Some(d) if d.is_nan() || d > PATH_AGREEMENT => Outcome::failed(
            stdout,
            CliError::Inconsistent(format!("closed form and matrix path differ by {d:e}")),
        ),
        _ => Outcome::ok(stdout),
    }
}

pub fn cmd_optimize(
    twice_j: u32,
    method: OptMethod,
    seed: Option<u64>,
    starts: usize,
    steps: usize,
    max_iters: usize,
    tol: f64,
) -> Outcome {
    let spin = match spin_arg(twice_j) {
        Ok(s) => s,
        Err(e) => return e.into(),
    };
    let result = match method {
        OptMethod::Analytic => Ok(analytic_optimum(spin)),
        OptMethod::Grid => grid_search(spin, steps),
        OptMethod::Gradient => {
            let Some(seed) = seed else {
                return CliError::Usage("--seed is required for --method gradient".into()).into();
            };
            gradient_ascent(
                spin,
                &AscentOptions {
                    starts,
                    seed,
                    max_iters,
                    tol,
                },
            )
        }
    };
    let result = match result {
        Ok(r) => r,
        Err(e) => return CliError::Usage(e.to_string()).into(),
    };
    let stdout = to_json(&json!({
        "twice_j": twice_j,
        "j_display": spin.j_display(),
        "method": result.method.as_str(),
        "best_value": result.best_value,
        "chsh_value": result.chsh_value,
        "iterations": result.iterations,
        "converged": result.converged,
        "setting": SettingDocument::from_setting(&result.setting),
    }));
    if result.converged {
        Outcome::ok(stdout)
    } else {
        Outcome::failed(
            stdout,
            CliError::NonConvergence(format!(
                "gradient norm above {tol:e} after {max_iters} iterations"
            )),
        )
    }
}

struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

/// Settings on which the dense eigensolve is run when `O_CHSH` is large.
const SPECTRAL_SAMPLES_LARGE: usize = 3;
/// Largest `twice_j` at which every trial gets a dense eigensolve.
const SPECTRAL_ALL_TRIALS_MAX: u32 = 12;

pub fn cmd_verify(twice_j: u32, trials: usize, seed: u64) -> Outcome {
    if twice_j > MATRIX_GUARD {
        return CliError::Usage(format!(
            "twice_j = {twice_j} exceeds the dense matrix limit of {MATRIX_GUARD}"
        ))
        .into();
    }
    let spin = match spin_arg(twice_j) {
        Ok(s) => s,
        Err(e) => return e.into(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let settings: Vec<ChshSetting> = (0..trials)
        .map(|_| ChshSetting::random(spin, &mut rng))
        .collect();
    let psi = make_singlet(spin);
    let id = ComplexMatrix::identity(spin.dim());

    let mut herm_dev: f64 = 0.0;
    let mut invol_dev: f64 = 0.0;
    let mut eig_dev: f64 = 0.0;
    let mut comm_dev: f64 = 0.0;
    let mut path_dev: f64 = 0.0;
    let mut residue: f64 = 0.0;
    let mut max_chsh: f64 = 0.0;
    for setting in &settings {
        let a: Vec<ComplexMatrix> = [&setting.alpha1, &setting.alpha2]
            .into_iter()
            .map(|p| observable_matrix(p, Party::A))
            .collect();
        let b: Vec<ComplexMatrix> = [&setting.beta1, &setting.beta2]
            .into_iter()
            .map(|p| observable_matrix(p, Party::B))
            .collect();
        for m in a.iter().chain(&b) {
            herm_dev = herm_dev.max(m.max_abs_diff(&m.adjoint()).unwrap());
            invol_dev = invol_dev.max((m * m).max_abs_diff(&id).unwrap());
            for ev in m.hermitian_eigenvalues() {
                eig_dev = eig_dev.max((ev.abs() - 1.0).abs());
            }
        }
        let eb: Vec<ComplexMatrix> = b
            .iter()
            .map(|m| embed(m, Party::B, spin).unwrap())
            .collect();
        for am in &a {
            let ea = embed(am, Party::A, spin).unwrap();
            for e in &eb {
                comm_dev = comm_dev.max(ea.commutator(e).unwrap().frobenius_norm());
            }
        }
        let closed = chsh_expectation_closed_form(setting);
        let matrix = chsh_expectation_matrix(setting, &psi).expect("matching spin");
        path_dev = path_dev.max(closed.max_abs_difference(&matrix));
        residue = residue.max(matrix.imaginary_residue);
        max_chsh = max_chsh.max(closed.chsh_value.abs());
    }

    let annihilation = total_spin_matrices(spin)
        .unwrap()
        .iter()
        .map(|op| vector_norm(&op.apply(psi.amplitudes()).unwrap()))
        .fold(0.0, f64::max);
    let norm_dev = (psi.norm() - 1.0).abs();

    let analytic = analytic_optimum(spin);
    let spectral_count = if twice_j <= SPECTRAL_ALL_TRIALS_MAX {
        settings.len()
    } else {
        settings.len().min(SPECTRAL_SAMPLES_LARGE)
    };
    let mut max_norm = spectral_norm(&analytic.setting).expect("within guard");
    for setting in &settings[..spectral_count] {
        max_norm = max_norm.max(spectral_norm(setting).expect("within guard"));
    }
    let classical = lhv_bound();

    let checks = [
        Check {
            name: "hermiticity",
            passed: herm_dev <= 1e-12,
            detail: format!("max |M - M†| = {herm_dev:e}"),
        },
        Check {
            name: "involution",
            passed: invol_dev <= 1e-12,
            detail: format!("max |M² - I| = {invol_dev:e}"),
        },
        Check {
            name: "dichotomic_spectrum",
            passed: eig_dev <= 1e-10,
            detail: format!("max ||λ| - 1| = {eig_dev:e}"),
        },
        Check {
            name: "commutation",
            passed: comm_dev <= 1e-12,
            detail: format!("max ‖[A, B]‖_F = {comm_dev:e}"),
        },
        Check {
            name: "singlet_annihilation",
            passed: annihilation <= 1e-12,
            detail: format!("max ‖S_k ψ‖ = {annihilation:e}"),
        },
        Check {
            name: "singlet_normalization",
            passed: norm_dev <= 1e-12,
            detail: format!("|‖ψ‖ - 1| = {norm_dev:e}"),
        },
        Check {
            name: "closed_vs_matrix",
            passed: path_dev <= 1e-10 && residue <= 1e-12,
            detail: format!("max discrepancy = {path_dev:e}, max imaginary residue = {residue:e}"),
        },
        Check {
            name: "tsirelson",
            passed: max_chsh <= TSIRELSON_BOUND + 1e-9 && max_norm <= TSIRELSON_BOUND + 1e-9,
            detail: format!(
                "max |⟨O⟩| = {max_chsh}, max spectral norm = {max_norm} over {} settings",
                spectral_count + 1
            ),
        },
        Check {
            name: "lhv_bound",
            passed: classical == 2.0 && analytic.best_value > classical,
            detail: format!(
                "classical bound = {classical}, analytic violation = {}",
                analytic.best_value
            ),
        },
    ];

    let mut stdout = format!("verify twice_j={twice_j} trials={trials} seed={seed}\n");
    for c in &checks {
        writeln!(
            stdout,
            "{} {} {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        )
        .unwrap();
    }
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name)
        .collect();
    if failed.is_empty() {
        Outcome::ok(stdout)
    } else {
        Outcome::failed(stdout, CliError::Verification(failed.join(", ")))
    }
}
