//! Command-line driver: builds disentangling circuits, verifies them against
//! dense conjugation, and tabulates spectra, time evolution, thermal states,
//! and ground-state correlator scans as CSV or JSON.
//!
//! Exit codes: 0 success (and verification pass), 1 runtime or verification
//! failure, 2 argument error. All output is deterministic for fixed flags —
//! repeated runs are byte-identical. CSV floats use 17 significant digits so
//! values round-trip bit-exactly.
//!
//! The gate-convention choice (Bogoliubov angle scale, boundary-term sign,
//! occupation sign) is resolved numerically once at n = 4, cached in a
//! sidecar JSON file (`--convention-file`, default
//! `xychain-conventions.json`), and reused; `--reresolve` forces a fresh
//! resolution.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use xychain::builder::{
    build_disentangler, build_ising4, resolve_conventions, CandidateScore, ConventionChoice,
};
use xychain::dynamics::{evolve, gibbs_state, scan_correlators, Observable};
use xychain::oracle::{expm_hermitian, gibbs_oracle, trace_distance, verify_diagonalization};
use xychain::pauli::{build_xy_hamiltonian, pauli_sum_to_matrix, ModelParams};
use xychain::spectrum::{many_body_spectrum, mode_table};
use xychain::statevector::StateVector;

#[derive(Parser)]
#[command(
    name = "xychain",
    version,
    about = "Exact disentangling circuits for the XY / transverse-field Ising chain"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Common {
    /// Chain length; must be a power of two ≥ 2.
    #[arg(short, long)]
    n: usize,

    /// Transverse field λ.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    lambda: f64,

    /// Anisotropy γ (γ = 1 is the transverse-field Ising chain).
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    gamma: f64,

    /// Table format for data commands (build/verify always emit JSON).
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Cached gate-convention resolution (created on first run).
    #[arg(long, default_value = "xychain-conventions.json")]
    convention_file: PathBuf,

    /// Discard the cache and redo the n=4 convention resolution.
    #[arg(long)]
    reresolve: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the disentangling circuit and emit it with stats (JSON).
    Build {
        #[command(flatten)]
        common: Common,

        /// Emit the fused 4-qubit Ising circuit (≤ 6 two-qubit gates).
        #[arg(long)]
        ising4: bool,
    },
    /// Conjugate H through the circuit and report how diagonal it is.
    Verify {
        #[command(flatten)]
        common: Common,

        /// Pass threshold for both error measures.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Per-momentum dispersion table (or all 2^n energies with --many-body).
    Spectrum {
        #[command(flatten)]
        common: Common,

        /// Emit the full sorted many-body spectrum instead of the modes.
        #[arg(long)]
        many_body: bool,
    },
    /// Evolve a seeded random state for time t; emit the final amplitudes.
    Evolve {
        #[command(flatten)]
        common: Common,

        /// Evolution time.
        #[arg(long, allow_hyphen_values = true)]
        t: f64,

        /// Seed for the initial random state.
        #[arg(long, default_value_t = 0)]
        seed: u64,

        /// Also compare against the dense matrix exponential (exit 1 if the
        /// deviation exceeds 1e-8).
        #[arg(long)]
        check_oracle: bool,
    },
    /// Thermal state exp(-βH)/Z as a dense density matrix.
    Gibbs {
        #[command(flatten)]
        common: Common,

        /// Inverse temperature β ≥ 0.
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,

        /// Also compare against the eigendecomposition oracle (exit 1 if the
        /// trace distance exceeds 1e-8).
        #[arg(long)]
        check_oracle: bool,
    },
    /// Ground-state correlators across a λ grid.
    Scan {
        #[command(flatten)]
        common: Common,

        #[arg(long, allow_hyphen_values = true)]
        lambda_from: f64,

        #[arg(long, allow_hyphen_values = true)]
        lambda_to: f64,

        /// Number of grid points (≥ 1).
        #[arg(long, default_value_t = 41)]
        steps: usize,

        /// Comma-separated observables: xx, z, xxx, xxxx.
        #[arg(long, default_value = "xx,z")]
        observable: String,
    },
}

/// An error carrying its process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn arg(message: impl Into<String>) -> Failure {
        Failure { code: 2, message: message.into() }
    }

    fn runtime(message: impl Into<String>) -> Failure {
        Failure { code: 1, message: message.into() }
    }
}

impl From<xychain::Error> for Failure {
    fn from(e: xychain::Error) -> Failure {
        use xychain::Error::*;
        let code = match e {
            // Bad invocations: the user asked for something out of contract.
            BadChainLength(_) | TooLarge { .. } | BadTemperature(_) | BadCut { .. }
            | BadMomentum { .. } | BadOccupation { .. } | BadBasisIndex { .. } => 2,
            // Everything else is a runtime/verification failure.
            _ => 1,
        };
        let message = match e {
            BadChainLength(n) => format!("n must be a power of two (got {n})"),
            other => other.to_string(),
        };
        Failure { code, message }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::runtime(format!("i/o error: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Failure {
        Failure::runtime(format!("serialization error: {e}"))
    }
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Build { common, ising4 } => cmd_build(&common, ising4),
        Command::Verify { common, tol } => cmd_verify(&common, tol),
        Command::Spectrum { common, many_body } => cmd_spectrum(&common, many_body),
        Command::Evolve { common, t, seed, check_oracle } => {
            cmd_evolve(&common, t, seed, check_oracle)
        }
        Command::Gibbs { common, beta, check_oracle } => {
            cmd_gibbs(&common, beta, check_oracle)
        }
        Command::Scan { common, lambda_from, lambda_to, steps, observable } => {
            cmd_scan(&common, lambda_from, lambda_to, steps, &observable)
        }
    }
}

fn params_from(common: &Common) -> Result<ModelParams, Failure> {
    require_finite("--lambda", common.lambda)?;
    require_finite("--gamma", common.gamma)?;
    Ok(ModelParams::new(common.n, common.lambda, common.gamma)?)
}

fn require_finite(flag: &str, value: f64) -> Result<(), Failure> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Failure::arg(format!("{flag} must be finite (got {value})")))
    }
}

/// 17 significant digits: enough for a bit-exact f64 round-trip.
fn f17(x: f64) -> String {
    format!("{x:.16e}")
}

fn emit(common: &Common, data: String) -> Result<(), Failure> {
    match &common.out {
        Some(path) => fs::write(path, data)?,
        None => print!("{data}"),
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Convention cache
// ---------------------------------------------------------------------------

/// What the sidecar must contain to be usable; extra fields (the stored
/// resolution landscape) are informational.
#[derive(Deserialize)]
struct ConventionCache {
    choice: ConventionChoice,
}

#[derive(Serialize)]
struct ConventionCacheFull<'a> {
    probe_n: usize,
    choice: ConventionChoice,
    landscape: &'a [CandidateScore],
}

fn load_or_resolve(common: &Common) -> Result<ConventionChoice, Failure> {
    let path = &common.convention_file;
    if !common.reresolve && path.exists() {
        let text = fs::read_to_string(path)?;
        return match serde_json::from_str::<ConventionCache>(&text) {
            Ok(cache) => Ok(cache.choice),
            Err(parse) => Err(Failure::runtime(corrupted_cache_report(path, &parse))),
        };
    }
    let resolution = resolve_conventions(4).map_err(|e| Failure::runtime(e.to_string()))?;
    let full = ConventionCacheFull {
        probe_n: 4,
        choice: resolution.choice,
        landscape: &resolution.landscape,
    };
    let mut text = serde_json::to_string_pretty(&full)?;
    text.push('\n');
    fs::write(path, text)?;
    eprintln!(
        "resolved gate conventions at n=4: {}; cached in {}",
        resolution.choice,
        path.display()
    );
    Ok(resolution.choice)
}

/// A cache that exists but does not parse is a hard error (exit 1): silently
/// re-resolving could mask a convention flip between runs. The report carries
/// the fresh residual landscape so the failure is self-explanatory.
fn corrupted_cache_report(path: &std::path::Path, parse: &serde_json::Error) -> String {
    let mut msg = format!(
        "convention cache {} is corrupted ({parse}); rerun with --reresolve to rebuild it",
        path.display()
    );
    if let Ok(resolution) = resolve_conventions(4) {
        msg.push_str("\nfresh n=4 resolution residuals:");
        for score in &resolution.landscape {
            let _ = write!(
                msg,
                "\n  {}: residual {:.3e}{}",
                score.choice,
                score.residual,
                if score.pass { "  <- survivor" } else { "" }
            );
        }
    }
    msg
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct BuildOutput {
    params: ModelParams,
    convention: ConventionChoice,
    stats: xychain::circuit::CircuitStats,
    circuit: xychain::circuit::Circuit,
}

fn cmd_build(common: &Common, ising4: bool) -> Result<u8, Failure> {
    let params = params_from(common)?;
    let convention = load_or_resolve(common)?;
    let circuit = if ising4 {
        if params.n != 4 {
            return Err(Failure::arg("--ising4 requires --n 4"));
        }
        if params.gamma != 1.0 {
            return Err(Failure::arg("--ising4 requires --gamma 1"));
        }
        build_ising4(params.lambda, convention)?
    } else {
        build_disentangler(&params, convention)?.circuit
    };
    let output =
        BuildOutput { params, convention, stats: circuit.stats(), circuit };
    let mut text = serde_json::to_string_pretty(&output)?;
    text.push('\n');
    emit(common, text)?;
    Ok(0)
}

fn cmd_verify(common: &Common, tol: f64) -> Result<u8, Failure> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Failure::arg(format!("--tol must be positive and finite (got {tol})")));
    }
    let params = params_from(common)?;
    let convention = load_or_resolve(common)?;
    let h = build_xy_hamiltonian(&params, convention.boundary_sign)?;
    let dis = build_disentangler(&params, convention)?;
    let table = mode_table(&params)?;
    let report = verify_diagonalization(&dis.circuit, &h, &table, convention, &params, tol)?;
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    emit(common, text)?;
    Ok(if report.pass { 0 } else { 1 })
}

#[derive(Serialize)]
struct ModeRow {
    k: i64,
    theta: f64,
    omega: f64,
}

#[derive(Serialize)]
struct EnergyRow {
    index: usize,
    energy: f64,
}

fn cmd_spectrum(common: &Common, many_body: bool) -> Result<u8, Failure> {
    let params = params_from(common)?;
    let _ = load_or_resolve(common)?;
    let text = if many_body {
        let energies = many_body_spectrum(&params)?;
        let rows: Vec<EnergyRow> =
            energies.iter().enumerate().map(|(index, &energy)| EnergyRow { index, energy }).collect();
        match common.format {
            Format::Csv => {
                let mut out = String::from("index,energy\n");
                for r in &rows {
                    let _ = writeln!(out, "{},{}", r.index, f17(r.energy));
                }
                out
            }
            Format::Json => {
                let mut t = serde_json::to_string_pretty(&rows)?;
                t.push('\n');
                t
            }
        }
    } else {
        let table = mode_table(&params)?;
        let rows: Vec<ModeRow> =
            table.modes.iter().map(|m| ModeRow { k: m.k, theta: m.theta, omega: m.omega }).collect();
        match common.format {
            Format::Csv => {
                let mut out = String::from("k,theta,omega\n");
                for r in &rows {
                    let _ = writeln!(out, "{},{},{}", r.k, f17(r.theta), f17(r.omega));
                }
                out
            }
            Format::Json => {
                let mut t = serde_json::to_string_pretty(&rows)?;
                t.push('\n');
                t
            }
        }
    };
    emit(common, text)?;
    Ok(0)
}

#[derive(Serialize)]
struct AmplitudeRow {
    basis_index: usize,
    re: f64,
    im: f64,
}

fn cmd_evolve(common: &Common, t: f64, seed: u64, check_oracle: bool) -> Result<u8, Failure> {
    require_finite("--t", t)?;
    let params = params_from(common)?;
    let convention = load_or_resolve(common)?;
    let initial = StateVector::random_state(params.n, seed);
    let evolved = evolve(&initial, &params, t, convention)?;
    let rows: Vec<AmplitudeRow> = evolved
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(basis_index, a)| AmplitudeRow { basis_index, re: a.re, im: a.im })
        .collect();
    let text = match common.format {
        Format::Csv => {
            let mut out = String::from("basis_index,re,im\n");
            for r in &rows {
                let _ = writeln!(out, "{},{},{}", r.basis_index, f17(r.re), f17(r.im));
            }
            out
        }
        Format::Json => {
            let mut t = serde_json::to_string_pretty(&rows)?;
            t.push('\n');
            t
        }
    };
    emit(common, text)?;
    if check_oracle {
        let h = build_xy_hamiltonian(&params, convention.boundary_sign)?;
        let dense = pauli_sum_to_matrix(&h)?;
        let u_t = expm_hermitian(&dense, Complex64::new(0.0, -t))?;
        let reference = u_t.matvec(initial.amplitudes());
        let deviation = evolved
            .amplitudes()
            .iter()
            .zip(&reference)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max);
        eprintln!("max deviation vs dense matrix exponential: {deviation:.3e}");
        if deviation > 1e-8 {
            return Err(Failure::runtime(format!(
                "evolution deviates from the dense matrix exponential by {deviation:.3e} (> 1e-8)"
            )));
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct EntryRow {
    row: usize,
    col: usize,
    re: f64,
    im: f64,
}

fn cmd_gibbs(common: &Common, beta: f64, check_oracle: bool) -> Result<u8, Failure> {
    let params = params_from(common)?;
    let convention = load_or_resolve(common)?;
    let rho = gibbs_state(&params, beta, convention)?;
    let dim = 1usize << params.n;
    let mut rows = Vec::with_capacity(dim * dim);
    for row in 0..dim {
        for col in 0..dim {
            let z = rho.entries()[(row, col)];
            rows.push(EntryRow { row, col, re: z.re, im: z.im });
        }
    }
    let text = match common.format {
        Format::Csv => {
            let mut out = String::from("row,col,re,im\n");
            for r in &rows {
                let _ = writeln!(out, "{},{},{},{}", r.row, r.col, f17(r.re), f17(r.im));
            }
            out
        }
        Format::Json => {
            let mut t = serde_json::to_string_pretty(&rows)?;
            t.push('\n');
            t
        }
    };
    emit(common, text)?;
    if check_oracle {
        let h = build_xy_hamiltonian(&params, convention.boundary_sign)?;
        let dense = pauli_sum_to_matrix(&h)?;
        let reference = gibbs_oracle(&dense, beta)?;
        let distance = trace_distance(&rho, &reference)?;
        eprintln!("trace distance vs eigendecomposition oracle: {distance:.3e}");
        if distance > 1e-8 {
            return Err(Failure::runtime(format!(
                "thermal state deviates from the oracle by trace distance {distance:.3e} (> 1e-8)"
            )));
        }
    }
    Ok(0)
}

fn cmd_scan(
    common: &Common,
    lambda_from: f64,
    lambda_to: f64,
    steps: usize,
    observable: &str,
) -> Result<u8, Failure> {
    require_finite("--lambda-from", lambda_from)?;
    require_finite("--lambda-to", lambda_to)?;
    if steps < 1 {
        return Err(Failure::arg("--steps must be at least 1"));
    }
    let observables: Vec<Observable> = observable
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<Observable>().map_err(|e| Failure::arg(e.to_string())))
        .collect::<Result<_, _>>()?;
    if observables.is_empty() {
        return Err(Failure::arg("--observable must name at least one of xx, z, xxx, xxxx"));
    }
    let params = params_from(common)?;
    let convention = load_or_resolve(common)?;
    let lambdas: Vec<f64> = (0..steps)
        .map(|i| {
            if steps == 1 {
                lambda_from
            } else {
                lambda_from + (lambda_to - lambda_from) * i as f64 / (steps - 1) as f64
            }
        })
        .collect();
    let result = scan_correlators(&params, &lambdas, &observables, convention)?;
    let text = match common.format {
        Format::Csv => {
            let mut out = String::from("lambda,observable,site_i,site_j,value\n");
            for r in &result.rows {
                let site_j = r.site_j.map(|j| j.to_string()).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    f17(r.lambda),
                    r.observable,
                    r.site_i,
                    site_j,
                    f17(r.value)
                );
            }
            out
        }
        Format::Json => {
            let mut t = serde_json::to_string_pretty(&result.rows)?;
            t.push('\n');
            t
        }
    };
    emit(common, text)?;
    Ok(0)
}
