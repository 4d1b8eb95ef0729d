//! Command-line front end. `run` is process-independent so it can be driven
//! from tests; `main.rs` only maps its result to an exit code.

mod plot;

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::geometry::{zero_tetrahedron, zero_witness, BlochVector};
use crate::invariants::{eof_from_concurrence, measure, InvariantKind, LogBase};
use crate::qstate::{catalog, catalog_lookup, read_state_file, PureState};
use crate::roof::csv::{curve_csv, envelope_csv, fmt_sig};
use crate::roof::{
    build_decomposition, build_form, characteristic_curve, envelope_from_grid, reference_formula, regions,
    uniform_p_grid, uniform_phi_grid, verify_decomposition, Case, DecompositionForm, DEFAULT_PHI_POINTS,
    DEFAULT_P_POINTS,
};
use crate::tables::{measures_for, invariant_table, roof_table, concurrence_table, PAIR_LABELS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DIMENSION: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;
pub const EXIT_VERIFY: i32 = 5;

pub const THREADS_ENV: &str = "TANGLE_ROOF_THREADS";

const SWEEP_TOL: f64 = 5e-3;
const ZERO_CASE_TOL: f64 = 1e-9;
const VERIFY_TOL: f64 = 1e-9;
const RESIDUAL_TOL: f64 = 1e-10;
const INVARIANT_TOL: f64 = 1e-9;
const CONCURRENCE_TOL: f64 = 1e-6;
const TABLE_SAMPLES: usize = 21;

#[derive(Debug, Parser)]
#[command(name = "tangle-roof", version, about = "Entanglement monotones and convex roofs of rank-2 mixtures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate every applicable measure on a state file or catalog key
    Invariants {
        /// Catalog key (see `catalog`) or path to a state file
        state: String,
        /// Rescale inputs whose norm is off by more than 1e-6 instead of rejecting them
        #[arg(long)]
        allow_unnormalized: bool,
        /// Report entanglement of formation in bits instead of nats
        #[arg(long)]
        log2: bool,
    },
    /// Sample characteristic curves, build the envelope and compare to the closed form
    Sweep {
        /// Case identifier such as F1-rho1, G3-rho3 or tau3-ghzw
        case: String,
        #[command(flatten)]
        grid: GridArgs,
        /// Output directory for the CSV files
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Max tolerated |hull − reference| (default 5e-3; 1e-9 for identically-zero cases)
        #[arg(long)]
        tol: Option<f64>,
        /// Also write a generic plotting script to this path
        #[arg(long)]
        plot_script: Option<PathBuf>,
        /// Skip the (large) per-phase curve file
        #[arg(long)]
        no_curve: bool,
    },
    /// Build the optimal decomposition of a case at p and certify it
    Verify {
        case: String,
        p: f64,
        /// Force a decomposition form: spectral, phase-average, below-zero or chord
        #[arg(long)]
        form: Option<String>,
        #[arg(long, default_value_t = VERIFY_TOL)]
        tol: f64,
    },
    /// Recompute the tabulated invariants, roof formulas and concurrences
    Tables {
        #[arg(long, default_value_t = TABLE_SAMPLES)]
        samples: usize,
    },
    /// Locate a Bloch vector of span{Φ₂, W₄} relative to the zero-F1 tetrahedron
    Bloch {
        #[arg(allow_negative_numbers = true)]
        x: f64,
        #[arg(allow_negative_numbers = true)]
        y: f64,
        #[arg(allow_negative_numbers = true)]
        z: f64,
    },
    /// List the named states
    Catalog,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = DEFAULT_P_POINTS)]
    pub p_points: usize,
    #[arg(long, default_value_t = DEFAULT_PHI_POINTS)]
    pub phi_points: usize,
}

/// Validated settings shared by the commands.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub p_points: usize,
    pub phi_points: usize,
    pub tol: Option<f64>,
    pub log_base: LogBase,
}

impl RunConfig {
    pub fn new(p_points: usize, phi_points: usize, tol: Option<f64>, log_base: LogBase) -> Result<Self, CliError> {
        if p_points < 2 || phi_points < 2 {
            return Err(CliError::input(format!(
                "grid sizes must be at least 2 (got {p_points}×{phi_points})"
            )));
        }
        if let Some(t) = tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::input(format!("tolerance must be positive (got {t})")));
            }
        }
        Ok(Self {
            p_points,
            phi_points,
            tol,
            log_base,
        })
    }
}

#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(message: String) -> Self {
        Self {
            code: EXIT_INPUT,
            message,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::QubitCount { .. } | Error::OutsideSpan(_) => EXIT_DIMENSION,
            Error::UnknownCase(_) | Error::RegionMismatch { .. } | Error::FormNotUsed { .. } => EXIT_UNSUPPORTED,
            _ => EXIT_INPUT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e).into()
    }
}

/// Sizes the global rayon pool from `TANGLE_ROOF_THREADS` (unset or 0 = auto).
pub fn init_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::input(format!("{THREADS_ENV} must be a non-negative integer, got {raw:?}")))?;
    if n > 0 {
        // Fails only if a pool already exists, e.g. when called twice in-process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Runs one command, writing its report to `out`. Returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Invariants {
            state,
            allow_unnormalized,
            log2,
        } => {
            let base = if log2 { LogBase::Two } else { LogBase::Natural };
            cmd_invariants(&state, allow_unnormalized, base, out)
        }
        Command::Sweep {
            case,
            grid,
            out: dir,
            tol,
            plot_script,
            no_curve,
        } => {
            let cfg = RunConfig::new(grid.p_points, grid.phi_points, tol, LogBase::Natural)?;
            cmd_sweep(&case, &cfg, &dir, plot_script.as_deref(), !no_curve, out)
        }
        Command::Verify { case, p, form, tol } => {
            let cfg = RunConfig::new(DEFAULT_P_POINTS, DEFAULT_PHI_POINTS, Some(tol), LogBase::Natural)?;
            cmd_verify(&case, p, form.as_deref(), &cfg, out)
        }
        Command::Tables { samples } => cmd_tables(samples, out),
        Command::Bloch { x, y, z } => cmd_bloch(BlochVector::new(x, y, z), out),
        Command::Catalog => {
            for e in catalog() {
                writeln!(out, "{:<14} {} qubits  {}", e.key, e.state.num_qubits(), e.description)?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn load_state(key_or_path: &str, allow_unnormalized: bool) -> Result<(String, PureState), CliError> {
    if let Ok(named) = catalog_lookup(key_or_path) {
        return Ok((named.key.to_string(), named.state));
    }
    let path = Path::new(key_or_path);
    if !path.exists() {
        return Err(CliError::input(format!("{key_or_path:?} is neither a catalog key nor an existing file")));
    }
    Ok((key_or_path.to_string(), read_state_file(path, allow_unnormalized)?))
}

pub fn cmd_invariants(key_or_path: &str, allow_unnormalized: bool, base: LogBase, out: &mut dyn Write) -> Result<i32, CliError> {
    let (label, state) = load_state(key_or_path, allow_unnormalized)?;
    let n = state.num_qubits();
    let kinds = measures_for(n);
    if kinds.is_empty() {
        return Err(CliError {
            code: EXIT_DIMENSION,
            message: format!("no measures for {n}-qubit states (supported: 2, 3, 4)"),
        });
    }
    writeln!(out, "state {label} ({n} qubits)")?;
    for &kind in kinds {
        let v = measure(kind, &state)?;
        writeln!(out, "{:<7} {}", kind.name(), fmt_sig(v))?;
        if kind == InvariantKind::Concurrence {
            let unit = if base == LogBase::Two { "EOF[bit]" } else { "EOF[nat]" };
            writeln!(out, "{unit:<7} {}", fmt_sig(eof_from_concurrence(v.min(1.0), base)?))?;
        }
    }
    Ok(EXIT_OK)
}

fn parse_case(s: &str) -> Result<Case, CliError> {
    Ok(Case::parse(s)?)
}

pub fn cmd_sweep(
    case: &str,
    cfg: &RunConfig,
    dir: &Path,
    plot_script: Option<&Path>,
    write_curve: bool,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let case = parse_case(case)?;
    let formula = reference_formula(case)?;
    let fam = case.family();
    let grid = characteristic_curve(
        &fam,
        case.kind,
        &uniform_p_grid(cfg.p_points),
        &uniform_phi_grid(cfg.phi_points),
    )?;
    let env = envelope_from_grid(&fam, case.kind, &grid)?;
    let reference: Vec<f64> = env.p_values.iter().map(|&p| formula.value(p)).collect();
    let (dev, at) = env
        .hull_curve
        .iter()
        .zip(&reference)
        .zip(&env.p_values)
        .map(|((h, r), &p)| ((h - r).abs(), p))
        .fold((0.0, 0.0), |acc, x| if x.0 > acc.0 { x } else { acc });

    fs::create_dir_all(dir)?;
    let curve_path = dir.join(format!("{case}-curve.csv"));
    let env_path = dir.join(format!("{case}-envelope.csv"));
    if write_curve {
        let mut w = BufWriter::new(fs::File::create(&curve_path)?);
        w.write_all(curve_csv(&grid).as_bytes())?;
        w.flush()?;
        writeln!(out, "curve    {}", curve_path.display())?;
    }
    fs::write(&env_path, envelope_csv(&env, &reference))?;
    writeln!(out, "envelope {}", env_path.display())?;
    if let Some(path) = plot_script {
        fs::write(path, plot::script(&case.to_string(), &env_path))?;
        writeln!(out, "plot     {}", path.display())?;
    }

    let tol = cfg
        .tol
        .unwrap_or(if case.is_identically_zero() { ZERO_CASE_TOL } else { SWEEP_TOL });
    let breakpoints: Vec<String> = formula.breakpoints.iter().map(|&b| fmt_sig(b)).collect();
    writeln!(
        out,
        "case {case}  grid {}x{}  breakpoints [{}]  refined {}",
        cfg.p_points,
        cfg.phi_points,
        breakpoints.join(", "),
        env.refined.len()
    )?;
    let verdict = if dev <= tol { "PASS" } else { "FAIL" };
    writeln!(
        out,
        "max |hull - reference| = {} at p = {} (tol {}) {verdict}",
        fmt_sig(dev),
        fmt_sig(at),
        fmt_sig(tol)
    )?;
    Ok(if dev <= tol { EXIT_OK } else { EXIT_VERIFY })
}

fn parse_form(case: Case, name: &str) -> Result<DecompositionForm, CliError> {
    let found = regions(case)?.into_iter().map(|r| r.form).find(|f| f.name() == name);
    match found {
        Some(f) => Ok(f),
        None => {
            let known = ["spectral", "phase-average", "below-zero", "chord"];
            if let Some(&form) = known.iter().find(|k| **k == name) {
                Err(Error::FormNotUsed {
                    form,
                    case: case.to_string(),
                }
                .into())
            } else {
                Err(CliError::input(format!("unknown form {name:?}; expected one of {known:?}")))
            }
        }
    }
}

pub fn cmd_verify(case: &str, p: f64, form: Option<&str>, cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let case = parse_case(case)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(CliError::input(format!("p = {p} outside [0, 1]")));
    }
    let d = match form {
        Some(name) => build_form(case, parse_form(case, name)?, p)?,
        None => build_decomposition(case, p)?,
    };
    let v = verify_decomposition(&d, case.kind)?;
    let reference = reference_formula(case)?.value(p);
    let region = regions(case)?
        .into_iter()
        .find(|r| form.map_or(p <= r.hi, |n| r.form.name() == n))
        .map(|r| r.form.name())
        .unwrap_or("?");

    writeln!(out, "case {case}  p = {}  form {region}  terms {}", fmt_sig(p), d.len())?;
    for (k, (w, s)) in d.terms.iter().enumerate() {
        writeln!(out, "  [{k}] weight {}  {} {}", fmt_sig(*w), case.kind, fmt_sig(measure(case.kind, s)?))?;
    }
    let tol = cfg.tol.unwrap_or(VERIFY_TOL);
    let dev = (v.avg_entanglement - reference).abs();
    let pass = v.residual < RESIDUAL_TOL && dev <= tol;
    writeln!(out, "residual  {}", fmt_sig(v.residual))?;
    writeln!(out, "average   {}", fmt_sig(v.avg_entanglement))?;
    writeln!(out, "reference {}", fmt_sig(reference))?;
    writeln!(out, "{}", if pass { "PASS" } else { "FAIL" })?;
    Ok(if pass { EXIT_OK } else { EXIT_VERIFY })
}

pub fn cmd_tables(samples: usize, out: &mut dyn Write) -> Result<i32, CliError> {
    if samples < 2 {
        return Err(CliError::input(format!("need at least 2 samples, got {samples}")));
    }
    let mut ok = true;
    writeln!(out, "Four-way invariants (F1, F2, F3)")?;
    for row in invariant_table()? {
        let c: Vec<String> = row.computed.iter().map(|&v| fmt_sig(v)).collect();
        let dev = row.max_dev();
        ok &= dev <= INVARIANT_TOL;
        writeln!(out, "  {:<5} ({})  max dev {}", row.key, c.join(", "), fmt_sig(dev))?;
    }

    writeln!(out, "Roof formulas vs decompositions ({samples} samples)")?;
    for e in roof_table(samples)? {
        let pass = e.max_dev <= VERIFY_TOL && e.max_residual < RESIDUAL_TOL;
        ok &= pass;
        writeln!(
            out,
            "  {:<12} max dev {}  max residual {}",
            e.case.to_string(),
            fmt_sig(e.max_dev),
            fmt_sig(e.max_residual)
        )?;
    }

    writeln!(out, "Pair concurrences ({samples} samples)")?;
    for e in concurrence_table(samples)? {
        ok &= e.max_dev <= CONCURRENCE_TOL;
        writeln!(out, "  {:<5} {}  max dev {}", e.family.name(), e.pair, fmt_sig(e.max_dev))?;
    }
    debug_assert_eq!(PAIR_LABELS.len(), 6);
    writeln!(out, "{}", if ok { "PASS" } else { "FAIL" })?;
    Ok(if ok { EXIT_OK } else { EXIT_VERIFY })
}

pub fn cmd_bloch(r: BlochVector, out: &mut dyn Write) -> Result<i32, CliError> {
    if !r.r.iter().all(|c| c.is_finite()) || r.norm() > 1.0 + crate::geometry::FACE_TOL {
        return Err(CliError::input(format!("|r| = {} exceeds 1", fmt_sig(r.norm()))));
    }
    let t = zero_tetrahedron();
    if !t.contains(&r)? {
        writeln!(out, "outside")?;
        return Ok(EXIT_OK);
    }
    let bary = t.barycentric(&r)?;
    let names = ["W4", "Z2(p0,0)", "Z2(p0,2pi/3)", "Z2(p0,4pi/3)"];
    writeln!(out, "inside")?;
    for (name, w) in names.iter().zip(bary) {
        writeln!(out, "  {name:<13} {}", fmt_sig(w.max(0.0)))?;
    }
    let d = zero_witness(&t, &r)?;
    let v = verify_decomposition(&d, InvariantKind::F1)?;
    writeln!(out, "residual   {}", fmt_sig(v.residual))?;
    writeln!(out, "avg_F1     {}", fmt_sig(v.avg_entanglement))?;
    Ok(EXIT_OK)
}
