//! The `qsl` command line: `compute` for a single window, `scan` for sweeps.
//!
//! Exit codes: 0 success, 1 numerical failure, 2 usage or invalid
//! parameters, 3 I/O.

pub mod config;
pub mod csv;
pub mod svg;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bath::{BathKind, BathParams, GammaConvention};
use crate::qsl::{self, QslError, QslResult, QuadratureControl, ScanAxis, ScanSpec, ScanTable, Window};
use crate::qubit::BlochVector;

pub use config::{parse_config, BathSelection, OutputFormat, Overrides, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "qsl",
    version,
    about = "Quantum speed limit times for a dephasing Majorana qubit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bounds for a single window, one line per bath
    Compute(Flags),
    /// Sweep one parameter and write a CSV table (and optionally an SVG plot)
    Scan(Flags),
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct Flags {
    /// fermionic, bosonic or both
    #[arg(long)]
    bath: Option<BathSelection>,
    /// Ohmic exponent, 0 < s <= 4
    #[arg(long)]
    s: Option<f64>,
    /// magnetic field parameter B
    #[arg(long = "b")]
    b_field: Option<f64>,
    /// initial time τ
    #[arg(long)]
    tau: Option<f64>,
    /// driving time τ_D
    #[arg(long = "tau-d")]
    tau_d: Option<f64>,
    /// cutoff frequency Γ₀
    #[arg(long)]
    gamma0: Option<f64>,
    /// bosonic prefactor N_sc
    #[arg(long = "nsc")]
    n_sc: Option<f64>,
    /// bosonic short-distance scale ε
    #[arg(long)]
    epsilon: Option<f64>,
    /// Gamma argument of the fermionic coefficient: half or full
    #[arg(long = "gamma-convention")]
    convention: Option<GammaConvention>,
    /// scan axis: s, tau or b
    #[arg(long)]
    axis: Option<ScanAxis>,
    #[arg(long = "lo")]
    axis_lo: Option<f64>,
    #[arg(long = "hi")]
    axis_hi: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    /// output path of the scan table
    #[arg(long = "out")]
    out_path: Option<PathBuf>,
    /// csv, svg or both
    #[arg(long)]
    format: Option<OutputFormat>,
    /// flat `key = value` file; flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Flags {
    fn overrides(&self) -> Overrides {
        Overrides {
            bath: self.bath,
            s: self.s,
            b_field: self.b_field,
            tau: self.tau,
            tau_d: self.tau_d,
            gamma0: self.gamma0,
            n_sc: self.n_sc,
            epsilon: self.epsilon,
            convention: self.convention,
            axis: self.axis,
            axis_lo: self.axis_lo,
            axis_hi: self.axis_hi,
            points: self.points,
            out_path: self.out_path.clone(),
            format: self.format,
        }
    }
}

/// Defaults, then the config file, then flags.
fn resolve(flags: &Flags) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &flags.config {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        cfg.apply(&parse_config(&text)?);
    }
    cfg.apply(&flags.overrides());
    Ok(cfg)
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Entry point with injectable streams; returns the process exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return 2;
            }
            let _ = write!(out, "{text}");
            return 0;
        }
    };
    let outcome = match &cli.command {
        Command::Compute(flags) => resolve(flags).and_then(|cfg| cmd_compute(&cfg)),
        Command::Scan(flags) => resolve(flags).and_then(|cfg| cmd_scan(&cfg)),
    };
    match outcome {
        Ok(lines) => {
            for line in lines {
                let _ = writeln!(out, "{line}");
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn classify(e: QslError) -> CliError {
    if e.is_numerical() {
        CliError::Compute(e.to_string())
    } else {
        usage(e)
    }
}

fn params_for(cfg: &RunConfig, kind: BathKind) -> BathParams {
    BathParams::new(kind, cfg.s)
        .with_b_field(cfg.b_field)
        .with_gamma0(cfg.gamma0)
        .with_conformal(cfg.n_sc, cfg.epsilon)
        .with_convention(cfg.convention)
}

fn validate_params(cfg: &RunConfig) -> Result<Window, CliError> {
    for &kind in cfg.bath.kinds() {
        params_for(cfg, kind).validate().map_err(usage)?;
    }
    Window::new(cfg.tau, cfg.tau_d).map_err(usage)
}

/// `key=value` summary of one result.
pub fn format_result(cfg: &RunConfig, kind: BathKind, r: &QslResult) -> String {
    use csv::format_sig as g;
    format!(
        "bath={kind} s={} b={} tau={} tau_d={} tau_qsl_unified={} tau_qsl_ml={} tau_qsl_mt={} \
         alpha_tau={} alpha_target={} f_rel_purity={} ml_den={} mt_den={}",
        g(cfg.s),
        g(cfg.b_field),
        g(cfg.tau),
        g(cfg.tau_d),
        g(r.unified),
        g(r.ml),
        g(r.mt),
        g(r.alpha_at_tau),
        g(r.alpha_at_target),
        g(r.f_rel_purity),
        g(r.ml_denominator),
        g(r.mt_denominator),
    )
}

/// Results for every selected bath, maximally coherent initial state.
pub fn compute_results(cfg: &RunConfig) -> Result<Vec<(BathKind, QslResult)>, CliError> {
    let window = validate_params(cfg)?;
    let v0 = BlochVector::maximally_coherent();
    let q = QuadratureControl::default();
    cfg.bath
        .kinds()
        .iter()
        .map(|&kind| {
            Ok((
                kind,
                qsl::qsl_unified(&params_for(cfg, kind), &v0, &window, &q).map_err(classify)?,
            ))
        })
        .collect()
}

pub fn cmd_compute(cfg: &RunConfig) -> Result<Vec<String>, CliError> {
    if cfg.axis.is_some() {
        return Err(usage("compute takes no --axis; use the scan subcommand"));
    }
    Ok(compute_results(cfg)?
        .iter()
        .map(|(kind, r)| format_result(cfg, *kind, r))
        .collect())
}

/// Checks the scan endpoints as if they were single-point parameters.
fn scan_spec(cfg: &RunConfig) -> Result<ScanSpec, CliError> {
    let axis = cfg.axis.ok_or_else(|| usage("scan needs --axis (s, tau or b)"))?;
    if cfg.points < 2 {
        return Err(usage("points must be >= 2"));
    }
    let (lo, hi) = cfg.axis_range(axis);
    if !(lo < hi) {
        return Err(usage("lo must be < hi"));
    }
    for x in [lo, hi] {
        let mut probe = cfg.clone();
        match axis {
            ScanAxis::OhmicS => probe.s = x,
            ScanAxis::InitialTau => probe.tau = x,
            ScanAxis::BField => probe.b_field = x,
        }
        validate_params(&probe)?;
    }
    let spec = ScanSpec {
        axis,
        lo,
        hi,
        points: cfg.points,
    };
    spec.validate().map_err(usage)?;
    Ok(spec)
}

pub fn scan_table(cfg: &RunConfig) -> Result<ScanTable, CliError> {
    let spec = scan_spec(cfg)?;
    let mut template = cfg.clone();
    match spec.axis {
        ScanAxis::OhmicS => template.s = spec.lo,
        ScanAxis::InitialTau => template.tau = spec.lo,
        ScanAxis::BField => template.b_field = spec.lo,
    }
    let window = Window::new(template.tau, template.tau_d).map_err(usage)?;
    qsl::scan(
        &params_for(&template, BathKind::Fermionic),
        &BlochVector::maximally_coherent(),
        &window,
        &spec,
        cfg.bath.kinds(),
        &QuadratureControl::default(),
    )
    .map_err(classify)
}

/// `(csv, svg)` destinations for the configured format.
pub fn output_paths(cfg: &RunConfig) -> (Option<PathBuf>, Option<PathBuf>) {
    let p = &cfg.out_path;
    let is_svg = p.extension().is_some_and(|e| e.eq_ignore_ascii_case("svg"));
    match cfg.format {
        OutputFormat::Csv => (Some(p.clone()), None),
        OutputFormat::Svg => (None, Some(p.clone())),
        OutputFormat::Both if is_svg => (Some(p.with_extension("csv")), Some(p.clone())),
        OutputFormat::Both => (Some(p.clone()), Some(p.with_extension("svg"))),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn cmd_scan(cfg: &RunConfig) -> Result<Vec<String>, CliError> {
    let table = scan_table(cfg)?;
    let failed = table.rows.iter().filter(|r| r.result.is_err()).count();
    let (csv_path, svg_path) = output_paths(cfg);
    let mut lines = Vec::new();
    if let Some(path) = csv_path {
        write_file(&path, &csv::render_csv(&table))?;
        lines.push(format!("wrote {} rows to {}", table.rows.len(), path.display()));
    }
    if let Some(path) = svg_path {
        write_file(&path, &svg::render_svg(&table))?;
        lines.push(format!("wrote plot to {}", path.display()));
    }
    if failed > 0 {
        lines.push(format!("{failed} rows failed; see the error column"));
    }
    Ok(lines)
}
