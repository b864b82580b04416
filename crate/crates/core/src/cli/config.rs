//! Run configuration: defaults, `key = value` files and flag overrides.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::bath::{BathKind, GammaConvention};
use crate::qsl::ScanAxis;

use super::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BathSelection {
    Fermionic,
    Bosonic,
    Both,
}

impl BathSelection {
    pub fn kinds(&self) -> &'static [BathKind] {
        match self {
            BathSelection::Fermionic => &[BathKind::Fermionic],
            BathSelection::Bosonic => &[BathKind::Bosonic],
            BathSelection::Both => &BathKind::ALL,
        }
    }
}

impl FromStr for BathSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "both" => Ok(BathSelection::Both),
            other => match other.parse::<BathKind>()? {
                BathKind::Fermionic => Ok(BathSelection::Fermionic),
                BathKind::Bosonic => Ok(BathSelection::Bosonic),
            },
        }
    }
}

impl fmt::Display for BathSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BathSelection::Fermionic => "fermionic",
            BathSelection::Bosonic => "bosonic",
            BathSelection::Both => "both",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Svg,
    Both,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "svg" => Ok(OutputFormat::Svg),
            "both" => Ok(OutputFormat::Both),
            other => Err(format!("unknown format '{other}' (expected csv, svg or both)")),
        }
    }
}

/// Fully resolved parameters for one invocation.
///
/// Times are in units of 1/Γ₀.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub bath: BathSelection,
    pub s: f64,
    pub b_field: f64,
    pub tau: f64,
    pub tau_d: f64,
    pub gamma0: f64,
    pub n_sc: f64,
    pub epsilon: f64,
    pub convention: GammaConvention,
    pub axis: Option<ScanAxis>,
    pub axis_lo: Option<f64>,
    pub axis_hi: Option<f64>,
    pub points: usize,
    pub out_path: PathBuf,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            bath: BathSelection::Both,
            s: 1.0,
            b_field: 0.4,
            tau: 1.0,
            tau_d: 1.0,
            gamma0: 1.0,
            n_sc: 1.0,
            epsilon: 1.0,
            convention: GammaConvention::HalfArg,
            axis: None,
            axis_lo: None,
            axis_hi: None,
            points: 100,
            out_path: PathBuf::from("qsl_scan.csv"),
            format: OutputFormat::Csv,
        }
    }
}

impl RunConfig {
    pub fn apply(&mut self, o: &Overrides) {
        macro_rules! take {
            ($($field:ident),*) => {
                $(if let Some(v) = &o.$field { self.$field = v.clone(); })*
            };
        }
        take!(bath, s, b_field, tau, tau_d, gamma0, n_sc, epsilon, convention, points, out_path, format);
        if o.axis.is_some() {
            self.axis = o.axis;
        }
        if o.axis_lo.is_some() {
            self.axis_lo = o.axis_lo;
        }
        if o.axis_hi.is_some() {
            self.axis_hi = o.axis_hi;
        }
    }

    /// `(lo, hi)` for the configured axis, falling back to the default ranges.
    pub fn axis_range(&self, axis: ScanAxis) -> (f64, f64) {
        let (lo, hi) = match axis {
            ScanAxis::OhmicS => (0.05, 3.0),
            ScanAxis::InitialTau => (0.0, 10.0),
            ScanAxis::BField => (0.0, 1.0),
        };
        (self.axis_lo.unwrap_or(lo), self.axis_hi.unwrap_or(hi))
    }
}

/// A partial [`RunConfig`], as read from a file or the command line.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub bath: Option<BathSelection>,
    pub s: Option<f64>,
    pub b_field: Option<f64>,
    pub tau: Option<f64>,
    pub tau_d: Option<f64>,
    pub gamma0: Option<f64>,
    pub n_sc: Option<f64>,
    pub epsilon: Option<f64>,
    pub convention: Option<GammaConvention>,
    pub axis: Option<ScanAxis>,
    pub axis_lo: Option<f64>,
    pub axis_hi: Option<f64>,
    pub points: Option<usize>,
    pub out_path: Option<PathBuf>,
    pub format: Option<OutputFormat>,
}

fn parse_value<T: FromStr>(line: usize, key: &str, raw: &str) -> Result<T, CliError> {
    raw.parse()
        .map_err(|_| CliError::Usage(format!("config line {line}: invalid value for {key}: '{raw}'")))
}

/// Parses a flat `key = value` file. `#` starts a comment; keys accept
/// `-` or `_` and the long flag names.
pub fn parse_config(text: &str) -> Result<Overrides, CliError> {
    let mut o = Overrides::default();
    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(CliError::Usage(format!("config line {line}: expected 'key = value'")));
        };
        let key = key.trim().to_ascii_lowercase().replace('-', "_");
        let value = value.trim();
        match key.as_str() {
            "bath" => o.bath = Some(parse_value(line, &key, value)?),
            "s" => o.s = Some(parse_value(line, &key, value)?),
            "b" | "b_field" => o.b_field = Some(parse_value(line, &key, value)?),
            "tau" => o.tau = Some(parse_value(line, &key, value)?),
            "tau_d" => o.tau_d = Some(parse_value(line, &key, value)?),
            "gamma0" => o.gamma0 = Some(parse_value(line, &key, value)?),
            "nsc" | "n_sc" => o.n_sc = Some(parse_value(line, &key, value)?),
            "epsilon" => o.epsilon = Some(parse_value(line, &key, value)?),
            "gamma_convention" | "fermi_gamma_convention" => o.convention = Some(parse_value(line, &key, value)?),
            "axis" => o.axis = Some(parse_value(line, &key, value)?),
            "lo" | "axis_lo" => o.axis_lo = Some(parse_value(line, &key, value)?),
            "hi" | "axis_hi" => o.axis_hi = Some(parse_value(line, &key, value)?),
            "points" => o.points = Some(parse_value(line, &key, value)?),
            "out" | "out_path" => o.out_path = Some(PathBuf::from(value)),
            "format" => o.format = Some(parse_value(line, &key, value)?),
            other => return Err(CliError::Usage(format!("config line {line}: unknown key '{other}'"))),
        }
    }
    Ok(o)
}
