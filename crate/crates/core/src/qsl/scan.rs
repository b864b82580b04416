//! One-dimensional parameter sweeps over s, τ or B.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::{qsl_unified, QslError, QslResult, QuadratureControl, Result, Window};
use crate::bath::{BathKind, BathParams};
use crate::qubit::BlochVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanAxis {
    OhmicS,
    InitialTau,
    BField,
}

impl ScanAxis {
    pub fn as_str(&self) -> &'static str {
        match self {
            ScanAxis::OhmicS => "s",
            ScanAxis::InitialTau => "tau",
            ScanAxis::BField => "b",
        }
    }
}

impl fmt::Display for ScanAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScanAxis {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "s" => Ok(ScanAxis::OhmicS),
            "tau" => Ok(ScanAxis::InitialTau),
            "b" => Ok(ScanAxis::BField),
            other => Err(format!("unknown axis '{other}' (expected s, tau or b)")),
        }
    }
}

/// Evenly spaced samples `lo..=hi` along one axis.
///
/// A single point is allowed when `lo == hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSpec {
    pub axis: ScanAxis,
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl ScanSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite()) {
            return Err(QslError::InvalidScan("axis bounds must be finite"));
        }
        match self.points {
            0 => Err(QslError::InvalidScan("points must be >= 1")),
            1 if self.lo != self.hi => Err(QslError::InvalidScan("a single point needs lo == hi")),
            1 => Ok(()),
            _ if !(self.lo < self.hi) => Err(QslError::InvalidScan("lo must be < hi")),
            _ => Ok(()),
        }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.lo];
        }
        let last = self.points - 1;
        let step = (self.hi - self.lo) / last as f64;
        (0..self.points)
            .map(|i| if i == last { self.hi } else { self.lo + step * i as f64 })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub axis_value: f64,
    pub kind: BathKind,
    pub result: Result<QslResult>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanTable {
    pub axis: ScanAxis,
    /// Ordered by axis value, then by the order of the requested baths.
    pub rows: Vec<ScanRow>,
}

/// Evaluate the unified bound at every axis value for every requested bath.
///
/// Rows are computed in parallel; a failing row keeps its error and the
/// scan carries on.
pub fn scan(
    template: &BathParams,
    v0: &BlochVector,
    w: &Window,
    spec: &ScanSpec,
    baths: &[BathKind],
    q: &QuadratureControl,
) -> Result<ScanTable> {
    spec.validate()?;
    v0.validate()?;
    let cells: Vec<(f64, BathKind)> = spec
        .values()
        .into_iter()
        .flat_map(|x| baths.iter().map(move |&k| (x, k)))
        .collect();
    let rows = cells
        .into_par_iter()
        .map(|(x, kind)| ScanRow {
            axis_value: x,
            kind,
            result: evaluate_cell(template, v0, w, spec.axis, x, kind, q),
        })
        .collect();
    Ok(ScanTable { axis: spec.axis, rows })
}

fn evaluate_cell(
    template: &BathParams,
    v0: &BlochVector,
    w: &Window,
    axis: ScanAxis,
    x: f64,
    kind: BathKind,
    q: &QuadratureControl,
) -> Result<QslResult> {
    let mut p = template.with_kind(kind);
    let mut window = *w;
    match axis {
        ScanAxis::OhmicS => p.s = x,
        ScanAxis::BField => p.b_field = x,
        ScanAxis::InitialTau => window = Window::new(x, w.tau_d())?,
    }
    qsl_unified(&p, v0, &window, q)
}
