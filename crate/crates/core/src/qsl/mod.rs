//! Open-system quantum speed limit bounds built on relative purity.
//!
//! For a window `[τ, τ + τ_D]` the bounds share the numerator
//! `|f(τ + τ_D) − 1| · tr(ρ_τ²)` and differ in the time-averaged generator
//! norm in the denominator:
//!
//! * ML: `(1/τ_D) ∫ Σ κᵢ(t) ϱᵢ dt`, with ϱᵢ the singular values of ρ_τ held
//!   fixed over the window;
//! * MT: `(1/τ_D) ∫ sqrt(Σ κᵢ(t)²) dt`.
//!
//! The unified bound is the larger of the two.

mod quadrature;
mod scan;

use thiserror::Error;

use crate::bath::{BathError, BathParams, Decay};
use crate::qubit::{self, BlochVector, QubitError};

pub use quadrature::{adaptive_simpson, adaptive_simpson_vec, QuadratureControl, QuadratureError};
pub use scan::{scan, ScanAxis, ScanRow, ScanSpec, ScanTable};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QslError {
    #[error(transparent)]
    Bath(#[from] BathError),
    #[error(transparent)]
    Qubit(#[from] QubitError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error("{0}")]
    InvalidWindow(&'static str),
    #[error("{0}")]
    InvalidScan(&'static str),
    #[error("averaged generator norm vanishes but the state moved (|f - 1| tr(rho^2) = {numerator})")]
    InconsistentFrozen { numerator: f64 },
}

impl QslError {
    /// `true` for failures of the numerics (series, quadrature, frozen-state
    /// consistency) rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            QslError::Bath(BathError::SpecialFunction(_))
                | QslError::Quadrature(_)
                | QslError::InconsistentFrozen { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, QslError>;

/// Evolution window from `tau` to `tau + tau_d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    tau: f64,
    tau_d: f64,
}

impl Window {
    pub fn new(tau: f64, tau_d: f64) -> Result<Self> {
        if !(tau >= 0.0 && tau.is_finite()) {
            return Err(QslError::InvalidWindow("tau must be >= 0"));
        }
        if !(tau_d > 0.0 && tau_d.is_finite()) {
            return Err(QslError::InvalidWindow("tau_d must be > 0"));
        }
        Ok(Self { tau, tau_d })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn tau_d(&self) -> f64 {
        self.tau_d
    }

    pub fn target(&self) -> f64 {
        self.tau + self.tau_d
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QslResult {
    pub ml: f64,
    pub mt: f64,
    pub unified: f64,
    pub f_rel_purity: f64,
    pub alpha_at_tau: f64,
    pub alpha_at_target: f64,
    pub ml_denominator: f64,
    pub mt_denominator: f64,
}

/// Time-averaged generator norms entering the ML and MT denominators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AveragedNorms {
    pub ml: f64,
    pub mt: f64,
}

pub fn averaged_norms(p: &BathParams, v0: &BlochVector, w: &Window, q: &QuadratureControl) -> Result<AveragedNorms> {
    v0.validate()?;
    let decay = Decay::new(p)?;
    averaged_norms_with(&decay, v0, w, q)
}

fn averaged_norms_with(decay: &Decay, v0: &BlochVector, w: &Window, q: &QuadratureControl) -> Result<AveragedNorms> {
    let kind = decay.params().kind;
    if decay.rate() == 0.0 {
        return Ok(AveragedNorms { ml: 0.0, mt: 0.0 });
    }
    let v_tau = qubit::evolve(kind, v0, decay.alpha(w.tau())?);
    let rho = qubit::state_singular_values(&v_tau);
    let [ml, mt] = integrate_window(decay, w, q, |t| {
        let (a, a_dot) = decay.alpha_and_dot(t)?;
        let kappa = qubit::generator_singular_values(kind, v0, a, a_dot);
        Ok([kappa.lo * rho.lo + kappa.hi * rho.hi, kappa.lo.hypot(kappa.hi)])
    })?;
    Ok(AveragedNorms {
        ml: ml / w.tau_d(),
        mt: mt / w.tau_d(),
    })
}

/// Panels used to bracket sign changes of α̇ before integrating.
const TURNING_POINT_SAMPLES: usize = 32;

/// Integrates over the window piecewise between turning points of α, where
/// the integrands (all built on |α̇|) have kinks.
fn integrate_window<const N: usize>(
    decay: &Decay,
    w: &Window,
    q: &QuadratureControl,
    mut f: impl FnMut(f64) -> Result<[f64; N]>,
) -> Result<[f64; N]> {
    let mut edges = vec![w.tau()];
    edges.extend(decay.turning_points(w.tau(), w.target(), TURNING_POINT_SAMPLES)?);
    edges.push(w.target());
    let mut total = [0.0; N];
    for piece in edges.windows(2) {
        let part = adaptive_simpson_vec(&mut f, piece[0], piece[1], q)?;
        for (acc, v) in total.iter_mut().zip(part) {
            *acc += v;
        }
    }
    Ok(total)
}

fn bound(numerator: f64, denominator: f64) -> Result<f64> {
    if denominator == 0.0 {
        if numerator == 0.0 {
            return Ok(0.0);
        }
        return Err(QslError::InconsistentFrozen { numerator });
    }
    Ok(numerator / denominator)
}

/// ML, MT and unified bounds together with the quantities they are built from.
pub fn qsl_unified(p: &BathParams, v0: &BlochVector, w: &Window, q: &QuadratureControl) -> Result<QslResult> {
    v0.validate()?;
    let decay = Decay::new(p)?;
    let kind = p.kind;
    let (alpha_at_tau, alpha_at_target, step) = decay.alpha_step(w.tau(), w.target())?;
    let v_tau = qubit::evolve(kind, v0, alpha_at_tau);
    let v_target = qubit::evolve(kind, v0, alpha_at_target);
    let increment = qubit::evolve_increment(kind, v0, alpha_at_tau, step);
    let numerator = qubit::relative_purity_excess_from_increment(&v_tau, &increment).abs() * qubit::purity(&v_tau);
    let norms = averaged_norms_with(&decay, v0, w, q)?;
    let ml = bound(numerator, norms.ml)?;
    let mt = bound(numerator, norms.mt)?;
    Ok(QslResult {
        ml,
        mt,
        unified: ml.max(mt),
        f_rel_purity: qubit::relative_purity(&v_tau, &v_target),
        alpha_at_tau,
        alpha_at_target,
        ml_denominator: norms.ml,
        mt_denominator: norms.mt,
    })
}

pub fn qsl_ml(p: &BathParams, v0: &BlochVector, w: &Window, q: &QuadratureControl) -> Result<f64> {
    Ok(qsl_unified(p, v0, w, q)?.ml)
}

pub fn qsl_mt(p: &BathParams, v0: &BlochVector, w: &Window, q: &QuadratureControl) -> Result<f64> {
    Ok(qsl_unified(p, v0, w, q)?.mt)
}

/// `|α(τ)² − α(τ)α(τ+τ_D)| / ((1/τ_D) ∫ |α̇| dt)`, the bound for the
/// maximally coherent initial state in either bath.
pub fn qsl_closed_form_max_coherent(p: &BathParams, w: &Window, q: &QuadratureControl) -> Result<f64> {
    let decay = Decay::new(p)?;
    if decay.rate() == 0.0 {
        return Ok(0.0);
    }
    let (a_tau, _, step) = decay.alpha_step(w.tau(), w.target())?;
    let [variation] = integrate_window(&decay, w, q, |t| Ok([decay.alpha_dot(t)?.abs()]))?;
    bound((a_tau * step).abs(), variation / w.tau_d())
}
