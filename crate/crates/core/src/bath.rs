//! Environment coefficients and the decay machinery.
//!
//! The coherence decay factor is `α(t) = exp(−2 B² |β| I_s(t))` where `β`
//! depends on the bath kind and `I_s(t)` is the Ohmic-like decay integral
//! with cutoff `Γ₀`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::specfun::{self, SeriesControl, SpecFunError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BathError {
    #[error("{0}")]
    InvalidParameter(&'static str),
    #[error("expected a {expected} bath")]
    KindMismatch { expected: BathKind },
    #[error("conformal dimension {0} is an integer below 3; the bosonic coefficient is undefined there")]
    UnsupportedDimension(f64),
    #[error(transparent)]
    SpecialFunction(#[from] SpecFunError),
}

pub type Result<T> = std::result::Result<T, BathError>;

/// Largest supported Ohmic exponent.
pub const MAX_OHMIC_S: f64 = 4.0;

/// Half-width of the window around `s = 1` routed to the dedicated Ohmic branch.
pub const OHMIC_POLE_GUARD: f64 = 1e-6;

/// Distance from an integer below which Δ takes the factorial branch.
pub const INTEGER_DIMENSION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BathKind {
    Fermionic,
    Bosonic,
}

impl BathKind {
    pub const ALL: [BathKind; 2] = [BathKind::Fermionic, BathKind::Bosonic];

    pub fn as_str(&self) -> &'static str {
        match self {
            BathKind::Fermionic => "fermionic",
            BathKind::Bosonic => "bosonic",
        }
    }
}

impl fmt::Display for BathKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BathKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fermionic" | "fermion" | "f" => Ok(BathKind::Fermionic),
            "bosonic" | "boson" | "b" => Ok(BathKind::Bosonic),
            other => Err(format!("unknown bath kind '{other}'")),
        }
    }
}

/// Which Gamma argument the fermionic coefficient uses: `Γ((s+1)/2)` or `Γ(s+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GammaConvention {
    #[default]
    HalfArg,
    FullArg,
}

impl FromStr for GammaConvention {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "half" | "halfarg" | "half-arg" => Ok(GammaConvention::HalfArg),
            "full" | "fullarg" | "full-arg" => Ok(GammaConvention::FullArg),
            other => Err(format!("unknown gamma convention '{other}'")),
        }
    }
}

impl fmt::Display for GammaConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GammaConvention::HalfArg => "half",
            GammaConvention::FullArg => "full",
        })
    }
}

/// All scalar parameters of one environment.
///
/// `n_sc` and `epsilon` only enter the bosonic coefficient; `convention` only
/// the fermionic one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathParams {
    pub kind: BathKind,
    /// Ohmic exponent of `J(ω) ∝ ω^s`.
    pub s: f64,
    /// Cutoff frequency Γ₀.
    pub gamma0: f64,
    /// Magnetic coupling B.
    pub b_field: f64,
    /// Degrees of freedom of the dual conformal field theory.
    pub n_sc: f64,
    /// UV length cutoff.
    pub epsilon: f64,
    pub convention: GammaConvention,
}

impl BathParams {
    /// Defaults: Γ₀ = 1, N_sc = 1, ε = 1, B = 0, half-argument convention.
    pub fn new(kind: BathKind, s: f64) -> Self {
        Self {
            kind,
            s,
            gamma0: 1.0,
            b_field: 0.0,
            n_sc: 1.0,
            epsilon: 1.0,
            convention: GammaConvention::HalfArg,
        }
    }

    pub fn with_b_field(mut self, b: f64) -> Self {
        self.b_field = b;
        self
    }

    pub fn with_gamma0(mut self, gamma0: f64) -> Self {
        self.gamma0 = gamma0;
        self
    }

    pub fn with_kind(mut self, kind: BathKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn with_s(mut self, s: f64) -> Self {
        self.s = s;
        self
    }

    pub fn with_conformal(mut self, n_sc: f64, epsilon: f64) -> Self {
        self.n_sc = n_sc;
        self.epsilon = epsilon;
        self
    }

    pub fn with_convention(mut self, convention: GammaConvention) -> Self {
        self.convention = convention;
        self
    }

    pub fn validate(&self) -> Result<()> {
        validate_ohmic(self.s)?;
        validate_cutoff(self.gamma0)?;
        // NaN fails every comparison below, so the checks are phrased positively.
        if !(self.b_field >= 0.0 && self.b_field.is_finite()) {
            return Err(BathError::InvalidParameter("b must be >= 0"));
        }
        if !(self.n_sc > 0.0 && self.n_sc.is_finite()) {
            return Err(BathError::InvalidParameter("nsc must be > 0"));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(BathError::InvalidParameter("epsilon must be > 0"));
        }
        Ok(())
    }
}

fn validate_ohmic(s: f64) -> Result<()> {
    if !(s > 0.0) {
        return Err(BathError::InvalidParameter("s must be > 0"));
    }
    if !(s <= MAX_OHMIC_S) {
        return Err(BathError::InvalidParameter("s must be <= 4"));
    }
    Ok(())
}

fn validate_cutoff(gamma0: f64) -> Result<()> {
    if !(gamma0 > 0.0 && gamma0.is_finite()) {
        return Err(BathError::InvalidParameter("gamma0 must be > 0"));
    }
    Ok(())
}

fn validate_time(t: f64) -> Result<()> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(BathError::InvalidParameter("t must be >= 0"));
    }
    Ok(())
}

/// Conformal dimension Δ = (s + 4)/2 of the bosonic bath.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConformalDimension {
    pub delta: f64,
}

impl ConformalDimension {
    pub fn from_ohmic(s: f64) -> Self {
        Self { delta: (s + 4.0) / 2.0 }
    }

    /// `Some(n)` when Δ is within [`INTEGER_DIMENSION_TOL`] of the natural number `n`.
    pub fn as_integer(&self) -> Option<u32> {
        let rounded = self.delta.round();
        if (self.delta - rounded).abs() < INTEGER_DIMENSION_TOL && rounded >= 0.0 {
            Some(rounded as u32)
        } else {
            None
        }
    }

    /// True when the factorial branch applies (integer Δ ≥ 3).
    pub fn uses_integer_branch(&self) -> bool {
        matches!(self.as_integer(), Some(n) if n >= 3)
    }
}

/// β_F = −4π / Γ(arg) · Γ₀^−(s+1).
pub fn beta_fermionic(p: &BathParams) -> Result<f64> {
    if p.kind != BathKind::Fermionic {
        return Err(BathError::KindMismatch {
            expected: BathKind::Fermionic,
        });
    }
    p.validate()?;
    let arg = match p.convention {
        GammaConvention::HalfArg => (p.s + 1.0) / 2.0,
        GammaConvention::FullArg => p.s + 1.0,
    };
    Ok(-4.0 * PI / specfun::gamma(arg)? * p.gamma0.powf(-(p.s + 1.0)))
}

/// β_B from the conformal-dimension branch matching Δ = (s + 4)/2.
pub fn beta_bosonic(p: &BathParams) -> Result<f64> {
    if p.kind != BathKind::Bosonic {
        return Err(BathError::KindMismatch {
            expected: BathKind::Bosonic,
        });
    }
    p.validate()?;
    let dim = ConformalDimension::from_ohmic(p.s);
    let delta = dim.delta;
    let prefactor = p.n_sc * p.n_sc * p.epsilon.powf(2.0 * (delta - 4.0));
    match dim.as_integer() {
        Some(n) if n >= 3 => {
            let d = f64::from(n);
            Ok(-prefactor / (4.0 * PI * specfun::factorial(n - 3) * 2.0_f64.powf(2.0 * d - 5.0)))
        }
        Some(_) => Err(BathError::UnsupportedDimension(delta)),
        None => {
            let ratio = specfun::gamma(3.0 - delta)? / specfun::gamma(delta - 2.0)?;
            Ok(-prefactor * ratio * (PI * delta).sin() / (4.0 * PI * PI * 2.0_f64.powf(2.0 * delta - 5.0)))
        }
    }
}

/// β for whichever kind `p` describes.
pub fn beta(p: &BathParams) -> Result<f64> {
    match p.kind {
        BathKind::Fermionic => beta_fermionic(p),
        BathKind::Bosonic => beta_bosonic(p),
    }
}

fn is_ohmic(s: f64) -> bool {
    (s - 1.0).abs() < OHMIC_POLE_GUARD
}

/// The decay integral I_s(t).
pub fn decay_integral(s: f64, gamma0: f64, t: f64) -> Result<f64> {
    decay_integral_with(s, gamma0, t, &SeriesControl::default())
}

pub fn decay_integral_with(s: f64, gamma0: f64, t: f64, ctl: &SeriesControl) -> Result<f64> {
    validate_ohmic(s)?;
    validate_cutoff(gamma0)?;
    validate_time(t)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    let x = gamma0 * gamma0 * t * t / 4.0;
    if is_ohmic(s) {
        // Γ₀²t² ₂F₂({1,1}; {3/2,2}; −Γ₀²t²/4), the s → 1 limit of the general branch
        return Ok(4.0 * x * specfun::hyp2f2(1.0, 1.0, 1.5, 2.0, -x, ctl)?);
    }
    let a = (s - 1.0) / 2.0;
    let kummer = specfun::hyp1f1(a, 0.5, -x, ctl)?;
    Ok(2.0 * gamma0.powf(s - 1.0) * specfun::gamma(a)? * (1.0 - kummer))
}

/// dI_s/dt = 2 Γ₀^{s+1} t Γ((s+1)/2) ₁F₁((s+1)/2; 3/2; −Γ₀²t²/4), valid for every s > 0.
pub fn decay_integral_derivative(s: f64, gamma0: f64, t: f64) -> Result<f64> {
    decay_integral_derivative_with(s, gamma0, t, &SeriesControl::default())
}

pub fn decay_integral_derivative_with(s: f64, gamma0: f64, t: f64, ctl: &SeriesControl) -> Result<f64> {
    validate_ohmic(s)?;
    validate_cutoff(gamma0)?;
    validate_time(t)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    let a = (s + 1.0) / 2.0;
    let x = gamma0 * gamma0 * t * t / 4.0;
    Ok(2.0 * gamma0.powf(s + 1.0) * t * specfun::gamma(a)? * specfun::hyp1f1(a, 1.5, -x, ctl)?)
}

/// Decay factor of one bath with the time-independent rate `2B²|β|` cached.
#[derive(Debug, Clone, Copy)]
pub struct Decay {
    params: BathParams,
    rate: f64,
    series: SeriesControl,
}

impl Decay {
    pub fn new(params: &BathParams) -> Result<Self> {
        params.validate()?;
        let rate = 2.0 * params.b_field * params.b_field * beta(params)?.abs();
        Ok(Self {
            params: *params,
            rate,
            series: SeriesControl::default(),
        })
    }

    pub fn with_series_control(mut self, ctl: SeriesControl) -> Self {
        self.series = ctl;
        self
    }

    pub fn params(&self) -> &BathParams {
        &self.params
    }

    /// 2B²|β|
    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn alpha(&self, t: f64) -> Result<f64> {
        validate_time(t)?;
        if self.rate == 0.0 {
            return Ok(1.0);
        }
        let i = decay_integral_with(self.params.s, self.params.gamma0, t, &self.series)?;
        Ok((-self.rate * i).exp())
    }

    /// `(α(t0), α(t1), α(t1) − α(t0))`, the difference formed with `expm1`
    /// so it keeps its digits when both values are close to 1.
    pub fn alpha_step(&self, t0: f64, t1: f64) -> Result<(f64, f64, f64)> {
        validate_time(t0)?;
        validate_time(t1)?;
        if self.rate == 0.0 {
            return Ok((1.0, 1.0, 0.0));
        }
        let s = self.params.s;
        let g0 = self.params.gamma0;
        let i0 = decay_integral_with(s, g0, t0, &self.series)?;
        let i1 = decay_integral_with(s, g0, t1, &self.series)?;
        let a0 = (-self.rate * i0).exp();
        let a1 = (-self.rate * i1).exp();
        Ok((a0, a1, a0 * (-self.rate * (i1 - i0)).exp_m1()))
    }

    pub fn alpha_dot(&self, t: f64) -> Result<f64> {
        let (_, dot) = self.alpha_and_dot(t)?;
        Ok(dot)
    }

    /// `(α(t), α̇(t))` sharing one evaluation of I_s.
    pub fn alpha_and_dot(&self, t: f64) -> Result<(f64, f64)> {
        validate_time(t)?;
        if self.rate == 0.0 {
            return Ok((1.0, 0.0));
        }
        let s = self.params.s;
        let g0 = self.params.gamma0;
        let alpha = (-self.rate * decay_integral_with(s, g0, t, &self.series)?).exp();
        let di = decay_integral_derivative_with(s, g0, t, &self.series)?;
        Ok((alpha, -self.rate * di * alpha))
    }
}

impl Decay {
    /// Times in `(a, b)` where α̇ changes sign, located by sampling on
    /// `samples` panels and bisecting each bracket to machine precision.
    ///
    /// Only super-Ohmic baths with s > 2 have such turning points.
    pub fn turning_points(&self, a: f64, b: f64, samples: usize) -> Result<Vec<f64>> {
        if self.rate == 0.0 || !(b > a) {
            return Ok(Vec::new());
        }
        let s = self.params.s;
        let g0 = self.params.gamma0;
        let slope = |t: f64| decay_integral_derivative_with(s, g0, t, &self.series);
        let n = samples.max(1);
        let step = (b - a) / n as f64;
        let mut roots = Vec::new();
        let mut left = a;
        let mut f_left = slope(left)?;
        for i in 1..=n {
            let right = if i == n { b } else { a + step * i as f64 };
            let f_right = slope(right)?;
            if f_left != 0.0 && f_right != 0.0 && (f_left < 0.0) != (f_right < 0.0) {
                let (mut lo, mut hi, mut f_lo) = (left, right, f_left);
                while hi - lo > 4.0 * f64::EPSILON * hi.abs().max(1.0) {
                    let mid = 0.5 * (lo + hi);
                    let f_mid = slope(mid)?;
                    if f_mid == 0.0 {
                        lo = mid;
                        hi = mid;
                        break;
                    }
                    if (f_mid < 0.0) == (f_lo < 0.0) {
                        lo = mid;
                        f_lo = f_mid;
                    } else {
                        hi = mid;
                    }
                }
                roots.push(0.5 * (lo + hi));
            }
            left = right;
            f_left = f_right;
        }
        Ok(roots)
    }
}

/// α(t) = exp(−2B²|β| I_s(t)).
pub fn alpha(p: &BathParams, t: f64) -> Result<f64> {
    Decay::new(p)?.alpha(t)
}

/// α̇(t) = −2B²|β| İ_s(t) α(t).
pub fn alpha_dot(p: &BathParams, t: f64) -> Result<f64> {
    Decay::new(p)?.alpha_dot(t)
}
