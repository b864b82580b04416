//! Qubit states in Bloch coordinates and the two dephasing channels.

use std::fmt;

use thiserror::Error;

use crate::bath::BathKind;

/// Slack allowed on the Bloch-ball and positivity checks.
pub const STATE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QubitError {
    #[error("Bloch vector norm {0} exceeds 1")]
    OutsideBlochBall(f64),
    #[error("Bloch vector has a non-finite component")]
    NonFinite,
    #[error("matrix is not a valid density matrix: {0}")]
    NotPositive(&'static str),
}

pub type Result<T> = std::result::Result<T, QubitError>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Self { x, y, z };
        v.validate()?;
        Ok(v)
    }

    /// `(1/√2, 1/√2, 0)`
    pub fn maximally_coherent() -> Self {
        let c = std::f64::consts::FRAC_1_SQRT_2;
        Self { x: c, y: c, z: 0.0 }
    }

    pub fn maximally_mixed() -> Self {
        Self { x: 0.0, y: 0.0, z: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x.is_finite() && self.y.is_finite() && self.z.is_finite()) {
            return Err(QubitError::NonFinite);
        }
        let n2 = self.norm_sqr();
        if n2 > 1.0 + STATE_TOL {
            return Err(QubitError::OutsideBlochBall(n2.sqrt()));
        }
        Ok(())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Squared length of the transverse (coherence) part.
    pub fn transverse_sqr(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }
}

/// 2×2 density matrix `[[p00, re − i·im], [re + i·im, p11]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    pub p00: f64,
    pub p11: f64,
    /// Real part of the (0,1) entry.
    pub re: f64,
    /// Imaginary part of the (0,1) entry.
    pub im: f64,
}

impl QubitState {
    pub fn validate(&self) -> Result<()> {
        if ((self.p00 + self.p11) - 1.0).abs() > STATE_TOL {
            return Err(QubitError::NotPositive("trace differs from 1"));
        }
        if self.p00 < -STATE_TOL || self.p11 < -STATE_TOL {
            return Err(QubitError::NotPositive("negative population"));
        }
        if self.p00 * self.p11 < self.re * self.re + self.im * self.im - STATE_TOL {
            return Err(QubitError::NotPositive("negative eigenvalue"));
        }
        Ok(())
    }

    pub fn to_bloch(&self) -> BlochVector {
        BlochVector {
            x: 2.0 * self.re,
            y: -2.0 * self.im,
            z: self.p00 - self.p11,
        }
    }
}

impl fmt::Display for QubitState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{:.6}, {:.6}{:+.6}i], [{:.6}{:+.6}i, {:.6}]]",
            self.p00, self.re, self.im, self.re, -self.im, self.p11
        )
    }
}

/// Sorted pair of non-negative singular values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularPair {
    pub lo: f64,
    pub hi: f64,
}

impl SingularPair {
    pub fn new(a: f64, b: f64) -> Self {
        if a <= b {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }

    pub fn sum(&self) -> f64 {
        self.lo + self.hi
    }
}

pub fn bloch_to_state(v: &BlochVector) -> Result<QubitState> {
    v.validate()?;
    Ok(QubitState {
        p00: (1.0 + v.z) / 2.0,
        p11: (1.0 - v.z) / 2.0,
        re: v.x / 2.0,
        im: -v.y / 2.0,
    })
}

/// Fermionic channel: coherences scale by `a`, population imbalance by `a²`.
pub fn evolve_fermionic(v0: &BlochVector, a: f64) -> BlochVector {
    debug_assert!((0.0..=1.0).contains(&a), "decay factor {a} outside [0, 1]");
    BlochVector {
        x: a * v0.x,
        y: a * v0.y,
        z: a * a * v0.z,
    }
}

/// Bosonic channel: pure dephasing.
pub fn evolve_bosonic(v0: &BlochVector, a: f64) -> BlochVector {
    debug_assert!((0.0..=1.0).contains(&a), "decay factor {a} outside [0, 1]");
    BlochVector {
        x: a * v0.x,
        y: a * v0.y,
        z: v0.z,
    }
}

pub fn evolve(kind: BathKind, v0: &BlochVector, a: f64) -> BlochVector {
    match kind {
        BathKind::Fermionic => evolve_fermionic(v0, a),
        BathKind::Bosonic => evolve_bosonic(v0, a),
    }
}

/// tr(ρ²) = (1 + |v|²)/2
pub fn purity(v: &BlochVector) -> f64 {
    (1.0 + v.norm_sqr()) / 2.0
}

/// tr(ρ_τ ρ_target) / tr(ρ_τ²) = (1 + v_τ·v_target)/(1 + |v_τ|²)
pub fn relative_purity(v_tau: &BlochVector, v_target: &BlochVector) -> f64 {
    (1.0 + v_tau.dot(v_target)) / (1.0 + v_tau.norm_sqr())
}

/// `f − 1`, formed as `v_τ·(v_target − v_τ)/(1 + |v_τ|²)`.
///
/// Subtracting 1 from [`relative_purity`] loses every digit once
/// `|v_τ|² < ε`; this form does not.
pub fn relative_purity_excess(v_tau: &BlochVector, v_target: &BlochVector) -> f64 {
    let diff = BlochVector {
        x: v_target.x - v_tau.x,
        y: v_target.y - v_tau.y,
        z: v_target.z - v_tau.z,
    };
    relative_purity_excess_from_increment(v_tau, &diff)
}

/// `f − 1` from `v_τ` and the increment `v_target − v_τ`.
pub fn relative_purity_excess_from_increment(v_tau: &BlochVector, increment: &BlochVector) -> f64 {
    v_tau.dot(increment) / (1.0 + v_tau.norm_sqr())
}

/// `evolve(kind, v0, a + da) − evolve(kind, v0, a)`, exact in `da`.
pub fn evolve_increment(kind: BathKind, v0: &BlochVector, a: f64, da: f64) -> BlochVector {
    let z = match kind {
        BathKind::Fermionic => da * (2.0 * a + da) * v0.z,
        BathKind::Bosonic => 0.0,
    };
    BlochVector {
        x: da * v0.x,
        y: da * v0.y,
        z,
    }
}

/// Singular values of ρ: `(1 ∓ |v|)/2`.
pub fn state_singular_values(v: &BlochVector) -> SingularPair {
    let r = v.norm();
    SingularPair::new(0.5 * (1.0 - r), 0.5 * (1.0 + r))
}

/// Singular values of ρ̇(t) for a state that started at `v0`, given `α(t)`
/// and `α̇(t)`. Both values coincide.
pub fn generator_singular_values(kind: BathKind, v0: &BlochVector, a: f64, a_dot: f64) -> SingularPair {
    let speed = match kind {
        BathKind::Fermionic => (v0.transverse_sqr() + 4.0 * a * a * v0.z * v0.z).sqrt(),
        BathKind::Bosonic => v0.transverse_sqr().sqrt(),
    };
    let kappa = 0.5 * (a_dot * speed).abs();
    SingularPair { lo: kappa, hi: kappa }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const TOL: f64 = 1e-15;

    #[test]
    fn bloch_to_state_examples() {
        let mixed = bloch_to_state(&BlochVector::maximally_mixed()).unwrap();
        assert_eq!((mixed.p00, mixed.p11, mixed.re, mixed.im), (0.5, 0.5, 0.0, 0.0));
        let north = bloch_to_state(&BlochVector::new(0.0, 0.0, 1.0).unwrap()).unwrap();
        assert_eq!((north.p00, north.p11), (1.0, 0.0));
        north.validate().unwrap();
        let coherent = bloch_to_state(&BlochVector::maximally_coherent()).unwrap();
        let c = 1.0 / (2.0 * 2.0_f64.sqrt());
        assert_relative_eq!(coherent.re, c, max_relative = TOL);
        assert_relative_eq!(coherent.im, -c, max_relative = TOL);
        assert_eq!(coherent.p00, 0.5);
        assert_eq!(coherent.to_bloch(), BlochVector::maximally_coherent());
    }

    #[test]
    fn bloch_ball_validation() {
        assert!(matches!(
            BlochVector::new(1.0, 0.1, 0.0),
            Err(QubitError::OutsideBlochBall(_))
        ));
        assert!(BlochVector::new(f64::NAN, 0.0, 0.0).is_err());
        let bad = QubitState {
            p00: 0.5,
            p11: 0.5,
            re: 0.5,
            im: 0.1,
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn channel_examples() {
        let v = BlochVector::maximally_coherent();
        assert_eq!(evolve_fermionic(&v, 1.0), v);
        assert_eq!(evolve_bosonic(&v, 1.0), v);
        let f = evolve_fermionic(&v, 0.5);
        let b = evolve_bosonic(&v, 0.5);
        for out in [f, b] {
            assert_relative_eq!(out.x, 0.353_553_390_593_273_7, max_relative = 1e-14);
            assert_relative_eq!(out.y, 0.353_553_390_593_273_7, max_relative = 1e-14);
            assert_eq!(out.z, 0.0);
        }
        let diag = BlochVector::new(0.0, 0.0, 0.3).unwrap();
        assert_eq!(evolve_bosonic(&diag, 0.2), diag);
        let any = BlochVector::new(0.3, -0.4, 0.5).unwrap();
        assert_eq!(evolve_fermionic(&any, 0.0), BlochVector::maximally_mixed());
    }

    #[test]
    fn purity_examples() {
        assert_eq!(purity(&BlochVector::new(0.0, 1.0, 0.0).unwrap()), 1.0);
        assert_eq!(purity(&BlochVector::maximally_mixed()), 0.5);
        assert_relative_eq!(
            purity(&BlochVector::new(0.6, 0.0, 0.0).unwrap()),
            0.68,
            max_relative = TOL
        );
    }

    #[test]
    fn relative_purity_examples() {
        let v = BlochVector::new(0.2, -0.5, 0.4).unwrap();
        assert_relative_eq!(relative_purity(&v, &v), 1.0, max_relative = TOL);
        assert_eq!(relative_purity(&BlochVector::maximally_mixed(), &v), 1.0);
        let v0 = BlochVector::maximally_coherent();
        let (a_tau, a_target) = (0.8, 0.3);
        let f = relative_purity(&evolve_fermionic(&v0, a_tau), &evolve_fermionic(&v0, a_target));
        assert_relative_eq!(
            f,
            (1.0 + a_tau * a_target) / (1.0 + a_tau * a_tau),
            max_relative = 1e-14
        );
    }

    #[test]
    fn relative_purity_excess_is_stable() {
        let v0 = BlochVector::maximally_coherent();
        let (a_tau, a_target) = (1e-9, 4e-10);
        let excess = relative_purity_excess(&evolve_bosonic(&v0, a_tau), &evolve_bosonic(&v0, a_target));
        let exact = (a_tau * a_target - a_tau * a_tau) / (1.0 + a_tau * a_tau);
        assert_relative_eq!(excess, exact, max_relative = 1e-14);
        // the naive route has cancelled to zero at this scale
        let naive = relative_purity(&evolve_bosonic(&v0, a_tau), &evolve_bosonic(&v0, a_target)) - 1.0;
        assert_eq!(naive, 0.0);
    }

    #[test]
    fn state_singular_value_examples() {
        let pure = state_singular_values(&BlochVector::new(0.0, 0.0, -1.0).unwrap());
        assert_eq!((pure.lo, pure.hi), (0.0, 1.0));
        let mixed = state_singular_values(&BlochVector::maximally_mixed());
        assert_eq!((mixed.lo, mixed.hi), (0.5, 0.5));
        let half = state_singular_values(&BlochVector::new(0.3, 0.4, 0.0).unwrap());
        assert_relative_eq!(half.lo, 0.25, max_relative = TOL);
        assert_relative_eq!(half.hi, 0.75, max_relative = TOL);
    }

    #[test]
    fn generator_singular_value_examples() {
        let v0 = BlochVector::maximally_coherent();
        let frozen = generator_singular_values(BathKind::Fermionic, &v0, 0.7, 0.0);
        assert_eq!((frozen.lo, frozen.hi), (0.0, 0.0));
        let k = generator_singular_values(BathKind::Fermionic, &v0, 0.7, -0.3);
        assert_relative_eq!(k.hi, 0.15, max_relative = 1e-14);
        let kb = generator_singular_values(BathKind::Bosonic, &v0, 0.7, -0.3);
        assert_eq!(k, kb);
        let tilted = BlochVector::new(0.3, 0.0, 0.8).unwrap();
        let kf = generator_singular_values(BathKind::Fermionic, &tilted, 0.5, 1.0);
        assert_relative_eq!(kf.lo, 0.5 * (0.09_f64 + 4.0 * 0.25 * 0.64).sqrt(), max_relative = 1e-14);
    }
}
