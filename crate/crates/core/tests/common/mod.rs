#![allow(dead_code)]

use qsl_core::bath::{BathKind, BathParams};
use qsl_core::qubit::{self, BlochVector, QubitState};

/// Eigenvalues of the Hermitian matrix `[[a, c], [c̄, d]]`, `c = (re, im)`.
pub fn hermitian_eigenvalues(a: f64, d: f64, re: f64, im: f64) -> (f64, f64) {
    let mean = 0.5 * (a + d);
    let radius = (0.25 * (a - d) * (a - d) + re * re + im * im).sqrt();
    (mean - radius, mean + radius)
}

/// Singular values of a Hermitian 2×2 matrix, ascending.
pub fn hermitian_singular_values(m: &QubitState) -> (f64, f64) {
    let (l1, l2) = hermitian_eigenvalues(m.p00, m.p11, m.re, m.im);
    let (x, y) = (l1.abs(), l2.abs());
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

pub fn state_at(p: &BathParams, v0: &BlochVector, t: f64) -> QubitState {
    let a = qsl_core::bath::alpha(p, t).unwrap();
    qubit::bloch_to_state(&qubit::evolve(p.kind, v0, a)).unwrap()
}

/// Central difference `(ρ(t+h) − ρ(t−h)) / 2h`, entrywise.
pub fn state_derivative_fd(p: &BathParams, v0: &BlochVector, t: f64, h: f64) -> QubitState {
    let plus = state_at(p, v0, t + h);
    let minus = state_at(p, v0, t - h);
    QubitState {
        p00: (plus.p00 - minus.p00) / (2.0 * h),
        p11: (plus.p11 - minus.p11) / (2.0 * h),
        re: (plus.re - minus.re) / (2.0 * h),
        im: (plus.im - minus.im) / (2.0 * h),
    }
}

pub fn rel_err(x: f64, reference: f64) -> f64 {
    if reference == 0.0 {
        x.abs()
    } else {
        ((x - reference) / reference).abs()
    }
}

pub fn params(kind: BathKind, s: f64, b: f64) -> BathParams {
    BathParams::new(kind, s).with_b_field(b)
}

/// Composite Simpson on `n` (even) equal panels.
pub fn fixed_simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    assert!(n.is_multiple_of(2));
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + h * i as f64);
    }
    sum * h / 3.0
}
