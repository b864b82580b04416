//! Quantum speed limit times for a Majorana topological qubit that dephases
//! in an Ohmic-like fermionic or bosonic environment.
//!
//! Layers, bottom up:
//!
//! * [`specfun`]: Gamma, ₁F₁ and ₂F₂ on the real line;
//! * [`bath`]: bath coefficients, the decay integral and the decay factor α(t);
//! * [`qubit`]: Bloch-vector channels, purities and singular values;
//! * [`qsl`]: ML / MT / unified bounds and parameter scans;
//! * [`cli`]: the `qsl` command-line front end and its CSV/SVG writers.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod bath;
pub mod cli;
pub mod qsl;
pub mod qubit;
pub mod specfun;

pub use bath::{BathKind, BathParams, GammaConvention};
pub use qsl::{QslResult, QuadratureControl, Window};
pub use qubit::BlochVector;
