//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

mod common;

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fs;
use std::time::{Duration, Instant};

use common::{hermitian_singular_values, params, rel_err, state_derivative_fd};
use qsl_core::bath::{self, BathKind, BathParams, Decay};
use qsl_core::cli::{self, csv::CSV_HEADER, RunConfig};
use qsl_core::qsl::{qsl_closed_form_max_coherent, qsl_unified, QslResult, QuadratureControl, Window};
use qsl_core::qubit::{generator_singular_values, BlochVector};
use qsl_core::specfun::{gamma, hyp1f1, SeriesControl};

const GRID_S: [f64; 7] = [0.1, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0];
const GRID_B: [f64; 4] = [0.1, 0.4, 0.7, 1.0];
const GRID_TAU: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 5.0];
const DERIV_S: [f64; 5] = [0.3, 0.7, 1.0, 1.8, 2.5];
const DERIV_T: [f64; 4] = [0.2, 1.0, 3.0, 8.0];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn q() -> QuadratureControl {
    QuadratureControl::default()
}

fn coherent(kind: BathKind, s: f64, b: f64, tau: f64, tau_d: f64) -> QslResult {
    qsl_unified(
        &params(kind, s, b),
        &BlochVector::maximally_coherent(),
        &Window::new(tau, tau_d).unwrap(),
        &q(),
    )
    .unwrap()
}

struct Cell {
    kind: BathKind,
    s: f64,
    b: f64,
    tau: f64,
    result: QslResult,
}

fn grid() -> (Vec<Cell>, Duration) {
    let start = Instant::now();
    let mut cells = Vec::new();
    for kind in BathKind::ALL {
        for s in GRID_S {
            for b in GRID_B {
                for tau in GRID_TAU {
                    cells.push(Cell {
                        kind,
                        s,
                        b,
                        tau,
                        result: coherent(kind, s, b, tau, 1.0),
                    });
                }
            }
        }
    }
    (cells, start.elapsed())
}

fn tightness(cells: &[Cell], elapsed: Duration) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut ordered = true;
    for c in cells {
        let r = &c.result;
        ordered &= r.ml >= r.mt;
        worst = worst.max((r.mt - r.ml * FRAC_1_SQRT_2).abs());
    }
    let pass = ordered && worst <= 1e-10 && elapsed < Duration::from_secs(30);
    outcome(
        pass,
        format!(
            "{} cells, ml >= mt: {ordered}, max |mt - ml/sqrt2| = {worst:.2e}, {:.2?}",
            cells.len(),
            elapsed
        ),
    )
}

fn bound_sanity(cells: &[Cell]) -> Outcome {
    let max = cells.iter().map(|c| c.result.unified).fold(f64::NEG_INFINITY, f64::max);
    outcome(max <= 1.0 + 1e-9, format!("max unified = {max:.12}"))
}

fn closed_form(cells: &[Cell]) -> Outcome {
    let mut worst: f64 = 0.0;
    for c in cells {
        let w = Window::new(c.tau, 1.0).unwrap();
        let closed = qsl_closed_form_max_coherent(&params(c.kind, c.s, c.b), &w, &q()).unwrap();
        worst = worst.max(rel_err(closed, c.result.unified));
    }
    outcome(worst <= 1e-8, format!("max relative difference = {worst:.2e}"))
}

fn early_decrease() -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    for kind in BathKind::ALL {
        for s in [0.1, 1.0] {
            let early = coherent(kind, s, 0.4, 0.1, 1.0).unified;
            let late = coherent(kind, s, 0.4, 10.0, 1.0).unified;
            let ratio = late / early;
            pass &= ratio < 0.1;
            notes.push(format!("{kind} s={s}: {ratio:.3e}"));
        }
    }
    outcome(pass, format!("ratio tau=10 / tau=0.1: {}", notes.join(", ")))
}

fn plateau() -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    for kind in BathKind::ALL {
        let values: Vec<f64> = (0..21)
            .map(|i| coherent(kind, 2.5, 0.4, 5.0 + 0.25 * i as f64, 1.0).unified)
            .collect();
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        let spread = (max - min) / mean;
        pass &= spread < 0.05;
        notes.push(format!("{kind}: {spread:.3e}"));
    }
    outcome(
        pass,
        format!("relative spread over tau in [5, 10]: {}", notes.join(", ")),
    )
}

fn field_trend() -> Outcome {
    let mut pass = true;
    let mut violations = 0;
    for kind in BathKind::ALL {
        for s in [0.1, 1.0, 1.5, 2.5] {
            let values: Vec<f64> = [0.2, 0.4, 0.6, 0.8, 1.0]
                .iter()
                .map(|&b| coherent(kind, s, b, 1.0, 1.0).unified)
                .collect();
            for pair in values.windows(2) {
                if pair[1] > pair[0] {
                    pass = false;
                    violations += 1;
                }
            }
        }
    }
    outcome(pass, format!("8 series, {violations} increases"))
}

fn special_functions() -> Outcome {
    let ctl = SeriesControl::default();
    let mut kummer: f64 = 0.0;
    for ia in 0..=16 {
        let a = -1.0 + 0.25 * ia as f64;
        for b in [0.5, 1.5] {
            for iz in 0..=100 {
                let z = -0.5 * iz as f64;
                let lhs = hyp1f1(a, b, z, &ctl).unwrap();
                let rhs = z.exp() * hyp1f1(b - a, b, -z, &ctl).unwrap();
                kummer = kummer.max((lhs - rhs).abs() / lhs.abs().max(1.0));
            }
        }
    }
    let elementary = (hyp1f1(1.0, 2.0, -1.0, &ctl).unwrap() - (1.0 - (-1.0f64).exp())).abs();
    let mut reflection: f64 = 0.0;
    for i in -499..=499 {
        let x = 0.01 * i as f64 + 0.003;
        let r = gamma(x).unwrap() * gamma(1.0 - x).unwrap() * (PI * x).sin() / PI;
        reflection = reflection.max((r - 1.0).abs());
    }
    let mut branch: f64 = 0.0;
    for t in [0.5, 1.0, 2.0, 5.0] {
        let at_one = bath::decay_integral(1.0, 1.0, t).unwrap();
        for s in [1.0 - 1e-4, 1.0 + 1e-4] {
            branch = branch.max(rel_err(bath::decay_integral(s, 1.0, t).unwrap(), at_one));
        }
    }
    let exact = bath::beta_bosonic(&BathParams::new(BathKind::Bosonic, 2.0)).unwrap();
    let mut dimension: f64 = 0.0;
    // Δ = 3 ± 1e-5 means s = 2 ± 2e-5
    for s in [2.0 - 2e-5, 2.0 + 2e-5] {
        dimension = dimension.max(rel_err(
            bath::beta_bosonic(&BathParams::new(BathKind::Bosonic, s)).unwrap(),
            exact,
        ));
    }
    let pass = kummer <= 1e-10 && elementary <= 1e-12 && reflection <= 1e-10 && branch <= 1e-4 && dimension <= 1e-4;
    outcome(
        pass,
        format!(
            "kummer {kummer:.1e}, 1F1(1;2;-1) {elementary:.1e}, reflection {reflection:.1e}, \
             s=1 branch {branch:.1e}, beta_B at integer dimension {dimension:.1e}"
        ),
    )
}

fn derivatives() -> Outcome {
    let h = 1e-5;
    let mut integral: f64 = 0.0;
    let mut decay: f64 = 0.0;
    for s in DERIV_S {
        for t in DERIV_T {
            let fd = (bath::decay_integral(s, 1.0, t + h).unwrap() - bath::decay_integral(s, 1.0, t - h).unwrap())
                / (2.0 * h);
            integral = integral.max(rel_err(fd, bath::decay_integral_derivative(s, 1.0, t).unwrap()));
            for kind in BathKind::ALL {
                let d = Decay::new(&params(kind, s, 0.4)).unwrap();
                let fd = (d.alpha(t + h).unwrap() - d.alpha(t - h).unwrap()) / (2.0 * h);
                decay = decay.max(rel_err(fd, d.alpha_dot(t).unwrap()));
            }
        }
    }
    outcome(
        integral <= 1e-6 && decay <= 1e-6,
        format!("max relative error: dI {integral:.1e}, alpha dot {decay:.1e}"),
    )
}

fn generator() -> Outcome {
    let states = [
        BlochVector::maximally_coherent(),
        BlochVector::new(0.6, 0.0, 0.8).unwrap(),
        BlochVector::new(0.3, -0.4, -0.5).unwrap(),
    ];
    let mut worst: f64 = 0.0;
    for kind in BathKind::ALL {
        for s in DERIV_S {
            let p = params(kind, s, 0.4);
            let d = Decay::new(&p).unwrap();
            for t in DERIV_T {
                let (a, a_dot) = d.alpha_and_dot(t).unwrap();
                for v0 in &states {
                    let formula = generator_singular_values(kind, v0, a, a_dot);
                    let (lo, hi) = hermitian_singular_values(&state_derivative_fd(&p, v0, t, 1e-5));
                    worst = worst.max((formula.lo - lo).abs()).max((formula.hi - hi).abs());
                }
            }
        }
    }
    outcome(worst <= 1e-5, format!("max absolute difference = {worst:.1e}"))
}

fn csv_round_trip() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = RunConfig {
        axis: Some(qsl_core::qsl::ScanAxis::OhmicS),
        axis_lo: Some(0.05),
        axis_hi: Some(3.0),
        points: 200,
        ..RunConfig::default()
    };
    let start = Instant::now();
    cfg.out_path = dir.path().join("first.csv");
    cli::cmd_scan(&cfg).unwrap();
    let elapsed = start.elapsed();
    cfg.out_path = dir.path().join("second.csv");
    cli::cmd_scan(&cfg).unwrap();
    let first = fs::read_to_string(dir.path().join("first.csv")).unwrap();
    let identical = first.as_bytes() == fs::read(dir.path().join("second.csv")).unwrap().as_slice();

    let lines: Vec<&str> = first.lines().collect();
    let header_ok = lines[0] == CSV_HEADER;
    let columns = CSV_HEADER.split(',').count();
    let columns_ok = lines.iter().all(|l| l.split(',').count() == columns);
    let mut worst: f64 = 0.0;
    for line in &lines[1..] {
        let cols: Vec<&str> = line.split(',').collect();
        let single = RunConfig {
            s: cols[1].parse().unwrap(),
            bath: cols[2].parse().unwrap(),
            ..RunConfig::default()
        };
        let out = cli::cmd_compute(&single).unwrap();
        let keys = [
            "tau_qsl_unified",
            "tau_qsl_ml",
            "tau_qsl_mt",
            "alpha_tau",
            "alpha_target",
            "f_rel_purity",
        ];
        for (i, key) in keys.iter().enumerate() {
            let prefix = format!("{key}=");
            let recomputed: f64 = out[0]
                .split_whitespace()
                .find_map(|kv| kv.strip_prefix(prefix.as_str()))
                .unwrap()
                .parse()
                .unwrap();
            worst = worst.max(rel_err(cols[3 + i].parse().unwrap(), recomputed));
        }
    }
    let pass = identical
        && header_ok
        && columns_ok
        && lines.len() == 401
        && worst <= 1e-10
        && elapsed < Duration::from_secs(10);
    outcome(
        pass,
        format!(
            "byte-identical {identical}, header {header_ok}, constant columns {columns_ok}, {} rows, \
             round-trip max relative {worst:.1e}, 200x2 scan {elapsed:.2?}",
            lines.len() - 1
        ),
    )
}

fn main() {
    let (cells, elapsed) = grid();
    let criteria: Vec<(&str, Outcome)> = vec![
        ("tightness ml >= mt, mt = ml/sqrt2", tightness(&cells, elapsed)),
        ("unified <= tau_d", bound_sanity(&cells)),
        ("closed form matches pipeline", closed_form(&cells)),
        ("early-time decrease (tau 0.1 -> 10)", early_decrease()),
        ("late-time plateau at s = 2.5", plateau()),
        ("non-increasing in B", field_trend()),
        ("special-function oracles", special_functions()),
        ("derivative oracles", derivatives()),
        ("generator singular values", generator()),
        ("CSV determinism, round-trip, timing", csv_round_trip()),
    ];
    let mut failed = 0;
    for (i, (name, o)) in criteria.iter().enumerate() {
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict}: {name}: {}", i + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
