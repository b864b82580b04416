//! Adaptive Simpson quadrature for (possibly vector-valued) integrands.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("adaptive quadrature exceeded depth {max_depth} on [{a}, {b}]")]
    MaxDepth { max_depth: u32, a: f64, b: f64 },
    #[error("integrand returned a non-finite value at t = {0}")]
    NonFinite(f64),
    #[error("invalid quadrature control: {0}")]
    InvalidControl(&'static str),
}

/// Tolerances for [`adaptive_simpson`]. Convergence on a panel means the
/// Richardson error estimate is below `max(abs_tol, rel_tol·|I|)`, apportioned
/// by panel width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureControl {
    abs_tol: f64,
    rel_tol: f64,
    max_depth: u32,
}

impl QuadratureControl {
    pub fn new(abs_tol: f64, rel_tol: f64, max_depth: u32) -> Result<Self, QuadratureError> {
        if !(abs_tol > 0.0) || !(rel_tol > 0.0) {
            return Err(QuadratureError::InvalidControl("tolerances must be > 0"));
        }
        if max_depth < 1 {
            return Err(QuadratureError::InvalidControl("max_depth must be >= 1"));
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_depth,
        })
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_depth(&self) -> u32 {
        self.max_depth
    }
}

impl Default for QuadratureControl {
    fn default() -> Self {
        Self {
            abs_tol: 1e-300,
            rel_tol: 1e-9,
            max_depth: 30,
        }
    }
}

const INITIAL_PANELS: usize = 8;

/// ∫_a^b f(t) dt for a scalar integrand.
pub fn adaptive_simpson<F, E>(mut f: F, a: f64, b: f64, ctl: &QuadratureControl) -> Result<f64, E>
where
    F: FnMut(f64) -> Result<f64, E>,
    E: From<QuadratureError>,
{
    let [v] = adaptive_simpson_vec(|t| f(t).map(|y| [y]), a, b, ctl)?;
    Ok(v)
}

/// Componentwise ∫_a^b f(t) dt; a panel is accepted once every component has converged.
pub fn adaptive_simpson_vec<const N: usize, F, E>(
    mut f: F,
    a: f64,
    b: f64,
    ctl: &QuadratureControl,
) -> Result<[f64; N], E>
where
    F: FnMut(f64) -> Result<[f64; N], E>,
    E: From<QuadratureError>,
{
    if a == b {
        return Ok([0.0; N]);
    }
    let mut eval = |t: f64| -> Result<[f64; N], E> {
        let y = f(t)?;
        if y.iter().any(|v| !v.is_finite()) {
            return Err(QuadratureError::NonFinite(t).into());
        }
        Ok(y)
    };

    let width = (b - a) / INITIAL_PANELS as f64;
    let nodes: Vec<f64> = (0..=2 * INITIAL_PANELS)
        .map(|i| {
            if i == 2 * INITIAL_PANELS {
                b
            } else {
                a + 0.5 * width * i as f64
            }
        })
        .collect();
    let values = nodes.iter().map(|&t| eval(t)).collect::<Result<Vec<_>, E>>()?;

    let panels: Vec<Panel<N>> = (0..INITIAL_PANELS)
        .map(|k| {
            Panel::new(
                nodes[2 * k],
                nodes[2 * k + 2],
                values[2 * k],
                values[2 * k + 1],
                values[2 * k + 2],
            )
        })
        .collect();
    let mut estimate = [0.0; N];
    for p in &panels {
        for (e, w) in estimate.iter_mut().zip(p.whole) {
            *e += w;
        }
    }
    let eps = estimate.map(|e| ctl.abs_tol.max(ctl.rel_tol * e.abs()) / INITIAL_PANELS as f64);

    let mut total = [0.0; N];
    for p in panels {
        let part = refine(&mut eval, p, eps, 0, ctl.max_depth)?;
        for (t, v) in total.iter_mut().zip(part) {
            *t += v;
        }
    }
    Ok(total)
}

#[derive(Clone, Copy)]
struct Panel<const N: usize> {
    a: f64,
    b: f64,
    fa: [f64; N],
    fm: [f64; N],
    fb: [f64; N],
    whole: [f64; N],
}

impl<const N: usize> Panel<N> {
    fn new(a: f64, b: f64, fa: [f64; N], fm: [f64; N], fb: [f64; N]) -> Self {
        let h = (b - a) / 6.0;
        let whole = std::array::from_fn(|k| h * (fa[k] + 4.0 * fm[k] + fb[k]));
        Self {
            a,
            b,
            fa,
            fm,
            fb,
            whole,
        }
    }
}

fn refine<const N: usize, F, E>(
    eval: &mut F,
    p: Panel<N>,
    eps: [f64; N],
    depth: u32,
    max_depth: u32,
) -> Result<[f64; N], E>
where
    F: FnMut(f64) -> Result<[f64; N], E>,
    E: From<QuadratureError>,
{
    let m = 0.5 * (p.a + p.b);
    let left = Panel::new(p.a, m, p.fa, eval(0.5 * (p.a + m))?, p.fm);
    let right = Panel::new(m, p.b, p.fm, eval(0.5 * (m + p.b))?, p.fb);
    let delta: [f64; N] = std::array::from_fn(|k| left.whole[k] + right.whole[k] - p.whole[k]);
    if delta.iter().zip(eps).all(|(d, e)| d.abs() <= 15.0 * e) {
        return Ok(std::array::from_fn(|k| {
            left.whole[k] + right.whole[k] + delta[k] / 15.0
        }));
    }
    if depth >= max_depth || m <= p.a || m >= p.b {
        return Err(QuadratureError::MaxDepth {
            max_depth,
            a: p.a,
            b: p.b,
        }
        .into());
    }
    let half = eps.map(|e| 0.5 * e);
    let l = refine(eval, left, half, depth + 1, max_depth)?;
    let r = refine(eval, right, half, depth + 1, max_depth)?;
    Ok(std::array::from_fn(|k| l[k] + r[k]))
}
