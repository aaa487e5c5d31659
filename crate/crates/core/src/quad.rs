//! Quadrature engines: double-exponential (tanh-sinh) for integrands with
//! endpoint singularities, fixed-order Gauss-Legendre for smooth cells.

use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Refinement settings for the tanh-sinh engine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Target absolute error.
    pub tolerance: f64,
    /// Number of step halvings allowed after the initial unit step.
    pub max_levels: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { tolerance: 1e-10, max_levels: 12 }
    }
}

impl QuadratureConfig {
    pub fn with_tolerance(tolerance: f64) -> Result<Self> {
        QuadratureConfig { tolerance, ..Default::default() }.validated()
    }

    pub fn validated(self) -> Result<Self> {
        if !(self.tolerance > 0.0) {
            return Err(Error::Config(format!(
                "quadrature tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.max_levels < 3 {
            return Err(Error::Config("quadrature needs at least 3 refinement levels".into()));
        }
        Ok(self)
    }
}

// Nodes closer to an endpoint than this (relative) are beyond double range.
const MIN_GAP: f64 = 1e-300;
const MIN_CHECK_LEVEL: usize = 2;

/// Abscissa gaps to both ends of [0, len] and the Jacobian weight at `v`,
/// each computed without cancellation.
fn node(v: f64, len: f64) -> Option<(f64, f64, f64)> {
    let s = FRAC_PI_2 * v.sinh();
    let q = (-2.0 * s.abs()).exp();
    if q < MIN_GAP {
        return None;
    }
    let near = len * q / (1.0 + q);
    let far = len / (1.0 + q);
    let weight = FRAC_PI_2 * v.cosh() * 4.0 * q / ((1.0 + q) * (1.0 + q));
    Some(if v < 0.0 { (near, far, weight) } else { (far, near, weight) })
}

/// ∫_0^len f(u) du where `f` receives `(u, len - u)`, both accurate even
/// when the node sits next to an endpoint.
pub fn tanh_sinh<F>(len: f64, cfg: &QuadratureConfig, mut f: F) -> Result<f64>
where
    F: FnMut(f64, f64) -> Result<f64>,
{
    if len == 0.0 {
        return Ok(0.0);
    }
    let mut eval = |v: f64| -> Result<Option<f64>> {
        let Some((u, rest, w)) = node(v, len) else {
            return Ok(None);
        };
        let y = f(u, rest)?;
        if !y.is_finite() {
            return Err(Error::Domain { function: "integrand", x: u });
        }
        Ok(Some(w * y))
    };

    // level 0: unit step, all integer nodes
    let mut sum = eval(0.0)?.unwrap_or(0.0);
    for k in 1.. {
        let v = k as f64;
        let (Some(p), Some(m)) = (eval(v)?, eval(-v)?) else { break };
        sum += p + m;
    }
    let mut h = 1.0;
    let mut estimate = 0.5 * len * h * sum;

    for level in 1..=cfg.max_levels {
        h *= 0.5;
        let mut fresh = 0.0;
        for k in (1..).step_by(2) {
            let v = k as f64 * h;
            let (Some(p), Some(m)) = (eval(v)?, eval(-v)?) else { break };
            fresh += p + m;
        }
        sum += fresh;
        let next = 0.5 * len * h * sum;
        // a zero change certifies nothing below the roundoff floor
        let change = (next - estimate).abs().max(f64::EPSILON * next.abs());
        estimate = next;
        if level >= MIN_CHECK_LEVEL && change <= cfg.tolerance {
            return Ok(estimate);
        }
        if level == cfg.max_levels {
            return Err(Error::NoConvergence {
                tolerance: cfg.tolerance,
                levels: cfg.max_levels,
                change,
            });
        }
    }
    unreachable!()
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // three-term recurrence for P_n and its derivative
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pn1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pn1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

pub const GL_ORDER: usize = 16;

/// Cached nodes and weights of the 16-point rule on [-1, 1].
pub fn gl16() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(GL_ORDER))
}

/// 16-point Gauss-Legendre over [lo, hi].
pub fn gauss_legendre_16<F>(lo: f64, hi: f64, mut f: F) -> f64
where
    F: FnMut(f64) -> f64,
{
    let (nodes, weights) = gl16();
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    half * nodes.iter().zip(weights).map(|(x, w)| w * f(mid + half * x)).sum::<f64>()
}
