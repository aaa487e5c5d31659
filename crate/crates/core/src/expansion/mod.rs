//! Expansion formulas: the fractional derivative written with the
//! Hadamard-type integer-order derivatives x_k and the moments V_k.
//!
//! With L = ln(t/a) on the left (ln(b/t) on the right), type 1 is
//!
//! ```text
//! Σ_{k=1}^{n} A_k L^(k-α) x_k(t) + Σ_{k=n}^{N} B_k L^(n-k-α) V_{k-n}(t)
//! ```
//!
//! and types 2 and 3 add
//!
//! ```text
//! tα'/Γ(2-α) L^(1-α) [ (c - ln L) Σ_p w_p V_p/L^p + Σ_p w_p Σ_{r=1}^{N} V_{p+r}/(r L^(p+r)) ]
//! ```
//!
//! with w_p = (-1)^p binom(1-α, p), p = 0..N, and c = 1/(1-α) (type 2) or
//! ψ(2-α) (type 3). The right side uses Ā_k, B̄_k and V̄_k.

mod bound;
mod coeffs;
mod moments;

pub use bound::{bound_stability, error_bound, error_bound_with, BoundEstimate, BoundVariant, BOUND_SAMPLES};
pub use coeffs::{binomial_weights, coeff_a, coeff_b, CoefficientSet};
pub use moments::{build_moments, build_moments_to, MomentTable};

use crate::error::{Error, Result};
use crate::expr::{FunctionModel, OrderFunction};
use crate::specfun::{digamma, gamma};
use crate::{Kind, Side};

/// Below this distance to the base point, types 2 and 3 are not evaluated.
pub const MIN_BASE_DISTANCE: f64 = 1e-6;

/// Everything fixed for one expansion run.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxSpec {
    pub side: Side,
    pub kind: Kind,
    pub n: usize,
    pub big_n: usize,
    pub a: f64,
    pub b: f64,
    pub grid: Vec<f64>,
}

impl ApproxSpec {
    pub fn new(side: Side, kind: Kind, n: usize, big_n: usize, a: f64, b: f64, grid: Vec<f64>) -> Result<Self> {
        if !(a > 0.0 && a < b) {
            return Err(Error::Config("interval requires a < b".into()));
        }
        if n < 1 {
            return Err(Error::Config("n must be at least 1".into()));
        }
        if big_n < n {
            return Err(Error::Config(format!("N = {big_n} must be at least n = {n}")));
        }
        if grid.is_empty() {
            return Err(Error::Config("grid is empty".into()));
        }
        if grid.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Config("grid must be strictly increasing".into()));
        }
        for &t in &grid {
            let inside = match side {
                Side::Left => t > a && t <= b,
                Side::Right => t >= a && t < b,
            };
            if !inside {
                return Err(Error::OutsideInterval { t, a, b });
            }
        }
        Ok(ApproxSpec { side, kind, n, big_n, a, b, grid })
    }

    /// a + (b-a) i/count for i = 1..=count on the left and i = 0..count on
    /// the right, so the base point is never on the grid.
    pub fn uniform_grid(side: Side, a: f64, b: f64, count: usize) -> Vec<f64> {
        let step = (b - a) / count as f64;
        let range = match side {
            Side::Left => 1..count + 1,
            Side::Right => 0..count,
        };
        range
            .map(|i| if i == count { b } else { a + step * i as f64 })
            .collect()
    }

    /// Log-distance from t to the base point.
    pub fn log_distance(&self, t: f64) -> f64 {
        match self.side {
            Side::Left => (t / self.a).ln(),
            Side::Right => (self.b / t).ln(),
        }
    }

    fn base_distance(&self, t: f64) -> f64 {
        match self.side {
            Side::Left => t - self.a,
            Side::Right => self.b - t,
        }
    }

    /// Deepest x_k the approximation and the printed bound ask for.
    pub fn required_depth(&self) -> usize {
        self.big_n + 1
    }
}

// v / L^k without overflowing L^-k for small L.
fn scaled(v: f64, inv_l: f64, k: usize) -> f64 {
    let half = k / 2;
    v * inv_l.powi(half as i32) * inv_l.powi((k - half) as i32)
}

fn check_table(spec: &ApproxSpec, moments: &MomentTable, need: usize) -> Result<()> {
    if moments.side != spec.side || moments.len() != spec.grid.len() {
        return Err(Error::Config("moment table does not match the grid".into()));
    }
    if moments.max_k < need {
        return Err(Error::Config(format!("moment table holds k <= {}, need {need}", moments.max_k)));
    }
    Ok(())
}

/// Expansion of `kind` at grid index `index`, on the side given by `spec`.
pub fn approximate(
    kind: Kind,
    x: &FunctionModel,
    order: &OrderFunction,
    spec: &ApproxSpec,
    moments: &MomentTable,
    index: usize,
) -> Result<f64> {
    let t = spec.grid[index];
    let (n, big_n) = (spec.n, spec.big_n);
    let distance = spec.base_distance(t);
    let len = spec.log_distance(t);
    if len == 0.0 || (kind != Kind::Type1 && distance < MIN_BASE_DISTANCE) {
        return Err(Error::DegeneratePoint { t, distance });
    }
    let need = if kind == Kind::Type1 { big_n - n } else { 2 * big_n };
    check_table(spec, moments, need)?;
    let row = moments.row(index);
    let (alpha, dalpha) = order.at(t)?;
    let coeffs = CoefficientSet::new(spec.side, n, big_n, alpha)?;
    let xs = x.x_sequence(t, n)?;
    let inv_l = 1.0 / len;

    let mut value = 0.0;
    for k in 1..=n {
        value += coeffs.a(k) * len.powf(k as f64 - alpha) * xs[k - 1];
    }
    let base = len.powf(-alpha);
    for k in n..=big_n {
        value += coeffs.b(k) * base * scaled(row[k - n], inv_l, k - n);
    }
    if kind == Kind::Type1 || dalpha == 0.0 {
        return Ok(value);
    }

    let shift = match kind {
        Kind::Type2 => 1.0 / (1.0 - alpha),
        _ => digamma(2.0 - alpha)?,
    };
    let weights = binomial_weights(alpha, big_n + 1);
    let mut single = 0.0;
    let mut double = 0.0;
    for (p, w) in weights.iter().enumerate() {
        single += w * scaled(row[p], inv_l, p);
        let mut inner = 0.0;
        for r in 1..=big_n {
            inner += scaled(row[p + r], inv_l, p + r) / r as f64;
        }
        double += w * inner;
    }
    let block = t * dalpha / gamma(2.0 - alpha)? * len.powf(1.0 - alpha) * ((shift - len.ln()) * single + double);
    let total = value + block;
    if !total.is_finite() {
        return Err(Error::Domain { function: "expansion", x: t });
    }
    Ok(total)
}

fn on_side(spec: &ApproxSpec, side: Side) -> Result<()> {
    if spec.side == side {
        Ok(())
    } else {
        Err(Error::Config(format!("expected a {side} expansion spec, got {}", spec.side)))
    }
}

pub fn approx_type1(x: &FunctionModel, order: &OrderFunction, spec: &ApproxSpec, moments: &MomentTable, index: usize) -> Result<f64> {
    on_side(spec, Side::Left)?;
    approximate(Kind::Type1, x, order, spec, moments, index)
}

pub fn approx_type2(x: &FunctionModel, order: &OrderFunction, spec: &ApproxSpec, moments: &MomentTable, index: usize) -> Result<f64> {
    on_side(spec, Side::Left)?;
    approximate(Kind::Type2, x, order, spec, moments, index)
}

pub fn approx_type3(x: &FunctionModel, order: &OrderFunction, spec: &ApproxSpec, moments: &MomentTable, index: usize) -> Result<f64> {
    on_side(spec, Side::Left)?;
    approximate(Kind::Type3, x, order, spec, moments, index)
}

pub fn approx_right(
    kind: Kind,
    x: &FunctionModel,
    order: &OrderFunction,
    spec: &ApproxSpec,
    moments: &MomentTable,
    index: usize,
) -> Result<f64> {
    on_side(spec, Side::Right)?;
    approximate(kind, x, order, spec, moments, index)
}
