//! Truncation error bounds of the expansions.
//!
//! Left side, type 1:
//!
//! ```text
//! (t-a) exp((n-α)² + n-α) / (Γ(n+1-α) N^(n-α) (n-α)) · L^(n-α) · max |x'_m|
//! ```
//!
//! Types 2 and 3 add
//!
//! ```text
//! (t-a) t |α'| exp((1-α)² + 1-α) / (Γ(2-α) N^(1-α) (1-α)) · L^(1-α) · max |x'| · |c - ln L + (2t-a) L/N|
//! ```
//!
//! The right side uses b-t, L = ln(b/t), maxima over [t, b] and b in place
//! of 2t-a. Maxima are estimated from equally spaced samples.

use super::ApproxSpec;
use crate::error::Result;
use crate::expr::{FunctionModel, OrderFunction};
use crate::specfun::{digamma, gamma};
use crate::{Kind, Side};

pub const BOUND_SAMPLES: usize = 256;

/// Which derivative enters the first term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundVariant {
    /// x'_N, as the bound is usually stated.
    Printed,
    /// x'_n, the derivative the remainder integral actually contains.
    Derived,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundEstimate {
    pub value: f64,
    pub samples: usize,
}

fn sampled_max<F>(lo: f64, hi: f64, samples: usize, mut f: F) -> f64
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut best: f64 = 0.0;
    for j in 0..samples {
        let tau = if j + 1 == samples { hi } else { lo + (hi - lo) * j as f64 / (samples - 1) as f64 };
        match f(tau) {
            Ok(v) if v.is_finite() => best = best.max(v.abs()),
            _ => return f64::INFINITY,
        }
    }
    best
}

/// Printed bound with the default sample count.
pub fn error_bound(kind: Kind, x: &FunctionModel, order: &OrderFunction, spec: &ApproxSpec, t: f64) -> Result<BoundEstimate> {
    error_bound_with(kind, x, order, spec, t, BoundVariant::Printed, BOUND_SAMPLES)
}

pub fn error_bound_with(
    kind: Kind,
    x: &FunctionModel,
    order: &OrderFunction,
    spec: &ApproxSpec,
    t: f64,
    variant: BoundVariant,
    samples: usize,
) -> Result<BoundEstimate> {
    let samples = samples.max(2);
    let (alpha, dalpha) = order.at(t)?;
    let (n, big_n) = (spec.n as f64, spec.big_n as f64);
    let (lo, hi, dist, far) = match spec.side {
        Side::Left => (spec.a, t, t - spec.a, 2.0 * t - spec.a),
        Side::Right => (t, spec.b, spec.b - t, spec.b),
    };
    let len = spec.log_distance(t);
    if len == 0.0 {
        return Ok(BoundEstimate { value: 0.0, samples });
    }
    let depth = match variant {
        BoundVariant::Printed => spec.big_n,
        BoundVariant::Derived => spec.n,
    };
    let max_xm = sampled_max(lo, hi, samples, |tau| x.sequence_derivative(tau, depth));
    let e = n - alpha;
    let mut value = dist * (e * e + e).exp() / (gamma(n + 1.0 - alpha)? * big_n.powf(e) * e) * len.powf(e) * max_xm;

    if kind != Kind::Type1 && dalpha != 0.0 {
        let c = match kind {
            Kind::Type2 => 1.0 / (1.0 - alpha),
            _ => digamma(2.0 - alpha)?,
        };
        let max_x1 = sampled_max(lo, hi, samples, |tau| Ok(x.value_and_derivative(tau)?.deriv));
        let e1 = 1.0 - alpha;
        value += dist * t * dalpha.abs() * (e1 * e1 + e1).exp() / (gamma(2.0 - alpha)? * big_n.powf(e1) * e1)
            * len.powf(e1)
            * max_x1
            * (c - len.ln() + far * len / big_n).abs();
    }
    Ok(BoundEstimate { value, samples })
}

/// Relative change of the bound when the sample count doubles.
pub fn bound_stability(
    kind: Kind,
    x: &FunctionModel,
    order: &OrderFunction,
    spec: &ApproxSpec,
    t: f64,
    variant: BoundVariant,
) -> Result<f64> {
    let coarse = error_bound_with(kind, x, order, spec, t, variant, BOUND_SAMPLES)?.value;
    let fine = error_bound_with(kind, x, order, spec, t, variant, 2 * BOUND_SAMPLES)?.value;
    if fine == coarse {
        return Ok(0.0);
    }
    Ok((fine - coarse).abs() / fine.abs())
}
