//! Moment integrals V_k(t) = ∫_a^t (ln(τ/a))^k x'(τ) dτ and
//! V̄_k(t) = ∫_t^b (ln(b/τ))^k x'(τ) dτ on a grid.

use super::ApproxSpec;
use crate::error::Result;
use crate::expr::FunctionModel;
use crate::quad::gl16;
use crate::Side;

// cells wider than this fraction of [a, b] are split before integrating
const MAX_CELL_FRACTION: f64 = 1.0 / 64.0;

/// V_k (left) or V̄_k (right) for k = 0..=max_k at every grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable {
    pub side: Side,
    pub max_k: usize,
    rows: Vec<Vec<f64>>,
}

impl MomentTable {
    /// Moments at grid index `i`, indexed by k.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, k: usize) -> f64 {
        self.rows[i][k]
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// ∫_lo^hi (ln(τ/anchor) or ln(anchor/τ))^k x'(τ) dτ for all k at once,
/// added into `acc`.
fn add_cell(x: &FunctionModel, side: Side, anchor: f64, lo: f64, hi: f64, acc: &mut [f64]) -> Result<()> {
    let (a, b) = x.interval();
    let pieces = (((hi - lo) / ((b - a) * MAX_CELL_FRACTION)).ceil() as usize).max(1);
    let width = (hi - lo) / pieces as f64;
    let (nodes, weights) = gl16();
    for j in 0..pieces {
        let p_lo = lo + width * j as f64;
        let p_hi = if j + 1 == pieces { hi } else { p_lo + width };
        let mid = 0.5 * (p_lo + p_hi);
        let half = 0.5 * (p_hi - p_lo);
        for (node, w) in nodes.iter().zip(weights) {
            let tau = mid + half * node;
            let slope = x.value_and_derivative(tau)?.deriv;
            let log = match side {
                Side::Left => (tau / anchor).ln(),
                Side::Right => (anchor / tau).ln(),
            };
            let mut term = half * w * slope;
            for v in acc.iter_mut() {
                *v += term;
                term *= log;
            }
        }
    }
    Ok(())
}

/// Prefix scan over the grid, one 16-point Gauss-Legendre rule per cell
/// (and per sub-cell) for all k simultaneously; k runs to 2N.
pub fn build_moments(x: &FunctionModel, spec: &ApproxSpec) -> Result<MomentTable> {
    build_moments_to(x, spec, 2 * spec.big_n)
}

pub fn build_moments_to(x: &FunctionModel, spec: &ApproxSpec, max_k: usize) -> Result<MomentTable> {
    let (a, b) = (spec.a, spec.b);
    let grid = &spec.grid;
    let mut rows = vec![Vec::new(); grid.len()];
    let mut acc = vec![0.0; max_k + 1];
    match spec.side {
        Side::Left => {
            let mut prev = a;
            for (i, &t) in grid.iter().enumerate() {
                add_cell(x, Side::Left, a, prev, t, &mut acc)?;
                rows[i] = acc.clone();
                prev = t;
            }
        }
        Side::Right => {
            let mut prev = b;
            for (i, &t) in grid.iter().enumerate().rev() {
                add_cell(x, Side::Right, b, t, prev, &mut acc)?;
                rows[i] = acc.clone();
                prev = t;
            }
        }
    }
    Ok(MomentTable { side: spec.side, max_k, rows })
}
