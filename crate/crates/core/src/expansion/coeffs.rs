//! The coefficients A_k, B_k and their right-side counterparts.

use crate::error::{Error, Result};
use crate::specfun::{gamma, gamma_ratio};
use crate::Side;

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::OrderRange { t: f64::NAN, value: alpha })
    }
}

/// A_k = (1/Γ(k+1-α)) [1 + Σ_{p=n-k+1}^{N} Γ(α-n+p) / (Γ(α-k) (p-n+k)!)]
/// for 1 ≤ k ≤ n ≤ N.
///
/// Γ(α-n+p)/Γ(α-k) = gamma_ratio(α-n, p)/gamma_ratio(α-n, n-k), which is the
/// rising product of length m = p-n+k starting at α-k; it is accumulated
/// term by term together with 1/m!.
pub fn coeff_a(k: usize, n: usize, big_n: usize, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if k < 1 || k > n || n > big_n {
        return Err(Error::Config(format!("coeff_A needs 1 <= k <= n <= N, got k={k}, n={n}, N={big_n}")));
    }
    let start = alpha - k as f64;
    let mut term = 1.0;
    let mut bracket = 1.0;
    for m in 1..=(big_n + k - n) {
        term *= (start + (m - 1) as f64) / m as f64;
        bracket += term;
    }
    Ok(bracket / gamma(k as f64 + 1.0 - alpha)?)
}

/// B_k = Γ(α-n+k) / (Γ(1-α) Γ(α) (k-n)!) for k ≥ n, i.e.
/// gamma_ratio(α, k-n) / ((k-n)! Γ(1-α)).
pub fn coeff_b(k: usize, n: usize, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if k < n {
        return Err(Error::Config(format!("coeff_B needs k >= n, got k={k}, n={n}")));
    }
    let mut ratio = 1.0;
    for j in 0..(k - n) {
        ratio *= (alpha + j as f64) / (j + 1) as f64;
    }
    Ok(ratio / gamma(1.0 - alpha)?)
}

/// (-1)^p binom(1-α, p) = gamma_ratio(α-1, p)/p! for p = 0..=len-1.
pub fn binomial_weights(alpha: f64, len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    let mut w = 1.0;
    for p in 0..len {
        if p > 0 {
            w *= (alpha - 1.0 + (p - 1) as f64) / p as f64;
        }
        out.push(w);
    }
    debug_assert!(len == 0 || (out[len - 1] - gamma_ratio(alpha - 1.0, len - 1) / factorial(len - 1)).abs() < 1e-9);
    out
}

fn factorial(m: usize) -> f64 {
    (1..=m).map(|j| j as f64).product()
}

/// A_1..A_n and B_n..B_N at one order value, with the right-side signs
/// (Ā_k = (-1)^k A_k, B̄_k = -B_k) already applied when `side` is right.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSet {
    pub side: Side,
    pub n: usize,
    pub big_n: usize,
    pub alpha: f64,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl CoefficientSet {
    pub fn new(side: Side, n: usize, big_n: usize, alpha: f64) -> Result<Self> {
        let mut a = Vec::with_capacity(n);
        for k in 1..=n {
            let v = coeff_a(k, n, big_n, alpha)?;
            a.push(match side {
                Side::Right if k % 2 == 1 => -v,
                _ => v,
            });
        }
        let mut b = Vec::with_capacity(big_n - n + 1);
        for k in n..=big_n {
            let v = coeff_b(k, n, alpha)?;
            b.push(match side {
                Side::Left => v,
                Side::Right => -v,
            });
        }
        Ok(CoefficientSet { side, n, big_n, alpha, a, b })
    }

    /// A_k (or Ā_k), 1 ≤ k ≤ n.
    pub fn a(&self, k: usize) -> f64 {
        self.a[k - 1]
    }

    /// B_k (or B̄_k), n ≤ k ≤ N.
    pub fn b(&self, k: usize) -> f64 {
        self.b[k - self.n]
    }
}
