//! Truncated Taylor series arithmetic.
//!
//! Convention: `c[k] = f^(k)(t0) / k!`.

use std::ops::{Add, Mul, Neg, Sub};

use super::as_small_integer;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TaylorJet {
    coeffs: Vec<f64>,
}

impl TaylorJet {
    pub fn from_coeffs(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least one coefficient");
        TaylorJet { coeffs }
    }

    pub fn constant(c: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = c;
        TaylorJet { coeffs }
    }

    /// The identity function expanded at `t0`.
    pub fn variable(t0: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = t0;
        if order > 0 {
            coeffs[1] = 1.0;
        }
        TaylorJet { coeffs }
    }

    /// `exp(u0 + h)` as a jet in `h`: every coefficient is `e^{u0}/k!`.
    pub fn exp_variable(u0: f64, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut c = u0.exp();
        for k in 0..=order {
            if k > 0 {
                c /= k as f64;
            }
            coeffs.push(c);
        }
        TaylorJet { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// `k!·c_k`, i.e. the k-th derivative at the expansion point.
    pub fn derivative(&self, k: usize) -> f64 {
        let fact: f64 = (1..=k).map(|j| j as f64).product();
        self.coeffs[k] * fact
    }

    pub fn scale(&self, s: f64) -> TaylorJet {
        TaylorJet { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn div(&self, rhs: &TaylorJet) -> Result<TaylorJet> {
        let b0 = rhs.coeffs[0];
        if b0 == 0.0 {
            return Err(Error::Domain { function: "division", x: self.coeffs[0] });
        }
        let n = self.coeffs.len();
        let mut c = vec![0.0; n];
        for k in 0..n {
            let mut s = self.coeffs[k];
            for j in 1..=k {
                s -= rhs.coeffs[j] * c[k - j];
            }
            c[k] = s / b0;
        }
        Ok(TaylorJet { coeffs: c })
    }

    pub fn exp(&self) -> TaylorJet {
        let a = &self.coeffs;
        let n = a.len();
        let mut c = vec![0.0; n];
        c[0] = a[0].exp();
        for k in 1..n {
            let mut s = 0.0;
            for j in 1..=k {
                s += j as f64 * a[j] * c[k - j];
            }
            c[k] = s / k as f64;
        }
        TaylorJet { coeffs: c }
    }

    pub fn ln(&self) -> Result<TaylorJet> {
        let a = &self.coeffs;
        if !(a[0] > 0.0) {
            return Err(Error::Domain { function: "ln", x: a[0] });
        }
        let n = a.len();
        let mut c = vec![0.0; n];
        c[0] = a[0].ln();
        for k in 1..n {
            let mut s = k as f64 * a[k];
            for j in 1..k {
                s -= j as f64 * c[j] * a[k - j];
            }
            c[k] = s / (k as f64 * a[0]);
        }
        Ok(TaylorJet { coeffs: c })
    }

    pub fn sin_cos(&self) -> (TaylorJet, TaylorJet) {
        let a = &self.coeffs;
        let n = a.len();
        let mut s = vec![0.0; n];
        let mut c = vec![0.0; n];
        s[0] = a[0].sin();
        c[0] = a[0].cos();
        for k in 1..n {
            let (mut ss, mut cc) = (0.0, 0.0);
            for j in 1..=k {
                let w = j as f64 * a[j];
                ss += w * c[k - j];
                cc -= w * s[k - j];
            }
            s[k] = ss / k as f64;
            c[k] = cc / k as f64;
        }
        (TaylorJet { coeffs: s }, TaylorJet { coeffs: c })
    }

    fn powi(&self, n: i32) -> Result<TaylorJet> {
        let order = self.order();
        let mut result = TaylorJet::constant(1.0, order);
        let mut base = self.clone();
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        if n < 0 {
            TaylorJet::constant(1.0, order).div(&result)
        } else {
            Ok(result)
        }
    }

    /// `u^p` for a constant exponent: repeated products for small integers,
    /// otherwise `exp(p ln u)` with `u > 0` required.
    pub fn powf(&self, p: f64) -> Result<TaylorJet> {
        if let Some(n) = as_small_integer(p) {
            return self.powi(n);
        }
        if !(self.coeffs[0] > 0.0) {
            return Err(Error::Domain { function: "pow", x: self.coeffs[0] });
        }
        Ok(self.ln()?.scale(p).exp())
    }
}

impl Add for &TaylorJet {
    type Output = TaylorJet;
    fn add(self, rhs: &TaylorJet) -> TaylorJet {
        TaylorJet { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &TaylorJet {
    type Output = TaylorJet;
    fn sub(self, rhs: &TaylorJet) -> TaylorJet {
        TaylorJet { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &TaylorJet {
    type Output = TaylorJet;
    fn mul(self, rhs: &TaylorJet) -> TaylorJet {
        let n = self.coeffs.len();
        let mut c = vec![0.0; n];
        for (k, ck) in c.iter_mut().enumerate() {
            *ck = (0..=k).map(|j| self.coeffs[j] * rhs.coeffs[k - j]).sum();
        }
        TaylorJet { coeffs: c }
    }
}

impl Neg for &TaylorJet {
    type Output = TaylorJet;
    fn neg(self) -> TaylorJet {
        self.scale(-1.0)
    }
}
