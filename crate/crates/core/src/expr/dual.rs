//! First-order forward differentiation without allocation; the quadrature
//! oracle calls this once per node.

use std::ops::{Add, Mul, Neg, Sub};

use super::as_small_integer;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual {
    pub value: f64,
    pub deriv: f64,
}

impl Dual {
    pub fn constant(value: f64) -> Self {
        Dual { value, deriv: 0.0 }
    }

    pub fn variable(value: f64) -> Self {
        Dual { value, deriv: 1.0 }
    }

    pub fn div(self, rhs: Dual) -> Result<Dual> {
        if rhs.value == 0.0 {
            return Err(Error::Domain { function: "division", x: self.value });
        }
        let q = self.value / rhs.value;
        Ok(Dual { value: q, deriv: (self.deriv - q * rhs.deriv) / rhs.value })
    }

    pub fn exp(self) -> Dual {
        let e = self.value.exp();
        Dual { value: e, deriv: e * self.deriv }
    }

    pub fn ln(self) -> Result<Dual> {
        if !(self.value > 0.0) {
            return Err(Error::Domain { function: "ln", x: self.value });
        }
        Ok(Dual { value: self.value.ln(), deriv: self.deriv / self.value })
    }

    pub fn sin(self) -> Dual {
        Dual { value: self.value.sin(), deriv: self.value.cos() * self.deriv }
    }

    pub fn cos(self) -> Dual {
        Dual { value: self.value.cos(), deriv: -self.value.sin() * self.deriv }
    }

    pub fn powf(self, p: f64) -> Result<Dual> {
        if let Some(n) = as_small_integer(p) {
            if n == 0 {
                return Ok(Dual::constant(1.0));
            }
            if n < 0 && self.value == 0.0 {
                return Err(Error::Domain { function: "pow", x: 0.0 });
            }
            let lower = self.value.powi(n - 1);
            return Ok(Dual { value: lower * self.value, deriv: n as f64 * lower * self.deriv });
        }
        if !(self.value > 0.0) {
            return Err(Error::Domain { function: "pow", x: self.value });
        }
        let v = self.value.powf(p);
        Ok(Dual { value: v, deriv: p * v / self.value * self.deriv })
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, rhs: Dual) -> Dual {
        Dual { value: self.value + rhs.value, deriv: self.deriv + rhs.deriv }
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, rhs: Dual) -> Dual {
        Dual { value: self.value - rhs.value, deriv: self.deriv - rhs.deriv }
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, rhs: Dual) -> Dual {
        Dual {
            value: self.value * rhs.value,
            deriv: self.deriv * rhs.value + self.value * rhs.deriv,
        }
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual { value: -self.value, deriv: -self.deriv }
    }
}
