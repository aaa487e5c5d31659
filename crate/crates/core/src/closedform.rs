//! Exact values of the six operators on log-power functions
//! (ln(t/a))^γ (left) and (ln(b/t))^γ (right).
//!
//! With L the log-distance to the base point,
//!
//! ```text
//! type 1:  Γ(γ+1)/Γ(γ+1-α) · L^(γ-α)
//! type 2:  type 1 ∓ tα'Γ(γ+1)/Γ(γ+2-α) · L^(γ+1-α) · [ln L + ψ(1-α) - ψ(γ+2-α)]
//! type 3:  type 1 ∓ tα'Γ(γ+1)/Γ(γ+2-α) · L^(γ+1-α) · [ln L - ψ(γ+2-α)]
//! ```
//!
//! with `-` on the left and `+` on the right. When γ < α the value blows up
//! as t approaches the base point; it is still returned for every t strictly
//! inside.

use crate::error::{Error, Result};
use crate::expr::{Catalog, OrderFunction};
use crate::specfun::{digamma, gamma};
use crate::{Kind, Side};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogPowerSpec {
    pub side: Side,
    pub gamma: f64,
    pub a: f64,
    pub b: f64,
}

impl LogPowerSpec {
    pub fn new(side: Side, gamma: f64, a: f64, b: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::Config(format!("log-power exponent must be positive, got {gamma}")));
        }
        if !(a > 0.0 && a < b && b.is_finite()) {
            return Err(Error::Config("interval requires 0 < a < b".into()));
        }
        Ok(LogPowerSpec { side, gamma, a, b })
    }

    /// ln(t/a) on the left, ln(b/t) on the right; errors at the base point.
    pub fn log_distance(&self, t: f64) -> Result<f64> {
        let inside = match self.side {
            Side::Left => t > self.a && t <= self.b,
            Side::Right => t >= self.a && t < self.b,
        };
        if !inside {
            return Err(Error::OutsideInterval { t, a: self.a, b: self.b });
        }
        Ok(match self.side {
            Side::Left => (t / self.a).ln(),
            Side::Right => (self.b / t).ln(),
        })
    }

    pub fn function(&self) -> Catalog {
        match self.side {
            Side::Left => Catalog::LogPow(self.gamma),
            Side::Right => Catalog::RLogPow(self.gamma),
        }
    }
}

/// Closed-form value of the `kind` operator applied to the log-power in `spec`.
pub fn exact_log_power(
    spec: &LogPowerSpec,
    kind: Kind,
    order: &OrderFunction,
    t: f64,
) -> Result<f64> {
    let l = spec.log_distance(t)?;
    let (alpha, dalpha) = order.at(t)?;
    let g = spec.gamma;
    let head = gamma(g + 1.0)? / gamma(g + 1.0 - alpha)? * l.powf(g - alpha);
    if kind == Kind::Type1 || dalpha == 0.0 {
        return Ok(head);
    }
    let bracket = match kind {
        Kind::Type2 => l.ln() + digamma(1.0 - alpha)? - digamma(g + 2.0 - alpha)?,
        Kind::Type3 => l.ln() - digamma(g + 2.0 - alpha)?,
        Kind::Type1 => unreachable!(),
    };
    let correction =
        t * dalpha * gamma(g + 1.0)? / gamma(g + 2.0 - alpha)? * l.powf(g + 1.0 - alpha) * bracket;
    Ok(match spec.side {
        Side::Left => head - correction,
        Side::Right => head + correction,
    })
}

/// A catalog function that is a constant multiple of a log-power up to an
/// additive constant, which all six operators ignore.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledLogPower {
    pub scale: f64,
    pub spec: LogPowerSpec,
}

impl ScaledLogPower {
    /// * ln t = ln(t/a) + ln a = -ln(b/t) + ln b
    /// * (ln(t/a))^γ is a right-side log-power only for γ = 1, and vice versa.
    pub fn for_catalog(catalog: Catalog, side: Side, a: f64, b: f64) -> Option<ScaledLogPower> {
        let (scale, gamma) = match (catalog, side) {
            (Catalog::Ln, Side::Left) => (1.0, 1.0),
            (Catalog::Ln, Side::Right) => (-1.0, 1.0),
            (Catalog::LogPow(g), Side::Left) => (1.0, g),
            (Catalog::RLogPow(g), Side::Right) => (1.0, g),
            (Catalog::LogPow(g), Side::Right) if g == 1.0 => (-1.0, 1.0),
            (Catalog::RLogPow(g), Side::Left) if g == 1.0 => (-1.0, 1.0),
            _ => return None,
        };
        let spec = LogPowerSpec::new(side, gamma, a, b).ok()?;
        Some(ScaledLogPower { scale, spec })
    }

    pub fn eval(&self, kind: Kind, order: &OrderFunction, t: f64) -> Result<f64> {
        Ok(self.scale * exact_log_power(&self.spec, kind, order, t)?)
    }
}

/// The two reference problems: ln t on the left and ln(5/t) on the right,
/// both on [1, 5] with α(t) = t/20.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reference {
    LntLeft,
    Ln5tRight,
}

pub const REFERENCE_A: f64 = 1.0;
pub const REFERENCE_B: f64 = 5.0;
pub const REFERENCE_ORDER: &str = "t/20";

pub fn reference_order() -> OrderFunction {
    OrderFunction::parse(REFERENCE_ORDER, REFERENCE_A, REFERENCE_B).expect("t/20 lies in (0,1) on [1,5]")
}

impl Reference {
    pub fn side(self) -> Side {
        match self {
            Reference::LntLeft => Side::Left,
            Reference::Ln5tRight => Side::Right,
        }
    }

    pub fn function(self) -> Catalog {
        match self {
            Reference::LntLeft => Catalog::Ln,
            Reference::Ln5tRight => Catalog::RLogPow(1.0),
        }
    }

    pub fn spec(self) -> LogPowerSpec {
        LogPowerSpec::new(self.side(), 1.0, REFERENCE_A, REFERENCE_B).expect("valid")
    }
}

pub fn reference_exact(which: Reference, kind: Kind, t: f64) -> Result<f64> {
    exact_log_power(&which.spec(), kind, &reference_order(), t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use std::f64::consts::E;

    fn spec(side: Side, g: f64) -> LogPowerSpec {
        LogPowerSpec::new(side, g, 1.0, 5.0).unwrap()
    }

    #[test]
    fn constant_order_gamma_one_at_e() {
        let order = OrderFunction::constant(0.5, 1.0, 5.0).unwrap();
        for kind in Kind::ALL {
            let v = exact_log_power(&spec(Side::Left, 1.0), kind, &order, E).unwrap();
            assert!((v - std::f64::consts::FRAC_2_SQRT_PI).abs() < 1e-15, "{kind}");
        }
    }

    #[test]
    fn reference_reference_values() {
        // frozen from a 40-digit evaluation of (ln 2)^0.9/Γ(1.9) and (ln 2.5)^0.9/Γ(1.9)
        let left = reference_exact(Reference::LntLeft, Kind::Type1, 2.0).unwrap();
        assert!((left - 0.747_607_364_494_588_3).abs() < 1e-14, "{left}");
        let right = reference_exact(Reference::Ln5tRight, Kind::Type1, 2.0).unwrap();
        assert!((right - 0.961_082_391_333_350_2).abs() < 1e-14, "{right}");
        let at_e = reference_exact(Reference::LntLeft, Kind::Type1, E).unwrap();
        assert!((at_e - 1.0 / gamma(2.0 - E / 20.0).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn type2_minus_type3_at_three() {
        let t = 3.0;
        let alpha = 0.15;
        let d = reference_exact(Reference::LntLeft, Kind::Type2, t).unwrap()
            - reference_exact(Reference::LntLeft, Kind::Type3, t).unwrap();
        let want = -(t / 20.0) * 3f64.ln().powf(2.0 - alpha) * digamma(1.0 - alpha).unwrap()
            / gamma(3.0 - alpha).unwrap();
        assert!((d - want).abs() < 1e-15, "{d} vs {want}");
    }

    #[test]
    fn right_vanishes_at_b() {
        let v = reference_exact(Reference::Ln5tRight, Kind::Type1, 5.0 - 1e-9).unwrap();
        assert!(v.abs() < 1e-7);
        assert!(reference_exact(Reference::Ln5tRight, Kind::Type1, 5.0).is_err());
        assert!(reference_exact(Reference::LntLeft, Kind::Type2, 1.0).is_err());
    }

    #[test]
    fn constant_order_types_coincide() {
        for g in [0.5, 1.0, 2.0, 3.7] {
            let order = OrderFunction::constant(0.42, 1.0, 5.0).unwrap();
            for side in [Side::Left, Side::Right] {
                for t in [1.3, 2.9, 4.4] {
                    let s = spec(side, g);
                    let v1 = exact_log_power(&s, Kind::Type1, &order, t).unwrap();
                    for kind in [Kind::Type2, Kind::Type3] {
                        let v = exact_log_power(&s, kind, &order, t).unwrap();
                        assert!(((v - v1) / v1).abs() <= 1e-15);
                    }
                    if side == Side::Left && g == 1.0 {
                        let l = t.ln();
                        let direct = l.powf(1.0 - 0.42) / gamma(2.0 - 0.42).unwrap();
                        assert!(((v1 - direct) / direct).abs() < 1e-13);
                    }
                }
            }
        }
    }

    #[test]
    fn left_right_mirror_type1() {
        // s = ab/t maps ln(t/a) to ln(b/s); α̃(σ) = α(ab/σ)
        let (a, b) = (1.0, 5.0);
        let alpha = OrderFunction::parse("0.3+0.1*sin(t)", a, b).unwrap();
        let mirrored = OrderFunction::new(
            alpha.expression().substitute(&parse("5/t").unwrap()),
            a,
            b,
        )
        .unwrap();
        for g in [0.5, 2.0] {
            for t in [1.2, 2.5, 4.9] {
                let s = a * b / t;
                let l = exact_log_power(&spec(Side::Left, g), Kind::Type1, &alpha, t).unwrap();
                let r = exact_log_power(&spec(Side::Right, g), Kind::Type1, &mirrored, s).unwrap();
                assert!((l - r).abs() <= 1e-12 * l.abs().max(1.0));
            }
        }
    }

    #[test]
    fn catalog_mapping() {
        let order = reference_order();
        let ln_right = ScaledLogPower::for_catalog(Catalog::Ln, Side::Right, 1.0, 5.0).unwrap();
        let y = reference_exact(Reference::Ln5tRight, Kind::Type2, 2.0).unwrap();
        assert_eq!(ln_right.eval(Kind::Type2, &order, 2.0).unwrap(), -y);
        assert!(ScaledLogPower::for_catalog(Catalog::LogPow(2.0), Side::Right, 1.0, 5.0).is_none());
    }
}
