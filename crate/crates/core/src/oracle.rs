//! Direct evaluation of the six operators by quadrature.
//!
//! With u the log-distance from τ to t (u = ln(t/τ) on the left,
//! u = ln(τ/t) on the right) every kernel becomes u^(-α)·(smooth) on
//! [0, L], which tanh-sinh integrates to full precision. Types 2 and 3 are
//! obtained from type 1 through the relations
//!
//! ```text
//! type 2 = type 1 + tα'/Γ(2-α) ∫ u^(1-α) x'(τ) [1/(1-α) - ln u] dτ
//! type 3 = type 2 ± tα'ψ(1-α)/Γ(1-α) ∫ u^(-α) (x(τ) - x(base)) dτ/τ
//! ```
//!
//! (`+` on the left, `-` on the right), so no derivative in t is ever taken
//! numerically. x must be C¹ on the interval.

use crate::error::{Error, Result};
use crate::expr::{Anchor, FunctionModel, OrderFunction};
pub use crate::quad::QuadratureConfig;
use crate::quad::tanh_sinh;
use crate::specfun::{digamma, gamma};
use crate::{Kind, Side};

struct Geometry {
    side: Side,
    t: f64,
    /// The far endpoint: a on the left, b on the right.
    base: f64,
    len: f64,
}

impl Geometry {
    fn new(side: Side, x: &FunctionModel, t: f64) -> Result<Self> {
        let (a, b) = x.interval();
        let inside = match side {
            Side::Left => t > a && t <= b,
            Side::Right => t >= a && t < b,
        };
        if !inside {
            return Err(Error::OutsideInterval { t, a, b });
        }
        Ok(match side {
            Side::Left => Geometry { side, t, base: a, len: (t / a).ln() },
            Side::Right => Geometry { side, t, base: b, len: (b / t).ln() },
        })
    }

    /// τ for log-distance `u` from t and `rest` from the base point,
    /// anchored at whichever end is closer.
    fn tau(&self, u: f64, rest: f64) -> f64 {
        match (self.side, u <= rest) {
            (Side::Left, true) => self.t * (-u).exp(),
            (Side::Left, false) => self.base * rest.exp(),
            (Side::Right, true) => self.t * u.exp(),
            (Side::Right, false) => self.base * (-rest).exp(),
        }
    }

    /// ln(τ/base), exact in terms of the distance `rest` from the base.
    fn anchor(&self, rest: f64) -> Anchor {
        let offset = match self.side {
            Side::Left => rest,
            Side::Right => -rest,
        };
        Anchor { base: self.base, offset }
    }

    /// x'(τ)·τ, i.e. dx/du up to sign. A node that rounds onto the base point
    /// contributes nothing if x' is unbounded there.
    fn log_slope(&self, x: &FunctionModel, u: f64, rest: f64) -> Result<f64> {
        let tau = self.tau(u, rest);
        match x.value_and_derivative_anchored(tau, self.anchor(rest)) {
            Ok(d) if d.deriv.is_finite() => Ok(d.deriv * tau),
            _ if tau == self.base => Ok(0.0),
            Ok(_) => Err(Error::Domain { function: "x'", x: tau }),
            Err(e) => Err(e),
        }
    }

    fn value(&self, x: &FunctionModel, u: f64, rest: f64) -> Result<f64> {
        let tau = self.tau(u, rest);
        Ok(x.value_and_derivative_anchored(tau, self.anchor(rest))?.value)
    }
}

/// Type 1: (±1/Γ(1-α(t))) ∫ (ln kernel)^(-α(t)) x'(τ) dτ, sign `-` on the right.
pub fn type1(
    side: Side,
    x: &FunctionModel,
    order: &OrderFunction,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let geo = Geometry::new(side, x, t)?;
    let (alpha, _) = order.at(t)?;
    let integral = tanh_sinh(geo.len, cfg, |u, rest| {
        Ok(u.powf(-alpha) * geo.log_slope(x, u, rest)?)
    })?;
    let value = integral / gamma(1.0 - alpha)?;
    Ok(match side {
        Side::Left => value,
        Side::Right => -value,
    })
}

/// Difference type 2 − type 1.
pub fn correction_12(
    side: Side,
    x: &FunctionModel,
    order: &OrderFunction,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let geo = Geometry::new(side, x, t)?;
    let (alpha, dalpha) = order.at(t)?;
    if dalpha == 0.0 {
        return Ok(0.0);
    }
    let shift = 1.0 / (1.0 - alpha);
    // on both sides ∫ over τ in increasing direction equals ∫_0^L ... τ du
    let integral = tanh_sinh(geo.len, cfg, |u, rest| {
        let kernel = u.powf(1.0 - alpha) * (shift - u.ln());
        Ok(kernel * geo.log_slope(x, u, rest)?)
    })?;
    Ok(t * dalpha / gamma(2.0 - alpha)? * integral)
}

/// Difference type 3 − type 2, sign included.
pub fn correction_23(
    side: Side,
    x: &FunctionModel,
    order: &OrderFunction,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let geo = Geometry::new(side, x, t)?;
    let (alpha, dalpha) = order.at(t)?;
    if dalpha == 0.0 {
        return Ok(0.0);
    }
    let x_base = x.value(geo.base)?;
    let integral = tanh_sinh(geo.len, cfg, |u, rest| {
        Ok(u.powf(-alpha) * (geo.value(x, u, rest)? - x_base))
    })?;
    let value = t * dalpha * digamma(1.0 - alpha)? / gamma(1.0 - alpha)? * integral;
    Ok(match side {
        Side::Left => value,
        Side::Right => -value,
    })
}

/// Any of the six operators at one point.
pub fn evaluate(
    side: Side,
    kind: Kind,
    x: &FunctionModel,
    order: &OrderFunction,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let mut value = type1(side, x, order, t, cfg)?;
    if kind >= Kind::Type2 {
        value += correction_12(side, x, order, t, cfg)?;
    }
    if kind == Kind::Type3 {
        value += correction_23(side, x, order, t, cfg)?;
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::{exact_log_power, LogPowerSpec};
    use crate::expr::{parse, Catalog};

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn log_power_gamma2_constant_order() {
        let x = FunctionModel::from_catalog(Catalog::LogPow(2.0), 1.0, 5.0, 2).unwrap();
        let order = OrderFunction::constant(0.4, 1.0, 5.0).unwrap();
        let spec = LogPowerSpec::new(Side::Left, 2.0, 1.0, 5.0).unwrap();
        let want = exact_log_power(&spec, Kind::Type1, &order, 3.0).unwrap();
        let got = type1(Side::Left, &x, &order, 3.0, &cfg()).unwrap();
        assert!((got - want).abs() < 1e-8, "{got} vs {want}");
    }

    #[test]
    fn constants_have_zero_derivative() {
        let x = FunctionModel::new(parse("7.5").unwrap(), 1.0, 5.0, 2).unwrap();
        let order = OrderFunction::parse("t/20", 1.0, 5.0).unwrap();
        for side in [Side::Left, Side::Right] {
            for kind in Kind::ALL {
                assert_eq!(evaluate(side, kind, &x, &order, 3.0, &cfg()).unwrap(), 0.0);
            }
            assert_eq!(correction_23(side, &x, &order, 2.0, &cfg()).unwrap(), 0.0);
        }
    }

    #[test]
    fn reference_left_type1_at_two() {
        let x = FunctionModel::from_catalog(Catalog::Ln, 1.0, 5.0, 2).unwrap();
        let order = OrderFunction::parse("t/20", 1.0, 5.0).unwrap();
        let got = type1(Side::Left, &x, &order, 2.0, &cfg()).unwrap();
        // (ln 2)^0.9/Γ(1.9), 40-digit reference
        assert!((got - 0.747_607_364_494_588_3).abs() < 1e-9);
    }

    #[test]
    fn corrections_match_closed_form_differences() {
        let x = FunctionModel::from_catalog(Catalog::LogPow(1.5), 1.0, 5.0, 2).unwrap();
        let order = OrderFunction::parse("0.3+0.01*t", 1.0, 5.0).unwrap();
        let spec = LogPowerSpec::new(Side::Left, 1.5, 1.0, 5.0).unwrap();
        let exact = |k| exact_log_power(&spec, k, &order, 2.0).unwrap();
        let c12 = correction_12(Side::Left, &x, &order, 2.0, &cfg()).unwrap();
        let c23 = correction_23(Side::Left, &x, &order, 2.0, &cfg()).unwrap();
        assert!((c12 - (exact(Kind::Type2) - exact(Kind::Type1))).abs() < 1e-8);
        assert!((c23 - (exact(Kind::Type3) - exact(Kind::Type2))).abs() < 1e-8);
        for kind in [Kind::Type2, Kind::Type3] {
            let v = evaluate(Side::Left, kind, &x, &order, 2.0, &cfg()).unwrap();
            assert!((v - exact(kind)).abs() < 1e-7);
        }
    }

    #[test]
    fn constant_order_kills_corrections() {
        let x = FunctionModel::new(parse("exp(t/10)*ln(t)").unwrap(), 1.0, 5.0, 2).unwrap();
        let order = OrderFunction::constant(0.6, 1.0, 5.0).unwrap();
        for side in [Side::Left, Side::Right] {
            assert_eq!(correction_12(side, &x, &order, 2.5, &cfg()).unwrap(), 0.0);
            let v1 = evaluate(side, Kind::Type1, &x, &order, 2.5, &cfg()).unwrap();
            let v3 = evaluate(side, Kind::Type3, &x, &order, 2.5, &cfg()).unwrap();
            assert_eq!(v1, v3);
        }
    }

    #[test]
    fn correction_12_vanishes_near_base_point() {
        let x = FunctionModel::from_catalog(Catalog::Ln, 1.0, 5.0, 2).unwrap();
        let order = OrderFunction::parse("t/20", 1.0, 5.0).unwrap();
        let near = correction_12(Side::Left, &x, &order, 1.0 + 1e-6, &cfg()).unwrap();
        assert!(near.abs() < 1e-9);
    }

    #[test]
    fn stress_order_close_to_one() {
        // α = 0.95: u^0.05 ln u kernel in the type-2 correction
        let x = FunctionModel::from_catalog(Catalog::LogPow(1.0), 1.0, 5.0, 2).unwrap();
        let order = OrderFunction::parse("0.9+0.01*t", 1.0, 5.0).unwrap();
        let spec = LogPowerSpec::new(Side::Left, 1.0, 1.0, 5.0).unwrap();
        for kind in Kind::ALL {
            let want = exact_log_power(&spec, kind, &order, 5.0).unwrap();
            let got = evaluate(Side::Left, kind, &x, &order, 5.0, &cfg()).unwrap();
            assert!((got - want).abs() < 1e-7, "{kind}: {got} vs {want}");
        }
    }

    #[test]
    fn outside_interval_rejected() {
        let x = FunctionModel::from_catalog(Catalog::Ln, 1.0, 5.0, 2).unwrap();
        let order = OrderFunction::parse("t/20", 1.0, 5.0).unwrap();
        assert!(type1(Side::Left, &x, &order, 1.0, &cfg()).is_err());
        assert!(type1(Side::Right, &x, &order, 5.0, &cfg()).is_err());
        assert!(type1(Side::Left, &x, &order, 5.5, &cfg()).is_err());
    }

    #[test]
    fn tight_tolerance_escalates() {
        let x = FunctionModel::from_catalog(Catalog::Ln, 1.0, 5.0, 2).unwrap();
        let order = OrderFunction::parse("t/20", 1.0, 5.0).unwrap();
        let strict = QuadratureConfig { tolerance: 1e-30, max_levels: 8 };
        assert!(matches!(
            type1(Side::Left, &x, &order, 3.0, &strict),
            Err(Error::NoConvergence { .. })
        ));
    }
}
