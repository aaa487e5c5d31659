use super::{parse, Anchor, Catalog, Dual, Expression, TaylorJet};
use crate::error::{Error, Result};

/// Number of points on which an order function is range-checked.
pub const ORDER_SAMPLES: usize = 1000;

const VALIDATION_POINTS: usize = 16;

/// A user-supplied function: either a catalog entry or a parsed expression.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionSource {
    Catalog(Catalog),
    Expression(Expression),
}

impl FunctionSource {
    pub fn parse(text: &str) -> Result<FunctionSource> {
        match Catalog::parse(text) {
            Some(c) => Ok(FunctionSource::Catalog(c?)),
            None => Ok(FunctionSource::Expression(parse(text)?)),
        }
    }
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if !(a > 0.0 && b.is_finite()) {
        return Err(Error::Config(format!("interval requires 0 < a, got a = {a}")));
    }
    if !(a < b) {
        return Err(Error::Config("interval requires a < b".into()));
    }
    Ok(())
}

/// The differentiated function x on [a, b], with exact access to the
/// sequence x_1 = t x', x_{k+1} = t x_k'.
#[derive(Debug, Clone)]
pub struct FunctionModel {
    expr: Expression,
    catalog: Option<Catalog>,
    a: f64,
    b: f64,
    max_depth: usize,
}

impl FunctionModel {
    /// Checks that jets of order `max_depth + 1` evaluate cleanly at interior
    /// sample points.
    pub fn new(expr: Expression, a: f64, b: f64, max_depth: usize) -> Result<Self> {
        check_interval(a, b)?;
        let model = FunctionModel { expr, catalog: None, a, b, max_depth };
        for i in 0..VALIDATION_POINTS {
            let t = a + (b - a) * (i as f64 + 0.5) / VALIDATION_POINTS as f64;
            let jet = model.log_jet(t, max_depth + 1)?;
            if let Some(bad) = jet.coeffs().iter().find(|c| !c.is_finite()) {
                return Err(Error::Domain { function: "x", x: *bad });
            }
        }
        Ok(model)
    }

    pub fn from_catalog(catalog: Catalog, a: f64, b: f64, max_depth: usize) -> Result<Self> {
        let mut model = Self::new(catalog.to_expression(a, b), a, b, max_depth)?;
        model.catalog = Some(catalog);
        Ok(model)
    }

    pub fn from_source(source: &FunctionSource, a: f64, b: f64, max_depth: usize) -> Result<Self> {
        match source {
            FunctionSource::Catalog(c) => Self::from_catalog(*c, a, b, max_depth),
            FunctionSource::Expression(e) => Self::new(e.clone(), a, b, max_depth),
        }
    }

    pub fn expression(&self) -> &Expression {
        &self.expr
    }

    pub fn catalog(&self) -> Option<Catalog> {
        self.catalog
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    pub fn value(&self, t: f64) -> Result<f64> {
        self.expr.eval(t)
    }

    /// x(t) and x'(t).
    pub fn value_and_derivative(&self, t: f64) -> Result<Dual> {
        self.expr.eval_d1(t)
    }

    /// As [`value_and_derivative`](Self::value_and_derivative) for
    /// t = base·e^offset, using the exact offset in logarithms relative to base.
    pub fn value_and_derivative_anchored(&self, t: f64, anchor: Anchor) -> Result<Dual> {
        self.expr.eval_d1_anchored(t, anchor)
    }

    /// Jet of y(u) = x(e^u) at u = ln t. Its k-th derivative is x_k(t),
    /// because t d/dt = d/du.
    fn log_jet(&self, t: f64, order: usize) -> Result<TaylorJet> {
        self.expr.log_jet(t, order)
    }

    fn check_point(&self, t: f64) -> Result<()> {
        if t >= self.a && t <= self.b {
            Ok(())
        } else {
            Err(Error::OutsideInterval { t, a: self.a, b: self.b })
        }
    }

    /// `[x_1(t), ..., x_K(t)]`.
    pub fn x_sequence(&self, t: f64, depth: usize) -> Result<Vec<f64>> {
        if depth > self.max_depth {
            return Err(Error::Depth { requested: depth, max: self.max_depth });
        }
        self.check_point(t)?;
        let jet = self.log_jet(t, depth)?;
        Ok((1..=depth).map(|k| jet.derivative(k)).collect())
    }

    /// x_k'(t) = x_{k+1}(t)/t; needs depth k+1.
    pub fn sequence_derivative(&self, t: f64, k: usize) -> Result<f64> {
        if k + 1 > self.max_depth {
            return Err(Error::Depth { requested: k + 1, max: self.max_depth });
        }
        self.check_point(t)?;
        let jet = self.log_jet(t, k + 1)?;
        Ok(jet.derivative(k + 1) / t)
    }
}

/// The variable order α(t) on [a, b], checked to stay inside (0, 1).
#[derive(Debug, Clone)]
pub struct OrderFunction {
    expr: Expression,
    a: f64,
    b: f64,
}

impl OrderFunction {
    pub fn new(expr: Expression, a: f64, b: f64) -> Result<Self> {
        check_interval(a, b)?;
        let order = OrderFunction { expr, a, b };
        for i in 0..ORDER_SAMPLES {
            let t = a + (b - a) * i as f64 / (ORDER_SAMPLES - 1) as f64;
            order.at(t)?;
        }
        Ok(order)
    }

    pub fn parse(text: &str, a: f64, b: f64) -> Result<Self> {
        Self::new(parse(text)?, a, b)
    }

    pub fn constant(value: f64, a: f64, b: f64) -> Result<Self> {
        Self::new(Expression::Const(value), a, b)
    }

    pub fn expression(&self) -> &Expression {
        &self.expr
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    /// α(t) and α'(t).
    pub fn at(&self, t: f64) -> Result<(f64, f64)> {
        let d = self.expr.eval_d1(t)?;
        if !(d.value > 0.0 && d.value < 1.0) || !d.deriv.is_finite() {
            return Err(Error::OrderRange { t, value: d.value });
        }
        Ok((d.value, d.deriv))
    }

    pub fn is_constant(&self) -> bool {
        self.expr.is_constant()
    }
}
