//! Expressions in one real variable `t`, with exact derivatives through
//! truncated Taylor arithmetic.
//!
//! Grammar (standard precedence, `^` right-associative, binds tighter than
//! unary minus):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | power
//! power   := primary ('^' unary)?
//! primary := number | 't' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
//! func    := 'ln' | 'exp' | 'sin' | 'cos'
//! ```

mod catalog;
mod dual;
mod jet;
mod model;
mod parse;

use std::fmt;

use crate::error::{Error, Result};

pub use catalog::Catalog;
pub use dual::Dual;
pub use jet::TaylorJet;
pub use model::{FunctionModel, FunctionSource, OrderFunction, ORDER_SAMPLES};
pub use parse::parse;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Ln,
    Exp,
    Sin,
    Cos,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Ln => "ln",
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
        }
    }

    pub(crate) fn from_name(name: &str) -> Option<Func> {
        match name {
            "ln" => Some(Func::Ln),
            "exp" => Some(Func::Exp),
            "sin" => Some(Func::Sin),
            "cos" => Some(Func::Cos),
            _ => None,
        }
    }
}

/// A point given as `base · e^offset`, with the offset known exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Anchor {
    pub base: f64,
    pub offset: f64,
}

/// Abstract syntax tree of a real function of `t`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expression {
    Var,
    Const(f64),
    Neg(Box<Expression>),
    Binary(BinOp, Box<Expression>, Box<Expression>),
    Call(Func, Box<Expression>),
}

impl Expression {
    pub fn constant(value: f64) -> Self {
        Expression::Const(value)
    }

    pub fn binary(op: BinOp, lhs: Expression, rhs: Expression) -> Self {
        Expression::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn call(func: Func, arg: Expression) -> Self {
        Expression::Call(func, Box::new(arg))
    }

    /// True when the tree does not reference `t`.
    pub fn is_constant(&self) -> bool {
        match self {
            Expression::Var => false,
            Expression::Const(_) => true,
            Expression::Neg(e) | Expression::Call(_, e) => e.is_constant(),
            Expression::Binary(_, l, r) => l.is_constant() && r.is_constant(),
        }
    }

    /// Value of a `t`-free subtree, if it evaluates cleanly.
    pub(crate) fn constant_value(&self) -> Option<f64> {
        if self.is_constant() {
            self.eval(f64::NAN).ok()
        } else {
            None
        }
    }

    /// Replaces every occurrence of `t` by `replacement`.
    pub fn substitute(&self, replacement: &Expression) -> Expression {
        match self {
            Expression::Var => replacement.clone(),
            Expression::Const(c) => Expression::Const(*c),
            Expression::Neg(e) => Expression::Neg(Box::new(e.substitute(replacement))),
            Expression::Call(f, e) => Expression::call(*f, e.substitute(replacement)),
            Expression::Binary(op, l, r) => {
                Expression::binary(*op, l.substitute(replacement), r.substitute(replacement))
            }
        }
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        match self {
            Expression::Var => Ok(t),
            Expression::Const(c) => Ok(*c),
            Expression::Neg(e) => Ok(-e.eval(t)?),
            Expression::Call(f, e) => {
                let u = e.eval(t)?;
                match f {
                    Func::Ln => {
                        if u > 0.0 {
                            Ok(u.ln())
                        } else {
                            Err(Error::Domain { function: "ln", x: u })
                        }
                    }
                    Func::Exp => Ok(u.exp()),
                    Func::Sin => Ok(u.sin()),
                    Func::Cos => Ok(u.cos()),
                }
            }
            Expression::Binary(op, l, r) => {
                let u = l.eval(t)?;
                let v = r.eval(t)?;
                match op {
                    BinOp::Add => Ok(u + v),
                    BinOp::Sub => Ok(u - v),
                    BinOp::Mul => Ok(u * v),
                    BinOp::Div => {
                        if v == 0.0 {
                            Err(Error::Domain { function: "division", x: u })
                        } else {
                            Ok(u / v)
                        }
                    }
                    BinOp::Pow => real_pow(u, v),
                }
            }
        }
    }

    /// Taylor coefficients `c_j = f^(j)(t0)/j!`, `j = 0..=order`.
    pub fn jet(&self, t0: f64, order: usize) -> Result<TaylorJet> {
        self.eval_jet(&TaylorJet::variable(t0, order))
    }

    /// Evaluates the expression with `t` replaced by an arbitrary jet.
    pub fn eval_jet(&self, seed: &TaylorJet) -> Result<TaylorJet> {
        self.eval_jet_at(seed, None)
    }

    /// Jet of u ↦ x(e^u) at u = ln t. Logarithms of t, t/c, c/t, c·t and
    /// t^p are linear in u and come out exact.
    pub fn log_jet(&self, t: f64, order: usize) -> Result<TaylorJet> {
        if !(t > 0.0) {
            return Err(Error::Domain { function: "ln", x: t });
        }
        self.eval_jet_at(&TaylorJet::exp_variable(t.ln(), order), Some(t))
    }

    /// d/du of ln(self(e^u)) when that is constant.
    fn log_slope(&self) -> Option<f64> {
        use Expression::*;
        match self {
            Var => Some(1.0),
            Binary(BinOp::Div, l, r) => match (&**l, &**r) {
                (Var, Const(c)) if *c > 0.0 => Some(1.0),
                (Const(c), Var) if *c > 0.0 => Some(-1.0),
                _ => None,
            },
            Binary(BinOp::Mul, l, r) => match (&**l, &**r) {
                (Var, Const(c)) | (Const(c), Var) if *c > 0.0 => Some(1.0),
                _ => None,
            },
            Binary(BinOp::Pow, l, r) => match (&**l, &**r) {
                (Var, Const(p)) => Some(*p),
                _ => None,
            },
            _ => None,
        }
    }

    fn eval_jet_at(&self, seed: &TaylorJet, log_point: Option<f64>) -> Result<TaylorJet> {
        let order = seed.order();
        match self {
            Expression::Var => Ok(seed.clone()),
            Expression::Const(c) => Ok(TaylorJet::constant(*c, order)),
            Expression::Neg(e) => Ok(-&e.eval_jet_at(seed, log_point)?),
            Expression::Call(Func::Ln, e) if log_point.is_some() && e.log_slope().is_some() => {
                let t = log_point.unwrap_or_default();
                let inner = e.eval(t)?;
                if !(inner > 0.0) {
                    return Err(Error::Domain { function: "ln", x: inner });
                }
                let mut coeffs = vec![0.0; order + 1];
                coeffs[0] = inner.ln();
                if order > 0 {
                    coeffs[1] = e.log_slope().unwrap_or_default();
                }
                Ok(TaylorJet::from_coeffs(coeffs))
            }
            Expression::Call(f, e) => {
                let u = e.eval_jet_at(seed, log_point)?;
                match f {
                    Func::Ln => u.ln(),
                    Func::Exp => Ok(u.exp()),
                    Func::Sin => Ok(u.sin_cos().0),
                    Func::Cos => Ok(u.sin_cos().1),
                }
            }
            Expression::Binary(op, l, r) => {
                let u = l.eval_jet_at(seed, log_point)?;
                if *op == BinOp::Pow {
                    if let Some(p) = r.constant_value() {
                        return u.powf(p);
                    }
                    // u^v = exp(v ln u)
                    let v = r.eval_jet_at(seed, log_point)?;
                    return Ok((&v * &u.ln()?).exp());
                }
                let v = r.eval_jet_at(seed, log_point)?;
                match op {
                    BinOp::Add => Ok(&u + &v),
                    BinOp::Sub => Ok(&u - &v),
                    BinOp::Mul => Ok(&u * &v),
                    BinOp::Div => u.div(&v),
                    BinOp::Pow => unreachable!(),
                }
            }
        }
    }

    /// Value and first derivative at `t`.
    pub fn eval_d1(&self, t: f64) -> Result<Dual> {
        self.eval_dual(Dual::variable(t))
    }

    /// Value and first derivative at `t = anchor.base · e^(anchor.offset)`.
    /// ln(t/base), ln(base/t) and, for base 1, ln t take their value from the
    /// offset, which keeps full relative accuracy when t is next to base.
    pub fn eval_d1_anchored(&self, t: f64, anchor: Anchor) -> Result<Dual> {
        self.eval_dual_at(Dual::variable(t), Some(anchor))
    }

    fn anchored_log(&self, anchor: Anchor) -> Option<f64> {
        use Expression::*;
        match self {
            Var if anchor.base == 1.0 => Some(anchor.offset),
            Binary(BinOp::Div, l, r) => match (&**l, &**r) {
                (Var, Const(c)) if *c == anchor.base => Some(anchor.offset),
                (Const(c), Var) if *c == anchor.base => Some(-anchor.offset),
                _ => None,
            },
            _ => None,
        }
    }

    fn eval_dual(&self, seed: Dual) -> Result<Dual> {
        self.eval_dual_at(seed, None)
    }

    fn eval_dual_at(&self, seed: Dual, anchor: Option<Anchor>) -> Result<Dual> {
        match self {
            Expression::Var => Ok(seed),
            Expression::Const(c) => Ok(Dual::constant(*c)),
            Expression::Neg(e) => Ok(-e.eval_dual_at(seed, anchor)?),
            Expression::Call(f, e) => {
                let u = e.eval_dual_at(seed, anchor)?;
                match f {
                    Func::Ln => {
                        let mut d = u.ln()?;
                        if let Some(offset) = anchor.and_then(|a| e.anchored_log(a)) {
                            d.value = offset;
                        }
                        Ok(d)
                    }
                    Func::Exp => Ok(u.exp()),
                    Func::Sin => Ok(u.sin()),
                    Func::Cos => Ok(u.cos()),
                }
            }
            Expression::Binary(op, l, r) => {
                let u = l.eval_dual_at(seed, anchor)?;
                if *op == BinOp::Pow {
                    if let Some(p) = r.constant_value() {
                        return u.powf(p);
                    }
                    let v = r.eval_dual_at(seed, anchor)?;
                    return Ok((v * u.ln()?).exp());
                }
                let v = r.eval_dual_at(seed, anchor)?;
                match op {
                    BinOp::Add => Ok(u + v),
                    BinOp::Sub => Ok(u - v),
                    BinOp::Mul => Ok(u * v),
                    BinOp::Div => u.div(v),
                    BinOp::Pow => unreachable!(),
                }
            }
        }
    }
}

/// Exponents this close to an integer (and this small) use repeated multiplication,
/// which is valid for any sign of the base.
pub(crate) fn as_small_integer(p: f64) -> Option<i32> {
    if p == p.round() && p.abs() <= 64.0 {
        Some(p as i32)
    } else {
        None
    }
}

pub(crate) fn real_pow(u: f64, p: f64) -> Result<f64> {
    if let Some(n) = as_small_integer(p) {
        if n < 0 && u == 0.0 {
            return Err(Error::Domain { function: "pow", x: u });
        }
        return Ok(u.powi(n));
    }
    if u > 0.0 {
        Ok(u.powf(p))
    } else if u == 0.0 && p > 0.0 {
        Ok(0.0)
    } else {
        Err(Error::Domain { function: "pow", x: u })
    }
}

fn fmt_const(c: f64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if c < 0.0 {
        write!(f, "(-{:?})", -c)
    } else {
        write!(f, "{c:?}")
    }
}

impl fmt::Display for Expression {
    /// Fully parenthesized; re-parsing the output yields the same function.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expression::Var => write!(f, "t"),
            Expression::Const(c) => fmt_const(*c, f),
            Expression::Neg(e) => write!(f, "(-{e})"),
            Expression::Call(func, e) => write!(f, "{}({e})", func.name()),
            Expression::Binary(op, l, r) => {
                let sym = match op {
                    BinOp::Add => "+",
                    BinOp::Sub => "-",
                    BinOp::Mul => "*",
                    BinOp::Div => "/",
                    BinOp::Pow => "^",
                };
                write!(f, "({l} {sym} {r})")
            }
        }
    }
}
