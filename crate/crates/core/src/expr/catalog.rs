use std::fmt;

use super::{BinOp, Expression, Func};
use crate::error::{Error, Result};

/// Built-in functions with known closed-form derivatives.
///
/// * `lnt`: ln t
/// * `logpow(γ)`: (ln(t/a))^γ on [a, b]
/// * `rlogpow(γ)`: (ln(b/t))^γ on [a, b]
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Catalog {
    Ln,
    LogPow(f64),
    RLogPow(f64),
}

impl Catalog {
    /// Recognizes a catalog name; `None` means the text is not a catalog entry.
    pub fn parse(text: &str) -> Option<Result<Catalog>> {
        let text = text.trim();
        if text == "lnt" {
            return Some(Ok(Catalog::Ln));
        }
        let (ctor, rest): (fn(f64) -> Catalog, &str) =
            if let Some(rest) = text.strip_prefix("logpow(") {
                (Catalog::LogPow, rest)
            } else if let Some(rest) = text.strip_prefix("rlogpow(") {
                (Catalog::RLogPow, rest)
            } else {
                return None;
            };
        let Some(arg) = rest.strip_suffix(')') else {
            return Some(Err(Error::Syntax {
                offset: text.len(),
                message: "expected `)` closing the catalog parameter".into(),
            }));
        };
        let gamma = match arg.trim().parse::<f64>() {
            Ok(g) if g > 0.0 && g.is_finite() => g,
            _ => {
                return Some(Err(Error::Config(format!(
                    "catalog exponent must be a positive number, got `{arg}`"
                ))))
            }
        };
        Some(Ok(ctor(gamma)))
    }

    pub fn to_expression(self, a: f64, b: f64) -> Expression {
        let log_arg = match self {
            Catalog::Ln => return Expression::call(Func::Ln, Expression::Var),
            Catalog::LogPow(_) => {
                Expression::binary(BinOp::Div, Expression::Var, Expression::Const(a))
            }
            Catalog::RLogPow(_) => {
                Expression::binary(BinOp::Div, Expression::Const(b), Expression::Var)
            }
        };
        let gamma = match self {
            Catalog::LogPow(g) | Catalog::RLogPow(g) => g,
            Catalog::Ln => unreachable!(),
        };
        Expression::binary(
            BinOp::Pow,
            Expression::call(Func::Ln, log_arg),
            Expression::Const(gamma),
        )
    }
}

impl fmt::Display for Catalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Catalog::Ln => write!(f, "lnt"),
            Catalog::LogPow(g) => write!(f, "logpow({g})"),
            Catalog::RLogPow(g) => write!(f, "rlogpow({g})"),
        }
    }
}
