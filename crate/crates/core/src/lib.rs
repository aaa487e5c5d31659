//! Variable-order Caputo-Hadamard fractional derivatives.
//!
//! For 0 < a < b and an order function α: [a, b] → (0, 1), three left and
//! three right operators are provided, together with
//!
//! * exact values on log-power functions ([`closedform`]),
//! * direct quadrature of the defining integrals ([`oracle`]),
//! * approximations that use only integer-order derivatives of x, with
//!   their a-priori error bounds ([`expansion`]),
//! * CSV/SVG reporting and the `vohd` command line ([`cli`]).
//!
//! Runnable walkthroughs live in `examples/`.

pub mod cli;
pub mod closedform;
pub mod error;
pub mod expansion;
pub mod expr;
pub mod oracle;
pub mod quad;
pub mod specfun;

use std::fmt;
use std::str::FromStr;

pub use error::{Error, Result};

/// Which end of the interval the memory integral starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// Integral over [a, t].
    Left,
    /// Integral over [t, b].
    Right,
}

/// The three variable-order operators. They differ in whether α(t) sits
/// inside or outside the d/dt; type 1 differentiates x under the integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Type1,
    Type2,
    Type3,
}

impl Kind {
    pub const ALL: [Kind; 3] = [Kind::Type1, Kind::Type2, Kind::Type3];

    pub fn number(self) -> u8 {
        match self {
            Kind::Type1 => 1,
            Kind::Type2 => 2,
            Kind::Type3 => 3,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => Err(Error::Config(format!("side must be `left` or `right`, got `{s}`"))),
        }
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(Kind::Type1),
            "2" => Ok(Kind::Type2),
            "3" => Ok(Kind::Type3),
            _ => Err(Error::Config(format!("type must be 1, 2 or 3, got `{s}`"))),
        }
    }
}
