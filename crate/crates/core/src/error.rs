use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of {function} at {x}")]
    Pole { function: &'static str, x: f64 },

    #[error("{function} is undefined at {x}")]
    Domain { function: &'static str, x: f64 },

    #[error("{function} overflows at {x}")]
    Overflow { function: &'static str, x: f64 },

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },

    #[error("requested depth {requested} exceeds model depth {max}")]
    Depth { requested: usize, max: usize },

    #[error("order α({t}) = {value} is outside (0, 1)")]
    OrderRange { t: f64, value: f64 },

    #[error("quadrature did not reach tolerance {tolerance:e} after {levels} levels (last change {change:e})")]
    NoConvergence {
        tolerance: f64,
        levels: usize,
        change: f64,
    },

    #[error("t = {t} is outside the admissible interval [{a}, {b}]")]
    OutsideInterval { t: f64, a: f64, b: f64 },

    #[error("expansion cannot be evaluated at t = {t}: ln-distance to the base point is {distance:e}")]
    DegeneratePoint { t: f64, distance: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("malformed CSV: {0}")]
    Csv(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("at t = {t}: {source}")]
    AtPoint { t: f64, source: Box<Error> },
}

impl Error {
    pub fn at(self, t: f64) -> Error {
        match self {
            Error::AtPoint { .. } => self,
            other => Error::AtPoint { t, source: Box::new(other) },
        }
    }

    /// True for failures of the numerics rather than of the input.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::Pole { .. }
            | Error::Domain { .. }
            | Error::Overflow { .. }
            | Error::NoConvergence { .. }
            | Error::DegeneratePoint { .. } => true,
            Error::AtPoint { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}
