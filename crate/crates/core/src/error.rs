use std::fmt;

use thiserror::Error;

use crate::index::IndexMethod;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Validation(String),

    #[error("sector {sector} has zero output per labor")]
    DegenerateSector { sector: String },

    /// The subsistence good alone would need more labor than the economy has.
    #[error("subsistence infeasible: allocation needs {required:.3} of {available} workers in sector A")]
    Infeasible { required: f64, available: f64 },

    #[error("in year {year}: {source}")]
    AtYear {
        year: i64,
        #[source]
        source: Box<Error>,
    },

    #[error("period {index} out of range for panel with {len} periods")]
    OutOfRange { index: usize, len: usize },

    #[error("nominal GDP of base period {period} is zero")]
    DegenerateBase { period: usize },

    #[error("{method} index undefined: sector {sector} has zero quantity in period {period}")]
    MethodDomain {
        method: IndexMethod,
        sector: String,
        period: usize,
    },

    #[error("need at least {needed} periods, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("first and last periods differ; panel is not a closed loop")]
    NotALoop,

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("calibration failed: {0}")]
    Calibration(String),

    #[error("expected {expected} values, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("paper-compatible format requires exactly 2 sectors, panel has {0}")]
    FormatMismatch(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn validation(msg: impl fmt::Display) -> Self {
        Error::Validation(msg.to_string())
    }

    pub(crate) fn parse(line: u64, msg: impl fmt::Display) -> Self {
        Error::Parse {
            line,
            message: msg.to_string(),
        }
    }

    pub(crate) fn at_year(self, year: i64) -> Self {
        Error::AtYear {
            year,
            source: Box::new(self),
        }
    }

    /// True when the error (possibly wrapped with a year) is a model infeasibility.
    pub fn is_infeasible(&self) -> bool {
        match self {
            Error::Infeasible { .. } => true,
            Error::AtYear { source, .. } => source.is_infeasible(),
            _ => false,
        }
    }
}
