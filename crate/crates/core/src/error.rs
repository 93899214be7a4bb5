use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid order {0}: need n >= 2")]
    InvalidOrder(usize),
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("not a reduced word for the reverse permutation: {0}")]
    NotReduced(String),
    #[error("{what} = {value} out of range {lo}..={hi}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        lo: usize,
        hi: usize,
    },
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("tolerance {tol:e} not reached within the evaluation budget (estimate {estimate:e})")]
    Tolerance { tol: f64, estimate: f64 },
    #[error("no tableau maps to {0}")]
    NotFound(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_range(what: &'static str, value: usize, lo: usize, hi: usize) -> Result<()> {
    if value < lo || value > hi {
        return Err(Error::OutOfRange { what, value, lo, hi });
    }
    Ok(())
}
