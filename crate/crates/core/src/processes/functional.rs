//! Scalar functionals of coordinate vectors and the multi-functional KS
//! comparison built on them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::stats::KsBattery;
use crate::error::{Error, Result};
use crate::report::TestReport;

/// A real function of a vector `(v(1), ..., v(n-1))`. Coordinates are
/// 1-based, as in the text form `c3` or `lin:2=1,5=2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Functional {
    Coordinate(usize),
    Max,
    Sum,
    /// `sum_i a_i v(k_i)` over the listed `(k_i, a_i)`.
    Linear(Vec<(usize, f64)>),
}

impl Functional {
    /// Largest coordinate index the functional reads (0 for max and sum).
    pub fn max_index(&self) -> usize {
        match self {
            Functional::Coordinate(k) => *k,
            Functional::Linear(terms) => terms.iter().map(|t| t.0).max().unwrap_or(0),
            Functional::Max | Functional::Sum => 0,
        }
    }

    pub fn eval(&self, v: &[f64]) -> f64 {
        match self {
            Functional::Coordinate(k) => v[k - 1],
            Functional::Max => v.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            Functional::Sum => v.iter().sum(),
            Functional::Linear(terms) => terms.iter().map(|&(k, a)| a * v[k - 1]).sum(),
        }
    }

    /// Every coordinate, then max and sum, then `v(2) + 2 v(5)` when the
    /// vectors are long enough to have a fifth coordinate.
    pub fn default_family(dim: usize) -> Vec<Functional> {
        let mut out: Vec<_> = (1..=dim).map(Functional::Coordinate).collect();
        out.push(Functional::Max);
        out.push(Functional::Sum);
        if dim >= 5 {
            out.push(Functional::Linear(vec![(2, 1.0), (5, 2.0)]));
        }
        out
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Functional::Coordinate(k) => write!(f, "c{k}"),
            Functional::Max => write!(f, "max"),
            Functional::Sum => write!(f, "sum"),
            Functional::Linear(terms) => {
                write!(f, "lin:")?;
                for (i, (k, a)) in terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{k}={a}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for Functional {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("functional {s:?}"));
        let index = |t: &str| match t.trim().parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k),
            _ => Err(bad()),
        };
        match s {
            "max" => Ok(Functional::Max),
            "sum" => Ok(Functional::Sum),
            _ if s.starts_with("lin:") => {
                let terms = s[4..]
                    .split(',')
                    .map(|t| {
                        let (k, a) = t.split_once('=').ok_or_else(bad)?;
                        Ok((index(k)?, a.trim().parse::<f64>().map_err(|_| bad())?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Functional::Linear(terms))
            }
            _ if s.starts_with('c') => Ok(Functional::Coordinate(index(&s[1..])?)),
            _ => Err(bad()),
        }
    }
}

/// Two-sample KS test of each functional between two batches of vectors of
/// a common length, each gated at `p > alpha`.
pub fn compare_vectors(
    name: impl Into<String>,
    a: &[Vec<f64>],
    b: &[Vec<f64>],
    functionals: &[Functional],
    alpha: f64,
) -> Result<TestReport> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput("vector batch"));
    }
    let dim = a[0].len();
    if a.iter().chain(b).any(|v| v.len() != dim) {
        return Err(Error::Parse("vectors of different lengths".into()));
    }
    if let Some(f) = functionals.iter().find(|f| f.max_index() > dim) {
        return Err(Error::Parse(format!("functional {f} needs more than {dim} coordinates")));
    }
    let mut battery = KsBattery::new(name, alpha);
    for f in functionals {
        let x: Vec<f64> = a.iter().map(|v| f.eval(v)).collect();
        let y: Vec<f64> = b.iter().map(|v| f.eval(v)).collect();
        battery.compare(&f.to_string(), &x, &y)?;
    }
    let mut report = battery.finish();
    report.sample_sizes = vec![a.len(), b.len()];
    Ok(report)
}
