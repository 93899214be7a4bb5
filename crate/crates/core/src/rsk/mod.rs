//! Last passage percolation tableaux and the RSK and Burge correspondences on
//! arbitrary Young diagrams.
//!
//! Both correspondences are computed from their path characterization: for a
//! border box `(m, n)` and `1 <= k <= min(m, n)`, the sum of the last `k`
//! entries of the output diagonal through `(m, n)` equals the maximal weight
//! of `k` disjoint non-intersecting lattice paths in the rectangle
//! `[1, m] x [1, n]`. RSK uses paths from the top row to the bottom row,
//! Burge from the bottom row to the top row.

mod classical;
mod greene;
mod lpp;
mod oracle;

use std::fmt::Debug;
use std::ops::{Add, Sub};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shapes::{Cell, Tableau};

pub use classical::{classical_rsk_rectangle, ClassicalRsk};
pub use greene::{greene_max, greene_max_bruteforce, Orientation};
pub use lpp::{dual_lpp_tableau, lpp_time, lpp_tableau};
pub use oracle::{border_distribution_exact, thm22_report, verify_rsk_burge, BorderLaw, OracleLaw};

/// Entry type of an input tableau.
pub trait Weight: Copy + PartialOrd + Add<Output = Self> + Sub<Output = Self> + Default + Debug {
    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Weight for i64 {}
impl Weight for f64 {}

/// Distribution of i.i.d. weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum WeightLaw {
    Exponential { rate: f64 },
    /// `P(G = m) = p (1-p)^(m - support)` for `m >= support`.
    Geometric { support: u64, p: BigRational },
    /// Uniform on `{0, 1}`.
    BernoulliUniform,
    Fixed,
}

/// A weight array together with the law it was drawn from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Environment<T> {
    pub weights: Tableau<T>,
    pub law: WeightLaw,
}

impl<T> Environment<T> {
    pub fn fixed(weights: Tableau<T>) -> Self {
        Self { weights, law: WeightLaw::Fixed }
    }
}

/// Converts a real tableau with integral entries.
pub fn integer_tableau(x: &Tableau<f64>) -> Result<Tableau<i64>> {
    if let Some((c, v)) = x.iter().find(|(_, v)| v.fract() != 0.0 || **v < 0.0) {
        return Err(Error::InvalidTableau(format!("non-integer or negative entry {v} at {c}")));
    }
    Ok(x.map(|&v| v as i64))
}

fn correspondence<T: Weight>(x: &Tableau<T>, orientation: Orientation) -> Tableau<T> {
    let shape = x.shape().clone();
    let mut out = Tableau::from_fn(shape.clone(), |_| T::default());
    for b in shape.border_strip() {
        let depth = b.row.min(b.col);
        let mut prev = T::default();
        for k in 1..=depth {
            let g = greene::greene_unchecked(x, b.row, b.col, k, orientation);
            *out.at_mut(b.row - k + 1, b.col - k + 1) = g - prev;
            prev = g;
        }
    }
    out
}

/// RSK image: an interlacing tableau of the same shape.
pub fn rsk<T: Weight>(x: &Tableau<T>) -> Tableau<T> {
    correspondence(x, Orientation::Rsk)
}

/// Burge image: an interlacing tableau of the same shape.
pub fn burge<T: Weight>(x: &Tableau<T>) -> Tableau<T> {
    correspondence(x, Orientation::Burge)
}

/// `sum_{i <= m, j <= n} x_{i,j}`.
pub fn rectangle_sum<T: Weight>(x: &Tableau<T>, m: usize, n: usize) -> T {
    let mut s = T::default();
    for i in 1..=m {
        for j in 1..=n {
            s = s + *x.at(i, j);
        }
    }
    s
}

/// Sum of the entries of `t` on the diagonal through `cell`.
pub fn diagonal_sum<T: Weight>(t: &Tableau<T>, cell: Cell) -> T {
    let d = cell.diagonal();
    t.iter()
        .filter(|(c, _)| c.diagonal() == d)
        .fold(T::default(), |acc, (_, &v)| acc + v)
}
