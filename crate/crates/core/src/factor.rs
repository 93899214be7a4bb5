use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

/// A product `prod_k prod_d 1/(x_k + d)^m` where every factor involves a
/// single variable.
///
/// `blocks[k-1]` lists `(d, m)` pairs for the variable `x_k`, sorted by the
/// shift `d` with no repeats.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratingFactor {
    blocks: Vec<Vec<(u32, u32)>>,
}

impl GeneratingFactor {
    /// Builds the factor of a path from its sorted marks and out-degree
    /// sequence.
    ///
    /// `marks` is the increasing rearrangement of the marked jump indices
    /// (one per variable, the largest equal to `deg.len()`). The jump `j`
    /// with `marks[k-2] < j <= marks[k-1]` contributes `1/(x_k + deg[j-1])`,
    /// i.e. the rate of the state the jump leaves.
    pub fn from_path(marks: &[usize], deg: &[u32]) -> Self {
        let mut blocks = Vec::with_capacity(marks.len());
        let mut prev = 0;
        for &mark in marks {
            let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
            for j in prev + 1..=mark {
                *counts.entry(deg[j - 1]).or_insert(0) += 1;
            }
            blocks.push(counts.into_iter().collect());
            prev = mark;
        }
        Self { blocks }
    }

    /// Builds a factor from explicit per-variable `(shift, multiplicity)` lists.
    pub fn from_blocks(blocks: Vec<Vec<(u32, u32)>>) -> Self {
        let blocks = blocks
            .into_iter()
            .map(|b| {
                let mut m: BTreeMap<u32, u32> = BTreeMap::new();
                for (d, e) in b {
                    *m.entry(d).or_insert(0) += e;
                }
                m.into_iter().filter(|&(_, e)| e > 0).collect()
            })
            .collect();
        Self { blocks }
    }

    pub fn num_vars(&self) -> usize {
        self.blocks.len()
    }

    /// `(shift, multiplicity)` pairs of variable `x_k` (1-based `k`).
    pub fn block(&self, k: usize) -> &[(u32, u32)] {
        &self.blocks[k - 1]
    }

    pub fn blocks(&self) -> &[Vec<(u32, u32)>] {
        &self.blocks
    }

    /// Map `(k, d) -> multiplicity`.
    pub fn exponents(&self) -> BTreeMap<(usize, u32), u32> {
        let mut out = BTreeMap::new();
        for (k, b) in self.blocks.iter().enumerate() {
            for &(d, e) in b {
                out.insert((k + 1, d), e);
            }
        }
        out
    }

    /// Sum of all multiplicities (the number of jumps of the path).
    pub fn total_multiplicity(&self) -> u32 {
        self.blocks.iter().flatten().map(|&(_, e)| e).sum()
    }

    pub fn max_shift(&self) -> u32 {
        self.blocks.iter().flatten().map(|&(d, _)| d).max().unwrap_or(0)
    }

    pub fn eval_rational(&self, x: &[BigRational]) -> BigRational {
        let mut den = BigRational::one();
        for (k, b) in self.blocks.iter().enumerate() {
            for &(d, e) in b {
                let base = &x[k] + BigRational::from_integer(BigInt::from(d));
                den *= num_traits::pow(base, e as usize);
            }
        }
        den.recip()
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        let mut v = 1.0;
        for (k, b) in self.blocks.iter().enumerate() {
            for &(d, e) in b {
                v /= (x[k] + d as f64).powi(e as i32);
            }
        }
        v
    }
}

impl fmt::Display for GeneratingFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/(")?;
        for (k, b) in self.blocks.iter().enumerate() {
            for &(d, e) in b {
                if e == 1 {
                    write!(f, "(x{}+{})", k + 1, d)?;
                } else {
                    write!(f, "(x{}+{})^{}", k + 1, d, e)?;
                }
            }
        }
        write!(f, ")")
    }
}
