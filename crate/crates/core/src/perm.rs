use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `1..=m` in one-line notation: `self[k-1]` is the image of `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let m = values.len();
        let mut seen = vec![false; m + 1];
        for &v in &values {
            if v == 0 || v > m || seen[v] {
                return Err(Error::InvalidPermutation(format!("{values:?}")));
            }
            seen[v] = true;
        }
        Ok(Self(values))
    }

    pub fn identity(m: usize) -> Self {
        Self((1..=m).collect())
    }

    /// `(m, m-1, ..., 1)`.
    pub fn reverse(m: usize) -> Self {
        Self((1..=m).rev().collect())
    }

    /// The permutation encoding the relative order of distinct `values`:
    /// `p(j) < p(k)` iff `values[j] < values[k]`.
    pub fn rank_order<T: Ord>(values: &[T]) -> Result<Self> {
        let mut idx: Vec<usize> = (0..values.len()).collect();
        idx.sort_by(|&a, &b| values[a].cmp(&values[b]));
        if idx.windows(2).any(|w| values[w[0]] == values[w[1]]) {
            return Err(Error::InvalidPermutation("rank order of repeated values".into()));
        }
        let mut ranks = vec![0; values.len()];
        for (r, &i) in idx.iter().enumerate() {
            ranks[i] = r + 1;
        }
        Ok(Self(ranks))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Image of `k` (1-based).
    pub fn apply(&self, k: usize) -> usize {
        self.0[k - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Self(inv)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Number of `j` with `self(j) < self(j+1)`.
    pub fn ascents(&self) -> usize {
        self.0.windows(2).filter(|w| w[0] < w[1]).count()
    }

    pub fn inversions(&self) -> usize {
        let mut count = 0;
        for i in 0..self.0.len() {
            for j in i + 1..self.0.len() {
                if self.0[i] > self.0[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Lexicographic enumeration of all permutations of `1..=m`.
    pub fn all(m: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(m);
        let mut used = vec![false; m + 1];
        fn rec(m: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if cur.len() == m {
                out.push(Permutation(cur.clone()));
                return;
            }
            for v in 1..=m {
                if !used[v] {
                    used[v] = true;
                    cur.push(v);
                    rec(m, cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        rec(m, &mut cur, &mut used, &mut out);
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl std::str::FromStr for Permutation {
    type Err = Error;

    /// One-line notation, comma-separated, optionally in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{p:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_order_matches_example() {
        let p = Permutation::rank_order(&[10, 13, 15, 14, 11]).unwrap();
        assert_eq!(p.as_slice(), &[1, 3, 5, 4, 2]);
        assert_eq!(p.inverse().as_slice(), &[1, 5, 2, 4, 3]);
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::rank_order(&[3, 3]).is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(Permutation::all(4).len(), 24);
        assert_eq!(Permutation::reverse(5).inversions(), 10);
        assert_eq!(Permutation::identity(5).ascents(), 4);
        assert_eq!(Permutation::reverse(5).to_string(), "(5,4,3,2,1)");
        assert_eq!("(5,4,3,2,1)".parse::<Permutation>().unwrap(), Permutation::reverse(5));
        assert!("1,1".parse::<Permutation>().is_err());
    }
}
