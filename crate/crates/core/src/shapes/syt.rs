use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::{Cell, Tableau, YoungDiagram};
use crate::error::{Error, Result};
use crate::factor::GeneratingFactor;
use crate::perm::Permutation;

/// A bijective filling by `1..=N`, strictly increasing along rows and columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StandardTableau(Tableau<u32>);

impl StandardTableau {
    pub fn new(t: Tableau<u32>) -> Result<Self> {
        let n = t.shape().size();
        let mut seen = vec![false; n + 1];
        for &v in t.values() {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidTableau(format!("{t}: entries are not 1..={n}")));
            }
            seen[v] = true;
        }
        for (c, &v) in t.iter() {
            if (c.col > 1 && *t.at(c.row, c.col - 1) >= v) || (c.row > 1 && *t.at(c.row - 1, c.col) >= v) {
                return Err(Error::InvalidTableau(format!("{t}: not increasing at {c}")));
            }
        }
        Ok(Self(t))
    }

    /// Parses the `Display` form, e.g. `1,2,4/3,5/6`.
    pub fn parse(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }

    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        Self::new(Tableau::from_rows(rows)?)
    }

    pub fn shape(&self) -> &YoungDiagram {
        self.0.shape()
    }

    pub fn tableau(&self) -> &Tableau<u32> {
        &self.0
    }

    pub fn into_tableau(self) -> Tableau<u32> {
        self.0
    }

    pub fn size(&self) -> usize {
        self.0.shape().size()
    }

    pub fn at(&self, i: usize, j: usize) -> u32 {
        *self.0.at(i, j)
    }

    /// Cell holding `value`.
    pub fn position(&self, value: u32) -> Option<Cell> {
        self.0.iter().find(|&(_, &v)| v == value).map(|(c, _)| c)
    }

    /// Row index (1-based) of every entry: `rows[v-1]` is the row holding `v`.
    pub fn entry_rows(&self) -> Vec<usize> {
        let mut rows = vec![0; self.size()];
        for (c, &v) in self.0.iter() {
            rows[v as usize - 1] = c.row;
        }
        rows
    }

    /// The order `n` if the shape is the staircase of order `n`.
    pub fn staircase_order(&self) -> Option<usize> {
        let rows = self.shape().rows();
        let n = rows.len() + 1;
        (rows.iter().enumerate().all(|(i, &r)| r == n - 1 - i) && !rows.is_empty()).then_some(n)
    }
}

impl std::fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Depth-first enumeration of the standard tableaux of a shape.
///
/// Entry `k` is placed in each addable cell in increasing row order, so the
/// output order is deterministic.
pub struct SytIter {
    shape: YoungDiagram,
    fill: Vec<usize>,
    entries: Vec<Vec<u32>>,
    placed: Vec<usize>,
    started: bool,
    done: bool,
}

impl SytIter {
    pub fn new(shape: &YoungDiagram) -> Self {
        Self {
            shape: shape.clone(),
            fill: vec![0; shape.num_rows()],
            entries: shape.rows().iter().map(|&r| vec![0; r]).collect(),
            placed: Vec::with_capacity(shape.size()),
            started: false,
            done: false,
        }
    }

    fn addable_from(&self, start: usize) -> Option<usize> {
        let rows = self.shape.rows();
        (start..rows.len()).find(|&r| self.fill[r] < rows[r] && (r == 0 || self.fill[r - 1] > self.fill[r]))
    }

    fn place(&mut self, r: usize) {
        self.placed.push(r);
        self.entries[r][self.fill[r]] = self.placed.len() as u32;
        self.fill[r] += 1;
    }

    fn descend(&mut self) {
        while self.placed.len() < self.shape.size() {
            let r = self.addable_from(0).expect("a partial filling always has an addable cell");
            self.place(r);
        }
    }

    fn current(&self) -> StandardTableau {
        StandardTableau(Tableau::from_rows(self.entries.clone()).expect("valid shape"))
    }
}

impl Iterator for SytIter {
    type Item = StandardTableau;

    fn next(&mut self) -> Option<StandardTableau> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.shape.is_empty() {
                self.done = true;
                return None;
            }
            self.descend();
            return Some(self.current());
        }
        while let Some(r) = self.placed.pop() {
            self.fill[r] -= 1;
            if let Some(next) = self.addable_from(r + 1) {
                self.place(next);
                self.descend();
                return Some(self.current());
            }
        }
        self.done = true;
        None
    }
}

pub fn enumerate_syt(shape: &YoungDiagram) -> SytIter {
    SytIter::new(shape)
}

/// Number of standard tableaux by the hook length formula.
pub fn hook_length_count(shape: &YoungDiagram) -> BigUint {
    let mut num = BigUint::one();
    for k in 1..=shape.size() {
        num *= k;
    }
    let mut den = BigUint::one();
    for c in shape.cells() {
        let arm = shape.row_len(c.row) - c.col;
        let leg = shape.col_len(c.col) - c.row;
        den *= arm + leg + 1;
    }
    num / den
}

/// Number of standard tableaux counted by a walk over sub-diagrams (memoized
/// on the row-length vector); independent of the hook length formula.
pub fn count_syt(shape: &YoungDiagram) -> u128 {
    use std::collections::HashMap;
    fn rec(fill: &mut Vec<usize>, shape: &[usize], memo: &mut HashMap<Vec<usize>, u128>) -> u128 {
        if fill.iter().zip(shape).all(|(a, b)| a == b) {
            return 1;
        }
        if let Some(&v) = memo.get(fill.as_slice()) {
            return v;
        }
        let mut total = 0;
        for r in 0..shape.len() {
            if fill[r] < shape[r] && (r == 0 || fill[r - 1] > fill[r]) {
                fill[r] += 1;
                total += rec(fill, shape, memo);
                fill[r] -= 1;
            }
        }
        memo.insert(fill.clone(), total);
        total
    }
    rec(&mut vec![0; shape.num_rows()], shape.rows(), &mut HashMap::new())
}

/// The chain of sub-diagrams `lambda^(0) = {} ⊂ ... ⊂ lambda^(N)` traced by
/// a standard tableau: `lambda^(k)` holds the entries `<= k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthSequence(pub Vec<YoungDiagram>);

impl GrowthSequence {
    pub fn diagrams(&self) -> &[YoungDiagram] {
        &self.0
    }

    pub fn get(&self, k: usize) -> &YoungDiagram {
        &self.0[k]
    }
}

pub fn growth_sequence(t: &StandardTableau) -> GrowthSequence {
    let mut fill = vec![0; t.shape().num_rows()];
    let mut out = Vec::with_capacity(t.size() + 1);
    out.push(YoungDiagram::empty());
    for r in t.entry_rows() {
        fill[r - 1] += 1;
        out.push(YoungDiagram::new(fill.clone()).expect("standard tableaux grow through Young diagrams"));
    }
    GrowthSequence(out)
}

/// Path parameters of a staircase standard tableau viewed as a walk in the
/// lattice of sub-diagrams of the staircase.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauParams {
    pub order: usize,
    /// Corner entries `t(n-1,1), t(n-2,2), ..., t(1,n-1)`.
    pub cor: Vec<u32>,
    pub sigma: Permutation,
    /// `0` followed by the increasing rearrangement of `cor`.
    pub diag_bar: Vec<u32>,
    /// `deg[k]`: boxes addable to `lambda^(k)` inside the staircase, `k = 0..N-1`.
    pub deg: Vec<u32>,
    pub factor: GeneratingFactor,
}

impl TableauParams {
    /// Probability that the embedded jump chain follows this path.
    pub fn path_probability(&self) -> BigRational {
        let den: BigUint = self.deg.iter().map(|&d| BigUint::from(d)).product();
        BigRational::new(1.into(), den.into())
    }

    pub fn path_probability_f64(&self) -> f64 {
        self.path_probability().to_f64().unwrap_or(0.0)
    }
}

pub fn tableau_params(t: &StandardTableau) -> Result<TableauParams> {
    let n = t
        .staircase_order()
        .ok_or_else(|| Error::InvalidShape(format!("{} is not a staircase", t.shape())))?;
    let total = t.size();
    let cor: Vec<u32> = (1..n).map(|k| t.at(n - k, k)).collect();
    let sigma = Permutation::rank_order(&cor)?;
    let mut sorted = cor.clone();
    sorted.sort_unstable();

    let bounds: Vec<usize> = (0..n - 1).map(|r| n - 1 - r).collect();
    let mut fill = vec![0usize; n - 1];
    let mut deg = Vec::with_capacity(total);
    for r in t.entry_rows() {
        let addable = (0..n - 1)
            .filter(|&i| fill[i] < bounds[i] && (i == 0 || fill[i - 1] > fill[i]))
            .count();
        deg.push(addable as u32);
        fill[r - 1] += 1;
    }

    let marks: Vec<usize> = sorted.iter().map(|&v| v as usize).collect();
    let factor = GeneratingFactor::from_path(&marks, &deg);
    let mut diag_bar = vec![0];
    diag_bar.extend(sorted);
    Ok(TableauParams { order: n, cor, sigma, diag_bar, deg, factor })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_by_enumeration() {
        for (n, expected) in [(2, 1), (3, 2), (4, 16), (5, 768)] {
            let shape = YoungDiagram::staircase(n).unwrap();
            assert_eq!(enumerate_syt(&shape).count(), expected);
            assert_eq!(count_syt(&shape), expected as u128);
            assert_eq!(hook_length_count(&shape), BigUint::from(expected as u32));
        }
    }

    #[test]
    fn enumeration_is_ordered_and_valid() {
        let shape = YoungDiagram::new(vec![3, 2, 2]).unwrap();
        let all: Vec<_> = enumerate_syt(&shape).collect();
        assert_eq!(all.len() as u128, count_syt(&shape));
        for t in &all {
            StandardTableau::new(t.tableau().clone()).unwrap();
        }
        let keys: Vec<Vec<usize>> = all.iter().map(|t| t.entry_rows()).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn growth_starts_at_the_origin() {
        let t = StandardTableau::from_rows(vec![vec![1]]).unwrap();
        let g = growth_sequence(&t);
        assert_eq!(g.diagrams(), &[YoungDiagram::empty(), YoungDiagram::new(vec![1]).unwrap()]);
        for t in enumerate_syt(&YoungDiagram::staircase(4).unwrap()) {
            let g = growth_sequence(&t);
            assert_eq!(g.get(1).rows(), &[1]);
            assert!(g.diagrams().windows(2).all(|w| w[1].size() == w[0].size() + 1 && w[1].contains_diagram(&w[0])));
        }
    }

    #[test]
    fn rejects_non_standard() {
        assert!(StandardTableau::from_rows(vec![vec![2, 1]]).is_err());
        assert!(StandardTableau::from_rows(vec![vec![1, 3], vec![2, 2]]).is_err());
        assert!(StandardTableau::from_rows(vec![vec![1, 2], vec![4]]).is_err());
    }

    #[test]
    fn params_order_two() {
        let t = StandardTableau::from_rows(vec![vec![1]]).unwrap();
        let p = tableau_params(&t).unwrap();
        assert_eq!(p.cor, vec![1]);
        assert_eq!(p.sigma.as_slice(), &[1]);
        assert_eq!(p.deg, vec![1]);
        assert_eq!(p.factor.block(1), &[(1, 1)]);
        assert_eq!(p.diag_bar, vec![0, 1]);
    }

    #[test]
    fn params_reject_non_staircase() {
        let t = StandardTableau::from_rows(vec![vec![1, 2]]).unwrap();
        assert!(matches!(tableau_params(&t), Err(Error::InvalidShape(_))));
    }

    #[test]
    fn params_invariants_small_orders() {
        for n in 2..=5 {
            let total = n * (n - 1) / 2;
            for t in enumerate_syt(&YoungDiagram::staircase(n).unwrap()) {
                let p = tableau_params(&t).unwrap();
                assert_eq!(p.deg[0], 1);
                assert_eq!(p.deg[total - 1], 1);
                assert_eq!(p.factor.total_multiplicity() as usize, total);
                assert_eq!(p.diag_bar[n - 1] as usize, total);
                assert!((p.factor.max_shift() as usize) < n);
            }
        }
    }
}
