//! Young diagrams, tableaux and staircase standard tableaux.
//!
//! Cells are 1-based `(row, col)` pairs in English notation: row 1 is the
//! top row and rows have weakly decreasing lengths.

mod syt;
mod tableau;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use syt::{
    count_syt, enumerate_syt, growth_sequence, hook_length_count, tableau_params, GrowthSequence,
    StandardTableau, SytIter, TableauParams,
};
pub use tableau::Tableau;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }

    /// `col - row`, constant along diagonals.
    pub fn diagonal(&self) -> isize {
        self.col as isize - self.row as isize
    }
}

impl From<(usize, usize)> for Cell {
    fn from((row, col): (usize, usize)) -> Self {
        Self { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// A Young diagram given by its (positive, weakly decreasing) row lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

impl YoungDiagram {
    /// Trailing zero rows are dropped.
    pub fn new(mut rows: Vec<usize>) -> Result<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.contains(&0) || rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidShape(format!("{rows:?}")));
        }
        Ok(Self { rows })
    }

    pub fn empty() -> Self {
        Self { rows: Vec::new() }
    }

    /// The staircase `(n-1, n-2, ..., 1)` of order `n`.
    pub fn staircase(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidOrder(n));
        }
        Ok(Self { rows: (1..n).rev().collect() })
    }

    pub fn rectangle(m: usize, n: usize) -> Self {
        if m == 0 || n == 0 {
            return Self::empty();
        }
        Self { rows: vec![n; m] }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.rows.first().copied().unwrap_or(0)
    }

    /// Length of row `i` (1-based), zero past the last row.
    pub fn row_len(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.rows.get(i - 1).copied().unwrap_or(0)
    }

    /// Length of column `j` (1-based).
    pub fn col_len(&self, j: usize) -> usize {
        if j == 0 {
            return 0;
        }
        self.rows.iter().take_while(|&&r| r >= j).count()
    }

    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row >= 1 && cell.col >= 1 && cell.col <= self.row_len(cell.row)
    }

    pub fn contains_diagram(&self, other: &YoungDiagram) -> bool {
        other.rows.len() <= self.rows.len()
            && other.rows.iter().zip(&self.rows).all(|(a, b)| a <= b)
    }

    /// At most one row longer than 1.
    pub fn is_hook(&self) -> bool {
        self.rows.iter().skip(1).all(|&r| r <= 1)
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |j| Cell::new(i + 1, j)))
    }

    /// Border boxes `(i,j)` with `(i+1,j+1)` outside the diagram, as a
    /// connected path from the end of the first row to the bottom of the
    /// first column.
    pub fn border_strip(&self) -> Vec<Cell> {
        if self.is_empty() {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(self.rows.len() + self.rows[0]);
        let mut cur = Cell::new(1, self.rows[0]);
        loop {
            out.push(cur);
            let below = Cell::new(cur.row + 1, cur.col);
            if self.contains(below) {
                cur = below;
            } else if cur.col > 1 {
                cur = Cell::new(cur.row, cur.col - 1);
            } else {
                break;
            }
        }
        out
    }

    /// Corners ordered bottom-left to top-right.
    pub fn corners(&self) -> Vec<Cell> {
        let mut out: Vec<Cell> = (1..=self.rows.len())
            .filter(|&i| self.row_len(i + 1) < self.row_len(i))
            .map(|i| Cell::new(i, self.row_len(i)))
            .collect();
        out.reverse();
        out
    }

    /// Cells that can be added while staying a Young diagram inside `bound`.
    pub fn addable_within(&self, bound: &YoungDiagram) -> Vec<Cell> {
        (1..=self.rows.len() + 1)
            .filter(|&i| {
                let len = self.row_len(i);
                len < bound.row_len(i) && (i == 1 || self.row_len(i - 1) > len)
            })
            .map(|i| Cell::new(i, self.row_len(i) + 1))
            .collect()
    }

    /// Corner-diagonal weights: +1 on the diagonal of every corner
    /// `(m_k, n_k)`, -1 on the diagonals `n_{k-1} - m_k` between consecutive
    /// corners, zero elsewhere. Summing them against any RSK or Burge image
    /// recovers the total weight of the input.
    pub fn omega_weights(&self) -> Tableau<i32> {
        let corners = self.corners();
        let plus: Vec<isize> = corners.iter().map(Cell::diagonal).collect();
        let minus: Vec<isize> = corners
            .windows(2)
            .map(|w| w[0].col as isize - w[1].row as isize)
            .collect();
        Tableau::from_fn(self.clone(), |c| {
            let d = c.diagonal();
            if plus.contains(&d) {
                1
            } else if minus.contains(&d) {
                -1
            } else {
                0
            }
        })
    }

    /// All diagrams contained in an `m x n` box (including the empty one).
    pub fn all_in_box(m: usize, n: usize) -> Vec<YoungDiagram> {
        fn rec(m: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
            out.push(YoungDiagram { rows: cur.clone() });
            if cur.len() == m {
                return;
            }
            for len in 1..=max {
                cur.push(len);
                rec(m, len, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(m, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl FromStr for YoungDiagram {
    type Err = Error;

    /// Comma-separated row lengths, optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let rows = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{p:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cells(v: &[(usize, usize)]) -> Vec<Cell> {
        v.iter().map(|&c| c.into()).collect()
    }

    #[test]
    fn staircase_shapes() {
        assert_eq!(YoungDiagram::staircase(2).unwrap().rows(), &[1]);
        assert_eq!(YoungDiagram::staircase(4).unwrap().rows(), &[3, 2, 1]);
        let d6 = YoungDiagram::staircase(6).unwrap();
        assert_eq!(d6.rows(), &[5, 4, 3, 2, 1]);
        assert_eq!(d6.size(), 15);
        assert_eq!(YoungDiagram::staircase(1), Err(Error::InvalidOrder(1)));
    }

    #[test]
    fn rejects_increasing_rows() {
        assert!(YoungDiagram::new(vec![1, 2]).is_err());
        assert!(YoungDiagram::new(vec![2, 0, 1]).is_err());
        assert_eq!(YoungDiagram::new(vec![2, 1, 0]).unwrap().rows(), &[2, 1]);
    }

    #[test]
    fn border_strip_examples() {
        let lam = YoungDiagram::new(vec![4, 3, 3, 3, 1]).unwrap();
        assert_eq!(
            lam.border_strip(),
            cells(&[(1, 4), (1, 3), (2, 3), (3, 3), (4, 3), (4, 2), (4, 1), (5, 1)])
        );
        assert_eq!(YoungDiagram::new(vec![1]).unwrap().border_strip(), cells(&[(1, 1)]));
        assert_eq!(
            YoungDiagram::new(vec![2, 2]).unwrap().border_strip(),
            cells(&[(1, 2), (2, 2), (2, 1)])
        );
        assert!(YoungDiagram::empty().border_strip().is_empty());
    }

    #[test]
    fn border_strip_is_exactly_the_diagonal_ends() {
        for lam in YoungDiagram::all_in_box(4, 4) {
            let strip = lam.border_strip();
            let expected: Vec<Cell> = lam
                .cells()
                .filter(|c| !lam.contains(Cell::new(c.row + 1, c.col + 1)))
                .collect();
            let mut sorted = strip.clone();
            sorted.sort();
            assert_eq!(sorted, expected, "{lam}");
            for w in strip.windows(2) {
                let step = (w[1].row as isize - w[0].row as isize, w[1].col as isize - w[0].col as isize);
                assert!(step == (1, 0) || step == (0, -1));
            }
        }
    }

    #[test]
    fn corners_examples() {
        let lam = YoungDiagram::new(vec![4, 3, 3, 3, 1]).unwrap();
        assert_eq!(lam.corners(), cells(&[(5, 1), (4, 3), (1, 4)]));
        assert_eq!(
            YoungDiagram::staircase(5).unwrap().corners(),
            cells(&[(4, 1), (3, 2), (2, 3), (1, 4)])
        );
        assert_eq!(YoungDiagram::new(vec![2, 2]).unwrap().corners(), cells(&[(2, 2)]));
    }

    fn support(w: &Tableau<i32>, value: i32) -> Vec<Cell> {
        let mut v: Vec<Cell> = w.iter().filter(|&(_, &x)| x == value).map(|(c, _)| c).collect();
        v.sort();
        v
    }

    #[test]
    fn omega_examples() {
        let w = YoungDiagram::new(vec![4, 3, 3, 3, 1]).unwrap().omega_weights();
        let mut plus = cells(&[(5, 1), (4, 3), (3, 2), (2, 1), (1, 4)]);
        plus.sort();
        assert_eq!(support(&w, 1), plus);
        assert_eq!(support(&w, -1), cells(&[(1, 3), (4, 1)]));

        let w = YoungDiagram::new(vec![2, 2]).unwrap().omega_weights();
        assert_eq!(support(&w, 1), cells(&[(1, 1), (2, 2)]));
        assert!(support(&w, -1).is_empty());

        let w = YoungDiagram::new(vec![3, 2, 1]).unwrap().omega_weights();
        let mut plus = cells(&[(3, 1), (1, 1), (2, 2), (1, 3)]);
        plus.sort();
        assert_eq!(support(&w, 1), plus);
        assert_eq!(support(&w, -1), cells(&[(1, 2), (2, 1)]));
    }

    #[test]
    fn addable_cells() {
        let d4 = YoungDiagram::staircase(4).unwrap();
        assert_eq!(YoungDiagram::empty().addable_within(&d4), cells(&[(1, 1)]));
        let lam = YoungDiagram::new(vec![1]).unwrap();
        assert_eq!(lam.addable_within(&d4), cells(&[(1, 2), (2, 1)]));
        assert!(d4.addable_within(&d4).is_empty());
    }

    #[test]
    fn parse_and_display() {
        let lam: YoungDiagram = "(4,3,3,3,1)".parse().unwrap();
        assert_eq!(lam.to_string(), "4,3,3,3,1");
        assert!("2,3".parse::<YoungDiagram>().is_err());
        assert_eq!(YoungDiagram::all_in_box(3, 3).len(), 20);
    }
}
