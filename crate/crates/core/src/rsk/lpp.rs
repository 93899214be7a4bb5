use super::Weight;
use crate::error::{Error, Result};
use crate::shapes::{Cell, Tableau};

/// `L_{i,j}`: maximal weight of an up-right path from `(1,1)` to `(i,j)`.
pub fn lpp_tableau<T: Weight>(x: &Tableau<T>) -> Tableau<T> {
    let mut l = x.clone();
    let shape = x.shape().clone();
    for c in shape.cells() {
        let up = if c.row > 1 { Some(*l.at(c.row - 1, c.col)) } else { None };
        let left = if c.col > 1 { Some(*l.at(c.row, c.col - 1)) } else { None };
        let best = match (up, left) {
            (Some(a), Some(b)) => a.max_of(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => T::default(),
        };
        *l.at_mut(c.row, c.col) = best + *x.at(c.row, c.col);
    }
    l
}

/// `L*_{i,j} = L(i,1; 1,j)`: maximal weight of a path from `(i,1)` to `(1,j)`
/// moving up and right.
pub fn dual_lpp_tableau<T: Weight>(x: &Tableau<T>) -> Tableau<T> {
    let shape = x.shape();
    let mut out = x.clone();
    for i in 1..=shape.num_rows() {
        let width = shape.row_len(i);
        // best[b] for the current row a, processed from row i up to row 1
        let mut best: Vec<T> = Vec::with_capacity(width);
        for a in (1..=i).rev() {
            for b in 1..=width {
                let below = if a < i { Some(best[b - 1]) } else { None };
                let left = if b > 1 { Some(best[b - 2]) } else { None };
                let prev = match (below, left) {
                    (Some(p), Some(q)) => p.max_of(q),
                    (Some(p), None) | (None, Some(p)) => p,
                    (None, None) => T::default(),
                };
                let v = prev + *x.at(a, b);
                if a == i {
                    best.push(v);
                } else {
                    best[b - 1] = v;
                }
            }
        }
        for (j, v) in best.into_iter().enumerate() {
            *out.at_mut(i, j + 1) = v;
        }
    }
    out
}

/// `L(a,b; c,d)`: maximal weight of a monotone lattice path between two
/// cells whose bounding rectangle lies in the shape.
pub fn lpp_time<T: Weight>(x: &Tableau<T>, from: Cell, to: Cell) -> Result<T> {
    let shape = x.shape();
    let (r0, r1) = (from.row.min(to.row), from.row.max(to.row));
    let (c0, c1) = (from.col.min(to.col), from.col.max(to.col));
    if r0 == 0 || c0 == 0 || !shape.contains(Cell::new(r1, c1)) {
        return Err(Error::InvalidShape(format!("rectangle spanned by {from} and {to} leaves {shape}")));
    }
    let dr: isize = if to.row >= from.row { 1 } else { -1 };
    let dc: isize = if to.col >= from.col { 1 } else { -1 };
    let h = r1 - r0 + 1;
    let w = c1 - c0 + 1;
    let mut best = vec![T::default(); h * w];
    for s in 0..h {
        for t in 0..w {
            let row = (from.row as isize + dr * s as isize) as usize;
            let col = (from.col as isize + dc * t as isize) as usize;
            let prev = match (s > 0, t > 0) {
                (true, true) => best[(s - 1) * w + t].max_of(best[s * w + t - 1]),
                (true, false) => best[(s - 1) * w + t],
                (false, true) => best[s * w + t - 1],
                (false, false) => T::default(),
            };
            best[s * w + t] = prev + *x.at(row, col);
        }
    }
    Ok(best[h * w - 1])
}
