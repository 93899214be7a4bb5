use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::Weight;
use crate::error::{Error, Result};
use crate::shapes::{Cell, Tableau};

/// Direction of the non-intersecting path families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    /// Paths `(1,i) -> (m, n-k+i)` moving down and right.
    Rsk,
    /// Paths `(m,i) -> (1, n-k+i)` moving up and right.
    Burge,
}

fn check_box<T>(x: &Tableau<T>, m: usize, n: usize, k: usize) -> Result<()> {
    let shape = x.shape();
    let b = Cell::new(m, n);
    if m == 0 || n == 0 || !shape.contains(b) || shape.contains(Cell::new(m + 1, n + 1)) {
        return Err(Error::InvalidShape(format!("{b} is not a border box of {shape}")));
    }
    crate::error::check_range("path count k", k, 1, m.min(n))
}

fn row_order(m: usize, orientation: Orientation) -> Vec<usize> {
    match orientation {
        Orientation::Rsk => (1..=m).collect(),
        Orientation::Burge => (1..=m).rev().collect(),
    }
}

/// Maximal total weight of `k` disjoint paths in `[1,m] x [1,n]`.
///
/// Row transfer: a family meets each row in `k` disjoint column segments
/// `[e_i, f_i]` with `e_i <= f_i < e_{i+1}`, and the exit columns `f` are the
/// entry columns of the next row. The state is the exit tuple.
pub fn greene_max<T: Weight>(x: &Tableau<T>, m: usize, n: usize, k: usize, orientation: Orientation) -> Result<T> {
    check_box(x, m, n, k)?;
    Ok(greene_unchecked(x, m, n, k, orientation))
}

pub(super) fn greene_unchecked<T: Weight>(x: &Tableau<T>, m: usize, n: usize, k: usize, orientation: Orientation) -> T {
    let mut states: BTreeMap<Vec<usize>, T> = BTreeMap::new();
    states.insert((1..=k).collect(), T::default());
    let mut prefix = vec![T::default(); n + 1];
    for r in row_order(m, orientation) {
        for j in 1..=n {
            prefix[j] = prefix[j - 1] + *x.at(r, j);
        }
        let mut next: BTreeMap<Vec<usize>, T> = BTreeMap::new();
        let mut exits = vec![0; k];
        for (entry, &w) in &states {
            extend(entry, 0, n, &prefix, w, &mut exits, &mut next);
        }
        states = next;
    }
    let target: Vec<usize> = (n - k + 1..=n).collect();
    states[&target]
}

fn extend<T: Weight>(
    entry: &[usize],
    i: usize,
    n: usize,
    prefix: &[T],
    acc: T,
    exits: &mut Vec<usize>,
    next: &mut BTreeMap<Vec<usize>, T>,
) {
    if i == entry.len() {
        next.entry(exits.clone())
            .and_modify(|v| *v = v.max_of(acc))
            .or_insert(acc);
        return;
    }
    let hi = if i + 1 < entry.len() { entry[i + 1] - 1 } else { n };
    for f in entry[i]..=hi {
        exits[i] = f;
        extend(entry, i + 1, n, prefix, acc + prefix[f] - prefix[entry[i] - 1], exits, next);
    }
}

fn all_paths(from: Cell, to: Cell, dr: isize) -> Vec<Vec<Cell>> {
    let mut out = Vec::new();
    let mut cur = vec![from];
    fn go(cur: &mut Vec<Cell>, to: Cell, dr: isize, out: &mut Vec<Vec<Cell>>) {
        let c = *cur.last().unwrap();
        if c == to {
            out.push(cur.clone());
            return;
        }
        if c.row != to.row {
            cur.push(Cell::new((c.row as isize + dr) as usize, c.col));
            go(cur, to, dr, out);
            cur.pop();
        }
        if c.col < to.col {
            cur.push(Cell::new(c.row, c.col + 1));
            go(cur, to, dr, out);
            cur.pop();
        }
    }
    if from.col <= to.col {
        go(&mut cur, to, dr, &mut out);
    }
    out
}

/// Exhaustive maximum over all `k`-tuples of paths with the prescribed
/// endpoints, keeping only pairwise cell-disjoint tuples. Boxes up to 4x4.
pub fn greene_max_bruteforce<T: Weight>(
    x: &Tableau<T>,
    m: usize,
    n: usize,
    k: usize,
    orientation: Orientation,
) -> Result<T> {
    check_box(x, m, n, k)?;
    if m > 4 || n > 4 {
        return Err(Error::SizeCap(format!("brute force needs m, n <= 4, got ({m},{n})")));
    }
    let (start_row, end_row, dr) = match orientation {
        Orientation::Rsk => (1, m, 1),
        Orientation::Burge => (m, 1, -1),
    };
    let families: Vec<Vec<Vec<Cell>>> = (1..=k)
        .map(|i| all_paths(Cell::new(start_row, i), Cell::new(end_row, n - k + i), dr))
        .collect();
    let mut best: Option<T> = None;
    let mut chosen: Vec<&Vec<Cell>> = Vec::with_capacity(k);
    search(&families, &mut chosen, x, &mut best);
    best.ok_or_else(|| Error::NotFound("no disjoint path family".into()))
}

fn search<'a, T: Weight>(
    families: &'a [Vec<Vec<Cell>>],
    chosen: &mut Vec<&'a Vec<Cell>>,
    x: &Tableau<T>,
    best: &mut Option<T>,
) {
    let i = chosen.len();
    if i == families.len() {
        let mut seen = HashSet::new();
        let mut total = T::default();
        for p in chosen.iter() {
            for &c in p.iter() {
                if !seen.insert(c) {
                    return;
                }
                total = total + *x.at(c.row, c.col);
            }
        }
        *best = Some(best.map_or(total, |b| b.max_of(total)));
        return;
    }
    for p in &families[i] {
        chosen.push(p);
        search(families, chosen, x, best);
        chosen.pop();
    }
}
