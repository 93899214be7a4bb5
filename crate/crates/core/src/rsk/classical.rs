use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shapes::{Tableau, YoungDiagram};

/// Row-insertion RSK of a rectangular matrix together with its diagonal
/// re-encoding as an interlacing tableau.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalRsk {
    /// Insertion tableau, filled with column indices.
    pub p: Vec<Vec<u32>>,
    /// Recording tableau, filled with row indices.
    pub q: Vec<Vec<u32>>,
    pub encoding: Tableau<i64>,
}

fn insert(p: &mut Vec<Vec<u32>>, mut v: u32) -> usize {
    for (r, row) in p.iter_mut().enumerate() {
        match row.iter().position(|&w| w > v) {
            Some(pos) => v = std::mem::replace(&mut row[pos], v),
            None => {
                row.push(v);
                return r;
            }
        }
    }
    p.push(vec![v]);
    p.len() - 1
}

fn part(shape: &[usize], t: usize) -> i64 {
    shape.get(t - 1).copied().unwrap_or(0) as i64
}

/// Inserts the two-line array of `x` (each pair `(i,j)` repeated `x_{i,j}`
/// times, in lexicographic order), then reads the shapes of the chain
/// `P|_{<= l}` (for diagonals ending in the last row) and of `P` after `k`
/// matrix rows (for diagonals ending in the last column).
pub fn classical_rsk_rectangle(x: &Tableau<i64>) -> Result<ClassicalRsk> {
    let shape = x.shape();
    let m = shape.num_rows();
    let n = shape.num_cols();
    if *shape != YoungDiagram::rectangle(m, n) {
        return Err(Error::InvalidShape(format!("{shape} is not a rectangle")));
    }
    if let Some((c, v)) = x.iter().find(|(_, v)| **v < 0) {
        return Err(Error::InvalidTableau(format!("negative entry {v} at {c}")));
    }
    let mut p: Vec<Vec<u32>> = Vec::new();
    let mut q: Vec<Vec<u32>> = Vec::new();
    let mut encoding = Tableau::from_fn(shape.clone(), |_| 0i64);
    for i in 1..=m {
        for j in 1..=n {
            for _ in 0..*x.at(i, j) {
                let r = insert(&mut p, j as u32);
                if r == q.len() {
                    q.push(Vec::new());
                }
                q[r].push(i as u32);
            }
        }
        let mu: Vec<usize> = p.iter().map(Vec::len).collect();
        for t in 1..=i.min(n) {
            *encoding.at_mut(i - t + 1, n - t + 1) = part(&mu, t);
        }
    }
    for l in 1..n {
        let mu: Vec<usize> = p.iter().map(|row| row.iter().filter(|&&v| v as usize <= l).count()).collect();
        for t in 1..=m.min(l) {
            *encoding.at_mut(m - t + 1, l - t + 1) = part(&mu, t);
        }
    }
    Ok(ClassicalRsk { p, q, encoding })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rsk::rsk;

    #[test]
    fn small_cases() {
        let one = Tableau::from_rows(vec![vec![1i64]]).unwrap();
        let c = classical_rsk_rectangle(&one).unwrap();
        assert_eq!((c.p.clone(), c.q.clone()), (vec![vec![1]], vec![vec![1]]));
        assert_eq!(c.encoding.rows(), &[vec![1]]);

        let x = Tableau::from_rows(vec![vec![1, 2], vec![3, 4]]).unwrap();
        let c = classical_rsk_rectangle(&x).unwrap();
        assert_eq!(c.p, vec![vec![1, 1, 1, 1, 2, 2, 2, 2], vec![2, 2]]);
        assert_eq!(c.q, vec![vec![1, 1, 1, 2, 2, 2, 2, 2], vec![2, 2]]);
        assert_eq!(c.encoding.rows(), &[vec![2, 3], vec![4, 8]]);
        assert_eq!(c.encoding, rsk(&x));

        let zero = Tableau::from_fn(YoungDiagram::rectangle(2, 3), |_| 0i64);
        let c = classical_rsk_rectangle(&zero).unwrap();
        assert!(c.p.is_empty() && c.q.is_empty());
        assert!(c.encoding.values().all(|&v| v == 0));
    }

    #[test]
    fn agrees_with_greene_on_rectangles() {
        let mut s = 5u64;
        for (m, n) in [(2, 3), (3, 2), (3, 3), (1, 4), (4, 3)] {
            for _ in 0..30 {
                let x = Tableau::from_fn(YoungDiagram::rectangle(m, n), |_| {
                    s = s.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
                    ((s >> 40) % 4) as i64
                });
                assert_eq!(classical_rsk_rectangle(&x).unwrap().encoding, rsk(&x), "x = {x}");
            }
        }
    }

    #[test]
    fn rejects_non_rectangles() {
        let x = Tableau::from_rows(vec![vec![1i64, 2], vec![3]]).unwrap();
        assert!(classical_rsk_rectangle(&x).is_err());
    }
}
