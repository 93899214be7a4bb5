//! Sorting networks: reduced words `(s_1, ..., s_N)` of the reverse
//! permutation in the adjacent transpositions `tau_k = (k k+1)`.
//!
//! The state after `k` swaps is the arrangement `nu^(k)` of particle labels
//! in positions `1..=n`, starting from the identity; swap `s_j` exchanges the
//! labels in positions `s_j` and `s_j + 1`. A word is reduced exactly when
//! every swap acts on an ascent of the current arrangement.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{check_range, Error, Result};
use crate::factor::GeneratingFactor;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SortingNetwork {
    order: usize,
    swaps: Vec<usize>,
}

impl SortingNetwork {
    pub fn new(order: usize, swaps: Vec<usize>) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidOrder(order));
        }
        let total = order * (order - 1) / 2;
        if swaps.len() != total {
            return Err(Error::NotReduced(format!("length {} != {total}", swaps.len())));
        }
        let mut state: Vec<usize> = (1..=order).collect();
        for (j, &k) in swaps.iter().enumerate() {
            if k == 0 || k >= order {
                return Err(Error::NotReduced(format!("swap {k} at step {} outside 1..{order}", j + 1)));
            }
            if state[k - 1] > state[k] {
                return Err(Error::NotReduced(format!("swap {k} at step {} removes an inversion", j + 1)));
            }
            state.swap(k - 1, k);
        }
        Ok(Self { order, swaps })
    }

    /// Infers the order from the word length.
    pub fn from_swaps(swaps: Vec<usize>) -> Result<Self> {
        let len = swaps.len();
        let order = (2..=64)
            .find(|n| n * (n - 1) / 2 == len)
            .ok_or_else(|| Error::NotReduced(format!("length {len} is not triangular")))?;
        Self::new(order, swaps)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn swaps(&self) -> &[usize] {
        &self.swaps
    }

    pub fn len(&self) -> usize {
        self.swaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.swaps.is_empty()
    }

    /// Wire coordinates for drawing: for each label, the position it occupies
    /// after each of the `N + 1` states.
    pub fn wiring(&self) -> Vec<Vec<usize>> {
        let n = self.order;
        let mut state: Vec<usize> = (1..=n).collect();
        let mut wires = vec![Vec::with_capacity(self.len() + 1); n];
        let record = |state: &[usize], wires: &mut Vec<Vec<usize>>| {
            for (pos, &label) in state.iter().enumerate() {
                wires[label - 1].push(pos + 1);
            }
        };
        record(&state, &mut wires);
        for &k in &self.swaps {
            state.swap(k - 1, k);
            record(&state, &mut wires);
        }
        wires
    }
}

impl fmt::Display for SortingNetwork {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.swaps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl FromStr for SortingNetwork {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let swaps = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{p:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_swaps(swaps)
    }
}

/// The arrangement after the first `k` swaps.
pub fn apply_prefix(s: &SortingNetwork, k: usize) -> Result<Permutation> {
    check_range("prefix length", k, 0, s.len())?;
    let mut state: Vec<usize> = (1..=s.order).collect();
    for &j in &s.swaps[..k] {
        state.swap(j - 1, j);
    }
    Permutation::new(state)
}

/// Depth-first enumeration of all sorting networks of order `n`, extending
/// by the currently ascending positions, smallest first.
pub struct NetworkIter {
    order: usize,
    total: usize,
    state: Vec<usize>,
    swaps: Vec<usize>,
    started: bool,
    done: bool,
}

impl NetworkIter {
    pub fn new(order: usize) -> Self {
        Self {
            order,
            total: order * (order.max(1) - 1) / 2,
            state: (1..=order).collect(),
            swaps: Vec::new(),
            started: false,
            done: order < 2,
        }
    }

    fn ascent_from(&self, start: usize) -> Option<usize> {
        (start..self.order).find(|&k| self.state[k - 1] < self.state[k])
    }

    fn push(&mut self, k: usize) {
        self.state.swap(k - 1, k);
        self.swaps.push(k);
    }

    fn descend(&mut self) {
        while self.swaps.len() < self.total {
            let k = self.ascent_from(1).expect("non-reverse arrangements have an ascent");
            self.push(k);
        }
    }

    fn current(&self) -> SortingNetwork {
        SortingNetwork { order: self.order, swaps: self.swaps.clone() }
    }
}

impl Iterator for NetworkIter {
    type Item = SortingNetwork;

    fn next(&mut self) -> Option<SortingNetwork> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.descend();
            return Some(self.current());
        }
        while let Some(k) = self.swaps.pop() {
            self.state.swap(k - 1, k);
            if let Some(next) = self.ascent_from(k + 1) {
                self.push(next);
                self.descend();
                return Some(self.current());
            }
        }
        self.done = true;
        None
    }
}

pub fn enumerate_sorting_networks(n: usize) -> NetworkIter {
    NetworkIter::new(n)
}

/// Path parameters of a sorting network viewed as a walk on the Cayley graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkParams {
    pub order: usize,
    /// `last[k-1]`: index of the last swap at positions `k, k+1`.
    pub last: Vec<u32>,
    pub pi: Permutation,
    /// `0` followed by the increasing rearrangement of `last`.
    pub fin_bar: Vec<u32>,
    /// `deg[k]`: number of ascents of `nu^(k)`, `k = 0..N-1`.
    pub deg: Vec<u32>,
    pub factor: GeneratingFactor,
}

impl NetworkParams {
    pub fn path_probability(&self) -> BigRational {
        let den: BigUint = self.deg.iter().map(|&d| BigUint::from(d)).product();
        BigRational::new(1.into(), den.into())
    }

    pub fn path_probability_f64(&self) -> f64 {
        self.path_probability().to_f64().unwrap_or(0.0)
    }
}

pub fn network_params(s: &SortingNetwork) -> NetworkParams {
    let n = s.order;
    let mut state: Vec<usize> = (1..=n).collect();
    let mut deg = Vec::with_capacity(s.len());
    let mut last = vec![0u32; n - 1];
    for (j, &k) in s.swaps.iter().enumerate() {
        deg.push(state.windows(2).filter(|w| w[0] < w[1]).count() as u32);
        state.swap(k - 1, k);
        last[k - 1] = j as u32 + 1;
    }
    let pi = Permutation::rank_order(&last).expect("last swap indices are distinct");
    let mut sorted = last.clone();
    sorted.sort_unstable();
    let marks: Vec<usize> = sorted.iter().map(|&v| v as usize).collect();
    let factor = GeneratingFactor::from_path(&marks, &deg);
    let mut fin_bar = vec![0];
    fin_bar.extend(sorted);
    NetworkParams { order: n, last, pi, fin_bar, deg, factor }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG2: [usize; 15] = [5, 1, 2, 4, 1, 3, 5, 4, 2, 1, 5, 3, 2, 4, 3];

    #[test]
    fn counts() {
        assert_eq!(enumerate_sorting_networks(2).collect::<Vec<_>>(), vec![SortingNetwork::new(2, vec![1]).unwrap()]);
        assert_eq!(enumerate_sorting_networks(3).count(), 2);
        assert_eq!(enumerate_sorting_networks(4).count(), 16);
        assert_eq!(enumerate_sorting_networks(5).count(), 768);
    }

    #[test]
    fn enumeration_is_lexicographic_and_reduced() {
        let all: Vec<_> = enumerate_sorting_networks(5).collect();
        assert!(all.windows(2).all(|w| w[0].swaps() < w[1].swaps()));
        for s in &all {
            SortingNetwork::new(5, s.swaps().to_vec()).unwrap();
            for k in 1..5 {
                assert!(s.swaps().contains(&k));
            }
        }
    }

    #[test]
    fn prefixes() {
        let s = SortingNetwork::new(6, FIG2.to_vec()).unwrap();
        assert_eq!(apply_prefix(&s, 0).unwrap(), Permutation::identity(6));
        assert_eq!(apply_prefix(&s, 15).unwrap(), Permutation::reverse(6));
        assert!(apply_prefix(&s, 16).is_err());
        let s2 = SortingNetwork::new(2, vec![1]).unwrap();
        assert_eq!(apply_prefix(&s2, 1).unwrap().as_slice(), &[2, 1]);
    }

    #[test]
    fn rejects_bad_words() {
        assert!(matches!(SortingNetwork::new(3, vec![1, 1, 2]), Err(Error::NotReduced(_))));
        assert!(SortingNetwork::new(3, vec![1, 2]).is_err());
        assert!(SortingNetwork::new(3, vec![1, 3, 1]).is_err());
        assert!("1,2,1".parse::<SortingNetwork>().is_ok());
        assert!("1,2,1,2".parse::<SortingNetwork>().is_err());
    }

    #[test]
    fn params_example_order_six() {
        let s = SortingNetwork::new(6, FIG2.to_vec()).unwrap();
        let p = network_params(&s);
        assert_eq!(p.last, vec![10, 13, 15, 14, 11]);
        assert_eq!(p.pi.as_slice(), &[1, 3, 5, 4, 2]);
        assert_eq!(p.deg, vec![5, 4, 3, 3, 3, 2, 3, 2, 2, 3, 2, 1, 2, 1, 1]);
        assert_eq!(p.factor.block(1), &[(2, 3), (3, 5), (4, 1), (5, 1)]);
        assert_eq!(p.factor.block(2), &[(2, 1)]);
        assert_eq!(p.factor.block(3), &[(1, 1), (2, 1)]);
        assert_eq!(p.factor.block(4), &[(1, 1)]);
        assert_eq!(p.factor.block(5), &[(1, 1)]);
    }

    #[test]
    fn params_order_two() {
        let p = network_params(&SortingNetwork::new(2, vec![1]).unwrap());
        assert_eq!(p.last, vec![1]);
        assert_eq!(p.pi.as_slice(), &[1]);
        assert_eq!(p.deg, vec![1]);
        assert_eq!(p.factor.block(1), &[(1, 1)]);
    }

    #[test]
    fn degree_invariants() {
        for n in 2..=5 {
            let total = n * (n - 1) / 2;
            for s in enumerate_sorting_networks(n) {
                let p = network_params(&s);
                assert_eq!(p.deg[0] as usize, n - 1);
                assert_eq!(p.deg[total - 1], 1);
                assert!(p.deg.iter().all(|&d| d >= 1 && (d as usize) < n));
                assert_eq!(p.fin_bar[n - 1] as usize, total);
            }
        }
    }

    #[test]
    fn wiring_ends_reversed() {
        let s = SortingNetwork::new(4, vec![1, 2, 3, 1, 2, 1]).unwrap();
        let w = s.wiring();
        for (label, wire) in w.iter().enumerate() {
            assert_eq!(wire[0], label + 1);
            assert_eq!(*wire.last().unwrap(), 4 - label);
        }
    }
}
