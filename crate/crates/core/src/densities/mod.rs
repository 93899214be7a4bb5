//! Joint densities of `U_n` and `V_n` and related distribution functions.
//!
//! Conditioned on its path, each walk spends independent exponential times
//! in the states it visits, so the gaps between the ordered coordinates are
//! hypoexponential. Summing over paths with their probabilities gives the
//! joint density; it is supported on the Weyl chamber selected by the path's
//! permutation.

mod checks;
mod hypoexp;
mod loe;
pub mod quad;

use serde::{Deserialize, Serialize};

use crate::error::{check_range, Error, Result};
use crate::perm::Permutation;
use crate::shapes::{enumerate_syt, tableau_params, YoungDiagram};
use crate::sortnet::{enumerate_sorting_networks, network_params};

pub use checks::{asymptotic_stability_test, density_histogram_test, sojourn_test};
pub use hypoexp::{hypoexp_cdf, hypoexp_density, HypoexpSpec};
pub use loe::{loe_cdf, loe_vs_simulation, LoeEstimate};

/// A point together with the Weyl chamber containing it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChamberPoint {
    pub coords: Vec<f64>,
    /// `gamma(c)`: rank of coordinate `c`; ties go to the smaller index.
    pub chamber: Permutation,
}

impl ChamberPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyInput("chamber point needs coordinates"));
        }
        if let Some(c) = coords.iter().find(|c| c.is_nan() || **c < 0.0) {
            return Err(Error::InvalidShape(format!("coordinate {c} is negative or NaN")));
        }
        let mut idx: Vec<usize> = (0..coords.len()).collect();
        idx.sort_by(|&a, &b| coords[a].total_cmp(&coords[b]).then(a.cmp(&b)));
        let mut rank = vec![0; coords.len()];
        for (r, &c) in idx.iter().enumerate() {
            rank[c] = r + 1;
        }
        Ok(Self { coords, chamber: Permutation::new(rank)? })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PathModel {
    /// Sum over sorting networks: density of `U_n`.
    Osp,
    /// Sum over staircase tableaux: density of `V_n`.
    Growth,
}

#[derive(Debug, Clone)]
struct PathTerm {
    probability: f64,
    /// Rank of each coordinate among the marked jump indices.
    rank: Vec<usize>,
    blocks: Vec<HypoexpSpec>,
}

/// Precomputed path data for repeated density evaluations.
#[derive(Debug, Clone)]
pub struct PathDensity {
    order: usize,
    model: PathModel,
    terms: Vec<PathTerm>,
}

fn block_rates(block: &[(u32, u32)]) -> Vec<f64> {
    block.iter().flat_map(|&(d, m)| std::iter::repeat_n(d as f64, m as usize)).collect()
}

impl PathDensity {
    /// Orders 2 to 5; the number of paths is 1, 2, 16, 768.
    pub fn new(n: usize, model: PathModel) -> Result<Self> {
        check_range("order", n, 2, 5)?;
        let mut terms = Vec::new();
        let mut push = |probability: f64, perm: &Permutation, factor: &crate::factor::GeneratingFactor| -> Result<()> {
            let blocks = factor.blocks().iter().map(|b| HypoexpSpec::new(block_rates(b))).collect::<Result<_>>()?;
            terms.push(PathTerm { probability, rank: perm.as_slice().to_vec(), blocks });
            Ok(())
        };
        match model {
            PathModel::Osp => {
                for s in enumerate_sorting_networks(n) {
                    let p = network_params(&s);
                    push(p.path_probability_f64(), &p.pi, &p.factor)?;
                }
            }
            PathModel::Growth => {
                for t in enumerate_syt(&YoungDiagram::staircase(n)?) {
                    let p = tableau_params(&t)?;
                    push(p.path_probability_f64(), &p.sigma, &p.factor)?;
                }
            }
        }
        Ok(Self { order: n, model, terms })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn model(&self) -> PathModel {
        self.model
    }

    pub fn eval(&self, u: &[f64]) -> Result<f64> {
        if u.len() + 1 != self.order {
            return Err(Error::InvalidShape(format!("point of dimension {} for order {}", u.len(), self.order)));
        }
        if u.iter().any(|&x| x < 0.0) {
            return Ok(0.0);
        }
        let mut ordered = vec![0.0; u.len()];
        let mut total = 0.0;
        'paths: for term in &self.terms {
            for (c, &r) in term.rank.iter().enumerate() {
                ordered[r - 1] = u[c];
            }
            let mut value = term.probability;
            let mut prev = 0.0;
            for (k, &x) in ordered.iter().enumerate() {
                if x < prev {
                    continue 'paths;
                }
                value *= term.blocks[k].density(x - prev);
                prev = x;
            }
            total += value;
        }
        Ok(total)
    }
}

/// Joint density of `U_n` (OSP) or `V_n` (growth) at `u` as a sum over all
/// paths, for `n <= 4`.
pub fn density_from_paths(n: usize, u: &[f64], model: PathModel) -> Result<f64> {
    check_range("order", n, 2, 4)?;
    PathDensity::new(n, model)?.eval(u)
}

/// Piecewise closed form of the joint density of `U_4`, one expression per
/// Weyl chamber. In the two chambers where `u2` is smallest the density is
/// `e^(-u1-u2-u3) (e^(2 u2) - 2 u2 e^(u2) - 1)`.
pub fn pu4_closed_form(u1: f64, u2: f64, u3: f64) -> f64 {
    if u1 < 0.0 || u2 < 0.0 || u3 < 0.0 {
        return 0.0;
    }
    let e = f64::exp;
    let damp = e(-(u1 + u2 + u3));
    let inner = if u1 <= u2 && u2 <= u3 {
        e(u1 + u2) - (u1 - 1.0) * e(u1) - (u1 + 1.0) * e(u2) - 1.0
    } else if u2 <= u1 && u2 <= u3 {
        e(2.0 * u2) - 2.0 * u2 * e(u2) - 1.0
    } else if u1 <= u3 && u3 <= u2 {
        e(u1 + u3) - (u1 - 1.0) * e(u1) - (u1 + 1.0) * e(u3) - 1.0
    } else if u3 <= u1 && u1 <= u2 {
        e(u1 + u3) - (u3 - 1.0) * e(u3) - (u3 + 1.0) * e(u1) - 1.0
    } else {
        e(u2 + u3) - (u3 - 1.0) * e(u3) - (u3 + 1.0) * e(u2) - 1.0
    };
    damp * inner
}

/// Joint density of `V_n` through the LPP recursion
///
/// `p_n(v) = int_{y_k <= min(v_k, v_{k+1})} exp(sum_k [max(y_{k-1}, y_k) - v_k]) p_{n-1}(y) dy`
///
/// with `y_0 = y_{n-1} = 0` and `p_2(v) = e^(-v)`, by nested adaptive
/// quadrature (orders 2 to 4).
pub fn density_v_recursive(v: &[f64], tol: f64) -> Result<f64> {
    check_range("order", v.len() + 1, 2, 4)?;
    recursive(v, tol)
}

const MAX_INTERVALS: usize = 400;

fn recursive(v: &[f64], tol: f64) -> Result<f64> {
    if v.iter().any(|&x| x < 0.0) {
        return Ok(0.0);
    }
    if v.len() == 1 {
        return Ok((-v[0]).exp());
    }
    let bounds: Vec<f64> = v.windows(2).map(|w| w[0].min(w[1])).collect();
    let mut y = vec![0.0; bounds.len()];
    nested(v, &bounds, &mut y, 0, tol)
}

fn nested(v: &[f64], bounds: &[f64], y: &mut [f64], i: usize, tol: f64) -> Result<f64> {
    if i == bounds.len() {
        let at = |k: isize| if k < 0 || k as usize >= y.len() { 0.0 } else { y[k as usize] };
        let exponent: f64 = (0..v.len()).map(|k| at(k as isize - 1).max(at(k as isize)) - v[k]).sum();
        let inner = recursive(y, tol * 1e-2)?;
        return Ok(exponent.exp() * inner);
    }
    let mut breaks: Vec<f64> = bounds[i + 1..].to_vec();
    if i > 0 {
        breaks.push(y[i - 1]);
    }
    let mut failure = None;
    let value = quad::integrate_with_breaks(
        |t| {
            y[i] = t;
            match nested(v, bounds, y, i + 1, tol * 1e-1) {
                Ok(x) => x,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            }
        },
        0.0,
        bounds[i],
        &breaks,
        tol,
        MAX_INTERVALS,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    value
}

/// Closed form of the order-3 recursion: `e^(-v1-v2) (e^(min(v1,v2)) - 1)`.
pub fn v3_closed_form(v1: f64, v2: f64) -> f64 {
    if v1 < 0.0 || v2 < 0.0 {
        return 0.0;
    }
    (-(v1 + v2)).exp() * (v1.min(v2).exp() - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::processes::RngStream;
    use rand::Rng;

    #[test]
    fn chamber_points() {
        let p = ChamberPoint::new(vec![0.5, 0.2, 0.9]).unwrap();
        assert_eq!(p.chamber.as_slice(), &[2, 1, 3]);
        let tie = ChamberPoint::new(vec![1.0, 1.0]).unwrap();
        assert_eq!(tie.chamber.as_slice(), &[1, 2]);
        assert!(ChamberPoint::new(vec![-1.0]).is_err());
    }

    #[test]
    fn order_two_density() {
        for u in [0.0, 0.3, 2.0] {
            assert!((density_from_paths(2, &[u], PathModel::Osp).unwrap() - (-u).exp()).abs() < 1e-15);
            assert!((density_from_paths(2, &[u], PathModel::Growth).unwrap() - (-u).exp()).abs() < 1e-15);
        }
    }

    #[test]
    fn closed_form_first_chamber_value() {
        let e = f64::exp;
        let expected = e(-3.0) * (e(1.5) + 0.5 * e(0.5) - 1.5 * e(1.0) - 1.0);
        assert!((pu4_closed_form(0.5, 1.0, 1.5) - expected).abs() < 1e-15);
        assert!((expected - 0.0113827).abs() < 1e-7);
    }

    #[test]
    fn closed_form_continuous_across_walls() {
        for (a, b) in [(0.4, 1.1), (1.3, 0.2), (2.0, 2.5), (0.7, 0.3)] {
            let eps = 1e-9;
            // u1 = u2 wall, u3 = b
            let left = pu4_closed_form(a - eps, a, b);
            let right = pu4_closed_form(a + eps, a, b);
            assert!((left - right).abs() < 1e-7, "{a} {b}");
            let left = pu4_closed_form(b, a, a - eps);
            let right = pu4_closed_form(b, a, a + eps);
            assert!((left - right).abs() < 1e-7, "{a} {b}");
        }
    }

    #[test]
    fn path_sums_match_closed_form() {
        let osp = PathDensity::new(4, PathModel::Osp).unwrap();
        let growth = PathDensity::new(4, PathModel::Growth).unwrap();
        let mut rng = RngStream::new(77, 0).rng();
        for _ in 0..20 {
            let u: Vec<f64> = (0..3).map(|_| rng.random_range(0.0..4.0)).collect();
            let closed = pu4_closed_form(u[0], u[1], u[2]);
            assert!((osp.eval(&u).unwrap() - closed).abs() < 1e-9, "{u:?}");
            assert!((growth.eval(&u).unwrap() - closed).abs() < 1e-9, "{u:?}");
        }
    }

    #[test]
    fn recursion_order_three() {
        let v = density_v_recursive(&[1.0, 2.0], 1e-10).unwrap();
        assert!((v - v3_closed_form(1.0, 2.0)).abs() < 1e-10);
        assert!((v - 0.085548).abs() < 1e-6);
        let w = density_v_recursive(&[2.0, 1.0], 1e-10).unwrap();
        assert!((v - w).abs() < 1e-12);
    }

    #[test]
    fn recursion_order_four() {
        let v = density_v_recursive(&[0.5, 1.0, 1.5], 1e-7).unwrap();
        assert!((v - pu4_closed_form(0.5, 1.0, 1.5)).abs() < 1e-6, "{v}");
        let w = density_v_recursive(&[1.5, 0.3, 0.8], 1e-7).unwrap();
        assert!((w - pu4_closed_form(1.5, 0.3, 0.8)).abs() < 1e-6, "{w}");
        assert!(density_v_recursive(&[1.0; 4], 1e-6).is_err());
    }
}
