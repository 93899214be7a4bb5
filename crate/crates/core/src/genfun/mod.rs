//! Exact generating functions of the two random walks, indexed by the
//! permutation of their marked jumps.
//!
//! Every generating factor is a product of univariate pieces
//! `prod_d 1/(x_k + d)^m`, so each one expands into the finite basis
//! `prod_k 1/(x_k + d_k)^(e_k)` by univariate partial fractions. Equality
//! of two sums then reduces to comparing coefficient maps.

mod poly;
mod terms;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::GeneratingFactor;
use crate::perm::Permutation;

pub use poly::{Polynomial, RationalFunction};
pub use terms::{eg_limit_check, term_table_f, term_table_g, verify_identity, IdentityMethod, TermTable};

/// `(d, e)`: the basis function `1/(x + d)^e`; `(0, 0)` marks an absent
/// variable.
pub type Pole = (u8, u8);

/// Univariate partial fractions of `prod_d 1/(x + d)^(m_d)`.
///
/// Around `y = x + d` the cofactor `prod_{d' != d} (y + d' - d)^(-m_d')` has a
/// power series whose first `m_d` coefficients are the coefficients of
/// `1/y^(m_d)`, `1/y^(m_d - 1)`, ... .
pub fn pf_decompose_block(block: &[(u32, u32)]) -> Result<BTreeMap<Pole, BigRational>> {
    for w in block.windows(2) {
        if w[0].0 >= w[1].0 {
            return Err(Error::InvalidShape(format!("shifts must be distinct and sorted: {block:?}")));
        }
    }
    if let Some(&(d, m)) = block.iter().find(|&&(d, m)| m == 0 || d == 0 || d > 255 || m > 255) {
        return Err(Error::InvalidShape(format!("unsupported pole ({d}, {m})")));
    }
    let mut out = BTreeMap::new();
    for &(d, m) in block {
        let order = m as usize;
        let mut series = vec![BigRational::zero(); order];
        series[0] = BigRational::one();
        for &(d2, m2) in block {
            if d2 == d {
                continue;
            }
            let a = BigRational::from_integer(BigInt::from(d2 as i64 - d as i64));
            let factor = inverse_power_series(&a, m2, order);
            series = truncated_product(&series, &factor, order);
        }
        for (j, c) in series.into_iter().enumerate() {
            if !c.is_zero() {
                out.insert((d as u8, (order - j) as u8), c);
            }
        }
    }
    Ok(out)
}

/// First `len` coefficients of `(y + a)^(-m)` in powers of `y`.
fn inverse_power_series(a: &BigRational, m: u32, len: usize) -> Vec<BigRational> {
    let inv = a.recip();
    let lead = num_traits::pow(inv.clone(), m as usize);
    let mut out = Vec::with_capacity(len);
    // C(m+j-1, j) (-1/a)^j, built incrementally
    let mut c = lead;
    for j in 0..len {
        out.push(c.clone());
        let ratio = BigRational::new(BigInt::from(m as usize + j), BigInt::from(j + 1));
        c = -(c * ratio * &inv);
    }
    out
}

fn truncated_product(a: &[BigRational], b: &[BigRational], len: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); len];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `sum c * prod_k 1/(x_k + d_k)^(e_k)` with nonzero coefficients only.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PartialFractionForm {
    num_vars: usize,
    terms: BTreeMap<Vec<Pole>, BigRational>,
}

impl PartialFractionForm {
    pub fn zero(num_vars: usize) -> Self {
        Self { num_vars, terms: BTreeMap::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Pole>, BigRational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn add_term(&mut self, key: Vec<Pole>, c: BigRational) {
        debug_assert_eq!(key.len(), self.num_vars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += scale * other`.
    pub fn add_scaled(&mut self, other: &PartialFractionForm, scale: &BigRational) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * scale);
        }
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        let mut total = BigRational::zero();
        for (key, c) in &self.terms {
            let mut den = BigRational::one();
            for (k, &(d, e)) in key.iter().enumerate() {
                if e > 0 {
                    let base = &x[k] + BigRational::from_integer(BigInt::from(d));
                    den *= num_traits::pow(base, e as usize);
                }
            }
            total += c / den;
        }
        total
    }

    /// Recombines over the least common denominator and cancels common
    /// linear factors.
    pub fn recombine(&self) -> RationalFunction {
        RationalFunction::from_form(self)
    }
}

impl fmt::Display for PartialFractionForm {
    /// One term per line: the basis multi-index, then the coefficient.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (key, c) in &self.terms {
            let idx: Vec<String> = key.iter().map(|(d, e)| format!("({d},{e})")).collect();
            writeln!(f, "{} {}/{}", idx.join(""), c.numer(), c.denom())?;
        }
        Ok(())
    }
}

/// Memoized univariate decompositions.
#[derive(Default)]
pub(crate) struct BlockCache(HashMap<Vec<(u32, u32)>, BlockTerms>);

type BlockTerms = Vec<(Pole, BigRational)>;

impl BlockCache {
    fn get(&mut self, block: &[(u32, u32)]) -> &[(Pole, BigRational)] {
        if !self.0.contains_key(block) {
            let pf = if block.is_empty() {
                vec![((0, 0), BigRational::one())]
            } else {
                pf_decompose_block(block).expect("factor blocks are sorted with distinct shifts").into_iter().collect()
            };
            self.0.insert(block.to_vec(), pf);
        }
        &self.0[block]
    }
}

pub(crate) fn expand_into(f: &GeneratingFactor, scale: &BigRational, cache: &mut BlockCache, out: &mut PartialFractionForm) {
    let mut partial: Vec<(Vec<Pole>, BigRational)> = vec![(Vec::new(), scale.clone())];
    for b in f.blocks() {
        let pf = cache.get(b);
        let mut next = Vec::with_capacity(partial.len() * pf.len());
        for (key, c) in &partial {
            for (pole, c2) in pf {
                let mut k = key.clone();
                k.push(*pole);
                next.push((k, c * c2));
            }
        }
        partial = next;
    }
    for (k, c) in partial {
        out.add_term(k, c);
    }
}

/// Tensor product of the per-variable decompositions of `f`.
pub fn factor_to_canonical(f: &GeneratingFactor) -> PartialFractionForm {
    let mut out = PartialFractionForm::zero(f.num_vars());
    expand_into(f, &BigRational::one(), &mut BlockCache::default(), &mut out);
    out
}

/// An element of the free vector space over `S_{n-1}` with partial-fraction
/// coefficients; zero components are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GroupVector {
    pub order: usize,
    components: BTreeMap<Permutation, PartialFractionForm>,
}

impl GroupVector {
    pub fn new(order: usize) -> Self {
        Self { order, components: BTreeMap::new() }
    }

    pub fn components(&self) -> &BTreeMap<Permutation, PartialFractionForm> {
        &self.components
    }

    pub fn component(&self, p: &Permutation) -> Option<&PartialFractionForm> {
        self.components.get(p)
    }

    pub fn insert(&mut self, p: Permutation, form: PartialFractionForm) {
        if form.is_zero() {
            self.components.remove(&p);
        } else {
            self.components.insert(p, form);
        }
    }

    /// Largest absolute coefficient numerator, for size diagnostics.
    pub fn max_numerator_bits(&self) -> u64 {
        self.components
            .values()
            .flat_map(|f| f.terms.values())
            .map(|c| c.numer().abs().bits())
            .max()
            .unwrap_or(0)
    }
}

/// `F_n = sum_t f_t sigma_t` over staircase standard tableaux.
#[allow(non_snake_case)]
pub fn accumulate_F(n: usize) -> Result<GroupVector> {
    Ok(term_table_f(n)?.canonical())
}

/// `G_n = sum_s g_s pi_s` over sorting networks.
#[allow(non_snake_case)]
pub fn accumulate_G(n: usize) -> Result<GroupVector> {
    Ok(term_table_g(n)?.canonical())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn blocks() {
        assert_eq!(pf_decompose_block(&[(1, 1)]).unwrap(), BTreeMap::from([((1, 1), q(1, 1))]));
        assert_eq!(
            pf_decompose_block(&[(1, 1), (2, 1)]).unwrap(),
            BTreeMap::from([((1, 1), q(1, 1)), ((2, 1), q(-1, 1))])
        );
        assert_eq!(pf_decompose_block(&[(1, 2)]).unwrap(), BTreeMap::from([((1, 2), q(1, 1))]));
        assert!(pf_decompose_block(&[(2, 1), (1, 1)]).is_err());
        assert!(pf_decompose_block(&[(1, 1), (1, 2)]).is_err());
    }

    #[test]
    fn block_with_repeated_poles() {
        // 1/((x+1)^2 (x+3)), compared pointwise with the direct product
        let pf = pf_decompose_block(&[(1, 2), (3, 1)]).unwrap();
        for x in [2i64, 5, 17] {
            let xv = q(x, 1);
            let direct = (q(1, 1) / ((&xv + q(1, 1)) * (&xv + q(1, 1)) * (&xv + q(3, 1)))).clone();
            let sum: BigRational = pf
                .iter()
                .map(|(&(d, e), c)| c / num_traits::pow(&xv + q(d as i64, 1), e as usize))
                .sum();
            assert_eq!(sum, direct);
        }
    }

    #[test]
    fn canonical_examples() {
        let f = GeneratingFactor::from_blocks(vec![vec![(1, 1)]]);
        let form = factor_to_canonical(&f);
        assert_eq!(form.terms().len(), 1);
        assert_eq!(form.terms()[&vec![(1, 1)]], q(1, 1));

        let f = GeneratingFactor::from_blocks(vec![vec![(1, 1), (2, 1)], vec![(1, 1)]]);
        let form = factor_to_canonical(&f);
        assert_eq!(form.terms()[&vec![(1, 1), (1, 1)]], q(1, 1));
        assert_eq!(form.terms()[&vec![(2, 1), (1, 1)]], q(-1, 1));
        assert_eq!(form.len(), 2);
    }

    #[test]
    fn recomposition_is_exact() {
        let f = GeneratingFactor::from_blocks(vec![vec![(1, 1), (2, 2), (3, 3), (4, 4)], vec![(2, 1), (3, 2)], vec![(1, 1)]]);
        let form = factor_to_canonical(&f);
        let x = vec![q(7, 1), q(11, 1), q(13, 1)];
        assert_eq!(form.eval(&x), f.eval_rational(&x));
    }
}
