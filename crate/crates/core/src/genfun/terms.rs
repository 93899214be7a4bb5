use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{expand_into, BlockCache, GroupVector, PartialFractionForm};
use crate::error::{check_range, Error, Result};
use crate::factor::GeneratingFactor;
use crate::perm::Permutation;
use crate::report::TestReport;
use crate::shapes::{enumerate_syt, tableau_params, YoungDiagram};
use crate::sortnet::{enumerate_sorting_networks, network_params};

/// Terms of one generating function, grouped: many paths share the same
/// permutation and factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermTable {
    order: usize,
    terms: HashMap<(Permutation, GeneratingFactor), u64>,
    total: u64,
}

impl TermTable {
    fn new(order: usize) -> Self {
        Self { order, terms: HashMap::new(), total: 0 }
    }

    fn push(&mut self, p: Permutation, f: GeneratingFactor) -> Result<()> {
        if f.max_shift() as usize >= self.order {
            return Err(Error::InvalidShape(format!("pole shift {} exceeds n-1 = {}", f.max_shift(), self.order - 1)));
        }
        *self.terms.entry((p, f)).or_default() += 1;
        self.total += 1;
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of paths summed.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Number of distinct `(permutation, factor)` pairs.
    pub fn distinct(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, &GeneratingFactor, u64)> + '_ {
        self.terms.iter().map(|((p, f), &c)| (p, f, c))
    }

    pub fn counts_by_permutation(&self) -> BTreeMap<Permutation, u64> {
        let mut out = BTreeMap::new();
        for ((p, _), c) in &self.terms {
            *out.entry(p.clone()).or_default() += c;
        }
        out
    }

    pub fn canonical(&self) -> GroupVector {
        let mut cache = BlockCache::default();
        let mut acc: BTreeMap<Permutation, PartialFractionForm> = BTreeMap::new();
        for ((p, f), &c) in &self.terms {
            let form = acc.entry(p.clone()).or_insert_with(|| PartialFractionForm::zero(self.order - 1));
            expand_into(f, &BigRational::from_integer(BigInt::from(c)), &mut cache, form);
        }
        let mut out = GroupVector::new(self.order);
        for (p, form) in acc {
            out.insert(p, form);
        }
        out
    }

    /// The canonical form of a single component.
    pub fn component(&self, p: &Permutation) -> PartialFractionForm {
        let mut cache = BlockCache::default();
        let mut form = PartialFractionForm::zero(self.order - 1);
        for ((q, f), &c) in &self.terms {
            if q == p {
                expand_into(f, &BigRational::from_integer(BigInt::from(c)), &mut cache, &mut form);
            }
        }
        form
    }
}

/// Terms `f_t sigma_t` over the staircase tableaux of order `n`.
pub fn term_table_f(n: usize) -> Result<TermTable> {
    check_range("order", n, 2, 6)?;
    let mut table = TermTable::new(n);
    for t in enumerate_syt(&YoungDiagram::staircase(n)?) {
        let p = tableau_params(&t)?;
        table.push(p.sigma, p.factor)?;
    }
    Ok(table)
}

/// Terms `g_s pi_s` over the sorting networks of order `n`.
pub fn term_table_g(n: usize) -> Result<TermTable> {
    check_range("order", n, 2, 6)?;
    let mut table = TermTable::new(n);
    for s in enumerate_sorting_networks(n) {
        let p = network_params(&s);
        table.push(p.pi, p.factor)?;
    }
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IdentityMethod {
    /// Compare canonical partial-fraction forms component by component.
    Canonical,
    /// Compare exact values at `points` random integer points with
    /// coordinates in `[10^6, 10^9]`.
    Evaluation { points: usize, seed: u64 },
}

/// Checks `F_n = G_n` componentwise.
pub fn verify_identity(n: usize, method: IdentityMethod, workers: usize) -> Result<TestReport> {
    let start = Instant::now();
    let f = term_table_f(n)?;
    let g = term_table_g(n)?;
    let mut report = TestReport::new(format!("generating function identity, n={n}, {method:?}"));
    report.record("terms F", f.total() as f64);
    report.record("terms G", g.total() as f64);
    report.record("distinct terms F", f.distinct() as f64);
    report.record("distinct terms G", g.distinct() as f64);
    report.sample_sizes.extend([f.total() as usize, g.total() as usize]);
    let differing = match method {
        IdentityMethod::Canonical => {
            let (cf, cg) = (f.canonical(), g.canonical());
            report.record("components", cf.components().len() as f64);
            report.record("max coefficient numerator bits", cf.max_numerator_bits().max(cg.max_numerator_bits()) as f64);
            let mut keys: Vec<&Permutation> = cf.components().keys().chain(cg.components().keys()).collect();
            keys.sort();
            keys.dedup();
            keys.into_iter()
                .filter(|p| cf.component(p) != cg.component(p))
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
        }
        IdentityMethod::Evaluation { points, seed } => {
            report.seeds.push(seed);
            report.record("points", points as f64);
            evaluation_mismatches(&f, &g, points, seed, workers.max(1))
        }
    };
    report.record("elapsed seconds", start.elapsed().as_secs_f64());
    report.require_at_most("differing components", differing.len() as f64, 0.0);
    for p in differing.iter().take(10) {
        report.note(format!("component {p} differs"));
    }
    report.note(if differing.is_empty() { "EQUAL" } else { "NOT EQUAL" });
    Ok(report)
}

/// Largest multiplicity of each `(k, d)` over both tables: the common
/// denominator is `prod (x_k + d)^E`.
fn max_exponents(tables: &[&TermTable]) -> HashMap<(usize, u32), u32> {
    let mut e: HashMap<(usize, u32), u32> = HashMap::new();
    for t in tables {
        for (_, f, _) in t.iter() {
            for (k, b) in f.blocks().iter().enumerate() {
                for &(d, m) in b {
                    let slot = e.entry((k, d)).or_default();
                    *slot = (*slot).max(m);
                }
            }
        }
    }
    e
}

/// A block of one generating factor, tagged with its variable index.
type BlockKey<'a> = (usize, &'a [(u32, u32)]);

/// Numerators over the common denominator, per permutation.
fn numerators(table: &TermTable, x: &[BigInt], e: &HashMap<(usize, u32), u32>) -> BTreeMap<Permutation, BigInt> {
    let mut shifts: Vec<Vec<(u32, u32)>> = vec![Vec::new(); x.len()];
    for (&(k, d), &m) in e {
        shifts[k].push((d, m));
    }
    let mut cache: HashMap<BlockKey, BigInt> = HashMap::new();
    let mut out: BTreeMap<Permutation, BigInt> = BTreeMap::new();
    for (p, f, c) in table.iter() {
        let mut term = BigInt::from(c);
        for (k, b) in f.blocks().iter().enumerate() {
            let v = cache.entry((k, b.as_slice())).or_insert_with(|| {
                let mut v = BigInt::from(1);
                for &(d, emax) in &shifts[k] {
                    let m = b.iter().find(|&&(d2, _)| d2 == d).map_or(0, |&(_, m)| m);
                    v *= num_traits::pow(&x[k] + BigInt::from(d), (emax - m) as usize);
                }
                v
            });
            term *= &*v;
        }
        *out.entry(p.clone()).or_default() += term;
    }
    out
}

fn evaluation_mismatches(f: &TermTable, g: &TermTable, points: usize, seed: u64, workers: usize) -> Vec<String> {
    let e = max_exponents(&[f, g]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<Vec<BigInt>> = (0..points)
        .map(|_| (1..f.order()).map(|_| BigInt::from(rng.random_range(1_000_000i64..=1_000_000_000))).collect())
        .collect();
    let chunk = pts.len().div_ceil(workers).max(1);
    let mut bad: Vec<String> = std::thread::scope(|s| {
        let handles: Vec<_> = pts
            .chunks(chunk)
            .map(|part| {
                let e = &e;
                s.spawn(move || {
                    let mut bad = Vec::new();
                    for x in part {
                        let (nf, ng) = (numerators(f, x, e), numerators(g, x, e));
                        let zero = BigInt::from(0);
                        let mut keys: Vec<&Permutation> = nf.keys().chain(ng.keys()).collect();
                        keys.dedup();
                        for p in keys {
                            if nf.get(p).unwrap_or(&zero) != ng.get(p).unwrap_or(&zero) {
                                bad.push(p.to_string());
                            }
                        }
                    }
                    bad
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("evaluation worker")).collect()
    });
    bad.sort();
    bad.dedup();
    bad
}

/// Per-permutation term counts of `F_n` and `G_n` agree.
pub fn eg_limit_check(n: usize) -> Result<TestReport> {
    let cf = term_table_f(n)?.counts_by_permutation();
    let cg = term_table_g(n)?.counts_by_permutation();
    let mut report = TestReport::new(format!("per-permutation term counts, n={n}"));
    let total: u64 = cf.values().sum();
    report.record("total", total as f64);
    report.record("permutations", cf.len() as f64);
    for (p, c) in &cf {
        report.record(format!("count {p}"), *c as f64);
    }
    report.check(cf == cg, "per-permutation counts differ");
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::{accumulate_F, accumulate_G, factor_to_canonical};

    #[test]
    fn order_two() {
        let f = accumulate_F(2).unwrap();
        let g = accumulate_G(2).unwrap();
        assert_eq!(f, g);
        let id = Permutation::identity(1);
        let one = factor_to_canonical(&GeneratingFactor::from_blocks(vec![vec![(1, 1)]]));
        assert_eq!(f.component(&id), Some(&one));
    }

    #[test]
    fn identity_small_orders() {
        for n in 2..=4 {
            assert!(verify_identity(n, IdentityMethod::Canonical, 1).unwrap().passed());
            let r = verify_identity(n, IdentityMethod::Evaluation { points: 5, seed: 3 }, 2).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn evaluation_detects_a_perturbation() {
        let f = term_table_f(4).unwrap();
        let mut g = term_table_g(4).unwrap();
        let (p, fac, _) = g.iter().next().map(|(p, f, c)| (p.clone(), f.clone(), c)).unwrap();
        *g.terms.get_mut(&(p, fac)).unwrap() += 1;
        assert!(!evaluation_mismatches(&f, &g, 3, 1, 1).is_empty());
    }

    #[test]
    fn limit_counts() {
        let r = eg_limit_check(4).unwrap();
        assert!(r.passed());
        assert_eq!(r.statistics[0].value, 16.0);
        assert_eq!(eg_limit_check(2).unwrap().statistics[0].value, 1.0);
        assert!(term_table_f(4).unwrap().counts_by_permutation().len() <= 6);
    }

    #[test]
    fn components_match_between_methods_at_order_five() {
        let f = term_table_f(5).unwrap();
        let g = term_table_g(5).unwrap();
        let (cf, cg) = (f.canonical(), g.canonical());
        assert_eq!(cf, cg);
        assert!(evaluation_mismatches(&f, &g, 3, 9, 1).is_empty());
        assert_eq!(f.counts_by_permutation().values().sum::<u64>(), 768);
    }
}

