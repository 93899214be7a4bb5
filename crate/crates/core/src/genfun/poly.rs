use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::PartialFractionForm;

/// Multivariate polynomial with exact rational coefficients; the key is the
/// exponent vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    num_vars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Self {
        Self { num_vars, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_monomial(vec![0; num_vars], c);
        p
    }

    /// `x_k + d` with 1-based `k`.
    pub fn linear(num_vars: usize, k: usize, d: i64) -> Self {
        let mut p = Self::constant(num_vars, BigRational::from_integer(d.into()));
        let mut e = vec![0; num_vars];
        e[k - 1] = 1;
        p.add_monomial(e, BigRational::one());
        p
    }

    /// Builds from `(coefficient, exponents)` pairs.
    pub fn from_terms(num_vars: usize, terms: &[(i64, &[u32])]) -> Self {
        let mut p = Self::zero(num_vars);
        for (c, e) in terms {
            p.add_monomial(e.to_vec(), BigRational::from_integer((*c).into()));
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_monomial(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&mut self, other: &Polynomial) {
        for (e, c) in &other.terms {
            self.add_monomial(e.clone(), c.clone());
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.num_vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_monomial(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        let mut out = Polynomial::zero(self.num_vars);
        for (e, v) in &self.terms {
            out.add_monomial(e.clone(), v * c);
        }
        out
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(x)
                    .fold(c.clone(), |acc, (&p, v)| acc * num_traits::pow(v.clone(), p as usize))
            })
            .sum()
    }

    /// Exact quotient by `x_k + d`, or `None` if it does not divide.
    pub fn divide_linear(&self, k: usize, d: i64) -> Option<Polynomial> {
        let k = k - 1;
        let d = BigRational::from_integer(d.into());
        // group by the exponents of the other variables
        let mut groups: BTreeMap<Vec<u32>, BTreeMap<u32, BigRational>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            rest[k] = 0;
            groups.entry(rest).or_default().insert(e[k], c.clone());
        }
        let mut out = Polynomial::zero(self.num_vars);
        for (rest, coeffs) in groups {
            let deg = *coeffs.keys().next_back().expect("non-empty group");
            let a = |j: u32| coeffs.get(&j).cloned().unwrap_or_else(BigRational::zero);
            if deg == 0 {
                return None;
            }
            // a_j = b_{j-1} + d b_j, solved from the top
            let mut b = vec![BigRational::zero(); deg as usize];
            b[deg as usize - 1] = a(deg);
            for j in (1..deg).rev() {
                b[j as usize - 1] = a(j) - &d * &b[j as usize];
            }
            if !(a(0) - &d * &b[0]).is_zero() {
                return None;
            }
            for (j, c) in b.into_iter().enumerate() {
                let mut e = rest.clone();
                e[k] = j as u32;
                out.add_monomial(e, c);
            }
        }
        Some(out)
    }
}

fn fmt_monomial(e: &[u32]) -> String {
    e.iter()
        .enumerate()
        .filter(|(_, &p)| p > 0)
        .map(|(k, &p)| if p == 1 { format!("x{}", k + 1) } else { format!("x{}^{p}", k + 1) })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for Polynomial {
    /// Terms by decreasing total degree, then decreasing exponent vector.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut order: Vec<(&Vec<u32>, &BigRational)> = self.terms.iter().collect();
        order.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (i, (e, c)) in order.into_iter().enumerate() {
            let mono = fmt_monomial(e);
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

/// `numerator / prod (x_k + d)^e` in lowest terms with respect to the
/// linear factors of the denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    pub numerator: Polynomial,
    /// `(k, d) -> e`, 1-based `k`.
    pub denominator: BTreeMap<(usize, u32), u32>,
}

impl RationalFunction {
    pub fn from_form(form: &PartialFractionForm) -> Self {
        let nv = form.num_vars();
        let mut den: BTreeMap<(usize, u32), u32> = BTreeMap::new();
        for key in form.terms().keys() {
            for (k, &(d, e)) in key.iter().enumerate() {
                if e > 0 {
                    let slot = den.entry((k + 1, d as u32)).or_default();
                    *slot = (*slot).max(e as u32);
                }
            }
        }
        let mut numerator = Polynomial::zero(nv);
        let mut pow_cache: BTreeMap<(usize, u32, u32), Polynomial> = BTreeMap::new();
        let mut power = |k: usize, d: u32, p: u32| -> Polynomial {
            pow_cache
                .entry((k, d, p))
                .or_insert_with(|| {
                    let lin = Polynomial::linear(nv, k, d as i64);
                    (0..p).fold(Polynomial::constant(nv, BigRational::one()), |acc, _| acc.mul(&lin))
                })
                .clone()
        };
        for (key, c) in form.terms() {
            let mut term = Polynomial::constant(nv, c.clone());
            for (&(k, d), &emax) in &den {
                let (d0, e0) = key[k - 1];
                let used = if e0 > 0 && d0 as u32 == d { e0 as u32 } else { 0 };
                if emax > used {
                    term = term.mul(&power(k, d, emax - used));
                }
            }
            numerator.add(&term);
        }
        let mut out = Self { numerator, denominator: den };
        out.cancel();
        out
    }

    fn cancel(&mut self) {
        let keys: Vec<(usize, u32)> = self.denominator.keys().copied().collect();
        for (k, d) in keys {
            while self.denominator[&(k, d)] > 0 {
                match self.numerator.divide_linear(k, d as i64) {
                    Some(q) => {
                        self.numerator = q;
                        *self.denominator.get_mut(&(k, d)).unwrap() -= 1;
                    }
                    None => break,
                }
            }
        }
        self.denominator.retain(|_, e| *e > 0);
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        let mut den = BigRational::one();
        for (&(k, d), &e) in &self.denominator {
            den *= num_traits::pow(&x[k - 1] + BigRational::from_integer(BigInt::from(d)), e as usize);
        }
        self.numerator.eval(x) / den
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/(", self.numerator)?;
        for (&(k, d), &e) in &self.denominator {
            if e == 1 {
                write!(f, "(x{k}+{d})")?;
            } else {
                write!(f, "(x{k}+{d})^{e}")?;
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::term_table_f;
    use crate::genfun::term_table_g;
    use crate::perm::Permutation;

    #[test]
    fn division() {
        let p = Polynomial::linear(2, 1, 3).mul(&Polynomial::linear(2, 2, 5));
        let q = p.divide_linear(1, 3).unwrap();
        assert_eq!(q, Polynomial::linear(2, 2, 5));
        assert!(p.divide_linear(1, 2).is_none());
        assert_eq!(p.to_string(), "x1*x2 + 5*x1 + 3*x2 + 15");
    }

    #[test]
    fn identity_component_at_order_four() {
        let id = Permutation::identity(3);
        for table in [term_table_f(4).unwrap(), term_table_g(4).unwrap()] {
            let r = table.component(&id).recombine();
            let expected_num = Polynomial::from_terms(3, &[(1, &[1, 0, 0]), (2, &[0, 1, 0]), (5, &[0, 0, 0])]);
            assert_eq!(r.numerator, expected_num);
            let expected_den = BTreeMap::from([((1, 1), 1), ((1, 2), 2), ((1, 3), 1), ((2, 1), 1), ((2, 2), 1), ((3, 1), 1)]);
            assert_eq!(r.denominator, expected_den);
            assert_eq!(r.to_string(), "(x1 + 2*x2 + 5)/((x1+1)(x1+2)^2(x1+3)(x2+1)(x2+2)(x3+1))");
        }
    }

    #[test]
    fn recombination_preserves_values() {
        let f = term_table_f(4).unwrap();
        let x: Vec<BigRational> = [3, 8, 21].iter().map(|&v| BigRational::from_integer(v.into())).collect();
        for p in Permutation::all(3) {
            let form = f.component(&p);
            assert_eq!(form.recombine().eval(&x), form.eval(&x));
        }
    }
}
