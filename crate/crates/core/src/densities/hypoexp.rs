use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Law of a sum of independent exponentials with the given rates.
///
/// Stored as the inverse Laplace transform of `prod rho/(s + rho)`:
/// `sum_{(rho, e)} c x^(e-1) e^(-rho x) / (e-1)!`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypoexpSpec {
    rates: Vec<f64>,
    terms: Vec<(f64, u32, f64)>,
}

impl HypoexpSpec {
    pub fn new(rates: Vec<f64>) -> Result<Self> {
        if rates.is_empty() {
            return Err(Error::EmptyInput("hypoexponential law needs at least one rate"));
        }
        if let Some(r) = rates.iter().find(|&&r| !(r > 0.0 && r.is_finite())) {
            return Err(Error::InvalidShape(format!("rate {r} is not positive")));
        }
        let mut poles: Vec<(f64, u32)> = Vec::new();
        for &r in &rates {
            match poles.iter_mut().find(|(p, _)| *p == r) {
                Some(slot) => slot.1 += 1,
                None => poles.push((r, 1)),
            }
        }
        let scale: f64 = rates.iter().product();
        let mut terms = Vec::new();
        for &(rho, m) in &poles {
            // series of the cofactor around s = -rho
            let len = m as usize;
            let mut series = vec![0.0; len];
            series[0] = 1.0;
            for &(rho2, m2) in &poles {
                if rho2 == rho {
                    continue;
                }
                let a = rho2 - rho;
                let mut factor = Vec::with_capacity(len);
                let mut c = a.powi(-(m2 as i32));
                for j in 0..len {
                    factor.push(c);
                    c *= -((m2 as usize + j) as f64) / ((j + 1) as f64 * a);
                }
                let mut next = vec![0.0; len];
                for i in 0..len {
                    for j in 0..len - i {
                        next[i + j] += series[i] * factor[j];
                    }
                }
                series = next;
            }
            for (j, c) in series.into_iter().enumerate() {
                terms.push((rho, m - j as u32, c * scale));
            }
        }
        Ok(Self { rates, terms })
    }

    pub fn rates(&self) -> &[f64] {
        &self.rates
    }

    pub fn mean(&self) -> f64 {
        self.rates.iter().map(|r| 1.0 / r).sum()
    }

    pub fn density(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        let v: f64 = self
            .terms
            .iter()
            .map(|&(rho, e, c)| c * x.powi(e as i32 - 1) * (-rho * x).exp() / factorial(e - 1))
            .sum();
        v.max(0.0)
    }

    /// Term by term: `int_0^x t^(e-1) e^(-rho t)/(e-1)! dt = P(e, rho x) / rho^e`
    /// with `P(e, y) = 1 - e^(-y) sum_{j<e} y^j/j!`.
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let v: f64 = self
            .terms
            .iter()
            .map(|&(rho, e, c)| {
                let y = rho * x;
                let mut partial = 0.0;
                let mut term = 1.0;
                for j in 0..e {
                    if j > 0 {
                        term *= y / j as f64;
                    }
                    partial += term;
                }
                c * (1.0 - (-y).exp() * partial) / rho.powi(e as i32)
            })
            .sum();
        v.clamp(0.0, 1.0)
    }
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

pub fn hypoexp_density(spec: &HypoexpSpec, x: f64) -> f64 {
    spec.density(x)
}

pub fn hypoexp_cdf(spec: &HypoexpSpec, x: f64) -> f64 {
    spec.cdf(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densities::quad::integrate;

    #[test]
    fn small_cases() {
        for x in [0.1f64, 0.7, 2.5] {
            let e: f64 = (-x).exp();
            assert!((HypoexpSpec::new(vec![1.0]).unwrap().density(x) - e).abs() < 1e-14);
            let two = 2.0 * (e - (-2.0 * x).exp());
            assert!((HypoexpSpec::new(vec![2.0, 1.0]).unwrap().density(x) - two).abs() < 1e-14);
            assert!((HypoexpSpec::new(vec![1.0, 1.0]).unwrap().density(x) - x * e).abs() < 1e-14);
        }
        assert_eq!(HypoexpSpec::new(vec![1.0]).unwrap().density(-1.0), 0.0);
        assert!(HypoexpSpec::new(vec![]).is_err());
        assert!(HypoexpSpec::new(vec![1.0, 0.0]).is_err());
    }

    #[test]
    fn normalized_and_cdf_consistent() {
        for rates in [vec![3.0, 2.0, 3.0, 3.0, 1.0], vec![5.0, 4.0, 3.0, 3.0, 3.0], vec![1.0, 1.0, 2.0, 1.0, 2.0, 1.0], vec![2.0; 4]] {
            let h = HypoexpSpec::new(rates).unwrap();
            let total = integrate(|x| h.density(x), 0.0, 80.0, 1e-12, 500).unwrap();
            assert!((total - 1.0).abs() < 1e-8, "{total}");
            let part = integrate(|x| h.density(x), 0.0, 1.3, 1e-13, 500).unwrap();
            assert!((part - h.cdf(1.3)).abs() < 1e-10);
            let m = integrate(|x| x * h.density(x), 0.0, 80.0, 1e-12, 500).unwrap();
            assert!((m - h.mean()).abs() < 1e-8);
        }
    }
}
