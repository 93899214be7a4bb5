use std::collections::HashMap;

use rand_distr::{Distribution, Gamma};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

use super::{column, exponential, sample_trajectories, sample_vectors, Model, RngStream, SamplePath};
use crate::error::{Error, Result};
use crate::report::TestReport;
use crate::shapes::{enumerate_syt, tableau_params, YoungDiagram};
use crate::sortnet::{enumerate_sorting_networks, network_params};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
    pub n1: usize,
    pub n2: usize,
}

/// `Q(lambda) = 2 sum_{j>=1} (-1)^(j-1) exp(-2 j^2 lambda^2)`.
fn kolmogorov_q(lambda: f64) -> f64 {
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for j in 1..=200 {
        let term = (-2.0 * (j * j) as f64 * lambda * lambda).exp();
        sum += sign * term;
        if term < 1e-18 {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Asymptotic p-value with the usual small-sample correction of the scale.
fn ks_p_value(d: f64, effective_n: f64) -> f64 {
    let en = effective_n.sqrt();
    kolmogorov_q((en + 0.12 + 0.11 / en) * d)
}

fn sorted(a: &[f64]) -> Vec<f64> {
    let mut v = a.to_vec();
    v.sort_by(|x, y| x.total_cmp(y));
    v
}

pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KsResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput("two-sample KS needs both samples non-empty"));
    }
    let (a, b) = (sorted(a), sorted(b));
    let (n1, n2) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < a.len() && j < b.len() {
        let t = a[i].min(b[j]);
        while i < a.len() && a[i] <= t {
            i += 1;
        }
        while j < b.len() && b[j] <= t {
            j += 1;
        }
        d = d.max((i as f64 / n1 - j as f64 / n2).abs());
    }
    Ok(KsResult { statistic: d, p_value: ks_p_value(d, n1 * n2 / (n1 + n2)), n1: a.len(), n2: b.len() })
}

pub fn ks_one_sample(a: &[f64], cdf: impl Fn(f64) -> f64) -> Result<KsResult> {
    if a.is_empty() {
        return Err(Error::EmptyInput("one-sample KS needs a non-empty sample"));
    }
    let a = sorted(a);
    let n = a.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in a.iter().enumerate() {
        let f = cdf(x);
        d = d.max(((i + 1) as f64 / n - f).abs()).max((f - i as f64 / n).abs());
    }
    Ok(KsResult { statistic: d, p_value: ks_p_value(d, n), n1: a.len(), n2: 0 })
}

/// Fraction of samples `<= t`.
pub fn ecdf(samples: &[f64], t: f64) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::EmptyInput("empirical CDF of an empty sample"));
    }
    Ok(samples.iter().filter(|&&x| x <= t).count() as f64 / samples.len() as f64)
}

/// Sample mean and its standard error.
pub fn mean_and_se(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    (mean, (var / n).sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    /// Bins after pooling those with expected count below 5.
    pub bins: usize,
}

/// Pearson goodness of fit; `expected` holds expected counts. Bins with
/// expected count below 5 are pooled into one.
pub fn chi_square(observed: &[u64], expected: &[f64]) -> Result<ChiSquare> {
    if observed.is_empty() || observed.len() != expected.len() {
        return Err(Error::EmptyInput("chi-square needs matching non-empty bins"));
    }
    let mut stat = 0.0;
    let mut bins = 0usize;
    let (mut pooled_o, mut pooled_e) = (0.0, 0.0);
    for (&o, &e) in observed.iter().zip(expected) {
        if e < 5.0 {
            pooled_o += o as f64;
            pooled_e += e;
        } else {
            stat += (o as f64 - e).powi(2) / e;
            bins += 1;
        }
    }
    if pooled_e > 0.0 {
        stat += (pooled_o - pooled_e).powi(2) / pooled_e;
        bins += 1;
    }
    let dof = bins.saturating_sub(1).max(1);
    let dist = ChiSquared::new(dof as f64).expect("positive degrees of freedom");
    Ok(ChiSquare { statistic: stat, dof, p_value: dist.sf(stat), bins })
}

/// Collects several KS comparisons into one report. Each comparison is gated
/// at `p > alpha`; the Bonferroni-adjusted minimum p-value over the family is
/// recorded alongside.
pub struct KsBattery {
    report: TestReport,
    alpha: f64,
    p_values: Vec<f64>,
}

impl KsBattery {
    pub fn new(name: impl Into<String>, alpha: f64) -> Self {
        Self { report: TestReport::new(name), alpha, p_values: Vec::new() }
    }

    pub fn compare(&mut self, name: &str, a: &[f64], b: &[f64]) -> Result<KsResult> {
        let r = ks_two_sample(a, b)?;
        self.push(name, r);
        Ok(r)
    }

    pub fn compare_cdf(&mut self, name: &str, a: &[f64], cdf: impl Fn(f64) -> f64) -> Result<KsResult> {
        let r = ks_one_sample(a, cdf)?;
        self.push(name, r);
        Ok(r)
    }

    fn push(&mut self, name: &str, r: KsResult) {
        self.report.record(format!("{name}: D"), r.statistic);
        self.report.require_at_least(format!("{name}: p"), r.p_value, self.alpha);
        self.p_values.push(r.p_value);
    }

    pub fn report_mut(&mut self) -> &mut TestReport {
        &mut self.report
    }

    pub fn finish(mut self) -> TestReport {
        let m = self.p_values.len();
        if m > 0 {
            let min_p = self.p_values.iter().copied().fold(1.0, f64::min);
            let adjusted = (min_p * m as f64).min(1.0);
            self.report.record("bonferroni-adjusted min p", adjusted);
            self.report.note(format!(
                "family of {m} tests: bonferroni verdict {} at level {}",
                if adjusted > self.alpha { "PASS" } else { "FAIL" },
                self.alpha
            ));
        }
        self.report
    }
}

/// Compares `(U_n(1), U_n(n-1))` from the OSP with `(G + X, G' + X)`, where
/// `G, G' ~ Gamma(n-2, 1)` and `X ~ Exp(1)` are independent: KS on both
/// coordinates, their maximum and their difference, plus a sign test on the
/// OSP difference.
pub fn gamma_exp_joint_test(n: usize, samples: usize, seed: u64, workers: usize) -> Result<TestReport> {
    if n < 3 {
        return Err(Error::InvalidOrder(n));
    }
    let osp = sample_vectors(Model::Osp, n, samples, seed, workers)?;
    let gamma = Gamma::new((n - 2) as f64, 1.0).expect("positive shape");
    let direct: Vec<(f64, f64)> = (0..samples)
        .map(|i| {
            let mut rng = RngStream::new(seed ^ 0x9e37_79b9_7f4a_7c15, i as u64).rng();
            let x = exponential(&mut rng, 1.0);
            (gamma.sample(&mut rng) + x, gamma.sample(&mut rng) + x)
        })
        .collect();
    let (u1, u2) = (column(&osp, 0), column(&osp, n - 2));
    let (d1, d2): (Vec<f64>, Vec<f64>) = direct.iter().copied().unzip();
    let mut battery = KsBattery::new(format!("gamma + exponential joint law, n={n}"), 1e-3);
    battery.compare("first coordinate", &u1, &d1)?;
    battery.compare("last coordinate", &u2, &d2)?;
    let umax: Vec<f64> = u1.iter().zip(&u2).map(|(a, b)| a.max(*b)).collect();
    let dmax: Vec<f64> = d1.iter().zip(&d2).map(|(a, b)| a.max(*b)).collect();
    battery.compare("max", &umax, &dmax)?;
    let udiff: Vec<f64> = u1.iter().zip(&u2).map(|(a, b)| a - b).collect();
    let ddiff: Vec<f64> = d1.iter().zip(&d2).map(|(a, b)| a - b).collect();
    battery.compare("difference", &udiff, &ddiff)?;
    let positive = udiff.iter().filter(|&&d| d > 0.0).count() as f64;
    let m = samples as f64;
    let z = (positive - m / 2.0) / (m / 4.0).sqrt();
    let p_sign = 2.0 * Normal::standard().sf(z.abs());
    let report = battery.report_mut();
    report.require_at_least("sign test p", p_sign, 1e-3);
    report.sample_sizes.push(samples);
    report.seeds.push(seed);
    Ok(battery.finish())
}

/// Chi-square test of simulated path frequencies against the exact path
/// probabilities `prod 1/deg`. OSP paths are sorting networks, growth paths
/// staircase tableaux.
pub fn path_frequency_test(model: Model, n: usize, samples: usize, seed: u64) -> Result<TestReport> {
    crate::error::check_range("order", n, 2, 5)?;
    let mut expected: HashMap<Vec<usize>, f64> = HashMap::new();
    match model {
        Model::Osp | Model::OspClocks => {
            for s in enumerate_sorting_networks(n) {
                expected.insert(s.swaps().to_vec(), network_params(&s).path_probability_f64());
            }
        }
        Model::CornerGrowth => {
            for t in enumerate_syt(&YoungDiagram::staircase(n)?) {
                let key = t.entry_rows();
                expected.insert(key, tableau_params(&t)?.path_probability_f64());
            }
        }
        _ => return Err(Error::InvalidShape("LPP samples carry no path".into())),
    }
    let mut observed: HashMap<Vec<usize>, u64> = HashMap::new();
    for s in sample_trajectories(model, n, samples, seed)? {
        let key = match &s.path {
            SamplePath::Network(net) => net.swaps().to_vec(),
            SamplePath::Tableau(t) => t.entry_rows(),
        };
        *observed.entry(key).or_default() += 1;
    }
    let keys: Vec<&Vec<usize>> = expected.keys().collect();
    let obs: Vec<u64> = keys.iter().map(|k| observed.get(*k).copied().unwrap_or(0)).collect();
    let exp: Vec<f64> = keys.iter().map(|k| expected[*k] * samples as f64).collect();
    let total_prob: f64 = expected.values().sum();
    let chi = chi_square(&obs, &exp)?;
    let mut report = TestReport::new(format!("path frequencies, {}, n={n}", model.name()));
    report.require_at_most("|sum of path probabilities - 1|", (total_prob - 1.0).abs(), 1e-12);
    report.check(observed.len() <= expected.len(), "simulated a path outside the enumeration");
    report.record("chi-square", chi.statistic);
    report.record("degrees of freedom", chi.dof as f64);
    report.require_at_least("p", chi.p_value, 1e-3);
    report.sample_sizes.push(samples);
    report.seeds.push(seed);
    Ok(report)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::processes::RngStream;

    fn exp_sample(rate: f64, n: usize, seed: u64) -> Vec<f64> {
        let mut rng = RngStream::new(seed, 0).rng();
        (0..n).map(|_| exponential(&mut rng, rate)).collect()
    }

    #[test]
    fn ks_basics() {
        let a = exp_sample(1.0, 500, 1);
        let r = ks_two_sample(&a, &a).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.p_value, 1.0);
        assert!(ks_two_sample(&a, &[]).is_err());
        let b = exp_sample(2.0, 10_000, 2);
        let c = exp_sample(1.0, 10_000, 3);
        assert!(ks_two_sample(&b, &c).unwrap().p_value < 1e-6);
        let d = exp_sample(1.0, 10_000, 4);
        assert!(ks_two_sample(&c, &d).unwrap().p_value > 1e-3);
    }

    #[test]
    fn ks_known_statistic() {
        let r = ks_two_sample(&[1.0, 2.0, 3.0], &[2.5, 3.5, 4.5, 5.5]).unwrap();
        assert!((r.statistic - 0.75).abs() < 1e-12);
        let r = ks_one_sample(&[0.5], |t| t).unwrap();
        assert!((r.statistic - 0.5).abs() < 1e-12);
    }

    #[test]
    fn kolmogorov_tail() {
        // Q(1.36) is the classical 5% point
        assert!((kolmogorov_q(1.358) - 0.05).abs() < 1e-3);
        assert!((kolmogorov_q(1.949) - 0.001).abs() < 1e-4);
    }

    #[test]
    fn ecdf_edges() {
        let a = [1.0, 2.0, 3.0];
        assert_eq!(ecdf(&a, 0.5).unwrap(), 0.0);
        assert_eq!(ecdf(&a, 3.5).unwrap(), 1.0);
        assert_eq!(ecdf(&a, 2.0).unwrap(), 2.0 / 3.0);
        assert!(ecdf(&[], 1.0).is_err());
    }

    #[test]
    fn chi_square_values() {
        let r = chi_square(&[50, 50], &[50.0, 50.0]).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert!((r.p_value - 1.0).abs() < 1e-12);
        let r = chi_square(&[60, 40], &[50.0, 50.0]).unwrap();
        assert!((r.statistic - 4.0).abs() < 1e-12);
        assert!((r.p_value - 0.0455).abs() < 1e-3);
        let r = chi_square(&[10, 1, 1], &[10.0, 1.0, 1.0]).unwrap();
        assert_eq!(r.bins, 2);
    }

    #[test]
    fn path_frequencies_small() {
        assert!(path_frequency_test(Model::Osp, 4, 20_000, 1).unwrap().passed());
        assert!(path_frequency_test(Model::CornerGrowth, 4, 20_000, 1).unwrap().passed());
    }

    #[test]
    fn gamma_shape_one_at_order_three() {
        let r = gamma_exp_joint_test(3, 5_000, 2, 1).unwrap();
        assert!(r.passed(), "{r}");
        assert!(gamma_exp_joint_test(2, 10, 1, 1).is_err());
    }
}
