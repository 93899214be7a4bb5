use serde::{Deserialize, Serialize};

use crate::error::{check_range, Result};
use crate::processes::{ecdf, exponential, maxima, sample_vectors, Model, RngStream};
use crate::report::TestReport;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoeEstimate {
    pub t: f64,
    pub value: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// `P(U_max <= t)` for the LOE weight `prod_{i<j} |y_i - y_j| prod e^(-y_i)`
/// on `[0,t]^(n-1)`, estimated as `E[w 1{max y <= t}] / E[w]` with
/// `y_i ~ Exp(1)` i.i.d. and `w` the Vandermonde factor. The normalization
/// cancels; the standard error is the delta-method one for a ratio.
pub fn loe_cdf(n: usize, t: f64, samples: usize, seed: u64) -> Result<LoeEstimate> {
    check_range("order", n, 2, 64)?;
    check_range("samples", samples, 2, usize::MAX)?;
    let mut rng = RngStream::new(seed, 0).rng();
    let mut weights = Vec::with_capacity(samples);
    let mut inside = Vec::with_capacity(samples);
    let mut y = vec![0.0; n - 1];
    for _ in 0..samples {
        for v in y.iter_mut() {
            *v = exponential(&mut rng, 1.0);
        }
        let mut w = 1.0;
        for i in 0..y.len() {
            for j in i + 1..y.len() {
                w *= (y[i] - y[j]).abs();
            }
        }
        weights.push(w);
        inside.push(y.iter().all(|&v| v <= t));
    }
    let m = samples as f64;
    let mean_w = weights.iter().sum::<f64>() / m;
    let num = weights.iter().zip(&inside).filter(|(_, &i)| i).map(|(w, _)| w).sum::<f64>() / m;
    let r = num / mean_w;
    let resid_var = weights
        .iter()
        .zip(&inside)
        .map(|(&w, &i)| {
            let a = if i { w } else { 0.0 };
            (a - r * w).powi(2)
        })
        .sum::<f64>()
        / (m - 1.0);
    Ok(LoeEstimate { t, value: r, std_error: (resid_var / m).sqrt() / mean_w, samples })
}

/// Compares the LOE estimate with the empirical CDF of simulated `U_max` at
/// each `t`, within `k` combined standard errors.
pub fn loe_vs_simulation(n: usize, ts: &[f64], samples: usize, seed: u64, k: f64, workers: usize) -> Result<TestReport> {
    let umax = maxima(&sample_vectors(Model::Osp, n, samples, seed, workers)?);
    let mut report = TestReport::new(format!("LOE distribution function vs simulated U_max, n={n}"));
    for (i, &t) in ts.iter().enumerate() {
        let est = loe_cdf(n, t, samples, seed.wrapping_add(1 + i as u64))?;
        let p = ecdf(&umax, t)?;
        let se_emp = (p * (1.0 - p) / samples as f64).sqrt();
        let combined = (est.std_error.powi(2) + se_emp.powi(2)).sqrt();
        report.record(format!("t={t}: LOE estimate"), est.value);
        report.record(format!("t={t}: empirical"), p);
        report.require_at_most(format!("t={t}: |difference| / sigma"), (est.value - p).abs() / combined, k);
    }
    report.sample_sizes.push(samples);
    report.seeds.push(seed);
    Ok(report)
}
