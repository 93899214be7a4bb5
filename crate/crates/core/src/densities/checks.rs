//! Statistical checks tying the densities to the samplers.

use std::collections::HashMap;

use super::quad::integrate_with_breaks;
use super::{HypoexpSpec, PathDensity, PathModel};
use crate::error::Result;
use crate::processes::{chi_square, maxima, sample_trajectories, sample_vectors, KsBattery, Model, SamplePath};
use crate::report::TestReport;
use crate::sortnet::network_params;

/// Upper truncation for unbounded bins; `P(U_max > 40)` is far below the
/// resolution of any sample used here.
const TAIL: f64 = 40.0;

fn quantile_edges(values: &mut [f64], bins: usize) -> Vec<f64> {
    values.sort_by(f64::total_cmp);
    let mut edges = vec![0.0];
    for i in 1..bins {
        edges.push(values[i * values.len() / bins]);
    }
    edges.push(TAIL);
    edges
}

fn bin_of(edges: &[f64], x: f64) -> usize {
    let b = edges.partition_point(|&e| e <= x);
    b.clamp(1, edges.len() - 1) - 1
}

/// Chi-square comparison of `U_4` samples with the path-sum density on a
/// `bins^3` grid. Edges are marginal quantiles of an independent pilot run;
/// cell probabilities come from nested quadrature split at the chamber walls.
pub fn density_histogram_test(samples: usize, bins: usize, seed: u64, workers: usize) -> Result<TestReport> {
    let density = PathDensity::new(4, PathModel::Osp)?;
    let pilot = sample_vectors(Model::Osp, 4, 100_000, seed.wrapping_add(1), workers)?;
    let edges: Vec<Vec<f64>> = (0..3)
        .map(|k| quantile_edges(&mut pilot.iter().map(|v| v[k]).collect::<Vec<_>>(), bins))
        .collect();
    let data = sample_vectors(Model::Osp, 4, samples, seed, workers)?;
    let cells = bins * bins * bins;
    let mut observed = vec![0u64; cells];
    for v in &data {
        let (a, b, c) = (bin_of(&edges[0], v[0]), bin_of(&edges[1], v[1]), bin_of(&edges[2], v[2]));
        observed[(a * bins + b) * bins + c] += 1;
    }
    let tol = 1e-10;
    let mut expected = Vec::with_capacity(cells);
    let mut mass = 0.0;
    for a in 0..bins {
        for b in 0..bins {
            for c in 0..bins {
                let (x0, x1) = (edges[0][a], edges[0][a + 1]);
                let (y0, y1) = (edges[1][b], edges[1][b + 1]);
                let (z0, z1) = (edges[2][c], edges[2][c + 1]);
                let p = integrate_with_breaks(
                    |u1| {
                        integrate_with_breaks(
                            |u2| {
                                integrate_with_breaks(
                                    |u3| density.eval(&[u1, u2, u3]).unwrap_or(f64::NAN),
                                    z0,
                                    z1,
                                    &[u1, u2],
                                    tol * 1e-2,
                                    200,
                                )
                                .unwrap_or(f64::NAN)
                            },
                            y0,
                            y1,
                            &[u1, z0, z1],
                            tol * 1e-1,
                            200,
                        )
                        .unwrap_or(f64::NAN)
                    },
                    x0,
                    x1,
                    &[y0, y1, z0, z1],
                    tol,
                    200,
                )?;
                mass += p;
                expected.push(p * samples as f64);
            }
        }
    }
    let chi = chi_square(&observed, &expected)?;
    let mut report = TestReport::new(format!("U_4 histogram vs path-sum density, {bins}^3 cells"));
    report.require_at_most("|total probability - 1|", (mass - 1.0).abs(), 1e-6);
    report.record("chi-square", chi.statistic);
    report.record("degrees of freedom", chi.dof as f64);
    report.require_at_least("p", chi.p_value, 1e-3);
    report.sample_sizes.push(samples);
    report.seeds.push(seed);
    Ok(report)
}

/// Conditioned on the most likely OSP path at order 4, the gaps between
/// consecutive ordered coordinates of `U_4` are hypoexponential with the
/// path's rate blocks.
pub fn sojourn_test(samples: usize, seed: u64) -> Result<TestReport> {
    let traj = sample_trajectories(Model::Osp, 4, samples, seed)?;
    let mut freq: HashMap<Vec<usize>, usize> = HashMap::new();
    for s in &traj {
        if let SamplePath::Network(net) = &s.path {
            *freq.entry(net.swaps().to_vec()).or_default() += 1;
        }
    }
    let (best, count) = freq.into_iter().max_by_key(|(k, c)| (*c, std::cmp::Reverse(k.clone()))).expect("samples");
    let mut gaps: Vec<Vec<f64>> = vec![Vec::new(); 3];
    let mut params = None;
    for s in &traj {
        let SamplePath::Network(net) = &s.path else { continue };
        if net.swaps() != best.as_slice() {
            continue;
        }
        params.get_or_insert_with(|| network_params(net));
        let mut sorted = s.vector.clone();
        sorted.sort_by(f64::total_cmp);
        let mut prev = 0.0;
        for (k, x) in sorted.into_iter().enumerate() {
            gaps[k].push(x - prev);
            prev = x;
        }
    }
    let params = params.expect("the modal path occurs");
    let mut battery = KsBattery::new(format!("sojourn gaps along path {}", best.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",")), 1e-3);
    for (k, block) in params.factor.blocks().iter().enumerate() {
        let rates: Vec<f64> = block.iter().flat_map(|&(d, m)| std::iter::repeat_n(d as f64, m as usize)).collect();
        let spec = HypoexpSpec::new(rates)?;
        battery.compare_cdf(&format!("gap {}", k + 1), &gaps[k], |x| spec.cdf(x))?;
    }
    let report = battery.report_mut();
    report.record("conditioned samples", count as f64);
    report.sample_sizes.push(samples);
    report.seeds.push(seed);
    Ok(battery.finish())
}

/// Two-sample KS between `(V_max - 2n)/(2n)^(1/3)` at two orders, from
/// exponential LPP on the staircase.
pub fn asymptotic_stability_test(n1: usize, n2: usize, replicas: usize, seed: u64, workers: usize) -> Result<TestReport> {
    let scaled = |n: usize, s: u64| -> Result<Vec<f64>> {
        let scale = (2.0 * n as f64).cbrt();
        Ok(maxima(&sample_vectors(Model::LppV, n, replicas, s, workers)?)
            .into_iter()
            .map(|x| (x - 2.0 * n as f64) / scale)
            .collect())
    };
    let a = scaled(n1, seed)?;
    let b = scaled(n2, seed.wrapping_add(1))?;
    let mut battery = KsBattery::new(format!("scaled V_max, n={n1} vs n={n2}"), 1e-3);
    battery.compare("scaled maximum", &a, &b)?;
    let (ma, _) = crate::processes::mean_and_se(&a);
    let (mb, _) = crate::processes::mean_and_se(&b);
    // Informational: the same comparison after removing each sample's mean,
    // which separates a location drift from a change of shape.
    let centered = |x: &[f64], m: f64| x.iter().map(|v| v - m).collect::<Vec<_>>();
    let shape = crate::processes::ks_two_sample(&centered(&a, ma), &centered(&b, mb))?;
    let report = battery.report_mut();
    report.record(format!("mean at n={n1}"), ma);
    report.record(format!("mean at n={n2}"), mb);
    report.record("centered samples: D", shape.statistic);
    report.record("centered samples: p", shape.p_value);
    report.sample_sizes.extend([replicas, replicas]);
    report.seeds.extend([seed, seed.wrapping_add(1)]);
    Ok(battery.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bins() {
        let e = vec![0.0, 1.0, 2.0, 40.0];
        assert_eq!(bin_of(&e, 0.0), 0);
        assert_eq!(bin_of(&e, 1.0), 1);
        assert_eq!(bin_of(&e, 39.0), 2);
        assert_eq!(bin_of(&e, 100.0), 2);
    }

    #[test]
    fn sojourns_small() {
        let r = sojourn_test(20_000, 5).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn coarse_histogram() {
        let r = density_histogram_test(50_000, 3, 2, 1).unwrap();
        assert!(r.passed(), "{r}");
    }
}
