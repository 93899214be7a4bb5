//! Seeded samplers for the oriented swap process, the corner growth process
//! and exponential last passage percolation on the staircase.
//!
//! Every replica draws from its own ChaCha8 stream `(seed, replica)`, so a
//! batch is reproducible whatever the number of worker threads.

mod functional;
mod stats;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rsk::{dual_lpp_tableau, lpp_tableau};
use crate::shapes::{Cell, StandardTableau, Tableau, YoungDiagram};
use crate::sortnet::SortingNetwork;

pub use functional::{compare_vectors, Functional};
pub use stats::{chi_square, ecdf, gamma_exp_joint_test, ks_one_sample, ks_two_sample, mean_and_se, path_frequency_test, ChiSquare, KsBattery, KsResult};

/// Identifies one reproducible random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngStream {
    pub seed: u64,
    pub stream: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// Exponential variate with the given rate, by inversion.
pub fn exponential<R: Rng + ?Sized>(rng: &mut R, rate: f64) -> f64 {
    let u: f64 = rng.random();
    -(1.0 - u).ln() / rate
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Model {
    /// OSP by the embedded jump chain; vector `U_n`.
    Osp,
    /// OSP with a rate-one clock on every bond; vector `U_n`.
    OspClocks,
    /// Corner growth on the staircase; vector `V_n`.
    CornerGrowth,
    /// Point-to-line exponential LPP; vector `V_n`.
    LppV,
    /// Line-to-line exponential LPP; vector `W_n`.
    LppW,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Osp => "osp",
            Model::OspClocks => "osp-clocks",
            Model::CornerGrowth => "growth",
            Model::LppV => "lpp-v",
            Model::LppW => "lpp-w",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SamplePath {
    Network(SortingNetwork),
    Tableau(StandardTableau),
}

/// One simulated trajectory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectorySample {
    pub model: Model,
    pub order: usize,
    pub path: SamplePath,
    /// Times of the `N` jumps, increasing.
    pub jump_times: Vec<f64>,
    /// `U_n` or `V_n`, indexed `k = 1..n-1`.
    pub vector: Vec<f64>,
    pub max: f64,
    /// OSP only: finishing time of particle `k`, `k = 1..n`.
    pub finishing: Option<Vec<f64>>,
}

fn check_order(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidOrder(n));
    }
    Ok(())
}

fn vmax(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// `max(U(n-k), U(n-k+1))` with `U(0) = U(n) = 0`.
fn finishing_times(u: &[f64]) -> Vec<f64> {
    let n = u.len() + 1;
    let at = |i: usize| if i == 0 || i == n { 0.0 } else { u[i - 1] };
    (1..=n).map(|k| at(n - k).max(at(n - k + 1))).collect()
}

fn osp_sample(model: Model, n: usize, swaps: Vec<usize>, jump_times: Vec<f64>, u: Vec<f64>) -> TrajectorySample {
    let network = SortingNetwork::new(n, swaps).expect("simulated swaps form a reduced word");
    TrajectorySample {
        model,
        order: n,
        path: SamplePath::Network(network),
        jump_times,
        max: vmax(&u),
        finishing: Some(finishing_times(&u)),
        vector: u,
    }
}

/// OSP through its embedded chain: from a state with `a` ascents wait an
/// `Exp(a)` time, then swap a uniformly chosen ascent.
pub fn simulate_osp<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<TrajectorySample> {
    check_order(n)?;
    let total = n * (n - 1) / 2;
    let mut state: Vec<usize> = (1..=n).collect();
    let mut ascents: Vec<usize> = Vec::with_capacity(n);
    let mut swaps = Vec::with_capacity(total);
    let mut times = Vec::with_capacity(total);
    let mut u = vec![0.0; n - 1];
    let mut t = 0.0;
    for _ in 0..total {
        ascents.clear();
        ascents.extend((1..n).filter(|&k| state[k - 1] < state[k]));
        t += exponential(rng, ascents.len() as f64);
        let k = ascents[rng.random_range(0..ascents.len())];
        state.swap(k - 1, k);
        swaps.push(k);
        times.push(t);
        u[k - 1] = t;
    }
    Ok(osp_sample(Model::Osp, n, swaps, times, u))
}

/// OSP with independent rate-one clocks on all `n-1` bonds; a ring on a
/// descent is ignored.
pub fn simulate_osp_clocks<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<TrajectorySample> {
    check_order(n)?;
    let total = n * (n - 1) / 2;
    let mut state: Vec<usize> = (1..=n).collect();
    let mut swaps = Vec::with_capacity(total);
    let mut times = Vec::with_capacity(total);
    let mut u = vec![0.0; n - 1];
    let mut t = 0.0;
    while swaps.len() < total {
        t += exponential(rng, (n - 1) as f64);
        let k = rng.random_range(1..n);
        if state[k - 1] < state[k] {
            state.swap(k - 1, k);
            swaps.push(k);
            times.push(t);
            u[k - 1] = t;
        }
    }
    Ok(osp_sample(Model::OspClocks, n, swaps, times, u))
}

/// Corner growth inside the staircase `delta_n`: from a diagram with `a`
/// addable boxes wait `Exp(a)`, then add one uniformly. `V_n(k)` is the time
/// box `(n-k, k)` appears.
pub fn simulate_corner_growth<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<TrajectorySample> {
    check_order(n)?;
    let total = n * (n - 1) / 2;
    let mut rows = vec![0usize; n - 1];
    let mut labels: Vec<Vec<u32>> = (1..n).map(|i| Vec::with_capacity(n - i)).collect();
    let mut addable: Vec<usize> = Vec::with_capacity(n);
    let mut times = Vec::with_capacity(total);
    let mut v = vec![0.0; n - 1];
    let mut t = 0.0;
    for step in 1..=total {
        addable.clear();
        // row i (1-based) accepts a box when it is shorter than n-i and than the row above
        addable.extend((0..n - 1).filter(|&i| rows[i] < n - 1 - i && (i == 0 || rows[i] < rows[i - 1])));
        t += exponential(rng, addable.len() as f64);
        let i = addable[rng.random_range(0..addable.len())];
        rows[i] += 1;
        labels[i].push(step as u32);
        times.push(t);
        let (row, col) = (i + 1, rows[i]);
        if row + col == n {
            v[col - 1] = t;
        }
    }
    let tableau = StandardTableau::from_rows(labels).expect("growth order is a standard tableau");
    Ok(TrajectorySample {
        model: Model::CornerGrowth,
        order: n,
        path: SamplePath::Tableau(tableau),
        jump_times: times,
        max: vmax(&v),
        finishing: None,
        vector: v,
    })
}

/// I.i.d. `Exp(1)` weights on `delta_n`.
pub fn exponential_staircase<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Tableau<f64>> {
    let shape = YoungDiagram::staircase(n)?;
    Ok(Tableau::from_fn(shape, |_| exponential(rng, 1.0)))
}

/// `V_n(k) = L(1,1; n-k,k)` and `W_n(k) = L(n-k,1; 1,k)` from one staircase
/// environment.
pub fn vw_vectors(x: &Tableau<f64>) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = x.shape().num_rows() + 1;
    if *x.shape() != YoungDiagram::staircase(n)? {
        return Err(Error::InvalidShape(format!("{} is not a staircase", x.shape())));
    }
    let l = lpp_tableau(x);
    let ls = dual_lpp_tableau(x);
    let cells: Vec<Cell> = (1..n).map(|k| Cell::new(n - k, k)).collect();
    Ok((l.restrict(&cells), ls.restrict(&cells)))
}

/// `V_n` alone, skipping the dual tableau.
pub fn v_vector(x: &Tableau<f64>) -> Vec<f64> {
    let n = x.shape().num_rows() + 1;
    let l = lpp_tableau(x);
    (1..n).map(|k| *l.at(n - k, k)).collect()
}

/// One replica's vector for `model`.
pub fn sample_vector(model: Model, n: usize, stream: RngStream) -> Result<Vec<f64>> {
    let mut rng = stream.rng();
    Ok(match model {
        Model::Osp => simulate_osp(n, &mut rng)?.vector,
        Model::OspClocks => simulate_osp_clocks(n, &mut rng)?.vector,
        Model::CornerGrowth => simulate_corner_growth(n, &mut rng)?.vector,
        Model::LppV => v_vector(&exponential_staircase(n, &mut rng)?),
        Model::LppW => vw_vectors(&exponential_staircase(n, &mut rng)?)?.1,
    })
}

/// `f(0), ..., f(replicas - 1)` computed on up to `workers` threads, in order.
pub fn par_replicas<T: Send>(
    replicas: usize,
    workers: usize,
    f: impl Fn(usize) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    let workers = workers.clamp(1, replicas.max(1));
    let chunk = replicas.div_ceil(workers).max(1);
    let f = &f;
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..replicas)
            .step_by(chunk)
            .map(|lo| {
                let hi = (lo + chunk).min(replicas);
                s.spawn(move || (lo..hi).map(f).collect::<Result<Vec<_>>>())
            })
            .collect();
        let mut out = Vec::with_capacity(replicas);
        for h in handles {
            out.extend(h.join().expect("sampling worker")?);
        }
        Ok(out)
    })
}

/// `replicas` vectors; replica `i` uses stream `(seed, i)`.
pub fn sample_vectors(model: Model, n: usize, replicas: usize, seed: u64, workers: usize) -> Result<Vec<Vec<f64>>> {
    check_order(n)?;
    par_replicas(replicas, workers, |i| sample_vector(model, n, RngStream::new(seed, i as u64)))
}

/// `(V_n, W_n)` computed from one weight array per replica. Replica `i`
/// uses the same stream as `sample_vectors(LppV, ..)` and
/// `sample_vectors(LppW, ..)`.
pub fn sample_vw_pairs(n: usize, replicas: usize, seed: u64, workers: usize) -> Result<Vec<(Vec<f64>, Vec<f64>)>> {
    check_order(n)?;
    par_replicas(replicas, workers, |i| {
        let mut rng = RngStream::new(seed, i as u64).rng();
        vw_vectors(&exponential_staircase(n, &mut rng)?)
    })
}

/// Trajectories for `replicas` streams, sequentially.
pub fn sample_trajectories(model: Model, n: usize, replicas: usize, seed: u64) -> Result<Vec<TrajectorySample>> {
    (0..replicas)
        .map(|i| {
            let mut rng = RngStream::new(seed, i as u64).rng();
            match model {
                Model::Osp => simulate_osp(n, &mut rng),
                Model::OspClocks => simulate_osp_clocks(n, &mut rng),
                Model::CornerGrowth => simulate_corner_growth(n, &mut rng),
                Model::LppV | Model::LppW => Err(Error::InvalidShape("LPP samples carry no trajectory".into())),
            }
        })
        .collect()
}

/// Column `k` (0-based) of a batch of vectors.
pub fn column(samples: &[Vec<f64>], k: usize) -> Vec<f64> {
    samples.iter().map(|v| v[k]).collect()
}

/// Row maxima of a batch of vectors.
pub fn maxima(samples: &[Vec<f64>]) -> Vec<f64> {
    samples.iter().map(|v| vmax(v)).collect()
}
