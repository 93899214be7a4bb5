//! Adaptive Gauss–Kronrod (7/15-point) quadrature.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_8,
];
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
const WG: [f64; 4] = [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

fn gk15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        kron += WGK[i] * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`, bisecting the
/// interval with the largest error estimate. Fails when more than
/// `max_intervals` subintervals would be needed.
pub fn integrate(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64, max_intervals: usize) -> Result<f64> {
    if b <= a {
        return Ok(0.0);
    }
    let (v, e) = gk15(&mut f, a, b);
    let mut parts = vec![(a, b, v, e)];
    let (mut total, mut err) = (v, e);
    while err > tol {
        if parts.len() >= max_intervals {
            return Err(Error::Tolerance { tol, estimate: err });
        }
        let (i, _) = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("at least one interval");
        let (lo, hi, pv, pe) = parts.swap_remove(i);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&mut f, lo, mid);
        let (v2, e2) = gk15(&mut f, mid, hi);
        total += v1 + v2 - pv;
        err += e1 + e2 - pe;
        parts.push((lo, mid, v1, e1));
        parts.push((mid, hi, v2, e2));
    }
    Ok(total)
}

/// Integrates over `[a, b]` split at the given interior points, giving each
/// piece a share of the tolerance proportional to its length.
pub fn integrate_with_breaks(
    mut f: impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    breaks: &[f64],
    tol: f64,
    max_intervals: usize,
) -> Result<f64> {
    if b <= a {
        return Ok(0.0);
    }
    let mut pts: Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    pts.push(a);
    pts.push(b);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let mut total = 0.0;
    for w in pts.windows(2) {
        let share = tol * (w[1] - w[0]) / (b - a);
        total += integrate(&mut f, w[0], w[1], share.max(tol * 1e-3), max_intervals)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_and_exponentials() {
        let v = integrate(|x| x.powi(5), 0.0, 2.0, 1e-12, 50).unwrap();
        assert!((v - 64.0 / 6.0).abs() < 1e-12);
        let v = integrate(|x| (-x).exp(), 0.0, 40.0, 1e-12, 200).unwrap();
        assert!((v - 1.0).abs() < 1e-11);
    }

    #[test]
    fn kinks_need_breaks() {
        let f = |x: f64| (x - 0.3).abs();
        let exact = 0.3f64.powi(2) / 2.0 + 0.7f64.powi(2) / 2.0;
        let v = integrate_with_breaks(f, 0.0, 1.0, &[0.3], 1e-13, 10).unwrap();
        assert!((v - exact).abs() < 1e-13);
        let v = integrate(f, 0.0, 1.0, 1e-10, 1000).unwrap();
        assert!((v - exact).abs() < 1e-10);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let r = integrate(|x| 1.0 / x.sqrt(), 0.0, 1.0, 1e-14, 4);
        assert!(matches!(r, Err(Error::Tolerance { .. })));
    }
}
