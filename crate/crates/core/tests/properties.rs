//! Property tests over random inputs.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use osplpp::edelman_greene::{eg_inverse_search, eg_map, schuetzenberger_step};
use osplpp::factor::GeneratingFactor;
use osplpp::genfun::{factor_to_canonical, pf_decompose_block};
use osplpp::io::{format_float, read_vectors_csv, write_vectors_csv, VectorRow};
use osplpp::processes::ks_two_sample;
use osplpp::rsk::{
    burge, classical_rsk_rectangle, diagonal_sum, dual_lpp_tableau, greene_max, greene_max_bruteforce, lpp_tableau,
    rectangle_sum, rsk, Orientation,
};
use osplpp::shapes::{enumerate_syt, tableau_params};
use osplpp::sortnet::{apply_prefix, network_params};
use osplpp::{Cell, Permutation, SortingNetwork, StandardTableau, Tableau, YoungDiagram};

fn diagram(max_rows: usize, max_len: usize) -> impl Strategy<Value = YoungDiagram> {
    prop::collection::vec(1..=max_len, 1..=max_rows).prop_map(|mut rows| {
        rows.sort_unstable_by(|a, b| b.cmp(a));
        YoungDiagram::new(rows).unwrap()
    })
}

fn int_tableau(max_rows: usize, max_len: usize, max_entry: i64) -> impl Strategy<Value = Tableau<i64>> {
    diagram(max_rows, max_len).prop_flat_map(move |shape| {
        prop::collection::vec(0..=max_entry, shape.size()).prop_map(move |vals| {
            let mut it = vals.into_iter();
            Tableau::from_fn(shape.clone(), |_| it.next().unwrap())
        })
    })
}

/// A sorting network built by choosing among the ascents at every step.
fn network(max_order: usize) -> impl Strategy<Value = SortingNetwork> {
    (2..=max_order).prop_flat_map(|n| {
        prop::collection::vec(any::<prop::sample::Index>(), n * (n - 1) / 2).prop_map(move |picks| {
            let mut state: Vec<usize> = (1..=n).collect();
            let swaps = picks
                .iter()
                .map(|ix| {
                    let ascents: Vec<usize> = (1..n).filter(|&k| state[k - 1] < state[k]).collect();
                    let k = ascents[ix.index(ascents.len())];
                    state.swap(k - 1, k);
                    k
                })
                .collect();
            SortingNetwork::new(n, swaps).unwrap()
        })
    })
}

fn staircase_tableau(max_order: usize) -> impl Strategy<Value = StandardTableau> {
    (2..=max_order).prop_flat_map(|n| {
        let all: Vec<StandardTableau> = enumerate_syt(&YoungDiagram::staircase(n).unwrap()).collect();
        prop::sample::select(all)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rsk_and_burge_interlace_and_preserve_weights(x in int_tableau(4, 4, 5)) {
        let omega = x.shape().omega_weights();
        let total: i64 = x.values().sum();
        for out in [rsk(&x), burge(&x)] {
            prop_assert!(out.interlaces());
            let weighted: i64 = out.iter().map(|(c, &v)| v * *omega.at(c.row, c.col) as i64).sum();
            prop_assert_eq!(weighted, total);
            for b in x.shape().border_strip() {
                prop_assert_eq!(diagonal_sum(&out, b), rectangle_sum(&x, b.row, b.col));
            }
        }
        let strip = x.shape().border_strip();
        prop_assert_eq!(rsk(&x).restrict(&strip), lpp_tableau(&x).restrict(&strip));
        prop_assert_eq!(burge(&x).restrict(&strip), dual_lpp_tableau(&x).restrict(&strip));
    }

    #[test]
    fn greene_dp_matches_brute_force(x in int_tableau(3, 3, 4)) {
        for b in x.shape().border_strip() {
            for k in 1..=b.row.min(b.col) {
                for o in [Orientation::Rsk, Orientation::Burge] {
                    prop_assert_eq!(
                        greene_max(&x, b.row, b.col, k, o).unwrap(),
                        greene_max_bruteforce(&x, b.row, b.col, k, o).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn shift_covariance(x in int_tableau(4, 4, 3), k in 1i64..4) {
        // adding k to every input entry adds k(i+j-1) to the images
        let shifted = x.map(|&v| v + k);
        for (f, g) in [(rsk(&x), rsk(&shifted)), (burge(&x), burge(&shifted))] {
            for (c, &v) in g.iter() {
                prop_assert_eq!(v, *f.at(c.row, c.col) + k * (c.row + c.col - 1) as i64);
            }
        }
    }

    #[test]
    fn classical_rsk_on_rectangles(m in 1usize..4, n in 1usize..4, vals in prop::collection::vec(0i64..3, 9)) {
        let x = Tableau::from_fn(YoungDiagram::rectangle(m, n), |c| vals[(c.row - 1) * 3 + c.col - 1]);
        let classical = classical_rsk_rectangle(&x).unwrap();
        prop_assert_eq!(&classical.encoding, &rsk(&x));
    }

    #[test]
    fn tableau_text_round_trip(x in int_tableau(5, 5, 1000)) {
        prop_assert_eq!(x.to_string().parse::<Tableau<i64>>().unwrap(), x);
    }

    #[test]
    fn networks_reach_the_reverse(s in network(9)) {
        let n = s.order();
        prop_assert_eq!(apply_prefix(&s, s.len()).unwrap(), Permutation::reverse(n));
        let p = network_params(&s);
        prop_assert_eq!(p.deg[0] as usize, n - 1);
        prop_assert_eq!(*p.fin_bar.last().unwrap() as usize, s.len());
        prop_assert_eq!(p.factor.total_multiplicity() as usize, s.len());
        prop_assert_eq!(s.to_string().parse::<SortingNetwork>().unwrap(), s);
    }

    #[test]
    fn edelman_greene_round_trip(s in network(6)) {
        let t = eg_inverse_search(&s).unwrap();
        prop_assert_eq!(eg_map(&t).unwrap(), s.clone());
        let tp = tableau_params(&t).unwrap();
        let sp = network_params(&s);
        prop_assert_eq!(tp.cor, sp.last);
        prop_assert_eq!(tp.sigma, sp.pi);
    }

    #[test]
    fn schuetzenberger_period(t in staircase_tableau(5)) {
        let n = t.staircase_order().unwrap();
        let total = n * (n - 1) / 2;
        let mut cur = t.clone();
        for _ in 0..2 * total {
            cur = schuetzenberger_step(&cur);
        }
        prop_assert_eq!(cur, t);
    }

    #[test]
    fn permutation_inverse(v in Just((1..=7usize).collect::<Vec<_>>()).prop_shuffle()) {
        let p = Permutation::new(v).unwrap();
        let inv = p.inverse();
        for k in 1..=p.len() {
            prop_assert_eq!(inv.apply(p.apply(k)), k);
        }
        prop_assert_eq!(p.to_string().parse::<Permutation>().unwrap(), p);
    }

    #[test]
    fn partial_fractions_evaluate_correctly(
        mults in prop::collection::btree_map(1u32..7, 1u32..4, 1..4),
        x in 1i64..1000,
    ) {
        let block: Vec<(u32, u32)> = mults.into_iter().collect();
        let pf = pf_decompose_block(&block).unwrap();
        let xr = BigRational::from_integer(BigInt::from(x));
        let mut sum = BigRational::from_integer(0.into());
        for (&(d, e), c) in &pf {
            let base = &xr + BigRational::from_integer(BigInt::from(d));
            sum += c / num_traits::pow(base, e as usize);
        }
        let f = GeneratingFactor::from_blocks(vec![block]);
        prop_assert_eq!(&sum, &f.eval_rational(std::slice::from_ref(&xr)));
        prop_assert_eq!(factor_to_canonical(&f).eval(std::slice::from_ref(&xr)), f.eval_rational(&[xr]));
    }

    #[test]
    fn float_text_is_exact(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        prop_assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn csv_round_trip(rows in prop::collection::vec(prop::collection::vec(0.0f64..100.0, 3), 1..20)) {
        let rows: Vec<VectorRow> = rows.into_iter().enumerate().map(|(i, v)| VectorRow::new(i as u64, "U", v)).collect();
        let mut buf = Vec::new();
        write_vectors_csv(&mut buf, &rows).unwrap();
        prop_assert_eq!(read_vectors_csv(&buf[..]).unwrap(), rows);
    }

    #[test]
    fn ks_statistic_is_symmetric_and_bounded(
        a in prop::collection::vec(-10.0f64..10.0, 1..60),
        b in prop::collection::vec(-10.0f64..10.0, 1..60),
    ) {
        let ab = ks_two_sample(&a, &b).unwrap();
        let ba = ks_two_sample(&b, &a).unwrap();
        prop_assert!((ab.statistic - ba.statistic).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&ab.statistic));
        prop_assert!((0.0..=1.0).contains(&ab.p_value));
    }
}

#[test]
fn border_cells_are_last_on_their_diagonal() {
    let shape = YoungDiagram::new(vec![5, 3, 3, 1]).unwrap();
    for b in shape.border_strip() {
        assert!(!shape.contains(Cell::new(b.row + 1, b.col + 1)));
    }
    assert_eq!(shape.border_strip().len(), 4 + 5 - 1);
}
