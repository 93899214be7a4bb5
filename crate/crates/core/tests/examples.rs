//! Worked examples on the order-six pair (5,1,2,4,1,3,5,4,2,1,5,3,2,4,3).

use std::collections::BTreeMap;

use osplpp::edelman_greene::{eg_inverse_search, eg_map};
use osplpp::shapes::{growth_sequence, tableau_params};
use osplpp::sortnet::network_params;
use osplpp::{SortingNetwork, YoungDiagram};

const SWAPS: [usize; 15] = [5, 1, 2, 4, 1, 3, 5, 4, 2, 1, 5, 3, 2, 4, 3];

fn x1_block(exps: BTreeMap<(usize, u32), u32>) -> BTreeMap<u32, u32> {
    exps.into_iter().filter(|((k, _), _)| *k == 1).map(|((_, d), e)| (d, e)).collect()
}

#[test]
fn tableau_side() {
    let s = SortingNetwork::new(6, SWAPS.to_vec()).unwrap();
    let t = eg_inverse_search(&s).unwrap();
    assert_eq!(eg_map(&t).unwrap(), s);

    assert_eq!(growth_sequence(&t).get(5), &YoungDiagram::new(vec![3, 1, 1]).unwrap());

    let p = tableau_params(&t).unwrap();
    assert_eq!(p.cor, vec![10, 13, 15, 14, 11]);
    assert_eq!(p.sigma.as_slice(), &[1, 3, 5, 4, 2]);
    assert_eq!(p.deg, vec![1, 2, 2, 3, 3, 3, 4, 4, 4, 4, 3, 2, 3, 2, 1]);
    assert_eq!(x1_block(p.factor.exponents()), BTreeMap::from([(1, 1), (2, 2), (3, 3), (4, 4)]));
}

#[test]
fn network_side() {
    let s = SortingNetwork::new(6, SWAPS.to_vec()).unwrap();
    let p = network_params(&s);
    assert_eq!(p.last, vec![10, 13, 15, 14, 11]);
    assert_eq!(p.pi.as_slice(), &[1, 3, 5, 4, 2]);
    assert_eq!(p.deg, vec![5, 4, 3, 3, 3, 2, 3, 2, 2, 3, 2, 1, 2, 1, 1]);
    assert_eq!(x1_block(p.factor.exponents()), BTreeMap::from([(5, 1), (4, 1), (3, 5), (2, 3)]));
}
