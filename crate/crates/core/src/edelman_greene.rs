//! The Schützenberger operator on staircase tableaux and the Edelman–Greene
//! bijection from staircase standard tableaux to sorting networks.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::TestReport;
use crate::shapes::{enumerate_syt, tableau_params, Cell, StandardTableau, Tableau, YoungDiagram};
use crate::sortnet::{enumerate_sorting_networks, network_params, SortingNetwork};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvacuationPath(pub Vec<Cell>);

impl EvacuationPath {
    pub fn cells(&self) -> &[Cell] {
        &self.0
    }
}

/// Path from the maximal entry to `(1,1)`, stepping up when the entry above
/// beats the entry to the left and left otherwise; missing neighbours count
/// as 0. In the first column the path always steps up, which only matters
/// once vacated cells (also 0) are present.
fn path_from(t: &Tableau<u32>, start: Cell) -> Vec<Cell> {
    let mut path = vec![start];
    let mut cur = start;
    while cur != Cell::new(1, 1) {
        let up = if cur.row > 1 { *t.at(cur.row - 1, cur.col) } else { 0 };
        let left = if cur.col > 1 { *t.at(cur.row, cur.col - 1) } else { 0 };
        cur = if cur.col == 1 || (cur.row > 1 && up > left) {
            Cell::new(cur.row - 1, cur.col)
        } else {
            Cell::new(cur.row, cur.col - 1)
        };
        path.push(cur);
    }
    path
}

fn argmax(t: &Tableau<u32>) -> Cell {
    t.iter().max_by_key(|&(_, &v)| v).map(|(c, _)| c).expect("non-empty tableau")
}

fn slide(t: &mut Tableau<u32>, path: &[Cell]) {
    for w in path.windows(2) {
        let v = *t.at(w[1].row, w[1].col);
        *t.at_mut(w[0].row, w[0].col) = v;
    }
    let last = path[path.len() - 1];
    *t.at_mut(last.row, last.col) = 0;
}

pub fn evacuation_path(t: &StandardTableau) -> EvacuationPath {
    let tab = t.tableau();
    EvacuationPath(path_from(tab, argmax(tab)))
}

/// One application of the Schützenberger operator: slide out along the
/// evacuation path, vacate `(1,1)`, then add 1 to every entry.
pub fn schuetzenberger_step(t: &StandardTableau) -> StandardTableau {
    let mut tab = t.tableau().clone();
    let path = path_from(&tab, argmax(&tab));
    slide(&mut tab, &path);
    StandardTableau::new(tab.map(|v| v + 1)).expect("the operator preserves standardness")
}

fn staircase_order(t: &StandardTableau) -> Result<usize> {
    t.staircase_order()
        .ok_or_else(|| Error::InvalidShape(format!("{} is not a staircase", t.shape())))
}

/// The Edelman–Greene map, computed by emptying the tableau: the labels are
/// removed from the largest down, and the column of each removed label,
/// read in reverse, gives the swap sequence. Vacated cells hold 0.
pub fn eg_map(t: &StandardTableau) -> Result<SortingNetwork> {
    let n = staircase_order(t)?;
    let total = t.size();
    let mut tab = t.tableau().clone();
    let mut swaps = vec![0; total];
    for r in 0..total {
        let start = argmax(&tab);
        swaps[total - 1 - r] = start.col;
        let path = path_from(&tab, start);
        slide(&mut tab, &path);
    }
    SortingNetwork::new(n, swaps)
}

/// The Edelman–Greene map by literal iteration of the Schützenberger
/// operator; `s_m` is the column of the maximum of `Phi^(N-m)(t)`.
pub fn eg_map_by_iteration(t: &StandardTableau) -> Result<SortingNetwork> {
    let n = staircase_order(t)?;
    let total = t.size();
    let mut swaps = vec![0; total];
    let mut cur = t.clone();
    for m in (1..=total).rev() {
        swaps[m - 1] = argmax(cur.tableau()).col;
        cur = schuetzenberger_step(&cur);
    }
    SortingNetwork::new(n, swaps)
}

/// Lookup table from sorting networks back to tableaux for one order.
pub struct EgIndex {
    order: usize,
    map: HashMap<Vec<usize>, StandardTableau>,
}

impl EgIndex {
    pub fn build(order: usize) -> Result<Self> {
        let shape = YoungDiagram::staircase(order)?;
        let mut map = HashMap::new();
        for t in enumerate_syt(&shape) {
            let s = eg_map(&t)?;
            if map.insert(s.swaps().to_vec(), t).is_some() {
                return Err(Error::NotFound(format!("two tableaux map to {s}")));
            }
        }
        Ok(Self { order, map })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn lookup(&self, s: &SortingNetwork) -> Result<StandardTableau> {
        if s.order() != self.order {
            return Err(Error::InvalidOrder(s.order()));
        }
        self.map.get(s.swaps()).cloned().ok_or_else(|| Error::NotFound(s.to_string()))
    }
}

fn cached_index(order: usize) -> Result<Arc<EgIndex>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<EgIndex>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(idx) = cache.lock().expect("index cache").get(&order) {
        return Ok(idx.clone());
    }
    let idx = Arc::new(EgIndex::build(order)?);
    cache.lock().expect("index cache").insert(order, idx.clone());
    Ok(idx)
}

/// The tableau `t` with `eg_map(t) == s`, found in a per-order index of the
/// full enumeration (built once per process). Orders up to 6.
pub fn eg_inverse_search(s: &SortingNetwork) -> Result<StandardTableau> {
    if s.order() > 6 {
        return Err(Error::SizeCap(format!("inverse search needs order <= 6, got {}", s.order())));
    }
    cached_index(s.order())?.lookup(s)
}

/// Checks `last = cor` and `pi = sigma` on every staircase tableau of order `n`.
pub fn verify_eg_params(n: usize) -> Result<TestReport> {
    crate::error::check_range("order", n, 2, 6)?;
    let shape = YoungDiagram::staircase(n)?;
    let mut report = TestReport::new(format!("edelman-greene parameters, n={n}"));
    let mut checked = 0usize;
    let mut failures = 0usize;
    for t in enumerate_syt(&shape) {
        let s = eg_map(&t)?;
        let tp = tableau_params(&t)?;
        let sp = network_params(&s);
        checked += 1;
        if sp.last != tp.cor || sp.pi != tp.sigma {
            failures += 1;
            if failures <= 10 {
                report.note(format!("t={t}: last={:?} cor={:?}", sp.last, tp.cor));
            }
        }
    }
    report.record("tableaux", checked as f64);
    report.require_at_most("failures", failures as f64, 0.0);
    report.sample_sizes.push(checked);
    Ok(report)
}

/// Checks that `eg_map` is a bijection onto the enumerated sorting networks.
pub fn verify_eg_bijection(n: usize) -> Result<TestReport> {
    crate::error::check_range("order", n, 2, 6)?;
    let shape = YoungDiagram::staircase(n)?;
    let mut report = TestReport::new(format!("edelman-greene bijection, n={n}"));
    let mut image = HashSet::new();
    let mut collisions = 0usize;
    let mut count = 0usize;
    for t in enumerate_syt(&shape) {
        count += 1;
        if !image.insert(eg_map(&t)?.swaps().to_vec()) {
            collisions += 1;
        }
    }
    let networks: HashSet<Vec<usize>> = enumerate_sorting_networks(n).map(|s| s.swaps().to_vec()).collect();
    report.record("tableaux", count as f64);
    report.record("networks", networks.len() as f64);
    report.require_at_most("collisions", collisions as f64, 0.0);
    report.check(image == networks, "image differs from the set of sorting networks");
    report.sample_sizes.push(count);
    Ok(report)
}
