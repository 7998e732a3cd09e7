//! Differences d(X) = |X| − |N(X)|, the critical difference, critical
//! independent sets and ker(G).
//!
//! The subset sweep is the definition of correctness. The double-cover route
//! (`critical_difference_fast`) is an optimization that stays switched on only
//! while it agrees with the sweep.

use std::sync::atomic::{AtomicBool, Ordering};

use crate::budget::{ensure_mask, Budget};
use crate::error::Result;
use crate::graph::{Graph, ShapeKind, VertexSet};
use crate::independence::{core, sort_sets};
use crate::matching::{is_koenig_egervary, mu};

#[derive(Debug, Clone)]
pub struct CriticalReport {
    pub d_c: i64,
    pub id_c: i64,
    /// A set attaining `d_c`.
    pub witness_set: VertexSet,
    /// Independent sets attaining `id_c`; only filled by the subset sweep.
    pub critical_independent_sets: Option<Vec<VertexSet>>,
    pub ker: VertexSet,
}

pub fn diff(g: &Graph, x: &VertexSet) -> Result<i64> {
    let nx = g.neighborhood(x, false)?;
    Ok(x.len() as i64 - nx.len() as i64)
}

/// Exact d_c and id_c by maximizing over all 2^n subsets.
pub fn critical_difference_bruteforce(g: &Graph, budget: &Budget) -> Result<CriticalReport> {
    ensure_mask("critical set subset sweep", g.n(), budget.max_subset_n)?;
    let adj = g.masks().expect("checked size");
    let n = g.n();

    let mut d_c = i64::MIN;
    let mut witness = 0u64;
    let mut id_c = i64::MIN;
    let mut critical: Vec<u64> = Vec::new();
    // N(X) built incrementally from N(X minus its lowest vertex)
    let mut nbhd = vec![0u64; 1usize << n];
    for x in 0..(1u64 << n) {
        let nx = if x == 0 {
            0
        } else {
            let low = x.trailing_zeros() as usize;
            nbhd[(x & (x - 1)) as usize] | adj[low]
        };
        nbhd[x as usize] = nx;
        let d = x.count_ones() as i64 - nx.count_ones() as i64;
        if d > d_c {
            d_c = d;
            witness = x;
        }
        if x & nx == 0 {
            if d > id_c {
                id_c = d;
                critical.clear();
            }
            if d == id_c {
                critical.push(x);
            }
        }
    }

    let ker_mask = critical.iter().fold(u64::MAX, |acc, &s| acc & s);
    let mut sets: Vec<VertexSet> = critical.into_iter().map(|m| g.set_from_mask(m)).collect();
    sort_sets(g, &mut sets);
    Ok(CriticalReport {
        d_c,
        id_c,
        witness_set: g.set_from_mask(witness),
        critical_independent_sets: Some(sets),
        ker: g.set_from_mask(ker_mask & full_mask(n)),
    })
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Two copies V ∪ V′ of the vertices, with u–v′ and v–u′ for every edge uv.
///
/// Copy labels are the original labels with a trailing `'`.
pub fn bipartite_double_cover(g: &Graph) -> Graph {
    let n = g.n();
    let names: Vec<String> = g
        .labels()
        .iter()
        .cloned()
        .chain(g.labels().iter().map(|l| format!("{l}'")))
        .collect();
    let edges: Vec<(usize, usize)> = g.edges().flat_map(|e| [(e.u, e.v + n), (e.v, e.u + n)]).collect();
    Graph::from_index_edges(&names, &edges).expect("double cover of a simple graph is simple")
}

static DOUBLE_COVER_GATE: AtomicBool = AtomicBool::new(true);

/// Whether `critical_difference_fast` may use the double cover.
pub fn double_cover_gate_open() -> bool {
    DOUBLE_COVER_GATE.load(Ordering::Relaxed)
}

/// Compares both routes on `g`; a disagreement closes the gate for the process.
pub fn cross_check_double_cover(g: &Graph, budget: &Budget) -> Result<bool> {
    let fast = double_cover_difference(g);
    let slow = critical_difference_bruteforce(g, budget)?.d_c;
    if fast != slow {
        DOUBLE_COVER_GATE.store(false, Ordering::Relaxed);
    }
    Ok(fast == slow)
}

/// α(B(G)) − n, with α of the bipartite cover taken as 2n − μ(B(G)).
fn double_cover_difference(g: &Graph) -> i64 {
    let cover = bipartite_double_cover(g);
    let alpha_cover = cover.n() - mu(&cover);
    alpha_cover as i64 - g.n() as i64
}

/// d_c(G) through the bipartite double cover; falls back to the subset sweep
/// once a cross-check has failed.
pub fn critical_difference_fast(g: &Graph, budget: &Budget) -> Result<i64> {
    if double_cover_gate_open() {
        Ok(double_cover_difference(g))
    } else {
        Ok(critical_difference_bruteforce(g, budget)?.d_c)
    }
}

/// ker(G) by the subset sweep, never by a structural shortcut.
pub fn ker_bruteforce(g: &Graph, budget: &Budget) -> Result<VertexSet> {
    Ok(critical_difference_bruteforce(g, budget)?.ker)
}

/// ker(G). Bipartite graphs and non-KE unicyclic graphs take core(G); every
/// other graph goes through the subset sweep.
pub fn ker(g: &Graph, budget: &Budget) -> Result<VertexSet> {
    let shape = g.classify_shape();
    if shape.bipartite {
        return core(g, budget);
    }
    if shape.kind == ShapeKind::Unicyclic && !is_koenig_egervary(g, budget)? {
        return core(g, budget);
    }
    ker_bruteforce(g, budget)
}
