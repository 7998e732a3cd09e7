//! Canonical forms for small graphs, used to deduplicate enumerations.
//!
//! Colour refinement to an equitable partition, then individualization of
//! each vertex of the first non-trivial cell, recursively. Every discrete leaf
//! yields an adjacency code; the largest one is the canonical form. Twin
//! vertices in a cell are interchangeable, so only one of them is branched on.

use crate::budget::ensure;
use crate::error::Result;
use crate::graph::Graph;

/// Codes pack the upper adjacency triangle into a `u128`.
pub const MAX_CANON_N: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    code: u128,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }
}

#[derive(Debug, Clone)]
pub struct Canonical {
    pub form: CanonicalForm,
    /// `order[i]` is the vertex placed at canonical position `i`.
    pub order: Vec<usize>,
}

pub fn canonical_form(g: &Graph) -> Result<Canonical> {
    ensure("canonical labeling", g.n(), MAX_CANON_N)?;
    let adj = g.masks().expect("checked size");
    let n = g.n();
    let mut best: Option<(u128, Vec<usize>)> = None;
    search(&adj, vec![0; n], &mut best);
    let (code, order) = best.unwrap_or((0, Vec::new()));
    Ok(Canonical {
        form: CanonicalForm { n, code },
        order,
    })
}

/// Isomorphic graphs map to identical outputs; labels become `1..=n` by canonical position.
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    let c = canonical_form(g)?;
    let mut pos = vec![0; g.n()];
    for (i, &v) in c.order.iter().enumerate() {
        pos[v] = i;
    }
    let names: Vec<String> = (1..=g.n()).map(|i| i.to_string()).collect();
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .map(|e| {
            let (a, b) = (pos[e.u], pos[e.v]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    Graph::from_index_edges(&names, &edges)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    Ok(a.n() == b.n() && a.m() == b.m() && canonical_form(a)?.form == canonical_form(b)?.form)
}

fn refine(adj: &[u64], colors: &mut [usize]) {
    let n = adj.len();
    loop {
        let cells = distinct(colors);
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut around: Vec<usize> = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(|w| colors[w]).collect();
                around.sort_unstable();
                (colors[v], around)
            })
            .collect();
        let mut uniq = sigs.clone();
        uniq.sort();
        uniq.dedup();
        for v in 0..n {
            colors[v] = uniq.binary_search(&sigs[v]).unwrap();
        }
        if uniq.len() == cells {
            return;
        }
    }
}

fn distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn search(adj: &[u64], mut colors: Vec<usize>, best: &mut Option<(u128, Vec<usize>)>) {
    let n = adj.len();
    refine(adj, &mut colors);
    let mut count = vec![0usize; n];
    for &c in &colors {
        count[c] += 1;
    }
    let Some(target) = (0..n).find(|&c| count[c] > 1) else {
        let mut order = vec![0; n];
        for v in 0..n {
            order[colors[v]] = v;
        }
        let mut code = 0u128;
        for i in 0..n {
            for j in i + 1..n {
                code = code << 1 | (adj[order[i]] >> order[j] & 1) as u128;
            }
        }
        if best.as_ref().is_none_or(|(b, _)| code > *b) {
            *best = Some((code, order));
        }
        return;
    };

    let cell: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
    let mut reps: Vec<usize> = Vec::new();
    for &v in &cell {
        let twin_of_rep = reps.iter().any(|&r| adj[r] & !(1u64 << v) == adj[v] & !(1u64 << r));
        if !twin_of_rep {
            reps.push(v);
        }
    }
    for v in reps {
        let split: Vec<usize> = (0..n)
            .map(|w| 2 * colors[w] + usize::from(colors[w] == target && w != v))
            .collect();
        let mut ranks = split.clone();
        ranks.sort_unstable();
        ranks.dedup();
        let next = split.iter().map(|c| ranks.binary_search(c).unwrap()).collect();
        search(adj, next, best);
    }
}
