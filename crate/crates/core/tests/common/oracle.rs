//! Definition-level oracles over bitmasks. Nothing here calls the library's
//! algorithms; only the graph's adjacency is read.
#![allow(dead_code)]

use kerlab_core::Graph;

pub fn adjacency(g: &Graph) -> Vec<u64> {
    assert!(g.n() <= 24, "oracle limited to small graphs");
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

fn members(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| mask >> i & 1 == 1)
}

pub fn independent(adj: &[u64], mask: u64) -> bool {
    members(mask).all(|v| adj[v] & mask == 0)
}

pub fn open_neighborhood(adj: &[u64], mask: u64) -> u64 {
    members(mask).fold(0, |acc, v| acc | adj[v])
}

/// Every maximum independent set, as masks.
pub fn mis_family(g: &Graph) -> Vec<u64> {
    let adj = adjacency(g);
    let mut best = 0;
    let mut sets = Vec::new();
    for mask in 0..1u64 << g.n() {
        if !independent(&adj, mask) {
            continue;
        }
        let size = mask.count_ones();
        if size > best {
            best = size;
            sets.clear();
        }
        if size == best {
            sets.push(mask);
        }
    }
    sets
}

pub struct Independence {
    pub alpha: usize,
    pub core: u64,
    pub corona: u64,
    pub family: Vec<u64>,
}

pub fn independence(g: &Graph) -> Independence {
    let family = mis_family(g);
    Independence {
        alpha: family[0].count_ones() as usize,
        core: family.iter().fold(u64::MAX, |a, &s| a & s) & full(g.n()),
        corona: family.iter().fold(0, |a, &s| a | s),
        family,
    }
}

pub fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// μ by exhaustive branching: the lowest free vertex is either left
/// unmatched or matched to one of its free neighbors.
pub fn mu(g: &Graph) -> usize {
    fn go(adj: &[u64], free: u64) -> usize {
        if free == 0 {
            return 0;
        }
        let v = free.trailing_zeros() as usize;
        let rest = free & !(1 << v);
        let mut best = go(adj, rest);
        for w in members(adj[v] & rest) {
            best = best.max(1 + go(adj, rest & !(1 << w)));
        }
        best
    }
    let adj = adjacency(g);
    go(&adj, full(g.n()))
}

pub struct Critical {
    pub d_c: i64,
    pub id_c: i64,
    pub ker: u64,
}

pub fn critical(g: &Graph) -> Critical {
    let adj = adjacency(g);
    let mut d_c = i64::MIN;
    let mut id_c = i64::MIN;
    let mut ker = 0u64;
    for mask in 0..1u64 << g.n() {
        let d = mask.count_ones() as i64 - open_neighborhood(&adj, mask).count_ones() as i64;
        d_c = d_c.max(d);
        if independent(&adj, mask) {
            if d > id_c {
                id_c = d;
                ker = mask;
            } else if d == id_c {
                ker &= mask;
            }
        }
    }
    Critical { d_c, id_c, ker }
}

/// Sorted labels of a mask.
pub fn labels(g: &Graph, mask: u64) -> Vec<String> {
    let mut out: Vec<String> = members(mask).map(|v| g.label(v).to_string()).collect();
    out.sort();
    out
}

pub fn mask_of(g: &Graph, names: &[&str]) -> u64 {
    names.iter().fold(0, |m, l| m | 1 << g.vertex(l).unwrap())
}
