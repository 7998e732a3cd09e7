//! Maximum matchings, μ, König-Egerváry recognition, and saturating matchings.
//!
//! `maximum_matching` dispatches per connected component: trees and unicyclic
//! components are solved by leaf stripping (plus alternate edges on the
//! leftover cycle), bipartite ones by augmenting paths, and the rest by
//! Edmonds' blossom algorithm.

use std::collections::VecDeque;

use crate::budget::{ensure_mask, Budget};
use crate::error::{Error, Result};
use crate::graph::{label_cmp, Edge, Graph, GraphId, VertexSet};
use crate::independence::{alpha, bits};

/// A set of pairwise non-incident edges of one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    owner: GraphId,
    edges: Vec<Edge>,
}

impl Matching {
    /// Validates that every edge exists in `g` and no two share an endpoint.
    pub fn new(g: &Graph, mut edges: Vec<Edge>) -> Result<Self> {
        let mut used = vec![false; g.n()];
        for &e in &edges {
            g.check_edge(e)?;
            if used[e.u] || used[e.v] {
                return Err(Error::InvalidArgument(format!(
                    "edges share endpoint in {}–{}",
                    g.label(e.u),
                    g.label(e.v)
                )));
            }
            used[e.u] = true;
            used[e.v] = true;
        }
        edges.sort_unstable();
        Ok(Matching { owner: g.id(), edges })
    }

    fn from_mates(g: &Graph, mate: &[usize]) -> Self {
        let edges = (0..mate.len())
            .filter(|&v| mate[v] != usize::MAX && v < mate[v])
            .map(|v| Edge::new(v, mate[v]))
            .collect();
        Matching { owner: g.id(), edges }
    }

    pub fn owner(&self) -> GraphId {
        self.owner
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Partner of `v`, if matched.
    pub fn mate(&self, v: usize) -> Option<usize> {
        self.edges.iter().find(|e| e.touches(v)).map(|e| e.other(v))
    }

    pub fn saturates(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.mate(v).is_some())
    }

    /// Label pairs in canonical order.
    pub fn render(&self, g: &Graph) -> Vec<(String, String)> {
        assert_eq!(self.owner, g.id(), "rendering a matching of another graph");
        let mut pairs: Vec<_> = self.edges.iter().map(|&e| g.edge_labels(e)).collect();
        pairs.sort_by(|x, y| label_cmp(&x.0, &y.0).then_with(|| label_cmp(&x.1, &y.1)));
        pairs
    }
}

/// A maximum matching of `g`. Polynomial on every input.
pub fn maximum_matching(g: &Graph) -> Matching {
    let mut mate = vec![usize::MAX; g.n()];
    for comp in g.components() {
        let local = local_adjacency(g, &comp);
        let edges = local.iter().map(Vec::len).sum::<usize>() / 2;
        let local_mate = if edges <= comp.len() {
            leaf_strip(&local)
        } else if let Some(color) = two_color(&local) {
            kuhn(&local, &color)
        } else {
            blossom(&local)
        };
        for (i, &m) in local_mate.iter().enumerate() {
            if m != usize::MAX {
                mate[comp[i]] = comp[m];
            }
        }
    }
    Matching::from_mates(g, &mate)
}

pub fn mu(g: &Graph) -> usize {
    maximum_matching(g).len()
}

/// Edmonds' blossom algorithm on the whole graph, no dispatch.
pub fn blossom_matching(g: &Graph) -> Matching {
    let adj: Vec<Vec<usize>> = (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect();
    Matching::from_mates(g, &blossom(&adj))
}

fn local_adjacency(g: &Graph, comp: &[usize]) -> Vec<Vec<usize>> {
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in comp.iter().enumerate() {
        local[v] = i;
    }
    comp.iter()
        .map(|&v| g.neighbors(v).iter().map(|&w| local[w]).collect())
        .collect()
}

fn two_color(adj: &[Vec<usize>]) -> Option<Vec<u8>> {
    let mut color = vec![u8::MAX; adj.len()];
    for s in 0..adj.len() {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    return None;
                }
            }
        }
    }
    Some(color)
}

/// Matches leaves to their neighbors until none remain; whatever survives is
/// a chordless cycle (or nothing), matched by alternate edges.
fn leaf_strip(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut mate = vec![usize::MAX; n];
    let mut gone = vec![false; n];
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();

    let remove = |v: usize, gone: &mut Vec<bool>, deg: &mut Vec<usize>, stack: &mut Vec<usize>| {
        gone[v] = true;
        for &w in &adj[v] {
            if !gone[w] {
                deg[w] -= 1;
                if deg[w] <= 1 {
                    stack.push(w);
                }
            }
        }
    };

    while let Some(v) = stack.pop() {
        if gone[v] {
            continue;
        }
        match adj[v].iter().copied().find(|&w| !gone[w]) {
            Some(u) => {
                mate[v] = u;
                mate[u] = v;
                remove(v, &mut gone, &mut deg, &mut stack);
                remove(u, &mut gone, &mut deg, &mut stack);
            }
            None => remove(v, &mut gone, &mut deg, &mut stack),
        }
    }

    if let Some(start) = (0..n).find(|&v| !gone[v]) {
        let mut cycle = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = adj[cur]
                .iter()
                .copied()
                .find(|&w| !gone[w] && w != prev)
                .expect("leftover of a unicyclic component is a cycle");
            if next == start {
                break;
            }
            cycle.push(next);
            prev = cur;
            cur = next;
        }
        for pair in cycle.chunks_exact(2) {
            mate[pair[0]] = pair[1];
            mate[pair[1]] = pair[0];
        }
    }
    mate
}

/// Augmenting paths from the color-0 side.
fn kuhn(adj: &[Vec<usize>], color: &[u8]) -> Vec<usize> {
    let n = adj.len();
    let mut mate = vec![usize::MAX; n];
    for s in (0..n).filter(|&s| color[s] == 0) {
        let mut seen = vec![false; n];
        augment(adj, s, &mut mate, &mut seen, &|_| true);
    }
    mate
}

fn augment(
    adj: &[Vec<usize>],
    v: usize,
    mate: &mut [usize],
    seen: &mut [bool],
    allowed: &dyn Fn(usize) -> bool,
) -> bool {
    for &w in &adj[v] {
        if seen[w] || !allowed(w) {
            continue;
        }
        seen[w] = true;
        if mate[w] == usize::MAX || augment(adj, mate[w], mate, seen, allowed) {
            mate[v] = w;
            mate[w] = v;
            return true;
        }
    }
    false
}

/// Edmonds' algorithm: BFS for augmenting paths, contracting odd cycles.
fn blossom(adj: &[Vec<usize>]) -> Vec<usize> {
    const NONE: usize = usize::MAX;
    let n = adj.len();
    let mut mate = vec![NONE; n];

    let lca = |mate: &[usize], base: &[usize], parent: &[usize], mut a: usize, mut b: usize| -> usize {
        let mut used = vec![false; n];
        loop {
            a = base[a];
            used[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = parent[mate[a]];
        }
        loop {
            b = base[b];
            if used[b] {
                return b;
            }
            b = parent[mate[b]];
        }
    };

    for root in 0..n {
        if mate[root] != NONE {
            continue;
        }
        let mut parent = vec![NONE; n];
        let mut base: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        used[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut end = NONE;

        'search: while let Some(v) = queue.pop_front() {
            for &to in &adj[v] {
                if base[v] == base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && parent[mate[to]] != NONE) {
                    let cur = lca(&mate, &base, &parent, v, to);
                    let mut in_blossom = vec![false; n];
                    for (start, child) in [(v, to), (to, v)] {
                        let mut x = start;
                        let mut c = child;
                        while base[x] != cur {
                            in_blossom[base[x]] = true;
                            in_blossom[base[mate[x]]] = true;
                            parent[x] = c;
                            c = mate[x];
                            x = parent[mate[x]];
                        }
                    }
                    for i in 0..n {
                        if in_blossom[base[i]] {
                            base[i] = cur;
                            if !used[i] {
                                used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if parent[to] == NONE {
                    parent[to] = v;
                    if mate[to] == NONE {
                        end = to;
                        break 'search;
                    }
                    let next = mate[to];
                    used[next] = true;
                    queue.push_back(next);
                }
            }
        }

        let mut v = end;
        while v != NONE {
            let pv = parent[v];
            let ppv = mate[pv];
            mate[v] = pv;
            mate[pv] = v;
            v = ppv;
        }
    }
    mate
}

/// μ by exhaustive search over matchings.
pub fn mu_exhaustive(g: &Graph, budget: &Budget) -> Result<usize> {
    ensure_mask("exhaustive matching search", g.n(), budget.max_enum_n)?;
    let adj = g.masks().expect("checked size");
    fn best(adj: &[u64], free: u64) -> usize {
        let Some(v) = bits(free).next() else { return 0 };
        let rest = free & !(1 << v);
        let mut top = best(adj, rest);
        for w in bits(adj[v] & rest) {
            top = top.max(1 + best(adj, rest & !(1 << w)));
        }
        top
    }
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    Ok(best(&adj, all))
}

/// α(G) + μ(G) = n.
pub fn is_koenig_egervary(g: &Graph, budget: &Budget) -> Result<bool> {
    Ok(alpha(g, budget)? + mu(g) == g.n())
}

/// A matching inside the edges between `a` and `b` that covers every vertex of `a`.
pub fn saturating_matching(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<Option<Matching>> {
    g.owns(a)?;
    g.owns(b)?;
    if !a.is_disjoint(b) {
        return Err(Error::NotDisjoint);
    }
    let adj: Vec<Vec<usize>> = (0..g.n())
        .map(|v| {
            if a.contains(v) {
                g.neighbors(v).iter().copied().filter(|&w| b.contains(w)).collect()
            } else {
                Vec::new()
            }
        })
        .collect();
    let mut mate = vec![usize::MAX; g.n()];
    for v in a.iter() {
        let mut seen = vec![false; g.n()];
        if !augment(&adj, v, &mut mate, &mut seen, &|w| b.contains(w)) {
            return Ok(None);
        }
    }
    Ok(Some(Matching::from_mates(g, &mate)))
}

/// Whether deleting `e` lowers μ.
pub fn is_mu_critical_edge(g: &Graph, e: Edge) -> Result<bool> {
    g.check_edge(e)?;
    Ok(mu(&g.delete(&g.empty_set(), &[e])?) < mu(g))
}

/// Every maximum matching, canonical order; errors past `limit` matchings.
pub fn enumerate_maximum_matchings(g: &Graph, limit: usize, budget: &Budget) -> Result<Vec<Matching>> {
    ensure_mask("maximum matching enumeration", g.n(), budget.max_enum_n)?;
    let adj = g.masks().expect("checked size");
    let size = mu(g);
    let slack = g.n() - 2 * size;

    struct Walk<'a> {
        adj: &'a [u64],
        limit: usize,
        out: Vec<Vec<Edge>>,
        current: Vec<Edge>,
    }

    impl Walk<'_> {
        fn go(&mut self, free: u64, slack: usize) -> Result<()> {
            let Some(v) = bits(free).next() else {
                self.out.push(self.current.clone());
                if self.out.len() > self.limit {
                    return Err(Error::BudgetExceeded {
                        what: "maximum matchings",
                        size: self.out.len(),
                        limit: self.limit,
                    });
                }
                return Ok(());
            };
            let rest = free & !(1 << v);
            if slack > 0 {
                self.go(rest, slack - 1)?;
            }
            for w in bits(self.adj[v] & rest) {
                self.current.push(Edge::new(v, w));
                self.go(rest & !(1 << w), slack)?;
                self.current.pop();
            }
            Ok(())
        }
    }

    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    let mut walk = Walk {
        adj: &adj,
        limit,
        out: Vec::new(),
        current: Vec::new(),
    };
    walk.go(all, slack)?;
    let mut found: Vec<Matching> = walk
        .out
        .into_iter()
        .map(|edges| Matching::new(g, edges).expect("search only emits matchings"))
        .collect();
    found.sort_by_cached_key(|m| m.render(g).into_iter().flat_map(|(a, b)| [a, b]).collect::<Vec<_>>());
    found.dedup();
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;

    fn g(text: &str) -> Graph {
        parse_edge_list(text).unwrap()
    }

    const FIG1: &str = "a u\nu c\nc v\nv y\nu b\nv x\nx y\n";
    const FIG2: &str = "u v\nv x\nx y\ny w\nw c\na x\nx b\nd t\nt c\ny d\n";
    const FIG4G2: &str = "x p\np q\nq r\nr s\ns u\nq t\nt u\np y\n";
    const C4: &str = "a b\nb c\nc d\nd a";
    const C5: &str = "a b\nb c\nc d\nd e\ne a";

    fn pairs(v: &[(&str, &str)]) -> Vec<(String, String)> {
        v.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn mu_values() {
        let b = Budget::default();
        let fig1 = g(FIG1);
        assert_eq!(mu(&fig1), 3);
        assert_eq!(mu(&g(C5)), 2);
        let f4 = g(FIG4G2);
        assert_eq!(mu_exhaustive(&f4, &b).unwrap(), 3);
        assert_eq!(mu(&f4), 3);
        assert_eq!(mu(&g("node a")), 0);
        let fig2 = g(FIG2);
        assert_eq!(mu_exhaustive(&fig2, &b).unwrap(), 4);
        assert_eq!(mu(&fig2), 4);
    }

    #[test]
    fn matchings_are_valid() {
        let fig1 = g(FIG1);
        let m = maximum_matching(&fig1);
        assert!(Matching::new(&fig1, m.edges().to_vec()).is_ok());
        let claimed = Matching::new(
            &fig1,
            vec![
                fig1.edge("a", "u").unwrap(),
                fig1.edge("c", "v").unwrap(),
                fig1.edge("x", "y").unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(claimed.len(), 3);
        let bad = Matching::new(&fig1, vec![fig1.edge("a", "u").unwrap(), fig1.edge("u", "c").unwrap()]);
        assert!(bad.is_err());
    }

    #[test]
    fn koenig_egervary() {
        let b = Budget::default();
        assert!(is_koenig_egervary(&g(FIG1), &b).unwrap());
        assert!(!is_koenig_egervary(&g(C5), &b).unwrap());
        assert!(!is_koenig_egervary(&g(FIG2), &b).unwrap());
    }

    #[test]
    fn saturating() {
        let p3 = g("a b\nb c");
        let m = saturating_matching(&p3, &p3.set(["b"]).unwrap(), &p3.set(["a", "c"]).unwrap()).unwrap();
        let m = m.expect("b can be matched");
        assert_eq!(m.len(), 1);
        assert!(m.saturates(&p3.set(["b"]).unwrap()));
        let none = saturating_matching(&p3, &p3.set(["a", "c"]).unwrap(), &p3.set(["b"]).unwrap()).unwrap();
        assert!(none.is_none());
        assert_eq!(
            saturating_matching(&p3, &p3.set(["a"]).unwrap(), &p3.set(["a", "b"]).unwrap()).unwrap_err(),
            Error::NotDisjoint
        );

        let g2 = g("x p\np y\ny q\nq z\np r\nr s\ns q\n");
        let a = g2.set(["p", "q"]).unwrap();
        let m = saturating_matching(&g2, &a, &g2.set(["x", "y", "z"]).unwrap())
            .unwrap()
            .unwrap();
        assert!(m.saturates(&a));
        for e in m.edges() {
            assert!(a.contains(e.u) != a.contains(e.v));
        }
    }

    #[test]
    fn mu_critical() {
        let p2 = g("a b");
        assert!(is_mu_critical_edge(&p2, p2.edge("a", "b").unwrap()).unwrap());
        for text in [C4, C5] {
            let c = g(text);
            for e in c.edges() {
                assert!(!is_mu_critical_edge(&c, e).unwrap());
            }
        }
    }

    #[test]
    fn enumeration() {
        let b = Budget::default();
        let p3 = g("a b\nb c");
        let all = enumerate_maximum_matchings(&p3, 10, &b).unwrap();
        let r: Vec<_> = all.iter().map(|m| m.render(&p3)).collect();
        assert_eq!(r, vec![pairs(&[("a", "b")]), pairs(&[("b", "c")])]);

        let c4 = g(C4);
        assert_eq!(enumerate_maximum_matchings(&c4, 10, &b).unwrap().len(), 2);

        let fig1 = g(FIG1);
        let all = enumerate_maximum_matchings(&fig1, 1000, &b).unwrap();
        let want = pairs(&[("a", "u"), ("c", "v"), ("x", "y")]);
        assert!(all.iter().any(|m| m.render(&fig1) == want));
        assert!(enumerate_maximum_matchings(&c4, 1, &b).unwrap_err().is_budget());
    }

    #[test]
    fn dispatch_paths_agree_with_blossom() {
        for text in [FIG1, FIG2, FIG4G2, C4, C5, "a b\nb c\nc a\nc d\nd e\ne c"] {
            let x = g(text);
            assert_eq!(mu(&x), blossom_matching(&x).len(), "{text}");
        }
    }
}
