//! Independence number, maximum independent sets, core and corona.
//!
//! `alpha` works component by component: trees use a rooted dynamic program,
//! unicyclic components branch on one cycle vertex (both branches are forests),
//! and anything else goes to a bitmask branch-and-bound under the budget.

use std::cmp::Ordering;

use crate::budget::{ensure_mask, Budget};
use crate::error::Result;
use crate::graph::{components_within, label_cmp, Edge, Graph, GraphId, VertexSet};

/// Ω(G): every maximum independent set, in canonical order.
#[derive(Debug, Clone)]
pub struct MisFamily {
    pub owner: GraphId,
    pub alpha: usize,
    pub sets: Vec<VertexSet>,
}

impl MisFamily {
    /// Intersection of all members (∅ family gives the empty set).
    pub fn intersection(&self, g: &Graph) -> VertexSet {
        let mut it = self.sets.iter();
        match it.next() {
            None => g.empty_set(),
            Some(first) => it.fold(first.clone(), |acc, s| acc.intersection(s)),
        }
    }

    pub fn union(&self, g: &Graph) -> VertexSet {
        self.sets.iter().fold(g.empty_set(), |acc, s| acc.union(s))
    }
}

pub fn is_independent(g: &Graph, s: &VertexSet) -> Result<bool> {
    g.owns(s)?;
    Ok(s.iter().all(|v| g.neighbors(v).iter().all(|&w| !s.contains(w))))
}

/// Exact α(G).
pub fn alpha(g: &Graph, budget: &Budget) -> Result<usize> {
    alpha_within(g, &vec![true; g.n()], budget)
}

/// α of the subgraph induced by the `alive` vertices.
pub(crate) fn alpha_within(g: &Graph, alive: &[bool], budget: &Budget) -> Result<usize> {
    let mut total = 0;
    for comp in components_within(g, alive) {
        let edges: usize = comp
            .iter()
            .map(|&v| g.neighbors(v).iter().filter(|&&w| alive[w]).count())
            .sum::<usize>()
            / 2;
        total += if edges + 1 == comp.len() {
            tree_alpha(g, alive, comp[0])
        } else if edges == comp.len() {
            unicyclic_alpha(g, alive, &comp)
        } else {
            ensure_mask("branch-and-bound component", comp.len(), budget.max_bnb_n)?;
            let (masks, _) = local_masks(g, alive, &comp);
            bnb_alpha(&masks)
        };
    }
    Ok(total)
}

/// Rooted DP: best with the vertex taken / left out, summed bottom-up.
fn tree_alpha(g: &Graph, alive: &[bool], root: usize) -> usize {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![root];
    parent[root] = root;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for &w in g.neighbors(v) {
            if alive[w] && parent[w] == usize::MAX {
                parent[w] = v;
                order.push(w);
            }
        }
    }
    let mut take = vec![1usize; n];
    let mut skip = vec![0usize; n];
    for &v in order.iter().rev() {
        if v != root {
            let p = parent[v];
            take[p] += skip[v];
            skip[p] += take[v].max(skip[v]);
        }
    }
    take[root].max(skip[root])
}

fn unicyclic_alpha(g: &Graph, alive: &[bool], comp: &[usize]) -> usize {
    let u = cycle_vertex(g, alive, comp);
    let mut without = vec![false; g.n()];
    for &v in comp {
        without[v] = true;
    }
    without[u] = false;
    let mut closed = without.clone();
    for &w in g.neighbors(u) {
        closed[w] = false;
    }
    // both branches are forests, so the dispatch never reaches the budgeted path
    let budget = Budget::default();
    let a = alpha_within(g, &without, &budget).expect("forest");
    let b = 1 + alpha_within(g, &closed, &budget).expect("forest");
    a.max(b)
}

/// Any vertex on the unique cycle of a unicyclic component, by leaf stripping.
fn cycle_vertex(g: &Graph, alive: &[bool], comp: &[usize]) -> usize {
    let mut deg = vec![0usize; g.n()];
    let mut gone = vec![true; g.n()];
    for &v in comp {
        gone[v] = false;
        deg[v] = g.neighbors(v).iter().filter(|&&w| alive[w]).count();
    }
    let mut stack: Vec<usize> = comp.iter().copied().filter(|&v| deg[v] <= 1).collect();
    while let Some(v) = stack.pop() {
        if gone[v] {
            continue;
        }
        gone[v] = true;
        for &w in g.neighbors(v) {
            if alive[w] && !gone[w] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    stack.push(w);
                }
            }
        }
    }
    *comp
        .iter()
        .find(|&&v| !gone[v])
        .expect("unicyclic component has a cycle")
}

/// Adjacency masks of a vertex list, plus the list itself as the local→global map.
pub(crate) fn local_masks(g: &Graph, alive: &[bool], verts: &[usize]) -> (Vec<u64>, Vec<usize>) {
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in verts.iter().enumerate() {
        local[v] = i;
    }
    let masks = verts
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .filter(|&&w| alive[w] && local[w] != usize::MAX)
                .fold(0u64, |acc, &w| acc | 1 << local[w])
        })
        .collect();
    (masks, verts.to_vec())
}

/// α by branch and bound over the whole graph, no structural shortcuts.
pub fn alpha_branch_and_bound(g: &Graph, budget: &Budget) -> Result<usize> {
    ensure_mask("branch-and-bound", g.n(), budget.max_bnb_n)?;
    Ok(bnb_alpha(&g.masks().expect("checked size")))
}

fn bnb_alpha(adj: &[u64]) -> usize {
    let n = adj.len();
    if n == 0 {
        return 0;
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = greedy_independent(adj, all);
    branch(adj, all, 0, &mut best);
    best
}

/// Repeatedly takes a minimum-degree vertex; a lower bound for pruning.
fn greedy_independent(adj: &[u64], mut cand: u64) -> usize {
    let mut size = 0;
    while cand != 0 {
        let v = bits(cand).min_by_key(|&v| (adj[v] & cand).count_ones()).unwrap();
        cand &= !(adj[v] | 1 << v);
        size += 1;
    }
    size
}

fn branch(adj: &[u64], mut cand: u64, mut size: usize, best: &mut usize) {
    loop {
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        if cand == 0 {
            *best = size;
            return;
        }
        // a vertex of degree ≤ 1 belongs to some maximum independent set
        match bits(cand).find(|&v| (adj[v] & cand).count_ones() <= 1) {
            Some(v) => {
                cand &= !(adj[v] | 1 << v);
                size += 1;
            }
            None => break,
        }
    }
    let v = bits(cand).max_by_key(|&v| (adj[v] & cand).count_ones()).unwrap();
    branch(adj, cand & !(adj[v] | 1 << v), size + 1, best);
    branch(adj, cand & !(1 << v), size, best);
}

pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// All maximum independent sets.
pub fn enumerate_mis(g: &Graph, budget: &Budget) -> Result<MisFamily> {
    ensure_mask("maximum independent set enumeration", g.n(), budget.max_enum_n)?;
    let adj = g.masks().expect("checked size");
    let alpha = alpha(g, budget)?;
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    let mut found = Vec::new();
    collect_mis(&adj, all, 0, alpha, &mut found);
    let mut sets: Vec<VertexSet> = found.into_iter().map(|m| g.set_from_mask(m)).collect();
    sort_sets(g, &mut sets);
    Ok(MisFamily {
        owner: g.id(),
        alpha,
        sets,
    })
}

fn collect_mis(adj: &[u64], cand: u64, chosen: u64, alpha: usize, out: &mut Vec<u64>) {
    if (chosen.count_ones() + cand.count_ones()) < alpha as u32 {
        return;
    }
    if cand == 0 {
        out.push(chosen);
        return;
    }
    let v = cand.trailing_zeros() as usize;
    collect_mis(adj, cand & !(adj[v] | 1 << v), chosen | 1 << v, alpha, out);
    collect_mis(adj, cand & !(1 << v), chosen, alpha, out);
}

/// Orders sets by their rendered label lists.
pub(crate) fn sort_sets(g: &Graph, sets: &mut [VertexSet]) {
    sets.sort_by_cached_key(|s| SortKey(g.render(s)));
}

#[derive(PartialEq, Eq)]
pub(crate) struct SortKey(pub Vec<String>);

impl PartialOrd for SortKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SortKey {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            let o = label_cmp(a, b);
            if o != Ordering::Equal {
                return o;
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

/// core(G): v is in every maximum independent set iff α(G−v) = α(G)−1.
pub fn core(g: &Graph, budget: &Budget) -> Result<VertexSet> {
    let a = alpha(g, budget)?;
    let mut out = g.empty_set();
    let mut alive = vec![true; g.n()];
    for v in 0..g.n() {
        alive[v] = false;
        if alpha_within(g, &alive, budget)? + 1 == a {
            out.insert(v);
        }
        alive[v] = true;
    }
    Ok(out)
}

/// corona(G): v lies in some maximum independent set iff α(G−N[v]) = α(G)−1.
pub fn corona(g: &Graph, budget: &Budget) -> Result<VertexSet> {
    let a = alpha(g, budget)?;
    let mut out = g.empty_set();
    for v in 0..g.n() {
        let mut alive = vec![true; g.n()];
        alive[v] = false;
        for &w in g.neighbors(v) {
            alive[w] = false;
        }
        if alpha_within(g, &alive, budget)? + 1 == a {
            out.insert(v);
        }
    }
    Ok(out)
}

/// One maximum independent set, built greedily in label order: a vertex is
/// kept when α of what remains after removing its closed neighborhood drops
/// by exactly one.
pub fn maximum_independent_set(g: &Graph, budget: &Budget) -> Result<VertexSet> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by(|&a, &b| label_cmp(g.label(a), g.label(b)));
    let mut alive = vec![true; g.n()];
    let mut remaining = alpha(g, budget)?;
    let mut out = g.empty_set();
    for v in order {
        if !alive[v] {
            continue;
        }
        let mut without = alive.clone();
        without[v] = false;
        for &w in g.neighbors(v) {
            without[w] = false;
        }
        if alpha_within(g, &without, budget)? + 1 == remaining {
            out.insert(v);
            alive = without;
            remaining -= 1;
        } else {
            alive[v] = false;
        }
    }
    Ok(out)
}

/// Whether deleting `e` raises α (by exactly one, the only possible increase).
pub fn is_alpha_critical_edge(g: &Graph, e: Edge, budget: &Budget) -> Result<bool> {
    g.check_edge(e)?;
    let before = alpha(g, budget)?;
    let after = alpha(&g.delete(&g.empty_set(), &[e])?, budget)?;
    Ok(after > before)
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
    const C5: &str = "a b\nb c\nc d\nd e\ne a";
    const G3: &str = "x y\ny z\ny v1\nv1 v2\nv2 v3\nv2 w\nv3 w\n";

    /// Subset sweep: the largest independent subsets.
    fn brute_mis(g: &Graph) -> Vec<u64> {
        let adj = g.masks().unwrap();
        let indep = |m: u64| bits(m).all(|v| adj[v] & m == 0);
        let all: Vec<u64> = (0..1u64 << g.n()).filter(|&m| indep(m)).collect();
        let best = all.iter().map(|m| m.count_ones()).max().unwrap();
        all.into_iter().filter(|m| m.count_ones() == best).collect()
    }

    #[test]
    fn independence_predicate() {
        let p3 = g("a b\nb c");
        assert!(is_independent(&p3, &p3.set(["a", "c"]).unwrap()).unwrap());
        assert!(!is_independent(&p3, &p3.set(["a", "b"]).unwrap()).unwrap());
        let f = g(FIG1);
        assert!(is_independent(&f, &f.set(["a", "b", "c", "x"]).unwrap()).unwrap());
    }

    #[test]
    fn alpha_values() {
        let b = Budget::default();
        assert_eq!(alpha(&g(FIG1), &b).unwrap(), 4);
        assert_eq!(alpha(&g(C5), &b).unwrap(), 2);
        let fig2 = g(FIG2);
        let oracle = brute_mis(&fig2)[0].count_ones() as usize;
        assert_eq!(oracle, 5);
        assert_eq!(alpha(&fig2, &b).unwrap(), 5);
    }

    #[test]
    fn greedy_mis_is_a_maximum_independent_set() {
        let b = Budget::default();
        for text in [FIG1, FIG2, C5, G3, "a b\nb c\nc a\nc d\nd e\ne f\nf d"] {
            let x = g(text);
            let s = maximum_independent_set(&x, &b).unwrap();
            assert!(brute_mis(&x).contains(&s.mask().unwrap()), "{text}");
        }
        let f = g(FIG1);
        assert_eq!(
            f.render(&maximum_independent_set(&f, &b).unwrap()),
            ["a", "b", "c", "x"]
        );
    }

    #[test]
    fn empty_graph_alpha() {
        let k1 = g("node a");
        let empty = k1.delete(&k1.full_set(), &[]).unwrap();
        assert_eq!(alpha(&empty, &Budget::default()).unwrap(), 0);
        let fam = enumerate_mis(&empty, &Budget::default()).unwrap();
        assert_eq!(fam.sets.len(), 1);
        assert!(fam.sets[0].is_empty());
    }

    #[test]
    fn mis_families() {
        let b = Budget::default();
        let p2 = g("a b");
        let fam = enumerate_mis(&p2, &b).unwrap();
        let r: Vec<_> = fam.sets.iter().map(|s| p2.render(s)).collect();
        assert_eq!(r, vec![vec!["a"], vec!["b"]]);

        let p3 = g("a b\nb c");
        let fam = enumerate_mis(&p3, &b).unwrap();
        assert_eq!(fam.sets.len(), 1);
        assert_eq!(p3.render(&fam.sets[0]), ["a", "c"]);

        let g3 = g(G3);
        let oracle = brute_mis(&g3);
        assert_eq!(oracle.len(), 2);
        let fam = enumerate_mis(&g3, &b).unwrap();
        let r: Vec<_> = fam.sets.iter().map(|s| g3.render(s)).collect();
        assert_eq!(r, vec![vec!["v1", "v3", "x", "z"], vec!["v1", "w", "x", "z"]]);
    }

    #[test]
    fn core_and_corona() {
        let b = Budget::default();
        let c5 = g(C5);
        assert!(core(&c5, &b).unwrap().is_empty());
        assert_eq!(corona(&c5, &b).unwrap().len(), 5);

        let p2 = g("a b");
        assert_eq!(p2.render(&corona(&p2, &b).unwrap()), ["a", "b"]);

        let g3 = g(G3);
        assert_eq!(g3.render(&corona(&g3, &b).unwrap()), ["v1", "v3", "w", "x", "z"]);
        assert_eq!(g3.render(&core(&g3, &b).unwrap()), ["v1", "x", "z"]);
    }

    #[test]
    fn alpha_critical_edges() {
        let b = Budget::default();
        let c5 = g(C5);
        for e in c5.edges() {
            assert!(is_alpha_critical_edge(&c5, e, &b).unwrap());
        }
        let p3 = g("a b\nb c");
        assert!(!is_alpha_critical_edge(&p3, p3.edge("a", "b").unwrap(), &b).unwrap());
        let fig2 = g(FIG2);
        assert!(is_alpha_critical_edge(&fig2, fig2.edge("y", "d").unwrap(), &b).unwrap());
        assert!(is_alpha_critical_edge(&p3, Edge::new(0, 2), &b).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let k = Budget {
            max_bnb_n: 3,
            max_enum_n: 2,
            ..Budget::default()
        };
        let k4 = g("a b\na c\na d\nb c\nb d\nc d");
        assert!(alpha(&k4, &k).unwrap_err().is_budget());
        assert!(enumerate_mis(&k4, &k).unwrap_err().is_budget());
        // trees ignore the cap
        let path = g("a b\nb c\nc d\nd e");
        assert_eq!(alpha(&path, &k).unwrap(), 3);
    }
}
