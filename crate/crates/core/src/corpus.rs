//! Named fixtures, the G_{2k+1} family, and deterministic generators for
//! trees, unicyclic graphs and small graphs in general.
//!
//! Deduplicated enumerations keep one canonically relabeled representative per
//! isomorphism class (labels `1..=n`), sorted by canonical form.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::{ensure, Budget};
use crate::canon::{canonical_form, canonical_graph, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{parse_edge_list, Graph};

macro_rules! fixtures {
    ($($variant:ident => $name:literal),* $(,)?) => {
        /// Named reference graphs, plus a few small classics.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum FixtureName {
            $($variant),*
        }

        impl FixtureName {
            pub const ALL: &'static [FixtureName] = &[$(FixtureName::$variant),*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(FixtureName::$variant => $name),*
                }
            }

            /// Edge-list text as shipped under `fixtures/`.
            pub fn text(self) -> &'static str {
                match self {
                    $(FixtureName::$variant => include_str!(concat!("../../../fixtures/", $name))),*
                }
            }
        }

        impl FromStr for FixtureName {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok(FixtureName::$variant),)*
                    _ => Err(Error::UnknownFixture(s.to_string())),
                }
            }
        }
    };
}

fixtures! {
    Fig1 => "fig1",
    Fig2G => "fig2G",
    Fig2Tx => "fig2Tx",
    Fig3G1 => "fig3G1",
    Fig3G2 => "fig3G2",
    Fig4G1 => "fig4G1",
    Fig4G2 => "fig4G2",
    Fig6G1 => "fig6G1",
    Fig6G2 => "fig6G2",
    P2 => "P2",
    P3 => "P3",
    C4 => "C4",
    C5 => "C5",
    K1 => "K1",
    K3 => "K3",
}

impl fmt::Display for FixtureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn fixture(name: FixtureName) -> Graph {
    parse_edge_list(name.text()).expect("shipped fixtures parse")
}

pub fn fixture_by_name(name: &str) -> Result<Graph> {
    Ok(fixture(name.parse()?))
}

/// G_{2k+1}: path x–y–v1–…–v_{2k+1}, a pendant z on y, and w closing a
/// triangle with v_{2k} and v_{2k+1}.
pub fn family_g2k1(k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::InvalidArgument("G_{2k+1} needs k ≥ 1".into()));
    }
    let v = |i: usize| format!("v{i}");
    let mut text = String::from("x y\ny z\ny v1\n");
    for i in 1..=2 * k {
        text.push_str(&format!("{} {}\n", v(i), v(i + 1)));
    }
    text.push_str(&format!("{} w\n{} w\n", v(2 * k), v(2 * k + 1)));
    parse_edge_list(&text)
}

/// Type of an owned, deterministic graph stream.
pub type GraphStream = Box<dyn Iterator<Item = Graph> + Send>;

fn numbered(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// Decodes a Prüfer sequence over `0..n` (length n − 2) into tree edges.
pub fn prufer_edges(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    match n {
        0 | 1 => return Vec::new(),
        2 => return vec![(0, 1)],
        _ => {}
    }
    debug_assert_eq!(seq.len(), n - 2);
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf always exists");
        edges.push((leaf.min(s), leaf.max(s)));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

fn tree_from_prufer(n: usize, seq: &[usize]) -> Graph {
    Graph::from_index_edges(&numbered(n), &prufer_edges(n, seq)).expect("Prüfer decoding yields a tree")
}

/// Every labeled tree on `1..=n`, in Prüfer-sequence order.
pub fn labeled_trees(n: usize) -> GraphStream {
    if n <= 2 {
        return Box::new((n > 0).then(|| tree_from_prufer(n, &[])).into_iter());
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    Box::new((0..total).map(move |mut code| {
        let mut seq = vec![0; len];
        for slot in seq.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        tree_from_prufer(n, &seq)
    }))
}

/// Trees on `n` vertices: one per isomorphism class when `dedupe`, else every labeled tree.
pub fn enumerate_trees(n: usize, dedupe: bool, budget: &Budget) -> Result<GraphStream> {
    if n == 0 {
        return Err(Error::InvalidArgument("trees need n ≥ 1".into()));
    }
    if !dedupe {
        ensure("labeled tree enumeration", n, budget.max_labeled_n)?;
        return Ok(labeled_trees(n));
    }
    ensure("deduplicated tree enumeration", n, budget.max_dedupe_n)?;
    Ok(Box::new(unlabeled_trees(n)?.into_iter()))
}

/// Grows trees one leaf at a time from the classes on n − 1 vertices.
fn unlabeled_trees(n: usize) -> Result<Vec<Graph>> {
    let mut level = vec![tree_from_prufer(1, &[])];
    for size in 2..=n {
        let mut next = BTreeMap::new();
        for t in &level {
            let mut edges: Vec<(usize, usize)> = t.edges().map(|e| (e.u, e.v)).collect();
            for v in 0..t.n() {
                edges.push((v, size - 1));
                let grown = Graph::from_index_edges(&numbered(size), &edges)?;
                insert_class(&mut next, &grown)?;
                edges.pop();
            }
        }
        level = next.into_values().collect();
    }
    Ok(level)
}

fn insert_class(classes: &mut BTreeMap<CanonicalForm, Graph>, g: &Graph) -> Result<()> {
    let form = canonical_form(g)?.form;
    if let std::collections::btree_map::Entry::Vacant(e) = classes.entry(form) {
        e.insert(canonical_graph(g)?);
    }
    Ok(())
}

fn non_edges(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect()
}

fn with_extra_edge(g: &Graph, extra: (usize, usize)) -> Graph {
    let mut edges: Vec<(usize, usize)> = g.edges().map(|e| (e.u, e.v)).collect();
    edges.push(extra);
    Graph::from_index_edges(g.labels(), &edges).expect("extra edge is a non-edge")
}

/// Whether `extra` is smaller than every edge of the tree path it closes into
/// a cycle. Each labeled unicyclic graph has exactly one such (tree, edge) split.
fn closes_at_smallest_edge(t: &Graph, extra: (usize, usize)) -> bool {
    let (from, to) = extra;
    let mut parent = vec![usize::MAX; t.n()];
    parent[from] = from;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for &w in t.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    let mut v = to;
    while v != from {
        let p = parent[v];
        if (p.min(v), p.max(v)) < extra {
            return false;
        }
        v = p;
    }
    true
}

/// Connected unicyclic graphs on `n` vertices, built as tree + one non-edge.
/// Labeled mode lists every labeled graph once.
pub fn enumerate_unicyclic(n: usize, dedupe: bool, budget: &Budget) -> Result<GraphStream> {
    if n < 3 {
        return Err(Error::InvalidArgument("unicyclic graphs need n ≥ 3".into()));
    }
    if !dedupe {
        ensure("labeled unicyclic enumeration", n, budget.max_labeled_n)?;
        return Ok(Box::new(labeled_trees(n).flat_map(|t| {
            non_edges(&t)
                .into_iter()
                .filter(|&e| closes_at_smallest_edge(&t, e))
                .map(|e| with_extra_edge(&t, e))
                .collect::<Vec<_>>()
        })));
    }
    ensure("deduplicated unicyclic enumeration", n, budget.max_dedupe_n)?;
    let mut classes = BTreeMap::new();
    for t in unlabeled_trees(n)? {
        for e in non_edges(&t) {
            insert_class(&mut classes, &with_extra_edge(&t, e))?;
        }
    }
    Ok(Box::new(classes.into_values()))
}

/// Graphs on `n` vertices up to isomorphism, by vertex addition; with
/// `connected` the new vertex always gets at least one neighbor, which
/// reaches every connected graph (delete a non-cut vertex to go back).
pub fn enumerate_graphs(n: usize, connected: bool, budget: &Budget) -> Result<Vec<Graph>> {
    if n == 0 {
        return Err(Error::InvalidArgument("graphs need n ≥ 1".into()));
    }
    ensure("deduplicated graph enumeration", n, budget.max_dedupe_n)?;
    let mut level = vec![tree_from_prufer(1, &[])];
    for size in 2..=n {
        let mut next = BTreeMap::new();
        let first = u64::from(connected);
        for g in &level {
            let base: Vec<(usize, usize)> = g.edges().map(|e| (e.u, e.v)).collect();
            for nbrs in first..(1u64 << (size - 1)) {
                let mut edges = base.clone();
                edges.extend((0..size - 1).filter(|&v| nbrs >> v & 1 == 1).map(|v| (v, size - 1)));
                insert_class(&mut next, &Graph::from_index_edges(&numbered(size), &edges)?)?;
            }
        }
        level = next.into_values().collect();
    }
    Ok(level)
}

fn random_tree(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let seq: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(0..n)).collect();
    tree_from_prufer(n, &seq)
}

/// Uniform labeled tree plus one uniformly chosen non-edge; deterministic in `(n, seed)`.
pub fn random_unicyclic(n: usize, seed: u64) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument("unicyclic graphs need n ≥ 3".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tree = random_tree(n, &mut rng);
    let candidates = non_edges(&tree);
    let pick = candidates[rng.gen_range(0..candidates.len())];
    Ok(with_extra_edge(&tree, pick))
}

/// `count` random connected graphs with 1 ≤ n ≤ `max_n`: a uniform labeled
/// tree, then every other pair joined with a per-graph density in [0, 0.5).
pub fn random_connected(count: usize, max_n: usize, seed: u64) -> Result<Vec<Graph>> {
    if max_n == 0 {
        return Err(Error::InvalidArgument("max_n must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let n = rng.gen_range(1..=max_n);
        let p: f64 = rng.gen_range(0.0..0.5);
        let tree = random_tree(n, &mut rng);
        let mut edges: Vec<(usize, usize)> = tree.edges().map(|e| (e.u, e.v)).collect();
        for (u, v) in non_edges(&tree) {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
        edges.sort_unstable();
        out.push(Graph::from_index_edges(&numbered(n), &edges)?);
    }
    Ok(out)
}
