//! Simple undirected graphs with stable labels, vertex sets, and the
//! edge-list text format.
//!
//! Vertices carry arbitrary whitespace-free labels. Dense indices `0..n` are
//! assigned in order of first appearance, so every derived output is a
//! deterministic function of the input text.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use serde::Serialize;

use crate::error::{Error, GraphErrorKind, Result};

static NEXT_GRAPH_ID: AtomicU64 = AtomicU64::new(1);

/// Identity of one constructed graph. Clones share it; derived graphs get a fresh one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphId(u64);

impl GraphId {
    fn fresh() -> Self {
        GraphId(NEXT_GRAPH_ID.fetch_add(1, AtomicOrdering::Relaxed))
    }
}

/// Keyword that declares an isolated vertex in the edge-list format.
pub const NODE_KEYWORD: &str = "node";

/// Total order on labels: digit runs compare numerically, everything else by character.
///
/// `v2 < v10`, and ties between e.g. `v01` and `v1` fall back to plain string order.
pub fn label_cmp(a: &str, b: &str) -> Ordering {
    let (ab, bb) = (a.as_bytes(), b.as_bytes());
    let (mut i, mut j) = (0, 0);
    while i < ab.len() && j < bb.len() {
        if ab[i].is_ascii_digit() && bb[j].is_ascii_digit() {
            let si = i;
            while i < ab.len() && ab[i].is_ascii_digit() {
                i += 1;
            }
            let sj = j;
            while j < bb.len() && bb[j].is_ascii_digit() {
                j += 1;
            }
            let x = trim_zeros(&ab[si..i]);
            let y = trim_zeros(&bb[sj..j]);
            let ord = x.len().cmp(&y.len()).then_with(|| x.cmp(y));
            if ord != Ordering::Equal {
                return ord;
            }
        } else {
            let ca = a[i..].chars().next().unwrap();
            let cb = b[j..].chars().next().unwrap();
            if ca != cb {
                return ca.cmp(&cb);
            }
            i += ca.len_utf8();
            j += cb.len_utf8();
        }
    }
    (ab.len() - i).cmp(&(bb.len() - j)).then_with(|| a.cmp(b))
}

fn trim_zeros(digits: &[u8]) -> &[u8] {
    let k = digits.iter().take_while(|&&d| d == b'0').count();
    &digits[k..]
}

/// An undirected edge stored as a normalized index pair (`u < v`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn touches(&self, w: usize) -> bool {
        self.u == w || self.v == w
    }

    pub fn other(&self, w: usize) -> usize {
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }
}

/// Immutable simple undirected graph.
#[derive(Clone)]
pub struct Graph {
    id: GraphId,
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.m)
            .field("edges", &self.to_edge_list())
            .finish()
    }
}

/// Incremental construction; rejects loops and repeated edges.
#[derive(Default)]
pub(crate) struct GraphBuilder {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl GraphBuilder {
    pub(crate) fn vertex(&mut self, label: &str) -> Result<usize, GraphErrorKind> {
        if let Some(&i) = self.index.get(label) {
            return Ok(i);
        }
        if label.is_empty() || label == NODE_KEYWORD || label.contains(char::is_whitespace) || label.contains('#') {
            return Err(GraphErrorKind::Malformed(format!("invalid vertex label `{label}`")));
        }
        let i = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), i);
        self.adj.push(Vec::new());
        Ok(i)
    }

    pub(crate) fn edge(&mut self, a: &str, b: &str) -> Result<(), GraphErrorKind> {
        if a == b {
            return Err(GraphErrorKind::SelfLoop(a.to_string()));
        }
        let u = self.vertex(a)?;
        let v = self.vertex(b)?;
        self.edge_indices(u, v)
    }

    pub(crate) fn edge_indices(&mut self, u: usize, v: usize) -> Result<(), GraphErrorKind> {
        if u == v {
            return Err(GraphErrorKind::SelfLoop(self.labels[u].clone()));
        }
        if self.adj[u].contains(&v) {
            return Err(GraphErrorKind::DuplicateEdge(
                self.labels[u].clone(),
                self.labels[v].clone(),
            ));
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.m += 1;
        Ok(())
    }

    pub(crate) fn finish(mut self) -> Graph {
        for list in &mut self.adj {
            list.sort_unstable();
        }
        Graph {
            id: GraphId::fresh(),
            labels: self.labels,
            index: self.index,
            adj: self.adj,
            m: self.m,
        }
    }
}

impl Graph {
    /// Builds a graph from declared vertices followed by edges.
    pub fn from_edges<'a>(
        vertices: impl IntoIterator<Item = &'a str>,
        edges: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Graph> {
        let mut b = GraphBuilder::default();
        for v in vertices {
            b.vertex(v).map_err(Error::InvalidGraph)?;
        }
        for (u, v) in edges {
            b.edge(u, v).map_err(Error::InvalidGraph)?;
        }
        Ok(b.finish())
    }

    /// Graph on labels `names` with edges given as index pairs into `names`.
    pub fn from_index_edges<S: AsRef<str>>(names: &[S], edges: &[(usize, usize)]) -> Result<Graph> {
        let mut b = GraphBuilder::default();
        for name in names {
            b.vertex(name.as_ref()).map_err(Error::InvalidGraph)?;
        }
        for &(u, v) in edges {
            if u >= names.len() || v >= names.len() {
                return Err(Error::InvalidArgument(format!("edge ({u},{v}) out of range")));
            }
            b.edge_indices(u, v).map_err(Error::InvalidGraph)?;
        }
        Ok(b.finish())
    }

    pub fn id(&self) -> GraphId {
        self.id
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges, ordered by index pair.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| Edge { u, v }))
    }

    /// Looks up the edge between two labels.
    pub fn edge(&self, a: &str, b: &str) -> Result<Edge> {
        let (u, v) = (self.vertex(a)?, self.vertex(b)?);
        if self.has_edge(u, v) {
            Ok(Edge::new(u, v))
        } else {
            Err(Error::MissingEdge(a.to_string(), b.to_string()))
        }
    }

    pub(crate) fn check_edge(&self, e: Edge) -> Result<()> {
        if e.v < self.n() && self.has_edge(e.u, e.v) {
            Ok(())
        } else {
            let name = |i: usize| self.labels.get(i).cloned().unwrap_or_else(|| format!("#{i}"));
            Err(Error::MissingEdge(name(e.u), name(e.v)))
        }
    }

    /// Labels of an edge, smaller label first.
    pub fn edge_labels(&self, e: Edge) -> (String, String) {
        let (a, b) = (self.label(e.u), self.label(e.v));
        if label_cmp(a, b) == Ordering::Greater {
            (b.to_string(), a.to_string())
        } else {
            (a.to_string(), b.to_string())
        }
    }

    /// Adjacency as bitmasks, when the graph fits in 64 vertices.
    pub fn masks(&self) -> Option<Vec<u64>> {
        if self.n() > 64 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|list| list.iter().fold(0u64, |acc, &v| acc | (1 << v)))
                .collect(),
        )
    }

    // ---- vertex sets -------------------------------------------------------

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::empty(self.id, self.n())
    }

    pub fn full_set(&self) -> VertexSet {
        self.set_from_indices(0..self.n())
    }

    pub fn set_from_indices(&self, members: impl IntoIterator<Item = usize>) -> VertexSet {
        let mut s = self.empty_set();
        for v in members {
            assert!(v < self.n(), "vertex index {v} out of range");
            s.insert(v);
        }
        s
    }

    pub fn set_from_mask(&self, mask: u64) -> VertexSet {
        self.set_from_indices((0..self.n().min(64)).filter(|&v| mask >> v & 1 == 1))
    }

    /// Vertex set from labels; unknown labels are an error.
    pub fn set<'a>(&self, labels: impl IntoIterator<Item = &'a str>) -> Result<VertexSet> {
        let mut s = self.empty_set();
        for l in labels {
            s.insert(self.vertex(l)?);
        }
        Ok(s)
    }

    pub fn owns(&self, s: &VertexSet) -> Result<()> {
        if s.owner == self.id && s.n == self.n() {
            Ok(())
        } else {
            Err(Error::ForeignSet)
        }
    }

    /// Canonical rendering: member labels in [`label_cmp`] order.
    ///
    /// Panics if `s` belongs to another graph.
    pub fn render(&self, s: &VertexSet) -> Vec<String> {
        assert!(self.owns(s).is_ok(), "rendering a vertex set of another graph");
        let mut out: Vec<String> = s.iter().map(|v| self.labels[v].clone()).collect();
        out.sort_by(|a, b| label_cmp(a, b));
        out
    }

    /// Maps a set of `sub` (a graph sharing labels with `self`) onto `self`.
    pub fn lift(&self, sub: &Graph, s: &VertexSet) -> Result<VertexSet> {
        sub.owns(s)?;
        let mut out = self.empty_set();
        for v in s.iter() {
            out.insert(self.vertex(sub.label(v))?);
        }
        Ok(out)
    }

    /// Maps a set of `self` onto `sub`, keeping only labels present there.
    pub fn restrict(&self, sub: &Graph, s: &VertexSet) -> Result<VertexSet> {
        self.owns(s)?;
        Ok(sub.set_from_indices(s.iter().filter_map(|v| sub.index_of(self.label(v)))))
    }

    // ---- neighborhoods and subgraphs ---------------------------------------

    /// N(A), or N[A] = A ∪ N(A) when `closed`.
    pub fn neighborhood(&self, a: &VertexSet, closed: bool) -> Result<VertexSet> {
        self.owns(a)?;
        let mut out = if closed { a.clone() } else { self.empty_set() };
        for v in a.iter() {
            for &w in &self.adj[v] {
                out.insert(w);
            }
        }
        Ok(out)
    }

    /// G[X], preserving labels and relative vertex order.
    pub fn induced_subgraph(&self, x: &VertexSet) -> Result<Graph> {
        self.owns(x)?;
        let keep: Vec<bool> = (0..self.n()).map(|v| x.contains(v)).collect();
        Ok(self.subgraph_where(&keep, &[]))
    }

    /// G − W − F: removes the vertices of `w` with their edges, then the edges `f`.
    pub fn delete(&self, w: &VertexSet, f: &[Edge]) -> Result<Graph> {
        self.owns(w)?;
        for &e in f {
            self.check_edge(e)?;
        }
        let keep: Vec<bool> = (0..self.n()).map(|v| !w.contains(v)).collect();
        Ok(self.subgraph_where(&keep, f))
    }

    fn subgraph_where(&self, keep: &[bool], dropped: &[Edge]) -> Graph {
        let mut b = GraphBuilder::default();
        let mut map = vec![usize::MAX; self.n()];
        for v in 0..self.n() {
            if keep[v] {
                map[v] = b.vertex(&self.labels[v]).expect("labels already valid");
            }
        }
        for e in self.edges() {
            if keep[e.u] && keep[e.v] && !dropped.contains(&e) {
                b.edge_indices(map[e.u], map[e.v]).expect("edges already valid");
            }
        }
        b.finish()
    }

    /// Connected components as sorted index lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let alive = vec![true; self.n()];
        components_within(self, &alive)
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.components().len() == 1
    }

    /// Proper 2-coloring, if one exists.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n()];
        for s in 0..self.n() {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
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

    pub fn classify_shape(&self) -> ShapeClass {
        let comps = self.components().len();
        let connected = comps == 1;
        let (n, m) = (self.n(), self.m);
        let kind = if connected && m + 1 == n {
            ShapeKind::Tree
        } else if connected && m == n {
            ShapeKind::Unicyclic
        } else if !connected && m + comps == n {
            ShapeKind::Forest
        } else {
            ShapeKind::Other
        };
        ShapeClass {
            connected,
            kind,
            bipartite: self.two_coloring().is_some(),
        }
    }

    // ---- text format -------------------------------------------------------

    /// Canonical edge-list text: `node` lines for isolated vertices, then edges
    /// sorted by label pair.
    pub fn to_edge_list(&self) -> String {
        let mut isolated: Vec<&str> = (0..self.n())
            .filter(|&v| self.adj[v].is_empty())
            .map(|v| self.label(v))
            .collect();
        isolated.sort_by(|a, b| label_cmp(a, b));
        let mut pairs: Vec<(String, String)> = self.edges().map(|e| self.edge_labels(e)).collect();
        pairs.sort_by(|x, y| label_cmp(&x.0, &y.0).then_with(|| label_cmp(&x.1, &y.1)));
        let mut out = String::new();
        for v in isolated {
            out.push_str(NODE_KEYWORD);
            out.push(' ');
            out.push_str(v);
            out.push('\n');
        }
        for (a, b) in pairs {
            out.push_str(&a);
            out.push(' ');
            out.push_str(&b);
            out.push('\n');
        }
        out
    }

    /// Same graph with labels replaced; `names[v]` becomes the label of vertex `v`.
    pub fn relabeled<S: AsRef<str>>(&self, names: &[S]) -> Result<Graph> {
        let edges: Vec<(usize, usize)> = self.edges().map(|e| (e.u, e.v)).collect();
        Graph::from_index_edges(names, &edges)
    }
}

pub(crate) fn components_within(g: &Graph, alive: &[bool]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if !alive[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for &w in g.neighbors(v) {
                if alive[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_edge_list(s)
    }
}

/// Parses the edge-list format.
///
/// `#` starts a comment, blank lines are skipped, `u v` adds an edge and
/// `node w` declares a vertex. Loops, repeated edges, malformed lines and
/// empty inputs are rejected with the offending line number.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut b = GraphBuilder::default();
    let mut lines = 0;
    for (no, raw) in text.lines().enumerate() {
        lines = no + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let at = |kind| Error::Parse { line: no + 1, kind };
        match tokens.as_slice() {
            [] => {}
            [NODE_KEYWORD, w] => {
                b.vertex(w).map_err(at)?;
            }
            [u, v] => b.edge(u, v).map_err(at)?,
            _ => return Err(at(GraphErrorKind::Malformed(content.trim().to_string()))),
        }
    }
    let g = b.finish();
    if g.n() == 0 {
        return Err(Error::Parse {
            line: lines,
            kind: GraphErrorKind::Empty,
        });
    }
    Ok(g)
}

/// Subset of one graph's vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    owner: GraphId,
    n: usize,
    words: Vec<u64>,
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl VertexSet {
    fn empty(owner: GraphId, n: usize) -> Self {
        VertexSet {
            owner,
            n,
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn owner(&self) -> GraphId {
        self.owner
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub(crate) fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub(crate) fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1 << (v % 64));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.contains(v))
    }

    /// The set as a bitmask, when the owner has at most 64 vertices.
    pub fn mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    fn same_owner(&self, other: &VertexSet) {
        assert!(
            self.owner == other.owner && self.n == other.n,
            "set algebra across different graphs"
        );
    }

    fn zip(&self, other: &VertexSet, op: impl Fn(u64, u64) -> u64) -> VertexSet {
        self.same_owner(other);
        VertexSet {
            owner: self.owner,
            n: self.n,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect(),
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.zip(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> VertexSet {
        let mut out = self.clone();
        for v in 0..self.n {
            if self.contains(v) {
                out.remove(v);
            } else {
                out.insert(v);
            }
        }
        out
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.same_owner(other);
        self.words.iter().zip(&other.words).all(|(&a, &b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.same_owner(other);
        self.words.iter().zip(&other.words).all(|(&a, &b)| a & b == 0)
    }
}

/// Coarse shape of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeKind {
    Tree,
    Unicyclic,
    Forest,
    Other,
}

impl fmt::Display for ShapeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShapeKind::Tree => "tree",
            ShapeKind::Unicyclic => "unicyclic",
            ShapeKind::Forest => "forest",
            ShapeKind::Other => "other",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShapeClass {
    pub connected: bool,
    pub kind: ShapeKind,
    pub bipartite: bool,
}

/// `{a,b,c}` rendering of a label list.
pub fn fmt_labels(labels: &[String]) -> String {
    format!("{{{}}}", labels.join(","))
}
