//! Executable theorem checkers, corpus sweeps and the two open-problem searches.
//!
//! Each checker decides applicability from the theorem's hypotheses, then
//! recomputes the conclusion from primitive operations. ker is always taken
//! from the subset sweep so that no checker leans on a structural shortcut
//! that is itself one of the statements under test.

use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::corpus::{enumerate_graphs, enumerate_trees, enumerate_unicyclic, family_g2k1, random_connected};
use crate::critical::{critical_difference_bruteforce, diff, CriticalReport};
use crate::error::{Error, Result};
use crate::graph::{parse_edge_list, Graph, ShapeClass, ShapeKind, VertexSet};
use crate::independence::{alpha, core, corona, enumerate_mis, is_alpha_critical_edge, is_independent, MisFamily};
use crate::matching::{enumerate_maximum_matchings, mu, saturating_matching, Matching};
use crate::unicyclic::{decompose, UnicyclicDecomposition};

macro_rules! theorems {
    ($($variant:ident => $name:literal),* $(,)?) => {
        /// Stable identifiers of the checkable statements.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
        pub enum TheoremId {
            $(#[serde(rename = $name)] $variant),*
        }

        impl TheoremId {
            pub const ALL: &'static [TheoremId] = &[$(TheoremId::$variant),*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(TheoremId::$variant => $name),*
                }
            }
        }

        impl FromStr for TheoremId {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s.to_ascii_uppercase().as_str() {
                    $($name => Ok(TheoremId::$variant),)*
                    _ => Err(Error::UnknownTheorem(s.to_string())),
                }
            }
        }
    };
}

theorems! {
    Lem1a => "LEM1A",
    Lem1b => "LEM1B",
    Lem2 => "LEM2",
    Th11 => "TH11",
    Th1 => "TH1",
    Th2a => "TH2A",
    Th2b => "TH2B",
    Th3 => "TH3",
    Th4a => "TH4A",
    Th4b => "TH4B",
    Th12 => "TH12",
    Main => "MAIN",
    Kercore => "KERCORE",
    Zhang => "ZHANG",
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One named value in a witness or counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Payload {
    Bool(bool),
    Int(i64),
    Set(Vec<String>),
    Sets(Vec<Vec<String>>),
    Matching(Vec<[String; 2]>),
}

pub type PayloadMap = BTreeMap<String, Payload>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub graph_id: String,
    pub applicable: bool,
    /// `None` when the hypotheses are not met.
    pub holds: Option<bool>,
    pub witness: PayloadMap,
    pub counterexample: Option<PayloadMap>,
}

impl TheoremReport {
    pub fn failed(&self) -> bool {
        self.holds == Some(false)
    }

    fn not_applicable(theorem: TheoremId, graph_id: &str) -> Self {
        TheoremReport {
            theorem,
            graph_id: graph_id.to_string(),
            applicable: false,
            holds: None,
            witness: PayloadMap::new(),
            counterexample: None,
        }
    }
}

fn set(g: &Graph, s: &VertexSet) -> Payload {
    Payload::Set(g.render(s))
}

fn matching(g: &Graph, m: &Matching) -> Payload {
    Payload::Matching(m.render(g).into_iter().map(|(a, b)| [a, b]).collect())
}

fn int(x: usize) -> Payload {
    Payload::Int(x as i64)
}

/// Invariants of one graph, computed on first use and shared by all checkers.
pub struct GraphFacts<'a> {
    g: &'a Graph,
    budget: &'a Budget,
    shape: ShapeClass,
    alpha: OnceCell<usize>,
    mu: OnceCell<usize>,
    core: OnceCell<VertexSet>,
    corona: OnceCell<VertexSet>,
    mis: OnceCell<MisFamily>,
    critical: OnceCell<CriticalReport>,
    decomposition: OnceCell<UnicyclicDecomposition>,
}

fn cached<T>(cell: &OnceCell<T>, init: impl FnOnce() -> Result<T>) -> Result<&T> {
    if let Some(v) = cell.get() {
        return Ok(v);
    }
    let v = init()?;
    Ok(cell.get_or_init(|| v))
}

impl<'a> GraphFacts<'a> {
    pub fn new(g: &'a Graph, budget: &'a Budget) -> Self {
        GraphFacts {
            g,
            budget,
            shape: g.classify_shape(),
            alpha: OnceCell::new(),
            mu: OnceCell::new(),
            core: OnceCell::new(),
            corona: OnceCell::new(),
            mis: OnceCell::new(),
            critical: OnceCell::new(),
            decomposition: OnceCell::new(),
        }
    }

    pub fn graph(&self) -> &Graph {
        self.g
    }

    pub fn shape(&self) -> ShapeClass {
        self.shape
    }

    pub fn alpha(&self) -> Result<usize> {
        cached(&self.alpha, || alpha(self.g, self.budget)).copied()
    }

    pub fn mu(&self) -> Result<usize> {
        cached(&self.mu, || Ok(mu(self.g))).copied()
    }

    pub fn ke(&self) -> Result<bool> {
        Ok(self.alpha()? + self.mu()? == self.g.n())
    }

    pub fn core(&self) -> Result<&VertexSet> {
        cached(&self.core, || core(self.g, self.budget))
    }

    pub fn corona(&self) -> Result<&VertexSet> {
        cached(&self.corona, || corona(self.g, self.budget))
    }

    pub fn mis(&self) -> Result<&MisFamily> {
        cached(&self.mis, || enumerate_mis(self.g, self.budget))
    }

    /// The subset sweep: d_c, id_c, every critical independent set and ker.
    pub fn critical(&self) -> Result<&CriticalReport> {
        cached(&self.critical, || critical_difference_bruteforce(self.g, self.budget))
    }

    pub fn decomposition(&self) -> Result<&UnicyclicDecomposition> {
        cached(&self.decomposition, || decompose(self.g))
    }

    pub fn is_unicyclic(&self) -> bool {
        self.shape.kind == ShapeKind::Unicyclic
    }

    /// |corona| + |core| − 2α.
    pub fn sum_defect(&self) -> Result<i64> {
        Ok(self.corona()?.len() as i64 + self.core()?.len() as i64 - 2 * self.alpha()? as i64)
    }
}

struct Verdict {
    holds: bool,
    witness: PayloadMap,
    counterexample: Option<PayloadMap>,
}

impl Verdict {
    fn new(holds: bool, witness: PayloadMap) -> Self {
        Verdict {
            holds,
            witness,
            counterexample: None,
        }
    }

    fn fail(witness: PayloadMap, counterexample: PayloadMap) -> Self {
        Verdict {
            holds: false,
            witness,
            counterexample: Some(counterexample),
        }
    }

    fn judge(holds: bool, witness: PayloadMap) -> Self {
        if holds {
            Verdict::new(true, witness)
        } else {
            let counter = witness.clone();
            Verdict::fail(witness, counter)
        }
    }
}

fn map<const N: usize>(entries: [(&str, Payload); N]) -> PayloadMap {
    entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

pub fn check(id: TheoremId, g: &Graph, budget: &Budget) -> Result<TheoremReport> {
    check_named(id, "", g, budget)
}

pub fn check_named(id: TheoremId, graph_id: &str, g: &Graph, budget: &Budget) -> Result<TheoremReport> {
    check_facts(id, graph_id, &GraphFacts::new(g, budget))
}

/// Runs one checker against precomputed facts.
pub fn check_facts(id: TheoremId, graph_id: &str, f: &GraphFacts<'_>) -> Result<TheoremReport> {
    let applicable = match id {
        TheoremId::Lem1a | TheoremId::Lem1b | TheoremId::Th3 | TheoremId::Th12 | TheoremId::Kercore => {
            f.is_unicyclic() && !f.ke()?
        }
        TheoremId::Lem2 | TheoremId::Main => f.is_unicyclic(),
        TheoremId::Th1 | TheoremId::Th4a | TheoremId::Th4b => f.ke()?,
        TheoremId::Th2b => f.shape().bipartite,
        TheoremId::Th11 | TheoremId::Th2a | TheoremId::Zhang => true,
    };
    if !applicable {
        return Ok(TheoremReport::not_applicable(id, graph_id));
    }
    let v = match id {
        TheoremId::Lem1a => lem1a(f)?,
        TheoremId::Lem1b => lem1b(f)?,
        TheoremId::Lem2 => lem2(f)?,
        TheoremId::Th11 => th11(f)?,
        TheoremId::Th1 => th1(f)?,
        TheoremId::Th2a => th2a(f)?,
        TheoremId::Th2b => th2b(f)?,
        TheoremId::Th3 => th3(f)?,
        TheoremId::Th4a => th4a(f)?,
        TheoremId::Th4b => th4b(f)?,
        TheoremId::Th12 => th12(f)?,
        TheoremId::Main => main_sum(f)?,
        TheoremId::Kercore => kercore(f)?,
        TheoremId::Zhang => zhang(f)?,
    };
    Ok(TheoremReport {
        theorem: id,
        graph_id: graph_id.to_string(),
        applicable: true,
        holds: Some(v.holds),
        witness: v.witness,
        counterexample: v.counterexample,
    })
}

fn lem1a(f: &GraphFacts<'_>) -> Result<Verdict> {
    let g = f.graph();
    let cycle = f.decomposition()?.cycle_set(g);
    let closed = g.neighborhood(&cycle, true)?;
    let core = f.core()?;
    let meet = core.intersection(&closed);
    let witness = map([("core", set(g, core)), ("closed_cycle_neighborhood", set(g, &closed))]);
    if meet.is_empty() {
        Ok(Verdict::new(true, witness))
    } else {
        Ok(Verdict::fail(witness, map([("intersection", set(g, &meet))])))
    }
}

/// Checks that `m` really is a matching from `a` into `b` saturating `a`.
fn matches_into(m: &Matching, a: &VertexSet, b: &VertexSet) -> bool {
    m.saturates(a)
        && m.edges()
            .iter()
            .all(|e| (a.contains(e.u) && b.contains(e.v)) || (a.contains(e.v) && b.contains(e.u)))
}

fn matching_into(f: &GraphFacts<'_>, a: &VertexSet, b: &VertexSet) -> Result<Option<Matching>> {
    Ok(saturating_matching(f.graph(), a, b)?.filter(|m| matches_into(m, a, b)))
}

fn lem1b(f: &GraphFacts<'_>) -> Result<Verdict> {
    let g = f.graph();
    let core = f.core()?;
    let n_core = g.neighborhood(core, false)?;
    let base = map([("core", set(g, core)), ("core_neighborhood", set(g, &n_core))]);
    Ok(match matching_into(f, &n_core, core)? {
        Some(m) => {
            let mut w = base;
            w.insert("matching".into(), matching(g, &m));
            Verdict::new(true, w)
        }
        None => Verdict::fail(base.clone(), base),
    })
}

fn lem2(f: &GraphFacts<'_>) -> Result<Verdict> {
    let g = f.graph();
    let (a, m, n) = (f.alpha()?, f.mu()?, g.n());
    let mut critical = Vec::new();
    let mut all_critical = true;
    for e in f.decomposition()?.cycle_edges() {
        let c = is_alpha_critical_edge(g, e, f.budget)?;
        all_critical &= c;
        if c {
            let (x, y) = g.edge_labels(e);
            critical.push([x, y]);
        }
    }
    let bounds = n - 1 <= a + m && a + m <= n;
    let iff = (a + m == n - 1) == all_critical;
    let witness = map([
        ("alpha", int(a)),
        ("mu", int(m)),
        ("n", int(n)),
        ("alpha_critical_cycle_edges", Payload::Matching(critical)),
        ("all_cycle_edges_alpha_critical", Payload::Bool(all_critical)),
    ]);
    Ok(Verdict::judge(bounds && iff, witness))
}

fn th11(f: &GraphFacts<'_>) -> Result<Verdict> {
    let g = f.graph();
    let core = f.core()?;
    let corona = f.corona()?;
    let family = f.mis()?;
    for s in &family.sets {
        let from = s.difference(core);
        let into = corona.difference(s);
        if matching_into(f, &from, &into)?.is_none() {
            let w = map([("core", set(g, core)), ("corona", set(g, corona))]);
            return Ok(Verdict::fail(
                w,
                map([("s", set(g, s)), ("s_minus_core", set(g, &from))]),
            ));
        }
    }
    Ok(Verdict::new(
        true,
        map([
            ("core", set(g, core)),
            ("corona", set(g, corona)),
            ("maximum_independent_sets", int(family.sets.len())),
        ]),
    ))
}

fn th1(f: &GraphFacts<'_>) -> Result<Verdict> {
    let g = f.graph();
    let core = f.core()?;
    let n_core = g.neighborhood(core, false)?;
    let all = enumerate_maximum_matchings(g, f.budget.matching_limit, f.budget)?;
    let base = map([("core", set(g, core)), ("core_neighborhood", set(g, &n_core))]);
    for m in &all {
        let ok = n_core.iter().all(|v| m.mate(v).is_some_and(|w| core.contains(w)));
        if !ok {
            return Ok(Verdict::fail(base, map([("matching", matching(g, m))])));
        }
    }
    let mut w = base;
    w.insert("maximum_matchings".into(), int(all.len()));
    Ok(Verdict::new(true, w))
}

fn th2a(f: &GraphFacts<'_>) -> Result<Verdict> {
    let g = f.graph();
    let r = f.critical()?;
    let core = f.core()?;
    let independent = is_independent(g, &r.ker)?;
    let d = diff(g, &r.ker)?;
    let inside = r.ker.is_subset(core);
    let witness = map([
        ("ker", set(g, &r.ker)),
        ("core", set(g, core)),
        ("id_c", Payload::Int(r.id_c)),
        ("ker_difference", Payload::Int(d)),
        ("ker_independent", Payload::Bool(independent)),
    ]);
    Ok(Verdict::judge(independent && d == r.id_c && inside, witness))
}

fn th2b(f: &GraphFacts<'_>) -> Result<Verdict> {
    let g = f.graph();
    let ker = &f.critical()?.ker;
    let core = f.core()?;
    Ok(Verdict::judge(
        ker == core,
        map([("ker", set(g, ker)), ("core", set(g, core))]),
    ))
}

/// ∪ op(T_x) over x ∈ N₁(C), each lifted back into `g`.
fn pendant_union(f: &GraphFacts<'_>, op: impl Fn(&Graph) -> Result<VertexSet>) -> Result<VertexSet> {
    let g = f.graph();
    let mut out = g.empty_set();
    for p in &f.decomposition()?.pendants {
        out = out.union(&g.lift(&p.tree, &op(&p.tree)?)?);
    }
    Ok(out)
}

fn th3(f: &GraphFacts<'_>) -> Result<Verdict> {
    let g = f.graph();
    let core = f.core()?;
    let corona = f.corona()?;
    let covered = corona.union(&g.neighborhood(core, false)?);
    let cycle = f.decomposition()?.cycle_set(g);
    let assembled = cycle.union(&pendant_union(f, |t| crate::independence::corona(t, f.budget))?);
    let witness = map([
        ("corona", set(g, corona)),
        ("corona_union_core_neighborhood", set(g, &covered)),
        ("cycle_union_pendant_coronas", set(g, &assembled)),
    ]);
    Ok(Verdict::judge(covered == g.full_set() && assembled == *corona, witness))
}

fn th4a(f: &GraphFacts<'_>) -> Result<Verdict> {
    let g = f.graph();
    let n_core = g.neighborhood(f.core()?, false)?;
    let outside = f.corona()?.complement();
    Ok(Verdict::judge(
        n_core == outside,
        map([
            ("core_neighborhood", set(g, &n_core)),
            ("outside_corona", set(g, &outside)),
        ]),
    ))
}

fn th4b(f: &GraphFacts<'_>) -> Result<Verdict> {
    let (core, corona, a) = (f.core()?.len(), f.corona()?.len(), f.alpha()?);
    Ok(Verdict::judge(
        core + corona == 2 * a,
        map([
            ("core_size", int(core)),
            ("corona_size", int(corona)),
            ("alpha", int(a)),
        ]),
    ))
}

fn th12(f: &GraphFacts<'_>) -> Result<Verdict> {
    let g = f.graph();
    let core = f.core()?;
    let assembled = pendant_union(f, |t| crate::independence::core(t, f.budget))?;
    Ok(Verdict::judge(
        assembled == *core,
        map([("core", set(g, core)), ("pendant_core_union", set(g, &assembled))]),
    ))
}

fn main_sum(f: &GraphFacts<'_>) -> Result<Verdict> {
    let (core, corona, a) = (f.core()?.len(), f.corona()?.len(), f.alpha()?);
    let ke = f.ke()?;
    let sum = core + corona;
    let bounds = 2 * a <= sum && sum <= 2 * a + 1;
    let iff = !ke == (sum == 2 * a + 1);
    Ok(Verdict::judge(
        bounds && iff,
        map([
            ("alpha", int(a)),
            ("core_size", int(core)),
            ("corona_size", int(corona)),
            ("sum", int(sum)),
            ("ke", Payload::Bool(ke)),
        ]),
    ))
}

fn kercore(f: &GraphFacts<'_>) -> Result<Verdict> {
    let g = f.graph();
    let ker = &f.critical()?.ker;
    let core = f.core()?;
    let assembled = pendant_union(f, |t| Ok(critical_difference_bruteforce(t, f.budget)?.ker))?;
    Ok(Verdict::judge(
        *ker == assembled && assembled == *core,
        map([
            ("ker", set(g, ker)),
            ("pendant_ker_union", set(g, &assembled)),
            ("core", set(g, core)),
        ]),
    ))
}

fn zhang(f: &GraphFacts<'_>) -> Result<Verdict> {
    let g = f.graph();
    let r = f.critical()?;
    Ok(Verdict::judge(
        r.d_c == r.id_c,
        map([
            ("d_c", Payload::Int(r.d_c)),
            ("id_c", Payload::Int(r.id_c)),
            ("critical_set", set(g, &r.witness_set)),
        ]),
    ))
}

/// |corona(g)| + |core(g)| − 2α(g).
pub fn classify_sum_defect(g: &Graph, budget: &Budget) -> Result<i64> {
    GraphFacts::new(g, budget).sum_defect()
}

/// A graph source for sweeps and searches.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    /// One explicit graph.
    Single {
        name: String,
        #[serde(skip)]
        graph: Graph,
    },
    Trees {
        min_n: usize,
        max_n: usize,
        dedupe: bool,
    },
    Unicyclic {
        min_n: usize,
        max_n: usize,
        dedupe: bool,
    },
    Connected {
        max_n: usize,
    },
    All {
        max_n: usize,
    },
    G2k1 {
        max_k: usize,
    },
    RandomConnected {
        count: usize,
        max_n: usize,
        seed: u64,
    },
}

/// A graph with a stable display name.
#[derive(Debug, Clone)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
}

/// The graphs of `family`, in a fixed order; if enumeration runs out of
/// budget part-way, the graphs produced so far come back with the error.
pub fn materialize(family: &Family, budget: &Budget) -> (Vec<NamedGraph>, Option<Error>) {
    let mut out = Vec::new();
    let mut push_all = |prefix: String, graphs: Vec<Graph>| {
        for (i, graph) in graphs.into_iter().enumerate() {
            out.push(NamedGraph {
                name: format!("{prefix}#{i}"),
                graph,
            });
        }
    };
    let result: Result<()> = (|| {
        match family {
            Family::Single { name, graph } => push_all(name.clone(), vec![graph.clone()]),
            Family::Trees { min_n, max_n, dedupe } => {
                for n in (*min_n).max(1)..=*max_n {
                    push_all(format!("tree/n{n}"), enumerate_trees(n, *dedupe, budget)?.collect());
                }
            }
            Family::Unicyclic { min_n, max_n, dedupe } => {
                for n in (*min_n).max(3)..=*max_n {
                    push_all(
                        format!("unicyclic/n{n}"),
                        enumerate_unicyclic(n, *dedupe, budget)?.collect(),
                    );
                }
            }
            Family::Connected { max_n } => {
                for n in 1..=*max_n {
                    push_all(format!("connected/n{n}"), enumerate_graphs(n, true, budget)?);
                }
            }
            Family::All { max_n } => {
                for n in 1..=*max_n {
                    push_all(format!("graph/n{n}"), enumerate_graphs(n, false, budget)?);
                }
            }
            Family::G2k1 { max_k } => {
                for k in 1..=*max_k {
                    push_all(format!("g2k1/k{k}"), vec![family_g2k1(k)?]);
                }
            }
            Family::RandomConnected { count, max_n, seed } => {
                push_all(format!("random/seed{seed}"), random_connected(*count, *max_n, *seed)?);
            }
        }
        Ok(())
    })();
    (out, result.err())
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub applicable: usize,
    pub not_applicable: usize,
    pub held: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    /// Canonical edge-list serialization; feed it back to `replay`.
    pub graph: String,
    pub report: TheoremReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepSummary {
    pub family: Family,
    pub theorems: Vec<TheoremId>,
    pub graphs_tested: usize,
    pub tallies: BTreeMap<TheoremId, Tally>,
    pub failures: Vec<Failure>,
    pub truncated: bool,
    pub truncation_reason: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SweepSummary {
    pub fn all_hold(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Default)]
pub struct SweepOptions {
    pub budget: Budget,
    /// Worker threads; 0 means the available parallelism.
    pub workers: usize,
    /// Stop after the first block of graphs that produced a failure.
    pub fail_fast: bool,
}

/// Graphs per block in fail-fast mode; fixed so the stopping point does not
/// depend on the worker count.
const FAIL_FAST_BLOCK: usize = 64;

pub type Checker = dyn Fn(TheoremId, &str, &GraphFacts<'_>) -> Result<TheoremReport> + Sync;

pub fn sweep(family: &Family, ids: &[TheoremId], options: &SweepOptions) -> Result<SweepSummary> {
    sweep_with(family, ids, options, &check_facts)
}

/// `sweep` with a substitute checker.
pub fn sweep_with(
    family: &Family,
    ids: &[TheoremId],
    options: &SweepOptions,
    checker: &Checker,
) -> Result<SweepSummary> {
    let start = Instant::now();
    let (graphs, enum_error) = materialize(family, &options.budget);
    if let Some(e) = &enum_error {
        if !e.is_budget() {
            return Err(e.clone());
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("worker pool: {e}")))?;

    type Outcome = Result<Vec<TheoremReport>>;
    let run = |ng: &NamedGraph| -> Outcome {
        let facts = GraphFacts::new(&ng.graph, &options.budget);
        ids.iter().map(|&id| checker(id, &ng.name, &facts)).collect()
    };

    let mut outcomes: Vec<(usize, Outcome)> = Vec::with_capacity(graphs.len());
    pool.install(|| {
        if options.fail_fast {
            for (b, block) in graphs.chunks(FAIL_FAST_BLOCK).enumerate() {
                let done: Vec<Outcome> = block.par_iter().map(run).collect();
                let stop = done
                    .iter()
                    .any(|o| matches!(o, Ok(rs) if rs.iter().any(TheoremReport::failed)));
                outcomes.extend(done.into_iter().enumerate().map(|(i, o)| (b * FAIL_FAST_BLOCK + i, o)));
                if stop {
                    break;
                }
            }
        } else {
            let done: Vec<Outcome> = graphs.par_iter().map(run).collect();
            outcomes.extend(done.into_iter().enumerate());
        }
    });

    let mut tallies: BTreeMap<TheoremId, Tally> = ids.iter().map(|&id| (id, Tally::default())).collect();
    let mut failures = Vec::new();
    let mut graphs_tested = 0;
    let mut truncation_reason = enum_error.map(|e| e.to_string());
    for (i, outcome) in outcomes {
        match outcome {
            Ok(reports) => {
                graphs_tested += 1;
                for r in reports {
                    let t = tallies.entry(r.theorem).or_default();
                    match r.holds {
                        None => t.not_applicable += 1,
                        Some(true) => {
                            t.applicable += 1;
                            t.held += 1;
                        }
                        Some(false) => {
                            t.applicable += 1;
                            t.failed += 1;
                            failures.push(Failure {
                                graph: graphs[i].graph.to_edge_list(),
                                report: r,
                            });
                        }
                    }
                }
            }
            Err(e) if e.is_budget() => {
                truncation_reason.get_or_insert_with(|| format!("{}: {e}", graphs[i].name));
            }
            Err(e) => return Err(e),
        }
    }
    failures.sort_by(|a, b| {
        (&a.graph, a.report.theorem, &a.report.graph_id).cmp(&(&b.graph, b.report.theorem, &b.report.graph_id))
    });
    Ok(SweepSummary {
        family: family.clone(),
        theorems: ids.to_vec(),
        graphs_tested,
        tallies,
        truncated: truncation_reason.is_some(),
        truncation_reason,
        failures,
        elapsed: start.elapsed(),
    })
}

/// Re-runs the checker of a recorded failure on its serialized graph.
pub fn replay(failure: &Failure, budget: &Budget) -> Result<TheoremReport> {
    replay_with(failure, budget, &check_facts)
}

pub fn replay_with(failure: &Failure, budget: &Budget, checker: &Checker) -> Result<TheoremReport> {
    let g = parse_edge_list(&failure.graph)?;
    checker(
        failure.report.theorem,
        &failure.report.graph_id,
        &GraphFacts::new(&g, budget),
    )
}

/// Which side of the core = ker question a graph falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Problem1Class {
    CoreEqualsKer,
    CoreDiffersFromKer,
}

/// `None` unless `g` is a non-bipartite unicyclic KE graph.
pub fn problem1_class(g: &Graph, budget: &Budget) -> Result<Option<Problem1Class>> {
    let f = GraphFacts::new(g, budget);
    if !f.is_unicyclic() || f.shape().bipartite || !f.ke()? {
        return Ok(None);
    }
    Ok(Some(if f.critical()?.ker == *f.core()? {
        Problem1Class::CoreEqualsKer
    } else {
        Problem1Class::CoreDiffersFromKer
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Exemplar {
    pub n: usize,
    pub graph: String,
    pub core: Vec<String>,
    pub ker: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassSummary {
    pub count: usize,
    /// Smallest members, by order then serialization.
    pub exemplars: Vec<Exemplar>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Problem1Report {
    pub max_n: usize,
    pub graphs_examined: usize,
    pub non_bipartite_ke: usize,
    pub core_equals_ker: ClassSummary,
    pub core_differs_from_ker: ClassSummary,
}

/// Partitions every non-bipartite unicyclic KE graph with n ≤ `max_n` by
/// whether core = ker.
pub fn search_problem1(max_n: usize, exemplars: usize, budget: &Budget) -> Result<Problem1Report> {
    let (graphs, err) = materialize(
        &Family::Unicyclic {
            min_n: 3,
            max_n,
            dedupe: true,
        },
        budget,
    );
    if let Some(e) = err {
        return Err(e);
    }
    let classified: Vec<Result<Option<(Problem1Class, Exemplar)>>> = graphs
        .par_iter()
        .map(|ng| {
            let g = &ng.graph;
            let Some(class) = problem1_class(g, budget)? else {
                return Ok(None);
            };
            let r = critical_difference_bruteforce(g, budget)?;
            Ok(Some((
                class,
                Exemplar {
                    n: g.n(),
                    graph: g.to_edge_list(),
                    core: g.render(&core(g, budget)?),
                    ker: g.render(&r.ker),
                },
            )))
        })
        .collect();

    let mut eq = Vec::new();
    let mut ne = Vec::new();
    for c in classified {
        match c? {
            Some((Problem1Class::CoreEqualsKer, ex)) => eq.push(ex),
            Some((Problem1Class::CoreDiffersFromKer, ex)) => ne.push(ex),
            None => {}
        }
    }
    let summarize = |mut v: Vec<Exemplar>| {
        v.sort_by(|a, b| (a.n, &a.graph).cmp(&(b.n, &b.graph)));
        let count = v.len();
        v.truncate(exemplars);
        ClassSummary { count, exemplars: v }
    };
    Ok(Problem1Report {
        max_n,
        graphs_examined: graphs.len(),
        non_bipartite_ke: eq.len() + ne.len(),
        core_equals_ker: summarize(eq),
        core_differs_from_ker: summarize(ne),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefectBucket {
    pub count: usize,
    pub exemplars: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Problem2Report {
    pub family: Family,
    pub graphs_examined: usize,
    /// Sum defect → graphs with that defect.
    pub buckets: BTreeMap<i64, DefectBucket>,
}

/// Histogram of the sum defect over `family`, with the first few graphs of each bucket.
pub fn search_problem2(family: &Family, exemplars: usize, budget: &Budget) -> Result<Problem2Report> {
    let (graphs, err) = materialize(family, budget);
    if let Some(e) = err {
        return Err(e);
    }
    let defects: Vec<Result<i64>> = graphs
        .par_iter()
        .map(|ng| classify_sum_defect(&ng.graph, budget))
        .collect();
    let mut buckets: BTreeMap<i64, DefectBucket> = BTreeMap::new();
    for (ng, d) in graphs.iter().zip(defects) {
        let b = buckets.entry(d?).or_insert(DefectBucket {
            count: 0,
            exemplars: Vec::new(),
        });
        b.count += 1;
        if b.exemplars.len() < exemplars {
            b.exemplars.push(ng.graph.to_edge_list());
        }
    }
    Ok(Problem2Report {
        family: family.clone(),
        graphs_examined: graphs.len(),
        buckets,
    })
}
