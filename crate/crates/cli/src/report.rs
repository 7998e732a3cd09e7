//! The `analyze` record and its text rendering.

use std::fmt::Write as _;

use kerlab_core::critical::{critical_difference_fast, ker};
use kerlab_core::graph::fmt_labels;
use kerlab_core::independence::{alpha, core, corona, maximum_independent_set};
use kerlab_core::matching::{maximum_matching, mu};
use kerlab_core::unicyclic::decompose;
use kerlab_core::{Budget, Graph, Result, ShapeClass, ShapeKind};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PendantSummary {
    pub root: String,
    pub anchor: String,
    pub vertices: Vec<String>,
    pub alpha: usize,
    pub core: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnicyclicDetails {
    pub cycle: Vec<String>,
    pub n1: Vec<String>,
    pub pendants: Vec<PendantSummary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    pub shape: ShapeClass,
    pub alpha: usize,
    pub maximum_independent_set: Vec<String>,
    pub mu: usize,
    pub maximum_matching: Vec<[String; 2]>,
    pub ke: bool,
    pub core: Vec<String>,
    pub corona: Vec<String>,
    pub ker: Vec<String>,
    pub d_c: i64,
    pub sum_defect: i64,
    pub unicyclic: Option<UnicyclicDetails>,
}

pub fn analyze(graph_id: &str, g: &Graph, budget: &Budget) -> Result<AnalysisReport> {
    let a = alpha(g, budget)?;
    let m = mu(g);
    let core_set = core(g, budget)?;
    let corona_set = corona(g, budget)?;
    let shape = g.classify_shape();
    let unicyclic = if shape.kind == ShapeKind::Unicyclic {
        let d = decompose(g)?;
        let mut pendants = Vec::with_capacity(d.pendants.len());
        for p in &d.pendants {
            pendants.push(PendantSummary {
                root: g.label(p.root).to_string(),
                anchor: g.label(p.anchor).to_string(),
                vertices: g.render(&p.vertices),
                alpha: alpha(&p.tree, budget)?,
                core: p.tree.render(&core(&p.tree, budget)?),
            });
        }
        Some(UnicyclicDetails {
            cycle: d.cycle.iter().map(|&v| g.label(v).to_string()).collect(),
            n1: g.render(&d.n1),
            pendants,
        })
    } else {
        None
    };
    Ok(AnalysisReport {
        graph_id: graph_id.to_string(),
        n: g.n(),
        m: g.m(),
        shape,
        alpha: a,
        maximum_independent_set: g.render(&maximum_independent_set(g, budget)?),
        mu: m,
        maximum_matching: maximum_matching(g).render(g).into_iter().map(|(x, y)| [x, y]).collect(),
        ke: a + m == g.n(),
        core: g.render(&core_set),
        corona: g.render(&corona_set),
        ker: g.render(&ker(g, budget)?),
        d_c: critical_difference_fast(g, budget)?,
        sum_defect: corona_set.len() as i64 + core_set.len() as i64 - 2 * a as i64,
        unicyclic,
    })
}

pub fn render_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let shape = format!(
        "{}, {}, {}",
        r.shape.kind,
        if r.shape.connected { "connected" } else { "disconnected" },
        if r.shape.bipartite {
            "bipartite"
        } else {
            "non-bipartite"
        }
    );
    let matching: Vec<String> = r.maximum_matching.iter().map(|[x, y]| format!("{x}{y}")).collect();
    let rows: [(&str, String); 14] = [
        ("graph", r.graph_id.clone()),
        ("n", r.n.to_string()),
        ("m", r.m.to_string()),
        ("shape", shape),
        ("alpha", r.alpha.to_string()),
        ("mis", fmt_labels(&r.maximum_independent_set)),
        ("mu", r.mu.to_string()),
        ("matching", fmt_labels(&matching)),
        ("ke", r.ke.to_string()),
        ("core", fmt_labels(&r.core)),
        ("corona", fmt_labels(&r.corona)),
        ("ker", fmt_labels(&r.ker)),
        ("d_c", r.d_c.to_string()),
        ("sum_defect", r.sum_defect.to_string()),
    ];
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<12}{v}");
    }
    if let Some(u) = &r.unicyclic {
        let _ = writeln!(out, "{:<12}{}", "cycle", u.cycle.join(" "));
        let _ = writeln!(out, "{:<12}{}", "n1", fmt_labels(&u.n1));
        for p in &u.pendants {
            let _ = writeln!(
                out,
                "{:<12}T_{} at {}: {} alpha={} core={}",
                "pendant",
                p.root,
                p.anchor,
                fmt_labels(&p.vertices),
                p.alpha,
                fmt_labels(&p.core)
            );
        }
    }
    out
}
