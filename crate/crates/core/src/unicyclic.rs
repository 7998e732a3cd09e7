//! Unicyclic graphs: the unique cycle C, the vertices N₁(C) hanging off it,
//! and the pendant tree T_x of each x ∈ N₁(C).
//!
//! For non-KE unicyclic graphs, core, corona and ker are assembled from the
//! pendant trees; KE inputs are refused.

use serde::Serialize;

use crate::budget::Budget;
use crate::critical::ker;
use crate::error::{Error, Result};
use crate::graph::{label_cmp, Edge, Graph, ShapeKind, VertexSet};
use crate::independence::{alpha, core, corona, is_alpha_critical_edge};
use crate::matching::mu;

/// T_x together with where it hangs: `root` = x ∈ N₁(C), `anchor` = its cycle neighbor.
#[derive(Debug, Clone)]
pub struct Pendant {
    pub root: usize,
    pub anchor: usize,
    /// V(T_x) as a subset of the parent graph.
    pub vertices: VertexSet,
    /// T_x itself, labels preserved.
    pub tree: Graph,
}

#[derive(Debug, Clone)]
pub struct UnicyclicDecomposition {
    /// Cycle vertices in traversal order, starting at the smallest label and
    /// heading towards its smaller cycle neighbor.
    pub cycle: Vec<usize>,
    pub n1: VertexSet,
    /// One entry per x ∈ N₁(C), ordered by the label of x.
    pub pendants: Vec<Pendant>,
}

impl UnicyclicDecomposition {
    pub fn cycle_set(&self, g: &Graph) -> VertexSet {
        g.set_from_indices(self.cycle.iter().copied())
    }

    pub fn cycle_edges(&self) -> Vec<Edge> {
        let k = self.cycle.len();
        (0..k)
            .map(|i| Edge::new(self.cycle[i], self.cycle[(i + 1) % k]))
            .collect()
    }

    pub fn pendant(&self, root: usize) -> Option<&Pendant> {
        self.pendants.iter().find(|p| p.root == root)
    }
}

/// The unique cycle, canonically oriented.
pub fn find_cycle(g: &Graph) -> Result<Vec<usize>> {
    if g.classify_shape().kind != ShapeKind::Unicyclic {
        return Err(Error::NotUnicyclic);
    }
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut gone = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    while let Some(v) = stack.pop() {
        gone[v] = true;
        for &w in g.neighbors(v) {
            if !gone[w] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    stack.push(w);
                }
            }
        }
    }
    let on_cycle: Vec<usize> = (0..n).filter(|&v| !gone[v]).collect();
    let start = *on_cycle
        .iter()
        .min_by(|&&a, &&b| label_cmp(g.label(a), g.label(b)))
        .expect("unicyclic graph has a cycle");
    let mut nbrs: Vec<usize> = g.neighbors(start).iter().copied().filter(|&w| !gone[w]).collect();
    nbrs.sort_by(|&a, &b| label_cmp(g.label(a), g.label(b)));
    let mut cycle = vec![start];
    let (mut prev, mut cur) = (start, nbrs[0]);
    while cur != start {
        cycle.push(cur);
        let next = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| !gone[w] && w != prev)
            .expect("cycle vertices have two cycle neighbors");
        prev = cur;
        cur = next;
    }
    debug_assert_eq!(cycle.len(), on_cycle.len());
    Ok(cycle)
}

pub fn decompose(g: &Graph) -> Result<UnicyclicDecomposition> {
    let cycle = find_cycle(g)?;
    let on_cycle = g.set_from_indices(cycle.iter().copied());
    let n1 = g.neighborhood(&on_cycle, false)?.difference(&on_cycle);

    let mut roots: Vec<usize> = n1.iter().collect();
    roots.sort_by(|&a, &b| label_cmp(g.label(a), g.label(b)));
    let mut pendants = Vec::with_capacity(roots.len());
    for x in roots {
        let anchors: Vec<usize> = g
            .neighbors(x)
            .iter()
            .copied()
            .filter(|&w| on_cycle.contains(w))
            .collect();
        let [anchor] = anchors[..] else {
            unreachable!("a second cycle neighbor would close a second cycle")
        };
        // component of G − xy containing x
        let mut seen = g.empty_set();
        seen.insert(x);
        let mut todo = vec![x];
        while let Some(v) = todo.pop() {
            for &w in g.neighbors(v) {
                if !(v == x && w == anchor) && !seen.contains(w) {
                    seen.insert(w);
                    todo.push(w);
                }
            }
        }
        let tree = g.induced_subgraph(&seen)?;
        pendants.push(Pendant {
            root: x,
            anchor,
            vertices: seen,
            tree,
        });
    }
    Ok(UnicyclicDecomposition { cycle, n1, pendants })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KeClassification {
    pub ke: bool,
    pub alpha: usize,
    pub mu: usize,
    pub alpha_plus_mu: usize,
    /// Every cycle edge tested on its own, not inferred from `ke`.
    pub cycle_edges_alpha_critical: bool,
}

pub fn classify_ke_unicyclic(g: &Graph, budget: &Budget) -> Result<KeClassification> {
    let cycle = decompose(g)?;
    let alpha = alpha(g, budget)?;
    let mu = mu(g);
    let mut all_critical = true;
    for e in cycle.cycle_edges() {
        if !is_alpha_critical_edge(g, e, budget)? {
            all_critical = false;
            break;
        }
    }
    Ok(KeClassification {
        ke: alpha + mu == g.n(),
        alpha,
        mu,
        alpha_plus_mu: alpha + mu,
        cycle_edges_alpha_critical: all_critical,
    })
}

fn non_ke_decomposition(g: &Graph, budget: &Budget) -> Result<UnicyclicDecomposition> {
    let d = decompose(g)?;
    if alpha(g, budget)? + mu(g) == g.n() {
        return Err(Error::Precondition(
            "graph is König-Egerváry; the pendant-tree formulas need a non-KE graph",
        ));
    }
    Ok(d)
}

fn union_over_pendants(
    g: &Graph,
    d: &UnicyclicDecomposition,
    mut per_tree: impl FnMut(&Graph) -> Result<VertexSet>,
) -> Result<VertexSet> {
    let mut out = g.empty_set();
    for p in &d.pendants {
        let part = per_tree(&p.tree)?;
        out = out.union(&g.lift(&p.tree, &part)?);
    }
    Ok(out)
}

/// ∪ core(T_x) over x ∈ N₁(C).
pub fn structural_core(g: &Graph, budget: &Budget) -> Result<VertexSet> {
    let d = non_ke_decomposition(g, budget)?;
    union_over_pendants(g, &d, |t| core(t, budget))
}

/// V(C) ∪ ∪ corona(T_x) over x ∈ N₁(C).
pub fn structural_corona(g: &Graph, budget: &Budget) -> Result<VertexSet> {
    let d = non_ke_decomposition(g, budget)?;
    let trees = union_over_pendants(g, &d, |t| corona(t, budget))?;
    Ok(trees.union(&d.cycle_set(g)))
}

/// ∪ ker(T_x) over x ∈ N₁(C).
pub fn structural_ker(g: &Graph, budget: &Budget) -> Result<VertexSet> {
    let d = non_ke_decomposition(g, budget)?;
    union_over_pendants(g, &d, |t| ker(t, budget))
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
    const C5: &str = "a b\nb c\nc d\nd e\ne a";
    const G3: &str = "x y\ny z\ny v1\nv1 v2\nv2 v3\nv2 w\nv3 w\n";

    fn names(g: &Graph, vs: &[usize]) -> Vec<String> {
        vs.iter().map(|&v| g.label(v).to_string()).collect()
    }

    #[test]
    fn decompose_fig2g() {
        let f = g(FIG2);
        let d = decompose(&f).unwrap();
        assert_eq!(names(&f, &d.cycle), ["c", "t", "d", "y", "w"]);
        let mut cyc = names(&f, &d.cycle);
        cyc.sort();
        assert_eq!(cyc, ["c", "d", "t", "w", "y"]);
        assert_eq!(f.render(&d.n1), ["x"]);
        assert_eq!(d.pendants.len(), 1);
        let p = &d.pendants[0];
        assert_eq!(f.label(p.anchor), "y");
        assert_eq!(f.render(&p.vertices), ["a", "b", "u", "v", "x"]);
        assert_eq!((p.tree.n(), p.tree.m()), (5, 4));
    }

    #[test]
    fn decompose_cycle_only() {
        let c5 = g(C5);
        let d = decompose(&c5).unwrap();
        assert_eq!(names(&c5, &d.cycle), ["a", "b", "c", "d", "e"]);
        assert!(d.n1.is_empty());
        assert!(d.pendants.is_empty());
    }

    #[test]
    fn decompose_fig1() {
        let f = g(FIG1);
        let d = decompose(&f).unwrap();
        assert_eq!(names(&f, &d.cycle), ["v", "x", "y"]);
        assert_eq!(f.render(&d.n1), ["c"]);
        assert_eq!(f.render(&d.pendants[0].vertices), ["a", "b", "c", "u"]);
    }

    #[test]
    fn decompose_rejects_other_shapes() {
        assert_eq!(decompose(&g("a b\nb c")).unwrap_err(), Error::NotUnicyclic);
    }

    #[test]
    fn ke_classification() {
        let b = Budget::default();
        let r = classify_ke_unicyclic(&g(FIG2), &b).unwrap();
        assert_eq!((r.ke, r.alpha_plus_mu, r.cycle_edges_alpha_critical), (false, 9, true));
        let r = classify_ke_unicyclic(&g(FIG1), &b).unwrap();
        assert_eq!((r.ke, r.alpha_plus_mu, r.cycle_edges_alpha_critical), (true, 7, false));
        let r = classify_ke_unicyclic(&g(C5), &b).unwrap();
        assert_eq!((r.ke, r.alpha_plus_mu), (false, 4));
    }

    #[test]
    fn structural_sets() {
        let b = Budget::default();
        let f = g(FIG2);
        assert_eq!(f.render(&structural_core(&f, &b).unwrap()), ["a", "b"]);
        assert_eq!(f.render(&structural_ker(&f, &b).unwrap()), ["a", "b"]);
        assert_eq!(
            f.render(&structural_corona(&f, &b).unwrap()),
            ["a", "b", "c", "d", "t", "u", "v", "w", "y"]
        );
        assert_eq!(structural_core(&f, &b).unwrap(), core(&f, &b).unwrap());
        assert_eq!(structural_corona(&f, &b).unwrap(), corona(&f, &b).unwrap());

        let c5 = g(C5);
        assert!(structural_core(&c5, &b).unwrap().is_empty());
        assert!(structural_ker(&c5, &b).unwrap().is_empty());
        assert_eq!(structural_corona(&c5, &b).unwrap(), c5.full_set());

        let f4 = g(FIG4G2);
        assert_eq!(f4.render(&structural_core(&f4, &b).unwrap()), ["x", "y"]);
        let cor = structural_corona(&f4, &b).unwrap();
        assert_eq!(cor.len(), 7);
        assert!(!cor.contains(f4.vertex("p").unwrap()));
    }

    #[test]
    fn structural_refuses_ke() {
        let b = Budget::default();
        let g3 = g(G3);
        assert!(matches!(structural_ker(&g3, &b), Err(Error::Precondition(_))));
        assert!(matches!(structural_core(&g(FIG1), &b), Err(Error::Precondition(_))));
    }
}
