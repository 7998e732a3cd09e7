mod common;

use common::oracle;
use kerlab_core::canon::canonical_form;
use kerlab_core::critical::{critical_difference_bruteforce, critical_difference_fast, ker};
use kerlab_core::independence::{
    alpha, alpha_branch_and_bound, core, corona, enumerate_mis, is_alpha_critical_edge, maximum_independent_set,
};
use kerlab_core::matching::{blossom_matching, is_mu_critical_edge, maximum_matching, mu, mu_exhaustive};
use kerlab_core::{parse_edge_list, Budget, Graph};
use proptest::prelude::*;

/// Graphs on 1..=max_n vertices labeled `1..=n`, each pair present independently.
fn graphs(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
            Graph::from_index_edges(&names, &edges).unwrap()
        })
    })
}

fn b() -> Budget {
    Budget::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn serialization_is_a_fixed_point(g in graphs(12)) {
        let text = g.to_edge_list();
        let back = parse_edge_list(&text).unwrap();
        prop_assert_eq!(back.to_edge_list(), text);
        prop_assert_eq!((back.n(), back.m()), (g.n(), g.m()));
    }

    #[test]
    fn degree_sum_is_twice_m(g in graphs(14)) {
        let total: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(total, 2 * g.m());
    }

    #[test]
    fn closed_neighborhood_adds_the_set(g in graphs(10), pick in any::<u64>()) {
        let a = g.set_from_mask(pick & oracle::full(g.n()));
        let open = g.neighborhood(&a, false).unwrap();
        let closed = g.neighborhood(&a, true).unwrap();
        prop_assert_eq!(closed, open.union(&a));
        let adj = oracle::adjacency(&g);
        prop_assert_eq!(open.mask().unwrap(), oracle::open_neighborhood(&adj, a.mask().unwrap()));
    }

    #[test]
    fn alpha_core_corona_match_oracle(g in graphs(12)) {
        let o = oracle::independence(&g);
        prop_assert_eq!(alpha(&g, &b()).unwrap(), o.alpha);
        prop_assert_eq!(alpha_branch_and_bound(&g, &b()).unwrap(), o.alpha);
        prop_assert_eq!(core(&g, &b()).unwrap().mask().unwrap(), o.core);
        prop_assert_eq!(corona(&g, &b()).unwrap().mask().unwrap(), o.corona);
        let mut fam: Vec<u64> = enumerate_mis(&g, &b()).unwrap().sets.iter().map(|s| s.mask().unwrap()).collect();
        fam.sort_unstable();
        let mut expected = o.family.clone();
        expected.sort_unstable();
        prop_assert_eq!(fam, expected);
        let s = maximum_independent_set(&g, &b()).unwrap().mask().unwrap();
        prop_assert!(o.family.contains(&s));
    }

    #[test]
    fn core_inside_every_mis_inside_corona(g in graphs(12)) {
        let c = core(&g, &b()).unwrap();
        let r = corona(&g, &b()).unwrap();
        for s in enumerate_mis(&g, &b()).unwrap().sets {
            prop_assert!(c.is_subset(&s));
            prop_assert!(s.is_subset(&r));
        }
    }

    #[test]
    fn edge_deletion_moves_alpha_and_mu_by_at_most_one(g in graphs(10)) {
        let a = alpha(&g, &b()).unwrap();
        let m = mu(&g);
        for e in g.edges().collect::<Vec<_>>() {
            let h = g.delete(&g.empty_set(), &[e]).unwrap();
            let ah = oracle::independence(&h).alpha;
            prop_assert!(a <= ah && ah <= a + 1);
            prop_assert_eq!(is_alpha_critical_edge(&g, e, &b()).unwrap(), ah == a + 1);
            let mh = oracle::mu(&h);
            prop_assert!(mh + 1 >= m && mh <= m);
            prop_assert_eq!(is_mu_critical_edge(&g, e).unwrap(), mh < m);
        }
    }

    #[test]
    fn matchings_match_oracle(g in graphs(12)) {
        let m = oracle::mu(&g);
        prop_assert_eq!(mu(&g), m);
        prop_assert_eq!(blossom_matching(&g).len(), m);
        prop_assert_eq!(mu_exhaustive(&g, &b()).unwrap(), m);
        let mm = maximum_matching(&g);
        let mut seen = 0u64;
        for e in mm.edges() {
            prop_assert!(g.has_edge(e.u, e.v));
            prop_assert_eq!(seen & (1 << e.u | 1 << e.v), 0);
            seen |= 1 << e.u | 1 << e.v;
        }
    }

    #[test]
    fn critical_sets_match_oracle(g in graphs(11)) {
        let o = oracle::critical(&g);
        let r = critical_difference_bruteforce(&g, &b()).unwrap();
        prop_assert_eq!((r.d_c, r.id_c), (o.d_c, o.id_c));
        prop_assert_eq!(r.ker.mask().unwrap(), o.ker);
        prop_assert_eq!(ker(&g, &b()).unwrap().mask().unwrap(), o.ker);
        prop_assert_eq!(critical_difference_fast(&g, &b()).unwrap(), o.d_c);
        prop_assert!(r.ker.is_subset(&core(&g, &b()).unwrap()));
    }

    #[test]
    fn canonical_form_ignores_labels(g in graphs(10), seed in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let names: Vec<String> = perm.iter().map(|p| format!("w{p}")).collect();
        let h = g.relabeled(&names).unwrap();
        prop_assert_eq!(canonical_form(&g).unwrap().form, canonical_form(&h).unwrap().form);
    }
}
