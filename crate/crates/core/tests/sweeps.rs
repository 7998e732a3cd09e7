mod common;

use common::oracle;
use kerlab_core::canon::canonical_form;
use kerlab_core::corpus::{enumerate_trees, enumerate_unicyclic, family_g2k1, fixture, random_unicyclic, FixtureName};
use kerlab_core::critical::critical_difference_bruteforce;
use kerlab_core::lab::{
    classify_sum_defect, problem1_class, search_problem1, sweep, Family, Problem1Class, SweepOptions, TheoremId,
};
use kerlab_core::unicyclic::{decompose, structural_core, structural_corona, structural_ker};
use kerlab_core::{Budget, Graph};

fn b() -> Budget {
    Budget::default()
}

fn unicyclic_upto(max_n: usize) -> Vec<Graph> {
    (3..=max_n)
        .flat_map(|n| enumerate_unicyclic(n, true, &b()).unwrap())
        .collect()
}

fn oracle_ke(g: &Graph) -> bool {
    oracle::independence(g).alpha + oracle::mu(g) == g.n()
}

#[test]
fn every_theorem_on_unicyclic_graphs_up_to_eight() {
    let s = sweep(
        &Family::Unicyclic {
            min_n: 3,
            max_n: 8,
            dedupe: true,
        },
        TheoremId::ALL,
        &SweepOptions::default(),
    )
    .unwrap();
    assert_eq!(s.graphs_tested, 1 + 2 + 5 + 13 + 33 + 89);
    assert!(!s.truncated);
    assert!(s.failures.is_empty(), "{:#?}", s.failures);
    for (id, t) in &s.tallies {
        assert_eq!(t.applicable + t.not_applicable, s.graphs_tested, "{id}");
        assert_eq!(t.held, t.applicable, "{id}");
    }
    // hypotheses that hold on every unicyclic graph
    for id in [TheoremId::Lem2, TheoremId::Main, TheoremId::Th11, TheoremId::Zhang] {
        assert_eq!(s.tallies[&id].not_applicable, 0, "{id}");
    }
}

#[test]
fn every_theorem_on_labeled_unicyclic_graphs() {
    let s = sweep(
        &Family::Unicyclic {
            min_n: 3,
            max_n: 6,
            dedupe: false,
        },
        TheoremId::ALL,
        &SweepOptions::default(),
    )
    .unwrap();
    assert!(s.failures.is_empty());
    assert_eq!(s.graphs_tested, 1 + 15 + 222 + 3660);
}

#[test]
fn sum_defect_is_the_ke_indicator_up_to_nine() {
    for g in unicyclic_upto(9) {
        let o = oracle::independence(&g);
        let defect = o.corona.count_ones() as i64 + o.core.count_ones() as i64 - 2 * o.alpha as i64;
        let expected = if oracle_ke(&g) { 0 } else { 1 };
        assert_eq!(defect, expected, "{g:?}");
        assert_eq!(classify_sum_defect(&g, &b()).unwrap(), defect);
    }
}

fn structural_matches_oracle(g: &Graph) -> bool {
    if oracle_ke(g) {
        return false;
    }
    let o = oracle::independence(g);
    let c = oracle::critical(g);
    assert_eq!(structural_core(g, &b()).unwrap().mask().unwrap(), o.core, "{g:?}");
    assert_eq!(structural_corona(g, &b()).unwrap().mask().unwrap(), o.corona, "{g:?}");
    assert_eq!(structural_ker(g, &b()).unwrap().mask().unwrap(), c.ker, "{g:?}");
    assert_eq!(c.ker, o.core, "{g:?}");
    true
}

#[test]
fn structural_sets_on_non_ke_unicyclic_graphs() {
    let checked = unicyclic_upto(8)
        .iter()
        .filter(|g| structural_matches_oracle(g))
        .count();
    assert_eq!(checked, 19);
    let random = (0..300u64)
        .filter(|&seed| structural_matches_oracle(&random_unicyclic(3 + seed as usize % 12, seed).unwrap()))
        .count();
    assert!(random > 0);
}

#[test]
fn ker_equals_core_on_trees_up_to_nine() {
    let s = sweep(
        &Family::Trees {
            min_n: 1,
            max_n: 9,
            dedupe: true,
        },
        &[TheoremId::Th2b],
        &SweepOptions::default(),
    )
    .unwrap();
    assert_eq!(s.graphs_tested, 1 + 1 + 1 + 2 + 3 + 6 + 11 + 23 + 47);
    assert_eq!(s.tallies[&TheoremId::Th2b].held, s.graphs_tested);
    for n in 1..=9 {
        for t in enumerate_trees(n, true, &b()).unwrap() {
            assert_eq!(oracle::critical(&t).ker, oracle::independence(&t).core);
        }
    }
}

#[test]
fn background_theorems_on_random_graphs() {
    let s = sweep(
        &Family::RandomConnected {
            count: 300,
            max_n: 12,
            seed: 11,
        },
        &[
            TheoremId::Zhang,
            TheoremId::Th2a,
            TheoremId::Th11,
            TheoremId::Th1,
            TheoremId::Th4a,
            TheoremId::Th4b,
        ],
        &SweepOptions::default(),
    )
    .unwrap();
    assert_eq!(s.graphs_tested, 300);
    assert!(s.failures.is_empty(), "{:#?}", s.failures);
}

#[test]
fn g2k1_family_values() {
    for k in 1..=6 {
        let g = family_g2k1(k).unwrap();
        let o = oracle::independence(&g);
        let c = oracle::critical(&g);
        assert_eq!(o.alpha, k + 3);
        assert_eq!(c.ker, oracle::mask_of(&g, &["x", "z"]));
        assert_eq!(o.core.count_ones() as usize - c.ker.count_ones() as usize, k);
        let odd: Vec<String> = (1..=k).map(|i| format!("v{}", 2 * i - 1)).collect();
        let mut expected_core = vec!["x", "z"];
        expected_core.extend(odd.iter().map(String::as_str));
        assert_eq!(o.core, oracle::mask_of(&g, &expected_core), "k={k}");
        assert!(oracle_ke(&g));
        assert_eq!(oracle::mu(&g), k + 2);
        assert_eq!(
            critical_difference_bruteforce(&g, &b()).unwrap().ker.mask().unwrap(),
            c.ker
        );
        assert_eq!(
            problem1_class(&g, &b()).unwrap(),
            Some(Problem1Class::CoreDiffersFromKer)
        );
    }
}

#[test]
fn fixture_reference_values() {
    let f1 = fixture(FixtureName::Fig1);
    let o = oracle::independence(&f1);
    assert_eq!((o.alpha, oracle::mu(&f1)), (4, 3));
    assert!(o.family.contains(&oracle::mask_of(&f1, &["a", "b", "c", "x"])));

    let f2 = fixture(FixtureName::Fig2G);
    assert!(!oracle_ke(&f2));
    let mut cycle: Vec<String> = decompose(&f2)
        .unwrap()
        .cycle
        .iter()
        .map(|&v| f2.label(v).to_string())
        .collect();
    cycle.sort();
    assert_eq!(cycle, ["c", "d", "t", "w", "y"]);

    let g1 = fixture(FixtureName::Fig3G1);
    assert!(oracle_ke(&g1));
    assert_eq!(oracle::independence(&g1).core, oracle::mask_of(&g1, &["a", "b", "c"]));
    assert_eq!(oracle::critical(&g1).ker, oracle::mask_of(&g1, &["a", "b"]));
    let g2 = fixture(FixtureName::Fig3G2);
    assert!(oracle_ke(&g2));
    assert_eq!(oracle::independence(&g2).core, oracle::mask_of(&g2, &["x", "y", "z"]));
    assert_eq!(oracle::critical(&g2).ker, oracle::mask_of(&g2, &["x", "y", "z"]));

    let g4 = fixture(FixtureName::Fig4G2);
    assert!(!oracle_ke(&g4));
    assert_eq!(oracle::independence(&g4).core, oracle::mask_of(&g4, &["x", "y"]));

    let g61 = fixture(FixtureName::Fig6G1);
    assert_eq!(oracle::independence(&g61).core, oracle::mask_of(&g61, &["a", "b", "c"]));
    assert_eq!(classify_sum_defect(&g61, &b()).unwrap(), 0);
    let g62 = fixture(FixtureName::Fig6G2);
    assert_eq!(oracle::independence(&g62).core, 0);
    assert_eq!(classify_sum_defect(&g62, &b()).unwrap(), 1);
}

#[test]
fn fixture_two_tree_is_the_pendant_tree() {
    let f2 = fixture(FixtureName::Fig2G);
    let tree = &decompose(&f2).unwrap().pendants[0].tree;
    let tx = fixture(FixtureName::Fig2Tx);
    assert_eq!(tree.to_edge_list(), tx.to_edge_list());
}

#[test]
fn problem_one_partition_up_to_seven() {
    let r = search_problem1(7, 1000, &b()).unwrap();
    assert!(r.core_equals_ker.count > 0 && r.core_differs_from_ker.count > 0);
    let target = canonical_form(&fixture(FixtureName::Fig3G2)).unwrap().form;
    let member = |list: &[kerlab_core::lab::Exemplar]| {
        list.iter().any(|e| {
            canonical_form(&kerlab_core::parse_edge_list(&e.graph).unwrap())
                .unwrap()
                .form
                == target
        })
    };
    assert!(member(&r.core_equals_ker.exemplars));
    assert!(!member(&r.core_differs_from_ker.exemplars));
    let g3 = canonical_form(&family_g2k1(1).unwrap()).unwrap().form;
    assert!(r.core_differs_from_ker.exemplars.iter().any(|e| canonical_form(
        &kerlab_core::parse_edge_list(&e.graph).unwrap()
    )
    .unwrap()
    .form
        == g3));
    // independent recount of the partition
    let (mut eq, mut ne) = (0, 0);
    for g in unicyclic_upto(7) {
        if g.classify_shape().bipartite || !oracle_ke(&g) {
            continue;
        }
        if oracle::critical(&g).ker == oracle::independence(&g).core {
            eq += 1;
        } else {
            ne += 1;
        }
    }
    assert_eq!((r.core_equals_ker.count, r.core_differs_from_ker.count), (eq, ne));
    assert_eq!(search_problem1(3, 5, &b()).unwrap().non_bipartite_ke, 0);
}
