//! The planar generator against the census, and census-level properties.

use std::collections::BTreeSet;

use balgraph::balance::balanced;
use balgraph::enumeration::{count_balanced_cubic, enumerate_cubic_bipartite, run_census, CensusTask};
use balgraph::graph::canonical_form;
use balgraph::planar::{
    a1_sites, a1_subdivision_in_face, batagelj_enumerate, cube_seed, diamond_inflation, planarity_test,
    verify_sv_claims,
};
use balgraph_testkit as kit;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn generator_finds_every_three_connected_planar_census_graph() {
    let max_n = 20;
    let generated: BTreeSet<_> = batagelj_enumerate(max_n)
        .unwrap()
        .iter()
        .map(|g| canonical_form(g.graph()).unwrap())
        .collect();
    let mut from_census = BTreeSet::new();
    for d in (8..=max_n).step_by(2) {
        for g in enumerate_cubic_bipartite(d).unwrap() {
            if g.vertex_connectivity().unwrap() == 3 && planarity_test(&g).unwrap().is_some() {
                from_census.insert(canonical_form(&g).unwrap());
            }
        }
    }
    assert_eq!(generated, from_census);
}

#[test]
fn generated_graphs_satisfy_the_local_claims() {
    for g in batagelj_enumerate(18).unwrap() {
        let x = g.graph();
        assert_eq!(x.regular_degree(), Some(3));
        assert!(x.is_bipartite());
        assert!(!balanced(x).unwrap());
        if x.n() <= 14 {
            assert_eq!(kit::connectivity_by_flow(x), 3);
        }
        let report = verify_sv_claims(&g).unwrap();
        assert!(report.holds(), "{:?}", report.counterexamples);
    }
}

#[test]
fn random_operation_sequences_stay_in_the_class() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let mut g = cube_seed();
        for _ in 0..4 {
            g = if rng.gen_bool(0.5) {
                diamond_inflation(&g, rng.gen_range(0..g.graph().n())).unwrap()
            } else {
                let sites = a1_sites(&g);
                let s = sites[rng.gen_range(0..sites.len())];
                a1_subdivision_in_face(&g, s.e1, s.e2, s.face).unwrap()
            };
            let x = g.graph();
            assert_eq!(x.regular_degree(), Some(3));
            assert!(x.is_bipartite());
            assert_eq!(x.vertex_connectivity().unwrap(), 3);
            assert!(planarity_test(x).unwrap().is_some());
            assert_eq!(x.n() + g.face_count(), x.edge_count() + 2);
        }
    }
}

#[test]
fn no_balanced_census_graph_is_planar() {
    for d in [6, 12, 18, 24] {
        for g in count_balanced_cubic(d).unwrap().balanced_graphs {
            assert!(planarity_test(&g).unwrap().is_none());
        }
    }
}

#[test]
fn census_counts() {
    let expected = [(6, 1), (8, 1), (10, 2), (12, 5), (14, 13), (16, 38), (18, 149)];
    for (d, total) in expected {
        let report = run_census(CensusTask::new(d).unwrap()).unwrap();
        assert_eq!(report.total_cubic_bipartite, Some(total), "d = {d}");
        let pruned = count_balanced_cubic(d).unwrap();
        assert_eq!(pruned.balanced_count, report.balanced_count, "d = {d}");
        assert_eq!(pruned.witnesses, report.witnesses);
    }
}

#[test]
fn partitions_split_the_census_exactly() {
    let full = run_census(CensusTask::new(16).unwrap()).unwrap();
    let modulus = 3;
    let mut total = 0;
    let mut witnesses = Vec::new();
    for res in 0..modulus {
        let part = run_census(CensusTask::new(16).unwrap().partition(modulus, res).unwrap()).unwrap();
        total += part.total_cubic_bipartite.unwrap();
        witnesses.extend(part.witnesses);
    }
    assert_eq!(Some(total), full.total_cubic_bipartite);
    witnesses.sort();
    let mut expected = full.witnesses.clone();
    expected.sort();
    assert_eq!(witnesses, expected);

    let balanced_full = count_balanced_cubic(18).unwrap();
    let mut parts = Vec::new();
    for res in 0..4 {
        let task = CensusTask::new(18)
            .unwrap()
            .balanced_only(true)
            .partition(4, res)
            .unwrap();
        parts.extend(run_census(task).unwrap().witnesses);
    }
    parts.sort();
    let mut expected = balanced_full.witnesses;
    expected.sort();
    assert_eq!(parts, expected);
}

#[test]
fn deleting_a_twin_keeps_balance() {
    for d in [12, 18] {
        for g in count_balanced_cubic(d).unwrap().balanced_graphs {
            for class in g.twin_classes().classes.iter().filter(|c| c.len() > 1) {
                let h = g.delete_vertex(class[0]).unwrap();
                assert!(h.is_connected());
                assert!(balanced(&h).unwrap());
            }
        }
    }
}
