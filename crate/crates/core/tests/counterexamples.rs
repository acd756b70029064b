//! The paired counterexample families and the distance-regular graphs.

use gdwl::biconnect::{bce_forest_forms, bcv_forest_forms, biconnectivity_report, CanonicalMode};
use gdwl::distances::{distance_regular_profile, rd_from_intersection_array, Rational};
use gdwl::generators::{example1, example2, named_graph, NAMED_GRAPHS};
use gdwl::refine::Algorithm;
use gdwl::refine::{distinguishable, refine_ds_wl, InterningContext, SubgraphPolicy};

fn algo(name: &str) -> Algorithm {
    name.parse().unwrap()
}

const EXAMPLE1_PARAMS: [(usize, usize); 8] = [
    (2, 2),
    (4, 1),
    (1, 4),
    (1, 3),
    (3, 1),
    (5, 1),
    (6, 1),
    (3, 2),
];

#[test]
fn example1_cut_structure() {
    for (m, k) in EXAMPLE1_PARAMS {
        let (g1, g2) = example1(m, k).unwrap();
        let n = 2 * k * m + 1;
        assert_eq!(g1.node_count(), n);
        assert!(
            biconnectivity_report(&g1).cut_vertices.is_empty(),
            "({m},{k})"
        );
        let r2 = biconnectivity_report(&g2);
        assert!(r2.is_cut_vertex(n - 1), "({m},{k})");
        if k == 1 {
            assert_eq!(r2.cut_vertices, vec![m - 1, 2 * m - 1, n - 1]);
            assert_eq!(r2.cut_edges, vec![(m - 1, n - 1), (2 * m - 1, n - 1)]);
        }
    }
}

#[test]
fn example2_cut_structure() {
    for m in 3..=8 {
        let (g1, g2) = example2(m).unwrap();
        let r1 = biconnectivity_report(&g1);
        assert!(r1.cut_vertices.is_empty() && r1.cut_edges.is_empty());
        let r2 = biconnectivity_report(&g2);
        assert_eq!(r2.cut_vertices, vec![m - 1, 2 * m - 1]);
        assert_eq!(r2.cut_edges, vec![(m - 1, 2 * m - 1)]);
    }
}

#[test]
fn color_refinement_cannot_separate_any_pair() {
    for (m, k) in EXAMPLE1_PARAMS {
        let (g1, g2) = example1(m, k).unwrap();
        assert_eq!(g1.degree_sequence(), g2.degree_sequence());
        assert!(
            !distinguishable(&g1, &g2, &algo("1wl")).unwrap(),
            "({m},{k})"
        );
    }
    for m in 3..=8 {
        let (g1, g2) = example2(m).unwrap();
        assert!(!distinguishable(&g1, &g2, &algo("1wl")).unwrap(), "{m}");
    }
}

#[test]
fn biconnectivity_aware_algorithms_separate_every_pair() {
    let mut pairs: Vec<_> = EXAMPLE1_PARAMS
        .iter()
        .map(|&(m, k)| example1(m, k).unwrap())
        .collect();
    pairs.extend((3..=6).map(|m| example2(m).unwrap()));
    for (g1, g2) in &pairs {
        assert_ne!(
            bcv_forest_forms(g1, CanonicalMode::KindAndSize),
            bcv_forest_forms(g2, CanonicalMode::KindAndSize)
        );
        for name in ["rdwl", "gdwl", "2fwl", "dsswl:nm"] {
            assert!(distinguishable(g1, g2, &algo(name)).unwrap(), "{name}");
        }
    }
}

#[test]
fn shortest_paths_miss_the_wheel_pair() {
    let (g1, g2) = example1(1, 4).unwrap();
    assert!(!distinguishable(&g1, &g2, &algo("spdwl")).unwrap());
    assert_eq!(
        bce_forest_forms(&g1, CanonicalMode::KindAndSize),
        bce_forest_forms(&g2, CanonicalMode::KindAndSize)
    );
    // bridges differ once k = 1, and shortest paths see them
    for m in 3..=6 {
        let (g1, g2) = example1(m, 1).unwrap();
        assert!(distinguishable(&g1, &g2, &algo("spdwl")).unwrap());
    }
}

#[test]
fn unmarked_ego_networks_miss_the_wheel_pairs() {
    for k in [4, 5, 6] {
        let (g1, g2) = example1(1, k).unwrap();
        for name in ["dsswl:ego:1", "dsswl:ego:2"] {
            assert!(
                !distinguishable(&g1, &g2, &algo(name)).unwrap(),
                "{name} k={k}"
            );
        }
    }
}

#[test]
fn ego_networks_see_triangles_in_the_smallest_wheel_pair() {
    // with k = 3 the second graph's cycles are triangles
    let (g1, g2) = example1(1, 3).unwrap();
    assert!(distinguishable(&g1, &g2, &algo("dsswl:ego:1")).unwrap());
}

#[test]
fn subgraph_representations_give_the_hub_one_color() {
    let (g1, g2) = example1(1, 4).unwrap();
    for policy in [SubgraphPolicy::NodeMarking, SubgraphPolicy::NodeDeletion] {
        let mut ctx = InterningContext::new();
        let c = refine_ds_wl(&[g1.clone(), g2.clone()], policy, &mut ctx).unwrap();
        assert_eq!(c[0].color(8), c[1].color(8), "{policy}");
    }
}

#[test]
fn short_cycle_counts_miss_long_cycles() {
    let (g1, g2) = example1(6, 1).unwrap();
    assert!(!distinguishable(&g1, &g2, &algo("scwl:triangle,c4,c5")).unwrap());
    let (g1, g2) = example2(6).unwrap();
    assert!(!distinguishable(&g1, &g2, &algo("scwl:triangle,c4,c5")).unwrap());
    // a pattern as long as the short cycles breaks the tie
    let (g1, g2) = example2(5).unwrap();
    assert!(distinguishable(&g1, &g2, &algo("scwl:c5")).unwrap());
}

#[test]
fn distance_regular_arrays() {
    let cases = [
        ("dodecahedron", vec![3, 6, 6, 3, 1], "{3,2,1,1,1;1,1,1,2,3}"),
        ("desargues", vec![3, 6, 6, 3, 1], "{3,2,2,1,1;1,1,2,2,3}"),
        ("rook4x4", vec![6, 9], "{6,3;1,2}"),
        ("shrikhande", vec![6, 9], "{6,3;1,2}"),
        ("petersen", vec![3, 6], "{3,2;1,1}"),
    ];
    for (name, kappa, iota) in cases {
        let p = distance_regular_profile(&named_graph(name).unwrap());
        assert!(p.is_drg, "{name}");
        assert_eq!(p.kappa, Some(kappa), "{name}");
        assert_eq!(p.iota.unwrap().to_string(), iota, "{name}");
    }
}

#[test]
fn distance_regular_verdicts() {
    let g = |n| named_graph(n).unwrap();
    let (dodeca, desargues) = (g("dodecahedron"), g("desargues"));
    assert!(!distinguishable(&dodeca, &desargues, &algo("spdwl")).unwrap());
    assert!(distinguishable(&dodeca, &desargues, &algo("rdwl")).unwrap());
    assert!(distinguishable(&dodeca, &desargues, &algo("2fwl")).unwrap());
    let (rook, shrikhande) = (g("rook4x4"), g("shrikhande"));
    for name in ["1wl", "spdwl", "rdwl", "gdwl", "2fwl"] {
        assert!(
            !distinguishable(&rook, &shrikhande, &algo(name)).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn resistance_recursion_increases() {
    for name in NAMED_GRAPHS {
        let graph = named_graph(name).unwrap();
        let r = rd_from_intersection_array(&distance_regular_profile(&graph), graph.node_count())
            .unwrap();
        assert_eq!(r[0], Rational::from_integer(0.into()));
        assert!(r.windows(2).all(|w| w[0] < w[1]), "{name}");
    }
}
