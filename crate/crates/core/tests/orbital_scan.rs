//! Exact outcome of the orbital-graph scans of `A_n` on ordered pairs and
//! 2-subsets for `n = 5, 6, 7`.

use arcgraph::constructions::{build_alt, orbital_graph, ordered_pairs_action, two_subsets_action};
use arcgraph::verify::scan_orbital_graphs;

#[test]
fn ordered_pairs_have_no_hits() {
    for n in [5, 6, 7] {
        let g = ordered_pairs_action(&build_alt(n)).group;
        let scan = scan_orbital_graphs(&g, 0, 2, 10_000).unwrap();
        assert!(scan.iter().all(|r| !r.is_hit()), "A{n}: {scan:?}");
        // (0,1) -> (1,0) is a self-paired suborbit of length 1
        assert!(scan.iter().any(|r| r.suborbit_length == 1 && r.self_paired));
    }
}

#[test]
fn two_subsets_hit_only_the_petersen_graph() {
    for n in [6, 7] {
        let g = two_subsets_action(&build_alt(n)).group;
        let scan = scan_orbital_graphs(&g, 0, 2, 10_000).unwrap();
        assert!(scan.iter().all(|r| !r.is_hit()), "A{n}: {scan:?}");
    }
    let pairs = two_subsets_action(&build_alt(5));
    let scan = scan_orbital_graphs(&pairs.group, 0, 2, 10_000).unwrap();
    let hits: Vec<_> = scan.iter().filter(|r| r.is_hit()).collect();
    assert_eq!(hits.len(), 1);
    let hit = hits[0];
    assert_eq!(hit.suborbit_length, 3);
    // the representative is a 2-subset disjoint from {0, 1}
    let (a, b) = pairs.points[hit.representative];
    assert!(a > 1 && b > 1);

    let petersen = orbital_graph(&pairs.group, 0, hit.representative).unwrap();
    assert_eq!(petersen.graph().vertex_count(), 10);
    assert_eq!(petersen.graph().edge_count(), 15);
    // A5 acts regularly on the 60 2-arcs; the 3-arcs are not reached
    let two = petersen.is_s_arc_transitive(2).unwrap();
    assert!(two.transitive);
    assert_eq!(two.arc_stabilizer_order, 1u32.into());
    assert!(!petersen.is_s_arc_transitive(3).unwrap().transitive);
}
