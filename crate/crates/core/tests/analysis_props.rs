mod common;

use std::path::PathBuf;

use common::to_graph;
use rand::Rng;
use wayfinder::analysis::{path_stats, path_stats_with, ring_lattice_with_shortcuts, PathStats};
use wayfinder::{write_edge_list, Execution, Graph};
use wayfinder_oracle::{brute_force_all_pairs, pair_statistics, random_graph, rng, SmallGraph};

fn oracle_stats(g: &SmallGraph) -> PathStats {
    let (mean, diameter, reach, unreach) = pair_statistics(&brute_force_all_pairs(g));
    PathStats {
        mean_geodesic: mean,
        diameter,
        reachable_pairs: reach,
        unreachable_pairs: unreach,
    }
}

/// Rebuild a lattice as a SmallGraph so the oracle sees the same edges.
fn as_small(graph: &Graph) -> SmallGraph {
    let idx = |s: &str| s.parse::<usize>().unwrap();
    SmallGraph::undirected(
        graph.node_count(),
        graph
            .edges()
            .iter()
            .map(|e| (idx(e.from.as_str()), idx(e.to.as_str()), e.cost.value()))
            .collect(),
    )
}

#[test]
fn stats_match_brute_force_on_small_graphs() {
    let mut r = rng(51);
    for i in 0..150 {
        let g = random_graph(&mut r, 1 + i % 8, 0.4, 1..=6);
        let graph = to_graph(&g);
        let want = oracle_stats(&g);
        assert_eq!(
            path_stats_with(&graph, Execution::Sequential),
            want,
            "{g:?}"
        );
        assert_eq!(path_stats_with(&graph, Execution::Parallel), want, "{g:?}");
    }
}

#[test]
fn small_lattices_match_brute_force() {
    let mut r = rng(52);
    for n in 3..=8 {
        for k in (2..n).step_by(2) {
            let free = n * (n - 1) / 2 - n * k / 2;
            for _ in 0..3 {
                let s = r.random_range(0..=free.min(4));
                let graph = ring_lattice_with_shortcuts(n, k, s, r.random()).unwrap();
                assert_eq!(path_stats(&graph), oracle_stats(&as_small(&graph)));
            }
        }
    }
}

#[test]
fn complete_graphs_have_unit_mean_and_diameter() {
    for n in 2..=12 {
        let edges = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b, 1.0)))
            .collect();
        let stats = path_stats(&to_graph(&SmallGraph::undirected(n, edges)));
        assert_eq!(stats.mean_geodesic, 1.0);
        assert_eq!(stats.diameter, 1.0);
        assert_eq!(stats.reachable_pairs, (n * (n - 1)) as u64);
    }
}

#[test]
fn shortcuts_never_increase_mean() {
    for seed in 0..20 {
        let mut prev = path_stats(&ring_lattice_with_shortcuts(30, 2, 0, seed).unwrap());
        for s in 1..=8 {
            // same seed, so each lattice is the previous one plus one edge
            let next = path_stats(&ring_lattice_with_shortcuts(30, 2, s, seed).unwrap());
            assert!(next.mean_geodesic <= prev.mean_geodesic);
            assert!(next.diameter <= prev.diameter);
            prev = next;
        }
    }
}

#[test]
fn shortcuts_shrink_the_world() {
    for (n, k, s) in [(20, 2, 5), (50, 2, 10)] {
        let ring = path_stats(&ring_lattice_with_shortcuts(n, k, 0, 1).unwrap());
        let small = path_stats(&ring_lattice_with_shortcuts(n, k, s, 1).unwrap());
        assert!(
            small.mean_geodesic < ring.mean_geodesic,
            "n={n}: {small:?} vs {ring:?}"
        );
    }
    // plain ring of 50: distances 1..=25 twice over, minus the duplicate 25
    let ring = path_stats(&ring_lattice_with_shortcuts(50, 2, 0, 0).unwrap());
    assert_eq!(
        ring.mean_geodesic,
        (2.0 * (1..=24).sum::<u32>() as f64 + 25.0) / 49.0
    );
    assert_eq!(ring.diameter, 25.0);
}

#[test]
fn seeded_lattice_is_stable() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden/lattice_n30_k2_s10_seed1.edges");
    let text = write_edge_list(&ring_lattice_with_shortcuts(30, 2, 10, 1).unwrap());
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    let golden =
        std::fs::read_to_string(&path).expect("golden lattice missing; run with UPDATE_GOLDEN=1");
    assert_eq!(text, golden);
}

#[test]
fn bad_lattice_parameters_are_rejected() {
    assert!(ring_lattice_with_shortcuts(2, 2, 0, 0).is_err());
    assert!(ring_lattice_with_shortcuts(10, 3, 0, 0).is_err());
    assert!(ring_lattice_with_shortcuts(10, 10, 0, 0).is_err());
    assert!(ring_lattice_with_shortcuts(4, 2, 3, 0).is_err());
    assert!(ring_lattice_with_shortcuts(4, 2, 2, 0).is_ok());
}
