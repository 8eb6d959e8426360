mod common;

use common::{name, to_graph};
use wayfinder::dijkstra::DEFAULT_PATH_CAP;
use wayfinder::{all_shortest_paths, extract_path, run_dijkstra, validate_path, Cost, Graph};
use wayfinder_oracle::{
    all_graphs, brute_force_distances, brute_force_shortest_paths, random_connected_graph,
    random_graph, rng, SmallGraph,
};

fn dists(graph: &Graph, origin: usize) -> Vec<Option<f64>> {
    let run = run_dijkstra(graph, &name(origin)).unwrap();
    (0..graph.node_count())
        .map(|i| run.table.dist(&name(i)).map(Cost::value))
        .collect()
}

/// Reference worksheet that literally scans every unshaded labelled node for
/// the lowest (dist, id) at each step.
fn scan_worksheet(g: &SmallGraph, origin: usize) -> (Vec<String>, Vec<Option<String>>) {
    let adj = g.adjacency();
    let mut dist: Vec<Option<f64>> = vec![None; g.n];
    let mut last: Vec<Option<usize>> = vec![None; g.n];
    let mut shaded = vec![false; g.n];
    dist[origin] = Some(0.0);
    let mut current = origin;
    let mut order = Vec::new();
    loop {
        for &(v, c) in &adj[current] {
            let cand = dist[current].unwrap() + c;
            if dist[v].is_none_or(|d| cand < d) {
                dist[v] = Some(cand);
                last[v] = Some(current);
            }
        }
        shaded[current] = true;
        let next = (0..g.n)
            .filter(|&v| !shaded[v] && dist[v].is_some())
            .min_by(|&a, &b| {
                dist[a]
                    .unwrap()
                    .partial_cmp(&dist[b].unwrap())
                    .unwrap()
                    .then_with(|| name(a).cmp(&name(b)))
            });
        match next {
            Some(v) => {
                order.push(name(v));
                current = v;
            }
            None => break,
        }
    }
    (order, last.into_iter().map(|l| l.map(name)).collect())
}

#[test]
fn exhaustive_small_graphs_match_brute_force() {
    let mut checked = 0;
    for n in 1..=4 {
        for g in all_graphs(n, &[1.0, 2.0, 3.0]).filter(SmallGraph::is_connected) {
            let graph = to_graph(&g);
            for o in 0..n {
                assert_eq!(
                    dists(&graph, o),
                    brute_force_distances(&g, o),
                    "{g:?} from {o}"
                );
            }
            checked += 1;
        }
    }
    assert!(checked >= 500, "only {checked} graphs");
}

#[test]
fn random_graphs_match_brute_force() {
    let mut r = rng(11);
    for i in 0..300 {
        let n = 2 + i % 7;
        let g = random_graph(&mut r, n, 0.45, 0..=10);
        let graph = to_graph(&g);
        for o in 0..n {
            assert_eq!(
                dists(&graph, o),
                brute_force_distances(&g, o),
                "{g:?} from {o}"
            );
        }
    }
}

#[test]
fn heap_selection_is_identical_to_scanning() {
    let mut r = rng(12);
    for i in 0..300 {
        // small cost range forces plenty of ties, zero costs included
        let g = random_graph(&mut r, 3 + i % 6, 0.5, 0..=2);
        let graph = to_graph(&g);
        for o in 0..g.n {
            let run = run_dijkstra(&graph, &name(o)).unwrap();
            let (order, last) = scan_worksheet(&g, o);
            let engine_order: Vec<String> = run.selections.iter().map(|n| n.to_string()).collect();
            assert_eq!(engine_order, order, "{g:?} from {o}");
            for (i, l) in last.iter().enumerate() {
                let got = run
                    .table
                    .get(&name(i))
                    .unwrap()
                    .last
                    .as_ref()
                    .map(|n| n.to_string());
                assert_eq!(&got, l, "last of {i} in {g:?}");
            }
        }
    }
}

#[test]
fn fixpoint_and_tree_invariants() {
    let mut r = rng(13);
    for i in 0..300 {
        let g = random_graph(&mut r, 2 + i % 9, 0.35, 0..=9);
        let graph = to_graph(&g);
        for o in 0..g.n {
            let run = run_dijkstra(&graph, &name(o)).unwrap();
            let t = &run.table;
            for e in graph.edges() {
                for (u, v) in [(&e.from, &e.to), (&e.to, &e.from)] {
                    if let (Some(du), Some(dv)) = (t.dist(u.as_str()), t.dist(v.as_str())) {
                        assert!(dv <= du + e.cost);
                    }
                }
            }
            for (v, edge) in &run.tree.links {
                assert_eq!(run.tree.dist[v], run.tree.dist[&edge.from] + edge.cost);
                let mut steps = 0;
                let mut at = v;
                while let Some(p) = run.tree.parent(at.as_str()) {
                    at = p;
                    steps += 1;
                    assert!(steps <= graph.node_count());
                }
                assert_eq!(at, &run.tree.origin);
            }
            let selected: Vec<Cost> = run
                .selections
                .iter()
                .map(|n| t.dist(n.as_str()).unwrap())
                .collect();
            assert!(selected.windows(2).all(|w| w[0] <= w[1]));
            for node in graph.nodes() {
                let label = t.get(node.as_str()).unwrap();
                assert_eq!(label.shaded, label.dist.is_some());
                assert_eq!(
                    label.last.is_some(),
                    label.dist.is_some() && *node != t.origin
                );
            }
        }
    }
}

#[test]
fn adding_an_edge_never_increases_dist() {
    let mut r = rng(14);
    for i in 0..200 {
        let n = 3 + i % 6;
        let g = random_graph(&mut r, n, 0.3, 1..=9);
        let mut added = None;
        for u in 0..n {
            for v in u + 1..n {
                if added.is_none() && !g.has_pair(u, v) {
                    added = Some((u, v, (i % 5) as f64));
                }
            }
        }
        let Some(edge) = added else { continue };
        let before = to_graph(&g);
        let after = to_graph(&g.with_edge(edge));
        for o in 0..n {
            for (b, a) in dists(&before, o).into_iter().zip(dists(&after, o)) {
                match (b, a) {
                    (Some(b), Some(a)) => assert!(a <= b),
                    (Some(_), None) => panic!("edge addition disconnected a node"),
                    _ => {}
                }
            }
        }
    }
}

#[test]
fn extracted_and_enumerated_paths_validate() {
    let mut r = rng(15);
    for i in 0..150 {
        let g = random_connected_graph(&mut r, 2 + i % 6, 0.5, 1..=3);
        let graph = to_graph(&g);
        for o in 0..g.n {
            let run = run_dijkstra(&graph, &name(o)).unwrap();
            for d in 0..g.n {
                let path = extract_path(&run.tree, &name(d)).unwrap();
                assert!(validate_path(&graph, &path));
                assert_eq!(path.total_cost, run.tree.dist[name(d).as_str()]);

                let all = all_shortest_paths(&graph, &name(o), &name(d), DEFAULT_PATH_CAP).unwrap();
                assert!(all.iter().all(|p| validate_path(&graph, p)));
                assert!(all.iter().all(|p| p.total_cost == path.total_cost));
                let seqs: Vec<Vec<String>> = all
                    .iter()
                    .map(|p| p.nodes().into_iter().map(|n| n.to_string()).collect())
                    .collect();
                let expect: Vec<Vec<String>> = brute_force_shortest_paths(&g, o, d)
                    .into_iter()
                    .map(|p| p.into_iter().map(name).collect())
                    .collect();
                assert_eq!(seqs, expect, "{g:?} {o}->{d}");
            }
        }
    }
}

#[test]
fn enumeration_cap_truncates_in_order() {
    // 3 parallel two-hop routes in series twice: 9 equal shortest paths
    let text = "undirected\ns a1 1\ns a2 1\ns a3 1\na1 m 1\na2 m 1\na3 m 1\n\
                m b1 1\nm b2 1\nm b3 1\nb1 t 1\nb2 t 1\nb3 t 1\n";
    let graph = wayfinder::parse_edge_list(text).unwrap();
    let all = all_shortest_paths(&graph, "s", "t", DEFAULT_PATH_CAP).unwrap();
    assert_eq!(all.len(), 9);
    let first4 = all_shortest_paths(&graph, "s", "t", 4).unwrap();
    assert_eq!(first4, all[..4].to_vec());
}
