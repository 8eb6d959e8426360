mod common;

use common::{name, to_graph};
use rand::seq::SliceRandom;
use rand::Rng;
use wayfinder::planner::{metric_closure, solve_tsp_exact, solve_tsp_greedy, Tour};
use wayfinder::{parse_edge_list, validate_path, Graph, NodeId};
use wayfinder_oracle::{brute_force_tour, floyd_warshall, random_connected_graph, rng};

fn check_tour(graph: &Graph, tour: &Tour, terminals: &[NodeId], home: &str) {
    assert_eq!(tour.stops.first().unwrap().as_str(), home);
    assert_eq!(tour.stops.last().unwrap().as_str(), home);
    let mut interior: Vec<NodeId> = tour.stops[1..tour.stops.len() - 1].to_vec();
    interior.sort();
    let mut want: Vec<NodeId> = terminals
        .iter()
        .filter(|t| t.as_str() != home)
        .cloned()
        .collect();
    want.sort();
    assert_eq!(interior, want);
    assert!(tour.legs.iter().all(|l| validate_path(graph, l)));
    let total: wayfinder::Cost = tour.legs.iter().map(|l| l.total_cost).sum();
    assert_eq!(total, tour.total_cost);
    for (leg, pair) in tour.legs.iter().zip(tour.stops.windows(2)) {
        assert_eq!(leg.origin, pair[0]);
        assert_eq!(leg.destination, pair[1]);
    }
    let walk = tour.walk();
    assert_eq!(walk.first(), walk.last());
}

#[test]
fn exact_matches_independent_enumerator() {
    let mut r = rng(31);
    for i in 0..60 {
        let n = 4 + i % 7;
        let g = random_connected_graph(&mut r, n, 0.4, 1..=9);
        let graph = to_graph(&g);
        let k = (2 + i % 7).min(n);
        let mut picks: Vec<usize> = (0..n).collect();
        picks.shuffle(&mut r);
        picks.truncate(k);
        picks.sort_by_key(|&p| name(p));
        let terminals: Vec<NodeId> = picks
            .iter()
            .map(|&p| NodeId::new(name(p)).unwrap())
            .collect();
        let home = name(picks[r.random_range(0..k)]);

        let mc = metric_closure(&graph, &terminals).unwrap();
        let exact = solve_tsp_exact(&mc, &home).unwrap();
        let greedy = solve_tsp_greedy(&mc, &home).unwrap();
        check_tour(&graph, &exact, &terminals, &home);
        check_tour(&graph, &greedy, &terminals, &home);
        assert!(greedy.total_cost >= exact.total_cost);

        let all = floyd_warshall(&g);
        let dist: Vec<Vec<f64>> = picks
            .iter()
            .map(|&a| picks.iter().map(|&b| all[a][b].unwrap()).collect())
            .collect();
        let h = picks.iter().position(|&p| name(p) == home).unwrap();
        let (cost, _) = brute_force_tour(&dist, h);
        assert_eq!(
            exact.total_cost.value(),
            cost,
            "{g:?} {terminals:?} home {home}"
        );
    }
}

#[test]
fn relabelling_keeps_exact_cost() {
    let mut r = rng(32);
    for _ in 0..30 {
        let g = random_connected_graph(&mut r, 6, 0.5, 1..=9);
        let mut perm: Vec<usize> = (0..6).collect();
        perm.shuffle(&mut r);
        let text = g.to_edge_list();
        let renamed: String = text
            .lines()
            .map(|l| {
                l.split(' ')
                    .map(
                        |tok| match tok.strip_prefix('v').and_then(|d| d.parse::<usize>().ok()) {
                            Some(i) => format!("w{}", perm[i]),
                            None => tok.to_string(),
                        },
                    )
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n");
        let a = to_graph(&g);
        let b = parse_edge_list(&renamed).unwrap();
        let ta: Vec<NodeId> = a.nodes().to_vec();
        let tb: Vec<NodeId> = b.nodes().to_vec();
        let ca = solve_tsp_exact(&metric_closure(&a, &ta).unwrap(), "v0").unwrap();
        let cb =
            solve_tsp_exact(&metric_closure(&b, &tb).unwrap(), &format!("w{}", perm[0])).unwrap();
        assert_eq!(ca.total_cost, cb.total_cost);
    }
}

#[test]
fn six_terminals_on_extended_fig2() {
    let text = format!(
        "{}G F 4\nG A 9\nH G 2\nH B 6\n",
        wayfinder::fixtures::FIG2_EDGES
    );
    let graph = parse_edge_list(&text).unwrap();
    let mut r = rng(33);
    for _ in 0..20 {
        let mut nodes: Vec<NodeId> = graph.nodes().to_vec();
        nodes.shuffle(&mut r);
        nodes.truncate(6);
        let home = nodes[0].to_string();
        let mc = metric_closure(&graph, &nodes).unwrap();
        let exact = solve_tsp_exact(&mc, &home).unwrap();
        let greedy = solve_tsp_greedy(&mc, &home).unwrap();
        assert!(greedy.total_cost >= exact.total_cost);
        check_tour(&graph, &exact, &nodes, &home);
    }
}
