//! Closed tours through a set of destinations.
//!
//! Tours run over the metric closure of the terminal set: the cost of going
//! from one terminal to the next is their shortest-path distance, and each
//! leg is expanded back into a real walk in the network. Legs may pass
//! through the same intermediate node more than once.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dijkstra::{extract_path, run_dijkstra};
use crate::graph::{Cost, Graph, GraphError, NodeId, Path};
use crate::par::Execution;

/// Largest terminal set the exhaustive solver accepts.
pub const MAX_EXACT_TERMINALS: usize = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlanError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("no route from {from} to {to}")]
    DisconnectedTerminals { from: NodeId, to: NodeId },
    #[error("{count} terminals is too many for the exact solver (limit {MAX_EXACT_TERMINALS})")]
    TooManyTerminals { count: usize },
    #[error("{0} is not one of the terminals")]
    NotATerminal(String),
}

/// Pairwise shortest distances and witness paths between terminals.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricClosure {
    terminals: Vec<NodeId>,
    /// `dist[i][j]` between `terminals[i]` and `terminals[j]`.
    dist: Vec<Vec<Cost>>,
    witness: BTreeMap<(usize, usize), Path>,
}

impl MetricClosure {
    /// Terminals in id order.
    pub fn terminals(&self) -> &[NodeId] {
        &self.terminals
    }

    pub fn dist(&self, from: &str, to: &str) -> Option<Cost> {
        let (i, j) = (self.position(from)?, self.position(to)?);
        Some(self.dist[i][j])
    }

    /// Shortest path realising `dist(from, to)`; `None` for `from == to`.
    pub fn witness(&self, from: &str, to: &str) -> Option<&Path> {
        let (i, j) = (self.position(from)?, self.position(to)?);
        self.witness.get(&(i, j))
    }

    /// All ordered pairs of distinct terminals with their distance.
    pub fn pairs(&self) -> impl Iterator<Item = (&NodeId, &NodeId, Cost)> + '_ {
        self.witness
            .keys()
            .map(|&(i, j)| (&self.terminals[i], &self.terminals[j], self.dist[i][j]))
    }

    fn position(&self, node: &str) -> Option<usize> {
        self.terminals
            .binary_search_by(|t| t.as_str().cmp(node))
            .ok()
    }

    fn leg(&self, i: usize, j: usize) -> Path {
        self.witness[&(i, j)].clone()
    }

    fn tour(&self, home: usize, order: &[usize]) -> Tour {
        let mut stops = vec![home];
        stops.extend_from_slice(order);
        stops.push(home);
        let legs: Vec<Path> = if order.is_empty() {
            Vec::new()
        } else {
            stops.windows(2).map(|w| self.leg(w[0], w[1])).collect()
        };
        let total_cost = legs.iter().map(|l| l.total_cost).sum();
        Tour {
            stops: stops.iter().map(|&i| self.terminals[i].clone()).collect(),
            legs,
            total_cost,
        }
    }

    /// Cost of the closed tour `home → order… → home`, summed in walking order.
    fn cycle_cost(&self, home: usize, order: &[usize]) -> Cost {
        let mut at = home;
        let mut total = Cost::ZERO;
        for &next in order {
            total = total + self.dist[at][next];
            at = next;
        }
        if order.is_empty() {
            total
        } else {
            total + self.dist[at][home]
        }
    }

    fn home_index(&self, home: &str) -> Result<usize, PlanError> {
        self.position(home)
            .ok_or_else(|| PlanError::NotATerminal(home.to_string()))
    }
}

/// A closed walk from `home` through every terminal and back.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tour {
    /// Terminals in visiting order; first and last are the home node.
    pub stops: Vec<NodeId>,
    /// One shortest path per consecutive pair of stops.
    pub legs: Vec<Path>,
    pub total_cost: Cost,
}

impl Tour {
    /// Node-by-node walk in the underlying network.
    pub fn walk(&self) -> Vec<&NodeId> {
        let mut walk = vec![&self.stops[0]];
        for leg in &self.legs {
            walk.extend(leg.edges.iter().map(|e| &e.to));
        }
        walk
    }
}

impl fmt::Display for Tour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let stops: Vec<&str> = self.stops.iter().map(NodeId::as_str).collect();
        write!(f, "{} (cost {})", stops.join(" "), self.total_cost)
    }
}

pub fn metric_closure(graph: &Graph, terminals: &[NodeId]) -> Result<MetricClosure, PlanError> {
    metric_closure_with(graph, terminals, Execution::default())
}

/// Runs one shortest-path search per terminal, concurrently when `exec`
/// allows it.
pub fn metric_closure_with(
    graph: &Graph,
    terminals: &[NodeId],
    exec: Execution,
) -> Result<MetricClosure, PlanError> {
    let mut terminals = terminals.to_vec();
    terminals.sort();
    terminals.dedup();
    for t in &terminals {
        graph.index_of(t.as_str())?;
    }

    let rows = exec.map(&terminals, |from| {
        let run = run_dijkstra(graph, from.as_str())?;
        let mut dist = Vec::with_capacity(terminals.len());
        let mut paths = Vec::new();
        for to in &terminals {
            let Some(&d) = run.tree.dist.get(to) else {
                return Err(PlanError::DisconnectedTerminals {
                    from: from.clone(),
                    to: to.clone(),
                });
            };
            dist.push(d);
            if to != from {
                paths.push(extract_path(&run.tree, to.as_str()).expect("reachable"));
            }
        }
        Ok((dist, paths))
    });

    let mut dist = Vec::with_capacity(terminals.len());
    let mut witness = BTreeMap::new();
    for (i, row) in rows.into_iter().enumerate() {
        let (d, paths) = row?;
        dist.push(d);
        let others = (0..terminals.len()).filter(|&j| j != i);
        for (j, path) in others.zip(paths) {
            witness.insert((i, j), path);
        }
    }
    Ok(MetricClosure {
        terminals,
        dist,
        witness,
    })
}

/// Rearranges `perm` into the next permutation in lexicographic order;
/// returns false (leaving it sorted ascending) after the last one.
fn next_permutation(perm: &mut [usize]) -> bool {
    let Some(i) = perm.windows(2).rposition(|w| w[0] < w[1]) else {
        perm.reverse();
        return false;
    };
    let j = perm.iter().rposition(|&x| x > perm[i]).unwrap();
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

pub fn solve_tsp_exact(mc: &MetricClosure, home: &str) -> Result<Tour, PlanError> {
    solve_tsp_exact_with(mc, home, Execution::default())
}

/// Cheapest tour by trying every order of the non-home terminals. Among
/// equally cheap tours the lexicographically smallest stop sequence wins.
///
/// The search is split by first stop after home; branches are independent
/// and are combined in lexicographic order, so the answer does not depend on
/// `exec`.
pub fn solve_tsp_exact_with(
    mc: &MetricClosure,
    home: &str,
    exec: Execution,
) -> Result<Tour, PlanError> {
    let count = mc.terminals.len();
    if count > MAX_EXACT_TERMINALS {
        return Err(PlanError::TooManyTerminals { count });
    }
    let h = mc.home_index(home)?;
    let interior: Vec<usize> = (0..count).filter(|&i| i != h).collect();
    if interior.is_empty() {
        return Ok(mc.tour(h, &[]));
    }

    let branches = exec.map(&interior, |&first| {
        let mut rest: Vec<usize> = interior.iter().copied().filter(|&i| i != first).collect();
        let mut order = Vec::with_capacity(interior.len());
        let mut best: Option<(Cost, Vec<usize>)> = None;
        loop {
            order.clear();
            order.push(first);
            order.extend_from_slice(&rest);
            let cost = mc.cycle_cost(h, &order);
            if best.as_ref().is_none_or(|(b, _)| cost < *b) {
                best = Some((cost, order.clone()));
            }
            if !next_permutation(&mut rest) {
                break;
            }
        }
        best.expect("at least one permutation")
    });

    let (_, order) = branches
        .into_iter()
        .reduce(|best, cand| if cand.0 < best.0 { cand } else { best })
        .expect("at least one branch");
    Ok(mc.tour(h, &order))
}

/// Nearest-neighbor tour: always go to the closest unvisited terminal
/// (smallest id on ties), then return home.
pub fn solve_tsp_greedy(mc: &MetricClosure, home: &str) -> Result<Tour, PlanError> {
    let h = mc.home_index(home)?;
    let mut unvisited: Vec<usize> = (0..mc.terminals.len()).filter(|&i| i != h).collect();
    let mut order = Vec::with_capacity(unvisited.len());
    let mut at = h;
    while !unvisited.is_empty() {
        let mut pick = 0;
        for (k, &cand) in unvisited.iter().enumerate().skip(1) {
            if mc.dist[at][cand] < mc.dist[at][unvisited[pick]] {
                pick = k;
            }
        }
        at = unvisited.remove(pick);
        order.push(at);
    }
    Ok(mc.tour(h, &order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edgelist::parse_edge_list;
    use crate::fixtures;
    use crate::graph::validate_path;

    fn ids(list: &[&str]) -> Vec<NodeId> {
        list.iter().map(|s| NodeId::new(*s).unwrap()).collect()
    }

    fn fig2() -> Graph {
        parse_edge_list(fixtures::FIG2_EDGES).unwrap()
    }

    fn stops(t: &Tour) -> Vec<&str> {
        t.stops.iter().map(NodeId::as_str).collect()
    }

    #[test]
    fn permutations_in_lex_order() {
        let mut p = vec![0, 1, 2];
        let mut seen = vec![p.clone()];
        while next_permutation(&mut p) {
            seen.push(p.clone());
        }
        assert_eq!(
            seen,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0]
            ]
        );
        assert_eq!(p, vec![0, 1, 2]);
        assert!(!next_permutation(&mut []));
    }

    #[test]
    fn closure_distances() {
        let mc = metric_closure(&fig2(), &ids(&["F", "A"])).unwrap();
        assert_eq!(mc.dist("A", "F").unwrap().value(), 13.0);
        assert_eq!(mc.dist("F", "A").unwrap().value(), 13.0);
        let w = mc.witness("A", "F").unwrap();
        assert!(validate_path(&fig2(), w));
        assert_eq!(w.total_cost.value(), 13.0);
        assert_eq!(mc.pairs().count(), 2);

        let single = metric_closure(&fig2(), &ids(&["A"])).unwrap();
        assert_eq!(single.pairs().count(), 0);

        // direct edge D-E (2) beats every detour
        let de = metric_closure(&fig2(), &ids(&["D", "E"])).unwrap();
        assert_eq!(de.dist("D", "E").unwrap().value(), 2.0);
    }

    #[test]
    fn closure_errors() {
        let g = parse_edge_list(fixtures::DISCONNECTED_EDGES).unwrap();
        assert!(matches!(
            metric_closure(&g, &ids(&["A", "Z"])),
            Err(PlanError::DisconnectedTerminals { .. })
        ));
        assert!(matches!(
            metric_closure(&g, &ids(&["A", "Q"])),
            Err(PlanError::Graph(GraphError::UnknownNode(_)))
        ));
    }

    #[test]
    fn one_terminal_tour() {
        let mc = metric_closure(&fig2(), &ids(&["C"])).unwrap();
        for tour in [
            solve_tsp_exact(&mc, "C").unwrap(),
            solve_tsp_greedy(&mc, "C").unwrap(),
        ] {
            assert_eq!(stops(&tour), ["C", "C"]);
            assert!(tour.legs.is_empty());
            assert_eq!(tour.total_cost, Cost::ZERO);
            assert_eq!(tour.walk().len(), 1);
        }
    }

    #[test]
    fn triangle_tie_breaks_lexicographically() {
        let g = parse_edge_list("undirected\nA B 5\nB C 5\nA C 5\n").unwrap();
        let mc = metric_closure(&g, &ids(&["A", "B", "C"])).unwrap();
        let tour = solve_tsp_exact(&mc, "A").unwrap();
        assert_eq!(stops(&tour), ["A", "B", "C", "A"]);
        assert_eq!(tour.total_cost.value(), 15.0);
    }

    #[test]
    fn fig2_three_terminal_tour() {
        // A-C 2, C-F 11, F-A 13 either way round
        let mc = metric_closure(&fig2(), &ids(&["A", "C", "F"])).unwrap();
        let tour = solve_tsp_exact(&mc, "A").unwrap();
        assert_eq!(tour.total_cost.value(), 26.0);
        assert_eq!(stops(&tour), ["A", "C", "F", "A"]);
        let walk: Vec<&str> = tour.walk().into_iter().map(NodeId::as_str).collect();
        assert_eq!(walk.first(), Some(&"A"));
        assert_eq!(walk.last(), Some(&"A"));
        assert!(tour.legs.iter().all(|l| validate_path(&fig2(), l)));
    }

    #[test]
    fn two_terminals_exact_equals_greedy() {
        let mc = metric_closure(&fig2(), &ids(&["B", "E"])).unwrap();
        assert_eq!(
            solve_tsp_exact(&mc, "E").unwrap(),
            solve_tsp_greedy(&mc, "E").unwrap()
        );
    }

    #[test]
    fn guards() {
        let mc = metric_closure(&fig2(), &ids(&["A", "B"])).unwrap();
        assert_eq!(
            solve_tsp_exact(&mc, "F"),
            Err(PlanError::NotATerminal("F".into()))
        );
        assert_eq!(
            solve_tsp_greedy(&mc, "F"),
            Err(PlanError::NotATerminal("F".into()))
        );

        let names: Vec<String> = (0..13).map(|i| format!("n{i:02}")).collect();
        let text: String = std::iter::once("undirected\n".to_string())
            .chain(names.windows(2).map(|w| format!("{} {} 1\n", w[0], w[1])))
            .collect();
        let g = parse_edge_list(&text).unwrap();
        let all: Vec<NodeId> = g.nodes().to_vec();
        let mc = metric_closure(&g, &all).unwrap();
        assert_eq!(
            solve_tsp_exact(&mc, "n00"),
            Err(PlanError::TooManyTerminals { count: 13 })
        );
        assert!(solve_tsp_greedy(&mc, "n00").is_ok());
    }

    #[test]
    fn execution_strategy_does_not_change_answer() {
        let all: Vec<NodeId> = fig2().nodes().to_vec();
        let seq = metric_closure_with(&fig2(), &all, Execution::Sequential).unwrap();
        let par = metric_closure_with(&fig2(), &all, Execution::Parallel).unwrap();
        assert_eq!(seq, par);
        assert_eq!(
            solve_tsp_exact_with(&seq, "A", Execution::Sequential).unwrap(),
            solve_tsp_exact_with(&par, "A", Execution::Parallel).unwrap()
        );
    }
}
