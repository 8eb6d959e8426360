//! Network-wide path statistics and a small-world demonstrator.

use std::collections::HashSet;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dijkstra::solve;
use crate::graph::{Cost, Directedness, Edge, Graph, NodeId};
use crate::par::Execution;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// Shortest-path statistics over all ordered pairs of distinct nodes.
/// Unreachable pairs are counted but left out of the mean and diameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathStats {
    pub mean_geodesic: f64,
    pub diameter: f64,
    pub reachable_pairs: u64,
    pub unreachable_pairs: u64,
}

impl PathStats {
    /// `key=value` lines in field order.
    pub fn to_key_value(&self) -> String {
        let mut out = String::new();
        writeln!(out, "mean_geodesic={}", self.mean_geodesic).unwrap();
        writeln!(out, "diameter={}", self.diameter).unwrap();
        writeln!(out, "reachable_pairs={}", self.reachable_pairs).unwrap();
        writeln!(out, "unreachable_pairs={}", self.unreachable_pairs).unwrap();
        out
    }
}

pub fn path_stats(graph: &Graph) -> PathStats {
    path_stats_with(graph, Execution::default())
}

/// One shortest-path run per origin; the runs are independent and are
/// combined in node order, so the result is the same for every `exec`.
pub fn path_stats_with(graph: &Graph, exec: Execution) -> PathStats {
    let n = graph.node_count();
    let per_origin: Vec<Vec<Option<Cost>>> = exec.map_range(0..n, |origin| {
        solve(graph, origin)
            .slots
            .iter()
            .enumerate()
            .filter(|&(v, _)| v != origin)
            .map(|(_, s)| s.dist)
            .collect()
    });

    let mut sum = 0.0;
    let mut diameter = 0.0f64;
    let mut reachable = 0u64;
    let mut unreachable = 0u64;
    for d in per_origin.iter().flatten() {
        match d {
            Some(d) => {
                sum += d.value();
                diameter = diameter.max(d.value());
                reachable += 1;
            }
            None => unreachable += 1,
        }
    }
    PathStats {
        mean_geodesic: if reachable == 0 {
            0.0
        } else {
            sum / reachable as f64
        },
        diameter,
        reachable_pairs: reachable,
        unreachable_pairs: unreachable,
    }
}

/// Ring of `n` nodes (`"0"` … `"n-1"`), each joined at unit cost to its `k`
/// nearest ring neighbors, plus `shortcuts` extra unit-cost edges.
///
/// Shortcuts come from a ChaCha8 stream seeded with `seed`: draw `a` then `b`
/// uniformly from `0..n` and keep the pair unless `a == b` or the two are
/// already joined; repeat until enough shortcuts are kept.
pub fn ring_lattice_with_shortcuts(
    n: usize,
    k: usize,
    shortcuts: usize,
    seed: u64,
) -> Result<Graph, AnalysisError> {
    if n < 3 {
        return Err(AnalysisError::InvalidParams(format!(
            "n must be at least 3, got {n}"
        )));
    }
    if !k.is_multiple_of(2) || k >= n {
        return Err(AnalysisError::InvalidParams(format!(
            "k must be even and smaller than n, got k={k}, n={n}"
        )));
    }
    let ring_edges = n * k / 2;
    let free = n * (n - 1) / 2 - ring_edges;
    if shortcuts > free {
        return Err(AnalysisError::InvalidParams(format!(
            "only {free} node pairs are not already joined, cannot add {shortcuts} shortcuts"
        )));
    }

    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut joined: HashSet<(usize, usize)> = HashSet::with_capacity(ring_edges + shortcuts);
    let mut pairs = Vec::with_capacity(ring_edges + shortcuts);
    for i in 0..n {
        for step in 1..=k / 2 {
            let pair = key(i, (i + step) % n);
            joined.insert(pair);
            pairs.push(pair);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut added = 0;
    while added < shortcuts {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a == b || !joined.insert(key(a, b)) {
            continue;
        }
        pairs.push(key(a, b));
        added += 1;
    }

    let id = |i: usize| NodeId::new(i.to_string()).unwrap();
    let one = Cost::new(1.0).unwrap();
    Ok(Graph::build(
        (0..n).map(id),
        pairs.into_iter().map(|(a, b)| Edge::new(id(a), id(b), one)),
        Directedness::Undirected,
    )
    .expect("lattice edges are distinct"))
}
