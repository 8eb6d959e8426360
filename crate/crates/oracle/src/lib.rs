//! Brute-force reference answers for checking the wayfinder engines.
//!
//! Nothing here shares code with the engines: graphs are plain index lists,
//! shortest distances come from enumerating every simple path (or from
//! Floyd–Warshall / BFS for larger inputs), and tours from recursive
//! enumeration of every visiting order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Index-based graph: nodes `0..n`, edges `(u, v, cost)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmallGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize, f64)>,
    pub directed: bool,
}

/// Name used for node `i` when a `SmallGraph` is written as an edge list.
pub fn node_name(i: usize) -> String {
    format!("v{i}")
}

impl SmallGraph {
    pub fn undirected(n: usize, edges: Vec<(usize, usize, f64)>) -> Self {
        SmallGraph {
            n,
            edges,
            directed: false,
        }
    }

    /// `out[u]` lists `(v, cost)` for every edge usable from `u`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut out = vec![Vec::new(); self.n];
        for &(u, v, c) in &self.edges {
            out[u].push((v, c));
            if !self.directed {
                out[v].push((u, c));
            }
        }
        out
    }

    /// Edge-list text with nodes named by [`node_name`]; isolated nodes get a
    /// single-id line.
    pub fn to_edge_list(&self) -> String {
        let mut text = String::from(if self.directed {
            "directed\n"
        } else {
            "undirected\n"
        });
        let mut touched = vec![false; self.n];
        for &(u, v, c) in &self.edges {
            touched[u] = true;
            touched[v] = true;
            text.push_str(&format!("{} {} {}\n", node_name(u), node_name(v), c));
        }
        for (i, t) in touched.iter().enumerate() {
            if !t {
                text.push_str(&format!("{}\n", node_name(i)));
            }
        }
        text
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &(v, _) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn with_edge(&self, edge: (usize, usize, f64)) -> SmallGraph {
        let mut g = self.clone();
        g.edges.push(edge);
        g
    }

    pub fn has_pair(&self, a: usize, b: usize) -> bool {
        self.edges
            .iter()
            .any(|&(u, v, _)| (u, v) == (a, b) || (!self.directed && (v, u) == (a, b)))
    }
}

/// Every simple path from `origin`, reported as `(node sequence, cost)`.
/// Costs are accumulated left to right along the path.
pub fn simple_paths_from(g: &SmallGraph, origin: usize) -> Vec<(Vec<usize>, f64)> {
    fn walk(
        adj: &[Vec<(usize, f64)>],
        path: &mut Vec<usize>,
        cost: f64,
        on_path: &mut [bool],
        out: &mut Vec<(Vec<usize>, f64)>,
    ) {
        out.push((path.clone(), cost));
        let u = *path.last().unwrap();
        for &(v, c) in &adj[u] {
            if on_path[v] {
                continue;
            }
            on_path[v] = true;
            path.push(v);
            walk(adj, path, cost + c, on_path, out);
            path.pop();
            on_path[v] = false;
        }
    }
    let adj = g.adjacency();
    let mut on_path = vec![false; g.n];
    on_path[origin] = true;
    let mut out = Vec::new();
    walk(&adj, &mut vec![origin], 0.0, &mut on_path, &mut out);
    out
}

/// Minimum cost over all simple paths from `origin` to each node.
pub fn brute_force_distances(g: &SmallGraph, origin: usize) -> Vec<Option<f64>> {
    let mut best: Vec<Option<f64>> = vec![None; g.n];
    for (path, cost) in simple_paths_from(g, origin) {
        let end = *path.last().unwrap();
        if best[end].is_none_or(|b| cost < b) {
            best[end] = Some(cost);
        }
    }
    best
}

/// Node sequences of every minimum-cost simple path, sorted.
pub fn brute_force_shortest_paths(g: &SmallGraph, origin: usize, target: usize) -> Vec<Vec<usize>> {
    let Some(best) = brute_force_distances(g, origin)[target] else {
        return Vec::new();
    };
    let mut paths: Vec<Vec<usize>> = simple_paths_from(g, origin)
        .into_iter()
        .filter(|(p, c)| *p.last().unwrap() == target && *c == best)
        .map(|(p, _)| p)
        .collect();
    paths.sort_by(|a, b| {
        let a: Vec<String> = a.iter().map(|&i| node_name(i)).collect();
        let b: Vec<String> = b.iter().map(|&i| node_name(i)).collect();
        a.cmp(&b)
    });
    paths
}

/// All-pairs distances by enumerating simple paths from every origin.
pub fn brute_force_all_pairs(g: &SmallGraph) -> Vec<Vec<Option<f64>>> {
    (0..g.n).map(|o| brute_force_distances(g, o)).collect()
}

/// All-pairs distances by Floyd–Warshall, for graphs too big to enumerate.
#[allow(clippy::needless_range_loop)]
pub fn floyd_warshall(g: &SmallGraph) -> Vec<Vec<Option<f64>>> {
    let mut d = vec![vec![None; g.n]; g.n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Some(0.0);
    }
    for (u, list) in g.adjacency().into_iter().enumerate() {
        for (v, c) in list {
            if d[u][v].is_none_or(|x| c < x) {
                d[u][v] = Some(c);
            }
        }
    }
    for k in 0..g.n {
        for i in 0..g.n {
            let Some(ik) = d[i][k] else { continue };
            for j in 0..g.n {
                if let Some(kj) = d[k][j] {
                    if d[i][j].is_none_or(|x| ik + kj < x) {
                        d[i][j] = Some(ik + kj);
                    }
                }
            }
        }
    }
    d
}

/// `(mean, diameter, reachable, unreachable)` over ordered pairs `i != j`.
pub fn pair_statistics(all_pairs: &[Vec<Option<f64>>]) -> (f64, f64, u64, u64) {
    let mut sum = 0.0;
    let mut diameter = 0.0f64;
    let (mut reach, mut unreach) = (0u64, 0u64);
    for (i, row) in all_pairs.iter().enumerate() {
        for (j, d) in row.iter().enumerate() {
            if i == j {
                continue;
            }
            match d {
                Some(d) => {
                    sum += d;
                    diameter = diameter.max(*d);
                    reach += 1;
                }
                None => unreach += 1,
            }
        }
    }
    let mean = if reach == 0 { 0.0 } else { sum / reach as f64 };
    (mean, diameter, reach, unreach)
}

/// Cheapest closed tour from `home` over the full distance matrix, by
/// recursive enumeration of every visiting order. Returns the cost and the
/// order of the non-home stops.
pub fn brute_force_tour(dist: &[Vec<f64>], home: usize) -> (f64, Vec<usize>) {
    fn extend(
        dist: &[Vec<f64>],
        home: usize,
        order: &mut Vec<usize>,
        used: &mut [bool],
        best: &mut Option<(f64, Vec<usize>)>,
    ) {
        if order.len() == dist.len() - 1 {
            let mut at = home;
            let mut cost = 0.0;
            for &s in order.iter() {
                cost += dist[at][s];
                at = s;
            }
            if !order.is_empty() {
                cost += dist[at][home];
            }
            if best.as_ref().is_none_or(|(b, _)| cost < *b) {
                *best = Some((cost, order.clone()));
            }
            return;
        }
        for s in 0..dist.len() {
            if s == home || used[s] {
                continue;
            }
            used[s] = true;
            order.push(s);
            extend(dist, home, order, used, best);
            order.pop();
            used[s] = false;
        }
    }
    let mut best = None;
    extend(
        dist,
        home,
        &mut Vec::new(),
        &mut vec![false; dist.len()],
        &mut best,
    );
    best.expect("at least one order")
}

/// BFS step count between two open cells of a 4-connected grid
/// (`blocked[row][col]`).
pub fn grid_bfs(blocked: &[Vec<bool>], from: (usize, usize), to: (usize, usize)) -> Option<usize> {
    let h = blocked.len();
    let w = blocked[0].len();
    let mut dist = vec![vec![None; w]; h];
    let mut queue = std::collections::VecDeque::new();
    dist[from.0][from.1] = Some(0);
    queue.push_back(from);
    while let Some((r, c)) = queue.pop_front() {
        let d = dist[r][c].unwrap();
        let mut next = Vec::new();
        if r > 0 {
            next.push((r - 1, c));
        }
        if c > 0 {
            next.push((r, c - 1));
        }
        if r + 1 < h {
            next.push((r + 1, c));
        }
        if c + 1 < w {
            next.push((r, c + 1));
        }
        for (nr, nc) in next {
            if !blocked[nr][nc] && dist[nr][nc].is_none() {
                dist[nr][nc] = Some(d + 1);
                queue.push_back((nr, nc));
            }
        }
    }
    dist[to.0][to.1]
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random simple undirected graph on `n` nodes: each pair is joined with
/// probability `density`, integer costs drawn from `costs`.
pub fn random_graph(
    rng: &mut impl Rng,
    n: usize,
    density: f64,
    costs: std::ops::RangeInclusive<u32>,
) -> SmallGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(density) {
                edges.push((u, v, rng.random_range(costs.clone()) as f64));
            }
        }
    }
    SmallGraph::undirected(n, edges)
}

/// Like [`random_graph`] but retried until connected.
pub fn random_connected_graph(
    rng: &mut impl Rng,
    n: usize,
    density: f64,
    costs: std::ops::RangeInclusive<u32>,
) -> SmallGraph {
    loop {
        let g = random_graph(rng, n, density, costs.clone());
        if g.is_connected() {
            return g;
        }
    }
}

/// Number of graphs [`all_graphs`] yields for `n` nodes and `costs`.
pub fn graph_space(n: usize, costs: &[f64]) -> u64 {
    (costs.len() as u64 + 1).pow((n * n.saturating_sub(1) / 2) as u32)
}

/// The graph at position `code` in the [`all_graphs`] enumeration. Each node
/// pair, in lexicographic order, is one mixed-radix digit: 0 for no edge,
/// `i` for an edge costing `costs[i - 1]`.
pub fn nth_graph(n: usize, costs: &[f64], mut code: u64) -> SmallGraph {
    let radix = costs.len() as u64 + 1;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let digit = (code % radix) as usize;
            code /= radix;
            if digit > 0 {
                edges.push((u, v, costs[digit - 1]));
            }
        }
    }
    SmallGraph::undirected(n, edges)
}

/// Every undirected graph on `n` nodes where each pair is either absent or
/// joined with one of `costs`, in mixed-radix order.
pub fn all_graphs(n: usize, costs: &[f64]) -> impl Iterator<Item = SmallGraph> + '_ {
    (0..graph_space(n, costs)).map(move |code| nth_graph(n, costs, code))
}
