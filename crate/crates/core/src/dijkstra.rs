//! Dijkstra's algorithm in its worksheet form.
//!
//! Every node carries a `dist` (best known total cost from the origin, blank
//! until discovered), a `last` (the predecessor realising that dist) and a
//! `shaded` flag (dist is final). The origin is shaded first and its
//! neighbors labelled; after that the unshaded node with the lowest non-blank
//! dist becomes *current*, its neighbors are relaxed on strict improvement,
//! and it is shaded. The `last` edges of the finished table form a
//! shortest-path spanning tree.
//!
//! Ties between equally low dists are broken towards the lexicographically
//! smallest node id. The run stops once no unshaded node has a dist, so
//! unreachable nodes simply stay blank.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Cost, Edge, Graph, GraphError, NodeId, Path};

/// Enumeration cap used when callers have no better idea.
pub const DEFAULT_PATH_CAP: usize = 1000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RouteError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{destination} is unreachable from {origin}")]
    Unreachable { origin: NodeId, destination: NodeId },
    #[error("path cap must be at least 1")]
    ZeroCap,
}

/// One row of the worksheet.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeLabel {
    pub dist: Option<Cost>,
    pub last: Option<NodeId>,
    pub shaded: bool,
}

/// The complete worksheet for one origin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "TableRepr", try_from = "TableRepr")]
pub struct LabelTable {
    pub origin: NodeId,
    pub labels: BTreeMap<NodeId, NodeLabel>,
}

impl LabelTable {
    pub fn get(&self, node: &str) -> Option<&NodeLabel> {
        self.labels.get(node)
    }

    pub fn dist(&self, node: &str) -> Option<Cost> {
        self.labels.get(node).and_then(|l| l.dist)
    }

    /// `(node, dist)` for every node, blanks included.
    pub fn dist_column(&self) -> Vec<(&NodeId, Option<Cost>)> {
        self.labels.iter().map(|(n, l)| (n, l.dist)).collect()
    }

    pub fn shaded(&self) -> impl Iterator<Item = &NodeId> {
        self.labels.iter().filter(|(_, l)| l.shaded).map(|(n, _)| n)
    }
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    origin: NodeId,
    rows: Vec<TableRow>,
}

#[derive(Serialize, Deserialize)]
struct TableRow {
    node: NodeId,
    dist: Option<Cost>,
    last: Option<NodeId>,
    shaded: bool,
}

impl From<LabelTable> for TableRepr {
    fn from(t: LabelTable) -> Self {
        TableRepr {
            origin: t.origin,
            rows: t
                .labels
                .into_iter()
                .map(|(node, l)| TableRow {
                    node,
                    dist: l.dist,
                    last: l.last,
                    shaded: l.shaded,
                })
                .collect(),
        }
    }
}

impl TryFrom<TableRepr> for LabelTable {
    type Error = String;

    fn try_from(r: TableRepr) -> Result<Self, String> {
        let mut labels = BTreeMap::new();
        for row in r.rows {
            let label = NodeLabel {
                dist: row.dist,
                last: row.last,
                shaded: row.shaded,
            };
            if labels.insert(row.node.clone(), label).is_some() {
                return Err(format!("node {} listed twice", row.node));
            }
        }
        if !labels.contains_key(&r.origin) {
            return Err(format!("origin {} has no row", r.origin));
        }
        Ok(LabelTable {
            origin: r.origin,
            labels,
        })
    }
}

/// Origin-rooted tree of `last` edges. Only reachable nodes appear.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "TreeRepr", try_from = "TreeRepr")]
pub struct SpanningTree {
    pub origin: NodeId,
    /// Shortest distance from the origin, including the origin itself.
    pub dist: BTreeMap<NodeId, Cost>,
    /// The tree edge entering each reachable non-origin node, oriented
    /// parent → child.
    pub links: BTreeMap<NodeId, Edge>,
}

impl SpanningTree {
    pub fn parent(&self, node: &str) -> Option<&NodeId> {
        self.links.get(node).map(|e| &e.from)
    }

    pub fn parents(&self) -> BTreeMap<&NodeId, &NodeId> {
        self.links.iter().map(|(n, e)| (n, &e.from)).collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.links.values()
    }

    pub fn reaches(&self, node: &str) -> bool {
        self.dist.contains_key(node)
    }
}

#[derive(Serialize, Deserialize)]
struct TreeRepr {
    origin: NodeId,
    nodes: Vec<TreeRow>,
}

#[derive(Serialize, Deserialize)]
struct TreeRow {
    node: NodeId,
    dist: Cost,
    parent: Option<NodeId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cost: Option<Cost>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

impl From<SpanningTree> for TreeRepr {
    fn from(mut t: SpanningTree) -> Self {
        let nodes = t
            .dist
            .into_iter()
            .map(|(node, dist)| {
                let link = t.links.remove(&node);
                TreeRow {
                    dist,
                    parent: link.as_ref().map(|e| e.from.clone()),
                    cost: link.as_ref().map(|e| e.cost),
                    name: link.and_then(|e| e.name),
                    node,
                }
            })
            .collect();
        TreeRepr {
            origin: t.origin,
            nodes,
        }
    }
}

impl TryFrom<TreeRepr> for SpanningTree {
    type Error = String;

    fn try_from(r: TreeRepr) -> Result<Self, String> {
        let mut dist = BTreeMap::new();
        let mut links = BTreeMap::new();
        for row in r.nodes {
            match (row.parent, row.cost) {
                (Some(parent), Some(cost)) => {
                    let mut edge = Edge::new(parent, row.node.clone(), cost);
                    edge.name = row.name;
                    links.insert(row.node.clone(), edge);
                }
                (None, None) if row.node == r.origin => {}
                _ => return Err(format!("node {} needs both parent and cost", row.node)),
            }
            dist.insert(row.node, row.dist);
        }
        Ok(SpanningTree {
            origin: r.origin,
            dist,
            links,
        })
    }
}

/// Everything a run produces: the final worksheet, its spanning tree and the
/// order in which nodes were chosen as current (origin excluded).
#[derive(Debug, Clone, PartialEq)]
pub struct ShortestPaths {
    pub table: LabelTable,
    pub tree: SpanningTree,
    pub selections: Vec<NodeId>,
}

impl ShortestPaths {
    pub fn into_parts(self) -> (LabelTable, SpanningTree) {
        (self.table, self.tree)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Slot {
    pub dist: Option<Cost>,
    pub last: Option<usize>,
    /// Edge index behind `last`.
    pub via: Option<usize>,
    pub shaded: bool,
}

/// Index-level worksheet used by the engine and by the workbench.
pub(crate) struct Run {
    pub slots: Vec<Slot>,
    pub selections: Vec<usize>,
}

pub(crate) fn relax(slots: &mut [Slot], graph: &Graph, current: usize) -> Vec<usize> {
    let base = slots[current].dist.expect("current node has a dist");
    let mut improved = Vec::new();
    for adj in graph.adjacent(current) {
        let candidate = base + adj.cost;
        let slot = &mut slots[adj.node];
        if slot.dist.is_none_or(|d| candidate < d) {
            slot.dist = Some(candidate);
            slot.last = Some(current);
            slot.via = Some(adj.edge);
            improved.push(adj.node);
        }
    }
    improved
}

pub(crate) fn solve(graph: &Graph, origin: usize) -> Run {
    let mut slots = vec![Slot::default(); graph.node_count()];
    slots[origin].dist = Some(Cost::ZERO);
    slots[origin].shaded = true;

    // (dist, index): popping the minimum gives the lowest dist, ties going to
    // the smallest index, which is the smallest id because nodes are sorted.
    let mut frontier = BinaryHeap::new();
    for v in relax(&mut slots, graph, origin) {
        frontier.push(Reverse((slots[v].dist.unwrap(), v)));
    }

    let mut selections = Vec::new();
    while let Some(Reverse((dist, current))) = frontier.pop() {
        let slot = slots[current];
        if slot.shaded || slot.dist != Some(dist) {
            continue;
        }
        selections.push(current);
        for v in relax(&mut slots, graph, current) {
            frontier.push(Reverse((slots[v].dist.unwrap(), v)));
        }
        slots[current].shaded = true;
    }
    Run { slots, selections }
}

pub(crate) fn table_from_slots(graph: &Graph, origin: usize, slots: &[Slot]) -> LabelTable {
    let labels = slots
        .iter()
        .enumerate()
        .map(|(i, s)| {
            (
                graph.id(i).clone(),
                NodeLabel {
                    dist: s.dist,
                    last: s.last.map(|l| graph.id(l).clone()),
                    shaded: s.shaded,
                },
            )
        })
        .collect();
    LabelTable {
        origin: graph.id(origin).clone(),
        labels,
    }
}

pub(crate) fn tree_from_slots(graph: &Graph, origin: usize, slots: &[Slot]) -> SpanningTree {
    let mut dist = BTreeMap::new();
    let mut links = BTreeMap::new();
    for (i, s) in slots.iter().enumerate() {
        let Some(d) = s.dist else { continue };
        dist.insert(graph.id(i).clone(), d);
        if let (Some(last), Some(via)) = (s.last, s.via) {
            let edge = &graph.edges()[via];
            let edge = if &edge.from == graph.id(last) {
                edge.clone()
            } else {
                edge.reversed()
            };
            links.insert(graph.id(i).clone(), edge);
        }
    }
    SpanningTree {
        origin: graph.id(origin).clone(),
        dist,
        links,
    }
}

/// Runs the worksheet algorithm from `origin` to completion.
pub fn run_dijkstra(graph: &Graph, origin: &str) -> Result<ShortestPaths, GraphError> {
    let o = graph.index_of(origin)?;
    let run = solve(graph, o);
    Ok(ShortestPaths {
        table: table_from_slots(graph, o, &run.slots),
        tree: tree_from_slots(graph, o, &run.slots),
        selections: run
            .selections
            .iter()
            .map(|&i| graph.id(i).clone())
            .collect(),
    })
}

/// Walks the parent chain back from `destination` and returns it origin-first.
pub fn extract_path(tree: &SpanningTree, destination: &str) -> Result<Path, RouteError> {
    let Some((dest, _)) = tree.dist.get_key_value(destination) else {
        return Err(RouteError::Unreachable {
            origin: tree.origin.clone(),
            destination: NodeId::new(destination)?,
        });
    };
    let mut edges = Vec::new();
    let mut at = dest;
    while let Some(edge) = tree.links.get(at) {
        edges.push(edge.clone());
        at = &edge.from;
        debug_assert!(edges.len() <= tree.links.len(), "cycle in spanning tree");
    }
    edges.reverse();
    Ok(Path::from_edges(tree.origin.clone(), edges))
}

/// Every minimum-cost simple path from `origin` to `destination`, in
/// lexicographic order of node sequence, stopping after `cap` paths.
///
/// A result shorter than `cap` is complete. Unreachable destinations give an
/// empty list.
pub fn all_shortest_paths(
    graph: &Graph,
    origin: &str,
    destination: &str,
    cap: usize,
) -> Result<Vec<Path>, RouteError> {
    if cap == 0 {
        return Err(RouteError::ZeroCap);
    }
    let o = graph.index_of(origin)?;
    let d = graph.index_of(destination)?;
    let run = solve(graph, o);
    let dist: Vec<Option<Cost>> = run.slots.iter().map(|s| s.dist).collect();
    if dist[d].is_none() {
        return Ok(Vec::new());
    }

    let is_tight = |u: usize, cost: Cost, v: usize| match (dist[u], dist[v]) {
        (Some(du), Some(dv)) => du + cost == dv,
        _ => false,
    };

    // nodes from which the destination is reachable along tight edges
    let mut leads_to_dest = vec![false; graph.node_count()];
    leads_to_dest[d] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for u in 0..graph.node_count() {
            if leads_to_dest[u] {
                continue;
            }
            if graph
                .adjacent(u)
                .iter()
                .any(|a| leads_to_dest[a.node] && is_tight(u, a.cost, a.node))
            {
                leads_to_dest[u] = true;
                changed = true;
            }
        }
    }

    struct Search<'a, F> {
        graph: &'a Graph,
        target: usize,
        cap: usize,
        leads_to_dest: Vec<bool>,
        on_path: Vec<bool>,
        stack: Vec<Edge>,
        found: Vec<Path>,
        tight: F,
    }

    impl<F: Fn(usize, Cost, usize) -> bool> Search<'_, F> {
        fn visit(&mut self, u: usize) {
            if self.found.len() >= self.cap {
                return;
            }
            if u == self.target {
                let origin = self
                    .stack
                    .first()
                    .map_or_else(|| self.graph.id(u).clone(), |e| e.from.clone());
                self.found
                    .push(Path::from_edges(origin, self.stack.clone()));
                return;
            }
            for &adj in self.graph.adjacent(u) {
                let v = adj.node;
                if self.on_path[v] || !self.leads_to_dest[v] || !(self.tight)(u, adj.cost, v) {
                    continue;
                }
                self.on_path[v] = true;
                self.stack.push(self.graph.oriented_edge(u, adj));
                self.visit(v);
                self.stack.pop();
                self.on_path[v] = false;
            }
        }
    }

    let mut search = Search {
        graph,
        target: d,
        cap,
        leads_to_dest,
        on_path: vec![false; graph.node_count()],
        stack: Vec::new(),
        found: Vec::new(),
        tight: is_tight,
    };
    search.on_path[o] = true;
    search.visit(o);
    Ok(search.found)
}
