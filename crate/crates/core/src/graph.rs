//! Weighted network model: node ids, edge costs, edges, paths and the
//! immutable [`Graph`] every algorithm in the crate runs over.

use std::borrow::Borrow;
use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Characters that may never appear inside a node id, on top of whitespace.
/// `#` starts a comment in the edge-list format and `,` separates ids on the
/// command line.
const RESERVED: &[char] = &['#', ','];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("invalid node id {0:?}: ids must be non-empty and contain no whitespace, '#' or ','")]
    InvalidNodeId(String),
    #[error("{0:?} is not a decimal cost")]
    InvalidCost(String),
    #[error("edge cost {0} is negative")]
    NegativeCost(f64),
    #[error("edge cost {0} is not a finite number")]
    NonFiniteCost(f64),
    #[error("node {0} is declared twice")]
    DuplicateNode(NodeId),
    #[error("more than one edge between {from} and {to}")]
    DuplicateEdge { from: NodeId, to: NodeId },
    #[error("edge {from}-{to} references undeclared node {missing}")]
    DanglingEndpoint {
        from: NodeId,
        to: NodeId,
        missing: NodeId,
    },
    #[error("self-loop on node {0}")]
    SelfLoop(NodeId),
    #[error("unknown node {0}")]
    UnknownNode(String),
}

/// Printable node label such as `A`, `4` or `green_house`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(id: impl Into<String>) -> Result<Self, GraphError> {
        let id = id.into();
        if id.is_empty()
            || id
                .chars()
                .any(|c| c.is_whitespace() || RESERVED.contains(&c))
        {
            return Err(GraphError::InvalidNodeId(id));
        }
        Ok(NodeId(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for NodeId {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NodeId::new(s)
    }
}

impl Borrow<str> for NodeId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for NodeId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl Serialize for NodeId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for NodeId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(deserializer)?;
        NodeId::new(raw).map_err(serde::de::Error::custom)
    }
}

/// A finite, nonnegative amount of distance, time or any other additive unit.
///
/// Used both for single edge costs and for accumulated `dist` values. Because
/// NaN is excluded at construction the type is totally ordered.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Cost(f64);

impl Cost {
    pub const ZERO: Cost = Cost(0.0);

    pub fn new(value: f64) -> Result<Self, GraphError> {
        if !value.is_finite() {
            return Err(GraphError::NonFiniteCost(value));
        }
        if value < 0.0 {
            return Err(GraphError::NegativeCost(value));
        }
        // normalise -0.0 so equal costs print identically
        Ok(Cost(if value == 0.0 { 0.0 } else { value }))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl Eq for Cost {}

impl PartialOrd for Cost {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cost {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl Add for Cost {
    type Output = Cost;

    fn add(self, rhs: Cost) -> Cost {
        Cost(self.0 + rhs.0)
    }
}

impl std::iter::Sum for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Cost {
        iter.fold(Cost::ZERO, Add::add)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for Cost {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let value: f64 = s
            .parse()
            .map_err(|_| GraphError::InvalidCost(s.to_string()))?;
        Cost::new(value)
    }
}

impl Serialize for Cost {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.0)
    }
}

impl<'de> Deserialize<'de> for Cost {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = f64::deserialize(deserializer)?;
        Cost::new(raw).map_err(serde::de::Error::custom)
    }
}

/// A street, walkway or any other connection between two nodes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub from: NodeId,
    pub to: NodeId,
    pub cost: Cost,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl Edge {
    pub fn new(from: NodeId, to: NodeId, cost: Cost) -> Self {
        Edge {
            from,
            to,
            cost,
            name: None,
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// The same connection walked in the opposite direction.
    pub fn reversed(&self) -> Edge {
        Edge {
            from: self.to.clone(),
            to: self.from.clone(),
            cost: self.cost,
            name: self.name.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Directedness {
    Directed,
    #[default]
    Undirected,
}

impl fmt::Display for Directedness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Directedness::Directed => "directed",
            Directedness::Undirected => "undirected",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Adjacent {
    pub node: usize,
    pub cost: Cost,
    pub edge: usize,
}

/// Immutable weighted network.
///
/// Nodes are kept in lexicographic order and every adjacency list is sorted by
/// neighbor id, so no query result depends on the order the input arrived in.
/// Undirected edges are stored once (with `from < to`) and show up in the
/// adjacency of both endpoints.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(into = "GraphRepr", try_from = "GraphRepr")]
pub struct Graph {
    directedness: Directedness,
    nodes: Vec<NodeId>,
    index: HashMap<NodeId, usize>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<Adjacent>>,
}

/// JSON shape of a graph: `{directedness, nodes, edges}`.
#[derive(Serialize, Deserialize)]
struct GraphRepr {
    #[serde(default)]
    directedness: Directedness,
    #[serde(default)]
    nodes: Vec<NodeId>,
    edges: Vec<Edge>,
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            directedness: g.directedness,
            nodes: g.nodes,
            edges: g.edges,
        }
    }
}

impl TryFrom<GraphRepr> for Graph {
    type Error = GraphError;

    /// Endpoints missing from `nodes` are added, so `nodes` only needs to
    /// list isolated nodes.
    fn try_from(r: GraphRepr) -> Result<Self, GraphError> {
        let mut nodes = r.nodes;
        let mut seen: HashSet<NodeId> = nodes.iter().cloned().collect();
        for e in &r.edges {
            for end in [&e.from, &e.to] {
                if seen.insert(end.clone()) {
                    nodes.push(end.clone());
                }
            }
        }
        Graph::build(nodes, r.edges, r.directedness)
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.directedness == other.directedness
            && self.nodes == other.nodes
            && self.edges == other.edges
    }
}

impl Graph {
    /// Validates and assembles a graph. Every edge endpoint must be listed in
    /// `nodes`.
    pub fn build(
        nodes: impl IntoIterator<Item = NodeId>,
        edges: impl IntoIterator<Item = Edge>,
        directedness: Directedness,
    ) -> Result<Graph, GraphError> {
        let mut nodes: Vec<NodeId> = nodes.into_iter().collect();
        nodes.sort();
        if let Some(dup) = nodes.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateNode(dup[0].clone()));
        }
        let index: HashMap<NodeId, usize> = nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();

        let mut canonical = Vec::new();
        let mut seen = HashSet::new();
        for edge in edges {
            for end in [&edge.from, &edge.to] {
                if !index.contains_key(end) {
                    return Err(GraphError::DanglingEndpoint {
                        from: edge.from.clone(),
                        to: edge.to.clone(),
                        missing: end.clone(),
                    });
                }
            }
            if edge.from == edge.to {
                return Err(GraphError::SelfLoop(edge.from));
            }
            let edge = if directedness == Directedness::Undirected && edge.from > edge.to {
                edge.reversed()
            } else {
                edge
            };
            if !seen.insert((edge.from.clone(), edge.to.clone())) {
                return Err(GraphError::DuplicateEdge {
                    from: edge.from,
                    to: edge.to,
                });
            }
            canonical.push(edge);
        }
        canonical.sort_by(|a, b| (&a.from, &a.to).cmp(&(&b.from, &b.to)));

        let mut adjacency = vec![Vec::new(); nodes.len()];
        for (e, edge) in canonical.iter().enumerate() {
            let (u, v) = (index[&edge.from], index[&edge.to]);
            adjacency[u].push(Adjacent {
                node: v,
                cost: edge.cost,
                edge: e,
            });
            if directedness == Directedness::Undirected {
                adjacency[v].push(Adjacent {
                    node: u,
                    cost: edge.cost,
                    edge: e,
                });
            }
        }
        for list in &mut adjacency {
            list.sort_by_key(|a| a.node);
        }

        Ok(Graph {
            directedness,
            nodes,
            index,
            edges: canonical,
            adjacency,
        })
    }

    /// Builds a graph whose node set is exactly the edge endpoints.
    pub fn from_edges(
        edges: impl IntoIterator<Item = Edge>,
        directedness: Directedness,
    ) -> Result<Graph, GraphError> {
        let edges: Vec<Edge> = edges.into_iter().collect();
        let mut nodes: Vec<NodeId> = edges
            .iter()
            .flat_map(|e| [e.from.clone(), e.to.clone()])
            .collect();
        nodes.sort();
        nodes.dedup();
        Graph::build(nodes, edges, directedness)
    }

    pub fn directedness(&self) -> Directedness {
        self.directedness
    }

    pub fn is_directed(&self) -> bool {
        self.directedness == Directedness::Directed
    }

    /// Nodes in lexicographic order.
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    /// Edges sorted by `(from, to)`; undirected edges have `from < to`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, node: &str) -> bool {
        self.index.contains_key(node)
    }

    /// Resolves a textual id to the graph's own `NodeId`.
    pub fn node(&self, node: &str) -> Result<&NodeId, GraphError> {
        self.index_of(node).map(|i| &self.nodes[i])
    }

    /// Nodes one edge away from `node` (outgoing edges only when directed),
    /// each with the connecting edge's cost, ordered by neighbor id.
    pub fn neighbors(&self, node: &str) -> Result<Vec<(&NodeId, Cost)>, GraphError> {
        let i = self.index_of(node)?;
        Ok(self.adjacency[i]
            .iter()
            .map(|a| (&self.nodes[a.node], a.cost))
            .collect())
    }

    /// The edge leading from `from` to `to`, oriented in that direction.
    pub fn edge_between(&self, from: &str, to: &str) -> Option<Edge> {
        let u = self.index.get(from)?;
        let v = self.index.get(to)?;
        self.adjacency[*u]
            .binary_search_by_key(v, |a| a.node)
            .ok()
            .map(|pos| self.oriented_edge(*u, self.adjacency[*u][pos]))
    }

    pub(crate) fn index_of(&self, node: &str) -> Result<usize, GraphError> {
        self.index
            .get(node)
            .copied()
            .ok_or_else(|| GraphError::UnknownNode(node.to_string()))
    }

    pub(crate) fn id(&self, index: usize) -> &NodeId {
        &self.nodes[index]
    }

    pub(crate) fn adjacent(&self, index: usize) -> &[Adjacent] {
        &self.adjacency[index]
    }

    /// The stored edge behind an adjacency entry, flipped if needed so it
    /// leaves `from`.
    pub(crate) fn oriented_edge(&self, from: usize, adj: Adjacent) -> Edge {
        let edge = &self.edges[adj.edge];
        if edge.from == self.nodes[from] {
            edge.clone()
        } else {
            edge.reversed()
        }
    }
}

/// A sequence of edges leading from `origin` to `destination`.
///
/// Edges are oriented in walking direction. `total_cost` is the left-to-right
/// sum of the edge costs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Path {
    pub origin: NodeId,
    pub destination: NodeId,
    pub edges: Vec<Edge>,
    pub total_cost: Cost,
}

impl Path {
    /// The zero-length path that stays at `node`.
    pub fn trivial(node: NodeId) -> Path {
        Path {
            origin: node.clone(),
            destination: node,
            edges: Vec::new(),
            total_cost: Cost::ZERO,
        }
    }

    /// Chains `edges` starting at `origin`, computing destination and cost.
    /// Connectivity is not checked here; see [`validate_path`].
    pub fn from_edges(origin: NodeId, edges: Vec<Edge>) -> Path {
        let destination = edges
            .last()
            .map_or_else(|| origin.clone(), |e| e.to.clone());
        let total_cost = edges.iter().map(|e| e.cost).sum();
        Path {
            origin,
            destination,
            edges,
            total_cost,
        }
    }

    /// Node sequence visited by the path, origin first.
    pub fn nodes(&self) -> Vec<&NodeId> {
        std::iter::once(&self.origin)
            .chain(self.edges.iter().map(|e| &e.to))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nodes: Vec<&str> = self.nodes().into_iter().map(NodeId::as_str).collect();
        write!(f, "{} (cost {})", nodes.join(" "), self.total_cost)
    }
}

/// True iff `path` is a real walk in `graph`: every edge exists with the
/// stated cost (and name, when the path names it), consecutive edges share
/// endpoints, and the total is the exact left-to-right sum.
pub fn validate_path(graph: &Graph, path: &Path) -> bool {
    if !graph.contains(path.origin.as_str()) || !graph.contains(path.destination.as_str()) {
        return false;
    }
    let mut at = &path.origin;
    let mut total = Cost::ZERO;
    for edge in &path.edges {
        if &edge.from != at {
            return false;
        }
        let Some(actual) = graph.edge_between(edge.from.as_str(), edge.to.as_str()) else {
            return false;
        };
        if actual.cost != edge.cost {
            return false;
        }
        if edge.name.is_some() && edge.name != actual.name {
            return false;
        }
        total = total + edge.cost;
        at = &edge.to;
    }
    at == &path.destination && total == path.total_cost
}
