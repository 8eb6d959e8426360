//! Plain-text edge-list format.
//!
//! ```text
//! # comment
//! undirected
//! A B 4
//! A C 2 Main
//! Z
//! ```
//!
//! The first non-comment line is `directed` or `undirected`. Each following
//! line is `FROM TO COST [NAME]`, fields separated by single spaces. A line
//! holding a single id declares a node with no edges; the writer only emits
//! such lines for isolated nodes.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Cost, Directedness, Edge, Graph, GraphError, NodeId};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("empty edge list: expected a `directed` or `undirected` header")]
    MissingHeader,
    #[error("line {line}: expected `directed` or `undirected`, found {found:?}")]
    BadHeader { line: usize, found: String },
    #[error("line {line}: expected `FROM TO COST [NAME]` separated by single spaces")]
    BadRecord { line: usize },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, raw)| {
            let content = raw.split_once('#').map_or(raw, |(before, _)| before);
            (i + 1, content.trim())
        })
        .filter(|(_, l)| !l.is_empty());

    let directedness = match lines.next() {
        None => return Err(ParseError::MissingHeader),
        Some((_, "directed")) => Directedness::Directed,
        Some((_, "undirected")) => Directedness::Undirected,
        Some((line, other)) => {
            return Err(ParseError::BadHeader {
                line,
                found: other.to_string(),
            })
        }
    };

    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for (line, content) in lines {
        let fields: Vec<&str> = content.split(' ').collect();
        if fields.iter().any(|f| f.is_empty()) {
            return Err(ParseError::BadRecord { line });
        }
        let invalid = |source| ParseError::Invalid { line, source };
        match fields.as_slice() {
            [node] => nodes.push(NodeId::new(*node).map_err(invalid)?),
            [from, to, cost, rest @ ..] if rest.len() <= 1 => {
                let from = NodeId::new(*from).map_err(invalid)?;
                let to = NodeId::new(*to).map_err(invalid)?;
                let cost: Cost = cost.parse().map_err(invalid)?;
                let mut edge = Edge::new(from, to, cost);
                if let Some(name) = rest.first() {
                    edge = edge.named(*name);
                }
                edges.push(edge);
            }
            _ => return Err(ParseError::BadRecord { line }),
        }
    }

    nodes.extend(edges.iter().flat_map(|e| [e.from.clone(), e.to.clone()]));
    nodes.sort();
    nodes.dedup();
    Ok(Graph::build(nodes, edges, directedness)?)
}

/// Canonical text form of `graph`: header, edges in `(from, to)` order, then
/// any isolated nodes.
pub fn write_edge_list(graph: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{}", graph.directedness()).unwrap();
    for edge in graph.edges() {
        write!(out, "{} {} {}", edge.from, edge.to, edge.cost).unwrap();
        if let Some(name) = &edge.name {
            write!(out, " {name}").unwrap();
        }
        out.push('\n');
    }
    let touched: HashSet<&NodeId> = graph
        .edges()
        .iter()
        .flat_map(|e| [&e.from, &e.to])
        .collect();
    for node in graph.nodes().iter().filter(|n| !touched.contains(n)) {
        writeln!(out, "{node}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fig2_fixture_parses() {
        let g = parse_edge_list(fixtures::FIG2_EDGES).unwrap();
        assert_eq!(g.node_count(), 6);
        assert_eq!(g.edge_count(), 9);
        assert!(!g.is_directed());
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_edge_list("# hello\n\nundirected # trailing\nA B 1 # x\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn header_errors() {
        assert_eq!(parse_edge_list("# only\n"), Err(ParseError::MissingHeader));
        assert!(matches!(
            parse_edge_list("A B 1\n"),
            Err(ParseError::BadHeader { line: 1, .. })
        ));
    }

    #[test]
    fn record_errors() {
        assert_eq!(
            parse_edge_list("undirected\nA  B 1\n"),
            Err(ParseError::BadRecord { line: 2 })
        );
        assert_eq!(
            parse_edge_list("undirected\nA B\n"),
            Err(ParseError::BadRecord { line: 2 })
        );
        assert_eq!(
            parse_edge_list("undirected\nA B 1 Main St\n"),
            Err(ParseError::BadRecord { line: 2 })
        );
        assert!(matches!(
            parse_edge_list("undirected\nA B -1\n"),
            Err(ParseError::Invalid {
                line: 2,
                source: GraphError::NegativeCost(_)
            })
        ));
        assert!(matches!(
            parse_edge_list("undirected\nA B four\n"),
            Err(ParseError::Invalid {
                source: GraphError::InvalidCost(_),
                ..
            })
        ));
        assert!(matches!(
            parse_edge_list("undirected\nA B 1\nB A 2\n"),
            Err(ParseError::Graph(GraphError::DuplicateEdge { .. }))
        ));
    }

    #[test]
    fn isolated_nodes_survive_round_trip() {
        let text = "undirected\nA B 1.5 Elm\nZ\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(write_edge_list(&g), text);
    }

    #[test]
    fn writer_is_canonical() {
        let g = parse_edge_list("undirected\nC B 2\nB A 1\n").unwrap();
        assert_eq!(write_edge_list(&g), "undirected\nA B 1\nB C 2\n");
    }
}
