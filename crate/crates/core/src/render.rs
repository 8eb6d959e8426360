//! Text table and Graphviz DOT output for worksheets and spanning trees.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::dijkstra::{LabelTable, SpanningTree};
use crate::graph::Graph;

/// Aligned `node dist last shaded` table, one row per node in id order.
/// Blank cells are written as `-`.
pub fn format_table(table: &LabelTable) -> String {
    let header = ["node", "dist", "last", "shaded"];
    let rows: Vec<[String; 4]> = table
        .labels
        .iter()
        .map(|(node, l)| {
            [
                node.to_string(),
                l.dist.map_or_else(|| "-".to_string(), |d| d.to_string()),
                l.last
                    .as_ref()
                    .map_or_else(|| "-".to_string(), |n| n.to_string()),
                if l.shaded { "yes" } else { "no" }.to_string(),
            ]
        })
        .collect();

    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }

    let mut out = String::new();
    let mut push_row = |cells: [&str; 4]| {
        let line: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    };
    push_row(header);
    for row in &rows {
        push_row([&row[0], &row[1], &row[2], &row[3]]);
    }
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT rendering of `graph` with the worksheet labels on the nodes. Tree edges
/// carry `class="tree"`; how they are drawn is left to the renderer.
pub fn to_dot(graph: &Graph, table: &LabelTable, tree: &SpanningTree) -> String {
    let (keyword, arrow) = if graph.is_directed() {
        ("digraph", "->")
    } else {
        ("graph", "--")
    };
    let tree_edges: BTreeSet<(&str, &str)> = tree
        .edges()
        .flat_map(|e| {
            let fwd = (e.from.as_str(), e.to.as_str());
            if graph.is_directed() {
                vec![fwd]
            } else {
                vec![fwd, (e.to.as_str(), e.from.as_str())]
            }
        })
        .collect();

    let mut out = String::new();
    writeln!(out, "{keyword} shortest_path_tree {{").unwrap();
    for node in graph.nodes() {
        let label = table.get(node.as_str()).cloned().unwrap_or_default();
        let dist = label
            .dist
            .map_or_else(|| "-".to_string(), |d| d.to_string());
        let last = label
            .last
            .map_or_else(|| "-".to_string(), |n| n.to_string());
        let mut attrs = vec![format!(
            "label={}",
            quote(&format!("{node}\\ndist={dist}\\nlast={last}"))
        )];
        if *node == table.origin {
            attrs.push("class=\"origin\"".into());
        }
        if label.shaded {
            attrs.push("style=filled".into());
        }
        writeln!(out, "  {} [{}];", quote(node.as_str()), attrs.join(", ")).unwrap();
    }
    for edge in graph.edges() {
        let mut attrs = vec![format!("label={}", quote(&edge.cost.to_string()))];
        if tree_edges.contains(&(edge.from.as_str(), edge.to.as_str())) {
            attrs.push("class=\"tree\"".into());
            attrs.push("style=bold".into());
            if !graph.is_directed() {
                // orient the highlight away from the origin
                let parent_is_from = tree
                    .parent(edge.to.as_str())
                    .is_some_and(|p| *p == edge.from);
                attrs.push(format!(
                    "dir={}",
                    if parent_is_from { "forward" } else { "back" }
                ));
            }
        }
        writeln!(
            out,
            "  {} {arrow} {} [{}];",
            quote(edge.from.as_str()),
            quote(edge.to.as_str()),
            attrs.join(", ")
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
