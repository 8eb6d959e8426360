#![allow(dead_code)]

use wayfinder::{parse_edge_list, Graph};
use wayfinder_oracle::{node_name, SmallGraph};

pub fn to_graph(g: &SmallGraph) -> Graph {
    parse_edge_list(&g.to_edge_list()).expect("oracle graphs are valid")
}

pub fn name(i: usize) -> String {
    node_name(i)
}
