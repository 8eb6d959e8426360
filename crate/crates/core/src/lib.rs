//! Shortest paths on weighted networks, worked the way the pencil-and-paper
//! Dijkstra worksheet does it.
//!
//! * [`graph`] and [`edgelist`]: the network model and its text format.
//! * [`dijkstra`]: label tables, shortest-path spanning trees, path
//!   extraction and enumeration of all equal-cost shortest paths.
//! * [`session`]: an interactive worksheet that judges each student move.
//! * [`planner`]: closed tours through a set of destinations.
//! * [`mapkit`]: named-street city maps and ASCII grid floor plans.
//! * [`analysis`]: mean geodesic length, diameter and a ring-lattice
//!   generator for small-world demonstrations.

pub mod analysis;
pub mod dijkstra;
pub mod edgelist;
pub mod fixtures;
pub mod graph;
pub mod mapkit;
pub mod par;
pub mod planner;
pub mod render;
pub mod session;

pub use dijkstra::{
    all_shortest_paths, extract_path, run_dijkstra, LabelTable, NodeLabel, RouteError,
    ShortestPaths, SpanningTree,
};
pub use edgelist::{parse_edge_list, write_edge_list, ParseError};
pub use graph::{validate_path, Cost, Directedness, Edge, Graph, GraphError, NodeId, Path};
pub use par::Execution;
