//! Turning human-readable maps into networks.
//!
//! [`city`] reads named-street neighborhood maps; [`grid`] reads ASCII floor
//! plans where `#` cells are off limits.

pub mod city;
pub mod grid;

use thiserror::Error;

pub use city::{parse_city_map, street_walk, CityMap, Place, Street};
pub use grid::{grid_to_graph, parse_grid, Cell, GridMap};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MapError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid map: {0}")]
    Validation(String),
    #[error("row {row} has {found} cells, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("marker {0:?} appears more than once")]
    DuplicateMarker(char),
}
