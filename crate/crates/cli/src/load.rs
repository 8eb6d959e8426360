//! Reading networks from files in any of the supported formats.

use std::path::Path;

use serde_json::Value;
use wayfinder::mapkit::{parse_city_map, parse_grid, CityMap, GridMap};
use wayfinder::{parse_edge_list, Graph};

/// A JSON network, told apart by shape: a city map has `streets`, anything
/// else is read as `{directedness, nodes, edges}`.
pub fn graph_from_json(value: Value) -> Result<Graph, String> {
    if value.get("streets").is_some() {
        let map: CityMap = parse_city_map(&value.to_string()).map_err(|e| e.to_string())?;
        map.to_graph().map_err(|e| e.to_string())
    } else {
        serde_json::from_value(value).map_err(|e| e.to_string())
    }
}

/// Edge-list text, or JSON when the first non-blank character is `{`.
pub fn graph_from_text(text: &str) -> Result<Graph, String> {
    if text.trim_start().starts_with('{') {
        let value: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
        graph_from_json(value)
    } else {
        parse_edge_list(text).map_err(|e| e.to_string())
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn load_graph(path: &Path) -> Result<Graph, String> {
    graph_from_text(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn load_grid(path: &Path) -> Result<GridMap, String> {
    parse_grid(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}
