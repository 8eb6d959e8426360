use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::MapError;
use crate::graph::{Cost, Directedness, Edge, Graph, NodeId, Path};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Place {
    pub id: NodeId,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Street {
    pub name: String,
    pub from: NodeId,
    pub to: NodeId,
    pub length: Cost,
}

/// Places and street intersections joined by named two-way streets.
///
/// JSON shape: `{places: [{id, name}], intersections: [id], streets: [{name,
/// from, to, length}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CityMap {
    pub places: Vec<Place>,
    #[serde(default)]
    pub intersections: Vec<NodeId>,
    #[serde(default)]
    pub streets: Vec<Street>,
}

pub fn parse_city_map(text: &str) -> Result<CityMap, MapError> {
    let map: CityMap = serde_json::from_str(text).map_err(|e| MapError::Parse(e.to_string()))?;
    map.validate()?;
    Ok(map)
}

impl CityMap {
    pub fn validate(&self) -> Result<(), MapError> {
        let mut declared = HashSet::new();
        for id in self.places.iter().map(|p| &p.id).chain(&self.intersections) {
            if !declared.insert(id) {
                return Err(MapError::Validation(format!("node {id} is declared twice")));
            }
        }
        let mut names = HashSet::new();
        for street in &self.streets {
            if street.name.is_empty() || street.name.contains(char::is_whitespace) {
                return Err(MapError::Validation(format!(
                    "street name {:?} must be a single word",
                    street.name
                )));
            }
            if !names.insert(street.name.as_str()) {
                return Err(MapError::Validation(format!(
                    "street {} is declared twice",
                    street.name
                )));
            }
            for end in [&street.from, &street.to] {
                if !declared.contains(end) {
                    return Err(MapError::Validation(format!(
                        "street {} references undeclared node {end}",
                        street.name
                    )));
                }
            }
        }
        self.to_graph().map(|_| ())
    }

    pub fn place_name(&self, id: &str) -> Option<&str> {
        self.places
            .iter()
            .find(|p| p.id.as_str() == id)
            .map(|p| p.name.as_str())
    }

    /// Undirected network with one named edge per street.
    pub fn to_graph(&self) -> Result<Graph, MapError> {
        let nodes = self
            .places
            .iter()
            .map(|p| p.id.clone())
            .chain(self.intersections.iter().cloned());
        let edges = self
            .streets
            .iter()
            .map(|s| Edge::new(s.from.clone(), s.to.clone(), s.length).named(s.name.clone()));
        Graph::build(nodes, edges, Directedness::Undirected)
            .map_err(|e| MapError::Validation(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("city maps always serialise")
    }
}

/// Follows the named streets one after another starting at `origin`.
/// Returns `None` if some street does not touch the node reached so far.
pub fn street_walk(graph: &Graph, origin: &str, streets: &[&str]) -> Option<Path> {
    let origin = graph.node(origin).ok()?.clone();
    let mut at = origin.clone();
    let mut edges = Vec::with_capacity(streets.len());
    for &street in streets {
        let next = graph
            .neighbors(at.as_str())
            .ok()?
            .into_iter()
            .filter_map(|(n, _)| graph.edge_between(at.as_str(), n.as_str()))
            .find(|e| e.name.as_deref() == Some(street))?;
        at = next.to.clone();
        edges.push(next);
    }
    Some(Path::from_edges(origin, edges))
}
