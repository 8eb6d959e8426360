//! ASCII floor plans.
//!
//! ```text
//! E....#
//! .##..#
//! .....K
//! ```
//!
//! `.` is walkable, `#` is blocked and any ASCII letter or digit is a marker
//! on a walkable cell. Rows are separated by `\n`, all of equal width, with no
//! trailing spaces. Movement is 4-way at unit cost per step.

use std::collections::BTreeMap;

use super::MapError;
use crate::graph::{Cost, Directedness, Edge, Graph, NodeId, Path};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Cell {
        Cell { row, col }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridMap {
    width: usize,
    height: usize,
    blocked: Vec<bool>,
    markers: BTreeMap<char, Cell>,
}

pub fn parse_grid(text: &str) -> Result<GridMap, MapError> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    if body.is_empty() {
        return Err(MapError::Parse("empty grid".into()));
    }
    let rows: Vec<&str> = body.split('\n').collect();
    let width = rows[0].chars().count();
    let mut blocked = Vec::with_capacity(width * rows.len());
    let mut markers = BTreeMap::new();
    for (r, row) in rows.iter().enumerate() {
        let found = row.chars().count();
        if found != width || found == 0 {
            return Err(MapError::RaggedRows {
                row: r,
                expected: width,
                found,
            });
        }
        for (c, ch) in row.chars().enumerate() {
            match ch {
                '.' => blocked.push(false),
                '#' => blocked.push(true),
                m if m.is_ascii_alphanumeric() => {
                    if markers.insert(m, Cell::new(r, c)).is_some() {
                        return Err(MapError::DuplicateMarker(m));
                    }
                    blocked.push(false);
                }
                other => {
                    return Err(MapError::Parse(format!(
                        "unexpected character {other:?} at row {r}, column {c}"
                    )))
                }
            }
        }
    }
    Ok(GridMap {
        width,
        height: rows.len(),
        blocked,
        markers,
    })
}

impl GridMap {
    /// Fully open grid with no markers.
    pub fn open(width: usize, height: usize) -> GridMap {
        assert!(width > 0 && height > 0, "grid must have at least one cell");
        GridMap {
            width,
            height,
            blocked: vec![false; width * height],
            markers: BTreeMap::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn markers(&self) -> &BTreeMap<char, Cell> {
        &self.markers
    }

    pub fn marker(&self, label: char) -> Option<Cell> {
        self.markers.get(&label).copied()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row < self.height && cell.col < self.width
    }

    pub fn is_blocked(&self, cell: Cell) -> bool {
        self.blocked[cell.row * self.width + cell.col]
    }

    pub fn open_cells(&self) -> usize {
        self.blocked.iter().filter(|b| !**b).count()
    }

    /// Places `label` on an open cell, replacing any previous position.
    pub fn set_marker(&mut self, label: char, cell: Cell) -> Result<(), MapError> {
        if !label.is_ascii_alphanumeric() {
            return Err(MapError::Validation(format!(
                "marker {label:?} must be a letter or digit"
            )));
        }
        if !self.contains(cell) || self.is_blocked(cell) {
            return Err(MapError::Validation(format!(
                "marker {label} must sit on an open cell"
            )));
        }
        if self.markers.iter().any(|(&l, &c)| c == cell && l != label) {
            return Err(MapError::Validation(format!(
                "cell {cell:?} already has a marker"
            )));
        }
        self.markers.insert(label, cell);
        Ok(())
    }

    /// Blocks `cell`. Marker cells stay open.
    pub fn block(&mut self, cell: Cell) -> Result<(), MapError> {
        if !self.contains(cell) {
            return Err(MapError::Validation(format!(
                "{cell:?} is outside the grid"
            )));
        }
        if self.markers.values().any(|&c| c == cell) {
            return Err(MapError::Validation(format!("{cell:?} holds a marker")));
        }
        self.blocked[cell.row * self.width + cell.col] = true;
        Ok(())
    }

    /// Node id of an open cell: the marker letter when it carries one,
    /// `r{row}c{col}` otherwise.
    pub fn node_id(&self, cell: Cell) -> NodeId {
        let label = self
            .markers
            .iter()
            .find(|(_, &c)| c == cell)
            .map(|(l, _)| l.to_string())
            .unwrap_or_else(|| format!("r{}c{}", cell.row, cell.col));
        NodeId::new(label).expect("grid ids are valid")
    }

    pub fn cell_of(&self, node: &str) -> Option<Cell> {
        let mut chars = node.chars();
        if let (Some(c), None) = (chars.next(), chars.next()) {
            if let Some(cell) = self.marker(c) {
                return Some(cell);
            }
        }
        let (row, col) = node.strip_prefix('r')?.split_once('c')?;
        let cell = Cell::new(row.parse().ok()?, col.parse().ok()?);
        (self.contains(cell) && !self.is_blocked(cell) && self.node_id(cell).as_str() == node)
            .then_some(cell)
    }

    /// The plan in its text form, one `\n`-terminated line per row.
    pub fn to_text(&self) -> String {
        self.render(|_| None)
    }

    /// The plan with the cells along `path` drawn as `*` (markers are kept).
    pub fn render_path(&self, path: &Path) -> String {
        let on_path: Vec<Cell> = path
            .nodes()
            .into_iter()
            .filter_map(|n| self.cell_of(n.as_str()))
            .collect();
        self.render(|cell| on_path.contains(&cell).then_some('*'))
    }

    fn render(&self, overlay: impl Fn(Cell) -> Option<char>) -> String {
        let by_cell: BTreeMap<Cell, char> = self.markers.iter().map(|(&l, &c)| (c, l)).collect();
        let mut out = String::with_capacity((self.width + 1) * self.height);
        for row in 0..self.height {
            for col in 0..self.width {
                let cell = Cell::new(row, col);
                let ch = if let Some(&m) = by_cell.get(&cell) {
                    m
                } else if self.is_blocked(cell) {
                    '#'
                } else {
                    overlay(cell).unwrap_or('.')
                };
                out.push(ch);
            }
            out.push('\n');
        }
        out
    }
}

/// One node per open cell and a unit-cost undirected edge between every pair
/// of 4-adjacent open cells. Blocked cells have no node at all.
pub fn grid_to_graph(grid: &GridMap) -> Graph {
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    let one = Cost::new(1.0).unwrap();
    for row in 0..grid.height {
        for col in 0..grid.width {
            let cell = Cell::new(row, col);
            if grid.is_blocked(cell) {
                continue;
            }
            let id = grid.node_id(cell);
            for next in [Cell::new(row, col + 1), Cell::new(row + 1, col)] {
                if grid.contains(next) && !grid.is_blocked(next) {
                    edges.push(Edge::new(id.clone(), grid.node_id(next), one));
                }
            }
            nodes.push(id);
        }
    }
    Graph::build(nodes, edges, Directedness::Undirected).expect("grid graphs are well formed")
}
