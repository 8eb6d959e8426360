//! Networks shipped with the crate.

/// Six-node undirected example network used throughout the docs and tests.
pub const FIG2_EDGES: &str = include_str!("../fixtures/fig2.edges");
/// Two components, `{A, B, C}` and `{Y, Z}`.
pub const DISCONNECTED_EDGES: &str = include_str!("../fixtures/disconnected.edges");
/// Neighborhood map with named streets between houses, a pond, a school and a
/// grocery store.
pub const CITYMAP_JSON: &str = include_str!("../fixtures/citymap.json");
/// Supermarket floor plan with shelves as blocked cells.
pub const SUPERMARKET_GRID: &str = include_str!("../fixtures/supermarket.grid");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub format: &'static str,
    pub content: &'static str,
}

pub const ALL: &[Fixture] = &[
    Fixture {
        name: "fig2.edges",
        format: "edge-list",
        content: FIG2_EDGES,
    },
    Fixture {
        name: "disconnected.edges",
        format: "edge-list",
        content: DISCONNECTED_EDGES,
    },
    Fixture {
        name: "citymap.json",
        format: "citymap",
        content: CITYMAP_JSON,
    },
    Fixture {
        name: "supermarket.grid",
        format: "grid",
        content: SUPERMARKET_GRID,
    },
];

pub fn by_name(name: &str) -> Option<&'static Fixture> {
    ALL.iter().find(|f| f.name == name)
}
