//! Command-line front end and HTTP session API for the wayfinder engine.

pub mod api;
pub mod commands;
pub mod load;

pub use commands::{run, Outcome};
