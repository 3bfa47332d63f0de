//! List coloring of K5-minor-free graphs with lists of size `min{d(v), k}`.

pub mod error;
pub mod gadgets;
pub mod graph;
pub mod io;
pub mod minor;
pub mod peel;
pub mod peelgen;
pub mod solver;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Color, Coloring, Graph, ListAssignment, Vertex};
