//! Exact independence-structure invariants for small graphs: α, μ, core,
//! corona, ker and the critical difference, with the unicyclic decomposition
//! and executable checkers for the surrounding theorems.

pub mod budget;
pub mod canon;
pub mod corpus;
pub mod critical;
pub mod error;
pub mod graph;
pub mod independence;
pub mod lab;
pub mod matching;
pub mod unicyclic;

pub use budget::Budget;
pub use error::{Error, GraphErrorKind, Result};
pub use graph::{parse_edge_list, Edge, Graph, ShapeClass, ShapeKind, VertexSet};
