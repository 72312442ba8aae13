pub mod centrality;
pub mod cli;
pub mod enumeration;
pub mod error;
pub mod generators;
pub mod graph;
pub mod group;
pub mod hikes;
pub mod linalg;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{load_edge_list, Graph, VertexSubset};
