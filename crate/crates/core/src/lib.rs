//! Color refinement, biconnectivity, and graph distances for comparing the
//! expressive power of Weisfeiler-Lehman style algorithms.

pub mod biconnect;
pub mod distances;
mod error;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod refine;

pub use error::{Error, Result};
pub use graph::{Graph, Partition};
