//! Branch-decomposition dynamic programs for planar cycle packing and
//! monochromatic disjoint paths, exact brute-force oracles, and generators for
//! the gadget reductions that show these running times are tight.

pub mod decomp;
pub mod dp;
pub mod embedding;
pub mod error;
pub mod generators;
pub mod graph;
pub mod noncross;
pub mod oracle;
pub mod par;
pub mod reductions;

pub use error::{Error, Result};
pub use graph::{ColoredGraph, Graph, Instance, RequestSet, Vertex};
