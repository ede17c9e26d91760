//! Construction and verification of block designs and clique decompositions of
//! hypergraphs by iterative absorption, at sizes where every step can be checked
//! exhaustively.

pub mod absorb;
pub mod boost;
pub mod complex;
pub mod coverdown;
pub mod divisibility;
pub mod error;
pub mod exact;
pub mod hypergraph;
pub mod packing;
pub mod params;
pub mod properties;
pub mod set;
pub mod vortex;

pub use complex::Complex;
pub use error::{Error, Result};
pub use hypergraph::{MultiRGraph, RGraph};
pub use params::{Budget, ParamSet};
pub use set::{binomial, Vertex, VertexSet};
