//! Balanced bipartite graphs: bipartite graphs with no induced cycle of
//! length 2 (mod 4).
//!
//! The crate provides the graph substrate (bitset adjacency, canonical
//! labelling, graph6), balance recognition with witnesses, Cayley and
//! circulant constructions with `(l,t)`-cycle recognition, an exact-cover
//! search for the divisibility argument, embedded planar graphs with the
//! cube-based generation operations, and an orderly census of cubic
//! bipartite graphs.

pub mod balance;
pub mod cayley;
pub mod enumeration;
pub mod error;
pub mod graph;
pub mod matrix;
pub mod planar;
pub mod polytope;
pub mod report;

pub use error::{Error, Result};
pub use graph::Graph;
