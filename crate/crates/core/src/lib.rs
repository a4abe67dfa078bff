//! Incidence coloring of hypergraphs.
//!
//! An incidence of a hypergraph is a pair `(x, s)` with vertex `x` in edge
//! `s`. Two incidences conflict when they share the vertex, or when both
//! vertices lie in one of the two edges. This crate builds the structures
//! around that relation (Levi graph, line-graph square, conflict graph),
//! colors incidences greedily, exactly, or optimally on alpha-acyclic linear
//! hypergraphs, embeds hypergraphs into uniform regular ones, and audits the
//! distance-2 counting bounds on biregular bipartite graphs.

pub mod acyclicity;
pub mod bounds;
pub mod coloring;
pub mod completion;
pub mod error;
pub mod generators;
pub mod hypergraph;
pub mod levi;
pub mod tree_color;

pub use error::{Error, Result};
pub use hypergraph::{Hypergraph, Incidence, Semantics, StructureReport};
pub use levi::{BipartiteGraph, ConflictGraph, SimpleGraph};
