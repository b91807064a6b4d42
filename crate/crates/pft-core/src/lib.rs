//! Exact maximum-flow toolkit for embedded planar digraphs.
//!
//! Capabilities: single-pair max flow (a generic blocking-flow oracle and an
//! embedding-aware engine), single-source all-sinks value vectors with a
//! baseline and an incremental fast engine, the all-pairs value table,
//! distinct-value counting, canonical minimum cut-sets over all ordered
//! pairs, deterministic instance generators, and certificate checkers.
//! All capacities and flow values are non-negative integers; arithmetic is
//! exact throughout.

pub mod dimacs;
pub mod engines;
pub mod error;
pub mod graph;
pub mod instances;
pub mod multisink;
pub mod cutsets;
pub mod prng;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{
    build_graph, derive_dual, validate_embedding, Arc, ArcId, Dart, DualGraph, FaceId,
    FaceStructure, PlanarDigraph, VertexId,
};
