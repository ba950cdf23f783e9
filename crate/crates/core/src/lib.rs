//! Finite-graph toolkit for cographs and graph classes defined by a
//! forbidden induced subgraph.
//!
//! - [`graph`]: simple graphs, graph operations and the text format.
//! - [`search`]: brute-force induced-embedding, isomorphism and
//!   automorphism oracles.
//! - [`cotree`]: decomposition trees, modules and the tree read back from
//!   the graph.
//! - [`embedding`]: induced subgraphs of cographs via cotree embeddings,
//!   vertex deletion on cotrees, cycle antichains.
//! - [`gadget`]: encoding any graph as a graph avoiding a forbidden one.
//! - [`types`]: extensions, existential formulas and bounded types.
//! - [`automorphism`]: automorphism groups and the order-3 construction.
//! - [`canon`], [`enumerate`]: canonical certificates and exhaustive
//!   generators for small instances.

pub mod automorphism;
pub mod canon;
pub mod cotree;
pub mod embedding;
pub mod enumerate;
pub mod gadget;
pub mod graph;
pub mod search;
pub mod types;

pub use cotree::{decompose, Cotree, CotreeError, Label};
pub use graph::{combine, labeled_chain_sum, Combine, Graph, GraphError, VertexMap};
pub use search::{find_induced_embedding, is_free, is_isomorphic};
