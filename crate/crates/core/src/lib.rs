//! First Dirichlet eigenvalues of graphs with boundary.
//!
//! The crate bundles a graph-with-boundary data model, a dense symmetric
//! eigensolver, closed-form eigenvalue bounds with a certifier, constructive
//! path covering/packing decompositions, generators for the sharpness and
//! extremal families, and an isomorphism-free extremal tree search.

pub mod bounds;
pub mod decomp;
pub mod extremal;
pub mod families;
pub mod graph;
pub mod spectral;

pub use graph::{BoundaryGraph, Graph, GraphError, GraphJson, GraphMetrics, VertexId};
pub use spectral::{DirichletEigenpair, Spectrum, SymmetricMatrix, DEFAULT_TOL};
