//! Uniform simplicial hypergraphs and their minors.
//!
//! A d-uniform complex is a set of facets with d vertices each, together with
//! all of their faces. The crate provides the local structure (faces, links,
//! skeletons, pendant facets), deletion and contraction, a branch-set minor
//! search with checkable witnesses, integral homology, vertex connectivity,
//! bridges and ear decompositions of sphere subcomplexes, generators for the
//! complete and complete bipartite families, and an embeddability recognizer
//! based on the two forbidden minors K_{d+3}^d and K_{3,d+1}^d.

pub mod complex;
pub mod generators;
pub mod graph;
pub mod io;
pub mod iso;
pub mod minor;
pub mod recognizer;
pub mod structure;
pub mod topo;

pub use complex::{complex, ComplexError, FaceKey, UniformComplex, VertexId};
pub use iso::{canonical_form, canonical_labeling, is_isomorphic, CanonicalForm, IsoCertificate};
