//! Bridges of sphere subcomplexes, ear decompositions and marked S-decompositions.

mod bridges;
mod ears;
mod sdecomp;
mod search;

use thiserror::Error;

pub use bridges::{
    bridges, classify_pair, segments, Bridge, OverlapKind, PairClass, SegmentPartition,
    MAX_SKEW_PROJECTION,
};
pub use ears::{
    ear_decomposition, ear_violation, verify_ear_decomposition, Ear, EarDecomposition, EarOutcome,
};
pub use sdecomp::{marked_s_decomposition, reassemble, MarkedComponent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("sphere is not a subcomplex of the host: {0}")]
    SphereNotSubcomplex(String),
    #[error("projection is not a subcomplex of the sphere: {0}")]
    NotSubcomplex(String),
    #[error("bridges belong to different spheres")]
    BridgesOfDifferentSpheres,
    #[error("complex is not closed")]
    NotClosed,
    #[error("complex is not connected")]
    Disconnected,
    #[error("not a vertex cut: {0}")]
    NotACut(String),
    #[error("inconsistent markers: {0}")]
    InconsistentMarkers(String),
}
