//! Homology, fundamental group heuristics and manifold certificates.

mod chain;
mod general;
mod homology;
mod manifold;
mod pi1;
mod snf;

use thiserror::Error;

pub use chain::{boundary_matrices, BoundaryMatrix, FaceComplex};
pub use general::{general_rd_check, GeneralCheckReport, GeneralVerdict};
pub use homology::{homology, homology_of, HomologyProfile};
pub use manifold::{
    certify_manifold_piece, CertStatus, Check, CheckOutcome, ManifoldCertificate, ManifoldKind,
};
pub use pi1::{
    fundamental_group_status, fundamental_group_status_with_budget, Pi1Status,
    DEFAULT_TIETZE_BUDGET,
};
pub use snf::{smith_normal_form, SmithForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopoError {
    #[error("complex is disconnected")]
    Disconnected,
    #[error("expected a {expected}-uniform complex, got {got}-uniform")]
    UniformityMismatch { expected: usize, got: usize },
}
