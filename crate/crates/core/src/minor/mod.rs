//! Deletion, contraction and the minor relation.

mod ops;
mod oracle;
mod search;
mod witness;

pub use ops::{contract, delete_face, delete_facet, merge_multiples, remove_vertex};
pub use oracle::{brute_force_minor, ORACLE_MAX_FACETS, ORACLE_MAX_VERTICES};
pub use search::{
    has_minor, has_minor_with_stats, MinorError, MinorResult, SearchBudget, SearchStats,
    MAX_HOST_VERTICES,
};
pub use witness::{verify_witness, witness_violation, AssignedFacet, MinorWitness};
