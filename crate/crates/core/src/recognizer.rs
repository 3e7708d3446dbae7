//! Embeddability verdicts from the two forbidden minors K_{d+3}^d and K_{3,d+1}^d.
//!
//! A found minor is a sound obstruction on any input. Absence of both minors
//! is reported as embeddable only when the preconditions hold (closed,
//! connected, general R^d conditions, d-connected 1-skeleton) or the caller
//! asserts that the input is triangulated.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::UniformComplex;
use crate::generators::{complete_bipartite_uniform, complete_uniform, plain_k33};
use crate::graph::{one_skeleton, vertex_connectivity};
use crate::minor::{
    has_minor_with_stats, MinorError, MinorResult, MinorWitness, SearchBudget, SearchStats,
};
use crate::topo::{general_rd_check, GeneralCheckReport, GeneralVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ForbiddenMinor {
    /// K_{d+3}^d.
    Complete,
    /// K_{3,d+1}^d.
    Bipartite,
    /// The ordinary K_{3,3}, checked at d = 2 only.
    K33,
}

impl ForbiddenMinor {
    pub fn target(self, d: usize) -> UniformComplex {
        match self {
            ForbiddenMinor::Complete => complete_uniform(d + 3, d).expect("d >= 2"),
            ForbiddenMinor::Bipartite => complete_bipartite_uniform(3, d + 1, d).expect("d >= 2"),
            ForbiddenMinor::K33 => plain_k33(),
        }
    }

    /// Targets searched at uniformity `d`, in reporting order.
    pub fn for_uniformity(d: usize) -> Vec<ForbiddenMinor> {
        if d == 2 {
            vec![
                ForbiddenMinor::Complete,
                ForbiddenMinor::Bipartite,
                ForbiddenMinor::K33,
            ]
        } else {
            vec![ForbiddenMinor::Complete, ForbiddenMinor::Bipartite]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreconditionReport {
    pub connected: bool,
    pub closed: bool,
    pub pendant_count: usize,
    pub general: GeneralCheckReport,
    pub skeleton_connectivity: usize,
    pub skeleton_d_connected: bool,
    /// Being the skeleton of a closed R^{d+1}-hypergraph is never decided here.
    pub triangulated_asserted: bool,
    pub failures: Vec<String>,
}

impl PreconditionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_preconditions(c: &UniformComplex) -> PreconditionReport {
    let d = c.d();
    let connected = c.is_connected();
    let pendant_count = c.pendant_simplexoids().len();
    let closed = c.facet_count() > 0 && pendant_count == 0;
    let general = general_rd_check(c);
    let skeleton = one_skeleton(&c.compact());
    let skeleton_connectivity = vertex_connectivity(&skeleton).map(|(k, _)| k).unwrap_or(0);
    let skeleton_d_connected = skeleton.vertex_count() > d && skeleton_connectivity >= d;
    let mut failures = Vec::new();
    if !connected {
        failures.push("not connected".to_string());
    }
    if !closed {
        failures.push(format!("not closed: {pendant_count} pendant facets"));
    }
    if general.verdict == GeneralVerdict::Fail {
        failures.extend(
            general
                .failures
                .iter()
                .map(|f| format!("general conditions: {f}")),
        );
    }
    if !skeleton_d_connected {
        failures.push(format!(
            "1-skeleton is {skeleton_connectivity}-connected, below {d}"
        ));
    }
    PreconditionReport {
        connected,
        closed,
        pendant_count,
        general,
        skeleton_connectivity,
        skeleton_d_connected,
        triangulated_asserted: false,
        failures,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EmbeddingStatus {
    Embeddable,
    NonEmbeddable {
        which: ForbiddenMinor,
        witness: MinorWitness,
    },
    /// Both minors are absent but the preconditions of the characterization fail.
    MinorFreeUnverified,
    Unknown {
        reason: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchOutcome {
    Found,
    NotFound,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub target: ForbiddenMinor,
    pub outcome: SearchOutcome,
    pub stats: SearchStats,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: EmbeddingStatus,
    pub preconditions: PreconditionReport,
    pub searches: Vec<SearchRecord>,
}

impl Verdict {
    pub fn is_embeddable(&self) -> bool {
        matches!(self.status, EmbeddingStatus::Embeddable)
    }

    pub fn is_non_embeddable(&self) -> bool {
        matches!(self.status, EmbeddingStatus::NonEmbeddable { .. })
    }
}

/// The first forbidden minor found, with its witness.
type Hit = (ForbiddenMinor, MinorWitness);

fn run_searches(
    c: &UniformComplex,
    targets: &[ForbiddenMinor],
    budget: SearchBudget,
) -> Result<(Vec<SearchRecord>, Option<Hit>), MinorError> {
    let results: Vec<(MinorResult, SearchStats)> = targets
        .par_iter()
        .map(|t| has_minor_with_stats(c, &t.target(c.d()), budget))
        .collect::<Result<_, _>>()?;
    let mut found = None;
    let mut records = Vec::new();
    for (&target, (result, stats)) in targets.iter().zip(results) {
        let outcome = match result {
            MinorResult::Found(w) => {
                found.get_or_insert((target, w));
                SearchOutcome::Found
            }
            MinorResult::NotFound => SearchOutcome::NotFound,
            MinorResult::BudgetExhausted => SearchOutcome::BudgetExhausted,
        };
        records.push(SearchRecord {
            target,
            outcome,
            stats,
        });
    }
    Ok((records, found))
}

/// Searches for both forbidden minors concurrently. The complete minor is
/// reported when both are present.
pub fn is_embeddable(
    c: &UniformComplex,
    budget: SearchBudget,
    assert_triangulated: bool,
) -> Result<Verdict, MinorError> {
    if c.d() < 2 {
        return Err(MinorError::UniformityMismatch {
            host: c.d(),
            target: 2,
        });
    }
    let mut preconditions = check_preconditions(c);
    preconditions.triangulated_asserted = assert_triangulated;
    let (searches, found) = run_searches(c, &ForbiddenMinor::for_uniformity(c.d()), budget)?;
    let status = if let Some((which, witness)) = found {
        EmbeddingStatus::NonEmbeddable { which, witness }
    } else if searches
        .iter()
        .any(|s| s.outcome == SearchOutcome::BudgetExhausted)
    {
        EmbeddingStatus::Unknown {
            reason: "minor search budget exhausted".into(),
        }
    } else if preconditions.passed() || assert_triangulated {
        EmbeddingStatus::Embeddable
    } else if preconditions.closed {
        EmbeddingStatus::MinorFreeUnverified
    } else {
        EmbeddingStatus::Unknown {
            reason: format!(
                "preconditions failed: {}",
                preconditions.failures.join("; ")
            ),
        }
    };
    Ok(Verdict {
        status,
        preconditions,
        searches,
    })
}

/// Planarity of a graph by Wagner's theorem: no K_5 and no K_{3,3} minor.
pub fn wagner_d2(g: &UniformComplex, budget: SearchBudget) -> Result<Verdict, MinorError> {
    if g.d() != 2 {
        return Err(MinorError::UniformityMismatch {
            host: g.d(),
            target: 2,
        });
    }
    let preconditions = check_preconditions(g);
    let (searches, found) =
        run_searches(g, &[ForbiddenMinor::Complete, ForbiddenMinor::K33], budget)?;
    let status = if let Some((which, witness)) = found {
        EmbeddingStatus::NonEmbeddable { which, witness }
    } else if searches
        .iter()
        .any(|s| s.outcome == SearchOutcome::BudgetExhausted)
    {
        EmbeddingStatus::Unknown {
            reason: "minor search budget exhausted".into(),
        }
    } else {
        EmbeddingStatus::Embeddable
    };
    Ok(Verdict {
        status,
        preconditions,
        searches,
    })
}
