//! The general R^d conditions: shared vertex sets are common faces, the complex
//! is connected, and the homotopy groups π_1 .. π_{d-2} vanish (checked through
//! homology plus the π_1 heuristic).

use serde::{Deserialize, Serialize};

use super::homology::{homology, HomologyProfile};
use super::pi1::{fundamental_group_status, Pi1Status};

use crate::complex::UniformComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum GeneralVerdict {
    Pass,
    Fail,
    #[serde(rename = "PASS-MODULO-π1-UNKNOWN")]
    PassModuloPi1Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralCheckReport {
    /// Always true for simplicial input: two facets meet in the face spanned by their common vertices.
    pub pairwise_intersection: bool,
    pub connected: bool,
    pub homology: HomologyProfile,
    pub homology_vanishes: bool,
    pub pi1: Option<Pi1Status>,
    pub verdict: GeneralVerdict,
    pub failures: Vec<String>,
}

pub fn general_rd_check(c: &UniformComplex) -> GeneralCheckReport {
    let d = c.d();
    let h = homology(c);
    let connected = c.is_connected();
    let mut failures = Vec::new();
    if !connected {
        failures.push(format!("Disconnected: {} components", c.components().len()));
    }
    let homology_vanishes = d < 3 || h.vanishes_in(1..=d - 2);
    if !homology_vanishes {
        for i in 1..=d - 2 {
            if h.betti[i] > 0 {
                failures.push(format!(
                    "reduced Betti number {} in dimension {i}",
                    h.betti[i]
                ));
            }
            if !h.torsion[i].is_empty() {
                let t: Vec<String> = h.torsion[i].iter().map(ToString::to_string).collect();
                failures.push(format!("torsion [{}] in dimension {i}", t.join(", ")));
            }
        }
    }
    let pi1 =
        (d >= 3 && connected).then(|| fundamental_group_status(c).unwrap_or(Pi1Status::Unknown));
    if pi1 == Some(Pi1Status::Nontrivial) && homology_vanishes {
        failures.push("nontrivial fundamental group".to_string());
    }
    let verdict = if !failures.is_empty() || pi1 == Some(Pi1Status::Nontrivial) {
        GeneralVerdict::Fail
    } else if pi1 == Some(Pi1Status::Unknown) {
        GeneralVerdict::PassModuloPi1Unknown
    } else {
        GeneralVerdict::Pass
    };
    GeneralCheckReport {
        pairwise_intersection: true,
        connected,
        homology: h,
        homology_vanishes,
        pi1,
        verdict,
        failures,
    }
}
