//! Sphere and ball certificates.
//!
//! A certificate is a list of named necessary conditions. For spheres of
//! dimension at most 2 the conditions are also sufficient; beyond that a
//! Certified sphere means every check passed, including a trivial π_1.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::homology::{homology, HomologyProfile};
use super::pi1::{fundamental_group_status, Pi1Status};
use super::TopoError;
use crate::complex::{FaceKey, UniformComplex, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ManifoldKind {
    Sphere(usize),
    Ball(usize),
}

impl ManifoldKind {
    pub fn dim(self) -> usize {
        match self {
            ManifoldKind::Sphere(k) | ManifoldKind::Ball(k) => k,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CertStatus {
    Certified,
    Refuted,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CheckOutcome {
    Pass,
    Fail,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub outcome: CheckOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldCertificate {
    pub kind: ManifoldKind,
    pub status: CertStatus,
    pub evidence: Vec<Check>,
}

impl ManifoldCertificate {
    pub fn is_certified(&self) -> bool {
        self.status == CertStatus::Certified
    }

    fn from_checks(kind: ManifoldKind, evidence: Vec<Check>) -> Self {
        let status = if evidence.iter().any(|c| c.outcome == CheckOutcome::Fail) {
            CertStatus::Refuted
        } else if evidence.iter().any(|c| c.outcome == CheckOutcome::Unknown) {
            CertStatus::Unknown
        } else {
            CertStatus::Certified
        };
        ManifoldCertificate {
            kind,
            status,
            evidence,
        }
    }
}

struct Evidence(Vec<Check>);

impl Evidence {
    fn push(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        let outcome = if ok {
            CheckOutcome::Pass
        } else {
            CheckOutcome::Fail
        };
        let detail = (!ok).then(detail);
        self.0.push(Check {
            name: name.to_string(),
            outcome,
            detail,
        });
    }

    fn push_outcome(&mut self, name: &str, outcome: CheckOutcome, detail: Option<String>) {
        self.0.push(Check {
            name: name.to_string(),
            outcome,
            detail,
        });
    }

    fn failed(&self) -> bool {
        self.0.iter().any(|c| c.outcome == CheckOutcome::Fail)
    }
}

pub fn certify_manifold_piece(
    c: &UniformComplex,
    kind: ManifoldKind,
) -> Result<ManifoldCertificate, TopoError> {
    let k = kind.dim();
    if c.d() != k + 1 {
        return Err(TopoError::UniformityMismatch {
            expected: k + 1,
            got: c.d(),
        });
    }
    Ok(match kind {
        ManifoldKind::Sphere(_) => certify_sphere(c, k),
        ManifoldKind::Ball(_) => certify_ball(c, k),
    })
}

fn certify_sphere(c: &UniformComplex, k: usize) -> ManifoldCertificate {
    let kind = ManifoldKind::Sphere(k);
    let mut ev = Evidence(Vec::new());
    if k == 0 {
        ev.push("two points", c.facet_count() == 2, || {
            format!("{} points", c.facet_count())
        });
        return ManifoldCertificate::from_checks(kind, ev.0);
    }
    let counts = c.ridge_counts();
    let bad = counts.iter().find(|(_, &n)| n != 2);
    ev.push(
        "closed pseudomanifold",
        c.facet_count() > 0 && bad.is_none(),
        || match bad {
            Some((r, n)) => format!("ridge {r} lies in {n} facets"),
            None => "no facets".to_string(),
        },
    );
    let connected = c.is_connected();
    ev.push("connected", connected, || {
        format!("{} components", c.components().len())
    });
    ev.push("strongly connected", strongly_connected(c), || {
        "facet dual graph is disconnected".into()
    });
    let h = homology(c);
    let want = HomologyProfile::sphere(k, c.d());
    ev.push("sphere homology", h == want, || {
        format!("betti {:?}, torsion {:?}", h.betti, h.torsion)
    });
    if ev.failed() {
        return ManifoldCertificate::from_checks(kind, ev.0);
    }
    link_checks(c, k, &BTreeSet::new(), &mut ev);
    if k >= 2 {
        let status = fundamental_group_status(c).unwrap_or(Pi1Status::Unknown);
        let outcome = match status {
            Pi1Status::Trivial => CheckOutcome::Pass,
            Pi1Status::Nontrivial => CheckOutcome::Fail,
            // Surfaces are classified by the checks above.
            Pi1Status::Unknown if k == 2 => CheckOutcome::Pass,
            Pi1Status::Unknown => CheckOutcome::Unknown,
        };
        ev.push_outcome("fundamental group", outcome, Some(format!("{status:?}")));
    }
    ManifoldCertificate::from_checks(kind, ev.0)
}

fn certify_ball(c: &UniformComplex, k: usize) -> ManifoldCertificate {
    let kind = ManifoldKind::Ball(k);
    let mut ev = Evidence(Vec::new());
    if k == 0 {
        ev.push("one point", c.facet_count() == 1, || {
            format!("{} points", c.facet_count())
        });
        return ManifoldCertificate::from_checks(kind, ev.0);
    }
    let counts = c.ridge_counts();
    let thick = counts.iter().find(|(_, &n)| n > 2);
    ev.push(
        "pseudomanifold with boundary",
        c.facet_count() > 0 && thick.is_none(),
        || match thick {
            Some((r, n)) => format!("ridge {r} lies in {n} facets"),
            None => "no facets".to_string(),
        },
    );
    ev.push("connected", c.is_connected(), || {
        format!("{} components", c.components().len())
    });
    ev.push("strongly connected", strongly_connected(c), || {
        "facet dual graph is disconnected".into()
    });
    let h = homology(c);
    ev.push("acyclic", h.is_acyclic(), || {
        format!("betti {:?}, torsion {:?}", h.betti, h.torsion)
    });
    let boundary: Vec<FaceKey> = counts
        .iter()
        .filter(|(_, &n)| n == 1)
        .map(|(r, _)| r.clone())
        .collect();
    ev.push("nonempty boundary", !boundary.is_empty(), String::new);
    if ev.failed() {
        return ManifoldCertificate::from_checks(kind, ev.0);
    }
    let bd = UniformComplex::from_parts(k, c.vertex_count(), boundary, None);
    let bcert = certify_sphere(&bd, k - 1);
    let outcome = match bcert.status {
        CertStatus::Certified => CheckOutcome::Pass,
        CertStatus::Refuted => CheckOutcome::Fail,
        CertStatus::Unknown => CheckOutcome::Unknown,
    };
    ev.push_outcome("boundary sphere", outcome, first_problem(&bcert));
    let boundary_vertices = bd.support();
    link_checks(c, k, &boundary_vertices, &mut ev);
    ManifoldCertificate::from_checks(kind, ev.0)
}

/// Vertex links must be (k−1)-spheres, or (k−1)-balls at boundary vertices.
fn link_checks(c: &UniformComplex, k: usize, boundary: &BTreeSet<usize>, ev: &mut Evidence) {
    if k < 2 {
        // Links of 1-manifolds are points, already covered by the ridge counts.
        return;
    }
    let mut worst = CheckOutcome::Pass;
    let mut detail = None;
    for v in c.support() {
        let link = c.link(VertexId(v)).expect("support vertex").compact();
        let cert = if boundary.contains(&v) {
            certify_ball(&link, k - 1)
        } else {
            certify_sphere(&link, k - 1)
        };
        let outcome = match cert.status {
            CertStatus::Certified => continue,
            CertStatus::Refuted => CheckOutcome::Fail,
            CertStatus::Unknown => CheckOutcome::Unknown,
        };
        if worst != CheckOutcome::Fail {
            worst = outcome;
            detail = Some(format!(
                "link of {v}: {}",
                first_problem(&cert).unwrap_or_default()
            ));
        }
        if worst == CheckOutcome::Fail {
            break;
        }
    }
    ev.push_outcome("vertex links", worst, detail);
}

fn first_problem(cert: &ManifoldCertificate) -> Option<String> {
    cert.evidence
        .iter()
        .find(|c| c.outcome != CheckOutcome::Pass)
        .map(|c| match &c.detail {
            Some(d) => format!("{} ({d})", c.name),
            None => c.name.clone(),
        })
}

/// Facets connected through shared ridges.
pub(crate) fn strongly_connected(c: &UniformComplex) -> bool {
    let facets = c.facets();
    if facets.is_empty() {
        return false;
    }
    let mut by_ridge: BTreeMap<FaceKey, Vec<usize>> = BTreeMap::new();
    for (i, f) in facets.iter().enumerate() {
        for (_, r) in f.ridges() {
            by_ridge.entry(r).or_default().push(i);
        }
    }
    if c.d() == 1 {
        return true;
    }
    let mut seen = vec![false; facets.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for (_, r) in facets[i].ridges() {
            for &j in &by_ridge[&r] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::complex;
    use itertools::Itertools;

    #[test]
    fn simplex_boundaries_are_spheres() {
        for d in 2..=5 {
            let s = UniformComplex::new(d, d + 1, (0..=d).combinations(d)).unwrap();
            let cert = certify_manifold_piece(&s, ManifoldKind::Sphere(d - 1)).unwrap();
            assert!(cert.is_certified(), "{cert:?}");
        }
    }

    #[test]
    fn cone_over_cycle_is_a_disk() {
        let cone = complex(3, 4, &[&[0, 1, 2], &[0, 2, 3], &[0, 1, 3]]);
        let cert = certify_manifold_piece(&cone, ManifoldKind::Ball(2)).unwrap();
        assert!(cert.is_certified(), "{cert:?}");
        let cert = certify_manifold_piece(&cone, ManifoldKind::Sphere(2)).unwrap();
        assert_eq!(cert.status, CertStatus::Refuted);
    }

    #[test]
    fn projective_plane_is_not_a_sphere() {
        let rp2 = complex(
            3,
            6,
            &[
                &[0, 1, 2],
                &[0, 2, 3],
                &[0, 3, 4],
                &[0, 4, 5],
                &[0, 1, 5],
                &[1, 2, 4],
                &[2, 3, 5],
                &[1, 3, 4],
                &[2, 4, 5],
                &[1, 3, 5],
            ],
        );
        let cert = certify_manifold_piece(&rp2, ManifoldKind::Sphere(2)).unwrap();
        assert_eq!(cert.status, CertStatus::Refuted);
    }

    #[test]
    fn pinched_spheres_fail_link_check() {
        // Two tetrahedron boundaries sharing one vertex.
        let c = complex(
            3,
            7,
            &[
                &[0, 1, 2],
                &[0, 1, 3],
                &[0, 2, 3],
                &[1, 2, 3],
                &[0, 4, 5],
                &[0, 4, 6],
                &[0, 5, 6],
                &[4, 5, 6],
            ],
        );
        let cert = certify_manifold_piece(&c, ManifoldKind::Sphere(2)).unwrap();
        assert_eq!(cert.status, CertStatus::Refuted);
    }

    #[test]
    fn wrong_uniformity() {
        let e = complex(2, 2, &[&[0, 1]]);
        assert!(certify_manifold_piece(&e, ManifoldKind::Sphere(2)).is_err());
        assert!(certify_manifold_piece(&e, ManifoldKind::Ball(1))
            .unwrap()
            .is_certified());
    }
}
