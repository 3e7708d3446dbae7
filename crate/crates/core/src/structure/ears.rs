//! Hyper ear decompositions: a base (d−1)-sphere followed by (d−1)-balls, each
//! glued along its boundary with all internal vertices new.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::bridges::relabel;
use super::search::closed_pseudomanifolds;
use super::StructureError;
use crate::complex::{FaceKey, UniformComplex};
use crate::topo::{certify_manifold_piece, ManifoldCertificate, ManifoldKind};

const BASE_SEARCH_NODES: usize = 200_000;
const EAR_SEARCH_NODES: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ear {
    pub facets: Vec<FaceKey>,
    pub internal_vertices: Vec<usize>,
    /// Ridges lying in exactly one facet of the ear.
    pub boundary: Vec<FaceKey>,
    pub certificate: ManifoldCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EarDecomposition {
    pub base: Vec<FaceKey>,
    pub base_certificate: ManifoldCertificate,
    pub ears: Vec<Ear>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EarOutcome {
    Found(EarDecomposition),
    NotFound { diagnostic: String },
}

impl EarOutcome {
    pub fn decomposition(&self) -> Option<&EarDecomposition> {
        match self {
            EarOutcome::Found(d) => Some(d),
            EarOutcome::NotFound { .. } => None,
        }
    }
}

fn certify(faces: &[FaceKey], kind: ManifoldKind) -> ManifoldCertificate {
    certify_manifold_piece(&relabel(faces, kind.dim() + 1), kind).expect("uniformity matches kind")
}

pub fn ear_decomposition(
    g: &UniformComplex,
    hint: Option<&[FaceKey]>,
) -> Result<EarOutcome, StructureError> {
    if !g.is_closed() {
        return Err(StructureError::NotClosed);
    }
    if !g.is_connected() {
        return Err(StructureError::Disconnected);
    }
    let d = g.d();
    let base = match hint {
        Some(h) => {
            if let Some(f) = h.iter().find(|f| !g.is_facet(f)) {
                return Err(StructureError::SphereNotSubcomplex(format!(
                    "{f} is not a facet of the host"
                )));
            }
            let mut h = h.to_vec();
            h.sort();
            h.dedup();
            h
        }
        None => match find_base(g) {
            Some(b) => b,
            None => {
                return Ok(EarOutcome::NotFound {
                    diagnostic: "no (d-1)-sphere found within the search bound".into(),
                })
            }
        },
    };
    let base_certificate = certify(&base, ManifoldKind::Sphere(d - 1));
    if !base_certificate.is_certified() {
        return Ok(EarOutcome::NotFound {
            diagnostic: format!(
                "base is not a certified sphere ({:?})",
                base_certificate.status
            ),
        });
    }
    let mut current: BTreeSet<FaceKey> = base.iter().cloned().collect();
    let mut ears = Vec::new();
    while current.len() < g.facet_count() {
        match next_ear(g, &current) {
            Some(ear) => {
                current.extend(ear.facets.iter().cloned());
                ears.push(ear);
            }
            None => {
                return Ok(EarOutcome::NotFound {
                    diagnostic: format!(
                        "stuck after {} ears with {} of {} facets covered",
                        ears.len(),
                        current.len(),
                        g.facet_count()
                    ),
                })
            }
        }
    }
    Ok(EarOutcome::Found(EarDecomposition {
        base,
        base_certificate,
        ears,
    }))
}

/// A simplex boundary on d+1 vertices if present, else the first certified sphere found.
fn find_base(g: &UniformComplex) -> Option<Vec<FaceKey>> {
    let d = g.d();
    for f in g.facets() {
        for v in (f.vertices()[d - 1] + 1)..g.vertex_count() {
            let all = FaceKey::new(f.vertices().iter().copied().chain([v])).expect("distinct");
            let faces: Vec<FaceKey> = all.ridges().map(|(_, r)| r).collect();
            if faces.iter().all(|r| g.is_facet(r)) {
                let mut faces = faces;
                faces.sort();
                return Some(faces);
            }
        }
    }
    let mut budget = BASE_SEARCH_NODES;
    let mut found = None;
    closed_pseudomanifolds(g.facets(), &mut budget, &mut |c: &[FaceKey]| {
        if certify(c, ManifoldKind::Sphere(d - 1)).is_certified() {
            found = Some(c.to_vec());
            true
        } else {
            false
        }
    });
    found
}

fn faces_of(facets: &BTreeSet<FaceKey>) -> BTreeSet<FaceKey> {
    facets
        .iter()
        .flat_map(|f| (1..=f.len()).flat_map(move |k| f.subfaces(k)))
        .collect()
}

fn next_ear(g: &UniformComplex, current: &BTreeSet<FaceKey>) -> Option<Ear> {
    let d = g.d();
    let cur_faces = faces_of(current);
    let cur_vertices: BTreeSet<usize> = current
        .iter()
        .flat_map(|f| f.vertices().iter().copied())
        .collect();
    let remaining: Vec<FaceKey> = g
        .facets()
        .iter()
        .filter(|f| !current.contains(*f))
        .cloned()
        .collect();
    let mut containing: BTreeMap<FaceKey, Vec<usize>> = BTreeMap::new();
    for (i, f) in remaining.iter().enumerate() {
        for (_, r) in f.ridges() {
            containing.entry(r).or_default().push(i);
        }
    }
    let mut budget = EAR_SEARCH_NODES;
    for start in 0..remaining.len() {
        if !remaining[start]
            .ridges()
            .any(|(_, r)| cur_faces.contains(&r))
        {
            continue;
        }
        let mut search = EarSearch {
            d,
            remaining: &remaining,
            containing: &containing,
            cur_faces: &cur_faces,
            cur_vertices: &cur_vertices,
            chosen: vec![start],
            count: BTreeMap::new(),
        };
        for (_, r) in remaining[start].ridges() {
            *search.count.entry(r).or_default() += 1;
        }
        if let Some(ear) = search.grow(&mut budget) {
            return Some(ear);
        }
        if budget == 0 {
            return None;
        }
    }
    None
}

struct EarSearch<'a> {
    d: usize,
    remaining: &'a [FaceKey],
    containing: &'a BTreeMap<FaceKey, Vec<usize>>,
    cur_faces: &'a BTreeSet<FaceKey>,
    cur_vertices: &'a BTreeSet<usize>,
    chosen: Vec<usize>,
    count: BTreeMap<FaceKey, usize>,
}

impl EarSearch<'_> {
    fn grow(&mut self, budget: &mut usize) -> Option<Ear> {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        let open = self
            .count
            .iter()
            .find(|(r, &k)| k == 1 && !self.cur_faces.contains(*r))
            .map(|(r, _)| r.clone());
        let Some(open) = open else {
            return self.finish();
        };
        for &j in &self.containing[&open] {
            if self.chosen.contains(&j) {
                continue;
            }
            let ridges: Vec<FaceKey> = self.remaining[j].ridges().map(|(_, r)| r).collect();
            if ridges
                .iter()
                .any(|r| self.count.get(r).copied().unwrap_or(0) >= 2)
            {
                continue;
            }
            for r in &ridges {
                *self.count.entry(r.clone()).or_default() += 1;
            }
            self.chosen.push(j);
            if let Some(ear) = self.grow(budget) {
                return Some(ear);
            }
            self.chosen.pop();
            for r in &ridges {
                let e = self.count.get_mut(r).expect("counted");
                *e -= 1;
                if *e == 0 {
                    self.count.remove(r);
                }
            }
            if *budget == 0 {
                return None;
            }
        }
        None
    }

    fn finish(&self) -> Option<Ear> {
        let mut facets: Vec<FaceKey> = self
            .chosen
            .iter()
            .map(|&i| self.remaining[i].clone())
            .collect();
        facets.sort();
        let boundary: Vec<FaceKey> = self
            .count
            .iter()
            .filter(|(_, &k)| k == 1)
            .map(|(r, _)| r.clone())
            .collect();
        let on_boundary: BTreeSet<usize> = boundary
            .iter()
            .flat_map(|r| r.vertices().iter().copied())
            .collect();
        let internal: Vec<usize> = facets
            .iter()
            .flat_map(|f| f.vertices().iter().copied())
            .filter(|v| !on_boundary.contains(v))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if internal.iter().any(|v| self.cur_vertices.contains(v)) {
            return None;
        }
        let certificate = certify(&facets, ManifoldKind::Ball(self.d - 1));
        certificate.is_certified().then_some(Ear {
            facets,
            internal_vertices: internal,
            boundary,
            certificate,
        })
    }
}

/// Re-checks a decomposition from scratch.
pub fn verify_ear_decomposition(g: &UniformComplex, dec: &EarDecomposition) -> bool {
    ear_violation(g, dec).is_none()
}

/// The first violated condition of a decomposition, if any.
pub fn ear_violation(g: &UniformComplex, dec: &EarDecomposition) -> Option<String> {
    let d = g.d();
    if let Some(f) = dec.base.iter().find(|f| !g.is_facet(f)) {
        return Some(format!("base facet {f} is not in the complex"));
    }
    if dec.base.is_empty() || !certify(&dec.base, ManifoldKind::Sphere(d - 1)).is_certified() {
        return Some("base is not a certified sphere".into());
    }
    let mut current: BTreeSet<FaceKey> = dec.base.iter().cloned().collect();
    for (i, ear) in dec.ears.iter().enumerate() {
        if ear.facets.is_empty() {
            return Some(format!("ear {i} is empty"));
        }
        for f in &ear.facets {
            if !g.is_facet(f) {
                return Some(format!("ear {i}: {f} is not in the complex"));
            }
            if current.contains(f) {
                return Some(format!("ear {i}: {f} already present"));
            }
        }
        if !certify(&ear.facets, ManifoldKind::Ball(d - 1)).is_certified() {
            return Some(format!("ear {i} is not a certified ball"));
        }
        let mut count: BTreeMap<FaceKey, usize> = BTreeMap::new();
        for f in &ear.facets {
            for (_, r) in f.ridges() {
                *count.entry(r).or_default() += 1;
            }
        }
        let boundary: Vec<FaceKey> = count
            .iter()
            .filter(|(_, &k)| k == 1)
            .map(|(r, _)| r.clone())
            .collect();
        let cur_faces = faces_of(&current);
        if let Some(r) = boundary.iter().find(|r| !cur_faces.contains(*r)) {
            return Some(format!(
                "ear {i}: boundary face {r} not in the previous stage"
            ));
        }
        let on_boundary: BTreeSet<usize> = boundary
            .iter()
            .flat_map(|r| r.vertices().iter().copied())
            .collect();
        let internal: BTreeSet<usize> = ear
            .facets
            .iter()
            .flat_map(|f| f.vertices().iter().copied())
            .filter(|v| !on_boundary.contains(v))
            .collect();
        if internal.iter().copied().collect::<Vec<_>>() != ear.internal_vertices {
            return Some(format!("ear {i}: recorded internal vertices are wrong"));
        }
        let cur_vertices: BTreeSet<usize> = current
            .iter()
            .flat_map(|f| f.vertices().iter().copied())
            .collect();
        if let Some(v) = internal.iter().find(|v| cur_vertices.contains(v)) {
            return Some(format!(
                "ear {i}: internal vertex {v} lies in the previous stage"
            ));
        }
        current.extend(ear.facets.iter().cloned());
    }
    if current.len() != g.facet_count() {
        return Some(format!(
            "decomposition covers {} of {} facets",
            current.len(),
            g.facet_count()
        ));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::complex;

    #[test]
    fn cone_ear_on_tetrahedron() {
        let g = complex(
            3,
            5,
            &[
                &[0, 1, 2],
                &[0, 1, 3],
                &[0, 2, 3],
                &[1, 2, 3],
                &[0, 1, 4],
                &[0, 2, 4],
                &[1, 2, 4],
            ],
        );
        let dec = ear_decomposition(&g, None)
            .unwrap()
            .decomposition()
            .cloned()
            .unwrap();
        assert_eq!(dec.base.len(), 4);
        assert_eq!(dec.ears.len(), 1);
        assert_eq!(dec.ears[0].facets.len(), 3);
        assert_eq!(dec.ears[0].internal_vertices, vec![4]);
        assert!(verify_ear_decomposition(&g, &dec));

        let mut broken = dec.clone();
        broken.ears[0].internal_vertices = vec![0];
        assert!(!verify_ear_decomposition(&g, &broken));
        let mut short = dec;
        short.ears.clear();
        assert!(!verify_ear_decomposition(&g, &short));
    }

    #[test]
    fn sphere_alone_and_theta() {
        let t = complex(3, 4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        let dec = ear_decomposition(&t, None)
            .unwrap()
            .decomposition()
            .cloned()
            .unwrap();
        assert!(dec.ears.is_empty());
        // Theta graph: paths 0-1-2, 0-3-2, 0-4-2.
        let theta = complex(
            2,
            5,
            &[&[0, 1], &[1, 2], &[0, 3], &[2, 3], &[0, 4], &[2, 4]],
        );
        let dec = ear_decomposition(&theta, None)
            .unwrap()
            .decomposition()
            .cloned()
            .unwrap();
        assert_eq!(dec.base.len(), 4);
        assert_eq!(dec.ears.len(), 1);
        assert_eq!(dec.ears[0].facets.len(), 2);
        assert!(verify_ear_decomposition(&theta, &dec));
    }

    #[test]
    fn preconditions() {
        let f = complex(3, 3, &[&[0, 1, 2]]);
        assert_eq!(ear_decomposition(&f, None), Err(StructureError::NotClosed));
    }
}
