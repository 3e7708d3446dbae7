//! Bridges of a sphere subcomplex, their segments and pairwise classification.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::search::closed_pseudomanifolds;
use super::StructureError;
use crate::complex::{FaceKey, UniformComplex};
use crate::topo::{certify_manifold_piece, FaceComplex, ManifoldKind};

/// Largest projection (counted in faces of dimension d−2) searched for separating spheres.
pub const MAX_SKEW_PROJECTION: usize = 24;

const SKEW_SEARCH_NODES: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bridge {
    pub internal_vertices: Vec<usize>,
    pub facets: Vec<FaceKey>,
    pub attachments: Vec<usize>,
    /// Maximal faces of B ∩ S.
    pub projection: Vec<FaceKey>,
    pub trivial: bool,
}

impl Bridge {
    pub fn projection_complex(&self) -> FaceComplex {
        FaceComplex::closure(self.projection.iter().cloned())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentPartition {
    pub blocks: Vec<Vec<FaceKey>>,
    pub separating_faces: Vec<FaceKey>,
}

impl SegmentPartition {
    /// Vertices of the closed block `i`.
    pub fn block_vertices(&self, i: usize) -> BTreeSet<usize> {
        self.blocks[i]
            .iter()
            .flat_map(|f| f.vertices().iter().copied())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OverlapKind {
    /// `separator` is the (d−2)-sphere in the projection of `splitter` (0 or 1)
    /// that puts attachments of the other bridge strictly on both sides.
    Skew {
        splitter: usize,
        separator: Vec<FaceKey>,
    },
    EquivalentDPlus1,
    Other {
        diagnostic: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairClass {
    Avoid,
    Overlap(OverlapKind),
}

fn check_sphere(g: &UniformComplex, s: &UniformComplex) -> Result<(), StructureError> {
    if g.d() != s.d() || g.vertex_count() != s.vertex_count() {
        return Err(StructureError::SphereNotSubcomplex(
            "vertex table or uniformity differs".into(),
        ));
    }
    if let Some(f) = s.facets().iter().find(|f| !g.is_facet(f)) {
        return Err(StructureError::SphereNotSubcomplex(format!(
            "{f} is not a facet of the host"
        )));
    }
    Ok(())
}

/// Bridges of `s` in `g`: one per component of `g − V(s)` (with the facets
/// linking it to `s`), then one trivial bridge per remaining facet with all
/// vertices on `s` that is not a facet of `s`.
pub fn bridges(g: &UniformComplex, s: &UniformComplex) -> Result<Vec<Bridge>, StructureError> {
    check_sphere(g, s)?;
    let on_sphere = s.support();
    let sphere_faces = FaceComplex::of_complex(s);
    // Components of the internal vertices, joined through shared facets.
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for f in g.facets() {
        let inner: Vec<usize> = f
            .vertices()
            .iter()
            .copied()
            .filter(|v| !on_sphere.contains(v))
            .collect();
        for w in inner.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, (BTreeSet<usize>, Vec<FaceKey>)> = BTreeMap::new();
    let mut trivial = Vec::new();
    for f in g.facets() {
        match f.vertices().iter().find(|v| !on_sphere.contains(v)) {
            Some(&v) => {
                let root = find(&mut parent, v);
                let entry = groups.entry(root).or_default();
                entry
                    .0
                    .extend(f.vertices().iter().filter(|v| !on_sphere.contains(v)));
                entry.1.push(f.clone());
            }
            None if !s.is_facet(f) => trivial.push(f.clone()),
            None => {}
        }
    }
    let mut out: Vec<Bridge> = groups
        .into_values()
        .map(|(internal, facets)| {
            make_bridge(internal.into_iter().collect(), facets, &sphere_faces)
        })
        .collect();
    out.sort_by(|a, b| a.internal_vertices.cmp(&b.internal_vertices));
    out.extend(
        trivial
            .into_iter()
            .map(|f| make_bridge(Vec::new(), vec![f], &sphere_faces)),
    );
    Ok(out)
}

fn make_bridge(internal: Vec<usize>, facets: Vec<FaceKey>, sphere: &FaceComplex) -> Bridge {
    let own = FaceComplex::closure(facets.iter().cloned());
    let common = own
        .faces
        .iter()
        .flatten()
        .filter(|f| sphere.contains(f))
        .cloned();
    let projection = FaceComplex::closure(common);
    let attachments = projection.vertices();
    Bridge {
        trivial: internal.is_empty(),
        internal_vertices: internal,
        facets,
        attachments,
        projection: projection.maximal_faces(),
    }
}

/// Blocks of the facet-dual graph of `s` once dual edges across ridges of `p` are cut.
pub fn segments(s: &UniformComplex, p: &[FaceKey]) -> Result<SegmentPartition, StructureError> {
    let sphere_faces = FaceComplex::of_complex(s);
    if let Some(f) = p.iter().find(|f| !sphere_faces.contains(f)) {
        return Err(StructureError::NotSubcomplex(format!(
            "{f} is not a face of the sphere"
        )));
    }
    let closure = FaceComplex::closure(p.iter().cloned());
    let ridge_dim = s.d().saturating_sub(2);
    let separating: BTreeSet<FaceKey> = if s.d() >= 2 {
        closure
            .faces
            .get(ridge_dim)
            .cloned()
            .unwrap_or_default()
            .into_iter()
            .collect()
    } else {
        BTreeSet::new()
    };
    let facets = s.facets();
    let mut by_ridge: BTreeMap<FaceKey, Vec<usize>> = BTreeMap::new();
    for (i, f) in facets.iter().enumerate() {
        for (_, r) in f.ridges() {
            if !separating.contains(&r) {
                by_ridge.entry(r).or_default().push(i);
            }
        }
    }
    let mut block_of = vec![usize::MAX; facets.len()];
    let mut blocks = Vec::new();
    for start in 0..facets.len() {
        if block_of[start] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        block_of[start] = id;
        let mut stack = vec![start];
        let mut members = Vec::new();
        while let Some(i) = stack.pop() {
            members.push(facets[i].clone());
            for (_, r) in facets[i].ridges() {
                for &j in by_ridge.get(&r).into_iter().flatten() {
                    if block_of[j] == usize::MAX {
                        block_of[j] = id;
                        stack.push(j);
                    }
                }
            }
        }
        members.sort();
        blocks.push(members);
    }
    Ok(SegmentPartition {
        blocks,
        separating_faces: separating.into_iter().collect(),
    })
}

/// Avoid, then skew, then equivalent (d+1)-bridges; anything else is reported with a diagnostic.
pub fn classify_pair(
    g: &UniformComplex,
    s: &UniformComplex,
    b1: &Bridge,
    b2: &Bridge,
) -> Result<PairClass, StructureError> {
    check_sphere(g, s)?;
    let sphere_faces = FaceComplex::of_complex(s);
    for b in [b1, b2] {
        if b.projection.iter().any(|f| !sphere_faces.contains(f))
            || b.facets.iter().any(|f| !g.is_facet(f))
        {
            return Err(StructureError::BridgesOfDifferentSpheres);
        }
    }
    // Both directions: a bridge whose projection cuts nothing (two poles, say)
    // must not hide an overlap seen from the other side.
    if lies_in_one_segment(s, b1, b2)? && lies_in_one_segment(s, b2, b1)? {
        return Ok(PairClass::Avoid);
    }
    let mut notes = Vec::new();
    for (splitter, (a, b)) in [(b1, b2), (b2, b1)].into_iter().enumerate() {
        match separating_sphere(s, a, b) {
            Ok(Some(separator)) => {
                return Ok(PairClass::Overlap(OverlapKind::Skew {
                    splitter,
                    separator,
                }))
            }
            Ok(None) => {}
            Err(note) => notes.push(note),
        }
    }
    let d = s.d();
    if b1.attachments == b2.attachments
        && b1.projection == b2.projection
        && b1.attachments.len() == d + 1
    {
        return Ok(PairClass::Overlap(OverlapKind::EquivalentDPlus1));
    }
    let mut diagnostic = format!(
        "overlapping bridges with {} and {} attachments are neither skew nor equivalent (d+1)-bridges",
        b1.attachments.len(),
        b2.attachments.len()
    );
    if !notes.is_empty() {
        diagnostic.push_str(&format!("; search incomplete: {}", notes.join("; ")));
    }
    Ok(PairClass::Overlap(OverlapKind::Other { diagnostic }))
}

/// Whether all attachments of `other` lie in one closed segment of `b`.
fn lies_in_one_segment(
    s: &UniformComplex,
    b: &Bridge,
    other: &Bridge,
) -> Result<bool, StructureError> {
    let seg = segments(s, &b.projection)?;
    Ok((0..seg.blocks.len()).any(|i| {
        let vs = seg.block_vertices(i);
        other.attachments.iter().all(|v| vs.contains(v))
    }))
}

/// A (d−2)-sphere inside p(`a`) splitting `s` into two segments, each with an
/// attachment of `b` off the sphere. `Err` carries a note when the search was cut short.
fn separating_sphere(
    s: &UniformComplex,
    a: &Bridge,
    b: &Bridge,
) -> Result<Option<Vec<FaceKey>>, String> {
    let d = s.d();
    let proj = a.projection_complex();
    let layer: Vec<FaceKey> = proj.faces.get(d - 2).cloned().unwrap_or_default();
    if layer.len() > MAX_SKEW_PROJECTION {
        return Err(format!(
            "projection has {} faces of dimension {}, above the bound {MAX_SKEW_PROJECTION}",
            layer.len(),
            d - 2
        ));
    }
    let test = |candidate: &[FaceKey]| -> bool {
        let Ok(seg) = segments(s, candidate) else {
            return false;
        };
        if seg.blocks.len() != 2 {
            return false;
        }
        let on_c: BTreeSet<usize> = candidate
            .iter()
            .flat_map(|f| f.vertices().iter().copied())
            .collect();
        let side = |i: usize| {
            let vs = seg.block_vertices(i);
            b.attachments
                .iter()
                .any(|v| vs.contains(v) && !on_c.contains(v))
        };
        side(0) && side(1)
    };
    if d == 2 {
        // 0-spheres are vertex pairs.
        for pair in layer.iter().combinations(2) {
            let c = vec![pair[0].clone(), pair[1].clone()];
            if test(&c) {
                return Ok(Some(c));
            }
        }
        return Ok(None);
    }
    let mut budget = SKEW_SEARCH_NODES;
    let mut found = None;
    closed_pseudomanifolds(&layer, &mut budget, &mut |c: &[FaceKey]| {
        let local = relabel(c, d - 1);
        let sphere = certify_manifold_piece(&local, ManifoldKind::Sphere(d - 2))
            .is_ok_and(|cert| cert.is_certified());
        if sphere && test(c) {
            found = Some(c.to_vec());
            true
        } else {
            false
        }
    });
    match found {
        Some(c) => Ok(Some(c)),
        None if budget == 0 => Err("separating-sphere search exhausted its node budget".into()),
        None => Ok(None),
    }
}

/// Compacts a face list into a standalone `k`-uniform complex.
pub(crate) fn relabel(faces: &[FaceKey], k: usize) -> UniformComplex {
    let vs: Vec<usize> = faces
        .iter()
        .flat_map(|f| f.vertices().iter().copied())
        .sorted()
        .dedup()
        .collect();
    let local = faces.iter().map(|f| {
        f.vertices()
            .iter()
            .map(|v| vs.binary_search(v).unwrap())
            .collect_vec()
    });
    UniformComplex::new(k, vs.len(), local).expect("distinct faces")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::complex;

    fn key(v: &[usize]) -> FaceKey {
        FaceKey::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn chords_of_a_square() {
        let g = complex(
            2,
            4,
            &[&[0, 1], &[1, 2], &[2, 3], &[0, 3], &[0, 2], &[1, 3]],
        );
        let s = g
            .subcomplex(&[key(&[0, 1]), key(&[1, 2]), key(&[2, 3]), key(&[0, 3])])
            .unwrap();
        let bs = bridges(&g, &s).unwrap();
        assert_eq!(bs.len(), 2);
        assert!(bs.iter().all(|b| b.trivial));
        let class = classify_pair(&g, &s, &bs[0], &bs[1]).unwrap();
        assert!(
            matches!(class, PairClass::Overlap(OverlapKind::Skew { .. })),
            "{class:?}"
        );
    }

    #[test]
    fn cone_on_a_triangle() {
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
        let s = g
            .subcomplex(&[
                key(&[0, 1, 2]),
                key(&[0, 1, 3]),
                key(&[0, 2, 3]),
                key(&[1, 2, 3]),
            ])
            .unwrap();
        let bs = bridges(&g, &s).unwrap();
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].internal_vertices, vec![4]);
        assert_eq!(bs[0].attachments, vec![0, 1, 2]);
    }

    #[test]
    fn segment_partitions() {
        let t = complex(3, 4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        let seg = segments(&t, &[key(&[0, 1]), key(&[1, 2]), key(&[0, 2])]).unwrap();
        assert_eq!(seg.blocks.len(), 2);
        assert!(seg.blocks.contains(&vec![key(&[0, 1, 2])]));
        let c6 = complex(
            2,
            6,
            &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[0, 5]],
        );
        let seg = segments(&c6, &[key(&[0]), key(&[3])]).unwrap();
        assert_eq!(seg.blocks.iter().map(Vec::len).collect_vec(), vec![3, 3]);
        assert_eq!(segments(&c6, &[]).unwrap().blocks.len(), 1);
        assert!(segments(&c6, &[key(&[0, 3])]).is_err());
    }
}
