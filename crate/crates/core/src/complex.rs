//! Uniform simplicial hypergraphs.
//!
//! A [`UniformComplex`] is a `d`-uniform hypergraph whose hyperedges are read as
//! `(d-1)`-simplices. Only the facets are stored; the face lattice is the set of
//! all nonempty subsets of facets and is enumerated on demand.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of a vertex in the owning complex's vertex table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for VertexId {
    fn from(v: usize) -> Self {
        VertexId(v)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A face (sub-simplex) given by its strictly increasing vertex list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FaceKey(Vec<usize>);

impl FaceKey {
    /// Builds a face from arbitrary-order vertices. Rejects empty input and repeats.
    pub fn new(vertices: impl IntoIterator<Item = usize>) -> Result<Self, ComplexError> {
        let mut v: Vec<usize> = vertices.into_iter().collect();
        if v.is_empty() {
            return Err(ComplexError::EmptyFace);
        }
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::LoopFacet(v));
        }
        Ok(FaceKey(v))
    }

    /// Caller guarantees `v` is sorted, strictly increasing and nonempty.
    pub(crate) fn from_sorted(v: Vec<usize>) -> Self {
        debug_assert!(!v.is_empty() && v.windows(2).all(|w| w[0] < w[1]));
        FaceKey(v)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &FaceKey) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    /// Faces of this simplex with `k` vertices, in lexicographic order.
    pub fn subfaces(&self, k: usize) -> impl Iterator<Item = FaceKey> + '_ {
        self.0.iter().copied().combinations(k).map(FaceKey)
    }

    /// The codimension-one faces, each paired with the position of the removed vertex.
    pub fn ridges(&self) -> impl Iterator<Item = (usize, FaceKey)> + '_ {
        (0..self.0.len())
            .filter(move |_| self.0.len() > 1)
            .map(move |i| {
                let mut r = self.0.clone();
                r.remove(i);
                (i, FaceKey(r))
            })
    }

    pub fn without(&self, v: usize) -> Option<FaceKey> {
        let r: Vec<usize> = self.0.iter().copied().filter(|&x| x != v).collect();
        (!r.is_empty()).then_some(FaceKey(r))
    }

    pub fn union(&self, other: &FaceKey) -> Result<FaceKey, ComplexError> {
        FaceKey::new(self.0.iter().chain(other.0.iter()).copied().unique())
    }
}

impl fmt::Display for FaceKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("uniformity must be at least 1, got {0}")]
    BadUniformity(usize),
    #[error("facet {facet:?} has {got} vertices, expected {expected}")]
    NonUniformFacet {
        facet: Vec<usize>,
        expected: usize,
        got: usize,
    },
    #[error("facet {0:?} repeats a vertex")]
    LoopFacet(Vec<usize>),
    #[error("facet {0:?} occurs more than once")]
    DuplicateFacet(Vec<usize>),
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("dimension {dim} out of range 0..={max}")]
    DimensionOutOfRange { dim: usize, max: usize },
    #[error("{0} is not a face of the complex")]
    NotAFace(FaceKey),
    #[error("{0} is not a facet of the complex")]
    NotAFacet(FaceKey),
    #[error("vertex {0} does not exist")]
    NotAVertex(VertexId),
    #[error("empty face")]
    EmptyFace,
    #[error("name table has {got} entries, expected {expected}")]
    NameTableLength { expected: usize, got: usize },
}

/// A `d`-uniform topological hypergraph: vertex table plus a set of `d`-vertex facets.
///
/// Immutable after construction. Face tables are memoized per dimension behind
/// `OnceLock`, so shared references may be queried from several threads.
#[derive(Clone)]
pub struct UniformComplex {
    d: usize,
    n: usize,
    facets: Vec<FaceKey>,
    names: Option<Vec<String>>,
    face_cache: Vec<OnceLock<Vec<FaceKey>>>,
}

impl PartialEq for UniformComplex {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.n == other.n && self.facets == other.facets
    }
}

impl Eq for UniformComplex {}

impl fmt::Debug for UniformComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UniformComplex")
            .field("d", &self.d)
            .field("n", &self.n)
            .field(
                "facets",
                &self.facets.iter().map(|f| f.vertices()).collect_vec(),
            )
            .finish()
    }
}

impl UniformComplex {
    /// Validates and builds a complex. Duplicate facets are an error, not merged.
    pub fn new<I, F>(d: usize, n: usize, facets: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[usize]>,
    {
        if d == 0 {
            return Err(ComplexError::BadUniformity(d));
        }
        let mut keys = Vec::new();
        for raw in facets {
            let raw = raw.as_ref();
            if raw.len() != d {
                return Err(ComplexError::NonUniformFacet {
                    facet: raw.to_vec(),
                    expected: d,
                    got: raw.len(),
                });
            }
            if let Some(&v) = raw.iter().find(|&&v| v >= n) {
                return Err(ComplexError::VertexOutOfRange { vertex: v, n });
            }
            keys.push(FaceKey::new(raw.iter().copied())?);
        }
        keys.sort();
        if let Some(w) = keys.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateFacet(w[0].0.clone()));
        }
        Ok(Self::from_parts(d, n, keys, None))
    }

    /// Facets must already be sorted, deduplicated and validated.
    pub(crate) fn from_parts(
        d: usize,
        n: usize,
        facets: Vec<FaceKey>,
        names: Option<Vec<String>>,
    ) -> Self {
        debug_assert!(facets.windows(2).all(|w| w[0] < w[1]));
        UniformComplex {
            d,
            n,
            facets,
            names,
            face_cache: (0..d).map(|_| OnceLock::new()).collect(),
        }
    }

    /// Same as [`UniformComplex::new`] but tolerant of duplicate facets, which are merged.
    pub(crate) fn from_facets_merging(
        d: usize,
        n: usize,
        facets: impl IntoIterator<Item = FaceKey>,
        names: Option<Vec<String>>,
    ) -> Self {
        let set: BTreeSet<FaceKey> = facets.into_iter().collect();
        Self::from_parts(d, n, set.into_iter().collect(), names)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, ComplexError> {
        if names.len() != self.n {
            return Err(ComplexError::NameTableLength {
                expected: self.n,
                got: names.len(),
            });
        }
        self.names = Some(names);
        Ok(self)
    }

    /// Uniformity: number of vertices per facet.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn facets(&self) -> &[FaceKey] {
        &self.facets
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn vertex_name(&self, v: usize) -> String {
        match &self.names {
            Some(names) => names[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn is_facet(&self, f: &FaceKey) -> bool {
        self.facets.binary_search(f).is_ok()
    }

    pub fn is_face(&self, f: &FaceKey) -> bool {
        if f.len() > self.d {
            return false;
        }
        self.faces_unchecked(f.dim()).binary_search(f).is_ok()
    }

    /// Vertices that lie in no facet.
    pub fn isolated_vertices(&self) -> Vec<VertexId> {
        let mut used = vec![false; self.n];
        for f in &self.facets {
            for &v in f.vertices() {
                used[v] = true;
            }
        }
        (0..self.n).filter(|&v| !used[v]).map(VertexId).collect()
    }

    /// All `i`-dimensional faces, sorted.
    pub fn faces(&self, i: usize) -> Result<&[FaceKey], ComplexError> {
        if i >= self.d {
            return Err(ComplexError::DimensionOutOfRange {
                dim: i,
                max: self.d - 1,
            });
        }
        Ok(self.faces_unchecked(i))
    }

    pub(crate) fn faces_unchecked(&self, i: usize) -> &[FaceKey] {
        self.face_cache[i].get_or_init(|| {
            if i + 1 == self.d {
                return self.facets.clone();
            }
            let set: BTreeSet<FaceKey> =
                self.facets.iter().flat_map(|f| f.subfaces(i + 1)).collect();
            set.into_iter().collect()
        })
    }

    /// Facets containing the given face.
    pub fn star_facets<'a>(&'a self, a: &'a FaceKey) -> impl Iterator<Item = &'a FaceKey> + 'a {
        self.facets.iter().filter(move |f| a.is_subset_of(f))
    }

    /// Vertices sharing a facet with `v`, sorted.
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = self
            .facets
            .iter()
            .filter(|f| f.contains(v))
            .flat_map(|f| f.vertices().iter().copied())
            .filter(|&u| u != v)
            .collect();
        set.into_iter().collect()
    }

    /// `j`-dimensional degree of the face `a`.
    ///
    /// For `j > dim(a)` this counts `j`-faces containing `a`; for `j == dim(a)` it
    /// counts `j`-faces meeting `a` in a face of dimension `dim(a) - 1` (for vertices,
    /// the number of adjacent vertices).
    pub fn degree(&self, a: &FaceKey, j: usize) -> Result<usize, ComplexError> {
        if !self.is_face(a) {
            return Err(ComplexError::NotAFace(a.clone()));
        }
        if j >= self.d || j < a.dim() {
            return Err(ComplexError::DimensionOutOfRange {
                dim: j,
                max: self.d - 1,
            });
        }
        if j > a.dim() {
            return Ok(self
                .faces_unchecked(j)
                .iter()
                .filter(|f| a.is_subset_of(f))
                .count());
        }
        if a.dim() == 0 {
            return Ok(self.neighbours(a.vertices()[0]).len());
        }
        let common = a.len() - 1;
        Ok(self
            .faces_unchecked(j)
            .iter()
            .filter(|b| {
                *b != a && b.vertices().iter().filter(|v| a.contains(**v)).count() == common
            })
            .count())
    }

    /// Link of a vertex, relabeled onto its neighbours (in increasing order).
    ///
    /// The returned name table records the original vertex names.
    pub fn link(&self, v: VertexId) -> Result<UniformComplex, ComplexError> {
        Ok(self.link_with_map(v)?.0)
    }

    /// Link plus the map from local vertex index to original vertex id.
    pub fn link_with_map(
        &self,
        v: VertexId,
    ) -> Result<(UniformComplex, Vec<VertexId>), ComplexError> {
        if v.0 >= self.n {
            return Err(ComplexError::NotAVertex(v));
        }
        if self.d == 1 {
            return Err(ComplexError::BadUniformity(0));
        }
        let nbrs = self.neighbours(v.0);
        let local: BTreeMap<usize, usize> = nbrs.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        let facets = self
            .facets
            .iter()
            .filter(|f| f.contains(v.0))
            .map(|f| {
                FaceKey::from_sorted(
                    f.vertices()
                        .iter()
                        .filter(|&&u| u != v.0)
                        .map(|u| local[u])
                        .collect(),
                )
            })
            .collect_vec();
        let names = nbrs.iter().map(|&u| self.vertex_name(u)).collect();
        let link = UniformComplex::from_facets_merging(self.d - 1, nbrs.len(), facets, Some(names));
        Ok((link, nbrs.into_iter().map(VertexId).collect()))
    }

    /// The `(k+1)`-uniform complex whose facets are the `k`-faces. Vertex table unchanged.
    pub fn skeleton(&self, k: usize) -> Result<UniformComplex, ComplexError> {
        let faces = self.faces(k)?.to_vec();
        Ok(UniformComplex::from_parts(
            k + 1,
            self.n,
            faces,
            self.names.clone(),
        ))
    }

    /// Facets having some ridge that is shared with no other facet.
    pub fn pendant_simplexoids(&self) -> Vec<FaceKey> {
        if self.d == 1 {
            // Ridges are empty; every facet is matched by any other facet.
            return if self.facets.len() == 1 {
                self.facets.clone()
            } else {
                Vec::new()
            };
        }
        let counts = self.ridge_counts();
        self.facets
            .iter()
            .filter(|f| f.ridges().any(|(_, r)| counts[&r] < 2))
            .cloned()
            .collect()
    }

    pub fn is_closed(&self) -> bool {
        self.pendant_simplexoids().is_empty()
    }

    /// Number of facets containing each ridge.
    pub(crate) fn ridge_counts(&self) -> BTreeMap<FaceKey, usize> {
        let mut counts = BTreeMap::new();
        for f in &self.facets {
            for (_, r) in f.ridges() {
                *counts.entry(r).or_insert(0) += 1;
            }
        }
        counts
    }

    /// Sub-hypergraph induced on `s`, relabeled to `0..|s|` in increasing order of `s`.
    pub fn induced(&self, s: &[VertexId]) -> Result<UniformComplex, ComplexError> {
        Ok(self.induced_with_map(s)?.0)
    }

    pub fn induced_with_map(
        &self,
        s: &[VertexId],
    ) -> Result<(UniformComplex, Vec<VertexId>), ComplexError> {
        let keep: BTreeSet<usize> = s.iter().map(|v| v.0).collect();
        if let Some(&v) = keep.iter().find(|&&v| v >= self.n) {
            return Err(ComplexError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        let local: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        let facets = self
            .facets
            .iter()
            .filter(|f| f.vertices().iter().all(|v| keep.contains(v)))
            .map(|f| FaceKey::from_sorted(f.vertices().iter().map(|v| local[v]).collect()))
            .collect_vec();
        let names = keep.iter().map(|&u| self.vertex_name(u)).collect();
        let sub = UniformComplex::from_facets_merging(self.d, keep.len(), facets, Some(names));
        Ok((sub, keep.into_iter().map(VertexId).collect()))
    }

    /// Sub-complex on the same vertex table keeping only the given facets.
    pub fn subcomplex(&self, facets: &[FaceKey]) -> Result<UniformComplex, ComplexError> {
        for f in facets {
            if !self.is_facet(f) {
                return Err(ComplexError::NotAFacet(f.clone()));
            }
        }
        Ok(UniformComplex::from_facets_merging(
            self.d,
            self.n,
            facets.iter().cloned(),
            self.names.clone(),
        ))
    }

    /// Vertices that occur in at least one facet.
    pub fn support(&self) -> BTreeSet<usize> {
        self.facets
            .iter()
            .flat_map(|f| f.vertices().iter().copied())
            .collect()
    }

    /// Drops isolated vertices, relabeling the rest in order.
    pub fn compact(&self) -> UniformComplex {
        let support: Vec<VertexId> = self.support().into_iter().map(VertexId).collect();
        self.induced(&support)
            .expect("support vertices are in range")
    }

    /// Connected components of the support, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for f in &self.facets {
            let a = find(&mut parent, f.vertices()[0]);
            for &v in &f.vertices()[1..] {
                let b = find(&mut parent, v);
                if a != b {
                    parent[b] = a;
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in self.support() {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    /// True iff the support is nonempty and connected. Isolated vertices are ignored.
    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Euler characteristic of the face complex (isolated vertices excluded).
    pub fn euler_characteristic(&self) -> i64 {
        (0..self.d)
            .map(|i| {
                let f = self.faces_unchecked(i).len() as i64;
                if i % 2 == 0 {
                    f
                } else {
                    -f
                }
            })
            .sum()
    }
}

/// Convenience: builds a complex and panics on invalid input. Intended for tests and fixtures.
#[doc(hidden)]
pub fn complex(d: usize, n: usize, facets: &[&[usize]]) -> UniformComplex {
    UniformComplex::new(d, n, facets.iter()).expect("valid fixture")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetra() -> UniformComplex {
        complex(3, 4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]])
    }

    fn k(n: usize, i: usize) -> UniformComplex {
        let f = (0..n).combinations(i).collect_vec();
        UniformComplex::new(i, n, f).unwrap()
    }

    #[test]
    fn build_rejects_bad_facets() {
        assert!(matches!(
            UniformComplex::new(3, 4, [[1usize, 1, 2]]),
            Err(ComplexError::LoopFacet(_))
        ));
        assert!(matches!(
            UniformComplex::new(3, 4, [[1usize, 2, 3], [3, 2, 1]]),
            Err(ComplexError::DuplicateFacet(_))
        ));
        assert!(matches!(
            UniformComplex::new(3, 4, [vec![1usize, 2]]),
            Err(ComplexError::NonUniformFacet { .. })
        ));
        assert!(matches!(
            UniformComplex::new(3, 4, [[1usize, 2, 4]]),
            Err(ComplexError::VertexOutOfRange { vertex: 4, n: 4 })
        ));
        assert_eq!(tetra().facet_count(), 4);
    }

    #[test]
    fn face_enumeration() {
        let t = tetra();
        assert_eq!(t.faces(1).unwrap().len(), 6);
        assert_eq!(t.faces(2).unwrap(), t.facets());
        assert_eq!(k(6, 3).faces(1).unwrap().len(), 15);
        assert!(matches!(
            t.faces(3),
            Err(ComplexError::DimensionOutOfRange { .. })
        ));
    }

    #[test]
    fn degrees() {
        let t = tetra();
        let e = FaceKey::new([0, 1]).unwrap();
        assert_eq!(t.degree(&e, 2).unwrap(), 2);
        let f = FaceKey::new([0, 1, 2]).unwrap();
        assert_eq!(t.degree(&f, 2).unwrap(), 3);
        let v = FaceKey::new([0]).unwrap();
        assert_eq!(k(6, 3).degree(&v, 2).unwrap(), 10);
        let missing = FaceKey::new([0, 5]).unwrap();
        assert!(matches!(
            k(5, 2).degree(&missing, 1),
            Err(ComplexError::NotAFace(_))
        ));
    }

    #[test]
    fn links() {
        let (l, map) = tetra().link_with_map(VertexId(0)).unwrap();
        assert_eq!(l.d(), 2);
        assert_eq!(l.facet_count(), 3);
        assert_eq!(map, vec![VertexId(1), VertexId(2), VertexId(3)]);
        let l6 = k(6, 3).link(VertexId(0)).unwrap();
        assert_eq!(l6, k(5, 2));
        let single = complex(3, 3, &[&[0, 1, 2]]);
        assert_eq!(
            single.link(VertexId(0)).unwrap().facets(),
            &[FaceKey::new([0, 1]).unwrap()]
        );
        assert!(matches!(
            tetra().link(VertexId(9)),
            Err(ComplexError::NotAVertex(_))
        ));
    }

    #[test]
    fn skeletons() {
        assert_eq!(tetra().skeleton(1).unwrap(), k(4, 2));
        let solid = complex(4, 4, &[&[0, 1, 2, 3]]);
        assert_eq!(solid.skeleton(2).unwrap(), tetra());
        assert!(solid.skeleton(4).is_err());
    }

    #[test]
    fn pendant_and_closed() {
        assert!(tetra().is_closed());
        let single = complex(3, 3, &[&[0, 1, 2]]);
        assert_eq!(single.pendant_simplexoids().len(), 1);
        assert!(!single.is_closed());
        let path = complex(2, 3, &[&[0, 1], &[1, 2]]);
        assert_eq!(path.pendant_simplexoids().len(), 2);
        let extra = complex(
            3,
            5,
            &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3], &[0, 1, 4]],
        );
        assert_eq!(
            extra.pendant_simplexoids(),
            vec![FaceKey::new([0, 1, 4]).unwrap()]
        );
    }

    #[test]
    fn induced_subcomplexes() {
        let k6 = k(6, 3);
        let s: Vec<VertexId> = [0, 2, 3, 5].into_iter().map(VertexId).collect();
        assert_eq!(k6.induced(&s).unwrap(), k(4, 3));
        let t = tetra();
        let tri = t.induced(&[VertexId(0), VertexId(1), VertexId(2)]).unwrap();
        assert_eq!(tri.facet_count(), 1);
        let pair = t.induced(&[VertexId(0), VertexId(1)]).unwrap();
        assert_eq!(pair.facet_count(), 0);
        assert_eq!(pair.isolated_vertices().len(), 2);
    }

    #[test]
    fn euler_characteristic_of_sphere() {
        assert_eq!(tetra().euler_characteristic(), 2);
    }
}
