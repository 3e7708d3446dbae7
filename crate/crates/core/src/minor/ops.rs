//! Deletion, contraction and merging of multiple simplexoids.

use itertools::Itertools;

use crate::complex::{ComplexError, FaceKey, UniformComplex};

/// Removes one facet, leaving all vertices and other facets in place.
pub fn delete_facet(c: &UniformComplex, e: &FaceKey) -> Result<UniformComplex, ComplexError> {
    if !c.is_facet(e) {
        return Err(ComplexError::NotAFacet(e.clone()));
    }
    let facets = c.facets().iter().filter(|f| *f != e).cloned().collect();
    Ok(UniformComplex::from_parts(
        c.d(),
        c.vertex_count(),
        facets,
        c.names().map(<[String]>::to_vec),
    ))
}

/// Removes every facet containing the face `v`.
///
/// A single vertex is removed from the vertex table as well (`G - v`); the vertices
/// of a larger face stay behind, isolated if nothing else covers them.
pub fn delete_face(c: &UniformComplex, v: &FaceKey) -> Result<UniformComplex, ComplexError> {
    if !c.is_face(v) {
        return Err(ComplexError::NotAFace(v.clone()));
    }
    if v.len() == 1 {
        return Ok(remove_vertex(c, v.vertices()[0]));
    }
    let facets = c
        .facets()
        .iter()
        .filter(|f| !v.is_subset_of(f))
        .cloned()
        .collect();
    Ok(UniformComplex::from_parts(
        c.d(),
        c.vertex_count(),
        facets,
        c.names().map(<[String]>::to_vec),
    ))
}

/// Deletes vertex `v` (in range, face or isolated) together with its incident facets.
pub fn remove_vertex(c: &UniformComplex, v: usize) -> UniformComplex {
    let shift = |u: usize| if u > v { u - 1 } else { u };
    let facets = c
        .facets()
        .iter()
        .filter(|f| !f.contains(v))
        .map(|f| FaceKey::from_sorted(f.vertices().iter().map(|&u| shift(u)).collect()))
        .collect();
    let names = c.names().map(|names| {
        names
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != v)
            .map(|(_, s)| s.clone())
            .collect()
    });
    UniformComplex::from_parts(c.d(), c.vertex_count() - 1, facets, names)
}

/// Identifies all vertices of the face `a` into one vertex (the smallest id of `a`),
/// renumbering the remaining vertices downwards.
///
/// Rewritten facets with fewer than `d` distinct vertices are discarded and
/// coinciding rewritten facets are merged.
pub fn contract(c: &UniformComplex, a: &FaceKey) -> Result<UniformComplex, ComplexError> {
    if !c.is_face(a) {
        return Err(ComplexError::NotAFace(a.clone()));
    }
    Ok(identify(c, a.vertices()))
}

/// Identification of an arbitrary vertex set (no face requirement). Used by the oracle
/// and by witness replay; `group` must be sorted and in range.
pub(crate) fn identify(c: &UniformComplex, group: &[usize]) -> UniformComplex {
    let rep = group[0];
    let n = c.vertex_count();
    let mut new_id = vec![0usize; n];
    let mut next = 0;
    for (v, slot) in new_id.iter_mut().enumerate() {
        if v != rep && group.binary_search(&v).is_ok() {
            continue;
        }
        *slot = next;
        next += 1;
    }
    for &v in &group[1..] {
        new_id[v] = new_id[rep];
    }
    let facets = c.facets().iter().filter_map(|f| {
        let mut g: Vec<usize> = f.vertices().iter().map(|&v| new_id[v]).collect();
        g.sort_unstable();
        g.dedup();
        (g.len() == c.d()).then(|| FaceKey::from_sorted(g))
    });
    let names = c.names().map(|names| {
        let mut out = Vec::with_capacity(next);
        for (v, name) in names.iter().enumerate() {
            if v == rep {
                out.push(group.iter().map(|&u| names[u].as_str()).join("+"));
            } else if group.binary_search(&v).is_err() {
                out.push(name.clone());
            }
        }
        out
    });
    UniformComplex::from_facets_merging(c.d(), next, facets, names)
}

/// Builds a simple complex from a facet multiset, collapsing multiple simplexoids.
pub fn merge_multiples<F: AsRef<[usize]>>(
    d: usize,
    n: usize,
    raw: &[F],
) -> Result<UniformComplex, ComplexError> {
    let mut keys = Vec::with_capacity(raw.len());
    for f in raw {
        let f = f.as_ref();
        if f.len() != d {
            return Err(ComplexError::NonUniformFacet {
                facet: f.to_vec(),
                expected: d,
                got: f.len(),
            });
        }
        if let Some(&v) = f.iter().find(|&&v| v >= n) {
            return Err(ComplexError::VertexOutOfRange { vertex: v, n });
        }
        keys.push(FaceKey::new(f.iter().copied())?);
    }
    if d == 0 {
        return Err(ComplexError::BadUniformity(d));
    }
    Ok(UniformComplex::from_facets_merging(d, n, keys, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::complex;

    fn tetra() -> UniformComplex {
        complex(3, 4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]])
    }

    fn key(v: &[usize]) -> FaceKey {
        FaceKey::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn facet_deletion() {
        let t = delete_facet(&tetra(), &key(&[0, 1, 2])).unwrap();
        assert_eq!(t.facet_count(), 3);
        assert!(!t.is_closed());
        let star = delete_facet(&tetra(), &key(&[1, 2, 3])).unwrap();
        assert!(star.facets().iter().all(|f| f.contains(0)));
        assert!(matches!(
            delete_facet(&tetra(), &key(&[0, 1])),
            Err(ComplexError::NotAFacet(_))
        ));
    }

    #[test]
    fn face_deletion() {
        let minus_v = delete_face(&tetra(), &key(&[0])).unwrap();
        assert_eq!(minus_v.vertex_count(), 3);
        assert_eq!(minus_v.facets(), &[key(&[0, 1, 2])]);
        let minus_e = delete_face(&tetra(), &key(&[0, 1])).unwrap();
        assert_eq!(minus_e.facets(), &[key(&[0, 2, 3]), key(&[1, 2, 3])]);
        assert_eq!(minus_e.vertex_count(), 4);
        let k6 = UniformComplex::new(3, 6, (0..6).combinations(3)).unwrap();
        let k5 = UniformComplex::new(3, 5, (0..5).combinations(3)).unwrap();
        assert_eq!(delete_face(&k6, &key(&[2])).unwrap(), k5);
    }

    #[test]
    fn contraction_discards_degenerate_and_merges() {
        // Contract edge {2,3}: 012 and 013 merge, 023 and 123 degenerate.
        let c = contract(&tetra(), &key(&[2, 3])).unwrap();
        assert_eq!(c.vertex_count(), 3);
        assert_eq!(c.facets(), &[key(&[0, 1, 2])]);
        let k5 = UniformComplex::new(2, 5, (0..5).combinations(2)).unwrap();
        let k4 = UniformComplex::new(2, 4, (0..4).combinations(2)).unwrap();
        assert_eq!(contract(&k5, &key(&[1, 3])).unwrap(), k4);
        let whole = contract(&tetra(), &key(&[0, 1, 2])).unwrap();
        assert_eq!(whole.vertex_count(), 2);
        assert_eq!(whole.facet_count(), 0);
    }

    #[test]
    fn merging() {
        let m = merge_multiples(3, 5, &[[0, 1, 2], [2, 1, 0], [0, 1, 3]]).unwrap();
        assert_eq!(m.facets(), &[key(&[0, 1, 2]), key(&[0, 1, 3])]);
        let same = merge_multiples(3, 4, &[[0, 1, 2], [0, 1, 3]]).unwrap();
        assert_eq!(same.facet_count(), 2);
        assert!(matches!(
            merge_multiples(3, 4, &[[0, 0, 1]]),
            Err(ComplexError::LoopFacet(_))
        ));
    }
}
