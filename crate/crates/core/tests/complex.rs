use std::collections::BTreeSet;

use hyperwagner::generators::{complete_bipartite_uniform, complete_uniform, simplex_boundary};
use hyperwagner::{
    canonical_form, complex, is_isomorphic, ComplexError, FaceKey, UniformComplex, VertexId,
};
use itertools::Itertools;
use proptest::prelude::*;

fn key(v: &[usize]) -> FaceKey {
    FaceKey::new(v.iter().copied()).unwrap()
}

fn tetra() -> UniformComplex {
    simplex_boundary(3).unwrap()
}

#[test]
fn construction_errors() {
    assert_eq!(tetra().facet_count(), 4);
    assert!(matches!(
        UniformComplex::new(3, 4, [[0, 0, 1]]),
        Err(ComplexError::LoopFacet(_))
    ));
    assert!(matches!(
        UniformComplex::new(3, 4, [[0, 1, 2], [2, 1, 0]]),
        Err(ComplexError::DuplicateFacet(_))
    ));
    assert!(matches!(
        UniformComplex::new(3, 4, [vec![0, 1]]),
        Err(ComplexError::NonUniformFacet { .. })
    ));
    assert!(matches!(
        UniformComplex::new(3, 4, [[0, 1, 4]]),
        Err(ComplexError::VertexOutOfRange { vertex: 4, n: 4 })
    ));
}

#[test]
fn faces_and_degrees() {
    let t = tetra();
    assert_eq!(t.faces(1).unwrap().len(), 6);
    assert_eq!(t.faces(2).unwrap(), t.facets());
    assert!(matches!(
        t.faces(3),
        Err(ComplexError::DimensionOutOfRange { .. })
    ));
    let k6 = complete_uniform(6, 3).unwrap();
    assert_eq!(k6.faces(1).unwrap().len(), 15);

    assert_eq!(t.degree(&key(&[0, 1]), 2).unwrap(), 2);
    assert_eq!(t.degree(&key(&[0, 1, 2]), 2).unwrap(), 3);
    assert_eq!(k6.degree(&key(&[0]), 2).unwrap(), 10);
    assert!(matches!(
        t.degree(&key(&[0, 4]), 2),
        Err(ComplexError::NotAFace(_))
    ));
}

#[test]
fn links_and_skeletons() {
    let t = tetra();
    let link = t.link(VertexId(0)).unwrap();
    assert_eq!(link.d(), 2);
    assert_eq!(link.facet_count(), 3);
    let k6 = complete_uniform(6, 3).unwrap();
    assert!(is_isomorphic(
        &k6.link(VertexId(0)).unwrap(),
        &complete_uniform(5, 2).unwrap()
    )
    .is_some());
    let single = complex(3, 3, &[&[0, 1, 2]]);
    assert_eq!(single.link(VertexId(0)).unwrap().facet_count(), 1);
    assert!(matches!(
        t.link(VertexId(9)),
        Err(ComplexError::NotAVertex(_))
    ));

    assert!(is_isomorphic(&t.skeleton(1).unwrap(), &complete_uniform(4, 2).unwrap()).is_some());
    let simplex = complex(4, 4, &[&[0, 1, 2, 3]]);
    assert_eq!(simplex.skeleton(2).unwrap().facets(), t.facets());
    let k34 = complete_bipartite_uniform(3, 4, 3).unwrap();
    let edges = k34.skeleton(1).unwrap();
    assert_eq!(edges.facet_count(), 18);
    assert!((0..3)
        .tuple_combinations()
        .all(|(a, b)| !edges.is_facet(&key(&[a, b]))));
}

#[test]
fn pendant_and_closed() {
    let t = tetra();
    assert!(t.pendant_simplexoids().is_empty() && t.is_closed());
    let single = complex(3, 3, &[&[0, 1, 2]]);
    assert_eq!(single.pendant_simplexoids(), vec![key(&[0, 1, 2])]);
    let path = complex(2, 3, &[&[0, 1], &[1, 2]]);
    assert_eq!(path.pendant_simplexoids().len(), 2);
    let extra = complex(
        3,
        5,
        &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3], &[0, 1, 4]],
    );
    assert_eq!(extra.pendant_simplexoids(), vec![key(&[0, 1, 4])]);
    assert!(!extra.is_closed());
}

#[test]
fn induced_subcomplexes() {
    let k6 = complete_uniform(6, 3).unwrap();
    let vs: Vec<VertexId> = [0, 2, 3, 5].into_iter().map(VertexId).collect();
    assert_eq!(
        canonical_form(&k6.induced(&vs).unwrap()),
        canonical_form(&complete_uniform(4, 3).unwrap())
    );
    let t = tetra();
    assert_eq!(
        t.induced(&[VertexId(0), VertexId(1), VertexId(2)])
            .unwrap()
            .facet_count(),
        1
    );
    assert_eq!(
        t.induced(&[VertexId(0), VertexId(1)])
            .unwrap()
            .facet_count(),
        0
    );
    assert!(t.induced(&[VertexId(7)]).is_err());
}

#[test]
fn isomorphism_examples() {
    let t = tetra();
    let relabeled = complex(3, 4, &[&[3, 2, 1], &[3, 2, 0], &[3, 1, 0], &[2, 1, 0]]);
    assert!(is_isomorphic(&t, &relabeled).is_some());
    assert!(is_isomorphic(&t, &complete_uniform(4, 3).unwrap()).is_some());
    assert!(is_isomorphic(&t, &complex(3, 3, &[&[0, 1, 2]])).is_none());
}

fn arb_complex() -> impl Strategy<Value = UniformComplex> {
    (2usize..=4, 4usize..=8).prop_flat_map(|(d, n)| {
        let all: Vec<Vec<usize>> = (0..n).combinations(d).collect();
        let len = all.len();
        proptest::sample::subsequence(all, 1..=len.min(12))
            .prop_map(move |f| UniformComplex::new(d, n, f).unwrap())
    })
}

fn relabel(c: &UniformComplex, perm: &[usize]) -> UniformComplex {
    UniformComplex::new(
        c.d(),
        c.vertex_count(),
        c.facets()
            .iter()
            .map(|f| f.vertices().iter().map(|&v| perm[v]).collect_vec()),
    )
    .unwrap()
}

proptest! {
    #[test]
    fn faces_match_direct_enumeration(c in arb_complex()) {
        for i in 0..c.d() {
            let direct: BTreeSet<Vec<usize>> =
                c.facets().iter().flat_map(|f| f.vertices().iter().copied().combinations(i + 1)).collect();
            let got: Vec<Vec<usize>> = c.faces(i).unwrap().iter().map(|f| f.vertices().to_vec()).collect();
            prop_assert_eq!(got, direct.into_iter().collect_vec());
        }
        let ridges: BTreeSet<FaceKey> = c.faces(c.d() - 2).unwrap().iter().cloned().collect();
        for f in c.facets() {
            prop_assert_eq!(f.ridges().filter(|(_, r)| ridges.contains(r)).count(), c.d());
        }
    }

    #[test]
    fn canonical_form_ignores_labels(c in arb_complex(), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..c.vertex_count()).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let r = relabel(&c, &perm);
        prop_assert_eq!(canonical_form(&c), canonical_form(&r));
        let cert = is_isomorphic(&c, &r);
        prop_assert!(cert.is_some());
    }

    #[test]
    fn links_of_closed_complexes_are_closed(c in arb_complex()) {
        if c.d() >= 3 && c.is_closed() {
            for v in c.support() {
                prop_assert!(c.link(VertexId(v)).unwrap().is_closed());
            }
        }
    }

    #[test]
    fn graph_pendants_are_edges_at_leaves(c in arb_complex()) {
        if c.d() == 2 {
            let deg = |v: usize| c.facets().iter().filter(|f| f.contains(v)).count();
            let expected: Vec<FaceKey> =
                c.facets().iter().filter(|f| f.vertices().iter().any(|&v| deg(v) == 1)).cloned().collect();
            prop_assert_eq!(c.pendant_simplexoids(), expected);
        }
    }
}
