use std::collections::BTreeSet;

use hyperwagner::generators::{complete_uniform, cross_polytope_boundary};
use hyperwagner::graph::{
    contractible_edge, enumerate_cuts, is_k_connected, one_skeleton, vertex_connectivity,
    GraphError, SkeletonGraph,
};
use hyperwagner::UniformComplex;
use itertools::Itertools;
use proptest::prelude::*;

fn connected_without(g: &SkeletonGraph, removed: &[usize]) -> bool {
    let keep: Vec<usize> = (0..g.vertex_count())
        .filter(|v| !removed.contains(v))
        .collect();
    let Some(&start) = keep.first() else {
        return true;
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in g.neighbours(v) {
            if !removed.contains(&w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == keep.len()
}

/// Least number of vertices whose removal disconnects the graph, n − 1 if none does.
fn brute_kappa(g: &SkeletonGraph) -> usize {
    let n = g.vertex_count();
    (0..n.saturating_sub(1))
        .find(|&k| (0..n).combinations(k).any(|s| !connected_without(g, &s)))
        .unwrap_or(n.saturating_sub(1))
}

fn petersen() -> SkeletonGraph {
    SkeletonGraph::from_edges(
        10,
        (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, 5 + i), (5 + i, 5 + (i + 2) % 5)]),
    )
}

fn wheel(rim: usize) -> SkeletonGraph {
    SkeletonGraph::from_edges(rim + 1, (1..=rim).flat_map(|i| [(0, i), (i, i % rim + 1)]))
}

#[test]
fn connectivity_examples() {
    let k5 = one_skeleton(&complete_uniform(5, 2).unwrap());
    assert_eq!(vertex_connectivity(&k5).unwrap().0, 4);
    let (kappa, cut) = vertex_connectivity(&petersen()).unwrap();
    assert_eq!(kappa, 3);
    assert_eq!(cut.unwrap().vertices.len(), 3);
    let p4 = SkeletonGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]);
    let (kappa, cut) = vertex_connectivity(&p4).unwrap();
    assert_eq!(kappa, 1);
    assert!([vec![1], vec![2]].contains(&cut.unwrap().vertices));
    let split = SkeletonGraph::from_edges(4, [(0, 1), (2, 3)]);
    assert_eq!(vertex_connectivity(&split).unwrap().0, 0);
    assert!(matches!(
        vertex_connectivity(&SkeletonGraph::from_edges(1, [])),
        Err(GraphError::TooSmall(1))
    ));

    assert!(is_k_connected(&k5, 4));
    assert!(!is_k_connected(&k5, 5));
    assert!(is_k_connected(&petersen(), 3) && !is_k_connected(&petersen(), 4));
    let octa = one_skeleton(&cross_polytope_boundary(3).unwrap());
    assert_eq!(vertex_connectivity(&octa).unwrap().0, 4);
}

#[test]
fn contractible_edges() {
    let w5 = wheel(5);
    let (a, b) = contractible_edge(&w5, 3)
        .unwrap()
        .expect("wheels with five spokes have one");
    assert!(is_k_connected(&w5.contract_edge(a, b), 3));
    assert!(contractible_edge(&wheel(3), 3).unwrap().is_none());
    let octa = one_skeleton(&cross_polytope_boundary(3).unwrap());
    assert!(contractible_edge(&octa, 4).unwrap().is_none());
    let k4 = one_skeleton(&complete_uniform(4, 2).unwrap());
    assert!(contractible_edge(&k4, 3).unwrap().is_none());
    assert!(matches!(
        contractible_edge(&petersen(), 4),
        Err(GraphError::PreconditionViolated(_))
    ));
}

#[test]
fn cut_enumeration() {
    let bowtie = SkeletonGraph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]);
    let cuts = enumerate_cuts(&bowtie, 1).unwrap();
    assert_eq!(cuts.len(), 1);
    assert_eq!(cuts[0].vertices, vec![2]);
    assert_eq!(cuts[0].separated_component_sizes, vec![2, 2]);

    // Two tetrahedron boundaries sharing the triangle {1,2,3}.
    let glued = UniformComplex::new(
        3,
        5,
        [
            [0, 1, 2],
            [0, 1, 3],
            [0, 2, 3],
            [1, 2, 4],
            [1, 3, 4],
            [2, 3, 4],
        ],
    )
    .unwrap();
    let cuts = enumerate_cuts(&one_skeleton(&glued), 3).unwrap();
    assert!(cuts.iter().any(|c| c.vertices == vec![1, 2, 3]));

    let k5 = one_skeleton(&complete_uniform(5, 2).unwrap());
    assert!(enumerate_cuts(&k5, 3).unwrap().is_empty());
    assert!(enumerate_cuts(&k5, 4).is_err());
    let big = SkeletonGraph::from_edges(17, (0..16).map(|i| (i, i + 1)));
    assert!(matches!(
        enumerate_cuts(&big, 1),
        Err(GraphError::TooLargeForEnumeration(17))
    ));
}

fn arb_graph() -> impl Strategy<Value = SkeletonGraph> {
    (3usize..=8).prop_flat_map(|n| {
        let all: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
        let len = all.len();
        proptest::sample::subsequence(all, 0..=len)
            .prop_map(move |e| SkeletonGraph::from_edges(n, e))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn connectivity_matches_brute_force(g in arb_graph()) {
        let (kappa, cut) = vertex_connectivity(&g).unwrap();
        prop_assert_eq!(kappa, brute_kappa(&g));
        if let Some(cut) = cut {
            prop_assert_eq!(cut.vertices.len(), kappa);
            prop_assert!(!connected_without(&g, &cut.vertices));
        }
        for k in 0..=4 {
            prop_assert_eq!(is_k_connected(&g, k), g.vertex_count() > k && kappa >= k);
        }
    }

    /// If contracting an edge of a k-connected graph breaks k-connectivity (and
    /// leaves more than k vertices), some k-cut contains both ends of the edge.
    #[test]
    fn failed_contractions_come_from_cuts(g in arb_graph(), k in 2usize..=4) {
        prop_assume!(is_k_connected(&g, k) && g.vertex_count() <= 8);
        let cuts = enumerate_cuts(&g, k).unwrap_or_default();
        for (a, b) in g.edges() {
            let h = g.contract_edge(a, b);
            if h.vertex_count() > k && !is_k_connected(&h, k) {
                prop_assert!(cuts.iter().any(|c| c.vertices.contains(&a) && c.vertices.contains(&b)));
            }
        }
    }

    #[test]
    fn listed_cuts_are_exactly_the_separators(g in arb_graph(), size in 0usize..=3) {
        prop_assume!(size + 2 <= g.vertex_count());
        let listed: Vec<Vec<usize>> = enumerate_cuts(&g, size).unwrap().into_iter().map(|c| c.vertices).collect();
        let expected: Vec<Vec<usize>> = (0..g.vertex_count())
            .combinations(size)
            .filter(|s| !connected_without(&g, s))
            .collect();
        prop_assert_eq!(listed, expected);
    }
}
