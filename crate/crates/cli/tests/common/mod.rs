//! Fixed and seeded corpora shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use hyperwagner::generators::{complete_uniform, cross_polytope_boundary, simplex_boundary};
use hyperwagner::{FaceKey, UniformComplex};
use itertools::Itertools;
use rand::seq::IndexedRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn graph(n: usize, edges: &[(usize, usize)]) -> UniformComplex {
    UniformComplex::new(2, n, edges.iter().map(|&(a, b)| [a, b])).expect("simple graph")
}

pub fn cycle_edges(vs: &[usize]) -> Vec<(usize, usize)> {
    (0..vs.len())
        .map(|i| (vs[i], vs[(i + 1) % vs.len()]))
        .collect()
}

/// Generalized Petersen graph GP(n, k).
pub fn generalized_petersen(n: usize, k: usize) -> UniformComplex {
    let mut e = Vec::new();
    for i in 0..n {
        e.push((i, (i + 1) % n));
        e.push((i, n + i));
        e.push((n + i, n + (i + k) % n));
    }
    graph(2 * n, &e)
}

pub fn petersen() -> UniformComplex {
    generalized_petersen(5, 2)
}

pub fn mobius_kantor() -> UniformComplex {
    generalized_petersen(8, 3)
}

pub fn grid(r: usize, c: usize) -> UniformComplex {
    let mut e = Vec::new();
    for i in 0..r {
        for j in 0..c {
            let v = i * c + j;
            if j + 1 < c {
                e.push((v, v + 1));
            }
            if i + 1 < r {
                e.push((v, v + c));
            }
        }
    }
    graph(r * c, &e)
}

/// Hub 0 joined to a rim cycle on `rim` vertices.
pub fn wheel(rim: usize) -> UniformComplex {
    let vs: Vec<usize> = (1..=rim).collect();
    let mut e = cycle_edges(&vs);
    e.extend(vs.iter().map(|&v| (0, v)));
    graph(rim + 1, &e)
}

pub fn k5_minus_edge() -> UniformComplex {
    let e: Vec<(usize, usize)> = (0..5)
        .tuple_combinations()
        .filter(|&p| p != (3, 4))
        .collect();
    graph(5, &e)
}

pub fn octahedron_graph() -> UniformComplex {
    cross_polytope_boundary(3).unwrap().skeleton(1).unwrap()
}

pub fn icosahedron_graph() -> UniformComplex {
    let mut e = Vec::new();
    for i in 0..5 {
        let (u, u2) = (1 + i, 1 + (i + 1) % 5);
        let (l, l2) = (6 + i, 6 + (i + 1) % 5);
        e.extend([(0, u), (u, u2), (l, l2), (l, 11), (u, l), (u2, l)]);
    }
    graph(12, &e)
}

/// Triangle faces of a random maximal planar graph: stacked insertions followed by edge flips.
pub fn random_maximal_planar(n: usize, rng: &mut ChaCha8Rng) -> UniformComplex {
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 1, 2]];
    for v in 3..n {
        let i = rng.random_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(i);
        faces.extend([[a, b, v], [a, c, v], [b, c, v]]);
    }
    for _ in 0..4 * n {
        let i = rng.random_range(0..faces.len());
        let f = faces[i];
        let k = rng.random_range(0..3);
        let (a, b) = (f[k], f[(k + 1) % 3]);
        let x = f[(k + 2) % 3];
        let Some(j) =
            (0..faces.len()).find(|&j| j != i && faces[j].contains(&a) && faces[j].contains(&b))
        else {
            continue;
        };
        let y = *faces[j].iter().find(|&&w| w != a && w != b).unwrap();
        let edges = edge_set(&faces);
        if x == y || edges.contains(&(x.min(y), x.max(y))) {
            continue;
        }
        faces[i] = [x, y, a];
        faces[j] = [x, y, b];
    }
    let e: Vec<(usize, usize)> = edge_set(&faces).into_iter().collect();
    assert_eq!(e.len(), 3 * n - 6);
    graph(n, &e)
}

fn edge_set(faces: &[[usize; 3]]) -> BTreeSet<(usize, usize)> {
    faces
        .iter()
        .flat_map(|f| [(f[0], f[1]), (f[0], f[2]), (f[1], f[2])])
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect()
}

/// `m` distinct random d-subsets of `0..n`, with isolated vertices dropped.
pub fn random_complex(d: usize, n: usize, m: usize, rng: &mut ChaCha8Rng) -> UniformComplex {
    let all: Vec<Vec<usize>> = (0..n).combinations(d).collect();
    let m = m.min(all.len());
    let chosen: Vec<&Vec<usize>> = all.choose_multiple(rng, m).collect();
    UniformComplex::new(d, n, chosen).unwrap().compact()
}

/// ∂Δ³ after `k` random stellar subdivisions of facets.
pub fn stacked_sphere(k: usize, rng: &mut ChaCha8Rng) -> UniformComplex {
    let mut facets: Vec<Vec<usize>> = (0..4).combinations(3).collect();
    for v in 4..4 + k {
        let i = rng.random_range(0..facets.len());
        let f = facets.swap_remove(i);
        for r in f.iter().copied().combinations(2) {
            facets.push(vec![r[0], r[1], v]);
        }
    }
    UniformComplex::new(3, 4 + k, facets).unwrap()
}

/// Relabels `c` so that the facet `t` becomes `{0,1,2,..}` and the other
/// vertices follow from `offset` on.
pub fn place(c: &UniformComplex, t: &FaceKey, offset: usize) -> Vec<Vec<usize>> {
    let others: Vec<usize> = c
        .support()
        .into_iter()
        .filter(|v| !t.contains(*v))
        .collect();
    let map = |v: usize| match t.vertices().iter().position(|&u| u == v) {
        Some(i) => i,
        None => offset + others.iter().position(|&u| u == v).unwrap(),
    };
    c.facets()
        .iter()
        .map(|f| f.vertices().iter().map(|&v| map(v)).collect())
        .collect()
}

/// Two closed pieces glued along one facet of each, optionally dropping the shared facet.
pub fn glue(
    a: &UniformComplex,
    b: &UniformComplex,
    drop_shared: bool,
    rng: &mut ChaCha8Rng,
) -> UniformComplex {
    let d = a.d();
    let ta = a.facets().choose(rng).unwrap().clone();
    let tb = b.facets().choose(rng).unwrap().clone();
    let na = a.support().len();
    let nb = b.support().len();
    let mut facets: BTreeSet<Vec<usize>> = place(a, &ta, d).into_iter().map(sorted).collect();
    facets.extend(place(b, &tb, na).into_iter().map(sorted));
    if drop_shared {
        facets.remove(&(0..d).collect::<Vec<_>>());
    }
    UniformComplex::new(d, na + nb - d, facets).unwrap()
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// Closed d = 3 pieces used for gluing.
pub fn closed_pieces(rng: &mut ChaCha8Rng) -> Vec<UniformComplex> {
    vec![
        simplex_boundary(3).unwrap(),
        cross_polytope_boundary(3).unwrap(),
        stacked_sphere(1, rng),
        stacked_sphere(2, rng),
        complete_uniform(5, 3).unwrap(),
        complete_uniform(6, 3).unwrap(),
    ]
}

/// Exhaustive vertex connectivity: the least number of vertices whose removal
/// disconnects the graph, n − 1 for complete graphs.
pub fn brute_force_connectivity(n: usize, edges: &[(usize, usize)]) -> usize {
    let connected_without = |removed: &[usize]| {
        let keep: Vec<usize> = (0..n).filter(|v| !removed.contains(v)).collect();
        let Some(&start) = keep.first() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &(a, b) in edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !removed.contains(&y) && seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
        seen.len() == keep.len()
    };
    for k in 0..n.saturating_sub(1) {
        if (0..n).combinations(k).any(|s| !connected_without(&s)) {
            return k;
        }
    }
    n.saturating_sub(1)
}

pub fn edges_of(g: &UniformComplex) -> Vec<(usize, usize)> {
    g.skeleton(1)
        .unwrap()
        .facets()
        .iter()
        .map(|f| (f.vertices()[0], f.vertices()[1]))
        .collect()
}
