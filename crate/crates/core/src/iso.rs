//! Canonical labeling and isomorphism of uniform complexes.
//!
//! Vertices are colored by iterated refinement over the vertex–facet incidence
//! structure; remaining ties are broken by individualization with backtracking.
//! The canonical form is the lexicographically least relabeled facet list over
//! all leaves of the search tree. Automorphisms found at equal leaves prune
//! sibling branches in the same orbit and trigger a backjump.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{FaceKey, UniformComplex, VertexId};

/// Label-independent description of a complex up to isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub d: usize,
    pub n: usize,
    pub facets: Vec<Vec<usize>>,
}

impl CanonicalForm {
    pub fn to_complex(&self) -> UniformComplex {
        let facets = self
            .facets
            .iter()
            .map(|f| FaceKey::from_sorted(f.clone()))
            .collect();
        UniformComplex::from_parts(self.d, self.n, facets, None)
    }
}

/// A facet-preserving vertex bijection: vertex `v` of the first complex maps to `mapping[v]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoCertificate {
    pub mapping: Vec<VertexId>,
}

impl IsoCertificate {
    /// Re-checks that the mapping is a bijection carrying facets of `a` exactly onto `b`.
    pub fn verify(&self, a: &UniformComplex, b: &UniformComplex) -> bool {
        if a.d() != b.d()
            || a.vertex_count() != b.vertex_count()
            || a.facet_count() != b.facet_count()
        {
            return false;
        }
        if self.mapping.len() != a.vertex_count() {
            return false;
        }
        let mut seen = vec![false; b.vertex_count()];
        for v in &self.mapping {
            if v.0 >= seen.len() || std::mem::replace(&mut seen[v.0], true) {
                return false;
            }
        }
        a.facets().iter().all(|f| {
            FaceKey::new(f.vertices().iter().map(|&v| self.mapping[v].0))
                .map(|g| b.is_facet(&g))
                .unwrap_or(false)
        })
    }
}

/// Canonical form plus the labeling `vertex -> canonical index` that produced it.
pub fn canonical_labeling(c: &UniformComplex) -> (CanonicalForm, Vec<usize>) {
    let mut search = Search::new(c);
    let colors = vec![0u32; c.vertex_count()];
    search.run(colors, Vec::new());
    let (image, lab) = search.best.expect("search reaches at least one leaf");
    (
        CanonicalForm {
            d: c.d(),
            n: c.vertex_count(),
            facets: image,
        },
        lab,
    )
}

pub fn canonical_form(c: &UniformComplex) -> CanonicalForm {
    canonical_labeling(c).0
}

pub fn is_isomorphic(a: &UniformComplex, b: &UniformComplex) -> Option<IsoCertificate> {
    if a.d() != b.d() || a.vertex_count() != b.vertex_count() || a.facet_count() != b.facet_count()
    {
        return None;
    }
    let (fa, la) = canonical_labeling(a);
    let (fb, lb) = canonical_labeling(b);
    if fa != fb {
        return None;
    }
    let mut inv = vec![0usize; lb.len()];
    for (v, &c) in lb.iter().enumerate() {
        inv[c] = v;
    }
    Some(IsoCertificate {
        mapping: la.iter().map(|&c| VertexId(inv[c])).collect(),
    })
}

struct Search<'a> {
    c: &'a UniformComplex,
    incidence: Vec<Vec<usize>>,
    best: Option<(Vec<Vec<usize>>, Vec<usize>)>,
    best_path: Vec<usize>,
    generators: Vec<Vec<usize>>,
    /// Nodes deeper than this must unwind immediately.
    backjump: Option<usize>,
}

impl<'a> Search<'a> {
    fn new(c: &'a UniformComplex) -> Self {
        let mut incidence = vec![Vec::new(); c.vertex_count()];
        for (i, f) in c.facets().iter().enumerate() {
            for &v in f.vertices() {
                incidence[v].push(i);
            }
        }
        Search {
            c,
            incidence,
            best: None,
            best_path: Vec::new(),
            generators: Vec::new(),
            backjump: None,
        }
    }

    fn refine(&self, mut colors: Vec<u32>) -> Vec<u32> {
        let facets = self.c.facets();
        let mut classes = count_classes(&colors);
        loop {
            let sigs: Vec<(u32, Vec<Vec<u32>>)> = (0..colors.len())
                .map(|v| {
                    let mut around: Vec<Vec<u32>> = self.incidence[v]
                        .iter()
                        .map(|&fi| {
                            let mut cs: Vec<u32> = facets[fi]
                                .vertices()
                                .iter()
                                .filter(|&&u| u != v)
                                .map(|&u| colors[u])
                                .collect();
                            cs.sort_unstable();
                            cs
                        })
                        .collect();
                    around.sort();
                    (colors[v], around)
                })
                .collect();
            let mut ranked: Vec<&(u32, Vec<Vec<u32>>)> = sigs.iter().collect();
            ranked.sort();
            ranked.dedup();
            let rank: BTreeMap<&(u32, Vec<Vec<u32>>), u32> = ranked
                .iter()
                .enumerate()
                .map(|(i, s)| (*s, i as u32))
                .collect();
            colors = sigs.iter().map(|s| rank[s]).collect();
            let next = count_classes(&colors);
            if next == classes {
                return colors;
            }
            classes = next;
        }
    }

    fn run(&mut self, colors: Vec<u32>, path: Vec<usize>) {
        let colors = self.refine(colors);
        let n = colors.len();
        if count_classes(&colors) == n {
            self.leaf(&colors, &path);
            return;
        }
        // First non-singleton cell by color.
        let mut sizes: BTreeMap<u32, usize> = BTreeMap::new();
        for &c in &colors {
            *sizes.entry(c).or_default() += 1;
        }
        let target = *sizes.iter().find(|(_, &s)| s > 1).unwrap().0;
        let cell: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for w in cell {
            if !explored.is_empty() && self.same_orbit(&path, w, &explored) {
                continue;
            }
            let mut next = colors.iter().map(|&c| 2 * c + 1).collect::<Vec<_>>();
            next[w] = 2 * target;
            let mut child_path = path.clone();
            child_path.push(w);
            self.run(next, child_path);
            explored.push(w);
            if let Some(depth) = self.backjump {
                if path.len() > depth {
                    return;
                }
                self.backjump = None;
            }
        }
    }

    fn leaf(&mut self, lab: &[u32], path: &[usize]) {
        let lab: Vec<usize> = lab.iter().map(|&c| c as usize).collect();
        let mut image: Vec<Vec<usize>> = self
            .c
            .facets()
            .iter()
            .map(|f| {
                let mut g: Vec<usize> = f.vertices().iter().map(|&v| lab[v]).collect();
                g.sort_unstable();
                g
            })
            .collect();
        image.sort();
        match &self.best {
            None => {
                self.best = Some((image, lab));
                self.best_path = path.to_vec();
            }
            Some((best_image, best_lab)) => match image.cmp(best_image) {
                std::cmp::Ordering::Less => {
                    self.best = Some((image, lab));
                    self.best_path = path.to_vec();
                }
                std::cmp::Ordering::Equal => {
                    // lab and best_lab differ by an automorphism.
                    let mut inv_best = vec![0usize; best_lab.len()];
                    for (u, &c) in best_lab.iter().enumerate() {
                        inv_best[c] = u;
                    }
                    let gamma: Vec<usize> = lab.iter().map(|&c| inv_best[c]).collect();
                    if gamma.iter().enumerate().any(|(i, &g)| i != g) {
                        self.generators.push(gamma);
                    }
                    let common = path
                        .iter()
                        .zip(self.best_path.iter())
                        .take_while(|(a, b)| a == b)
                        .count();
                    self.backjump = Some(common);
                }
                std::cmp::Ordering::Greater => {}
            },
        }
    }

    /// Whether `w` shares an orbit with an explored sibling under the found
    /// automorphisms that fix the current path pointwise.
    fn same_orbit(&self, path: &[usize], w: usize, explored: &[usize]) -> bool {
        let n = self.c.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for g in &self.generators {
            if path.iter().any(|&p| g[p] != p) {
                continue;
            }
            for (v, &gv) in g.iter().enumerate() {
                let (a, b) = (find(&mut parent, v), find(&mut parent, gv));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let rw = find(&mut parent, w);
        explored.iter().any(|&e| find(&mut parent, e) == rw)
    }
}

fn count_classes(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::complex;
    use itertools::Itertools;

    fn tetra() -> UniformComplex {
        complex(3, 4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]])
    }

    fn relabel(c: &UniformComplex, perm: &[usize]) -> UniformComplex {
        let f = c
            .facets()
            .iter()
            .map(|f| f.vertices().iter().map(|&v| perm[v]).collect_vec())
            .collect_vec();
        UniformComplex::new(c.d(), c.vertex_count(), f).unwrap()
    }

    #[test]
    fn relabeled_sphere_is_isomorphic() {
        let t = tetra();
        let r = relabel(&t, &[2, 0, 3, 1]);
        let cert = is_isomorphic(&t, &r).expect("isomorphic");
        assert!(cert.verify(&t, &r));
        let k43 = UniformComplex::new(3, 4, (0..4).combinations(3)).unwrap();
        assert!(is_isomorphic(&t, &k43).is_some());
        let single = complex(3, 4, &[&[0, 1, 2]]);
        assert!(is_isomorphic(&t, &single).is_none());
    }

    #[test]
    fn non_isomorphic_same_counts() {
        // 6-cycle vs two triangles.
        let c6 = complex(
            2,
            6,
            &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[0, 5]],
        );
        let two = complex(
            2,
            6,
            &[&[0, 1], &[1, 2], &[0, 2], &[3, 4], &[4, 5], &[3, 5]],
        );
        assert!(is_isomorphic(&c6, &two).is_none());
        assert_ne!(canonical_form(&c6), canonical_form(&two));
    }

    #[test]
    fn complete_complexes_are_fast() {
        let k = UniformComplex::new(3, 12, (0..12).combinations(3)).unwrap();
        let r = relabel(&k, &[11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1, 0]);
        assert_eq!(canonical_form(&k), canonical_form(&r));
    }

    #[test]
    fn petersen_canonical_form_is_stable() {
        let outer = (0..5).map(|i| vec![i, (i + 1) % 5]);
        let spokes = (0..5).map(|i| vec![i, i + 5]);
        let inner = (0..5).map(|i| vec![5 + i, 5 + (i + 2) % 5]);
        let p = UniformComplex::new(2, 10, outer.chain(spokes).chain(inner)).unwrap();
        let perm = [3, 7, 1, 9, 0, 2, 8, 4, 6, 5];
        let q = relabel(&p, &perm);
        let cert = is_isomorphic(&p, &q).unwrap();
        assert!(cert.verify(&p, &q));
    }
}
