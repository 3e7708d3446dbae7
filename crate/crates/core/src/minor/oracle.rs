//! Exhaustive minor test by deletion and contraction sequences.
//!
//! Used to cross-check the branch-set search on small inputs. Every reachable
//! complex is memoized by canonical form.

use std::collections::HashSet;

use super::ops::{contract, delete_facet, remove_vertex};
use super::search::MinorError;
use crate::complex::UniformComplex;
use crate::iso::{canonical_form, CanonicalForm};

pub const ORACLE_MAX_VERTICES: usize = 9;
pub const ORACLE_MAX_FACETS: usize = 14;

/// True iff some sequence of facet deletions, vertex deletions and face
/// contractions turns `g` into a complex isomorphic to `h`.
pub fn brute_force_minor(g: &UniformComplex, h: &UniformComplex) -> Result<bool, MinorError> {
    if g.d() != h.d() {
        return Err(MinorError::UniformityMismatch {
            host: g.d(),
            target: h.d(),
        });
    }
    if g.vertex_count() > ORACLE_MAX_VERTICES && g.facet_count() > ORACLE_MAX_FACETS {
        return Err(MinorError::TooLargeForOracle {
            vertices: g.vertex_count(),
            facets: g.facet_count(),
        });
    }
    let mut oracle = Oracle {
        target: canonical_form(h),
        hn: h.vertex_count(),
        hf: h.facet_count(),
        seen: HashSet::new(),
    };
    Ok(oracle.reaches(g.clone()))
}

struct Oracle {
    target: CanonicalForm,
    hn: usize,
    hf: usize,
    seen: HashSet<CanonicalForm>,
}

impl Oracle {
    fn reaches(&mut self, c: UniformComplex) -> bool {
        if c.vertex_count() < self.hn || c.facet_count() < self.hf {
            return false;
        }
        let form = canonical_form(&c);
        if form == self.target {
            return true;
        }
        if !self.seen.insert(form.clone()) {
            return false;
        }
        // Work on the canonical representative so isomorphic states expand identically.
        let c = form.to_complex();
        for f in c.facets() {
            if self.reaches(delete_facet(&c, f).expect("facet of c")) {
                return true;
            }
        }
        if c.vertex_count() > self.hn {
            for v in 0..c.vertex_count() {
                if self.reaches(remove_vertex(&c, v)) {
                    return true;
                }
            }
            for i in 1..c.d() {
                let faces = c.faces_unchecked(i).to_vec();
                for a in faces {
                    if c.vertex_count() - a.dim() < self.hn {
                        continue;
                    }
                    if self.reaches(contract(&c, &a).expect("face of c")) {
                        return true;
                    }
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::complex;
    use itertools::Itertools;

    fn complete(n: usize, i: usize) -> UniformComplex {
        UniformComplex::new(i, n, (0..n).combinations(i)).unwrap()
    }

    #[test]
    fn k5_minus_edge_contains_k4() {
        let g = complex(
            2,
            5,
            &[
                &[0, 1],
                &[0, 2],
                &[0, 3],
                &[0, 4],
                &[1, 2],
                &[1, 3],
                &[1, 4],
                &[2, 3],
                &[2, 4],
            ],
        );
        assert!(brute_force_minor(&g, &complete(4, 2)).unwrap());
    }

    #[test]
    fn identity_and_negative() {
        let t = complete(4, 3);
        assert!(brute_force_minor(&t, &t).unwrap());
        let c5 = complex(2, 5, &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[0, 4]]);
        assert!(!brute_force_minor(&c5, &complete(4, 2)).unwrap());
    }

    #[test]
    fn guard() {
        let big = complete(10, 2);
        assert!(matches!(
            brute_force_minor(&big, &complete(4, 2)),
            Err(MinorError::TooLargeForOracle { .. })
        ));
    }
}
