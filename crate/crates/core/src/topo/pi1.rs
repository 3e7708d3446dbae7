//! Fundamental group heuristic via edge-path presentations.
//!
//! Generators are the 1-skeleton edges outside a BFS spanning tree; each
//! triangle contributes one relator. Nonzero H_1 proves the group nontrivial.
//! Otherwise Tietze moves (free and cyclic reduction, deleting a generator that
//! occurs exactly once in some relator) are applied greedily until the
//! presentation is empty or the move budget runs out.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::homology::homology;
use super::TopoError;
use crate::complex::{FaceKey, UniformComplex};

pub const DEFAULT_TIETZE_BUDGET: usize = 10_000;

/// Longest relator the simplifier will create by substitution.
const MAX_RELATOR_LEN: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pi1Status {
    Trivial,
    Nontrivial,
    Unknown,
}

pub fn fundamental_group_status(c: &UniformComplex) -> Result<Pi1Status, TopoError> {
    fundamental_group_status_with_budget(c, DEFAULT_TIETZE_BUDGET)
}

pub fn fundamental_group_status_with_budget(
    c: &UniformComplex,
    budget: usize,
) -> Result<Pi1Status, TopoError> {
    if !c.is_connected() {
        return Err(TopoError::Disconnected);
    }
    let h = homology(c);
    if h.betti.get(1).is_some_and(|&b| b > 0) || h.torsion.get(1).is_some_and(|t| !t.is_empty()) {
        return Ok(Pi1Status::Nontrivial);
    }
    let mut p = Presentation::of(c);
    Ok(if p.simplify(budget) {
        Pi1Status::Trivial
    } else {
        Pi1Status::Unknown
    })
}

/// Group presentation with generators `0..gens`; a letter is `±(g + 1)`.
#[derive(Clone, Debug)]
pub(crate) struct Presentation {
    pub(crate) alive: Vec<bool>,
    pub(crate) relators: Vec<Vec<i32>>,
}

impl Presentation {
    pub(crate) fn of(c: &UniformComplex) -> Self {
        let edges: Vec<FaceKey> = if c.d() >= 2 {
            c.faces_unchecked(1).to_vec()
        } else {
            Vec::new()
        };
        let n = c.vertex_count();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in &edges {
            let (a, b) = (e.vertices()[0], e.vertices()[1]);
            adj[a].push(b);
            adj[b].push(a);
        }
        // BFS tree from the least support vertex.
        let mut in_tree: BTreeMap<(usize, usize), bool> = BTreeMap::new();
        let mut seen = vec![false; n];
        if let Some(&root) = c.support().iter().next() {
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        in_tree.insert((x.min(y), x.max(y)), true);
                        queue.push_back(y);
                    }
                }
            }
        }
        let mut gen_of: BTreeMap<(usize, usize), i32> = BTreeMap::new();
        for e in &edges {
            let key = (e.vertices()[0], e.vertices()[1]);
            if !in_tree.contains_key(&key) {
                let g = gen_of.len() as i32 + 1;
                gen_of.insert(key, g);
            }
        }
        // Oriented edge a -> b as a letter (or nothing for tree edges).
        let letter = |a: usize, b: usize| -> Option<i32> {
            let g = *gen_of.get(&(a.min(b), a.max(b)))?;
            Some(if a < b { g } else { -g })
        };
        let mut relators = Vec::new();
        if c.d() >= 3 {
            for t in c.faces_unchecked(2) {
                let [a, b, cc] = [t.vertices()[0], t.vertices()[1], t.vertices()[2]];
                let w: Vec<i32> = [letter(a, b), letter(b, cc), letter(cc, a)]
                    .into_iter()
                    .flatten()
                    .collect();
                relators.push(w);
            }
        }
        Presentation {
            alive: vec![true; gen_of.len()],
            relators,
        }
    }

    pub(crate) fn generator_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    /// Returns true when every generator has been eliminated.
    pub(crate) fn simplify(&mut self, budget: usize) -> bool {
        let mut moves = 0usize;
        loop {
            for r in &mut self.relators {
                reduce(r);
            }
            self.relators.retain(|r| !r.is_empty());
            self.relators.sort_by_key(Vec::len);
            self.relators.dedup();
            if self.generator_count() == 0 {
                return true;
            }
            if moves >= budget {
                return false;
            }
            // Shortest relator containing a generator exactly once.
            let mut choice = None;
            'outer: for (ri, r) in self.relators.iter().enumerate() {
                let mut counts: BTreeMap<i32, usize> = BTreeMap::new();
                for &x in r {
                    *counts.entry(x.abs()).or_default() += 1;
                }
                for (&g, &k) in &counts {
                    if k == 1 {
                        choice = Some((ri, g));
                        break 'outer;
                    }
                }
            }
            let Some((ri, g)) = choice else { return false };
            let r = self.relators.remove(ri);
            let pos = r
                .iter()
                .position(|&x| x.abs() == g)
                .expect("chosen generator occurs");
            // r = u x v = 1  ⇒  x = u⁻¹ v⁻¹ (for x = g), or x⁻¹ = u⁻¹ v⁻¹.
            let (u, v) = (&r[..pos], &r[pos + 1..]);
            let mut value: Vec<i32> = u
                .iter()
                .rev()
                .map(|x| -x)
                .chain(v.iter().rev().map(|x| -x))
                .collect();
            if r[pos] < 0 {
                value = value.iter().rev().map(|x| -x).collect();
            }
            let inverse: Vec<i32> = value.iter().rev().map(|x| -x).collect();
            for other in &mut self.relators {
                if !other.iter().any(|x| x.abs() == g) {
                    continue;
                }
                let mut out = Vec::with_capacity(other.len());
                for &x in other.iter() {
                    if x == g {
                        out.extend_from_slice(&value);
                    } else if x == -g {
                        out.extend_from_slice(&inverse);
                    } else {
                        out.push(x);
                    }
                }
                if out.len() > MAX_RELATOR_LEN {
                    return false;
                }
                *other = out;
            }
            self.alive[(g - 1) as usize] = false;
            moves += 1;
        }
    }
}

/// Free and cyclic reduction in place.
fn reduce(w: &mut Vec<i32>) {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for &x in w.iter() {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    let mut lo = 0;
    let mut hi = out.len();
    while hi - lo >= 2 && out[lo] == -out[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    *w = out[lo..hi].to_vec();
}
