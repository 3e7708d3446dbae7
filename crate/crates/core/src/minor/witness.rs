use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::complex::{FaceKey, UniformComplex, VertexId};

/// One entry of a witness' facet assignment: a target facet and the host facet realizing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignedFacet {
    pub target: FaceKey,
    pub host: FaceKey,
}

/// Branch-set model of a minor `H` of `G`.
///
/// `branch_sets[u]` is the set of host vertices contracted onto target vertex `u`;
/// every target facet is realized by a host facet meeting its branch sets one vertex each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorWitness {
    pub branch_sets: Vec<Vec<VertexId>>,
    pub facet_assignment: Vec<AssignedFacet>,
}

/// Re-checks every witness invariant against the host `g` and target `h`.
pub fn verify_witness(g: &UniformComplex, h: &UniformComplex, w: &MinorWitness) -> bool {
    witness_violation(g, h, w).is_none()
}

/// Like [`verify_witness`] but names the first violated invariant.
pub fn witness_violation(
    g: &UniformComplex,
    h: &UniformComplex,
    w: &MinorWitness,
) -> Option<String> {
    if g.d() != h.d() {
        return Some(format!(
            "uniformity mismatch: host {} vs target {}",
            g.d(),
            h.d()
        ));
    }
    if w.branch_sets.len() != h.vertex_count() {
        return Some(format!(
            "{} branch sets for {} target vertices",
            w.branch_sets.len(),
            h.vertex_count()
        ));
    }
    let mut owner: Vec<Option<usize>> = vec![None; g.vertex_count()];
    for (u, set) in w.branch_sets.iter().enumerate() {
        if set.is_empty() {
            return Some(format!("branch set of target vertex {u} is empty"));
        }
        for v in set {
            if v.0 >= g.vertex_count() {
                return Some(format!("host vertex {v} out of range"));
            }
            if let Some(other) = owner[v.0] {
                return Some(format!(
                    "host vertex {v} lies in branch sets {other} and {u}"
                ));
            }
            owner[v.0] = Some(u);
        }
    }
    let adj = skeleton_adjacency(g);
    for (u, set) in w.branch_sets.iter().enumerate() {
        if !connected_within(&adj, set, &owner, u) {
            return Some(format!("branch set of target vertex {u} is not connected"));
        }
    }
    let mut covered = BTreeSet::new();
    for a in &w.facet_assignment {
        if !h.is_facet(&a.target) {
            return Some(format!("{} is not a target facet", a.target));
        }
        if !covered.insert(a.target.clone()) {
            return Some(format!("target facet {} assigned twice", a.target));
        }
        if !g.is_facet(&a.host) {
            return Some(format!("{} is not a host facet", a.host));
        }
        let owners: BTreeSet<Option<usize>> = a.host.vertices().iter().map(|&v| owner[v]).collect();
        let wanted: BTreeSet<Option<usize>> =
            a.target.vertices().iter().map(|&u| Some(u)).collect();
        if owners != wanted {
            return Some(format!(
                "host facet {} does not meet the branch sets of {} one vertex each",
                a.host, a.target
            ));
        }
    }
    if covered.len() != h.facet_count() {
        return Some(format!(
            "{} of {} target facets assigned",
            covered.len(),
            h.facet_count()
        ));
    }
    None
}

fn skeleton_adjacency(g: &UniformComplex) -> Vec<Vec<usize>> {
    let mut adj = vec![BTreeSet::new(); g.vertex_count()];
    for f in g.facets() {
        for &a in f.vertices() {
            for &b in f.vertices() {
                if a != b {
                    adj[a].insert(b);
                }
            }
        }
    }
    adj.into_iter().map(|s| s.into_iter().collect()).collect()
}

fn connected_within(
    adj: &[Vec<usize>],
    set: &[VertexId],
    owner: &[Option<usize>],
    u: usize,
) -> bool {
    let start = set[0].0;
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if owner[y] == Some(u) && seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen.len() == set.len()
}
