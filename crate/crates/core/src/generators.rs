//! Named families and Procedure-X style builds.
//!
//! A Procedure-X build adds one facet at a time. Each new facet must meet the
//! current complex in a (d−2)-ball made of some of its ridges, or in its whole
//! boundary sphere; the first facet is free.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, FaceKey, UniformComplex};
use crate::topo::{certify_manifold_piece, ManifoldKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("step {step}: facet {facet} cannot be attached ({reason})")]
    NoLegalAttachment {
        step: usize,
        facet: String,
        reason: String,
    },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// K_n^i: every i-subset of n vertices.
pub fn complete_uniform(n: usize, i: usize) -> Result<UniformComplex, GenError> {
    if i < 2 || n < i {
        return Err(GenError::BadParameters(format!(
            "K_n^i needs n >= i >= 2, got n={n}, i={i}"
        )));
    }
    Ok(UniformComplex::new(i, n, (0..n).combinations(i))?)
}

/// K_{p,q}^i: vertices `0..p` form side A and `p..p+q` side B. Facets are all
/// i-subsets of B plus every (i−1)-subset of B joined to each vertex of A.
pub fn complete_bipartite_uniform(
    p: usize,
    q: usize,
    i: usize,
) -> Result<UniformComplex, GenError> {
    if i < 2 || q < i || p < 1 {
        return Err(GenError::BadParameters(format!(
            "K_{{p,q}}^i needs q >= i >= 2 and p >= 1, got p={p}, q={q}, i={i}"
        )));
    }
    let b: Vec<usize> = (p..p + q).collect();
    let mut facets: Vec<Vec<usize>> = b.iter().copied().combinations(i).collect();
    for t in b.iter().copied().combinations(i - 1) {
        for a in 0..p {
            let mut f = vec![a];
            f.extend(&t);
            facets.push(f);
        }
    }
    let names = (1..=p)
        .map(|k| format!("a{k}"))
        .chain((1..=q).map(|k| format!("b{k}")))
        .collect();
    Ok(UniformComplex::new(i, p + q, facets)?.with_names(names)?)
}

/// The ordinary bipartite graph K_{3,3} (no triangle on either side).
pub fn plain_k33() -> UniformComplex {
    UniformComplex::new(2, 6, (0..3).cartesian_product(3..6).map(|(a, b)| [a, b]))
        .expect("valid graph")
}

/// Boundary of the d-simplex: all d-subsets of d+1 vertices, a (d−1)-sphere.
pub fn simplex_boundary(d: usize) -> Result<UniformComplex, GenError> {
    complete_uniform(d + 1, d)
}

/// Six-vertex, ten-triangle real projective plane.
pub fn rp2() -> UniformComplex {
    UniformComplex::new(
        3,
        6,
        [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 1, 5],
            [1, 2, 4],
            [2, 3, 5],
            [1, 3, 4],
            [2, 4, 5],
            [1, 3, 5],
        ],
    )
    .expect("fixed triangulation")
}

/// Boundary of the cross-polytope in dimension `d` (the octahedron at d = 3):
/// vertex pairs `{2j, 2j+1}` are antipodal.
pub fn cross_polytope_boundary(d: usize) -> Result<UniformComplex, GenError> {
    if d < 2 {
        return Err(GenError::BadParameters(format!(
            "cross-polytope needs d >= 2, got {d}"
        )));
    }
    let facets = (0..d).map(|_| 0..2).multi_cartesian_product().map(|bits| {
        bits.iter()
            .enumerate()
            .map(|(j, &b)| 2 * j + b)
            .collect_vec()
    });
    Ok(UniformComplex::new(d, 2 * d, facets)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AttachKind {
    Initial,
    Ball,
    FullBoundarySphere,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildStep {
    pub facet: FaceKey,
    pub kind: AttachKind,
    /// Ridges of the new facet already present before the step.
    pub intersection: Vec<FaceKey>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildTrace {
    pub d: usize,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub steps: Vec<BuildStep>,
}

impl BuildTrace {
    /// Complex after the first `len` steps, on the full vertex table.
    pub fn prefix(&self, len: usize) -> UniformComplex {
        let facets = self.steps[..len].iter().map(|s| s.facet.clone());
        UniformComplex::from_facets_merging(self.d, self.n, facets, None)
    }

    pub fn script(&self) -> Vec<Vec<usize>> {
        self.steps
            .iter()
            .map(|s| s.facet.vertices().to_vec())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuildInput {
    Script(Vec<Vec<usize>>),
    Seeded { seed: u64, steps: usize },
}

pub fn procedure_x_build(
    d: usize,
    input: &BuildInput,
) -> Result<(UniformComplex, BuildTrace), GenError> {
    if d < 2 {
        return Err(GenError::BadParameters(format!(
            "uniformity must be at least 2, got {d}"
        )));
    }
    match input {
        BuildInput::Script(script) => build_scripted(d, script),
        BuildInput::Seeded { seed, steps } => build_random(d, *seed, *steps),
    }
}

/// Re-runs a trace and checks that every step has the recorded kind.
pub fn replay(trace: &BuildTrace) -> Result<UniformComplex, GenError> {
    let (c, again) = build_scripted(trace.d, &trace.script())?;
    if again.steps != trace.steps {
        let step = again
            .steps
            .iter()
            .zip(&trace.steps)
            .position(|(a, b)| a != b)
            .unwrap_or(0);
        return Err(GenError::NoLegalAttachment {
            step: step + 1,
            facet: trace.steps[step].facet.to_string(),
            reason: "recorded attachment differs from replay".into(),
        });
    }
    Ok(UniformComplex::from_parts(
        c.d(),
        trace.n.max(c.vertex_count()),
        c.facets().to_vec(),
        None,
    ))
}

/// Finds an order in which the facets of `c` can be attached one at a time, if any.
pub fn attachment_order(c: &UniformComplex) -> Option<Vec<FaceKey>> {
    let d = c.d();
    let facets = c.facets();
    if facets.is_empty() {
        return Some(Vec::new());
    }
    let mut used = vec![false; facets.len()];
    let mut state = State::new(d);
    let mut order = Vec::with_capacity(facets.len());
    fn go(
        facets: &[FaceKey],
        used: &mut [bool],
        state: &mut State,
        order: &mut Vec<FaceKey>,
        budget: &mut usize,
    ) -> bool {
        if order.len() == facets.len() {
            return true;
        }
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        for i in 0..facets.len() {
            if used[i] || (!order.is_empty() && classify(state, &facets[i]).is_err()) {
                continue;
            }
            used[i] = true;
            state.insert(&facets[i]);
            order.push(facets[i].clone());
            if go(facets, used, state, order, budget) {
                return true;
            }
            order.pop();
            state.remove(&facets[i]);
            used[i] = false;
            if order.is_empty() {
                // Only the least facet is tried as a starting point.
                return false;
            }
        }
        false
    }
    let mut budget = 100_000;
    go(facets, &mut used, &mut state, &mut order, &mut budget).then_some(order)
}

/// Faces of the complex built so far, with multiplicity, for cheap insert and remove.
struct State {
    d: usize,
    faces: std::collections::BTreeMap<FaceKey, usize>,
    facets: BTreeSet<FaceKey>,
}

impl State {
    fn new(d: usize) -> Self {
        State {
            d,
            faces: Default::default(),
            facets: BTreeSet::new(),
        }
    }

    fn insert(&mut self, f: &FaceKey) {
        for k in 1..=self.d {
            for s in f.subfaces(k) {
                *self.faces.entry(s).or_insert(0) += 1;
            }
        }
        self.facets.insert(f.clone());
    }

    fn remove(&mut self, f: &FaceKey) {
        for k in 1..=self.d {
            for s in f.subfaces(k) {
                let e = self.faces.get_mut(&s).expect("present");
                *e -= 1;
                if *e == 0 {
                    self.faces.remove(&s);
                }
            }
        }
        self.facets.remove(f);
    }

    fn has_face(&self, f: &FaceKey) -> bool {
        self.faces.contains_key(f)
    }

    fn vertices(&self) -> Vec<usize> {
        self.faces
            .keys()
            .filter(|f| f.len() == 1)
            .map(|f| f.vertices()[0])
            .collect()
    }
}

/// Kind of attachment of `t` to the current state, or the reason it is illegal.
fn classify(state: &State, t: &FaceKey) -> Result<(AttachKind, Vec<FaceKey>), String> {
    if state.facets.contains(t) {
        return Err("already a facet".into());
    }
    let d = state.d;
    let present: Vec<FaceKey> = t
        .ridges()
        .map(|(_, r)| r)
        .filter(|r| state.has_face(r))
        .collect();
    // Every face of t lying in K must lie in one of the present ridges.
    for k in 1..d {
        for s in t.subfaces(k) {
            if state.has_face(&s) && !present.iter().any(|r| s.is_subset_of(r)) {
                return Err(format!(
                    "intersection contains {s} outside the shared ridges"
                ));
            }
        }
    }
    let kind = match present.len() {
        0 => return Err("meets the complex in no ridge".into()),
        k if k == d => AttachKind::FullBoundarySphere,
        _ => AttachKind::Ball,
    };
    // Certify the intersection itself.
    let local: Vec<usize> = t.vertices().to_vec();
    let relabeled = present.iter().map(|r| {
        r.vertices()
            .iter()
            .map(|v| local.binary_search(v).unwrap())
            .collect_vec()
    });
    let inter = UniformComplex::new(d - 1, d, relabeled).map_err(|e| e.to_string())?;
    let want = if kind == AttachKind::Ball {
        ManifoldKind::Ball(d - 2)
    } else {
        ManifoldKind::Sphere(d - 2)
    };
    let cert = certify_manifold_piece(&inter, want).map_err(|e| e.to_string())?;
    if !cert.is_certified() {
        return Err(format!("intersection is not a certified {want:?}"));
    }
    Ok((kind, present))
}

fn build_scripted(
    d: usize,
    script: &[Vec<usize>],
) -> Result<(UniformComplex, BuildTrace), GenError> {
    if script.is_empty() {
        return Err(GenError::BadParameters("empty script".into()));
    }
    let n = script.iter().flatten().max().map_or(0, |&m| m + 1);
    let mut state = State::new(d);
    let mut steps = Vec::with_capacity(script.len());
    for (i, raw) in script.iter().enumerate() {
        if raw.len() != d {
            return Err(ComplexError::NonUniformFacet {
                facet: raw.clone(),
                expected: d,
                got: raw.len(),
            }
            .into());
        }
        let t = FaceKey::new(raw.iter().copied())?;
        let (kind, intersection) = if i == 0 {
            (AttachKind::Initial, Vec::new())
        } else {
            classify(&state, &t).map_err(|reason| GenError::NoLegalAttachment {
                step: i + 1,
                facet: t.to_string(),
                reason,
            })?
        };
        state.insert(&t);
        steps.push(BuildStep {
            facet: t,
            kind,
            intersection,
        });
    }
    let trace = BuildTrace {
        d,
        n,
        seed: None,
        steps,
    };
    Ok((trace.prefix(trace.steps.len()), trace))
}

fn build_random(
    d: usize,
    seed: u64,
    steps: usize,
) -> Result<(UniformComplex, BuildTrace), GenError> {
    if steps == 0 {
        return Err(GenError::BadParameters("steps must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = State::new(d);
    let first = FaceKey::from_sorted((0..d).collect());
    state.insert(&first);
    let mut n = d;
    let mut trace = vec![BuildStep {
        facet: first,
        kind: AttachKind::Initial,
        intersection: Vec::new(),
    }];
    while trace.len() < steps {
        let ridges: Vec<FaceKey> = state
            .faces
            .keys()
            .filter(|f| f.len() == d - 1)
            .cloned()
            .collect();
        let vertices = state.vertices();
        let mut closing: BTreeSet<FaceKey> = BTreeSet::new();
        for r in &ridges {
            for &v in &vertices {
                if !r.contains(v) {
                    closing.insert(
                        FaceKey::new(r.vertices().iter().copied().chain([v])).expect("distinct"),
                    );
                }
            }
        }
        let closing: Vec<(FaceKey, AttachKind, Vec<FaceKey>)> = closing
            .into_iter()
            .filter_map(|t| classify(&state, &t).ok().map(|(k, i)| (t, k, i)))
            .collect();
        let pick = rng.random_range(0..ridges.len() + closing.len());
        let step = if pick < ridges.len() {
            let r = &ridges[pick];
            let t = FaceKey::new(r.vertices().iter().copied().chain([n])).expect("new vertex");
            n += 1;
            BuildStep {
                facet: t,
                kind: AttachKind::Ball,
                intersection: vec![r.clone()],
            }
        } else {
            let (t, kind, intersection) = closing[pick - ridges.len()].clone();
            BuildStep {
                facet: t,
                kind,
                intersection,
            }
        };
        state.insert(&step.facet);
        trace.push(step);
    }
    let trace = BuildTrace {
        d,
        n,
        seed: Some(seed),
        steps: trace,
    };
    Ok((trace.prefix(trace.steps.len()), trace))
}
