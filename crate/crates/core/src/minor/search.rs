//! Branch-set minor search.
//!
//! If the host's 1-skeleton component carrying a model is fully used, unused
//! vertices can always be absorbed into an adjacent branch set without breaking
//! any invariant. The search therefore enumerates, per host component, either
//! "unused" or a partition into connected parts, as restricted growth strings
//! over a BFS order. At each complete partition with exactly `|V(H)|` parts the
//! quotient hypergraph is matched against the target.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::witness::{AssignedFacet, MinorWitness};
use crate::complex::{FaceKey, UniformComplex, VertexId};

/// Hosts are limited to 64 vertices (bitset representation).
pub const MAX_HOST_VERTICES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub node_limit: u64,
    pub time_limit: Duration,
}

impl SearchBudget {
    pub fn new(node_limit: u64, time_limit: Duration) -> Self {
        SearchBudget {
            node_limit: node_limit.max(1),
            time_limit: time_limit.max(Duration::from_millis(1)),
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            node_limit: 200_000_000,
            time_limit: Duration::from_secs(120),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinorResult {
    Found(MinorWitness),
    NotFound,
    BudgetExhausted,
}

impl MinorResult {
    pub fn is_found(&self) -> bool {
        matches!(self, MinorResult::Found(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinorError {
    #[error("host is {host}-uniform but target is {target}-uniform")]
    UniformityMismatch { host: usize, target: usize },
    #[error("host has {0} vertices; the search supports at most {MAX_HOST_VERTICES}")]
    HostTooLarge(usize),
    #[error("oracle limited to at most 9 vertices or 14 facets, got {vertices} vertices and {facets} facets")]
    TooLargeForOracle { vertices: usize, facets: usize },
}

/// Search statistics reported alongside a result.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub partitions: u64,
}

pub fn has_minor(
    g: &UniformComplex,
    h: &UniformComplex,
    budget: SearchBudget,
) -> Result<MinorResult, MinorError> {
    Ok(has_minor_with_stats(g, h, budget)?.0)
}

pub fn has_minor_with_stats(
    g: &UniformComplex,
    h: &UniformComplex,
    budget: SearchBudget,
) -> Result<(MinorResult, SearchStats), MinorError> {
    if g.d() != h.d() {
        return Err(MinorError::UniformityMismatch {
            host: g.d(),
            target: h.d(),
        });
    }
    if g.vertex_count() > MAX_HOST_VERTICES {
        return Err(MinorError::HostTooLarge(g.vertex_count()));
    }
    if h.vertex_count() == 0 {
        let w = MinorWitness {
            branch_sets: Vec::new(),
            facet_assignment: Vec::new(),
        };
        return Ok((MinorResult::Found(w), SearchStats::default()));
    }
    if h.vertex_count() > g.vertex_count() || h.facet_count() > g.facet_count() {
        return Ok((MinorResult::NotFound, SearchStats::default()));
    }
    let target = Target::new(h);
    if !target.degrees_dominated_by(g) {
        return Ok((MinorResult::NotFound, SearchStats::default()));
    }
    let mut s = Searcher::new(g, target, budget);
    let outcome = s.run();
    let stats = SearchStats {
        nodes: s.nodes,
        partitions: s.partitions,
    };
    Ok((outcome, stats))
}

struct Target {
    k: usize,
    facets: Vec<FaceKey>,
    /// Vertices sorted by decreasing facet degree, then id.
    order: Vec<usize>,
    facet_degree: Vec<usize>,
    skel_degree: Vec<usize>,
}

impl Target {
    fn new(h: &UniformComplex) -> Self {
        let k = h.vertex_count();
        let mut facet_degree = vec![0; k];
        for f in h.facets() {
            for &v in f.vertices() {
                facet_degree[v] += 1;
            }
        }
        let skel_degree = (0..k).map(|v| h.neighbours(v).len()).collect::<Vec<_>>();
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| facet_degree[b].cmp(&facet_degree[a]).then(a.cmp(&b)));
        Target {
            k,
            facets: h.facets().to_vec(),
            order,
            facet_degree,
            skel_degree,
        }
    }

    /// Quick necessary condition: sorted skeleton degrees of the target are pointwise
    /// dominated by those of the host.
    fn degrees_dominated_by(&self, g: &UniformComplex) -> bool {
        let mut hd = self.skel_degree.clone();
        hd.sort_unstable_by(|a, b| b.cmp(a));
        let mut gd: Vec<usize> = (0..g.vertex_count())
            .map(|v| g.neighbours(v).len())
            .collect();
        gd.sort_unstable_by(|a, b| b.cmp(a));
        // Contraction can raise degrees, so only the count of non-isolated vertices is binding.
        let needed = hd.iter().filter(|&&x| x > 0).count();
        let available = gd.iter().filter(|&&x| x > 0).count();
        needed <= available
    }

    /// Number of target vertices with skeleton degree ≥ t, for each threshold.
    fn skel_thresholds(&self) -> Vec<(usize, usize)> {
        let distinct: BTreeSet<usize> = self
            .skel_degree
            .iter()
            .copied()
            .filter(|&x| x > 0)
            .collect();
        distinct
            .into_iter()
            .map(|t| (t, self.skel_degree.iter().filter(|&&x| x >= t).count()))
            .collect()
    }

    fn facet_thresholds(&self) -> Vec<(usize, usize)> {
        let distinct: BTreeSet<usize> = self
            .facet_degree
            .iter()
            .copied()
            .filter(|&x| x > 0)
            .collect();
        distinct
            .into_iter()
            .map(|t| (t, self.facet_degree.iter().filter(|&&x| x >= t).count()))
            .collect()
    }
}

const UNASSIGNED: i32 = -1;
const SKIPPED: i32 = -2;

enum Step {
    Continue,
    Found(MinorWitness),
    Abort,
}

struct Searcher<'a> {
    g: &'a UniformComplex,
    target: Target,
    budget: SearchBudget,
    started: Instant,
    nodes: u64,
    partitions: u64,
    adj: Vec<u64>,
    facet_masks: Vec<u64>,
    facets_of: Vec<Vec<usize>>,
    order: Vec<usize>,
    /// Position in `order` just past the component of `order[i]`.
    comp_end: Vec<usize>,
    comp_start: Vec<bool>,
    part_of: Vec<i32>,
    part_mask: Vec<u64>,
    /// Position in `order` at which each part was opened.
    part_origin: Vec<usize>,
    unassigned: u64,
    skel_thresholds: Vec<(usize, usize)>,
    facet_thresholds: Vec<(usize, usize)>,
}

impl<'a> Searcher<'a> {
    fn new(g: &'a UniformComplex, target: Target, budget: SearchBudget) -> Self {
        let n = g.vertex_count();
        let mut adj = vec![0u64; n];
        let mut facets_of = vec![Vec::new(); n];
        let mut facet_masks = Vec::with_capacity(g.facet_count());
        for (i, f) in g.facets().iter().enumerate() {
            let mut m = 0u64;
            for &v in f.vertices() {
                m |= 1 << v;
                facets_of[v].push(i);
            }
            for &v in f.vertices() {
                adj[v] |= m & !(1 << v);
            }
            facet_masks.push(m);
        }
        // Components in order of smallest vertex; BFS within each from that vertex.
        let mut order = Vec::with_capacity(n);
        let mut comp_end = vec![0; n];
        let mut comp_start = vec![false; n];
        let mut seen = 0u64;
        for root in 0..n {
            if seen & (1 << root) != 0 {
                continue;
            }
            let begin = order.len();
            seen |= 1 << root;
            order.push(root);
            let mut head = begin;
            while head < order.len() {
                let x = order[head];
                head += 1;
                let mut nb = adj[x] & !seen;
                while nb != 0 {
                    let y = nb.trailing_zeros() as usize;
                    nb &= nb - 1;
                    seen |= 1 << y;
                    order.push(y);
                }
            }
            let end = order.len();
            comp_start[begin] = true;
            for slot in comp_end.iter_mut().take(end).skip(begin) {
                *slot = end;
            }
        }
        let skel_thresholds = target.skel_thresholds();
        let facet_thresholds = target.facet_thresholds();
        let unassigned = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Searcher {
            g,
            target,
            budget,
            started: Instant::now(),
            nodes: 0,
            partitions: 0,
            adj,
            facet_masks,
            facets_of,
            order,
            comp_end,
            comp_start,
            part_of: vec![UNASSIGNED; n],
            part_mask: Vec::new(),
            part_origin: Vec::new(),
            unassigned,
            skel_thresholds,
            facet_thresholds,
        }
    }

    fn run(&mut self) -> MinorResult {
        match self.visit(0) {
            Step::Found(w) => MinorResult::Found(w),
            Step::Continue => MinorResult::NotFound,
            Step::Abort => MinorResult::BudgetExhausted,
        }
    }

    fn out_of_budget(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget.node_limit {
            return true;
        }
        self.nodes.is_multiple_of(4096) && self.started.elapsed() > self.budget.time_limit
    }

    fn visit(&mut self, pos: usize) -> Step {
        if self.out_of_budget() {
            return Step::Abort;
        }
        if pos == self.order.len() {
            return if self.part_mask.len() == self.target.k {
                self.leaf()
            } else {
                Step::Continue
            };
        }
        let v = self.order[pos];
        let remaining = self.order.len() - pos;
        let open_needed = self.target.k - self.part_mask.len();
        if open_needed > remaining {
            return Step::Continue;
        }
        let comp_begin_pos = self.component_begin(pos);
        // Join an existing part opened within this component.
        for p in 0..self.part_mask.len() {
            if self.part_origin[p] < comp_begin_pos {
                continue;
            }
            self.assign(v, p as i32);
            let step = if self.feasible() {
                self.visit(pos + 1)
            } else {
                Step::Continue
            };
            self.unassign(v, p);
            if !matches!(step, Step::Continue) {
                return step;
            }
        }
        // Open a new part.
        if self.part_mask.len() < self.target.k {
            let p = self.part_mask.len();
            self.part_mask.push(0);
            self.part_origin.push(pos);
            self.assign(v, p as i32);
            let step = if self.feasible() {
                self.visit(pos + 1)
            } else {
                Step::Continue
            };
            self.unassign(v, p);
            self.part_mask.pop();
            self.part_origin.pop();
            if !matches!(step, Step::Continue) {
                return step;
            }
        }
        // Leave the whole component unused.
        if self.comp_start[pos] {
            let end = self.comp_end[pos];
            for i in pos..end {
                let u = self.order[i];
                self.part_of[u] = SKIPPED;
                self.unassigned &= !(1 << u);
            }
            let step = self.visit(end);
            for i in pos..end {
                let u = self.order[i];
                self.part_of[u] = UNASSIGNED;
                self.unassigned |= 1 << u;
            }
            return step;
        }
        Step::Continue
    }

    fn component_begin(&self, pos: usize) -> usize {
        let mut p = pos;
        while !self.comp_start[p] {
            p -= 1;
        }
        p
    }

    fn assign(&mut self, v: usize, p: i32) {
        self.part_of[v] = p;
        self.part_mask[p as usize] |= 1 << v;
        self.unassigned &= !(1 << v);
    }

    fn unassign(&mut self, v: usize, p: usize) {
        self.part_of[v] = UNASSIGNED;
        self.part_mask[p] &= !(1 << v);
        self.unassigned |= 1 << v;
    }

    fn pieces(&self, mask: u64) -> Vec<u64> {
        let mut rest = mask;
        let mut out = Vec::new();
        while rest != 0 {
            let start = rest & rest.wrapping_neg();
            let mut piece = start;
            let mut frontier = start;
            while frontier != 0 {
                let x = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let nb = self.adj[x] & mask & !piece;
                piece |= nb;
                frontier |= nb;
            }
            rest &= !piece;
            out.push(piece);
        }
        out
    }

    fn neighbourhood(&self, mask: u64) -> u64 {
        let mut m = mask;
        let mut out = 0u64;
        while m != 0 {
            let x = m.trailing_zeros() as usize;
            m &= m - 1;
            out |= self.adj[x];
        }
        out & !mask
    }

    /// Connectivity and degree-threshold pruning on the current partial partition.
    fn feasible(&self) -> bool {
        let mut closed_skel: Vec<usize> = Vec::new();
        let mut closed_facet: Vec<usize> = Vec::new();
        let mut open = self.target.k - self.part_mask.len();
        for (p, &mask) in self.part_mask.iter().enumerate() {
            let pieces = self.pieces(mask);
            if pieces.len() > 1 {
                if pieces
                    .iter()
                    .any(|&piece| self.neighbourhood(piece) & self.unassigned == 0)
                {
                    return false;
                }
                open += 1;
                continue;
            }
            let nb = self.neighbourhood(mask);
            if nb & self.unassigned != 0 {
                open += 1;
                continue;
            }
            // Closed: the part is final.
            let mut adj_parts = 0u64;
            let mut m = nb;
            while m != 0 {
                let x = m.trailing_zeros() as usize;
                m &= m - 1;
                adj_parts |= 1 << self.part_of[x];
            }
            closed_skel.push(adj_parts.count_ones() as usize);
            closed_facet.push(self.quotient_facet_degree(p));
        }
        if closed_skel.is_empty() {
            return true;
        }
        let ok = |closed: &[usize], thresholds: &[(usize, usize)]| {
            thresholds
                .iter()
                .all(|&(t, need)| closed.iter().filter(|&&x| x >= t).count() + open >= need)
        };
        ok(&closed_skel, &self.skel_thresholds) && ok(&closed_facet, &self.facet_thresholds)
    }

    /// Distinct quotient facets through part `p`; all involved vertices are assigned.
    fn quotient_facet_degree(&self, p: usize) -> usize {
        let mut seen: BTreeSet<u64> = BTreeSet::new();
        let mut m = self.part_mask[p];
        while m != 0 {
            let x = m.trailing_zeros() as usize;
            m &= m - 1;
            for &fi in &self.facets_of[x] {
                if let Some(key) = self.quotient_key(fi) {
                    seen.insert(key);
                }
            }
        }
        seen.len()
    }

    /// Bitmask of the parts hit by facet `fi`, if it meets `d` distinct assigned parts.
    fn quotient_key(&self, fi: usize) -> Option<u64> {
        let mut key = 0u64;
        let mut m = self.facet_masks[fi];
        let mut count = 0;
        while m != 0 {
            let x = m.trailing_zeros() as usize;
            m &= m - 1;
            let p = self.part_of[x];
            if p < 0 {
                return None;
            }
            key |= 1 << p;
            count += 1;
        }
        (key.count_ones() as usize == count).then_some(key)
    }

    fn leaf(&mut self) -> Step {
        self.partitions += 1;
        if self.part_mask.iter().any(|&m| self.pieces(m).len() != 1) {
            return Step::Continue;
        }
        // Quotient facets keyed by part bitmask, with the first host facet realizing each.
        let mut quotient: BTreeMap<u64, usize> = BTreeMap::new();
        for fi in 0..self.facet_masks.len() {
            if let Some(key) = self.quotient_key(fi) {
                quotient.entry(key).or_insert(fi);
            }
        }
        if quotient.len() < self.target.facets.len() {
            return Step::Continue;
        }
        let k = self.target.k;
        let mut qdeg = vec![0usize; k];
        for key in quotient.keys() {
            let mut m = *key;
            while m != 0 {
                qdeg[m.trailing_zeros() as usize] += 1;
                m &= m - 1;
            }
        }
        let mut phi = vec![usize::MAX; k];
        let mut used = 0u64;
        if self.embed(0, &mut phi, &mut used, &quotient, &qdeg) {
            return Step::Found(self.witness(&phi, &quotient));
        }
        Step::Continue
    }

    /// Backtracking bijection from target vertices to parts preserving facets.
    fn embed(
        &self,
        idx: usize,
        phi: &mut [usize],
        used: &mut u64,
        quotient: &BTreeMap<u64, usize>,
        qdeg: &[usize],
    ) -> bool {
        if idx == self.target.k {
            return true;
        }
        let u = self.target.order[idx];
        for p in 0..self.target.k {
            if *used & (1 << p) != 0 || qdeg[p] < self.target.facet_degree[u] {
                continue;
            }
            phi[u] = p;
            *used |= 1 << p;
            let consistent = self.target.facets.iter().all(|f| {
                if !f.contains(u) || f.vertices().iter().any(|&x| phi[x] == usize::MAX) {
                    return true;
                }
                let key = f.vertices().iter().fold(0u64, |acc, &x| acc | 1 << phi[x]);
                quotient.contains_key(&key)
            });
            if consistent && self.embed(idx + 1, phi, used, quotient, qdeg) {
                return true;
            }
            *used &= !(1 << p);
            phi[u] = usize::MAX;
        }
        false
    }

    fn witness(&self, phi: &[usize], quotient: &BTreeMap<u64, usize>) -> MinorWitness {
        let branch_sets = phi
            .iter()
            .map(|&p| {
                let mut m = self.part_mask[p];
                let mut set = Vec::new();
                while m != 0 {
                    set.push(VertexId(m.trailing_zeros() as usize));
                    m &= m - 1;
                }
                set
            })
            .collect();
        let facet_assignment = self
            .target
            .facets
            .iter()
            .map(|f| {
                let key = f.vertices().iter().fold(0u64, |acc, &x| acc | 1 << phi[x]);
                AssignedFacet {
                    target: f.clone(),
                    host: self.g.facets()[quotient[&key]].clone(),
                }
            })
            .collect();
        MinorWitness {
            branch_sets,
            facet_assignment,
        }
    }
}
