//! 1-skeleton graphs and vertex connectivity.

use std::collections::VecDeque;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::UniformComplex;

pub const MAX_CUT_ENUMERATION_VERTICES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {0} vertices; at least 2 are needed")]
    TooSmall(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("cut enumeration limited to {MAX_CUT_ENUMERATION_VERTICES} vertices, got {0}")]
    TooLargeForEnumeration(usize),
}

/// Simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkeletonGraph {
    adj: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCut {
    pub vertices: Vec<usize>,
    pub separated_component_sizes: Vec<usize>,
}

impl SkeletonGraph {
    /// Builds a graph from an edge list; loops are ignored and parallel edges merged.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        SkeletonGraph { adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges `(a, b)` with `a < b` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.adj.iter().all(|l| l.len() + 1 == n)
    }

    /// Identifies `b` into `a`; vertices above `b` shift down by one.
    pub fn contract_edge(&self, a: usize, b: usize) -> SkeletonGraph {
        let (keep, gone) = (a.min(b), a.max(b));
        let map = |v: usize| match v.cmp(&gone) {
            std::cmp::Ordering::Less => v,
            std::cmp::Ordering::Equal => keep,
            std::cmp::Ordering::Greater => v - 1,
        };
        let edges = self.edges().into_iter().map(|(x, y)| (map(x), map(y)));
        SkeletonGraph::from_edges(self.vertex_count() - 1, edges)
    }

    /// Sizes of the components left after deleting `removed`, largest first.
    pub fn component_sizes_without(&self, removed: &[usize]) -> Vec<usize> {
        let n = self.vertex_count();
        let mut gone = vec![false; n];
        for &v in removed {
            gone[v] = true;
        }
        let mut sizes = Vec::new();
        for s in 0..n {
            if gone[s] {
                continue;
            }
            gone[s] = true;
            let mut size = 0;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                size += 1;
                for &y in &self.adj[x] {
                    if !gone[y] {
                        gone[y] = true;
                        stack.push(y);
                    }
                }
            }
            sizes.push(size);
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    pub fn is_connected(&self) -> bool {
        self.component_sizes_without(&[]).len() <= 1
    }
}

/// Graph whose edges are the 1-faces of `c`, on the full vertex table.
pub fn one_skeleton(c: &UniformComplex) -> SkeletonGraph {
    let edges = if c.d() >= 2 {
        c.faces_unchecked(1)
            .iter()
            .map(|e| (e.vertices()[0], e.vertices()[1]))
            .collect_vec()
    } else {
        Vec::new()
    };
    SkeletonGraph::from_edges(c.vertex_count(), edges)
}

/// Exact vertex connectivity with a minimum separating set.
///
/// Complete graphs have κ = n − 1 and no cut. Otherwise local connectivities
/// κ(v_i, v_j) are computed by unit-capacity max-flow for `i ≤ κ` (Even's
/// reduction), which suffices because some vertex among the first κ + 1
/// avoids any minimum cut.
pub fn vertex_connectivity(g: &SkeletonGraph) -> Result<(usize, Option<VertexCut>), GraphError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(GraphError::TooSmall(n));
    }
    if g.is_complete() {
        return Ok((n - 1, None));
    }
    let mut best = n - 1;
    let mut best_cut: Option<Vec<usize>> = None;
    let mut i = 0;
    while i <= best && i < n {
        for j in i + 1..n {
            if g.has_edge(i, j) {
                continue;
            }
            if let Some(cut) = min_separator(g, i, j, best) {
                if best_cut.is_none() || cut.len() < best {
                    best = cut.len();
                    best_cut = Some(cut);
                }
            }
        }
        i += 1;
    }
    let cut = best_cut.expect("non-complete graph has a non-adjacent pair");
    let sizes = g.component_sizes_without(&cut);
    Ok((
        best,
        Some(VertexCut {
            vertices: cut,
            separated_component_sizes: sizes,
        }),
    ))
}

/// Minimum s–t vertex separator for non-adjacent `s`, `t`, if its size is at most `limit`.
fn min_separator(g: &SkeletonGraph, s: usize, t: usize, limit: usize) -> Option<Vec<usize>> {
    // Node v splits into v_in = 2v and v_out = 2v + 1.
    let n = g.vertex_count();
    let mut net = FlowNet::new(2 * n);
    for v in 0..n {
        let cap = if v == s || v == t { n as u32 } else { 1 };
        net.add(2 * v, 2 * v + 1, cap);
        for &w in g.neighbours(v) {
            net.add(2 * v + 1, 2 * w, n as u32);
        }
    }
    let (src, sink) = (2 * s + 1, 2 * t);
    let mut flow = 0;
    while flow <= limit && net.augment(src, sink) {
        flow += 1;
    }
    if flow > limit {
        return None;
    }
    let reach = net.reachable(src);
    Some(
        (0..n)
            .filter(|&v| reach[2 * v] && !reach[2 * v + 1])
            .collect(),
    )
}

struct FlowNet {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet {
            head: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add(&mut self, a: usize, b: usize, c: u32) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut prev: Vec<Option<usize>> = vec![None; self.head.len()];
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &e in &self.head[x] {
                let y = self.to[e];
                if self.cap[e] > 0 && !seen[y] {
                    seen[y] = true;
                    prev[y] = Some(e);
                    if y == t {
                        let mut v = t;
                        while let Some(e) = prev[v] {
                            self.cap[e] -= 1;
                            self.cap[e ^ 1] += 1;
                            v = self.to[e ^ 1];
                        }
                        return true;
                    }
                    queue.push_back(y);
                }
            }
        }
        false
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &e in &self.head[x] {
                if self.cap[e] > 0 && !seen[self.to[e]] {
                    seen[self.to[e]] = true;
                    stack.push(self.to[e]);
                }
            }
        }
        seen
    }
}

/// `n > k` and κ ≥ k.
pub fn is_k_connected(g: &SkeletonGraph, k: usize) -> bool {
    let n = g.vertex_count();
    if n <= k {
        return false;
    }
    if n < 2 {
        return true;
    }
    vertex_connectivity(g)
        .map(|(kappa, _)| kappa >= k)
        .unwrap_or(false)
}

/// First edge in lexicographic order whose contraction leaves the graph k-connected.
pub fn contractible_edge(
    g: &SkeletonGraph,
    k: usize,
) -> Result<Option<(usize, usize)>, GraphError> {
    if !is_k_connected(g, k) {
        return Err(GraphError::PreconditionViolated(format!(
            "graph is not {k}-connected"
        )));
    }
    Ok(g.edges()
        .into_par_iter()
        .find_first(|&(a, b)| is_k_connected(&g.contract_edge(a, b), k)))
}

/// Every vertex set of the given size whose removal disconnects the graph, in lexicographic order.
pub fn enumerate_cuts(g: &SkeletonGraph, size: usize) -> Result<Vec<VertexCut>, GraphError> {
    let n = g.vertex_count();
    if n > MAX_CUT_ENUMERATION_VERTICES {
        return Err(GraphError::TooLargeForEnumeration(n));
    }
    if size + 2 > n {
        return Err(GraphError::PreconditionViolated(format!(
            "cut size {size} exceeds n - 2 = {}",
            n as i64 - 2
        )));
    }
    Ok((0..n)
        .combinations(size)
        .filter_map(|s| {
            let sizes = g.component_sizes_without(&s);
            (sizes.len() > 1).then_some(VertexCut {
                vertices: s,
                separated_component_sizes: sizes,
            })
        })
        .collect())
}
