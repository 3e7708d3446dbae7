//! Marked S-decompositions along a d-vertex cut.

use std::collections::{BTreeMap, BTreeSet};

use super::StructureError;
use crate::complex::{FaceKey, UniformComplex, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedComponent {
    pub complex: UniformComplex,
    /// The facet over the cut vertices, in the component's labels.
    pub marker: FaceKey,
    pub marker_was_added: bool,
    /// Vertex of the parent for each local vertex.
    pub vertex_map: Vec<usize>,
    pub parent_n: usize,
}

impl MarkedComponent {
    fn marker_in_parent(&self) -> FaceKey {
        FaceKey::new(self.marker.vertices().iter().map(|&v| self.vertex_map[v])).expect("distinct")
    }
}

/// Splits `g` along the cut `s` (exactly d vertices), adding the marker facet
/// over `s` to every component that lacks it.
pub fn marked_s_decomposition(
    g: &UniformComplex,
    s: &[usize],
) -> Result<Vec<MarkedComponent>, StructureError> {
    let d = g.d();
    let cut: BTreeSet<usize> = s.iter().copied().collect();
    if cut.len() != d || s.len() != d {
        return Err(StructureError::NotACut(format!(
            "expected {d} distinct vertices, got {s:?}"
        )));
    }
    if let Some(&v) = cut.iter().find(|&&v| v >= g.vertex_count()) {
        return Err(StructureError::NotACut(format!("vertex {v} out of range")));
    }
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut rest: BTreeSet<usize> = BTreeSet::new();
    for f in g.facets() {
        let outside: Vec<usize> = f
            .vertices()
            .iter()
            .copied()
            .filter(|v| !cut.contains(v))
            .collect();
        rest.extend(outside.iter().copied());
        if let Some((&a, tail)) = outside.split_first() {
            for &b in tail {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[rb] = ra;
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in rest {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    if groups.len() < 2 {
        return Err(StructureError::NotACut(format!(
            "{s:?} leaves {} component(s)",
            groups.len()
        )));
    }
    let mut comps: Vec<Vec<usize>> = groups.into_values().collect();
    comps.sort();
    let parts = comps
        .into_iter()
        .map(|x| {
            let keep: Vec<VertexId> = cut.iter().chain(x.iter()).copied().map(VertexId).collect();
            let (sub, map) = g.induced_with_map(&keep).expect("vertices in range");
            let vertex_map: Vec<usize> = map.into_iter().map(|v| v.0).collect();
            let marker = FaceKey::new(
                cut.iter()
                    .map(|v| vertex_map.binary_search(v).expect("cut kept")),
            )
            .expect("distinct");
            let added = !sub.is_facet(&marker);
            let complex = if added {
                let names = sub.names().map(|n| n.to_vec());
                UniformComplex::from_facets_merging(
                    d,
                    sub.vertex_count(),
                    sub.facets().iter().cloned().chain([marker.clone()]),
                    names,
                )
            } else {
                sub
            };
            MarkedComponent {
                complex,
                marker,
                marker_was_added: added,
                vertex_map,
                parent_n: g.vertex_count(),
            }
        })
        .collect();
    Ok(parts)
}

/// Glues marked components back together along their common marker. The
/// marker facet is dropped only when `drop_marker` is set and every part added it.
pub fn reassemble(
    parts: &[MarkedComponent],
    drop_marker: bool,
) -> Result<UniformComplex, StructureError> {
    let first = parts
        .first()
        .ok_or_else(|| StructureError::InconsistentMarkers("no parts".into()))?;
    let marker = first.marker_in_parent();
    let d = first.complex.d();
    for (i, p) in parts.iter().enumerate() {
        if p.complex.d() != d || p.parent_n != first.parent_n {
            return Err(StructureError::InconsistentMarkers(format!(
                "part {i} has a different shape"
            )));
        }
        if p.vertex_map.len() != p.complex.vertex_count()
            || p.vertex_map.iter().any(|&v| v >= p.parent_n)
        {
            return Err(StructureError::InconsistentMarkers(format!(
                "part {i} has a bad vertex map"
            )));
        }
        if !p.complex.is_facet(&p.marker) {
            return Err(StructureError::InconsistentMarkers(format!(
                "part {i} lacks its marker facet"
            )));
        }
        if p.marker_in_parent() != marker {
            return Err(StructureError::InconsistentMarkers(format!(
                "part {i} marker {} differs from {marker}",
                p.marker_in_parent()
            )));
        }
    }
    let drop = drop_marker && parts.iter().all(|p| p.marker_was_added);
    let mut names: Vec<Option<String>> = vec![None; first.parent_n];
    let mut facets = BTreeSet::new();
    for p in parts {
        for (local, &v) in p.vertex_map.iter().enumerate() {
            names[v].get_or_insert_with(|| p.complex.vertex_name(local));
        }
        for f in p.complex.facets() {
            let up =
                FaceKey::new(f.vertices().iter().map(|&v| p.vertex_map[v])).expect("injective map");
            if !(drop && up == marker) {
                facets.insert(up);
            }
        }
    }
    let names: Option<Vec<String>> = names.into_iter().collect();
    Ok(UniformComplex::from_facets_merging(
        d,
        first.parent_n,
        facets,
        names,
    ))
}
