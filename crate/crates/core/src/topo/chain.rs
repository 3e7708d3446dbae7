//! Simplicial chain complexes and boundary matrices.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::complex::{FaceKey, UniformComplex};

/// Integer boundary map from `dim`-faces (columns) to `(dim-1)`-faces (rows).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryMatrix {
    pub dim: usize,
    pub rows: Vec<FaceKey>,
    pub cols: Vec<FaceKey>,
    pub entries: Vec<Vec<i64>>,
}

impl BoundaryMatrix {
    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.cols.len())
    }

    /// Product `self * rhs` as a dense matrix; `rhs` must map into `self`'s columns.
    pub fn compose(&self, rhs: &BoundaryMatrix) -> Vec<Vec<i64>> {
        let (r, k) = self.shape();
        let c = rhs.cols.len();
        let mut out = vec![vec![0i64; c]; r];
        for (i, row) in out.iter_mut().enumerate() {
            for (m, &a) in self.entries[i].iter().enumerate().take(k) {
                if a == 0 {
                    continue;
                }
                for (j, slot) in row.iter_mut().enumerate() {
                    *slot += a * rhs.entries[m][j];
                }
            }
        }
        out
    }
}

/// The faces of a finite simplicial complex, grouped by dimension.
///
/// Unlike [`UniformComplex`] this need not be pure; it is used for projections
/// and other intersections.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FaceComplex {
    pub faces: Vec<Vec<FaceKey>>,
}

impl FaceComplex {
    /// Downward closure of the given faces.
    pub fn closure<I: IntoIterator<Item = FaceKey>>(generators: I) -> Self {
        let mut by_dim: BTreeMap<usize, BTreeSet<FaceKey>> = BTreeMap::new();
        for g in generators {
            for k in 1..=g.len() {
                for s in g.subfaces(k) {
                    by_dim.entry(k - 1).or_default().insert(s);
                }
            }
        }
        let top = by_dim.keys().next_back().map_or(0, |&k| k + 1);
        let faces = (0..top)
            .map(|i| {
                by_dim
                    .remove(&i)
                    .map(|s| s.into_iter().collect())
                    .unwrap_or_default()
            })
            .collect();
        FaceComplex { faces }
    }

    pub fn of_complex(c: &UniformComplex) -> Self {
        let faces = (0..c.d()).map(|i| c.faces_unchecked(i).to_vec()).collect();
        FaceComplex { faces }
    }

    pub fn is_empty(&self) -> bool {
        self.faces.first().is_none_or(Vec::is_empty)
    }

    /// Dimension of the top faces, or `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.faces.iter().rposition(|f| !f.is_empty())
    }

    pub fn count(&self, i: usize) -> usize {
        self.faces.get(i).map_or(0, Vec::len)
    }

    pub fn contains(&self, f: &FaceKey) -> bool {
        self.faces
            .get(f.dim())
            .is_some_and(|fs| fs.binary_search(f).is_ok())
    }

    /// Faces not contained in any larger face.
    pub fn maximal_faces(&self) -> Vec<FaceKey> {
        let mut out = Vec::new();
        for (i, layer) in self.faces.iter().enumerate() {
            let above: BTreeSet<FaceKey> = self
                .faces
                .get(i + 1)
                .map(|up| up.iter().flat_map(|f| f.subfaces(i + 1)).collect())
                .unwrap_or_default();
            out.extend(layer.iter().filter(|f| !above.contains(*f)).cloned());
        }
        out
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.faces
            .first()
            .map(|v| v.iter().map(|f| f.vertices()[0]).collect())
            .unwrap_or_default()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(i, f)| {
                if i % 2 == 0 {
                    f.len() as i64
                } else {
                    -(f.len() as i64)
                }
            })
            .sum()
    }

    pub fn boundary_matrices(&self) -> Vec<BoundaryMatrix> {
        (1..self.faces.len())
            .map(|i| boundary_between(i, &self.faces[i - 1], &self.faces[i]))
            .collect()
    }
}

fn boundary_between(dim: usize, lower: &[FaceKey], upper: &[FaceKey]) -> BoundaryMatrix {
    let index: BTreeMap<&FaceKey, usize> = lower.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut entries = vec![vec![0i64; upper.len()]; lower.len()];
    for (j, f) in upper.iter().enumerate() {
        for (k, r) in f.ridges() {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            entries[index[&r]][j] = sign;
        }
    }
    BoundaryMatrix {
        dim,
        rows: lower.to_vec(),
        cols: upper.to_vec(),
        entries,
    }
}

/// Boundary maps ∂_1 .. ∂_{d-1} of the face complex of `c`.
pub fn boundary_matrices(c: &UniformComplex) -> Vec<BoundaryMatrix> {
    FaceComplex::of_complex(c).boundary_matrices()
}
