//! Reduced integral homology.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::chain::FaceComplex;
use super::snf::{smith_normal_form, SmithForm};
use crate::complex::UniformComplex;

/// Reduced Betti numbers and torsion coefficients, indexed by dimension.
///
/// `betti[i]` is the rank of the free part of H̃_i and `torsion[i]` lists its
/// invariant factors greater than one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub betti: Vec<usize>,
    #[serde(with = "torsion_serde")]
    pub torsion: Vec<Vec<BigInt>>,
}

impl HomologyProfile {
    pub fn is_acyclic(&self) -> bool {
        self.betti.iter().all(|&b| b == 0) && self.torsion.iter().all(Vec::is_empty)
    }

    /// True iff H̃_i vanishes for every `i` in the range (out-of-range dimensions count as zero).
    pub fn vanishes_in(&self, dims: std::ops::RangeInclusive<usize>) -> bool {
        dims.into_iter().all(|i| {
            self.betti.get(i).is_none_or(|&b| b == 0)
                && self.torsion.get(i).is_none_or(Vec::is_empty)
        })
    }

    pub fn has_torsion(&self) -> bool {
        self.torsion.iter().any(|t| !t.is_empty())
    }

    /// Homology of the `k`-sphere, padded to `len` dimensions.
    pub fn sphere(k: usize, len: usize) -> Self {
        let mut betti = vec![0; len.max(k + 1)];
        betti[k] = 1;
        HomologyProfile {
            torsion: vec![Vec::new(); betti.len()],
            betti,
        }
    }

    /// Alternating sum of reduced Betti numbers; equals χ − 1 for a nonempty complex.
    pub fn reduced_euler(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

/// Reduced homology of the face complex of `c`. Isolated vertices are not part of it.
pub fn homology(c: &UniformComplex) -> HomologyProfile {
    let mut h = homology_of(&FaceComplex::of_complex(c));
    h.betti.resize(c.d(), 0);
    h.torsion.resize(c.d(), Vec::new());
    h
}

/// Reduced homology of an arbitrary finite simplicial complex.
///
/// The empty complex is reported with all groups zero.
pub fn homology_of(fc: &FaceComplex) -> HomologyProfile {
    let top = fc.faces.len();
    if fc.is_empty() {
        return HomologyProfile {
            betti: vec![0; top],
            torsion: vec![Vec::new(); top],
        };
    }
    let forms: Vec<SmithForm> = fc
        .boundary_matrices()
        .par_iter()
        .map(|m| smith_normal_form(&m.entries))
        .collect();
    // rank[i] = rank of ∂_i : C_i -> C_{i-1}; the augmentation has rank 1.
    let mut rank = vec![1usize];
    rank.extend(forms.iter().map(|f| f.rank));
    rank.push(0);
    let mut betti = Vec::with_capacity(top);
    let mut torsion = Vec::with_capacity(top);
    for i in 0..top {
        betti.push(fc.count(i) - rank[i] - rank[i + 1]);
        torsion.push(forms.get(i).map(SmithForm::torsion).unwrap_or_default());
    }
    HomologyProfile { betti, torsion }
}

/// Invariant factors as JSON integers when they fit in a u64, decimal strings otherwise.
mod torsion_serde {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Factor {
        Small(u64),
        Big(String),
    }

    pub fn serialize<S: Serializer>(t: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Vec<Factor>> = t
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        x.to_u64()
                            .map_or_else(|| Factor::Big(x.to_string()), Factor::Small)
                    })
                    .collect()
            })
            .collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        let v: Vec<Vec<Factor>> = Vec::deserialize(d)?;
        v.into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|f| match f {
                        Factor::Small(x) => Ok(BigInt::from(x)),
                        Factor::Big(s) => s.parse().map_err(serde::de::Error::custom),
                    })
                    .collect()
            })
            .collect()
    }
}
