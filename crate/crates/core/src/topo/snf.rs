//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Nonzero invariant factors `d_1 | d_2 | ...` (all positive) and their count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// Factors greater than one: the torsion coefficients of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors
            .iter()
            .filter(|f| !f.is_one())
            .cloned()
            .collect()
    }
}

/// Smith normal form of a dense integer matrix.
///
/// Elimination pivots on an entry of least absolute value and repeats until
/// the pivot row and column are clear, so intermediate entries stay small in
/// practice; arithmetic is arbitrary precision regardless.
pub fn smith_normal_form(m: &[Vec<i64>]) -> SmithForm {
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag: Vec<BigInt> = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = min_entry(&a, t) else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut dirty = false;
            // Clear column t below the pivot.
            for r in t + 1..rows {
                if a[r][t].is_zero() {
                    continue;
                }
                let q = a[r][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    let (head, tail) = a.split_at_mut(r);
                    let pivot_row = &head[t];
                    for (x, p) in tail[0][t..].iter_mut().zip(&pivot_row[t..]) {
                        if !p.is_zero() {
                            *x -= &q * p;
                        }
                    }
                }
                if !a[r][t].is_zero() {
                    dirty = true;
                }
            }
            // Clear row t right of the pivot.
            for c in t + 1..cols {
                if a[t][c].is_zero() {
                    continue;
                }
                let q = a[t][c].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for row in a.iter_mut().skip(t) {
                        if !row[t].is_zero() {
                            let delta = &q * &row[t];
                            row[c] -= delta;
                        }
                    }
                }
                if !a[t][c].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // A remainder smaller than the pivot exists; move it into place.
            let (pr, pc) = min_in_cross(&a, t);
            a.swap(t, pr);
            for row in a.iter_mut() {
                row.swap(t, pc);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    normalize(diag)
}

fn min_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (r, row) in a.iter().enumerate().skip(t) {
        for (c, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(br, bc)| x.abs() < a[br][bc].abs()) {
                best = Some((r, c));
                if x.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

/// Least nonzero entry in row `t` or column `t` (from `t` onward).
fn min_in_cross(a: &[Vec<BigInt>], t: usize) -> (usize, usize) {
    let mut best = (t, t);
    for (r, row) in a.iter().enumerate().skip(t) {
        if !row[t].is_zero() && row[t].abs() < a[best.0][best.1].abs() {
            best = (r, t);
        }
    }
    for c in t..a[t].len() {
        if !a[t][c].is_zero() && a[t][c].abs() < a[best.0][best.1].abs() {
            best = (t, c);
        }
    }
    best
}

/// Turns a diagonal into a divisibility chain: diag(a, b) ~ diag(gcd, lcm).
fn normalize(mut diag: Vec<BigInt>) -> SmithForm {
    let k = diag.len();
    for i in 0..k {
        for j in i + 1..k {
            let g = diag[i].gcd(&diag[j]);
            if g != diag[i] {
                let l = diag[i].lcm(&diag[j]);
                diag[i] = g;
                diag[j] = l;
            }
        }
    }
    SmithForm {
        rank: k,
        factors: diag,
    }
}
