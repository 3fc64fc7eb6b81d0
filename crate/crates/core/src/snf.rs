//! Smith normal form over the integers, with full transform tracking.
//!
//! `smith_normal_form(A)` returns `(D, U, V)` with `U·A·V = D`, `U` and `V`
//! unimodular and `D` diagonal with each entry dividing the next. Everything
//! is exact `BigInt` arithmetic; the pivot rule (smallest nonzero absolute
//! value, ties broken row-major) is fixed so results are reproducible.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithNormalForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithNormalForm {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        let n = self.d.rows().min(self.d.cols());
        (0..n).filter(|&k| !self.d.get(k, k).is_zero()).count()
    }

    /// Diagonal entries `>= 2`, in divisibility order.
    pub fn torsion(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n)
            .map(|k| self.d.get(k, k).clone())
            .filter(|d| d >= &BigInt::from(2))
            .collect()
    }
}

/// Locates the smallest-|·| nonzero entry of the trailing submatrix starting
/// at `(k, k)`, scanning row-major so ties resolve deterministically.
fn find_pivot(a: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut best_abs = BigInt::zero();
    for i in k..a.rows() {
        for j in k..a.cols() {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            if best.is_none() || abs < best_abs {
                best = Some((i, j));
                best_abs = abs;
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithNormalForm {
    let mut d = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut v = IntMatrix::identity(a.cols());
    let steps = a.rows().min(a.cols());

    for k in 0..steps {
        // the loop ends when the trailing submatrix is zero or the pivot
        // cleanly divides everything it must
        'pivot: while let Some((pi, pj)) = find_pivot(&d, k) {
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);

            // Clear column k with truncated division; a nonzero remainder is
            // strictly smaller than the pivot, so re-running the pivot search
            // terminates.
            let mut clean = true;
            for i in k + 1..d.rows() {
                if d.get(i, k).is_zero() {
                    continue;
                }
                let q = -(d.get(i, k) / d.get(k, k));
                d.add_row_multiple(i, k, &q);
                u.add_row_multiple(i, k, &q);
                if !d.get(i, k).is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..d.cols() {
                if d.get(k, j).is_zero() {
                    continue;
                }
                let q = -(d.get(k, j) / d.get(k, k));
                d.add_col_multiple(j, k, &q);
                v.add_col_multiple(j, k, &q);
                if !d.get(k, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue 'pivot;
            }

            // Pivot must divide the whole trailing submatrix for the
            // divisibility chain; fold an offending row in and retry.
            for i in k + 1..d.rows() {
                for j in k + 1..d.cols() {
                    if !(d.get(i, j) % d.get(k, k)).is_zero() {
                        let one = BigInt::from(1);
                        d.add_row_multiple(k, i, &one);
                        u.add_row_multiple(k, i, &one);
                        continue 'pivot;
                    }
                }
            }
            break;
        }
    }

    // Normalize the diagonal to be non-negative.
    for k in 0..steps {
        if d.get(k, k).is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
    }

    SmithNormalForm { d, u, v }
}

/// Invariants of a finitely generated abelian group: `Z^free_rank` plus
/// cyclic torsion factors in divisibility order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn free(rank: usize) -> Self {
        AbelianInvariants {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Invariants of `Z^cols / rowspace(relations)`.
    pub fn of_quotient(relations: &IntMatrix) -> Self {
        let snf = smith_normal_form(relations);
        AbelianInvariants {
            free_rank: relations.cols() - snf.rank(),
            torsion: snf.torsion(),
        }
    }
}

impl std::fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
