//! Signature of a symmetric integer form by exact congruence
//! diagonalization over the rationals.
//!
//! No eigenvalues, no floats: the form is diagonalized by simultaneous
//! row/column operations (a congruence, so inertia is preserved) and the
//! signature read off as the sign count of the diagonal.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

pub fn signature(q: &IntMatrix) -> Result<i64> {
    if !q.is_symmetric() {
        return Err(Error::Domain(
            "signature requires a symmetric matrix".into(),
        ));
    }
    let n = q.rows();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(q.get(i, j).clone()))
                .collect()
        })
        .collect();

    let mut positive = 0i64;
    let mut negative = 0i64;

    #[allow(clippy::needless_range_loop)] // pairs of rows are indexed together
    for k in 0..n {
        if m[k][k].is_zero() {
            // prefer a later nonzero diagonal entry (congruence swap)
            if let Some(i) = (k + 1..n).find(|&i| !m[i][i].is_zero()) {
                swap_symmetric(&mut m, k, i);
            } else if let Some(j) = (k + 1..n).find(|&j| !m[k][j].is_zero()) {
                // all remaining diagonal entries vanish; fold row j into
                // row k to manufacture a nonzero diagonal: new a_kk = 2a_kj
                add_symmetric(&mut m, k, j);
            } else {
                continue; // row k is identically zero from k on
            }
        }
        let pivot = m[k][k].clone();
        if pivot.is_positive() {
            positive += 1;
        } else {
            negative += 1;
        }
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = &m[i][k] / &pivot;
            for j in k..n {
                let delta = &factor * &m[k][j];
                m[i][j] -= delta;
            }
            for j in k..n {
                let delta = &factor * &m[j][k];
                m[j][i] -= delta;
            }
        }
    }

    Ok(positive - negative)
}

fn swap_symmetric(m: &mut [Vec<BigRational>], a: usize, b: usize) {
    m.swap(a, b);
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// row a += row b, then col a += col b.
#[allow(clippy::needless_range_loop)]
fn add_symmetric(m: &mut [Vec<BigRational>], a: usize, b: usize) {
    let n = m.len();
    for j in 0..n {
        let v = m[b][j].clone();
        m[a][j] += v;
    }
    for i in 0..n {
        let v = m[i][b].clone();
        m[i][a] += v;
    }
}

/// The E8 form: the positive definite even unimodular form of rank 8
/// (diagonal 2, off-diagonal 1 along the E8 tree). Useful as a signature
/// test vector.
pub fn e8_form() -> IntMatrix {
    // tree: 0-1-2-3-4-5-6 chain, 7 attached to node 4
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
    let mut m = IntMatrix::zero(8, 8);
    for i in 0..8 {
        m.set(i, i, BigInt::from(2));
    }
    for &(a, b) in &edges {
        m.set(a, b, BigInt::from(1));
        m.set(b, a, BigInt::from(1));
    }
    m
}
