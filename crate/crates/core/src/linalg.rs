//! Exact linear solves over the rationals.

use num::{BigRational, Zero};

pub type Q = BigRational;

/// Solves `a x = b` by Gauss-Jordan elimination.
///
/// Returns `None` when `a` is singular. `a` must be square with `b.len()` rows.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.len();
    assert_eq!(b.len(), n, "right-hand side has the wrong length");
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), n, "matrix is not square");
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for k in col..=n {
            m[col][k] = &m[col][k] * &inv;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for k in col..=n {
                let delta = &factor * &m[col][k];
                m[r][k] -= delta;
            }
        }
    }
    Some(m.into_iter().map(|mut row| row.pop().unwrap()).collect())
}
