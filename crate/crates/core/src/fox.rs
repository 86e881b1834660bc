//! Knot determinant from the Fox-calculus Alexander matrix at `t = -1`.
//!
//! For the relation `out = over · in · over⁻¹` the free derivatives at `t`
//! are `1 - t` on the over arc, `t` on the incoming arc and `-1` on the
//! outgoing arc; the mirrored relation of a negative crossing gives the same
//! row up to a unit once `t = -1`. Entries for coinciding arcs add up.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::wirtinger::WirtingerPresentation;

/// Rows are relations, columns generators.
pub fn alexander_matrix_at_minus_one(p: &WirtingerPresentation) -> Vec<Vec<i64>> {
    p.relations
        .iter()
        .map(|r| {
            let mut row = vec![0i64; p.generators];
            row[r.over] += 2;
            row[r.incoming] -= 1;
            row[r.outgoing] -= 1;
            row
        })
        .collect()
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn bareiss_determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].clone() * sign
}

/// `|det|` of the matrix with relation `row` and generator `col` deleted.
pub fn fox_minor(p: &WirtingerPresentation, row: usize, col: usize) -> BigInt {
    let full = alexander_matrix_at_minus_one(p);
    let minor: Vec<Vec<BigInt>> = full
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|&(j, _)| j != col)
                .map(|(_, &x)| BigInt::from(x))
                .collect()
        })
        .collect();
    bareiss_determinant(&minor).abs()
}

/// The knot determinant `|Δ(-1)|`; 1 for the crossingless diagram.
pub fn fox_determinant(p: &WirtingerPresentation) -> BigInt {
    if p.relations.is_empty() {
        return BigInt::from(1);
    }
    fox_minor(p, p.relations.len() - 1, p.generators - 1)
}
