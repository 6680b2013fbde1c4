use num_traits::One;

use crate::poly::MultiPoly;

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(mut m: Vec<Vec<MultiPoly>>, nvars: usize) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::constant(nvars, One::one());
    }
    let mut negate = false;
    let mut prev = MultiPoly::constant(nvars, One::one());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return MultiPoly::zero(nvars);
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// Resultant of two binary forms of formal degrees `a.len() - 1` and
/// `b.len() - 1`; `a[i]` is the coefficient of `s^i t^(deg - i)`.
pub fn binary_resultant(a: &[MultiPoly], b: &[MultiPoly], nvars: usize) -> MultiPoly {
    let (da, db) = (a.len() - 1, b.len() - 1);
    let size = da + db;
    let mut m = vec![vec![MultiPoly::zero(nvars); size]; size];
    for row in 0..db {
        for (i, c) in a.iter().rev().enumerate() {
            m[row][row + i] = c.clone();
        }
    }
    for row in 0..da {
        for (i, c) in b.iter().rev().enumerate() {
            m[db + row][row + i] = c.clone();
        }
    }
    determinant(m, nvars)
}
