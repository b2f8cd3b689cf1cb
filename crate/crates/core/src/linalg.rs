//! Dense exact linear algebra over [`Scalar`].

use crate::scalar::Scalar;
use crate::univariate::UniPoly;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Scalar>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().unwrap();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(pivot_row.iter()) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r.max(0));
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    pivots
}

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of the right kernel {v : M v = 0}, one vector per free column.
pub fn kernel(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Scalar::zero(); ncols];
        v[free] = Scalar::one();
        for (row, &pc) in m.iter().zip(pivots.iter()) {
            v[pc] = -&row[free];
        }
        basis.push(v);
    }
    basis
}

pub fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(Scalar::zero(), |acc, k| &acc + &(&row[k] * &b[k][j]))
                })
                .collect()
        })
        .collect()
}

/// det(tI - A) by the Faddeev–LeVerrier recursion.
pub fn char_poly(a: &[Vec<Scalar>]) -> UniPoly {
    let n = a.len();
    let identity = |c: &Scalar| -> Vec<Vec<Scalar>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { c.clone() } else { Scalar::zero() }).collect())
            .collect()
    };
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut m = identity(&Scalar::zero());
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let am = mat_mul(a, &m);
        let c_prev = coeffs[n - k + 1].clone();
        m = am
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(j, x)| if i == j { &x + &c_prev } else { x })
                    .collect()
            })
            .collect();
        let amk = mat_mul(a, &m);
        let trace = (0..n).fold(Scalar::zero(), |acc, i| &acc + &amk[i][i]);
        coeffs[n - k] = -&(&trace * &Scalar::from_ratio(1, k as i64));
    }
    UniPoly::new(coeffs)
}
