//! Small dense helpers: Gram-Schmidt and restricted least squares.

use nalgebra::{DMatrix, DVector};

use crate::scalar::{self, Scalar};

/// Orthonormalizes the columns of a row-major `rows × cols` matrix in place,
/// column by column with two passes of modified Gram-Schmidt.
/// Returns `false` if a column is (numerically) dependent on earlier ones.
pub fn orthonormalize_columns(m: &mut [Scalar], rows: usize, cols: usize) -> bool {
    let col = |m: &[Scalar], c: usize| -> Vec<Scalar> { (0..rows).map(|r| m[r * cols + c]).collect() };
    for c in 0..cols {
        let mut v = col(m, c);
        let original = scalar::norm2(&v);
        for _ in 0..2 {
            for prev in 0..c {
                let u = col(m, prev);
                let proj = scalar::inner(&v, &u);
                for (vi, ui) in v.iter_mut().zip(&u) {
                    *vi -= proj * ui;
                }
            }
        }
        let norm = scalar::norm2(&v);
        if norm.is_nan() || norm <= 1e-12 * original.max(f64::MIN_POSITIVE) {
            return false;
        }
        for r in 0..rows {
            m[r * cols + c] = v[r] / norm;
        }
    }
    true
}

/// Removes from `v` its component in the span of the orthonormal columns of `basis`.
pub fn project_out(v: &mut [Scalar], basis: &[Scalar], cols: usize) {
    let rows = v.len();
    for _ in 0..2 {
        for c in 0..cols {
            let u: Vec<Scalar> = (0..rows).map(|r| basis[r * cols + c]).collect();
            let proj = scalar::inner(v, &u);
            for (vi, ui) in v.iter_mut().zip(&u) {
                *vi -= proj * ui;
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct LeastSquares {
    pub coefficients: Vec<Scalar>,
    pub residual: f64,
}

/// Minimum-norm least-squares fit of `target` by the given columns, through an SVD.
pub fn least_squares(columns: &[&[Scalar]], target: &[Scalar]) -> LeastSquares {
    let rows = target.len();
    let b = DVector::from_column_slice(target);
    if columns.is_empty() {
        return LeastSquares { coefficients: vec![], residual: scalar::norm2(target) };
    }
    let a = DMatrix::from_fn(rows, columns.len(), |r, c| columns[c][r]);
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let rank_eps = smax * 1e-12 * rows.max(columns.len()) as f64;
    let x = svd.solve(&b, rank_eps.max(f64::MIN_POSITIVE)).expect("u and v^t were requested");
    let r = &a * &x - &b;
    LeastSquares { coefficients: x.iter().copied().collect(), residual: r.norm() }
}
