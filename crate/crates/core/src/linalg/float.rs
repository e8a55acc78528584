use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::exact::IntMatrix;

/// Relative singular-value threshold for floating ranks.
pub const RANK_TOLERANCE: f64 = 1e-8;

/// Matrices with at most this many entries get a dense SVD; larger ones use
/// threshold-pivoted sparse elimination.
pub const DENSE_SVD_ENTRIES: usize = 600_000;

/// Floating-point rank.
pub fn rank(m: &IntMatrix) -> usize {
    if m.rows == 0 || m.cols() == 0 {
        return 0;
    }
    if m.rows * m.cols() <= DENSE_SVD_ENTRIES {
        svd_rank(m)
    } else {
        elimination_rank(m)
    }
}

/// Number of singular values above `RANK_TOLERANCE · σ_max`.
pub fn svd_rank(m: &IntMatrix) -> usize {
    let mut d = DMatrix::<f64>::zeros(m.rows, m.cols());
    for (c, col) in m.columns.iter().enumerate() {
        for &(r, v) in col {
            d[(r, c)] = v as f64;
        }
    }
    let sv = d.svd(false, false).singular_values;
    let max = sv.max();
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > RANK_TOLERANCE * max).count()
}

/// Column reduction in `f64`, dropping entries below `RANK_TOLERANCE` times
/// the largest input magnitude.
pub fn elimination_rank(m: &IntMatrix) -> usize {
    let scale = m.columns.iter().flatten().map(|&(_, v)| (v as f64).abs()).fold(0.0, f64::max);
    let eps = RANK_TOLERANCE * scale;
    let mut pivot_of_row: Vec<Option<usize>> = vec![None; m.rows];
    let mut reduced: Vec<Vec<(usize, f64)>> = Vec::with_capacity(m.cols());
    let mut rank = 0;
    for (j, col) in m.columns.iter().enumerate() {
        let mut r: Vec<(usize, f64)> = col.iter().map(|&(i, v)| (i, v as f64)).collect();
        while let Some(&(low, b)) = r.last() {
            let Some(p) = pivot_of_row[low] else {
                pivot_of_row[low] = Some(j);
                rank += 1;
                break;
            };
            let piv: &Vec<(usize, f64)> = &reduced[p];
            let a = piv.last().expect("pivot column is nonzero").1;
            r = axpy_sparse(&r, -b / a, piv, low, eps);
        }
        reduced.push(r);
    }
    rank
}

/// `x + f·y` on sorted sparse vectors; `cancel` is forced to zero.
fn axpy_sparse(x: &[(usize, f64)], f: f64, y: &[(usize, f64)], cancel: usize, eps: f64) -> Vec<(usize, f64)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (row, v) = if j >= y.len() || (i < x.len() && x[i].0 < y[j].0) {
            i += 1;
            x[i - 1]
        } else if i >= x.len() || y[j].0 < x[i].0 {
            j += 1;
            (y[j - 1].0, f * y[j - 1].1)
        } else {
            i += 1;
            j += 1;
            (x[i - 1].0, x[i - 1].1 + f * y[j - 1].1)
        };
        if row != cancel && v.abs() > eps {
            out.push((row, v));
        }
    }
    out
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Preconditioned conjugate gradients for symmetric positive semidefinite
/// systems with a right-hand side in the range of the operator. `diag` is a
/// Jacobi preconditioner; zero entries are treated as one.
///
/// Residuals are measured relative to `max(‖b‖, scale)`, so right-hand sides
/// already at rounding level return at once. Iterates until that relative
/// residual reaches `tol`. On singular systems rounding can stall or reverse
/// progress; the best iterate seen is then returned if it is within `accept`.
pub fn pcg(
    apply: impl Fn(&[f64]) -> Vec<f64>,
    diag: &[f64],
    b: &[f64],
    scale: f64,
    tol: f64,
    accept: f64,
    max_iter: usize,
) -> Result<Vec<f64>> {
    let n = b.len();
    let mut x = vec![0.0; n];
    let bnorm = dot(b, b).sqrt().max(scale);
    if bnorm == 0.0 {
        return Ok(x);
    }
    let inv: Vec<f64> = diag.iter().map(|&d| if d > 0.0 { 1.0 / d } else { 1.0 }).collect();
    let mut r = b.to_vec();
    let mut z: Vec<f64> = r.iter().zip(&inv).map(|(a, b)| a * b).collect();
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut rnorm = dot(b, b).sqrt();
    let mut best = (rnorm, x.clone());
    let mut iterations = 0;
    while iterations < max_iter && rnorm > tol * bnorm {
        iterations += 1;
        let ap = apply(&p);
        let pap = dot(&p, &ap);
        // Negated so NaN is rejected too.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(pap > 0.0) {
            break;
        }
        let alpha = rz / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        rnorm = dot(&r, &r).sqrt();
        if rnorm < best.0 {
            best = (rnorm, x.clone());
        } else if rnorm > 1e3 * best.0 {
            break;
        }
        for i in 0..n {
            z[i] = r[i] * inv[i];
        }
        let rz_next = dot(&r, &z);
        let beta = rz_next / rz;
        rz = rz_next;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    if best.0 <= accept.max(tol) * bnorm {
        Ok(best.1)
    } else {
        Err(Error::SolveFailed { iterations, residual: best.0 / bnorm })
    }
}
