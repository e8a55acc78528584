//! Independent oracles. Everything here is rebuilt from the raw simplex
//! lists with hash-map lookups and dense linear algebra, sharing no code
//! with the library's operators.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::HashMap;

use formality_core::complex::{connected_sum, product_complex, sphere, surface, torus};
use formality_core::hodge::MetricWeights;
use formality_core::SimplicialComplex;
use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Every complex the suites sweep over.
pub fn zoo() -> Vec<SimplicialComplex> {
    let mut z: Vec<SimplicialComplex> = (1..=4).map(sphere).collect();
    z.extend((1..=4).map(torus));
    z.extend((0..=3).map(surface));
    z.push(product_complex(&sphere(2), &sphere(2)));
    z.push(product_complex(&sphere(3), &torus(1)));
    z.push(connected_sum(&torus(2), &torus(2)).unwrap());
    z.push(SimplicialComplex::from_data("rp2").unwrap());
    z.push(SimplicialComplex::from_data("torus7").unwrap());
    z
}

/// The zoo without the largest member, for per-pair sweeps.
pub fn small_zoo() -> Vec<SimplicialComplex> {
    zoo().into_iter().filter(|k| k.count(k.dimension()) <= 500).collect()
}

fn index(k: &SimplicialComplex, d: usize) -> HashMap<Vec<usize>, usize> {
    k.simplices(d).iter().cloned().enumerate().map(|(i, s)| (s, i)).collect()
}

/// Coboundary `C^d → C^{d+1}` as a dense matrix.
pub fn coboundary(k: &SimplicialComplex, d: usize) -> DMatrix<f64> {
    let rows = if d < k.dimension() { k.count(d + 1) } else { 0 };
    let mut m = DMatrix::zeros(rows, k.count(d));
    if rows == 0 {
        return m;
    }
    let faces = index(k, d);
    for (r, s) in k.simplices(d + 1).iter().enumerate() {
        for skip in 0..s.len() {
            let mut f = s.clone();
            f.remove(skip);
            m[(r, faces[&f])] = if skip % 2 == 0 { 1.0 } else { -1.0 };
        }
    }
    m
}

pub fn apply_d(k: &SimplicialComplex, d: usize, a: &[f64]) -> Vec<f64> {
    (coboundary(k, d) * DVector::from_column_slice(a)).as_slice().to_vec()
}

/// Alexander–Whitney product by explicit front and back face lookup.
pub fn cup(k: &SimplicialComplex, p: usize, a: &[f64], q: usize, b: &[f64]) -> Vec<f64> {
    let front = index(k, p);
    let back = index(k, q);
    k.simplices(p + q).iter().map(|s| a[front[&s[..=p]]] * b[back[&s[p..]]]).collect()
}

/// Symmetrized Laplacian `W^{1/2} Δ W^{-1/2}`.
pub fn symmetric_laplacian(k: &SimplicialComplex, w: &MetricWeights, d: usize) -> DMatrix<f64> {
    let sq = |deg: usize| {
        DMatrix::from_diagonal(&DVector::from_iterator(k.count(deg), w.degree(deg).iter().map(|x| x.sqrt())))
    };
    let isq = |deg: usize| {
        DMatrix::from_diagonal(&DVector::from_iterator(k.count(deg), w.degree(deg).iter().map(|x| 1.0 / x.sqrt())))
    };
    let n = k.count(d);
    let mut s = DMatrix::zeros(n, n);
    if d < k.dimension() {
        let a = sq(d + 1) * coboundary(k, d) * isq(d);
        s += a.transpose() * a;
    }
    if d > 0 {
        let b = sq(d) * coboundary(k, d - 1) * isq(d - 1);
        s += &b * b.transpose();
    }
    s
}

/// Dense w-orthogonal projector onto `ker Δ_d` with the nullity found by SVD
/// at a fixed relative threshold.
pub fn harmonic_projector(k: &SimplicialComplex, w: &MetricWeights, d: usize) -> (DMatrix<f64>, usize) {
    let s = symmetric_laplacian(k, w, d);
    let n = s.nrows();
    let svd = s.svd(true, false);
    let u = svd.u.unwrap();
    let max = svd.singular_values.max();
    let null: Vec<usize> = (0..n).filter(|&i| svd.singular_values[i] <= 1e-9 * max.max(1.0)).collect();
    // Columns of U are orthonormal in the symmetrized frame; map back with W^{-1/2}.
    let mut p = DMatrix::zeros(n, n);
    let wd = w.degree(d);
    for &c in &null {
        let h: Vec<f64> = (0..n).map(|i| u[(i, c)] / wd[i].sqrt()).collect();
        for i in 0..n {
            for j in 0..n {
                p[(i, j)] += h[i] * h[j] * wd[j];
            }
        }
    }
    (p, null.len())
}

pub fn w_norm(w: &[f64], x: &[f64]) -> f64 {
    w.iter().zip(x).map(|(w, x)| w * x * x).sum::<f64>().sqrt()
}

/// `‖c − P c‖_w / ‖c‖_w` with an explicit projector.
pub fn projected_residual(p: &DMatrix<f64>, w: &[f64], c: &[f64]) -> f64 {
    let pc = p * DVector::from_column_slice(c);
    let rest: Vec<f64> = c.iter().zip(pc.iter()).map(|(a, b)| a - b).collect();
    w_norm(w, &rest) / w_norm(w, c)
}

/// Rank over ℚ by dense fraction elimination.
pub fn rational_rank(m: &DMatrix<f64>) -> usize {
    let mut a: Vec<Vec<BigRational>> = (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| BigRational::from_integer(BigInt::from(m[(r, c)] as i64))).collect())
        .collect();
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in rank + 1..rows {
            if !a[r][c].is_zero() {
                let f = &a[r][c] / &a[rank][c];
                for cc in c..cols {
                    let t = &f * &a[rank][cc];
                    a[r][cc] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers from dense rational ranks of the coboundaries.
pub fn betti_oracle(k: &SimplicialComplex) -> Vec<usize> {
    let n = k.dimension();
    let ranks: Vec<usize> = (0..n).map(|d| rational_rank(&coboundary(k, d))).collect();
    (0..=n).map(|d| k.count(d) - if d < n { ranks[d] } else { 0 } - if d > 0 { ranks[d - 1] } else { 0 }).collect()
}

/// Integer 1-cocycles on the staircase 2-torus pulled back from the two
/// circle factors along the coordinate projections. Vertex `(u, v)` of
/// `torus(2)` has id `3u + v`; the circle generator is the indicator of its
/// edge `{0, 2}` with orientation `0 → 2`.
pub fn torus_pullback_generators(t: &SimplicialComplex) -> [Vec<f64>; 2] {
    let circle = |x: usize, y: usize| -> f64 {
        match (x, y) {
            (0, 2) => 1.0,
            (2, 0) => -1.0,
            _ => 0.0,
        }
    };
    let mut alpha = vec![0.0; t.count(1)];
    let mut beta = vec![0.0; t.count(1)];
    for (i, e) in t.simplices(1).iter().enumerate() {
        let (a, b) = (e[0], e[1]);
        alpha[i] = circle(a / 3, b / 3);
        beta[i] = circle(a % 3, b % 3);
    }
    [alpha, beta]
}

/// `Σ sign(facet) c(facet)` for a given orientation.
pub fn integrate(signs: &[i8], c: &[f64]) -> f64 {
    signs.iter().zip(c).map(|(&s, x)| s as f64 * x).sum()
}
