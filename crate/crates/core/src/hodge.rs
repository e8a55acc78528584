//! Diagonal discrete metrics, weighted Hodge Laplacians and harmonic cochains.
//!
//! A metric assigns one positive weight to every simplex; the inner product
//! on `k`-cochains is `⟨a, b⟩_w = Σ w_σ a(σ) b(σ)`. With `d_k` the coboundary
//! and `δ_k = W_{k−1}⁻¹ d_{k−1}ᵀ W_k` its adjoint, the Laplacian is
//! `Δ_k = δ_{k+1} d_k + d_{k−1} δ_k`, self-adjoint and positive semidefinite
//! under `⟨·,·⟩_w`.
//!
//! Harmonic bases come from one of two routes. Degrees with at most
//! [`DENSE_LIMIT`] simplices use a dense eigendecomposition of the symmetrized
//! Laplacian `W^{1/2} Δ W^{−1/2}` and count eigenvalues below the tolerance.
//! Larger degrees project random cochains onto `(im d ⊕ im δ)^⊥` with two
//! conjugate-gradient least-squares solves each and read the nullspace
//! dimension off the rank of the projected set. Either way the count is
//! checked against the exact Betti number.

use std::hash::{Hash, Hasher};

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{Cochain, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::{self, BettiVector};
use crate::linalg::float::pcg;
use crate::linalg::CsrMatrix;

/// Degrees with at most this many simplices use the dense eigensolver.
pub const DENSE_LIMIT: usize = 1000;

/// Default nullspace tolerance, relative to the largest eigenvalue.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Relative residual targeted by the conjugate-gradient solves.
const CG_TOLERANCE: f64 = 1e-13;
/// Fallback relative residual accepted when CG stalls short of `CG_TOLERANCE`.
const CG_ACCEPT: f64 = 1e-9;

/// Extra random probes beyond `b_k` in the projection route.
const OVERSAMPLE: usize = 3;

/// Gram eigenvalue, relative to the squared norm of the unprojected probes,
/// below which a projected direction counts as zero.
const GRAM_RANK_TOLERANCE: f64 = 1e-10;

/// One strictly positive weight per simplex, per degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricWeights {
    weights: Vec<Vec<f64>>,
}

impl MetricWeights {
    pub fn new(k: &SimplicialComplex, weights: Vec<Vec<f64>>) -> Result<Self> {
        if weights.len() != k.dimension() + 1 {
            return Err(Error::InvalidWeights(format!(
                "expected {} degrees, found {}",
                k.dimension() + 1,
                weights.len()
            )));
        }
        for (d, w) in weights.iter().enumerate() {
            if w.len() != k.count(d) {
                return Err(Error::InvalidWeights(format!(
                    "degree {d}: expected {} weights, found {}",
                    k.count(d),
                    w.len()
                )));
            }
            if let Some(bad) = w.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
                return Err(Error::InvalidWeights(format!("degree {d}: weight {bad} is not strictly positive")));
            }
        }
        Ok(Self { weights })
    }

    pub fn unit(k: &SimplicialComplex) -> Self {
        Self { weights: k.f_vector().into_iter().map(|n| vec![1.0; n]).collect() }
    }

    /// Independent weights, log-uniform in `[lo, hi]`.
    pub fn log_uniform(k: &SimplicialComplex, lo: f64, hi: f64, rng: &mut impl Rng) -> Self {
        let (a, b) = (lo.ln(), hi.ln());
        Self {
            weights: k
                .f_vector()
                .into_iter()
                .map(|n| (0..n).map(|_| rng.random_range(a..=b).exp()).collect())
                .collect(),
        }
    }

    pub fn degree(&self, k: usize) -> &[f64] {
        self.weights.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn degrees(&self) -> &[Vec<f64>] {
        &self.weights
    }

    pub(crate) fn degree_mut(&mut self, k: usize) -> &mut [f64] {
        &mut self.weights[k]
    }

    /// Every weight of every degree multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self { weights: self.weights.iter().map(|w| w.iter().map(|x| x * factor).collect()).collect() }
    }

    /// Weights of one degree multiplied by `factor`.
    pub fn scaled_degree(&self, k: usize, factor: f64) -> Self {
        let mut out = self.clone();
        out.weights[k].iter_mut().for_each(|x| *x *= factor);
        out
    }

    pub fn inner(&self, a: &Cochain, b: &Cochain) -> f64 {
        debug_assert_eq!(a.degree, b.degree);
        weighted_dot(self.degree(a.degree), &a.values, &b.values)
    }

    pub fn norm(&self, a: &Cochain) -> f64 {
        self.inner(a, a).sqrt()
    }

    /// Content hash of the weight bits.
    pub fn fingerprint(&self) -> u64 {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        for w in &self.weights {
            w.len().hash(&mut h);
            for x in w {
                x.to_bits().hash(&mut h);
            }
        }
        h.finish()
    }
}

pub fn unit_weights(k: &SimplicialComplex) -> MetricWeights {
    MetricWeights::unit(k)
}

pub(crate) fn weighted_dot(w: &[f64], a: &[f64], b: &[f64]) -> f64 {
    w.iter().zip(a).zip(b).map(|((w, x), y)| w * x * y).sum()
}

/// Precomputed coboundaries and Betti numbers for one complex.
#[derive(Clone, Debug)]
pub struct HodgeContext<'a> {
    complex: &'a SimplicialComplex,
    betti: BettiVector,
    /// `coboundaries[k] = d_k : C^k → C^{k+1}` for `k < n`.
    coboundaries: Vec<CsrMatrix>,
}

impl<'a> HodgeContext<'a> {
    pub fn new(complex: &'a SimplicialComplex) -> Self {
        Self::with_betti(complex, homology::betti_numbers(complex))
    }

    pub fn with_betti(complex: &'a SimplicialComplex, betti: BettiVector) -> Self {
        let coboundaries =
            (0..complex.dimension()).map(|k| homology::coboundary(complex, k).expect("degree in range")).collect();
        Self { complex, betti, coboundaries }
    }

    pub fn complex(&self) -> &'a SimplicialComplex {
        self.complex
    }

    pub fn betti(&self) -> &BettiVector {
        &self.betti
    }

    pub fn coboundary(&self, k: usize) -> Option<&CsrMatrix> {
        self.coboundaries.get(k)
    }

    fn check_degree(&self, k: usize) -> Result<()> {
        if k > self.complex.dimension() {
            return Err(Error::DegreeOutOfRange { degree: k, max: self.complex.dimension() });
        }
        Ok(())
    }

    pub fn laplacian<'w>(&'a self, w: &'w MetricWeights, k: usize) -> Result<Laplacian<'a, 'w>> {
        self.check_degree(k)?;
        Ok(Laplacian {
            degree: k,
            down: k.checked_sub(1).and_then(|j| self.coboundaries.get(j)),
            up: self.coboundaries.get(k),
            w_prev: k.checked_sub(1).map_or(&[], |j| w.degree(j)),
            w_here: w.degree(k),
            w_next: w.degree(k + 1),
        })
    }

    /// `δ_k c = W_{k−1}⁻¹ d_{k−1}ᵀ W_k c`.
    pub fn codifferential(&self, w: &MetricWeights, c: &Cochain) -> Result<Cochain> {
        c.check(self.complex)?;
        if c.degree == 0 {
            return Err(Error::DegreeOutOfRange { degree: 0, max: self.complex.dimension() });
        }
        let d = &self.coboundaries[c.degree - 1];
        let wc: Vec<f64> = c.values.iter().zip(w.degree(c.degree)).map(|(x, w)| x * w).collect();
        let values = d.transpose_mul_vec(&wc).iter().zip(w.degree(c.degree - 1)).map(|(x, w)| x / w).collect();
        Ok(Cochain { degree: c.degree - 1, values })
    }

    pub fn differential(&self, c: &Cochain) -> Result<Cochain> {
        c.check(self.complex)?;
        match self.coboundaries.get(c.degree) {
            Some(d) => Ok(Cochain { degree: c.degree + 1, values: d.mul_vec(&c.values) }),
            None => Err(Error::DegreeOutOfRange { degree: c.degree + 1, max: self.complex.dimension() }),
        }
    }

    /// Least-squares `a` minimizing `‖c − d a‖_w`; returns `(a, d a)`.
    fn exact_part(&self, w: &MetricWeights, k: usize, c: &[f64]) -> Result<Option<(Vec<f64>, Vec<f64>)>> {
        let Some(d) = k.checked_sub(1).map(|j| &self.coboundaries[j]) else { return Ok(None) };
        let wk = w.degree(k);
        let rhs = d.transpose_mul_vec(&mul(wk, c));
        let mut diag = vec![0.0; d.cols()];
        for r in 0..d.rows() {
            for (col, v) in d.row(r) {
                diag[col] += wk[r] * v * v;
            }
        }
        let apply = |x: &[f64]| d.transpose_mul_vec(&mul(wk, &d.mul_vec(x)));
        // ‖W^{1/2} d‖_F · ‖c‖_w bounds ‖rhs‖.
        let scale = (diag.iter().sum::<f64>() * weighted_dot(wk, c, c)).sqrt();
        let a = pcg(apply, &diag, &rhs, scale, CG_TOLERANCE, CG_ACCEPT, cg_iterations(d.cols()))?;
        let da = d.mul_vec(&a);
        Ok(Some((a, da)))
    }

    /// Least-squares `b` minimizing `‖c − δ b‖_w`; returns `(b, δ b)`.
    fn coexact_part(&self, w: &MetricWeights, k: usize, c: &[f64]) -> Result<Option<(Vec<f64>, Vec<f64>)>> {
        let Some(d) = self.coboundaries.get(k) else { return Ok(None) };
        let wk = w.degree(k);
        let rhs = d.mul_vec(c);
        let mut diag = vec![0.0; d.rows()];
        for (r, slot) in diag.iter_mut().enumerate() {
            *slot = d.row(r).map(|(col, v)| v * v / wk[col]).sum();
        }
        let apply = |y: &[f64]| d.mul_vec(&div(&d.transpose_mul_vec(y), wk));
        // With y = W_{k+1} b the normal equations read d W_k⁻¹ dᵀ y = d c.
        let scale = (diag.iter().sum::<f64>() * weighted_dot(wk, c, c)).sqrt();
        let y = pcg(apply, &diag, &rhs, scale, CG_TOLERANCE, CG_ACCEPT, cg_iterations(d.rows()))?;
        let coexact = div(&d.transpose_mul_vec(&y), wk);
        let b = div(&y, w.degree(k + 1));
        Ok(Some((b, coexact)))
    }

    /// Harmonic part by subtracting the exact and coexact least-squares fits.
    fn project_out(&self, w: &MetricWeights, k: usize, c: &[f64]) -> Result<Vec<f64>> {
        let mut h = c.to_vec();
        if let Some((_, da)) = self.exact_part(w, k, c)? {
            sub_assign(&mut h, &da);
        }
        if let Some((_, db)) = self.coexact_part(w, k, c)? {
            sub_assign(&mut h, &db);
        }
        Ok(h)
    }

    pub fn harmonic_basis(&self, w: &MetricWeights, k: usize, tol: f64) -> Result<HarmonicBasis> {
        self.harmonic_basis_with(w, k, tol, NullspaceMethod::Auto)
    }

    pub fn harmonic_basis_with(
        &self,
        w: &MetricWeights,
        k: usize,
        tol: f64,
        method: NullspaceMethod,
    ) -> Result<HarmonicBasis> {
        self.check_degree(k)?;
        // Negated so NaN is rejected too.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(tol > 0.0) {
            return Err(Error::BadConfig(format!("tolerance must be positive, got {tol}")));
        }
        let method = match method {
            NullspaceMethod::Auto if self.complex.count(k) <= DENSE_LIMIT => NullspaceMethod::Dense,
            NullspaceMethod::Auto => NullspaceMethod::Projection,
            m => m,
        };
        let lap = self.laplacian(w, k)?;
        let expected = self.betti.get(k);
        let (vectors, lambda_max, spectral_gap) = match method {
            NullspaceMethod::Dense => {
                let (vectors, lambda_max, gap) = dense_nullspace(&lap, tol)?;
                if vectors.len() != expected {
                    return Err(Error::NullspaceMismatch { degree: k, expected, found: vectors.len() });
                }
                (vectors, lambda_max, gap)
            }
            _ => {
                let vectors = self.projected_nullspace(w, k, expected)?;
                (vectors, lap.largest_eigenvalue(), None)
            }
        };
        let wk = w.degree(k);
        let mut residual: f64 = 0.0;
        for v in &vectors {
            let lv = lap.apply(v);
            let r =
                weighted_dot(wk, &lv, &lv).sqrt() / (lambda_max.max(f64::MIN_POSITIVE) * weighted_dot(wk, v, v).sqrt());
            residual = residual.max(r);
        }
        if residual > tol.max(1e-8) {
            return Err(Error::NotHarmonic(residual));
        }
        Ok(HarmonicBasis {
            degree: k,
            tolerance: tol,
            vectors: vectors.into_iter().map(|values| Cochain { degree: k, values }).collect(),
            residual,
            lambda_max,
            spectral_gap,
            weights_fingerprint: w.fingerprint(),
        })
    }

    fn projected_nullspace(&self, w: &MetricWeights, k: usize, expected: usize) -> Result<Vec<Vec<f64>>> {
        let n = self.complex.count(k);
        let mut rng = ChaCha8Rng::seed_from_u64(0x6861_726d ^ k as u64);
        let wk = w.degree(k);
        let raw: Vec<Vec<f64>> =
            (0..expected + OVERSAMPLE).map(|_| (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()).collect();
        let scale = raw.iter().map(|r| weighted_dot(wk, r, r)).fold(0.0, f64::max);
        let probes: Vec<Vec<f64>> = raw.iter().map(|r| self.project_out(w, k, r)).collect::<Result<_>>()?;
        let found = orthonormalize(wk, &probes, Rank::Above(GRAM_RANK_TOLERANCE * scale));
        if found.len() != expected {
            return Err(Error::NullspaceMismatch { degree: k, expected, found: found.len() });
        }
        // A second pass removes what the first solves left behind.
        let polished: Vec<Vec<f64>> = found.iter().map(|v| self.project_out(w, k, v)).collect::<Result<_>>()?;
        Ok(orthonormalize(wk, &polished, Rank::Exactly(expected)))
    }

    pub fn harmonic_projection(&self, basis: &HarmonicBasis, w: &MetricWeights, c: &Cochain) -> Result<Cochain> {
        c.check(self.complex)?;
        basis.project(w, c)
    }

    pub fn hodge_decompose(&self, w: &MetricWeights, c: &Cochain, basis: &HarmonicBasis) -> Result<HodgeDecomposition> {
        c.check(self.complex)?;
        if basis.degree != c.degree {
            return Err(Error::DegreeOutOfRange { degree: basis.degree, max: c.degree });
        }
        let k = c.degree;
        let harmonic = basis.project(w, c)?;
        let zero = vec![0.0; c.len()];
        let (potential_exact, exact) = match self.exact_part(w, k, &c.values)? {
            Some((a, da)) => (Some(Cochain { degree: k - 1, values: a }), da),
            None => (None, zero.clone()),
        };
        let (potential_coexact, coexact) = match self.coexact_part(w, k, &c.values)? {
            Some((b, db)) => (Some(Cochain { degree: k + 1, values: b }), db),
            None => (None, zero),
        };
        let mut rest = c.values.clone();
        sub_assign(&mut rest, &exact);
        sub_assign(&mut rest, &coexact);
        sub_assign(&mut rest, &harmonic.values);
        let wk = w.degree(k);
        let scale = weighted_dot(wk, &c.values, &c.values).sqrt();
        let err = weighted_dot(wk, &rest, &rest).sqrt();
        if scale > 0.0 && err > 1e-8 * scale {
            return Err(Error::SolveFailed { iterations: 0, residual: err / scale });
        }
        Ok(HodgeDecomposition {
            exact: Cochain { degree: k, values: exact },
            coexact: Cochain { degree: k, values: coexact },
            harmonic,
            potential_exact,
            potential_coexact,
        })
    }
}

fn cg_iterations(n: usize) -> usize {
    10 * n + 1000
}

fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x * y).collect()
}

fn div(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x / y).collect()
}

fn sub_assign(a: &mut [f64], b: &[f64]) {
    a.iter_mut().zip(b).for_each(|(x, y)| *x -= y);
}

enum Rank {
    Above(f64),
    Exactly(usize),
}

/// W-orthonormal basis of the leading directions of the span of `vectors`.
fn orthonormalize(w: &[f64], vectors: &[Vec<f64>], rank: Rank) -> Vec<Vec<f64>> {
    let m = vectors.len();
    if m == 0 {
        return Vec::new();
    }
    let gram = DMatrix::from_fn(m, m, |i, j| weighted_dot(w, &vectors[i], &vectors[j]));
    let eig = SymmetricEigen::new(gram);
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let count = match rank {
        Rank::Above(threshold) => order.iter().filter(|&&i| eig.eigenvalues[i] > threshold).count(),
        Rank::Exactly(n) => n,
    };
    order
        .iter()
        .take(count)
        .map(|&i| {
            let mu = eig.eigenvalues[i].max(f64::MIN_POSITIVE).sqrt();
            let mut v = vec![0.0; vectors[0].len()];
            for (j, src) in vectors.iter().enumerate() {
                let c = eig.eigenvectors[(j, i)] / mu;
                v.iter_mut().zip(src).for_each(|(x, s)| *x += c * s);
            }
            v
        })
        .collect()
}

fn dense_nullspace(lap: &Laplacian<'_, '_>, tol: f64) -> Result<(Vec<Vec<f64>>, f64, Option<f64>)> {
    let n = lap.dim();
    if n == 0 {
        return Ok((Vec::new(), 0.0, None));
    }
    let eig = SymmetricEigen::new(lap.symmetrized_dense());
    let lambda_max = eig.eigenvalues.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let threshold = tol * lambda_max;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let null: Vec<usize> = order.iter().copied().filter(|&i| eig.eigenvalues[i] <= threshold).collect();
    let gap = order.get(null.len()).map(|&i| eig.eigenvalues[i] / lambda_max.max(f64::MIN_POSITIVE));
    let sqrt_w: Vec<f64> = lap.w_here.iter().map(|x| x.sqrt()).collect();
    let vectors = null.iter().map(|&i| (0..n).map(|r| eig.eigenvectors[(r, i)] / sqrt_w[r]).collect()).collect();
    Ok((vectors, lambda_max, gap))
}

/// How `harmonic_basis` extracts the nullspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NullspaceMethod {
    /// Dense up to [`DENSE_LIMIT`] simplices, projection above.
    Auto,
    Dense,
    Projection,
}

/// `Δ_k` as a matrix-free operator.
#[derive(Clone, Debug)]
pub struct Laplacian<'a, 'w> {
    pub degree: usize,
    down: Option<&'a CsrMatrix>,
    up: Option<&'a CsrMatrix>,
    w_prev: &'w [f64],
    w_here: &'w [f64],
    w_next: &'w [f64],
}

impl Laplacian<'_, '_> {
    pub fn dim(&self) -> usize {
        self.w_here.len()
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; x.len()];
        if let Some(d) = self.up {
            let t = d.transpose_mul_vec(&mul(self.w_next, &d.mul_vec(x)));
            y.iter_mut().zip(div(&t, self.w_here)).for_each(|(a, b)| *a += b);
        }
        if let Some(d) = self.down {
            let t = d.mul_vec(&div(&d.transpose_mul_vec(&mul(self.w_here, x)), self.w_prev));
            y.iter_mut().zip(t).for_each(|(a, b)| *a += b);
        }
        y
    }

    pub fn apply_cochain(&self, c: &Cochain) -> Cochain {
        Cochain { degree: c.degree, values: self.apply(&c.values) }
    }

    /// `Δ_k` as a dense (generally non-symmetric) matrix.
    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        let mut e = vec![0.0; n];
        for j in 0..n {
            e[j] = 1.0;
            for (i, v) in self.apply(&e).into_iter().enumerate() {
                m[(i, j)] = v;
            }
            e[j] = 0.0;
        }
        m
    }

    /// `W^{1/2} Δ W^{−1/2} = AᵀA + BBᵀ`, symmetric with the spectrum of `Δ`.
    pub fn symmetrized_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut s = DMatrix::zeros(n, n);
        if let Some(d) = self.up {
            // A = W_{k+1}^{1/2} d_k W_k^{−1/2}
            let mut a = d.to_dense();
            for r in 0..a.nrows() {
                let f = self.w_next[r].sqrt();
                for c in 0..n {
                    a[(r, c)] *= f / self.w_here[c].sqrt();
                }
            }
            s += a.transpose() * &a;
        }
        if let Some(d) = self.down {
            // B = W_k^{1/2} d_{k−1} W_{k−1}^{−1/2}
            let mut b = d.to_dense();
            for r in 0..n {
                let f = self.w_here[r].sqrt();
                for c in 0..b.ncols() {
                    b[(r, c)] *= f / self.w_prev[c].sqrt();
                }
            }
            s += &b * b.transpose();
        }
        s
    }

    /// Power-iteration estimate of the largest eigenvalue.
    pub fn largest_eigenvalue(&self) -> f64 {
        let n = self.dim();
        if n == 0 {
            return 0.0;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x7077);
        let mut x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let mut lambda = 0.0;
        for _ in 0..200 {
            let norm = weighted_dot(self.w_here, &x, &x).sqrt();
            if norm == 0.0 {
                return 0.0;
            }
            x.iter_mut().for_each(|v| *v /= norm);
            let y = self.apply(&x);
            let next = weighted_dot(self.w_here, &y, &y).sqrt();
            let done = (next - lambda).abs() <= 1e-6 * next;
            lambda = next;
            x = y;
            if done {
                break;
            }
        }
        lambda
    }
}

/// W-orthonormal basis of `ker Δ_k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HarmonicBasis {
    pub degree: usize,
    pub tolerance: f64,
    pub vectors: Vec<Cochain>,
    /// Largest `‖Δv‖_w / (λ_max ‖v‖_w)` over the basis.
    pub residual: f64,
    pub lambda_max: f64,
    /// Smallest nonzero eigenvalue over `λ_max`, when the dense route ran.
    pub spectral_gap: Option<f64>,
    pub weights_fingerprint: u64,
}

impl HarmonicBasis {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// W-orthogonal projection onto the span of the basis.
    pub fn project(&self, w: &MetricWeights, c: &Cochain) -> Result<Cochain> {
        if c.degree != self.degree {
            return Err(Error::DegreeOutOfRange { degree: c.degree, max: self.degree });
        }
        let mut out = vec![0.0; c.len()];
        for h in &self.vectors {
            let coef = w.inner(h, c);
            out.iter_mut().zip(&h.values).for_each(|(o, x)| *o += coef * x);
        }
        Ok(Cochain { degree: c.degree, values: out })
    }

    /// Dense w-orthogonal projector matrix `Σ h hᵀ W`.
    pub fn projector(&self, w: &MetricWeights) -> DMatrix<f64> {
        let wk = w.degree(self.degree);
        let n = wk.len();
        let mut p = DMatrix::zeros(n, n);
        for h in &self.vectors {
            for i in 0..n {
                for j in 0..n {
                    p[(i, j)] += h.values[i] * h.values[j] * wk[j];
                }
            }
        }
        p
    }
}

/// `c = exact + coexact + harmonic`, pairwise w-orthogonal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HodgeDecomposition {
    pub exact: Cochain,
    pub coexact: Cochain,
    pub harmonic: Cochain,
    /// `a` with `exact = d a`; absent in degree 0.
    pub potential_exact: Option<Cochain>,
    /// `b` with `coexact = δ b`; absent in the top degree.
    pub potential_coexact: Option<Cochain>,
}

pub fn laplacian_dense(k: &SimplicialComplex, w: &MetricWeights, degree: usize) -> Result<DMatrix<f64>> {
    let ctx = HodgeContext::new(k);
    Ok(ctx.laplacian(w, degree)?.to_dense())
}

pub fn harmonic_basis(k: &SimplicialComplex, w: &MetricWeights, degree: usize, tol: f64) -> Result<HarmonicBasis> {
    HodgeContext::new(k).harmonic_basis(w, degree, tol)
}

pub fn harmonic_projection(k: &SimplicialComplex, w: &MetricWeights, c: &Cochain) -> Result<Cochain> {
    let ctx = HodgeContext::new(k);
    let basis = ctx.harmonic_basis(w, c.degree, DEFAULT_TOLERANCE)?;
    ctx.harmonic_projection(&basis, w, c)
}

pub fn hodge_decompose(k: &SimplicialComplex, w: &MetricWeights, c: &Cochain) -> Result<HodgeDecomposition> {
    c.check(k)?;
    let ctx = HodgeContext::new(k);
    let basis = ctx.harmonic_basis(w, c.degree, DEFAULT_TOLERANCE)?;
    ctx.hodge_decompose(w, c, &basis)
}
