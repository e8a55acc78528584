//! How far a weighted complex is from carrying a formal discrete metric.
//!
//! For harmonic basis cochains `a`, `b` the product `c = a ⌣ b` is tested
//! against its harmonic projection: `‖c − Π_H c‖_w / ‖c‖_w`. A weighting is
//! discretely formal when every basis pair scores at most
//! [`FORMAL_THRESHOLD`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{Cochain, SimplicialComplex};
use crate::cup::front_back_faces;
use crate::error::{Error, Result};
use crate::hodge::{weighted_dot, HarmonicBasis, HodgeContext, MetricWeights, DEFAULT_TOLERANCE};
use crate::homology::{self, BettiVector};
use crate::linalg::exact::{self, IntMatrix};
use crate::linalg::rational;

/// `‖a ⌣ b‖_w ≤ ZERO_PRODUCT_THRESHOLD · ‖a‖_w ‖b‖_w` flags a vanishing product.
pub const ZERO_PRODUCT_THRESHOLD: f64 = 1e-12;

/// Aggregate residual at or below which a weighting counts as formal.
pub const FORMAL_THRESHOLD: f64 = 1e-8;

/// Residuals at or below this are rounding noise and reported as exactly 0.
pub const RESIDUAL_FLOOR: f64 = 1e-14;

/// Inputs must satisfy `‖Δa‖_w ≤ HARMONIC_INPUT_TOLERANCE · λ_max ‖a‖_w`.
pub const HARMONIC_INPUT_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairResidual {
    pub residual: f64,
    pub product_norm: f64,
    pub zero_product: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairRecord {
    pub left_degree: usize,
    pub left_index: usize,
    pub right_degree: usize,
    pub right_index: usize,
    pub product_norm: f64,
    pub residual: f64,
    pub zero_product: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormConstancy {
    pub degree: usize,
    pub index: usize,
    pub coefficient_of_variation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormalityReport {
    pub basis_sizes: Vec<usize>,
    /// Both orders of every unordered pair `(k,i) ≤ (l,j)` with `k + l ≤ n`.
    pub pairs: Vec<PairRecord>,
    /// Largest residual over pairs not flagged as zero products.
    pub aggregate: f64,
    pub formal: bool,
    pub norm_constancy: Vec<NormConstancy>,
}

fn check_harmonic(ctx: &HodgeContext<'_>, w: &MetricWeights, a: &Cochain) -> Result<()> {
    a.check(ctx.complex())?;
    let lap = ctx.laplacian(w, a.degree)?;
    let wk = w.degree(a.degree);
    let la = lap.apply(&a.values);
    let norm = weighted_dot(wk, &a.values, &a.values).sqrt();
    if norm == 0.0 {
        return Ok(());
    }
    let r = weighted_dot(wk, &la, &la).sqrt() / (lap.largest_eigenvalue().max(f64::MIN_POSITIVE) * norm);
    if r > HARMONIC_INPUT_TOLERANCE {
        return Err(Error::NotHarmonic(r));
    }
    Ok(())
}

fn residual_of(w: &MetricWeights, basis: &HarmonicBasis, c: &[f64], scale: f64) -> PairResidual {
    let wk = w.degree(basis.degree);
    let norm = weighted_dot(wk, c, c).sqrt();
    if norm <= ZERO_PRODUCT_THRESHOLD * scale {
        return PairResidual { residual: 0.0, product_norm: norm, zero_product: true };
    }
    let mut rest = c.to_vec();
    for h in &basis.vectors {
        let coef = weighted_dot(wk, &h.values, c);
        rest.iter_mut().zip(&h.values).for_each(|(r, x)| *r -= coef * x);
    }
    let residual = weighted_dot(wk, &rest, &rest).sqrt() / norm;
    PairResidual {
        residual: if residual <= RESIDUAL_FLOOR { 0.0 } else { residual },
        product_norm: norm,
        zero_product: false,
    }
}

/// `‖a⌣b − Π_H(a⌣b)‖_w / ‖a⌣b‖_w` for harmonic `a`, `b`.
pub fn pair_residual(k: &SimplicialComplex, w: &MetricWeights, a: &Cochain, b: &Cochain) -> Result<PairResidual> {
    let ctx = HodgeContext::new(k);
    check_harmonic(&ctx, w, a)?;
    check_harmonic(&ctx, w, b)?;
    let c = crate::cup::cup(k, a, b)?;
    let basis = ctx.harmonic_basis(w, c.degree, DEFAULT_TOLERANCE)?;
    Ok(residual_of(w, &basis, &c.values, w.norm(a) * w.norm(b)))
}

fn coefficient_of_variation(k: &SimplicialComplex, w: &MetricWeights, a: &Cochain) -> f64 {
    let nv = k.vertex_count();
    let (mut num, mut den) = (vec![0.0; nv], vec![0.0; nv]);
    for ((s, &ws), &x) in k.simplices(a.degree).iter().zip(w.degree(a.degree)).zip(&a.values) {
        for &v in s {
            num[v] += ws * x * x;
            den[v] += ws;
        }
    }
    let local: Vec<f64> = num.iter().zip(&den).map(|(n, d)| n / d).collect();
    let mean = local.iter().sum::<f64>() / nv as f64;
    let var = local.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / nv as f64;
    var.sqrt() / mean
}

/// Coefficient of variation of the vertex-localized norms of `a`.
pub fn norm_constancy(k: &SimplicialComplex, w: &MetricWeights, a: &Cochain) -> Result<f64> {
    a.check(k)?;
    if a.values.iter().all(|x| *x == 0.0) {
        return Err(Error::ZeroCochain);
    }
    check_harmonic(&HodgeContext::new(k), w, a)?;
    Ok(coefficient_of_variation(k, w, a))
}

/// Reusable evaluator: exact Betti numbers and face tables are computed once.
pub struct FormalityProbe<'a> {
    ctx: HodgeContext<'a>,
    /// `faces[k][l]` pairs front and back faces for products of degrees `k`, `l`.
    faces: Vec<Vec<Vec<(usize, usize)>>>,
}

impl<'a> FormalityProbe<'a> {
    pub fn new(k: &'a SimplicialComplex) -> Self {
        Self::with_betti(k, homology::betti_numbers(k))
    }

    pub fn with_betti(k: &'a SimplicialComplex, betti: BettiVector) -> Self {
        let n = k.dimension();
        let faces = (0..=n)
            .map(|a| (0..=n - a).map(|b| front_back_faces(k, a, b).expect("degrees in range")).collect())
            .collect();
        Self { ctx: HodgeContext::with_betti(k, betti), faces }
    }

    pub fn context(&self) -> &HodgeContext<'a> {
        &self.ctx
    }

    pub fn bases(&self, w: &MetricWeights) -> Result<Vec<HarmonicBasis>> {
        (0..=self.ctx.complex().dimension()).map(|k| self.ctx.harmonic_basis(w, k, DEFAULT_TOLERANCE)).collect()
    }

    pub fn report(&self, w: &MetricWeights) -> Result<FormalityReport> {
        let bases = self.bases(w)?;
        Ok(self.report_with(w, &bases))
    }

    pub fn report_with(&self, w: &MetricWeights, bases: &[HarmonicBasis]) -> FormalityReport {
        let k = self.ctx.complex();
        let n = k.dimension();
        let entries: Vec<(usize, usize)> =
            bases.iter().flat_map(|b| (0..b.len()).map(move |i| (b.degree, i))).collect();
        let mut pairs = Vec::new();
        for (x, &(p, i)) in entries.iter().enumerate() {
            for &(q, j) in &entries[x..] {
                if p + q > n {
                    continue;
                }
                pairs.push(self.record(w, bases, (p, i), (q, j)));
                if (p, i) != (q, j) {
                    pairs.push(self.record(w, bases, (q, j), (p, i)));
                }
            }
        }
        let aggregate = pairs.iter().filter(|r| !r.zero_product).map(|r| r.residual).fold(0.0, f64::max);
        let norm_constancy = bases
            .iter()
            .flat_map(|b| {
                b.vectors.iter().enumerate().map(move |(index, v)| NormConstancy {
                    degree: b.degree,
                    index,
                    coefficient_of_variation: coefficient_of_variation(k, w, v),
                })
            })
            .collect();
        FormalityReport {
            basis_sizes: bases.iter().map(HarmonicBasis::len).collect(),
            pairs,
            aggregate,
            formal: aggregate <= FORMAL_THRESHOLD,
            norm_constancy,
        }
    }

    fn record(
        &self,
        w: &MetricWeights,
        bases: &[HarmonicBasis],
        (p, i): (usize, usize),
        (q, j): (usize, usize),
    ) -> PairRecord {
        let a = &bases[p].vectors[i].values;
        let b = &bases[q].vectors[j].values;
        let c: Vec<f64> = self.faces[p][q].iter().map(|&(f, g)| a[f] * b[g]).collect();
        // Basis vectors are w-orthonormal.
        let r = residual_of(w, &bases[p + q], &c, 1.0);
        PairRecord {
            left_degree: p,
            left_index: i,
            right_degree: q,
            right_index: j,
            product_norm: r.product_norm,
            residual: r.residual,
            zero_product: r.zero_product,
        }
    }

    pub fn aggregate(&self, w: &MetricWeights) -> Result<f64> {
        Ok(self.report(w)?.aggregate)
    }
}

pub fn formality_residual(k: &SimplicialComplex, w: &MetricWeights) -> Result<FormalityReport> {
    FormalityProbe::new(k).report(w)
}

/// Unit-weight residuals in exact rational arithmetic over integer bases of
/// `ker Δ_k = ker d_k ∩ ker d_{k−1}ᵀ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactFormalityReport {
    pub basis_sizes: Vec<usize>,
    /// Largest squared residual as a reduced fraction.
    pub aggregate_squared: String,
    pub aggregate: f64,
    pub pairs_tested: usize,
    pub zero_products: usize,
}

/// Integer basis of the unit-weight harmonic space in each degree.
pub fn exact_harmonic_bases(k: &SimplicialComplex) -> Result<Vec<Vec<Vec<BigInt>>>> {
    let n = k.dimension();
    (0..=n)
        .map(|d| {
            let upper = if d < n { Some(homology::boundary_matrix(k, d + 1)?.matrix.transpose()) } else { None };
            let lower = if d > 0 { Some(homology::boundary_matrix(k, d)?.matrix) } else { None };
            let upper_rows = upper.as_ref().map_or(0, |m| m.rows);
            let columns = (0..k.count(d))
                .map(|j| {
                    let mut col: Vec<(usize, i64)> = upper.as_ref().map_or_else(Vec::new, |m| m.columns[j].clone());
                    if let Some(m) = &lower {
                        col.extend(m.columns[j].iter().map(|&(r, v)| (r + upper_rows, v)));
                    }
                    col
                })
                .collect();
            let stacked = IntMatrix { rows: upper_rows + lower.as_ref().map_or(0, |m| m.rows), columns };
            Ok(exact::kernel(&stacked)
                .into_iter()
                .map(|col| {
                    let mut v = vec![BigInt::zero(); k.count(d)];
                    for (i, x) in col {
                        v[i] = x;
                    }
                    v
                })
                .collect())
        })
        .collect()
}

fn dot_big(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

pub fn exact_formality_residual(k: &SimplicialComplex) -> Result<ExactFormalityReport> {
    let n = k.dimension();
    let bases = exact_harmonic_bases(k)?;
    let betti = homology::betti_numbers(k);
    for (d, b) in bases.iter().enumerate() {
        if b.len() != betti.get(d) {
            return Err(Error::NullspaceMismatch { degree: d, expected: betti.get(d), found: b.len() });
        }
    }
    // Inverse Gram matrices turn Hᵀc into projection coefficients.
    let grams: Vec<Vec<Vec<BigRational>>> = bases
        .iter()
        .map(|b| b.iter().map(|x| b.iter().map(|y| BigRational::from_integer(dot_big(x, y))).collect()).collect())
        .collect();
    let mut worst = BigRational::zero();
    let (mut tested, mut zeros) = (0, 0);
    for p in 0..=n {
        for q in 0..=n - p {
            let faces = front_back_faces(k, p, q)?;
            for a in &bases[p] {
                for b in &bases[q] {
                    tested += 1;
                    let c: Vec<BigInt> = faces.iter().map(|&(f, g)| &a[f] * &b[g]).collect();
                    let cc = dot_big(&c, &c);
                    if cc.is_zero() {
                        zeros += 1;
                        continue;
                    }
                    let h = &bases[p + q];
                    let rhs: Vec<BigRational> = h.iter().map(|x| BigRational::from_integer(dot_big(x, &c))).collect();
                    let projected = if h.is_empty() {
                        BigRational::zero()
                    } else {
                        let coef = rational::solve(&grams[p + q], &rhs)
                            .ok_or_else(|| Error::RouteMismatch("singular harmonic Gram matrix".into()))?;
                        coef.iter().zip(&rhs).map(|(x, y)| x * y).sum()
                    };
                    let cc = BigRational::from_integer(cc);
                    let ratio = (&cc - projected) / cc;
                    if ratio > worst {
                        worst = ratio;
                    }
                }
            }
        }
    }
    Ok(ExactFormalityReport {
        basis_sizes: bases.iter().map(Vec::len).collect(),
        aggregate: worst.to_f64().unwrap_or(f64::NAN).max(0.0).sqrt(),
        aggregate_squared: worst.to_string(),
        pairs_tested: tested,
        zero_products: zeros,
    })
}

/// Starting point of the weight search.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchInit {
    Unit,
    /// Log-uniform in `[1/2, 2]`, drawn from the search seed.
    Random,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Maximum number of full coordinate sweeps.
    pub max_iterations: usize,
    /// Stop once a sweep improves the aggregate by less than this.
    pub tolerance: f64,
    /// Initial log-space step; a move multiplies one weight by `e^{±step}`.
    pub step: f64,
    /// Stop once the halved step drops below this.
    pub min_step: f64,
    pub seed: u64,
    /// Degrees whose weights may move; `None` frees every degree.
    pub free_degrees: Option<Vec<usize>>,
    pub init: SearchInit,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            max_iterations: 10,
            tolerance: 1e-10,
            step: 0.5,
            min_step: 1e-3,
            seed: 0,
            free_degrees: None,
            init: SearchInit::Unit,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self, k: &SimplicialComplex) -> Result<()> {
        let bad = |m: String| Err(Error::BadConfig(m));
        if !(self.step > 0.0 && self.step.is_finite()) {
            return bad(format!("step must be positive, got {}", self.step));
        }
        if !(self.min_step > 0.0 && self.min_step <= self.step) {
            return bad(format!("min_step must lie in (0, step], got {}", self.min_step));
        }
        if !(self.tolerance >= 0.0 && self.tolerance.is_finite()) {
            return bad(format!("tolerance must be nonnegative, got {}", self.tolerance));
        }
        if let Some(d) = self.free_degrees.iter().flatten().find(|&&d| d > k.dimension()) {
            return bad(format!("free degree {d} exceeds dimension {}", k.dimension()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub weights: MetricWeights,
    /// Aggregate after initialization, then after each sweep. Nonincreasing.
    pub trace: Vec<f64>,
    pub evaluations: usize,
}

/// Derivative-free coordinate search over log-weights.
///
/// Each sweep visits the free coordinates in a seeded random order and tries
/// `w ← w·e^{+step}` then `w ← w·e^{−step}`, keeping a move only when it
/// strictly lowers the aggregate residual. Candidates whose evaluation fails
/// are rejected. The step halves after a sweep without improvement.
pub fn search_formal_weights(k: &SimplicialComplex, cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate(k)?;
    let probe = FormalityProbe::new(k);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut w = match cfg.init {
        SearchInit::Unit => MetricWeights::unit(k),
        SearchInit::Random => MetricWeights::log_uniform(k, 0.5, 2.0, &mut rng),
    };
    let mut best = probe.aggregate(&w)?;
    let mut trace = vec![best];
    let mut evaluations = 1;
    let free: Vec<usize> = match &cfg.free_degrees {
        Some(d) => {
            let mut d = d.clone();
            d.sort_unstable();
            d.dedup();
            d
        }
        None => (0..=k.dimension()).collect(),
    };
    let mut coords: Vec<(usize, usize)> = free.iter().flat_map(|&d| (0..k.count(d)).map(move |i| (d, i))).collect();
    let mut step = cfg.step;
    for _ in 0..cfg.max_iterations {
        if best <= FORMAL_THRESHOLD {
            break;
        }
        coords.shuffle(&mut rng);
        let start = best;
        for &(d, i) in &coords {
            for sign in [1.0, -1.0] {
                let mut cand = w.clone();
                cand.degree_mut(d)[i] *= (sign * step).exp();
                evaluations += 1;
                if let Ok(v) = probe.aggregate(&cand) {
                    if v < best {
                        best = v;
                        w = cand;
                        break;
                    }
                }
            }
        }
        trace.push(best);
        let gain = start - best;
        if gain == 0.0 {
            step /= 2.0;
            if step < cfg.min_step {
                break;
            }
        } else if gain < cfg.tolerance {
            break;
        }
    }
    Ok(SearchOutcome { weights: w, trace, evaluations })
}

/// `iteration,aggregate` rows with shortest round-trip float formatting.
pub fn trace_csv(trace: &[f64]) -> String {
    let mut out = String::from("iteration,aggregate\n");
    for (i, v) in trace.iter().enumerate() {
        out.push_str(&format!("{i},{v:e}\n"));
    }
    out
}
