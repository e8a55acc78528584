//! Alexander–Whitney cup products and the middle-dimensional intersection form.
//!
//! On a simplex `(v_0 < … < v_{k+l})` the product of a `k`-cochain `a` and an
//! `l`-cochain `b` is `a(v_0…v_k) · b(v_k…v_{k+l})`. The form is computed
//! twice: in floating point on a weighted harmonic basis, and exactly on
//! integer cocycle representatives. Their inertia must agree.

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::complex::{Cochain, Orientation, SimplicialComplex};
use crate::error::{Error, Result};
use crate::hodge::{HodgeContext, MetricWeights, DEFAULT_TOLERANCE};
use crate::homology;
use crate::linalg::rational;

/// Relative eigenvalue threshold below which the form counts as degenerate.
pub const ZERO_EIGENVALUE_THRESHOLD: f64 = 1e-8;

/// For every `(k+l)`-simplex, the indices of its front `k`-face and back `l`-face.
pub fn front_back_faces(k: &SimplicialComplex, front: usize, back: usize) -> Result<Vec<(usize, usize)>> {
    let top = front + back;
    if top > k.dimension() {
        return Err(Error::DegreeOutOfRange { degree: top, max: k.dimension() });
    }
    Ok(k.simplices(top)
        .iter()
        .map(|s| {
            let f = k.index_of(&s[..=front]).expect("front face is stored");
            let b = k.index_of(&s[front..]).expect("back face is stored");
            (f, b)
        })
        .collect())
}

pub fn cup(k: &SimplicialComplex, a: &Cochain, b: &Cochain) -> Result<Cochain> {
    a.check(k)?;
    b.check(k)?;
    let faces = front_back_faces(k, a.degree, b.degree)?;
    Ok(Cochain { degree: a.degree + b.degree, values: faces.iter().map(|&(f, g)| a.values[f] * b.values[g]).collect() })
}

/// `Σ_facets sign · c(facet)`.
pub fn evaluate_on_fundamental_class(k: &SimplicialComplex, orientation: &Orientation, c: &Cochain) -> Result<f64> {
    c.check(k)?;
    if c.degree != k.dimension() {
        return Err(Error::DegreeOutOfRange { degree: c.degree, max: k.dimension() });
    }
    if orientation.facet_signs.len() != c.len() {
        return Err(Error::NonOrientable);
    }
    Ok(orientation.facet_signs.iter().zip(&c.values).map(|(&s, v)| s as f64 * v).sum())
}

/// Exact `⟨a ⌣ b, [K]⟩` for integer cochains given densely.
pub fn pairing_exact(
    k: &SimplicialComplex,
    orientation: &Orientation,
    a: (usize, &[BigInt]),
    b: (usize, &[BigInt]),
) -> Result<BigInt> {
    if a.0 + b.0 != k.dimension() {
        return Err(Error::DegreeOutOfRange { degree: a.0 + b.0, max: k.dimension() });
    }
    let faces = front_back_faces(k, a.0, b.0)?;
    let mut total = BigInt::zero();
    for (&(f, g), &s) in faces.iter().zip(&orientation.facet_signs) {
        if a.1[f].is_zero() || b.1[g].is_zero() {
            continue;
        }
        let term = &a.1[f] * &b.1[g];
        if s > 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormKind {
    /// Middle degree even: symmetric form with a signature.
    Symmetric,
    /// Middle degree odd: skew form, only its rank is meaningful.
    Skew,
}

/// The pairing computed on integer cocycle representatives.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactForm {
    /// Entries as reduced fractions `p/q` (or integers).
    pub matrix: Vec<Vec<String>>,
    pub determinant: String,
    pub rank: usize,
    pub b_plus: Option<usize>,
    pub b_minus: Option<usize>,
}

/// Middle-degree cup pairing of a closed oriented even-dimensional complex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntersectionForm {
    pub degree: usize,
    pub kind: FormKind,
    /// `(Q ± Qᵀ)/2` on the w-orthonormal harmonic basis.
    pub matrix: Vec<Vec<f64>>,
    pub rank: usize,
    pub b_plus: Option<usize>,
    pub b_minus: Option<usize>,
    pub b_zero: usize,
    pub signature: Option<i64>,
    pub exact: ExactForm,
}

pub fn intersection_form(k: &SimplicialComplex, w: &MetricWeights) -> Result<IntersectionForm> {
    let n = k.dimension();
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    let orientation = k.orient()?;
    let ctx = HodgeContext::new(k);
    if !ctx.betti().is_dual_symmetric() {
        return Err(Error::DualityFailure(ctx.betti().0.clone()));
    }
    intersection_form_in(&ctx, &orientation, w)
}

pub fn intersection_form_in(
    ctx: &HodgeContext<'_>,
    orientation: &Orientation,
    w: &MetricWeights,
) -> Result<IntersectionForm> {
    let k = ctx.complex();
    let n = k.dimension();
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    let m = n / 2;
    let kind = if m.is_multiple_of(2) { FormKind::Symmetric } else { FormKind::Skew };
    let basis = ctx.harmonic_basis(w, m, DEFAULT_TOLERANCE)?;
    let size = basis.len();
    let faces = front_back_faces(k, m, m)?;
    let raw = DMatrix::from_fn(size, size, |i, j| {
        let (a, b) = (&basis.vectors[i].values, &basis.vectors[j].values);
        faces.iter().zip(&orientation.facet_signs).map(|(&(f, g), &s)| s as f64 * a[f] * b[g]).sum::<f64>()
    });
    let q = match kind {
        FormKind::Symmetric => (&raw + raw.transpose()) * 0.5,
        FormKind::Skew => (&raw - raw.transpose()) * 0.5,
    };
    let exact = exact_form(k, orientation, m, kind)?;

    let (rank, b_plus, b_minus, b_zero) = if size == 0 {
        (0, Some(0), Some(0), 0)
    } else {
        match kind {
            FormKind::Symmetric => {
                let eig = SymmetricEigen::new(q.clone()).eigenvalues;
                let scale = eig.iter().fold(0.0f64, |s, x| s.max(x.abs()));
                let cut = ZERO_EIGENVALUE_THRESHOLD * scale;
                let plus = eig.iter().filter(|&&x| x > cut).count();
                let minus = eig.iter().filter(|&&x| x < -cut).count();
                (plus + minus, Some(plus), Some(minus), size - plus - minus)
            }
            FormKind::Skew => {
                let sv = q.clone().svd(false, false).singular_values;
                let cut = ZERO_EIGENVALUE_THRESHOLD * sv.max();
                let r = sv.iter().filter(|&&s| s > cut).count();
                (r, None, None, size - r)
            }
        }
    };
    if b_zero > 0 {
        return Err(Error::DegenerateForm(b_zero));
    }
    if exact.rank != rank || exact.b_plus != b_plus || exact.b_minus != b_minus {
        return Err(Error::RouteMismatch(format!(
            "harmonic form has rank {rank}, (b+, b-) = {b_plus:?}/{b_minus:?}; cocycle form has rank {}, {:?}/{:?}",
            exact.rank, exact.b_plus, exact.b_minus
        )));
    }
    Ok(IntersectionForm {
        degree: m,
        kind,
        matrix: (0..size).map(|i| (0..size).map(|j| q[(i, j)]).collect()).collect(),
        rank,
        b_plus,
        b_minus,
        b_zero,
        signature: b_plus.zip(b_minus).map(|(p, q)| p as i64 - q as i64),
        exact,
    })
}

fn exact_form(k: &SimplicialComplex, orientation: &Orientation, m: usize, kind: FormKind) -> Result<ExactForm> {
    let reps = homology::cohomology_basis(k, m)?;
    let len = k.count(m);
    let dense: Vec<Vec<BigInt>> = reps
        .iter()
        .map(|r| {
            let mut v = vec![BigInt::zero(); len];
            for (i, x) in r {
                v[*i] = x.clone();
            }
            v
        })
        .collect();
    let size = dense.len();
    let mut q = vec![vec![BigRational::zero(); size]; size];
    for i in 0..size {
        for j in 0..size {
            let v = pairing_exact(k, orientation, (m, &dense[i]), (m, &dense[j]))?;
            q[i][j] = BigRational::from_integer(v);
        }
    }
    // Class-level pairing is already (anti)symmetric; averaging only touches
    // representatives whose cochain-level products differ.
    let half = BigRational::new(1.into(), 2.into());
    let sym: Vec<Vec<BigRational>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| match kind {
                    FormKind::Symmetric => (&q[i][j] + &q[j][i]) * &half,
                    FormKind::Skew => (&q[i][j] - &q[j][i]) * &half,
                })
                .collect()
        })
        .collect();
    let det = rational::determinant(&sym);
    let (rank, b_plus, b_minus) = match kind {
        FormKind::Symmetric => {
            let (p, n, _) = rational::inertia(&sym);
            (p + n, Some(p), Some(n))
        }
        FormKind::Skew => (rational_rank(&sym), None, None),
    };
    Ok(ExactForm {
        matrix: sym.iter().map(|row| row.iter().map(ToString::to_string).collect()).collect(),
        determinant: det.to_string(),
        rank,
        b_plus,
        b_minus,
    })
}

fn rational_rank(a: &[Vec<BigRational>]) -> usize {
    let mut m = a.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in rank + 1..rows {
            if !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                for cc in c..cols {
                    let d = &f * &m[rank][cc];
                    m[r][cc] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}
