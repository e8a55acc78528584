//! Boundary matrices, rational Betti numbers and exact cocycle representatives.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::complex::{Cochain, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::exact::{self, IntColumn, IntMatrix};
use crate::linalg::{float, CsrMatrix};

/// `∂_k : C_k → C_{k-1}` with the alternating-face sign convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryOperator {
    pub degree: usize,
    /// Rows index `(k-1)`-simplices, columns index `k`-simplices.
    pub matrix: IntMatrix,
}

impl BoundaryOperator {
    /// The coboundary `d_{k-1} = ∂_kᵀ : C^{k-1} → C^k` as a sparse `f64` matrix.
    pub fn coboundary(&self) -> CsrMatrix {
        let triplets = self
            .matrix
            .columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (c, r, v as f64)))
            .collect();
        CsrMatrix::from_triplets(self.matrix.cols(), self.matrix.rows, triplets)
    }
}

pub fn boundary_matrix(k: &SimplicialComplex, degree: usize) -> Result<BoundaryOperator> {
    if degree == 0 || degree > k.dimension() {
        return Err(Error::DegreeOutOfRange { degree, max: k.dimension() });
    }
    let mut face = Vec::with_capacity(degree);
    let columns = k
        .simplices(degree)
        .iter()
        .map(|s| {
            let mut col: IntColumn<i64> = (0..=degree)
                .map(|skip| {
                    face.clear();
                    face.extend(s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                    let row = k.index_of(&face).expect("complex is downward closed");
                    (row, if skip % 2 == 0 { 1 } else { -1 })
                })
                .collect();
            col.sort_unstable();
            col
        })
        .collect();
    Ok(BoundaryOperator { degree, matrix: IntMatrix { rows: k.count(degree - 1), columns } })
}

/// Coboundary `d_k : C^k → C^{k+1}`; the zero map in the top degree.
pub fn coboundary(k: &SimplicialComplex, degree: usize) -> Result<CsrMatrix> {
    if degree > k.dimension() {
        return Err(Error::DegreeOutOfRange { degree, max: k.dimension() });
    }
    if degree == k.dimension() {
        return Ok(CsrMatrix::from_triplets(0, k.count(degree), Vec::new()));
    }
    Ok(boundary_matrix(k, degree + 1)?.coboundary())
}

/// Applies `d` to a cochain.
pub fn apply_coboundary(k: &SimplicialComplex, c: &Cochain) -> Result<Cochain> {
    c.check(k)?;
    let values = coboundary(k, c.degree)?.mul_vec(&c.values);
    Ok(Cochain { degree: c.degree + 1, values })
}

/// Real Betti numbers `b_0, …, b_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    pub fn get(&self, k: usize) -> usize {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn dimension(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }

    /// `b_k = b_{n-k}` for all `k`.
    pub fn is_dual_symmetric(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }
}

fn betti_from_ranks(k: &SimplicialComplex, rank: impl Fn(&IntMatrix) -> usize) -> Result<BettiVector> {
    let n = k.dimension();
    // ranks[d] = rank ∂_d, with ∂_0 = ∂_{n+1} = 0.
    let mut ranks = vec![0usize; n + 2];
    for d in 1..=n {
        ranks[d] = rank(&boundary_matrix(k, d)?.matrix);
    }
    Ok(BettiVector((0..=n).map(|d| k.count(d) - ranks[d] - ranks[d + 1]).collect()))
}

/// Betti numbers from exact rational ranks.
pub fn betti_numbers(k: &SimplicialComplex) -> BettiVector {
    betti_from_ranks(k, exact::rank).expect("degrees are in range")
}

/// Betti numbers from floating-point ranks (dense SVD for small matrices).
pub fn betti_numbers_float(k: &SimplicialComplex) -> BettiVector {
    betti_from_ranks(k, float::rank).expect("degrees are in range")
}

/// Alternating sum of face counts.
pub fn euler_characteristic(k: &SimplicialComplex) -> i64 {
    k.euler_characteristic()
}

/// `b_k = b_{n−k}` on a closed orientable pseudomanifold.
pub fn poincare_duality_check(k: &SimplicialComplex) -> Result<bool> {
    k.orient()?;
    Ok(betti_numbers(k).is_dual_symmetric())
}

/// Integer cocycles whose classes form a basis of `H^k(K; ℚ)`.
pub fn cohomology_basis(k: &SimplicialComplex, degree: usize) -> Result<Vec<IntColumn<BigInt>>> {
    let n = k.dimension();
    if degree > n {
        return Err(Error::DegreeOutOfRange { degree, max: n });
    }
    let rows = k.count(degree);
    let cocycles: Vec<IntColumn<BigInt>> = if degree == n {
        (0..rows).map(|i| vec![(i, BigInt::from(1))]).collect()
    } else {
        exact::kernel(&boundary_matrix(k, degree + 1)?.matrix.transpose())
    };
    let image: Vec<IntColumn<BigInt>> = if degree == 0 {
        Vec::new()
    } else {
        let d = boundary_matrix(k, degree)?.matrix.transpose();
        exact::reduce(&d, false).reduced_columns().into_iter().filter(|c| !c.is_empty()).collect()
    };
    let offset = image.len();
    let mut columns = image;
    columns.extend(cocycles);
    let reduced = exact::reduce_big(rows, columns);
    Ok(reduced.into_iter().skip(offset).filter(|c| !c.is_empty()).collect())
}

/// Converts an integer cochain to floating point.
pub fn to_cochain(k: &SimplicialComplex, degree: usize, column: &IntColumn<BigInt>) -> Cochain {
    let mut c = Cochain::zeros(k, degree);
    for (i, v) in column {
        c.values[*i] = v.to_f64().unwrap_or(f64::NAN);
    }
    c
}
