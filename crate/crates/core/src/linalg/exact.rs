//! Exact rank and kernel computations over ℚ by fraction-free elimination.
//!
//! Column operations keep integer entries: a column is cleared against a
//! pivot column by cross-multiplying with the two leading coefficients and
//! then dividing out the content gcd. Arithmetic runs in `i128` with overflow
//! checks and restarts in `BigInt` if any operation overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, Signed};

/// Sparse integer column: `(row, value)` sorted by row, no zeros.
pub type IntColumn<T> = Vec<(usize, T)>;

/// Column-major sparse integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub columns: Vec<IntColumn<i64>>,
}

impl IntMatrix {
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn transpose(&self) -> Self {
        let mut columns = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                columns[r].push((c, v));
            }
        }
        Self { rows: self.cols(), columns }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0i64; self.cols()]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                d[r][c] = v;
            }
        }
        d
    }
}

/// Integer types the eliminator can run over.
pub trait ExactInt: Clone + Integer + Signed + CheckedMul + CheckedSub + From<i64> {}
impl<T: Clone + Integer + Signed + CheckedMul + CheckedSub + From<i64>> ExactInt for T {}

struct Overflow;

/// `p·x − q·y` on sparse columns.
fn combine<T: ExactInt>(p: &T, x: &[(usize, T)], q: &T, y: &[(usize, T)]) -> Result<IntColumn<T>, Overflow> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        let (row, value) = if take_x {
            let r = (x[i].0, p.checked_mul(&x[i].1).ok_or(Overflow)?);
            i += 1;
            r
        } else if take_y {
            let r = (y[j].0, -(q.checked_mul(&y[j].1).ok_or(Overflow)?));
            j += 1;
            r
        } else {
            let a = p.checked_mul(&x[i].1).ok_or(Overflow)?;
            let b = q.checked_mul(&y[j].1).ok_or(Overflow)?;
            let r = (x[i].0, a.checked_sub(&b).ok_or(Overflow)?);
            i += 1;
            j += 1;
            r
        };
        if !value.is_zero() {
            out.push((row, value));
        }
    }
    Ok(out)
}

fn divide_content<T: ExactInt>(r: &mut IntColumn<T>, v: &mut Option<IntColumn<T>>) {
    let mut g = T::zero();
    for (_, x) in r.iter().chain(v.iter().flatten()) {
        g = g.gcd(x);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() {
        return;
    }
    for (_, x) in r.iter_mut().chain(v.iter_mut().flatten()) {
        *x = x.div_floor(&g);
    }
}

/// Result of reducing every column against earlier pivots (`R = A·V`).
#[derive(Clone, Debug)]
pub struct Reduction<T> {
    pub reduced: Vec<IntColumn<T>>,
    /// Column operations, present when tracking was requested. Column `j` has
    /// a nonzero entry at row `j` and otherwise only rows `< j`.
    pub transform: Option<Vec<IntColumn<T>>>,
}

impl<T: ExactInt> Reduction<T> {
    pub fn rank(&self) -> usize {
        self.reduced.iter().filter(|c| !c.is_empty()).count()
    }

    /// Kernel basis: transform columns whose reduced column vanished.
    pub fn kernel(&self) -> Vec<IntColumn<T>> {
        let v = self.transform.as_ref().expect("kernel requires a tracked reduction");
        self.reduced.iter().zip(v).filter(|(r, _)| r.is_empty()).map(|(_, v)| v.clone()).collect()
    }

    /// Row index of the lowest entry of each nonzero reduced column.
    pub fn pivot_rows(&self) -> Vec<usize> {
        self.reduced.iter().filter_map(|c| c.last().map(|&(r, _)| r)).collect()
    }
}

fn reduce_in<T: ExactInt>(rows: usize, columns: Vec<IntColumn<T>>, track: bool) -> Result<Reduction<T>, Overflow> {
    let n = columns.len();
    let mut pivot_of_row: Vec<Option<usize>> = vec![None; rows];
    let mut reduced: Vec<IntColumn<T>> = Vec::with_capacity(n);
    let mut transform: Vec<IntColumn<T>> = Vec::with_capacity(if track { n } else { 0 });
    for (j, mut r) in columns.into_iter().enumerate() {
        let mut v = track.then(|| vec![(j, T::one())]);
        while let Some((low, b)) = r.last().cloned() {
            let Some(p) = pivot_of_row[low] else {
                pivot_of_row[low] = Some(j);
                break;
            };
            let a = reduced[p].last().expect("pivot column is nonzero").1.clone();
            let g = a.gcd(&b);
            let (pa, qb) = (a.div_floor(&g), b.div_floor(&g));
            r = combine(&pa, &r, &qb, &reduced[p])?;
            if let Some(vc) = v.as_mut() {
                *vc = combine(&pa, vc, &qb, &transform[p])?;
            }
            divide_content(&mut r, &mut v);
        }
        reduced.push(r);
        if let Some(vc) = v {
            transform.push(vc);
        }
    }
    Ok(Reduction { reduced, transform: track.then_some(transform) })
}

fn lift<T: ExactInt>(columns: &[IntColumn<i64>]) -> Vec<IntColumn<T>> {
    columns.iter().map(|c| c.iter().map(|&(r, v)| (r, T::from(v))).collect()).collect()
}

/// Either arithmetic width, whichever finished without overflow.
#[derive(Clone, Debug)]
pub enum AnyReduction {
    Small(Reduction<i128>),
    Big(Reduction<BigInt>),
}

impl AnyReduction {
    pub fn rank(&self) -> usize {
        match self {
            Self::Small(r) => r.rank(),
            Self::Big(r) => r.rank(),
        }
    }

    pub fn kernel(&self) -> Vec<IntColumn<BigInt>> {
        match self {
            Self::Small(r) => r.kernel().iter().map(widen).collect(),
            Self::Big(r) => r.kernel(),
        }
    }

    pub fn pivot_rows(&self) -> Vec<usize> {
        match self {
            Self::Small(r) => r.pivot_rows(),
            Self::Big(r) => r.pivot_rows(),
        }
    }

    pub fn reduced_columns(&self) -> Vec<IntColumn<BigInt>> {
        match self {
            Self::Small(r) => r.reduced.iter().map(widen).collect(),
            Self::Big(r) => r.reduced.clone(),
        }
    }
}

fn widen(c: &IntColumn<i128>) -> IntColumn<BigInt> {
    c.iter().map(|&(i, v)| (i, BigInt::from(v))).collect()
}

/// Reduces columns that may already carry large entries; returns the
/// reduced columns.
pub fn reduce_big(rows: usize, columns: Vec<IntColumn<BigInt>>) -> Vec<IntColumn<BigInt>> {
    let narrow: Option<Vec<IntColumn<i128>>> =
        columns.iter().map(|c| c.iter().map(|(i, v)| i128::try_from(v).ok().map(|v| (*i, v))).collect()).collect();
    if let Some(narrow) = narrow {
        if let Ok(r) = reduce_in::<i128>(rows, narrow, false) {
            return r.reduced.iter().map(widen).collect();
        }
    }
    match reduce_in::<BigInt>(rows, columns, false) {
        Ok(r) => r.reduced,
        Err(Overflow) => unreachable!("BigInt arithmetic cannot overflow"),
    }
}

/// Reduces the columns of `m`, recording column operations when `track` is set.
pub fn reduce(m: &IntMatrix, track: bool) -> AnyReduction {
    match reduce_in::<i128>(m.rows, lift(&m.columns), track) {
        Ok(r) => AnyReduction::Small(r),
        Err(Overflow) => match reduce_in::<BigInt>(m.rows, lift(&m.columns), track) {
            Ok(r) => AnyReduction::Big(r),
            Err(Overflow) => unreachable!("BigInt arithmetic cannot overflow"),
        },
    }
}

/// Matrices with at most this many columns use dense Bareiss elimination.
pub const DENSE_EXACT_COLUMNS: usize = 200;

/// Exact rank over ℚ.
pub fn rank(m: &IntMatrix) -> usize {
    if m.cols() == 0 || m.rows == 0 {
        return 0;
    }
    if m.cols() <= DENSE_EXACT_COLUMNS {
        bareiss_rank(&m.to_dense())
    } else {
        reduce(m, false).rank()
    }
}

/// Basis of the rational kernel, as integer vectors.
pub fn kernel(m: &IntMatrix) -> Vec<IntColumn<BigInt>> {
    reduce(m, true).kernel()
}

/// Rank by dense fraction-free (Bareiss) elimination.
pub fn bareiss_rank(dense: &[Vec<i64>]) -> usize {
    bareiss_in::<i128>(dense).unwrap_or_else(|Overflow| {
        bareiss_in::<BigInt>(dense).unwrap_or_else(|Overflow| unreachable!("BigInt arithmetic cannot overflow"))
    })
}

fn bareiss_in<T: ExactInt>(dense: &[Vec<i64>]) -> Result<usize, Overflow> {
    let rows = dense.len();
    let cols = dense.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<T>> = dense.iter().map(|r| r.iter().map(|&v| T::from(v)).collect()).collect();
    let mut prev = T::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for cc in c + 1..cols {
                let x = a[rank][c].checked_mul(&a[r][cc]).ok_or(Overflow)?;
                let y = a[r][c].checked_mul(&a[rank][cc]).ok_or(Overflow)?;
                // Exact division by the previous pivot (Sylvester's identity).
                a[r][cc] = x.checked_sub(&y).ok_or(Overflow)?.div_floor(&prev);
            }
            a[r][c] = T::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    Ok(rank)
}
