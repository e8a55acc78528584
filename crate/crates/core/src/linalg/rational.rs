use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Counts of positive, negative and zero eigenvalues of a symmetric
/// rational matrix, by symmetric Gaussian elimination (Sylvester's law of
/// inertia). When every remaining diagonal entry vanishes, a congruence
/// `e_i ← e_i + e_j` with `a_ij ≠ 0` produces the pivot `2 a_ij`.
pub fn inertia(matrix: &[Vec<BigRational>]) -> (usize, usize, usize) {
    let mut a: Vec<Vec<BigRational>> = matrix.to_vec();
    let mut n = a.len();
    let (mut pos, mut neg) = (0, 0);
    while n > 0 {
        let pivot = (0..n).find(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let Some((i, j)) = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero())
                else {
                    break;
                };
                // Row and column i += row and column j.
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[i][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][i] += v;
                }
                i
            }
        };
        // Move the pivot to the last position and eliminate.
        a.swap(p, n - 1);
        for row in a.iter_mut() {
            row.swap(p, n - 1);
        }
        let d = a[n - 1][n - 1].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for r in 0..n - 1 {
            if a[r][n - 1].is_zero() {
                continue;
            }
            let f = &a[r][n - 1] / &d;
            for c in 0..n - 1 {
                let delta = &f * &a[n - 1][c];
                a[r][c] -= delta;
            }
        }
        n -= 1;
        a.truncate(n);
        for row in a.iter_mut() {
            row.truncate(n);
        }
    }
    (pos, neg, matrix.len() - pos - neg)
}

/// Solves `A x = b` for square nonsingular `A`; `None` if singular.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> =
        a.iter().zip(b).map(|(row, x)| row.iter().cloned().chain(std::iter::once(x.clone())).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let d = m[c][c].clone();
        for v in m[c].iter_mut() {
            *v /= &d;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for cc in c..=n {
                    let delta = &f * &m[c][cc];
                    m[r][cc] -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Determinant by Gaussian elimination.
pub fn determinant(a: &[Vec<BigRational>]) -> BigRational {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = BigRational::from_integer(1.into());
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(c, p);
            det = -det;
        }
        det *= &m[c][c];
        for r in c + 1..n {
            if !m[r][c].is_zero() {
                let f = &m[r][c] / &m[c][c];
                for cc in c..n {
                    let delta = &f * &m[c][cc];
                    m[r][cc] -= delta;
                }
            }
        }
    }
    det
}
