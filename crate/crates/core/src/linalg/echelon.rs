use std::any::Any;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::scalars::{Rational, Scalar};

use super::{LinalgError, Matrix, Subspace};

/// Reduced row echelon form with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon<S> {
    pub rref: Matrix<S>,
    pub pivots: Vec<usize>,
}

impl<S: Scalar> Echelon<S> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Nonzero rows only.
    pub fn basis_rows(&self) -> Vec<Vec<S>> {
        (0..self.rank())
            .map(|i| self.rref.row(i).to_vec())
            .collect()
    }

    /// Kernel basis read off the free columns.
    pub fn kernel_vectors(&self) -> Vec<Vec<S>> {
        let n = self.rref.cols();
        let mut is_pivot = vec![false; n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..n)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![S::zero(); n];
                v[f] = S::one();
                for (i, &p) in self.pivots.iter().enumerate() {
                    v[p] = -self.rref[(i, f)].clone();
                }
                v
            })
            .collect()
    }
}

/// Reduced row echelon form. Rational matrices go through fraction-free
/// elimination; everything else through Gauss-Jordan with the largest
/// available pivot.
pub fn rref<S: Scalar>(m: &Matrix<S>) -> Echelon<S> {
    if let Some(q) = (m as &dyn Any).downcast_ref::<Matrix<Rational>>() {
        let e: Box<dyn Any> = Box::new(bareiss_rref(q));
        return *e.downcast::<Echelon<S>>().expect("same type");
    }
    gauss_jordan(m)
}

fn gauss_jordan<S: Scalar>(m: &Matrix<S>) -> Echelon<S> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut best = None;
        let mut best_w = 0.0;
        for i in r..rows {
            let x = &a[(i, c)];
            if x.is_zero() {
                continue;
            }
            let w = x.pivot_weight();
            if best.is_none() || w > best_w {
                best = Some(i);
                best_w = w;
            }
        }
        let Some(p) = best else { continue };
        a.swap_rows(r, p);
        let inv = a[(r, c)].inv().expect("nonzero pivot");
        for j in c..cols {
            a[(r, j)] = a[(r, j)].clone() * &inv;
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                if a[(r, j)].is_zero() {
                    continue;
                }
                let t = f.clone() * &a[(r, j)];
                a[(i, j)] = a[(i, j)].clone() - &t;
            }
            a[(i, c)] = S::zero();
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { rref: a, pivots }
}

fn bareiss_rref(m: &Matrix<Rational>) -> Echelon<Rational> {
    let (rows, cols) = (m.rows(), m.cols());
    // clear denominators row by row
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();

    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            let f = a[i][c].clone();
            let piv = a[r][c].clone();
            for j in c + 1..cols {
                let v = (&piv * &a[i][j] - &f * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }

    // back substitution in rationals
    let mut out = Matrix::<Rational>::zeros(rows, cols);
    for (i, &c) in pivots.iter().enumerate() {
        let piv = a[i][c].clone();
        for j in 0..cols {
            if !a[i][j].is_zero() {
                out[(i, j)] =
                    Rational::from_bigints(a[i][j].clone(), piv.clone()).expect("nonzero pivot");
            }
        }
    }
    for (i, &c) in pivots.iter().enumerate().rev() {
        for k in 0..i {
            if out[(k, c)].is_zero() {
                continue;
            }
            let f = out[(k, c)].clone();
            for j in c..cols {
                if out[(i, j)].is_zero() {
                    continue;
                }
                let t = f.clone() * &out[(i, j)];
                out[(k, j)] = out[(k, j)].clone() - &t;
            }
        }
    }
    Echelon { rref: out, pivots }
}

/// Output of [`solve_rank`].
#[derive(Debug, Clone)]
pub struct Solved<S> {
    pub rank: usize,
    pub kernel: Subspace<S>,
    pub solution: Option<Matrix<S>>,
}

/// Rank and kernel of `m`, plus a particular solution of `m · X = rhs` when a
/// right-hand side is given.
pub fn solve_rank<S: Scalar>(
    m: &Matrix<S>,
    rhs: Option<&Matrix<S>>,
) -> Result<Solved<S>, LinalgError> {
    let e = rref(m);
    let kernel = Subspace::span(m.cols(), &e.kernel_vectors());
    let rank = e.rank();
    let solution = match rhs {
        None => None,
        Some(b) => {
            if b.rows() != m.rows() {
                return Err(LinalgError::DimensionMismatch(format!(
                    "system has {} rows, right-hand side {}",
                    m.rows(),
                    b.rows()
                )));
            }
            let aug = Matrix::hstack(&[m.clone(), b.clone()])?;
            let ea = rref(&aug);
            if ea.pivots.iter().any(|&p| p >= m.cols()) {
                return Err(LinalgError::Inconsistent);
            }
            let mut x = Matrix::zeros(m.cols(), b.cols());
            for (i, &p) in ea.pivots.iter().enumerate() {
                for j in 0..b.cols() {
                    x[(p, j)] = ea.rref[(i, m.cols() + j)].clone();
                }
            }
            Some(x)
        }
    };
    Ok(Solved {
        rank,
        kernel,
        solution,
    })
}

pub fn rank<S: Scalar>(m: &Matrix<S>) -> usize {
    rref(m).rank()
}

pub fn inverse<S: Scalar>(m: &Matrix<S>) -> Result<Matrix<S>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::DimensionMismatch(
            "inverse of a non-square matrix".into(),
        ));
    }
    let n = m.rows();
    let aug = Matrix::hstack(&[m.clone(), Matrix::identity(n)])?;
    let e = rref(&aug);
    if e.pivots.len() < n || e.pivots[n - 1] >= n {
        return Err(LinalgError::Singular);
    }
    let mut inv = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv[(i, j)] = e.rref[(i, n + j)].clone();
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{ComplexQuad, FloatComplex};

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_i64(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_has_full_rank() {
        let s = solve_rank(&Matrix::<Rational>::identity(4), None).unwrap();
        assert_eq!(s.rank, 4);
        assert_eq!(s.kernel.dim(), 0);
    }

    #[test]
    fn single_row_kernel() {
        let s = solve_rank(&q(&[&[1, 1]]), None).unwrap();
        assert_eq!(s.rank, 1);
        let expected = Subspace::span(2, &[vec![Rational::one(), Rational::from_i64(-1)]]);
        assert_eq!(s.kernel, expected);
    }

    #[test]
    fn zero_matrix_kernel_is_ambient() {
        let s = solve_rank(&Matrix::<Rational>::zeros(2, 3), None).unwrap();
        assert_eq!(s.rank, 0);
        assert_eq!(s.kernel, Subspace::full(3));
    }

    #[test]
    fn inconsistent_differs_from_mismatch() {
        let m = q(&[&[1, 1], &[2, 2]]);
        let b = q(&[&[1], &[3]]);
        assert_eq!(
            solve_rank(&m, Some(&b)).unwrap_err(),
            LinalgError::Inconsistent
        );
        let bad = q(&[&[1]]);
        assert!(matches!(
            solve_rank(&m, Some(&bad)),
            Err(LinalgError::DimensionMismatch(_))
        ));
        let ok = q(&[&[1], &[2]]);
        let x = solve_rank(&m, Some(&ok)).unwrap().solution.unwrap();
        assert_eq!(m.mul(&x).unwrap(), ok);
    }

    #[test]
    fn bareiss_matches_gauss_jordan() {
        let m = q(&[&[2, 4, -2, 1], &[1, 2, 0, 3], &[3, 6, -2, 4], &[0, 0, 5, 7]]);
        let e = rref(&m);
        let c = m.map(ComplexQuad::from_rational);
        let g = gauss_jordan(&c);
        assert_eq!(e.pivots, g.pivots);
        assert_eq!(e.rref.map(ComplexQuad::from_rational), g.rref);
    }

    #[test]
    fn float_rank_uses_tolerance() {
        let t = 1e-9;
        let m = Matrix::from_rows(vec![
            vec![
                FloatComplex::new(1.0, 0.0, t),
                FloatComplex::new(2.0, 0.0, t),
            ],
            vec![
                FloatComplex::new(2.0, 0.0, t),
                FloatComplex::new(4.0 + 1e-13, 0.0, t),
            ],
        ])
        .unwrap();
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn inverse_round_trip() {
        let m = q(&[&[2, 1], &[7, 4]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        assert_eq!(
            inverse(&q(&[&[1, 2], &[2, 4]])).unwrap_err(),
            LinalgError::Singular
        );
    }
}
