use std::fmt;

use crate::scalars::{Rational, RealScalar, Scalar, Sign};

use super::{LinalgError, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Definiteness {
    Positive,
    Negative,
    Indefinite,
    Degenerate,
}

impl fmt::Display for Definiteness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Definiteness::Positive => "positive definite",
            Definiteness::Negative => "negative definite",
            Definiteness::Indefinite => "indefinite",
            Definiteness::Degenerate => "degenerate",
        };
        f.write_str(s)
    }
}

/// A congruence `P* G P = D` (or `Pᵀ G P = D`) with `D` diagonal and the signs
/// of its pivots.
#[derive(Debug, Clone)]
pub struct DefinitenessCertificate<S: Scalar> {
    pub verdict: Definiteness,
    pub transform: Matrix<S>,
    pub pivots: Vec<S::Real>,
    pub signs: Vec<Sign>,
    pub conjugating: bool,
}

fn scale<S: Scalar>(m: &Matrix<S>) -> f64 {
    let mut best = 1.0f64;
    for i in 0..m.rows() {
        let row: f64 = (0..m.cols())
            .map(|j| {
                let (re, im) = m[(i, j)].to_complex_f64();
                re.hypot(im)
            })
            .sum();
        best = best.max(row);
    }
    best
}

impl<S: Scalar> DefinitenessCertificate<S> {
    /// Recomputes `P* G P` and checks it against the recorded pivots.
    pub fn verify(&self, g: &Matrix<S>) -> bool {
        let p = &self.transform;
        let pt = if self.conjugating {
            p.adjoint()
        } else {
            p.transpose()
        };
        let Ok(d) = pt.mul(g).and_then(|x| x.mul(p)) else {
            return false;
        };
        let n = d.rows();
        if n != self.pivots.len() {
            return false;
        }
        let tol = if n == 0 { 0.0 } else { d[(0, 0)].tolerance() };
        let close = |x: &S| {
            if tol == 0.0 {
                return x.is_zero();
            }
            // float residuals grow with the entries of P and G
            let (re, im) = x.to_complex_f64();
            re.hypot(im) <= tol * scale(p).powi(2) * scale(g).max(1.0)
        };
        (0..n).all(|i| {
            (0..n).all(|j| {
                if i == j {
                    close(&(d[(i, i)].clone() - &S::from_real(self.pivots[i].clone())))
                } else {
                    close(&d[(i, j)])
                }
            })
        }) && self
            .pivots
            .iter()
            .zip(&self.signs)
            .all(|(p, s)| p.sign() == *s)
    }

    pub fn count(&self, s: Sign) -> usize {
        self.signs.iter().filter(|&&x| x == s).count()
    }

    /// `(positive, negative, zero)` pivot counts.
    pub fn signature(&self) -> (usize, usize, usize) {
        (
            self.count(Sign::Positive),
            self.count(Sign::Negative),
            self.count(Sign::Zero),
        )
    }
}

/// Diagonalizes `g` by congruence; entries of the returned matrices stay in
/// the field of `g`.
fn diagonalize<S: Scalar>(g: &Matrix<S>, conjugating: bool) -> (Matrix<S>, Matrix<S>) {
    let n = g.rows();
    let mut a = g.clone();
    let mut p = Matrix::<S>::identity(n);
    let cj = |x: &S| if conjugating { x.conj() } else { x.clone() };

    // A <- E* A E with E = I + c·e_src·e_dstᵀ: col_dst += c·col_src, row_dst += c̄·row_src
    let add = |a: &mut Matrix<S>, p: &mut Matrix<S>, dst: usize, src: usize, c: &S| {
        for i in 0..n {
            let t = a[(i, src)].clone() * c;
            a[(i, dst)] = a[(i, dst)].clone() + &t;
            let t = p[(i, src)].clone() * c;
            p[(i, dst)] = p[(i, dst)].clone() + &t;
        }
        let cc = cj(c);
        for j in 0..n {
            let t = a[(src, j)].clone() * &cc;
            a[(dst, j)] = a[(dst, j)].clone() + &t;
        }
    };

    for k in 0..n {
        if a[(k, k)].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[(j, j)].is_zero()) {
                // symmetric swap of k and j
                a.swap_rows(k, j);
                let mut at = a.transpose();
                at.swap_rows(k, j);
                a = at.transpose();
                let mut pt = p.transpose();
                pt.swap_rows(k, j);
                p = pt.transpose();
            } else if let Some(j) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) {
                let akj = a[(k, j)].clone();
                let c = if conjugating && akj.re().is_zero() {
                    -S::imag_unit().expect("complex entry needs i")
                } else {
                    S::one()
                };
                add(&mut a, &mut p, k, j, &c);
            } else {
                continue;
            }
        }
        let inv = a[(k, k)].inv().expect("nonzero pivot");
        for j in k + 1..n {
            if a[(k, j)].is_zero() {
                continue;
            }
            let c = -(a[(k, j)].clone() * &inv);
            add(&mut a, &mut p, j, k, &c);
        }
    }
    (p, a)
}

/// Definiteness of the symmetric (or, with `conjugating`, hermitian) form `g`,
/// certified by a congruence diagonalization whose pivot signs are decided in
/// the real subfield.
pub fn hermitian_definiteness<S: Scalar>(
    g: &Matrix<S>,
    conjugating: bool,
) -> Result<DefinitenessCertificate<S>, LinalgError> {
    let ok = if conjugating {
        g.is_hermitian()
    } else {
        g.is_symmetric()
    };
    if !ok {
        return Err(LinalgError::NotSymmetric(if conjugating {
            "hermitian"
        } else {
            "symmetric"
        }));
    }
    let (p, d) = diagonalize(g, conjugating);
    let n = g.rows();
    let pivots: Vec<S::Real> = (0..n).map(|i| d[(i, i)].re()).collect();
    let signs: Vec<Sign> = pivots.iter().map(RealScalar::sign).collect();
    let has = |s| signs.contains(&s);
    let verdict = if has(Sign::Positive) && has(Sign::Negative) {
        Definiteness::Indefinite
    } else if has(Sign::Zero) {
        Definiteness::Degenerate
    } else if has(Sign::Negative) {
        Definiteness::Negative
    } else {
        Definiteness::Positive
    };
    Ok(DefinitenessCertificate {
        verdict,
        transform: p,
        pivots,
        signs,
        conjugating,
    })
}

/// `Pᵀ G P = D` for a symmetric rational `G`, with `D` diagonal and no square
/// roots introduced. Already-diagonal input gives `P = I`.
pub fn congruence_diagonalize(
    g: &Matrix<Rational>,
) -> Result<(Matrix<Rational>, Matrix<Rational>), LinalgError> {
    if !g.is_symmetric() {
        return Err(LinalgError::NotSymmetric("symmetric"));
    }
    Ok(diagonalize(g, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{ComplexQuad, RealQuad};

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_i64(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn definiteness_examples() {
        let c = hermitian_definiteness(&q(&[&[1, 0], &[0, 1]]), false).unwrap();
        assert_eq!(c.verdict, Definiteness::Positive);
        let c = hermitian_definiteness(&q(&[&[-1, 0], &[0, -1]]), false).unwrap();
        assert_eq!(c.verdict, Definiteness::Negative);
        let g = q(&[&[1, 2], &[2, 1]]);
        let c = hermitian_definiteness(&g, false).unwrap();
        assert_eq!(c.verdict, Definiteness::Indefinite);
        assert!(c.verify(&g));
        assert_eq!(c.signature(), (1, 1, 0));
        assert!(hermitian_definiteness(&q(&[&[1, 2], &[0, 1]]), false).is_err());
    }

    #[test]
    fn hermitian_zero_diagonal_uses_imaginary_shift() {
        let i = ComplexQuad::i();
        let z = ComplexQuad::zero();
        // [[0, i], [-i, 0]] has eigenvalues ±1
        let g = Matrix::from_rows(vec![vec![z.clone(), i.clone()], vec![-i, z]]).unwrap();
        let c = hermitian_definiteness(&g, true).unwrap();
        assert!(c.verify(&g));
        assert_eq!(c.verdict, Definiteness::Indefinite);
    }

    #[test]
    fn quad_pivots_use_exact_sign() {
        let s2 = ComplexQuad::from_real(RealQuad::sqrt_of(2).unwrap());
        let one = ComplexQuad::one();
        // [[1, √2], [√2, 3]]: det = 1 > 0
        let g = Matrix::from_rows(vec![
            vec![one.clone(), s2.clone()],
            vec![s2, ComplexQuad::from_i64(3)],
        ])
        .unwrap();
        let c = hermitian_definiteness(&g, true).unwrap();
        assert_eq!(c.verdict, Definiteness::Positive);
        assert!(c.verify(&g));
    }

    #[test]
    fn congruence_examples() {
        let g = q(&[&[0, 1], &[1, 0]]);
        let given = q(&[&[1, 1], &[1, -1]]);
        let d = given.transpose().mul(&g).unwrap().mul(&given).unwrap();
        assert_eq!(d, q(&[&[2, 0], &[0, -2]]));
        let (p, d) = congruence_diagonalize(&g).unwrap();
        assert_eq!(p.transpose().mul(&g).unwrap().mul(&p).unwrap(), d);
        assert_eq!(d[(0, 0)], Rational::from_i64(2));
        assert!(d[(1, 1)] < Rational::from_i64(0));
        assert!(d[(0, 1)].is_zero());

        let diag = q(&[&[3, 0, 0], &[0, -1, 0], &[0, 0, 7]]);
        let (p, d) = congruence_diagonalize(&diag).unwrap();
        assert_eq!(p, Matrix::identity(3));
        assert_eq!(d, diag);

        let (p, d) = congruence_diagonalize(&q(&[&[5]])).unwrap();
        assert_eq!(p, Matrix::identity(1));
        assert_eq!(d, q(&[&[5]]));
    }
}
