//! The weight-2 structure induced on `End(H₁)` by a polarized weight-1
//! structure. Endomorphisms are flattened row-major: `f ↦ (f_00, f_01, …)`.

use crate::linalg::{inverse, LinalgError, Matrix, Subspace};
use crate::scalars::{Rational, Scalar};

use super::{validate_weight1, HodgeError, WeightOneHS, WeightTwoHS};

pub fn flatten<S: Scalar>(f: &Matrix<S>) -> Vec<S> {
    f.row_vecs().concat()
}

pub fn unflatten<S: Scalar>(m: usize, v: &[S]) -> Matrix<S> {
    Matrix::from_rows(v.chunks(m).map(<[S]>::to_vec).collect()).expect("square")
}

/// `t(f) = Ω⁻¹ fᵀ Ω`, the ω-adjoint: `ω(f x, y) = ω(x, t(f) y)`.
pub fn omega_adjoint<S: Scalar>(
    omega: &Matrix<Rational>,
    f: &Matrix<S>,
) -> Result<Matrix<S>, LinalgError> {
    let oi = inverse(omega)?.to_scalar::<S>();
    oi.mul(&f.transpose())?.mul(&omega.to_scalar())
}

/// Matrix of `t` acting on flattened endomorphisms.
pub fn end_involution(omega: &Matrix<Rational>) -> Result<Matrix<Rational>, LinalgError> {
    let m = omega.rows();
    let oi = inverse(omega)?;
    let mut t = Matrix::zeros(m * m, m * m);
    // t(E_cd) = Ω⁻¹ E_dc Ω has entry (Ω⁻¹)_ad Ω_cb at (a, b)
    for c in 0..m {
        for d in 0..m {
            for a in 0..m {
                if oi[(a, d)].is_zero() {
                    continue;
                }
                for b in 0..m {
                    t[(a * m + b, c * m + d)] = oi[(a, d)].clone() * &omega[(c, b)];
                }
            }
        }
    }
    Ok(t)
}

/// Gram matrix of `<f, g> = −Tr(f ∘ t(g))` on the basis `E_ab`:
/// `<E_ab, E_cd> = −(Ω⁻¹)_bd Ω_ca`.
pub fn end_gram(omega: &Matrix<Rational>) -> Result<Matrix<Rational>, LinalgError> {
    let m = omega.rows();
    let oi = inverse(omega)?;
    let mut g = Matrix::zeros(m * m, m * m);
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    g[(a * m + b, c * m + d)] = -(oi[(b, d)].clone() * &omega[(c, a)]);
                }
            }
        }
    }
    Ok(g)
}

/// Weight-2 structure on `End(H₁)` with `H^{2,0} = Hom(conj(h10), h10)`.
pub fn induced_end_weight2<S: Scalar>(w1: &WeightOneHS<S>) -> Result<WeightTwoHS<S>, HodgeError> {
    let rep = validate_weight1(w1);
    if !rep.passed() {
        let names: Vec<_> = rep.failures().iter().map(|c| c.name.clone()).collect();
        return Err(HodgeError::InvalidInput(names.join(", ")));
    }
    let m = w1.rank();
    let g = w1.genus();
    let mut cols = w1.h10().vectors();
    cols.extend(w1.h10().conj().vectors());
    let p = Matrix::from_columns(m, &cols)?;
    let pinv = inverse(&p)?;
    let mut h20 = Vec::with_capacity(g * g);
    for a in 0..g {
        for b in 0..g {
            // the map sending the b-th conjugate vector to the a-th vector of h10
            let f = p.column(a);
            let r = pinv.row(g + b);
            let mut e = Matrix::zeros(m, m);
            for i in 0..m {
                for j in 0..m {
                    e[(i, j)] = f[i].clone() * &r[j];
                }
            }
            h20.push(flatten(&e));
        }
    }
    WeightTwoHS::new(end_gram(w1.omega())?, Subspace::span(m * m, &h20))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::validate_weight2;
    use crate::scalars::ComplexQuad;

    fn std_w1() -> WeightOneHS<ComplexQuad> {
        let omega = Matrix::from_rows(vec![
            vec![Rational::from_i64(0), Rational::from_i64(1)],
            vec![Rational::from_i64(-1), Rational::from_i64(0)],
        ])
        .unwrap();
        WeightOneHS::new(
            omega,
            Subspace::span(2, &[vec![ComplexQuad::one(), ComplexQuad::i()]]),
        )
        .unwrap()
    }

    #[test]
    fn genus_one_end() {
        let w1 = std_w1();
        let hs = induced_end_weight2(&w1).unwrap();
        assert_eq!(hs.hodge_numbers(), (1, 2, 1));
        assert!(validate_weight2(&hs).unwrap().passed());
        let id = flatten(&Matrix::<ComplexQuad>::identity(2));
        assert!(hs.h11().contains(&id));
        assert_eq!(hs.bilinear(&id, &id), ComplexQuad::from_i64(-2));
    }

    #[test]
    fn involution_matches_adjoint() {
        let w1 = std_w1();
        let t = end_involution(w1.omega()).unwrap();
        let f = Matrix::from_rows(vec![
            vec![Rational::from_i64(1), Rational::from_i64(2)],
            vec![Rational::from_i64(3), Rational::from_i64(4)],
        ])
        .unwrap();
        let tf = omega_adjoint(w1.omega(), &f).unwrap();
        assert_eq!(t.mul_vec(&flatten(&f)).unwrap(), flatten(&tf));
        assert_eq!(t.mul(&t).unwrap(), Matrix::identity(4));
    }
}
