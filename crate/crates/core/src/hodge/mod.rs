//! Polarized Hodge structures of weight 2 and weight 1.

mod end;

use thiserror::Error;

use crate::linalg::{
    hermitian_definiteness, rank, vec_conj, Definiteness, LinalgError, Matrix, Subspace,
};
use crate::report::{join, ReportBlock};
use crate::scalars::{Rational, Scalar};

pub use end::{end_gram, end_involution, flatten, induced_end_weight2, omega_adjoint, unflatten};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HodgeError {
    #[error("H^{{2,0}} = 0: the weight-2 structure must have p >= 1")]
    NoHodgeTwoZero,
    #[error("{0} is not symmetric")]
    NotSymmetric(&'static str),
    #[error("{0} is not skew-symmetric")]
    NotSkew(&'static str),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("the backend has no imaginary unit")]
    NotComplex,
    #[error("invalid input structure: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `bᵢᵀ G conj(bⱼ)` (or `bᵢᵀ G bⱼ`) over the given vectors.
pub fn gram_on<S: Scalar>(
    basis: &[Vec<S>],
    g: &Matrix<S>,
    conjugating: bool,
) -> Result<Matrix<S>, LinalgError> {
    let k = basis.len();
    let mut out = Matrix::zeros(k, k);
    for (j, bj) in basis.iter().enumerate() {
        let gb = if conjugating {
            g.mul_vec(&vec_conj(bj))?
        } else {
            g.mul_vec(bj)?
        };
        for (i, bi) in basis.iter().enumerate() {
            out[(i, j)] = crate::linalg::dot(bi, &gb);
        }
    }
    Ok(out)
}

fn imag_unit<S: Scalar>() -> Result<S, HodgeError> {
    S::imag_unit().ok_or(HodgeError::NotComplex)
}

/// Polarized weight-2 Hodge structure given by the lattice form and `H^{2,0}`.
/// `H^{0,2}` and `H^{1,1}` are derived.
#[derive(Debug, Clone)]
pub struct WeightTwoHS<S> {
    gram: Matrix<Rational>,
    gram_s: Matrix<S>,
    h20: Subspace<S>,
    h02: Subspace<S>,
    h11: Subspace<S>,
}

impl<S: Scalar> WeightTwoHS<S> {
    pub fn new(gram: Matrix<Rational>, h20: Subspace<S>) -> Result<Self, HodgeError> {
        if !gram.is_square() || gram.rows() != h20.ambient_dim() {
            return Err(HodgeError::Dimension(format!(
                "gram is {}x{}, H^{{2,0}} lives in dimension {}",
                gram.rows(),
                gram.cols(),
                h20.ambient_dim()
            )));
        }
        if !gram.is_symmetric() {
            return Err(HodgeError::NotSymmetric("gram"));
        }
        let gram_s = gram.to_scalar::<S>();
        let h02 = h20.conj();
        let h11 = h20.sum(&h02)?.orth_complement(&gram_s, true)?;
        Ok(WeightTwoHS {
            gram,
            gram_s,
            h20,
            h02,
            h11,
        })
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix<Rational> {
        &self.gram
    }

    pub fn gram_s(&self) -> &Matrix<S> {
        &self.gram_s
    }

    pub fn h20(&self) -> &Subspace<S> {
        &self.h20
    }

    pub fn h02(&self) -> &Subspace<S> {
        &self.h02
    }

    pub fn h11(&self) -> &Subspace<S> {
        &self.h11
    }

    /// `(h^{2,0}, h^{1,1}, h^{0,2})`.
    pub fn hodge_numbers(&self) -> (usize, usize, usize) {
        (self.h20.dim(), self.h11.dim(), self.h02.dim())
    }

    pub fn bilinear(&self, x: &[S], y: &[S]) -> S {
        self.gram_s.bilinear(x, y).expect("ambient vectors")
    }

    /// `h(x, y) = <x, conj(y)>`.
    pub fn hermitian(&self, x: &[S], y: &[S]) -> S {
        self.bilinear(x, &vec_conj(y))
    }
}

/// Checks the Hodge-Riemann relations for a weight-2 structure.
pub fn validate_weight2<S: Scalar>(hs: &WeightTwoHS<S>) -> Result<ReportBlock, HodgeError> {
    let p = hs.h20.dim();
    if p == 0 {
        return Err(HodgeError::NoHodgeTwoZero);
    }
    let n = hs.rank();
    let mut rep = ReportBlock::new("validate_weight2");

    let r = rank(&hs.gram);
    rep.push("gram-nondegenerate", r == n, format!("rank {r} of {n}"));

    let basis = hs.h20.vectors();
    let iso = gram_on(&basis, &hs.gram_s, false)?;
    rep.push(
        "h20-isotropic",
        iso.is_zero(),
        format!("<h20, h20> vanishes on {p} basis vectors"),
    );

    let herm = gram_on(&basis, &hs.gram_s, true)?;
    let cert = hermitian_definiteness(&herm, true)?;
    rep.push(
        "h20-positive",
        cert.verdict == Definiteness::Positive && cert.verify(&herm),
        format!("{}, pivots {}", cert.verdict, join(&cert.pivots)),
    );

    let indep = hs.h20.is_independent_of(&hs.h02)?;
    rep.push(
        "h20-h02-independent",
        indep,
        format!("dim(h20 + h02) = {}", hs.h20.sum(&hs.h02)?.dim()),
    );

    let k = hs.h11.dim();
    rep.push(
        "h11-dimension",
        indep && k + 2 * p == n,
        format!("dim h11 = {k}, expected {}", n as i64 - 2 * p as i64),
    );
    rep.push(
        "h11-conjugation-stable",
        hs.h11.conj() == hs.h11,
        "conj(h11) = h11 canonically",
    );

    if k > 0 {
        let h11g = gram_on(&hs.h11.vectors(), &hs.gram_s, true)?;
        let c = hermitian_definiteness(&h11g, true)?;
        rep.push(
            "h11-negative",
            c.verdict == Definiteness::Negative && c.verify(&h11g),
            format!("{}, pivots {}", c.verdict, join(&c.pivots)),
        );
    } else {
        rep.push("h11-negative", true, "h11 = 0");
    }

    let sig = hermitian_definiteness(&hs.gram, false)?;
    let (pos, neg, zero) = sig.signature();
    rep.push(
        "signature",
        pos == 2 * p && neg + 2 * p == n && zero == 0,
        format!(
            "({pos}, {neg}), zero pivots {zero}, expected ({}, {})",
            2 * p,
            n as i64 - 2 * p as i64
        ),
    );
    Ok(rep)
}

/// Polarized weight-1 Hodge structure: skew rational form and `H^{1,0}`.
#[derive(Debug, Clone)]
pub struct WeightOneHS<S> {
    omega: Matrix<Rational>,
    omega_s: Matrix<S>,
    h10: Subspace<S>,
}

impl<S: Scalar> WeightOneHS<S> {
    pub fn new(omega: Matrix<Rational>, h10: Subspace<S>) -> Result<Self, HodgeError> {
        if !omega.is_square() || omega.rows() % 2 != 0 || omega.rows() != h10.ambient_dim() {
            return Err(HodgeError::Dimension(format!(
                "omega is {}x{}, H^{{1,0}} lives in dimension {}",
                omega.rows(),
                omega.cols(),
                h10.ambient_dim()
            )));
        }
        if !omega.is_skew() {
            return Err(HodgeError::NotSkew("omega"));
        }
        let omega_s = omega.to_scalar();
        Ok(WeightOneHS {
            omega,
            omega_s,
            h10,
        })
    }

    pub fn rank(&self) -> usize {
        self.omega.rows()
    }

    pub fn genus(&self) -> usize {
        self.rank() / 2
    }

    pub fn omega(&self) -> &Matrix<Rational> {
        &self.omega
    }

    pub fn omega_s(&self) -> &Matrix<S> {
        &self.omega_s
    }

    pub fn h10(&self) -> &Subspace<S> {
        &self.h10
    }

    /// `H_jk = i·ω(w_j, conj(w_k))` over the given vectors.
    pub fn hermitian_gram(&self, basis: &[Vec<S>]) -> Result<Matrix<S>, HodgeError> {
        let i = imag_unit::<S>()?;
        Ok(gram_on(basis, &self.omega_s, true)?.scale(&i))
    }
}

pub fn validate_weight1<S: Scalar>(hs: &WeightOneHS<S>) -> ReportBlock {
    let mut rep = ReportBlock::new("validate_weight1");
    let g = hs.genus();
    let d = hs.h10.dim();
    rep.push("h10-dimension", d == g, format!("dim h10 = {d}, g = {g}"));
    let bar = hs.h10.conj();
    let s = hs.h10.sum(&bar).map(|x| x.dim()).unwrap_or(0);
    rep.push(
        "direct-sum",
        d == g && s == hs.rank(),
        format!("dim(h10 + conj h10) = {s} of {}", hs.rank()),
    );

    let basis = hs.h10.vectors();
    match gram_on(&basis, &hs.omega_s, false) {
        Ok(m) => rep.push(
            "isotropic",
            m.is_zero(),
            "omega(h10, h10) = 0 on the canonical basis",
        ),
        Err(e) => rep.push("isotropic", false, e.to_string()),
    };
    let positive = hs
        .hermitian_gram(&basis)
        .map_err(|e| e.to_string())
        .and_then(|h| {
            let c = hermitian_definiteness(&h, true).map_err(|e| e.to_string())?;
            Ok((
                c.verdict == Definiteness::Positive && c.verify(&h),
                format!("{}, pivots {}", c.verdict, join(&c.pivots)),
            ))
        });
    match positive {
        Ok((ok, w)) => rep.push("positive", ok && d > 0, w),
        Err(e) => rep.push("positive", false, e),
    };
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ComplexQuad;

    fn c(v: &[(i64, i64)]) -> Vec<ComplexQuad> {
        v.iter()
            .map(|&(a, b)| ComplexQuad::from_i64(a) + ComplexQuad::i() * ComplexQuad::from_i64(b))
            .collect()
    }

    fn diag(v: &[i64]) -> Matrix<Rational> {
        Matrix::diagonal(&v.iter().map(|&x| Rational::from_i64(x)).collect::<Vec<_>>())
    }

    #[test]
    fn f1_is_valid() {
        let hs = WeightTwoHS::new(
            diag(&[1, 1, -1]),
            Subspace::span(3, &[c(&[(1, 0), (0, 1), (0, 0)])]),
        )
        .unwrap();
        let rep = validate_weight2(&hs).unwrap();
        assert!(rep.passed(), "{rep}");
        assert_eq!(
            hs.h11(),
            &Subspace::span(3, &[c(&[(0, 0), (0, 0), (1, 0)])])
        );
        let eta = c(&[(1, 0), (0, 1), (0, 0)]);
        assert_eq!(hs.hermitian(&eta, &eta), ComplexQuad::from_i64(2));
        let e3 = c(&[(0, 0), (0, 0), (1, 0)]);
        assert_eq!(hs.hermitian(&e3, &e3), ComplexQuad::from_i64(-1));
    }

    #[test]
    fn null_eta_fails_positivity() {
        let hs = WeightTwoHS::new(
            diag(&[1, 1, -1]),
            Subspace::span(3, &[c(&[(1, 0), (0, 0), (0, 1)])]),
        )
        .unwrap();
        let rep = validate_weight2(&hs).unwrap();
        assert!(!rep.get("h20-positive").unwrap().passed);
    }

    #[test]
    fn zero_h20_is_rejected() {
        let hs = WeightTwoHS::<ComplexQuad>::new(diag(&[1, -1]), Subspace::zero(2)).unwrap();
        assert_eq!(
            validate_weight2(&hs).unwrap_err(),
            HodgeError::NoHodgeTwoZero
        );
    }

    fn std_omega() -> Matrix<Rational> {
        Matrix::from_rows(vec![
            vec![Rational::from_i64(0), Rational::from_i64(1)],
            vec![Rational::from_i64(-1), Rational::from_i64(0)],
        ])
        .unwrap()
    }

    #[test]
    fn weight1_examples() {
        let w = WeightOneHS::new(std_omega(), Subspace::span(2, &[c(&[(1, 0), (0, 1)])])).unwrap();
        let h = w.hermitian_gram(&[c(&[(1, 0), (0, 1)])]).unwrap();
        assert_eq!(h[(0, 0)], ComplexQuad::from_i64(2));
        assert!(validate_weight1(&w).passed());

        let fixed =
            WeightOneHS::new(std_omega(), Subspace::span(2, &[c(&[(1, 0), (0, 0)])])).unwrap();
        let rep = validate_weight1(&fixed);
        assert!(!rep.get("direct-sum").unwrap().passed);

        let wrong =
            WeightOneHS::new(std_omega(), Subspace::span(2, &[c(&[(1, 0), (0, -1)])])).unwrap();
        let h = wrong.hermitian_gram(&[c(&[(1, 0), (0, -1)])]).unwrap();
        assert_eq!(h[(0, 0)], ComplexQuad::from_i64(-2));
        let rep = validate_weight1(&wrong);
        assert!(rep.get("direct-sum").unwrap().passed);
        assert!(!rep.get("positive").unwrap().passed);
    }
}
