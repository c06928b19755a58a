//! Clifford algebra `C(H)` of a rational lattice, with the weight-2 grading
//! induced from a weight-2 Hodge structure with `h^{2,0} = 1`.
//!
//! Generators are taken in a congruence-diagonalized basis `f_1, …, f_n`
//! (`Pᵀ G P = D`), so `f_i f_j = −f_j f_i` for `i ≠ j` and `f_i² = −D_ii`.
//! Monomials `f_S` are indexed by bitmasks, bit `i` standing for `f_{i+1}`.

use nalgebra::{Complex, DMatrix};
use thiserror::Error;

use crate::algebra::{AlgebraError, HodgeAlgebra, StructureConstants};
use crate::hodge::{validate_weight1, HodgeError, WeightOneHS, WeightTwoHS};
use crate::linalg::{
    congruence_diagonalize, inverse, solve_rank, unit_vector, vec_conj, LinalgError, Matrix,
    Subspace,
};
use crate::report::ReportBlock;
use crate::scalars::{FloatComplex, Rational, RealScalar, Scalar, Sign, DEFAULT_TOL};

pub const MAX_RANK: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordError {
    #[error("lattice rank {0} exceeds the cap of {MAX_RANK}")]
    TooLarge(usize),
    #[error("the Clifford grading needs h^{{2,0}} = 1, got {0}")]
    HodgeRank(usize),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("normalizing <eta, conj eta> to 2 needs sqrt({0}), which is outside the field")]
    NormalizationOutsideField(String),
    #[error(transparent)]
    Hodge(#[from] HodgeError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Rewrites a word in the generators to normal (ascending) order.
fn normal_order(mut word: Vec<usize>, d: &[Rational]) -> (Rational, usize) {
    let mut coeff = Rational::one();
    let mut k = 0;
    while k + 1 < word.len() {
        let (a, b) = (word[k], word[k + 1]);
        if a < b {
            k += 1;
        } else if a > b {
            word.swap(k, k + 1);
            coeff = -coeff;
            k = k.saturating_sub(1);
        } else {
            word.drain(k..k + 2);
            coeff = coeff * &(-d[a].clone());
            k = k.saturating_sub(1);
        }
    }
    let mask = word.iter().fold(0usize, |m, &g| m | (1 << g));
    (coeff, mask)
}

fn mask_word(mask: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask & (1 << i) != 0).collect()
}

/// Name of a monomial, e.g. `e{1}e{3}`; the empty monomial is `1`.
pub fn monomial_name(mask: usize) -> String {
    if mask == 0 {
        return "1".into();
    }
    let mut s = String::new();
    let mut m = mask;
    let mut i = 0;
    while m != 0 {
        if m & 1 == 1 {
            s.push_str(&format!("e{{{}}}", i + 1));
        }
        m >>= 1;
        i += 1;
    }
    s
}

/// Renders an element as a sum of monomials.
pub fn format_element<T: Scalar>(x: &[T]) -> String {
    let mut out = String::new();
    for (m, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let neg = -c.clone();
        let (minus, mag) = if c.is_real() && c.re().sign() == Sign::Negative {
            (true, neg)
        } else {
            (false, c.clone())
        };
        let term = match (m, mag.is_one()) {
            (0, _) => format!("{mag}"),
            (_, true) => monomial_name(m),
            _ => format!("{mag}*{}", monomial_name(m)),
        };
        match (out.is_empty(), minus) {
            (true, false) => out.push_str(&term),
            (true, true) => out.push_str(&format!("-{term}")),
            (false, false) => out.push_str(&format!(" + {term}")),
            (false, true) => out.push_str(&format!(" - {term}")),
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// Structure constants of the exterior algebra in the same monomial basis.
pub fn exterior_constants(n: usize) -> StructureConstants {
    let dim = 1 << n;
    let mut sc = StructureConstants::new(dim);
    for s in 0..dim {
        for t in 0..dim {
            if s & t != 0 {
                continue;
            }
            let mut w = mask_word(s, n);
            w.extend(mask_word(t, n));
            let (c, m) = normal_order(w, &vec![Rational::zero(); n]);
            sc.set(s, t, m, c);
        }
    }
    sc
}

/// The bare Clifford algebra of a rational symmetric form: product, unit,
/// reversal and intersection form.
#[derive(Debug, Clone)]
pub struct CliffordCore {
    n: usize,
    sc: StructureConstants,
    unit: Vec<Rational>,
    invol: Matrix<Rational>,
    gram: Matrix<Rational>,
    generator_gram: Matrix<Rational>,
    diag_transform: Matrix<Rational>,
    diag_inverse: Matrix<Rational>,
}

impl CliffordCore {
    pub fn new(g: &Matrix<Rational>) -> Result<Self, CliffordError> {
        let n = g.rows();
        if n > MAX_RANK {
            return Err(CliffordError::TooLarge(n));
        }
        let (p, d) = congruence_diagonalize(g)?;
        let dd: Vec<Rational> = (0..n).map(|i| d[(i, i)].clone()).collect();
        let dim = 1 << n;
        let mut sc = StructureConstants::new(dim);
        for s in 0..dim {
            for t in 0..dim {
                let mut w = mask_word(s, n);
                w.extend(mask_word(t, n));
                let (c, m) = normal_order(w, &dd);
                sc.set(s, t, m, c);
            }
        }
        let unit = unit_vector::<Rational>(dim, 0);
        let mut core = CliffordCore {
            n,
            sc,
            unit,
            invol: Matrix::identity(dim),
            gram: Matrix::zeros(dim, dim),
            generator_gram: d,
            diag_inverse: inverse(&p)?,
            diag_transform: p,
        };
        // reversal: multiply the generators of each monomial in reverse order
        let mut invol = Matrix::zeros(dim, dim);
        for s in 0..dim {
            let mut acc = core.unit.clone();
            for g in mask_word(s, n).into_iter().rev() {
                acc = core.sc.mul(&acc, &unit_vector(dim, 1 << g));
            }
            for (i, v) in acc.into_iter().enumerate() {
                invol[(i, s)] = v;
            }
        }
        core.invol = invol;
        let mut gram = Matrix::zeros(dim, dim);
        for s in 0..dim {
            for t in 0..dim {
                gram[(s, t)] = core.clifford_form(&unit_vector(dim, s), &unit_vector(dim, t));
            }
        }
        core.gram = gram;
        Ok(core)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.sc
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    pub fn gram(&self) -> &Matrix<Rational> {
        &self.gram
    }

    pub fn involution(&self) -> &Matrix<Rational> {
        &self.invol
    }

    pub fn generator_gram(&self) -> &Matrix<Rational> {
        &self.generator_gram
    }

    pub fn diag_transform(&self) -> &Matrix<Rational> {
        &self.diag_transform
    }

    pub fn mul<T: Scalar>(&self, x: &[T], y: &[T]) -> Vec<T> {
        self.sc.mul(x, y)
    }

    /// The monomial `f_{i+1}`.
    pub fn generator<T: Scalar>(&self, i: usize) -> Vec<T> {
        unit_vector(self.dim(), 1 << i)
    }

    pub fn reversal<T: Scalar>(&self, x: &[T]) -> Vec<T> {
        self.invol.to_scalar::<T>().mul_vec(x).expect("dimension")
    }

    /// `<x, y> = −(scalar part of t(x)·y)`.
    pub fn clifford_form<T: Scalar>(&self, x: &[T], y: &[T]) -> T {
        let tx = self.invol.to_scalar::<T>().mul_vec(x).expect("dimension");
        -self.mul(&tx, y)[0].clone()
    }

    /// Lattice vector (original basis) as a degree-1 element.
    pub fn embed<T: Scalar>(&self, v: &[T]) -> Vec<T> {
        let y = self.diag_inverse.to_scalar::<T>().mul_vec(v).expect("rank");
        let mut out = vec![T::zero(); self.dim()];
        for (i, c) in y.into_iter().enumerate() {
            out[1 << i] = c;
        }
        out
    }
}

/// `C(H)` together with the induced weight-2 structure.
#[derive(Debug, Clone)]
pub struct CliffordAlgebra<S> {
    core: CliffordCore,
    base: HodgeAlgebra<S>,
    lattice: WeightTwoHS<S>,
    eta: Vec<S>,
    grading_report: ReportBlock,
}

/// Builds `C(H)` for the lattice of `hs` together with its induced grading.
pub fn build<S: Scalar>(
    g: &Matrix<Rational>,
    hs: &WeightTwoHS<S>,
) -> Result<CliffordAlgebra<S>, CliffordError> {
    if g != hs.gram() {
        return Err(CliffordError::Mismatch(
            "gram differs from the Hodge structure's form".into(),
        ));
    }
    let core = CliffordCore::new(g)?;
    let (hs2, eta, grading_report) = induced_weight2(&core, hs)?;
    let base = HodgeAlgebra::new(hs2, core.sc.clone(), core.unit.clone(), core.invol.clone())?;
    Ok(CliffordAlgebra {
        core,
        base,
        lattice: hs.clone(),
        eta,
        grading_report,
    })
}

fn wedge_all<S: Scalar>(ext: &StructureConstants, dim: usize, vs: &[Vec<S>]) -> Vec<Vec<S>> {
    let k = vs.len();
    (0..1usize << k)
        .map(|sub| {
            let mut acc = unit_vector::<S>(dim, 0);
            for (i, v) in vs.iter().enumerate() {
                if sub & (1 << i) != 0 {
                    acc = ext.mul(&acc, v);
                }
            }
            acc
        })
        .collect()
}

/// Weight-2 structure on `C(H) = ⋀H`: type (2,0) is `η ∧ ⋀H^{1,1}`, and the
/// polarization is the Clifford form.
fn induced_weight2<S: Scalar>(
    core: &CliffordCore,
    hs: &WeightTwoHS<S>,
) -> Result<(WeightTwoHS<S>, Vec<S>, ReportBlock), CliffordError> {
    let p = hs.h20().dim();
    if p != 1 {
        return Err(CliffordError::HodgeRank(p));
    }
    let dim = core.dim();
    let ext = exterior_constants(core.n);
    let eta = core.embed(&hs.h20().vectors()[0]);
    let h11: Vec<Vec<S>> = hs.h11().vectors().iter().map(|v| core.embed(v)).collect();
    let mono = wedge_all(&ext, dim, &h11);
    let h20: Vec<Vec<S>> = mono.iter().map(|m| ext.mul(&eta, m)).collect();
    let out = WeightTwoHS::new(core.gram.clone(), Subspace::span(dim, &h20))?;

    let eta_bar = vec_conj(&eta);
    let ee = ext.mul(&eta, &eta_bar);
    let mut h11_wedge = mono.clone();
    h11_wedge.extend(mono.iter().map(|m| ext.mul(&ee, m)));
    let h11_wedge = Subspace::span(dim, &h11_wedge);
    let mut rep = ReportBlock::new("induced_weight2");
    rep.push(
        "h11-matches-wedge-grading",
        &h11_wedge == out.h11(),
        format!(
            "dim {} from wedges, {} as orthogonal complement",
            h11_wedge.dim(),
            out.h11().dim()
        ),
    );
    let (a, b, c) = out.hodge_numbers();
    rep.push(
        "hodge-numbers",
        a == dim / 4 && b == dim / 2 && c == dim / 4,
        format!("({a}, {b}, {c})"),
    );
    Ok((out, eta, rep))
}

impl<S: Scalar> CliffordAlgebra<S> {
    pub fn core(&self) -> &CliffordCore {
        &self.core
    }

    pub fn base(&self) -> &HodgeAlgebra<S> {
        &self.base
    }

    pub fn lattice(&self) -> &WeightTwoHS<S> {
        &self.lattice
    }

    /// Generator of `H^{2,0}` as a degree-1 element.
    pub fn eta(&self) -> &[S] {
        &self.eta
    }

    pub fn grading_report(&self) -> &ReportBlock {
        &self.grading_report
    }

    /// Hodge algebra on the same grading but with the wedge product.
    pub fn exterior_hodge_algebra(&self) -> Result<HodgeAlgebra<S>, CliffordError> {
        let dim = self.core.dim();
        Ok(HodgeAlgebra::new(
            self.base.hs().clone(),
            exterior_constants(self.core.n),
            self.core.unit.clone(),
            Matrix::identity(dim),
        )?)
    }
}

/// Output of [`ks_structure`].
#[derive(Debug, Clone)]
pub struct KugaSatake<S> {
    /// `e = −i(2 + ηη̄)/2` after normalizing `<η, η̄> = 2`, when exact.
    pub e: Option<Vec<S>>,
    /// `W = η·C(H_C)`.
    pub w: Subspace<S>,
    /// Weight-1 structure with `h10 = W`, polarized by `ω_a` for `a = −e`
    /// when `e` has rational coordinates.
    pub w1: Option<WeightOneHS<S>>,
    /// Largest principal angle between `W` and the float eigenspace.
    pub float_angle: f64,
    pub report: ReportBlock,
}

pub fn ks_structure<S: Scalar>(
    cl: &CliffordAlgebra<S>,
    tol: f64,
    allow_float: bool,
) -> Result<KugaSatake<S>, CliffordError> {
    let core = &cl.core;
    let dim = core.dim();
    let i = S::imag_unit().ok_or(HodgeError::NotComplex)?;
    let mut rep = ReportBlock::new("ks_structure");

    let eta = cl.eta.clone();
    let w_vecs: Vec<Vec<S>> = (0..dim)
        .map(|m| core.mul(&eta, &unit_vector(dim, m)))
        .collect();
    let w = Subspace::span(dim, &w_vecs);

    // exact path
    let norm = core.clifford_form(&eta, &vec_conj(&eta));
    let target = S::from_i64(2).div(&norm).map_err(LinalgError::from)?;
    let scale = target.re().sqrt_exact();
    let mut e_exact = None;
    let mut w1 = None;
    match scale {
        Some(s) => {
            let s = S::from_real(s);
            let eta_n: Vec<S> = eta.iter().map(|x| x.clone() * &s).collect();
            let ee = core.mul(&eta_n, &vec_conj(&eta_n));
            let two = S::from_i64(2);
            let half_neg_i = -(i.clone().div(&two).map_err(LinalgError::from)?);
            let mut e: Vec<S> = ee.clone();
            e[0] = e[0].clone() + &two;
            let e: Vec<S> = e.into_iter().map(|x| x * &half_neg_i).collect();
            let real = e.iter().all(Scalar::is_real);
            rep.push("e-real", real, format!("e = {}", format_element(&e)));
            let e2 = core.mul(&e, &e);
            let minus_one: Vec<S> = core.unit.iter().map(|u| -S::from_rational(u)).collect();
            rep.push("e-squared", e2 == minus_one, "e*e = -1 exactly");
            let le = cl.base.structure_constants().left_matrix(&e);
            let shifted = le.sub(&Matrix::identity(dim).scale(&i))?;
            let wprime = solve_rank(&shifted, None)?.kernel;
            rep.push(
                "eigenspace-equals-W",
                wprime == w,
                format!(
                    "dim W = {}, dim of i-eigenspace = {}",
                    w.dim(),
                    wprime.dim()
                ),
            );
            // rational e gives the polarization a = −e
            if e.iter().all(|x| x.is_real() && rational_value(x).is_some()) {
                let a: Vec<Rational> = e
                    .iter()
                    .map(|x| -rational_value(x).expect("checked"))
                    .collect();
                let omega = cl.base.omega_form(&a);
                let h = WeightOneHS::new(omega, w.clone())?;
                let v = validate_weight1(&h);
                rep.push(
                    "weight1-valid",
                    v.passed(),
                    format!("a = {}", format_element(&a)),
                );
                w1 = Some(h);
            }
            e_exact = Some(e);
        }
        None if allow_float => {
            rep.push(
                "e-exact",
                true,
                format!(
                    "normalization sqrt({}) not in the field; float path only",
                    target
                ),
            );
        }
        None => return Err(CliffordError::NormalizationOutsideField(target.to_string())),
    }

    let angle = float_ks_angle(cl, &w, tol)?;
    rep.push(
        "float-agrees",
        angle < tol,
        format!("max principal angle {angle:.3e} (tol {tol:e})"),
    );
    Ok(KugaSatake {
        e: e_exact,
        w,
        w1,
        float_angle: angle,
        report: rep,
    })
}

/// Rational value of an exact real scalar, if it is rational.
pub(crate) fn rational_value<S: Scalar>(x: &S) -> Option<Rational> {
    let (re, im) = x.to_complex_f64();
    if im != 0.0 {
        return None;
    }
    let q = approx_rational(re)?;
    (S::from_rational(&q) == *x).then_some(q)
}

/// Closest rational with a small denominator, via continued fractions.
fn approx_rational(x: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai.checked_mul(h1)?.checked_add(h0)?;
        let k2 = ai.checked_mul(k1)?.checked_add(k0)?;
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a;
        if frac.abs() < 1e-12 || (h1 as f64 / k1 as f64 - x).abs() < 1e-15 * x.abs().max(1.0) {
            break;
        }
        r = 1.0 / frac;
    }
    if k1 == 0 || k1 > i64::MAX as i128 || h1.abs() > i64::MAX as i128 {
        return None;
    }
    Some(Rational::new(h1 as i64, k1 as i64))
}

fn to_na(v: &[FloatComplex]) -> Vec<Complex<f64>> {
    v.iter().map(|z| Complex::new(z.re, z.im)).collect()
}

/// Orthonormal basis (columns) of the span of `vs`.
pub(crate) fn orthonormal(vs: &[Vec<Complex<f64>>], dim: usize) -> DMatrix<Complex<f64>> {
    let m = DMatrix::from_fn(dim, vs.len(), |i, j| vs[j][i]);
    m.qr().q()
}

/// `‖(I − Q₂Q₂*)Q₁‖_F`, an upper bound for the sine of the largest principal
/// angle between two spaces of equal dimension.
pub(crate) fn subspace_gap(q1: &DMatrix<Complex<f64>>, q2: &DMatrix<Complex<f64>>) -> f64 {
    let proj = q2 * (q2.adjoint() * q1);
    (q1 - proj).norm()
}

/// Float Kuga-Satake structure: orthonormalize `(Re η, Im η)`, set
/// `e = e₂e₁`, and compare the i-eigenspace of `L_e` with `W`.
fn float_ks_angle<S: Scalar>(
    cl: &CliffordAlgebra<S>,
    w: &Subspace<S>,
    tol: f64,
) -> Result<f64, CliffordError> {
    let core = &cl.core;
    let n = core.n;
    let dim = core.dim();
    let d: Vec<f64> = (0..n)
        .map(|k| core.generator_gram[(k, k)].to_f64())
        .collect();
    let eta: Vec<(f64, f64)> = (0..n).map(|k| cl.eta[1 << k].to_complex_f64()).collect();
    let re: Vec<f64> = eta.iter().map(|z| z.0).collect();
    let im: Vec<f64> = eta.iter().map(|z| z.1).collect();
    let ip = |x: &[f64], y: &[f64]| {
        x.iter()
            .zip(y)
            .zip(&d)
            .map(|((a, b), c)| a * b * c)
            .sum::<f64>()
    };
    let n1 = ip(&re, &re).sqrt();
    let e1: Vec<f64> = re.iter().map(|x| x / n1).collect();
    let c = ip(&im, &e1);
    let mut e2: Vec<f64> = im.iter().zip(&e1).map(|(x, y)| x - c * y).collect();
    let n2 = ip(&e2, &e2).sqrt();
    e2.iter_mut().for_each(|x| *x /= n2);

    let lift = |v: &[f64]| {
        let mut out = vec![FloatComplex::new(0.0, 0.0, tol); dim];
        for (k, x) in v.iter().enumerate() {
            out[1 << k] = FloatComplex::new(*x, 0.0, tol);
        }
        out
    };
    let e = core.mul(&lift(&e2), &lift(&e1));
    let le = core.sc.left_matrix(&e);
    let shifted = le.sub(&Matrix::identity(dim).scale(&FloatComplex::new(0.0, 1.0, tol)))?;
    let wf = solve_rank(&shifted, None)?.kernel;
    if wf.dim() != w.dim() {
        return Ok(f64::INFINITY);
    }
    let q1 = orthonormal(
        &w.vectors()
            .iter()
            .map(|v| {
                to_na(
                    &v.iter()
                        .map(|x| FloatComplex::from_exact(x, tol))
                        .collect::<Vec<_>>(),
                )
            })
            .collect::<Vec<_>>(),
        dim,
    );
    let q2 = orthonormal(
        &wf.vectors().iter().map(|v| to_na(v)).collect::<Vec<_>>(),
        dim,
    );
    Ok(subspace_gap(&q1, &q2).max(subspace_gap(&q2, &q1)).asin())
}

pub fn default_tol() -> f64 {
    DEFAULT_TOL
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate_algebra;
    use crate::scalars::ComplexQuad;

    fn diag(v: &[i64]) -> Matrix<Rational> {
        Matrix::diagonal(&v.iter().map(|&x| Rational::from_i64(x)).collect::<Vec<_>>())
    }

    fn f1() -> WeightTwoHS<ComplexQuad> {
        let eta = vec![ComplexQuad::one(), ComplexQuad::i(), ComplexQuad::zero()];
        WeightTwoHS::new(diag(&[1, 1, -1]), Subspace::span(3, &[eta])).unwrap()
    }

    #[test]
    fn generator_squares() {
        let c = CliffordCore::new(&diag(&[1])).unwrap();
        let e1 = c.generator::<Rational>(0);
        assert_eq!(
            c.mul(&e1, &e1),
            vec![Rational::from_i64(-1), Rational::zero()]
        );

        let c = CliffordCore::new(&diag(&[1, 1])).unwrap();
        let e = c.mul(&c.generator::<Rational>(1), &c.generator(0));
        let mut minus_one = vec![Rational::zero(); 4];
        minus_one[0] = Rational::from_i64(-1);
        assert_eq!(c.mul(&e, &e), minus_one);
    }

    #[test]
    fn rewriting_matches_sign_rule() {
        let d: Vec<Rational> = [1, -2, 3, 1]
            .iter()
            .map(|&x| Rational::from_i64(x))
            .collect();
        for s in 0..16usize {
            for t in 0..16usize {
                let mut w = mask_word(s, 4);
                w.extend(mask_word(t, 4));
                let (c, m) = normal_order(w, &d);
                let mut swaps = 0;
                for i in 0..4 {
                    for j in 0..i {
                        if s & (1 << i) != 0 && t & (1 << j) != 0 {
                            swaps += 1;
                        }
                    }
                }
                let mut expect = if swaps % 2 == 0 {
                    Rational::one()
                } else {
                    Rational::from_i64(-1)
                };
                for k in 0..4 {
                    if s & t & (1 << k) != 0 {
                        expect = expect * &(-d[k].clone());
                    }
                }
                assert_eq!((c, m), (expect, s ^ t));
            }
        }
    }

    #[test]
    fn reversal_and_form_examples() {
        let c = CliffordCore::new(&diag(&[1, 1, -1])).unwrap();
        let e1 = c.generator::<Rational>(0);
        assert_eq!(c.reversal(&e1), e1);
        let e12 = c.mul(&e1, &c.generator(1));
        let neg: Vec<Rational> = e12.iter().map(|x| -x.clone()).collect();
        assert_eq!(c.reversal(&e12), neg);
        assert_eq!(c.clifford_form(c.unit(), c.unit()), Rational::from_i64(-1));
        for i in 0..3 {
            for j in 0..3 {
                let v = c.clifford_form(&c.generator::<Rational>(i), &c.generator(j));
                assert_eq!(v, c.generator_gram()[(i, j)].clone());
            }
        }
    }

    #[test]
    fn f1_grading_and_validation() {
        let hs = f1();
        let cl = build(hs.gram(), &hs).unwrap();
        assert!(cl.grading_report().passed(), "{}", cl.grading_report());
        assert_eq!(cl.base().hs().hodge_numbers(), (2, 4, 2));
        let rep = validate_algebra(cl.base());
        assert!(rep.passed(), "{rep}");
        let ext = cl.exterior_hodge_algebra().unwrap();
        assert!(crate::algebra::bidegree_check(&ext).passed());
    }

    #[test]
    fn f1_kuga_satake() {
        let hs = f1();
        let cl = build(hs.gram(), &hs).unwrap();
        let ks = ks_structure(&cl, 1e-9, true).unwrap();
        assert!(ks.report.passed(), "{}", ks.report);
        // e = e₂e₁ = −e{1}e{2}
        let mut e = vec![ComplexQuad::zero(); 8];
        e[3] = ComplexQuad::from_i64(-1);
        assert_eq!(ks.e.unwrap(), e);
        assert_eq!(ks.w.dim(), 4);
        assert!(ks.float_angle < 1e-9);
    }

    #[test]
    fn rank_cap() {
        assert!(matches!(
            CliffordCore::new(&Matrix::identity(7)),
            Err(CliffordError::TooLarge(7))
        ));
    }
}
