//! The decomposition `H_C = (W ⊕ W̄) ⊕ M` with `W = H^{2,0}·H_C`, the
//! weight-1 structure with `h10 = W` and its polarization `ω_a`, the general
//! construction for algebras with `M ≠ 0`, and the maps `e_β`.

mod general;
mod universal;

pub use general::{general_construct, SigmaBlock};
pub use universal::{e_beta_maps, left_regular};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{center, AlgebraError, HodgeAlgebra};
use crate::hodge::{validate_weight1, HodgeError, WeightOneHS};
use crate::linalg::{vec_conj, vec_is_zero, vec_sub, LinalgError, Subspace};
use crate::report::{join, ReportBlock};
use crate::scalars::{FloatComplex, Rational, RealScalar, Scalar, Sign};

pub const MAX_ATTEMPTS: usize = 32;
/// Convergent levels tried when a `√d` coefficient has to be made rational.
const RATIONALIZE_LEVELS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("H^{{2,0}} = 0, so W = 0")]
    NoHodgeTwoZero,
    #[error("certificate {0} failed")]
    Certificate(String, String),
    #[error("M has dimension {0}; use the general construction")]
    NonzeroM(usize),
    #[error("no polarization after {MAX_ATTEMPTS} attempts; failing: {0}")]
    PolarizationExhausted(String),
    #[error("unsupported center: {0}")]
    UnsupportedCenter(String),
    #[error("invalid embedding: {0}")]
    Embedding(String),
    #[error(transparent)]
    Hodge(#[from] HodgeError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl ConstructionError {
    /// Name of the violated invariant, when there is one.
    pub fn invariant(&self) -> Option<&str> {
        match self {
            ConstructionError::Certificate(name, _) => Some(name),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Decomposition<S> {
    pub w: Subspace<S>,
    pub wbar: Subspace<S>,
    pub m: Subspace<S>,
    pub report: ReportBlock,
}

/// The constructed weight-1 structure. The general construction falls back
/// to floats when the complex structures on the `M`-blocks need square roots
/// outside the field.
#[derive(Debug, Clone)]
pub enum Weight1<S> {
    Exact(WeightOneHS<S>),
    Float(WeightOneHS<FloatComplex>),
}

impl<S: Scalar> Weight1<S> {
    pub fn rank(&self) -> usize {
        match self {
            Weight1::Exact(w) => w.rank(),
            Weight1::Float(w) => w.rank(),
        }
    }

    pub fn genus(&self) -> usize {
        match self {
            Weight1::Exact(w) => w.genus(),
            Weight1::Float(w) => w.genus(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Weight1::Exact(_))
    }

    pub fn exact(&self) -> Option<&WeightOneHS<S>> {
        match self {
            Weight1::Exact(w) => Some(w),
            Weight1::Float(_) => None,
        }
    }

    pub fn validate(&self) -> ReportBlock {
        match self {
            Weight1::Exact(w) => validate_weight1(w),
            Weight1::Float(w) => validate_weight1(w),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConstructionResult<S> {
    pub w: Subspace<S>,
    pub w1: Weight1<S>,
    /// Rational `a` with `t(a) = −a`; the polarization is `ω_a(x, y) = <x, y·a>`.
    pub a: Vec<Rational>,
    pub sigma_data: Vec<SigmaBlock>,
    pub report: ReportBlock,
    /// Informational lines that are not certificates.
    pub notes: Vec<String>,
}

pub fn compute_w<S: Scalar>(a: &HodgeAlgebra<S>) -> Result<Subspace<S>, ConstructionError> {
    let h20 = a.hs().h20();
    if h20.is_zero() {
        return Err(ConstructionError::NoHodgeTwoZero);
    }
    Ok(a.product_span(h20, &Subspace::full(a.dim())))
}

fn fail_first(rep: &ReportBlock) -> Result<(), ConstructionError> {
    match rep.failures().first() {
        Some(c) => Err(ConstructionError::Certificate(c.name.clone(), rep.render())),
        None => Ok(()),
    }
}

pub fn decompose<S: Scalar>(a: &HodgeAlgebra<S>) -> Result<Decomposition<S>, ConstructionError> {
    let n = a.dim();
    let hs = a.hs();
    let full = Subspace::full(n);
    let w = compute_w(a)?;
    let wbar = w.conj();
    let mut rep = ReportBlock::new("decompose");

    rep.push(
        "W-contains-H20",
        hs.h20().is_subspace_of(&w),
        format!("dim H20 = {}, dim W = {}", hs.h20().dim(), w.dim()),
    );
    let wh = a.product_span(&w, &full);
    rep.push(
        "W-right-ideal",
        wh.is_subspace_of(&w),
        format!("dim W.H = {}", wh.dim()),
    );
    let cap = w.intersect(&wbar)?;
    rep.push(
        "W-cap-Wbar-zero",
        cap.is_zero(),
        format!("dim(W cap Wbar) = {}", cap.dim()),
    );
    let h02h = a.product_span(hs.h02(), &full);
    rep.push(
        "Wbar-is-H02-products",
        h02h == wbar,
        format!("dim H02.H = {}", h02h.dim()),
    );

    let ww = w.sum(&wbar)?;
    let left = a.product_span(&full, &ww);
    let right = a.product_span(&ww, &full);
    rep.push(
        "ideal-left",
        left.is_subspace_of(&ww),
        format!("dim H.(W+Wbar) = {}", left.dim()),
    );
    rep.push(
        "ideal-right",
        right.is_subspace_of(&ww),
        format!("dim (W+Wbar).H = {}", right.dim()),
    );

    let m = ww.orth_complement(hs.gram_s(), false)?;
    let direct = ww.intersect(&m)?.is_zero();
    rep.push(
        "orthogonal-complement",
        direct && ww.dim() + m.dim() == n,
        format!(
            "dim W = {}, dim Wbar = {}, dim M = {}, n = {n}",
            w.dim(),
            wbar.dim(),
            m.dim()
        ),
    );
    let c1 = a.product_span(&ww, &m);
    let c2 = a.product_span(&m, &ww);
    rep.push(
        "cross-products-vanish",
        c1.is_zero() && c2.is_zero(),
        format!(
            "dim (W+Wbar).M = {}, dim M.(W+Wbar) = {}",
            c1.dim(),
            c2.dim()
        ),
    );

    let mut pieces = Vec::new();
    for p in [hs.h20(), hs.h11(), hs.h02()] {
        pieces.push(ww.intersect(p)?.dim());
    }
    rep.push(
        "hodge-stable",
        pieces.iter().sum::<usize>() == ww.dim(),
        format!("(W+Wbar) meets the Hodge pieces in dims {}", join(&pieces)),
    );
    let tw = ww.image(&a.involution().to_scalar())?;
    rep.push(
        "t-stable",
        tw.is_subspace_of(&ww),
        format!("dim t(W+Wbar) = {}", tw.dim()),
    );
    rep.push(
        "M-in-H11",
        m.is_subspace_of(hs.h11()),
        format!("dim M = {}, dim H11 = {}", m.dim(), hs.h11().dim()),
    );
    rep.push(
        "M-conj-stable",
        m.conj() == m,
        "conj(M) = M on canonical forms",
    );

    fail_first(&rep)?;
    Ok(Decomposition {
        w,
        wbar,
        m,
        report: rep,
    })
}

/// `a_j = ±i(η_j η̄_j − η̄_j η_j)` for a basis `η_j` of `H^{2,0}` made of
/// eigenvectors of `t`, the sign matching the eigenvalue.
pub fn polarization_terms<S: Scalar>(
    a: &HodgeAlgebra<S>,
) -> Result<Vec<Vec<S>>, ConstructionError> {
    let n = a.dim();
    let i = S::imag_unit().ok_or(HodgeError::NotComplex)?;
    let mut seen = Subspace::<S>::zero(n);
    let mut terms: Vec<Vec<S>> = Vec::new();
    let half = Rational::new(1, 2);
    for v in a.hs().h20().vectors() {
        let tv = a.t(&v);
        let plus: Vec<S> = v
            .iter()
            .zip(&tv)
            .map(|(x, y)| (x.clone() + y).scale(&half))
            .collect();
        let minus: Vec<S> = vec_sub(&v, &tv).iter().map(|x| x.scale(&half)).collect();
        for (eta, sign) in [(plus, i.clone()), (minus, -i.clone())] {
            if vec_is_zero(&eta) || seen.contains(&eta) {
                continue;
            }
            seen = seen.sum(&Subspace::span(n, &[eta.clone()]))?;
            let bar = vec_conj(&eta);
            let c: Vec<S> = vec_sub(&a.mul(&eta, &bar), &a.mul(&bar, &eta))
                .into_iter()
                .map(|x| x * &sign)
                .collect();
            // a positive multiple of an earlier term adds nothing to the cone they span
            if !terms.iter().any(|e| positive_multiple(&c, e)) {
                terms.push(c);
            }
        }
    }
    Ok(terms)
}

fn positive_multiple<S: Scalar>(c: &[S], e: &[S]) -> bool {
    let Some(k) = e.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    let Ok(r) = c[k].div(&e[k]) else { return false };
    if !r.is_real() || r.re().sign() != Sign::Positive {
        return false;
    }
    c.iter()
        .zip(e)
        .all(|(x, y)| (x.clone() - &(y.clone() * &r)).is_zero())
}

/// Convergents `p/q` of `√d`.
fn sqrt_convergents(d: u32, count: usize) -> Vec<Rational> {
    let a0 = (d as f64).sqrt().floor() as i128;
    let d = d as i128;
    let (mut m, mut den, mut an) = (0i128, 1i128, a0);
    let (mut h0, mut h1) = (1i128, a0);
    let (mut k0, mut k1) = (0i128, 1i128);
    let mut out = vec![Rational::from_bigints(h1.into(), k1.into()).expect("nonzero")];
    while out.len() < count {
        m = den * an - m;
        den = (d - m * m) / den;
        if den == 0 {
            break;
        }
        an = (a0 + m) / den;
        let (Some(h2), Some(k2)) = (
            an.checked_mul(h1).and_then(|x| x.checked_add(h0)),
            an.checked_mul(k1).and_then(|x| x.checked_add(k0)),
        ) else {
            break;
        };
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        out.push(Rational::from_bigints(h1.into(), k1.into()).expect("nonzero"));
    }
    out
}

fn decimal(x: f64, digits: u32) -> Option<Rational> {
    let scale = 10f64.powi(digits as i32);
    let v = (x * scale).round();
    if !v.is_finite() || v.abs() > 1e30 {
        return None;
    }
    let num = Rational::from_f64(v)?;
    Some(num * &Rational::from_bigints(1.into(), num_bigint::BigInt::from(10).pow(digits)).ok()?)
}

/// Real vector made rational: exact `√d` parts are replaced by the
/// `level`-th convergent, float entries are rounded to `level + 3` digits.
/// `None` when an entry is not real or the levels are exhausted.
pub(crate) fn rationalize<S: Scalar>(v: &[S], level: usize) -> Option<Vec<Rational>> {
    let mut out = Vec::with_capacity(v.len());
    for x in v {
        if !x.is_real() {
            return None;
        }
        match x.real_parts() {
            Some((p, q)) if q.is_zero() => out.push(p),
            Some((p, q)) => {
                let conv = sqrt_convergents(x.field_d(), level + 1);
                let c = conv.get(level)?;
                out.push(p + &(q * c));
            }
            None => out.push(decimal(x.to_complex_f64().0, level as u32 + 3)?),
        }
    }
    Some(out)
}

fn is_rational_vec<S: Scalar>(v: &[S]) -> bool {
    v.iter()
        .all(|x| matches!(x.real_parts(), Some((_, q)) if q.is_zero()) && x.is_real())
}

/// Outcome of [`search_polarization`].
pub(crate) struct Found {
    pub a: Vec<Rational>,
    pub report: ReportBlock,
}

/// Seeded search for a rational `a = Σ c_j·term_j` passing `check`.
/// Attempt 0 takes every `c_j = 1`; later attempts draw `c_j = p/q` with
/// `1 ≤ p, q ≤ 99`.
pub(crate) fn search_polarization<S: Scalar>(
    terms: &[Vec<S>],
    seed: u64,
    mut check: impl FnMut(&[Rational]) -> Result<ReportBlock, ConstructionError>,
) -> Result<Found, ConstructionError> {
    let n = terms.first().map(Vec::len).unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last: Option<ReportBlock> = None;
    for attempt in 0..MAX_ATTEMPTS {
        let cs: Vec<Rational> = if attempt == 0 {
            vec![Rational::one(); terms.len()]
        } else {
            (0..terms.len())
                .map(|_| Rational::new(rng.gen_range(1..=99), rng.gen_range(1..=99)))
                .collect()
        };
        let mut real = vec![S::zero(); n];
        for (c, t) in cs.iter().zip(terms) {
            for (r, x) in real.iter_mut().zip(t) {
                *r = r.clone() + &x.scale(c);
            }
        }
        let levels = if is_rational_vec(&real) {
            1
        } else {
            RATIONALIZE_LEVELS
        };
        for level in 0..levels {
            let Some(q) = rationalize(&real, level) else {
                break;
            };
            let mut rep = check(&q)?;
            if rep.passed() {
                rep.push(
                    "search",
                    true,
                    format!("seed {seed}, attempt {attempt}, coefficients {}, rationalization level {level}", join(&cs)),
                );
                return Ok(Found { a: q, report: rep });
            }
            last = Some(rep);
        }
    }
    let names = last
        .map(|r| {
            r.failures()
                .iter()
                .map(|c| c.name.clone())
                .collect::<Vec<_>>()
                .join(", ")
        })
        .unwrap_or_else(|| "no candidate".into());
    Err(ConstructionError::PolarizationExhausted(names))
}

/// Exact checks on `ω_a` for the weight-1 structure with `h10 = w`.
pub(crate) fn check_polarization<S: Scalar>(
    a: &HodgeAlgebra<S>,
    h10: &Subspace<S>,
    q: &[Rational],
    rep: &mut ReportBlock,
) -> Result<Option<WeightOneHS<S>>, ConstructionError> {
    let tq = a.t(q);
    let anti = tq.iter().zip(q).all(|(x, y)| (x.clone() + y).is_zero());
    rep.push("t-antisymmetric", anti, "t(a) = -a");
    let omega = a.omega_form(q);
    let skew = omega.is_skew();
    rep.push("omega-skew", skew, "omega_a is skew and rational");
    if !skew {
        return Ok(None);
    }
    let w1 = WeightOneHS::new(omega, h10.clone())?;
    rep.extend(validate_weight1(&w1));
    Ok(Some(w1))
}

/// Rational `a` with `t(a) = −a` such that `ω_a` polarizes the weight-1
/// structure with `h10 = W`.
pub fn polarization_search<S: Scalar>(
    a: &HodgeAlgebra<S>,
    dec: &Decomposition<S>,
    seed: u64,
) -> Result<(Vec<Rational>, ReportBlock), ConstructionError> {
    let terms = polarization_terms(a)?;
    let found = search_polarization(&terms, seed, |q| {
        let mut rep = ReportBlock::new("polarization_search");
        check_polarization(a, &dec.w, q, &mut rep)?;
        Ok(rep)
    })?;
    Ok((found.a, found.report))
}

/// Left multiplication `H → End(H₁)` is a morphism of Hodge structures.
pub(crate) fn morphism_checks<S: Scalar>(
    a: &HodgeAlgebra<S>,
    h10: &Subspace<S>,
    rep: &mut ReportBlock,
) {
    let hs = a.hs();
    let bar = h10.conj();
    let checks: [(&str, &Subspace<S>, &Subspace<S>, Option<&Subspace<S>>); 6] = [
        ("H20.h10 = 0", hs.h20(), h10, None),
        ("H20.conj(h10) in h10", hs.h20(), &bar, Some(h10)),
        ("H11.h10 in h10", hs.h11(), h10, Some(h10)),
        ("H11.conj(h10) in conj(h10)", hs.h11(), &bar, Some(&bar)),
        ("H02.h10 in conj(h10)", hs.h02(), h10, Some(&bar)),
        ("H02.conj(h10) = 0", hs.h02(), &bar, None),
    ];
    for (name, x, y, target) in checks {
        let p = a.product_span(x, y);
        let ok = match target {
            Some(t) => p.is_subspace_of(t),
            None => p.is_zero(),
        };
        rep.push(name, ok, format!("product span of dim {}", p.dim()));
    }
}

fn center_note<S: Scalar>(a: &HodgeAlgebra<S>) -> String {
    match center(a) {
        Ok(c) => format!(
            "t-invariant center has dimension {} (center dimension {}){}",
            c.t_invariant.dim(),
            c.center.dim(),
            if c.t_invariant.dim() == 1 {
                ", trivial"
            } else {
                ""
            }
        ),
        Err(e) => format!("center not computed: {e}"),
    }
}

/// Weight-1 structure with `h10 = W` for an algebra with `M = 0`.
pub fn build_weight1<S: Scalar>(
    a: &HodgeAlgebra<S>,
    dec: &Decomposition<S>,
    seed: u64,
) -> Result<ConstructionResult<S>, ConstructionError> {
    if !dec.m.is_zero() {
        return Err(ConstructionError::NonzeroM(dec.m.dim()));
    }
    let (q, prep) = polarization_search(a, dec, seed)?;
    let mut rep = ReportBlock::new("build_weight1");
    rep.push(
        "genus",
        2 * dec.w.dim() == a.dim(),
        format!("rank {}, g = {}", a.dim(), dec.w.dim()),
    );
    morphism_checks(a, &dec.w, &mut rep);
    rep.extend(prep);
    let w1 = WeightOneHS::new(a.omega_form(&q), dec.w.clone())?;
    fail_first(&rep)?;
    Ok(ConstructionResult {
        w: dec.w.clone(),
        w1: Weight1::Exact(w1),
        a: q,
        sigma_data: Vec::new(),
        report: rep,
        notes: vec![center_note(a)],
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    NotAValidChallenger(String),
}

/// Checks a challenger `W′` against the constructed `W`: a valid challenger
/// must contain `H^{2,0}·H_C = W`, and then equals it by dimension.
pub fn verify_uniqueness<S: Scalar>(
    a: &HodgeAlgebra<S>,
    result: &ConstructionResult<S>,
    challenger: &Subspace<S>,
) -> (Verdict, ReportBlock) {
    let n = a.dim();
    let mut rep = ReportBlock::new("verify_uniqueness");
    let bar = challenger.conj();
    let complement = challenger
        .intersect(&bar)
        .map(|c| c.is_zero())
        .unwrap_or(false)
        && 2 * challenger.dim() == n;
    rep.push(
        "challenger-complement",
        complement,
        format!("dim W' = {}, n = {n}", challenger.dim()),
    );
    let hh = a.product_span(a.hs().h20(), &Subspace::full(n));
    let contains = hh.is_subspace_of(challenger);
    rep.push("H20.H in W'", contains, format!("dim H20.H = {}", hh.dim()));
    if !complement {
        return (
            Verdict::NotAValidChallenger("W' + conj(W') is not a direct sum equal to H_C".into()),
            rep,
        );
    }
    if !contains {
        return (
            Verdict::NotAValidChallenger("H20.H_C is not contained in W'".into()),
            rep,
        );
    }
    let same_dim = challenger.dim() == result.w.dim();
    rep.push(
        "dimension",
        same_dim,
        format!("dim W' = {} = dim W = {}", challenger.dim(), result.w.dim()),
    );
    let equal = challenger == &result.w;
    rep.push("equal", equal, "canonical forms agree");
    if equal {
        (Verdict::Equal, rep)
    } else {
        (
            Verdict::NotAValidChallenger("W' differs from W".into()),
            rep,
        )
    }
}

/// Runs the construction that fits the decomposition.
pub fn construct<S: Scalar>(
    a: &HodgeAlgebra<S>,
    seed: u64,
    tol: f64,
) -> Result<(Decomposition<S>, ConstructionResult<S>), ConstructionError> {
    let dec = decompose(a)?;
    let res = if dec.m.is_zero() {
        build_weight1(a, &dec, seed)?
    } else {
        general_construct(a, &dec, seed, tol)?
    };
    Ok((dec, res))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convergents_of_sqrt2() {
        let c = sqrt_convergents(2, 6);
        let expect = [(1, 1), (3, 2), (7, 5), (17, 12), (41, 29), (99, 70)];
        for (x, (p, q)) in c.iter().zip(expect) {
            assert_eq!(*x, Rational::new(p, q));
        }
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(decimal(0.125, 3), Some(Rational::new(1, 8)));
        assert_eq!(decimal(1.0 / 3.0, 2), Some(Rational::new(33, 100)));
    }
}
