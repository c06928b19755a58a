//! Weight-1 structure when `M ≠ 0`: `H_R` splits along the real embeddings
//! of the `t`-invariant center `K⁺`, the `M`-blocks get the complex structure
//! of right multiplication by some `m_σ` with `m_σ² = −1`.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    build_weight1, check_polarization, decompose, fail_first, morphism_checks, polarization_terms,
    search_polarization, ConstructionError, ConstructionResult, Decomposition, Weight1,
};
use crate::algebra::{center, HodgeAlgebra, Poly};
use crate::hodge::WeightOneHS;
use crate::linalg::{
    hermitian_definiteness, solve_rank, unit_vector, vec_is_zero, vec_sub, Definiteness, Matrix,
    Subspace,
};
use crate::report::{join, ReportBlock};
use crate::scalars::{Rational, RealScalar, Scalar};

/// One real embedding `σ` of `K⁺` and its block `H_σ`.
#[derive(Debug, Clone)]
pub struct SigmaBlock {
    /// Image of the primitive element of `K⁺` under `σ`.
    pub label: String,
    pub root: f64,
    pub dim: usize,
    pub in_m: bool,
    /// `m_σ` in float coordinates, for blocks in `M`.
    pub m_sigma: Option<Vec<(f64, f64)>>,
    pub exact: bool,
}

enum Inner<T> {
    Done(ConstructionResult<T>),
    NeedFloat(String),
}

fn is_exact<T: Scalar>() -> bool {
    T::one().tolerance() == 0.0
}

fn scale_vec<T: Scalar>(v: &[T], s: &T) -> Vec<T> {
    v.iter().map(|x| x.clone() * s).collect()
}

fn neg_vec<T: Scalar>(v: &[T]) -> Vec<T> {
    v.iter().map(|x| -x.clone()).collect()
}

fn from_f64<T: Scalar>(x: f64) -> T {
    T::from_rational(&Rational::from_f64(x).unwrap_or_else(Rational::zero))
}

/// Real roots of the minimal polynomial of `K⁺`, ascending. Exact for degree
/// at most 2 when the square root lies in the field.
fn embedding_roots<T: Scalar>(f: &Poly, d: u32) -> Result<Option<Vec<T::Real>>, ConstructionError> {
    let f = f.monic();
    let c = f.coeffs();
    match f.degree() {
        Some(1) => Ok(Some(vec![T::Real::from_rational(&-c[0].clone())])),
        Some(2) => {
            let disc = c[1].clone() * &c[1] - &(c[0].clone() * &Rational::from_i64(4));
            let Some(r) = T::Real::sqrt_in(&disc, d) else {
                return Ok(None);
            };
            let mb = T::Real::from_rational(&-c[1].clone());
            let half = Rational::new(1, 2);
            Ok(Some(vec![
                (mb.clone() - &r).scale(&half),
                (mb + &r).scale(&half),
            ]))
        }
        _ if is_exact::<T>() => Ok(None),
        _ => {
            let isolated = f.isolate_real_roots();
            if isolated.len() != f.degree().unwrap_or(0) {
                return Err(ConstructionError::UnsupportedCenter(format!(
                    "{f} is not totally real"
                )));
            }
            let width = Rational::new(1, 1 << 50);
            Ok(Some(
                isolated
                    .iter()
                    .map(|iv| {
                        let (lo, hi) = f.refine_root(iv, &width);
                        T::Real::from_rational(&((lo + &hi) * &Rational::new(1, 2)))
                    })
                    .collect(),
            ))
        }
    }
}

/// `m_σ = a_σ·g(a_σ²)` with `g(μ) = (−μ)^{-1/2}` interpolated on the distinct
/// eigenvalues of right multiplication by `a_σ²`.
fn m_from_a<T: Scalar>(
    a: &HodgeAlgebra<T>,
    e: &[T],
    a_sigma: &[T],
    tol: f64,
) -> Result<Vec<T>, String> {
    let n = a.dim();
    let s = a.mul(a_sigma, a_sigma);
    let rs = a.structure_constants().right_matrix(&s);
    let m = DMatrix::<f64>::from_fn(n, n, |i, j| rs[(i, j)].to_complex_f64().0);
    let eig = m.complex_eigenvalues();
    let scale = eig.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err("a vanishes on the block".into());
    }
    let mut mus: Vec<f64> = Vec::new();
    for z in eig.iter() {
        if z.norm() < 1e-7 * scale {
            continue;
        }
        if z.im.abs() > 1e-6 * scale {
            return Err(format!("a^2 has the non-real eigenvalue {z}"));
        }
        if z.re >= 0.0 {
            return Err(format!("a^2 has the nonnegative eigenvalue {}", z.re));
        }
        if !mus.iter().any(|m| (m - z.re).abs() < 1e-6 * scale) {
            mus.push(z.re);
        }
    }
    mus.sort_by(f64::total_cmp);
    if let Some(gap) = mus.windows(2).map(|w| w[1] - w[0]).reduce(f64::min) {
        if gap < 100.0 * tol {
            return Err(format!("eigenvalues of a^2 separated by only {gap:e}"));
        }
    }
    let mut g = vec![T::zero(); n];
    for (k, mk) in mus.iter().enumerate() {
        let mut c = 1.0 / (-mk).sqrt();
        for (l, ml) in mus.iter().enumerate() {
            if l != k {
                c /= mk - ml;
            }
        }
        let mut term = scale_vec(e, &from_f64(c));
        for (l, ml) in mus.iter().enumerate() {
            if l != k {
                let shifted = vec_sub(&s, &scale_vec(e, &from_f64(*ml)));
                term = a.mul(&term, &shifted);
            }
        }
        g = g.iter().zip(&term).map(|(x, y)| x.clone() + y).collect();
    }
    Ok(a.mul(a_sigma, &g))
}

/// `a + b√d` in readable form, or six decimals for float roots.
fn root_label<R: Scalar>(r: &R) -> String {
    let Some((a, b)) = r.real_parts() else {
        return format!("{:.6}", r.to_complex_f64().0);
    };
    let d = r.field_d();
    let root = match (b.is_zero(), b.is_one(), (-b.clone()).is_one()) {
        (true, _, _) => return format!("{a}"),
        (_, true, _) => format!("√{d}"),
        (_, _, true) => format!("-√{d}"),
        _ => format!("{b}√{d}"),
    };
    if a.is_zero() {
        root
    } else if root.starts_with('-') {
        format!("{a}{root}")
    } else {
        format!("{a}+{root}")
    }
}

/// Weight-1 structure for `M ≠ 0`; delegates to [`build_weight1`] when
/// `M = 0`.
pub fn general_construct<S: Scalar>(
    a: &HodgeAlgebra<S>,
    dec: &Decomposition<S>,
    seed: u64,
    tol: f64,
) -> Result<ConstructionResult<S>, ConstructionError> {
    if dec.m.is_zero() {
        return build_weight1(a, dec, seed);
    }
    match inner(a, dec, seed, tol)? {
        Inner::Done(r) => Ok(r),
        Inner::NeedFloat(reason) => {
            let fa = a.to_float(tol)?;
            let fdec = decompose(&fa)?;
            match inner(&fa, &fdec, seed, tol)? {
                Inner::Done(r) => {
                    let mut notes = r.notes;
                    notes.push(format!("float fallback: {reason}"));
                    let w1 = match r.w1 {
                        Weight1::Exact(w) | Weight1::Float(w) => Weight1::Float(w),
                    };
                    Ok(ConstructionResult {
                        w: dec.w.clone(),
                        w1,
                        a: r.a,
                        sigma_data: r.sigma_data,
                        report: r.report,
                        notes,
                    })
                }
                Inner::NeedFloat(r) => Err(ConstructionError::UnsupportedCenter(r)),
            }
        }
    }
}

struct Block<T> {
    label: String,
    root: f64,
    e: Vec<T>,
    space: Subspace<T>,
}

fn inner<T: Scalar>(
    a: &HodgeAlgebra<T>,
    dec: &Decomposition<T>,
    seed: u64,
    tol: f64,
) -> Result<Inner<T>, ConstructionError> {
    let n = a.dim();
    let i = T::imag_unit().ok_or(crate::hodge::HodgeError::NotComplex)?;
    let cr = center(a)?;
    let mut rep = ReportBlock::new("general_construct");
    if cr.plus_components.len() != 1 {
        return Err(ConstructionError::UnsupportedCenter(format!(
            "t-invariant center splits into {} fields",
            cr.plus_components.len()
        )));
    }
    let comp = &cr.plus_components[0];
    if !comp.totally_real {
        return Err(ConstructionError::UnsupportedCenter(format!(
            "{} is not totally real",
            comp.minpoly
        )));
    }
    let d = a
        .hs()
        .h20()
        .vectors()
        .iter()
        .flatten()
        .map(Scalar::field_d)
        .max()
        .unwrap_or(1);
    let Some(roots) = embedding_roots::<T>(&comp.minpoly, d)? else {
        return Ok(Inner::NeedFloat(format!(
            "roots of {} are not in the field",
            comp.minpoly
        )));
    };
    let p: Vec<T> = cr
        .plus_alg(a)?
        .to_ambient(&comp.primitive)
        .iter()
        .map(T::from_rational)
        .collect();
    let unit: Vec<T> = a.unit_s();

    // embedding idempotents by Lagrange interpolation at the roots
    let mut blocks = Vec::new();
    for (s, rs) in roots.iter().enumerate() {
        let mut e = unit.clone();
        for (t, rt) in roots.iter().enumerate() {
            if s == t {
                continue;
            }
            let num = vec_sub(&p, &scale_vec(&unit, &T::from_real(rt.clone())));
            let den = (rs.clone() - rt)
                .inv()
                .map_err(crate::linalg::LinalgError::from)?;
            e = scale_vec(&a.mul(&e, &num), &T::from_real(den));
        }
        let gens: Vec<Vec<T>> = (0..n).map(|k| a.mul(&e, &unit_vector(n, k))).collect();
        blocks.push(Block {
            label: root_label(rs),
            root: rs.to_f64(),
            e,
            space: Subspace::span(n, &gens),
        });
    }
    let ww = dec.w.sum(&dec.wbar)?;
    let mut m_sum = Subspace::zero(n);
    let mut in_m = Vec::new();
    for b in &blocks {
        let m = b.space.is_subspace_of(&dec.m);
        let w = b.space.is_subspace_of(&ww);
        rep.push(
            format!("block-split[{}]", b.label),
            m != w,
            format!("dim H_sigma = {}, in M: {m}, in W+Wbar: {w}", b.space.dim()),
        );
        if m {
            m_sum = m_sum.sum(&b.space)?;
        }
        in_m.push(m);
    }
    rep.push(
        "M-is-sum-of-blocks",
        m_sum == dec.m,
        format!("dim M = {}", dec.m.dim()),
    );
    fail_first(&rep)?;

    let case_a = cr.center.dim() != cr.t_invariant.dim();
    let sigma: Vec<usize> = (0..blocks.len()).filter(|&k| in_m[k]).collect();
    let mut terms = polarization_terms(a)?;
    let mut fixed_m: Vec<Option<Vec<T>>> = vec![None; blocks.len()];

    if case_a {
        // u generates K over K⁺ with t(u) = −u, and u² ∈ K⁺
        let u = cr
            .center
            .vectors()
            .iter()
            .map(|c| vec_sub(c, &a.t(c)))
            .find(|u| !vec_is_zero(u))
            .ok_or_else(|| {
                ConstructionError::UnsupportedCenter("no t-anti-invariant central element".into())
            })?;
        let ut: Vec<T> = u.iter().map(T::from_rational).collect();
        let u2 = a.mul(&ut, &ut);
        for &k in &sigma {
            let b = &blocks[k];
            let eu2 = a.mul(&b.e, &u2);
            let idx =
                b.e.iter()
                    .position(|x| !x.is_zero())
                    .expect("nonzero idempotent");
            let lambda = eu2[idx]
                .div(&b.e[idx])
                .map_err(crate::linalg::LinalgError::from)?;
            let scalar = eu2 == scale_vec(&b.e, &lambda);
            let neg = (-lambda.clone()).re();
            rep.push(
                format!("u-squared-negative[{}]", b.label),
                scalar && neg.sign() == crate::scalars::Sign::Positive,
                format!("sigma(u^2) = {lambda}"),
            );
            fail_first(&rep)?;
            let Some(root) = neg.sqrt_exact() else {
                return Ok(Inner::NeedFloat(format!("sqrt({neg}) is not in the field")));
            };
            let inv = T::from_real(root)
                .inv()
                .map_err(crate::linalg::LinalgError::from)?;
            let m = scale_vec(&a.mul(&b.e, &ut), &inv);
            terms.push(m.clone());
            fixed_m[k] = Some(m);
        }
    } else {
        if is_exact::<T>() {
            return Ok(Inner::NeedFloat(
                "K = K+ needs square roots of positive reals".into(),
            ));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        for &k in &sigma {
            let r: Vec<Rational> = (0..n)
                .map(|_| Rational::from_i64(rng.gen_range(-5..=5)))
                .collect();
            let u: Vec<T> = vec_sub(&r, &a.t(&r)).iter().map(T::from_rational).collect();
            terms.push(a.mul(&blocks[k].e, &u));
        }
    }

    let mut kept: Option<(WeightOneHS<T>, Vec<Option<Vec<T>>>)> = None;
    let found = search_polarization(&terms, seed, |q| {
        let mut r = ReportBlock::new("polarization");
        let qt: Vec<T> = q.iter().map(T::from_rational).collect();
        let mut h10 = dec.w.clone();
        let mut ms = vec![None; blocks.len()];
        for &k in &sigma {
            let b = &blocks[k];
            let m = match &fixed_m[k] {
                Some(m) => m.clone(),
                None => match m_from_a(a, &b.e, &a.mul(&b.e, &qt), tol) {
                    Ok(m) => m,
                    Err(e) => {
                        r.push(format!("m-sigma[{}]", b.label), false, e);
                        continue;
                    }
                },
            };
            let l = &b.label;
            r.push(
                format!("m-squared[{l}]"),
                a.mul(&m, &m) == neg_vec(&b.e),
                "m*m = -e_sigma",
            );
            r.push(format!("t(m)=-m[{l}]"), a.t(&m) == neg_vec(&m), "t(m) = -m");
            let lhs = a.mul(&a.mul(&m, &qt), &a.t(&m));
            r.push(
                format!("relation[{l}]"),
                lhs == a.mul(&b.e, &qt),
                "m a t(m) = a on the block",
            );

            let rm = a.structure_constants().right_matrix(&m);
            let commutes = (0..n).all(|k| {
                let lb = a.structure_constants().left_matrix(&unit_vector::<T>(n, k));
                lb.mul(&rm).ok() == rm.mul(&lb).ok()
            });
            r.push(
                format!("commutes-with-left[{l}]"),
                commutes,
                "R_m L_b = L_b R_m for every basis b",
            );

            // ω_a(x, I y) = <x, y·m·a> on a real basis of the block
            let xs = b.space.vectors();
            let ma = a.mul(&m, &qt);
            let mut g = Matrix::zeros(xs.len(), xs.len());
            for (j, x) in xs.iter().enumerate() {
                for (k2, y) in xs.iter().enumerate() {
                    g[(j, k2)] = a.form(x, &a.mul(y, &ma));
                }
            }
            match hermitian_definiteness(&g, false) {
                Ok(c) => r.push(
                    format!("block-positive[{l}]"),
                    c.verdict == Definiteness::Positive,
                    format!("{}, pivots {}", c.verdict, join(&c.pivots)),
                ),
                Err(e) => r.push(format!("block-positive[{l}]"), false, e.to_string()),
            };

            let shifted = rm.add(&Matrix::identity(n).scale(&i))?;
            let minus_i = solve_rank(&shifted, None)?.kernel;
            r.push(
                format!("block-h10[{l}]"),
                2 * minus_i.dim() == b.space.dim() && minus_i.is_subspace_of(&b.space),
                format!("dim = {} of {}", minus_i.dim(), b.space.dim()),
            );
            h10 = h10.sum(&minus_i)?;
            ms[k] = Some(m);
        }
        if let Some(w1) = check_polarization(a, &h10, q, &mut r)? {
            kept = Some((w1, ms));
        }
        Ok(r)
    })?;
    let (w1, ms) = kept.expect("search returned a passing candidate");
    let exact = is_exact::<T>();
    rep.push(
        "case",
        true,
        if case_a {
            "K != K+: m_sigma = i_sigma is central".to_string()
        } else {
            "K = K+: m_sigma from K[a]".to_string()
        },
    );
    morphism_checks(a, w1.h10(), &mut rep);
    rep.extend(found.report);
    fail_first(&rep)?;

    let sigma_data = blocks
        .iter()
        .enumerate()
        .map(|(k, b)| SigmaBlock {
            label: b.label.clone(),
            root: b.root,
            dim: b.space.dim(),
            in_m: in_m[k],
            m_sigma: ms[k]
                .as_ref()
                .map(|m| m.iter().map(Scalar::to_complex_f64).collect()),
            exact,
        })
        .collect();
    Ok(Inner::Done(ConstructionResult {
        w: dec.w.clone(),
        w1: Weight1::Exact(w1),
        a: found.a,
        sigma_data,
        report: rep,
        notes: vec![format!("t-invariant center: Q[x]/({})", comp.minpoly)],
    }))
}
