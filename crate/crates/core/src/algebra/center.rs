use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{
    hermitian_definiteness, solve_rank, Definiteness, DefinitenessCertificate, Matrix, Subspace,
};
use crate::scalars::{Rational, Scalar};

use super::{basis_vec, AlgebraError, HodgeAlgebra, Poly, StructureConstants};

/// A commutative algebra over Q, optionally sitting inside a larger algebra
/// through `embed` (columns are the images of the basis vectors).
#[derive(Debug, Clone)]
pub struct CommAlg {
    sc: StructureConstants,
    unit: Vec<Rational>,
    embed: Matrix<Rational>,
}

impl CommAlg {
    pub fn new(sc: StructureConstants, unit: Vec<Rational>) -> Result<Self, AlgebraError> {
        let n = sc.dim();
        if unit.len() != n {
            return Err(AlgebraError::Dimension(format!(
                "unit has length {}, algebra dimension {n}",
                unit.len()
            )));
        }
        let alg = CommAlg {
            sc,
            unit,
            embed: Matrix::identity(n),
        };
        alg.check_commutative()?;
        Ok(alg)
    }

    /// Restricts the product of an ambient algebra to a subspace closed under
    /// multiplication and containing the unit.
    pub fn from_subspace(
        ambient: &StructureConstants,
        unit: &[Rational],
        k: &Subspace<Rational>,
    ) -> Result<Self, AlgebraError> {
        let basis = k.vectors();
        let d = basis.len();
        let mut sc = StructureConstants::new(d);
        for (i, bi) in basis.iter().enumerate() {
            for (j, bj) in basis.iter().enumerate() {
                let p = ambient.mul(bi, bj);
                let c = k.coordinates(&p).ok_or_else(|| {
                    AlgebraError::Dimension("subspace is not closed under multiplication".into())
                })?;
                for (kk, v) in c.into_iter().enumerate() {
                    sc.set(i, j, kk, v);
                }
            }
        }
        let u = k
            .coordinates(unit)
            .ok_or_else(|| AlgebraError::Dimension("subspace does not contain the unit".into()))?;
        let alg = CommAlg {
            sc,
            unit: u,
            embed: k.basis(),
        };
        alg.check_commutative()?;
        Ok(alg)
    }

    fn check_commutative(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                if self.sc.get(i, j) != self.sc.get(j, i) {
                    return Err(AlgebraError::NotCommutative);
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.sc.dim()
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.sc.mul(x, y)
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.sc
    }

    /// Image of a local vector in the ambient algebra.
    pub fn to_ambient(&self, x: &[Rational]) -> Vec<Rational> {
        self.embed.mul_vec(x).expect("embedding size")
    }

    /// Trace of multiplication by `x` on the algebra as a Q-vector space.
    pub fn trace(&self, x: &[Rational]) -> Rational {
        self.sc.left_matrix(x).trace()
    }
}

/// Minimal polynomial of `a` in an algebra with unit `unit` and product `mul`.
pub(crate) fn minpoly_with(
    unit: &[Rational],
    a: &[Rational],
    mul: impl Fn(&[Rational], &[Rational]) -> Vec<Rational>,
) -> Poly {
    let n = unit.len();
    let mut powers = vec![unit.to_vec()];
    loop {
        let next = mul(powers.last().expect("nonempty"), a);
        let m = Matrix::from_columns(n, &powers).expect("lengths");
        let rhs = Matrix::from_columns(n, std::slice::from_ref(&next)).expect("lengths");
        if let Ok(s) = solve_rank(&m, Some(&rhs)) {
            let x = s.solution.expect("rhs given");
            let mut c: Vec<Rational> = (0..powers.len()).map(|i| -x[(i, 0)].clone()).collect();
            c.push(Rational::one());
            return Poly::new(c);
        }
        powers.push(next);
    }
}

pub(crate) fn eval_at(
    p: &Poly,
    a: &[Rational],
    unit: &[Rational],
    mul: impl Fn(&[Rational], &[Rational]) -> Vec<Rational>,
) -> Vec<Rational> {
    let mut acc = vec![Rational::zero(); unit.len()];
    for c in p.coeffs().iter().rev() {
        acc = mul(&acc, a);
        for (x, u) in acc.iter_mut().zip(unit) {
            *x = x.clone() + &(u.clone() * c);
        }
    }
    acc
}

pub fn minimal_polynomial<S: Scalar>(a: &HodgeAlgebra<S>, x: &[Rational]) -> Poly {
    minpoly_with(a.unit(), x, |p, q| a.mul(p, q))
}

/// `K[a]`: the span of `1, a, a², …`.
pub fn subalgebra_generated<S: Scalar>(a: &HodgeAlgebra<S>, x: &[Rational]) -> Subspace<Rational> {
    let deg = minimal_polynomial(a, x).degree().unwrap_or(0);
    let mut powers = vec![a.unit().to_vec()];
    for _ in 1..deg {
        let next = a.mul(powers.last().expect("nonempty"), x);
        powers.push(next);
    }
    Subspace::span(a.dim(), &powers)
}

/// One factor of a split commutative algebra.
#[derive(Debug, Clone)]
pub struct Component {
    /// Idempotent in local coordinates.
    pub idempotent: Vec<Rational>,
    /// The same idempotent in the ambient algebra.
    pub ambient_idempotent: Vec<Rational>,
    pub dim: usize,
    /// A primitive element of the component and its minimal polynomial.
    pub primitive: Vec<Rational>,
    pub minpoly: Poly,
    pub is_field: bool,
    pub totally_real: bool,
}

fn component_dim(k: &CommAlg, e: &[Rational]) -> usize {
    let v: Vec<Vec<Rational>> = (0..k.dim())
        .map(|i| k.mul(e, &basis_vec(k.dim(), i)))
        .collect();
    Subspace::span(k.dim(), &v).dim()
}

fn candidates(k: &CommAlg, e: &[Rational]) -> Vec<Vec<Rational>> {
    let n = k.dim();
    let b = |i| basis_vec::<Rational>(n, i);
    let mut out: Vec<Vec<Rational>> = (0..n).map(|i| k.mul(e, &b(i))).collect();
    for i in 0..n {
        for j in i + 1..n {
            let s: Vec<Rational> = b(i).into_iter().zip(b(j)).map(|(x, y)| x + y).collect();
            out.push(k.mul(e, &s));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..40 {
        let v: Vec<Rational> = (0..n)
            .map(|_| Rational::from_i64(rng.gen_range(-3..=3)))
            .collect();
        out.push(k.mul(e, &v));
    }
    out
}

fn split_rec(k: &CommAlg, e: Vec<Rational>, out: &mut Vec<Component>) -> Result<(), AlgebraError> {
    let d = component_dim(k, &e);
    let mul = |x: &[Rational], y: &[Rational]| k.mul(x, y);
    for a in candidates(k, &e) {
        if a.iter().all(Scalar::is_zero) {
            continue;
        }
        let p = minpoly_with(&e, &a, mul);
        if !p.is_squarefree() {
            return Err(AlgebraError::Nilpotent(p.to_string()));
        }
        let factors = p.factor()?;
        if factors.len() > 1 {
            let f = &factors[0];
            let g = p.divrem(f).0;
            let (_, _, v) = f.ext_gcd(&g);
            // v·g ≡ 1 mod f and ≡ 0 mod g
            let e1 = eval_at(&v.mul(&g), &a, &e, mul);
            let e2: Vec<Rational> = e.iter().zip(&e1).map(|(x, y)| x.clone() - y).collect();
            split_rec(k, e1, out)?;
            return split_rec(k, e2, out);
        }
        if p.degree() == Some(d) {
            let totally_real = p.is_totally_real()?;
            out.push(Component {
                ambient_idempotent: k.to_ambient(&e),
                idempotent: e,
                dim: d,
                primitive: a,
                minpoly: p,
                is_field: true,
                totally_real,
            });
            return Ok(());
        }
    }
    Err(AlgebraError::UnsupportedCenter(format!(
        "no primitive element found in a component of dimension {d}"
    )))
}

/// Splits a reduced commutative algebra into fields via idempotents obtained
/// from factored minimal polynomials.
pub fn split_commutative(k: &CommAlg) -> Result<Vec<Component>, AlgebraError> {
    let mut out = Vec::new();
    split_rec(k, k.unit().to_vec(), &mut out)?;
    Ok(out)
}

/// Signature of `(α, β) ↦ Tr(L_{y α t(β)})` on `K`; `t` acts on local
/// coordinates.
pub fn trace_form_signature(
    k: &CommAlg,
    y: &[Rational],
    t: &Matrix<Rational>,
) -> Result<(Matrix<Rational>, DefinitenessCertificate<Rational>), AlgebraError> {
    let n = k.dim();
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        let yi = k.mul(y, &basis_vec(n, i));
        for j in 0..n {
            let tj = t.mul_vec(&basis_vec(n, j))?;
            g[(i, j)] = k.trace(&k.mul(&yi, &tj));
        }
    }
    let cert = hermitian_definiteness(&g, false)?;
    Ok((g, cert))
}

/// Center `K`, its `t`-invariant part `K⁺`, and their splittings.
#[derive(Debug, Clone)]
pub struct CenterReport {
    pub center: Subspace<Rational>,
    pub t_invariant: Subspace<Rational>,
    pub components: Vec<Component>,
    pub plus_components: Vec<Component>,
    /// Definiteness of the intersection form restricted to `K`.
    pub form_on_center: Definiteness,
}

impl CenterReport {
    pub fn center_alg<S: Scalar>(&self, a: &HodgeAlgebra<S>) -> Result<CommAlg, AlgebraError> {
        CommAlg::from_subspace(a.structure_constants(), a.unit(), &self.center)
    }

    pub fn plus_alg<S: Scalar>(&self, a: &HodgeAlgebra<S>) -> Result<CommAlg, AlgebraError> {
        CommAlg::from_subspace(a.structure_constants(), a.unit(), &self.t_invariant)
    }
}

pub fn center<S: Scalar>(a: &HodgeAlgebra<S>) -> Result<CenterReport, AlgebraError> {
    let n = a.dim();
    let sc = a.structure_constants();
    // row (j, k): coefficient of e_k in x e_j − e_j x, as a function of x
    let mut m = Matrix::<Rational>::zeros(n * n, n);
    for i in 0..n {
        for j in 0..n {
            for (k, c) in sc.get(i, j) {
                m[(j * n + k, i)] = m[(j * n + k, i)].clone() + c;
            }
            for (k, c) in sc.get(j, i) {
                m[(j * n + k, i)] = m[(j * n + k, i)].clone() - c;
            }
        }
    }
    let kc = solve_rank(&m, None)?.kernel;
    let tm = a.involution().sub(&Matrix::identity(n))?;
    let fixed = solve_rank(&tm, None)?.kernel;
    let kp = kc.intersect(&fixed)?;

    let kalg = CommAlg::from_subspace(sc, a.unit(), &kc)?;
    let palg = CommAlg::from_subspace(sc, a.unit(), &kp)?;
    let components = split_commutative(&kalg)?;
    let plus_components = split_commutative(&palg)?;

    let basis = kc.vectors();
    let mut g = Matrix::zeros(basis.len(), basis.len());
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            g[(i, j)] = a.form(x, y);
        }
    }
    let form_on_center = hermitian_definiteness(&g, false)?.verdict;
    Ok(CenterReport {
        center: kc,
        t_invariant: kp,
        components,
        plus_components,
        form_on_center,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Q[x]/(x² − c) with basis {1, x}.
    fn quadratic(c: i64) -> CommAlg {
        let mut sc = StructureConstants::new(2);
        sc.set(0, 0, 0, Rational::one());
        sc.set(0, 1, 1, Rational::one());
        sc.set(1, 0, 1, Rational::one());
        sc.set(1, 1, 0, Rational::from_i64(c));
        CommAlg::new(sc, vec![Rational::one(), Rational::zero()]).unwrap()
    }

    #[test]
    fn split_x2_minus_1() {
        let comps = split_commutative(&quadratic(1)).unwrap();
        assert_eq!(comps.len(), 2);
        let half = Rational::new(1, 2);
        let mut ids: Vec<_> = comps.iter().map(|c| c.idempotent.clone()).collect();
        ids.sort();
        assert_eq!(
            ids,
            vec![vec![half.clone(), -half.clone()], vec![half.clone(), half]]
        );
    }

    #[test]
    fn x2_minus_2_is_a_field() {
        let comps = split_commutative(&quadratic(2)).unwrap();
        assert_eq!(comps.len(), 1);
        assert!(comps[0].totally_real);
        let comps = split_commutative(&quadratic(-1)).unwrap();
        assert!(!comps[0].totally_real);
    }

    #[test]
    fn nilpotents_are_rejected() {
        assert!(matches!(
            split_commutative(&quadratic(0)),
            Err(AlgebraError::Nilpotent(_))
        ));
    }

    /// Q(√2, i) with basis {1, x, y, xy}, x² = 2, y² = −1.
    pub(crate) fn biquadratic() -> CommAlg {
        let sc = StructureConstants::from_fn(4, |i, j| {
            // exponents (a, b) of x^a y^b
            let (a1, b1) = (i & 1, i >> 1);
            let (a2, b2) = (j & 1, j >> 1);
            let mut c = Rational::one();
            if a1 + a2 == 2 {
                c = c * Rational::from_i64(2);
            }
            if b1 + b2 == 2 {
                c = -c;
            }
            let k = ((a1 + a2) % 2) | (((b1 + b2) % 2) << 1);
            let mut v = vec![Rational::zero(); 4];
            v[k] = c;
            v
        });
        CommAlg::new(
            sc,
            vec![
                Rational::one(),
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn biquadratic_field() {
        let k = biquadratic();
        let x_plus_y = vec![
            Rational::zero(),
            Rational::one(),
            Rational::one(),
            Rational::zero(),
        ];
        // brute force: (√2 + i)⁴ − 2(√2 + i)² + 9 = 0
        assert_eq!(
            minpoly_with(k.unit(), &x_plus_y, |a, b| k.mul(a, b)),
            Poly::from_i64(&[9, 0, -2, 0, 1])
        );
        let comps = split_commutative(&k).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].dim, 4);
        assert!(!comps[0].totally_real);
    }

    #[test]
    fn trace_forms() {
        let k = quadratic(-1);
        let conj = Matrix::diagonal(&[Rational::one(), Rational::from_i64(-1)]);
        let y = vec![Rational::from_i64(-1), Rational::zero()];
        let (g, cert) = trace_form_signature(&k, &y, &conj).unwrap();
        assert_eq!(
            g,
            Matrix::diagonal(&[Rational::from_i64(-2), Rational::from_i64(-2)])
        );
        assert_eq!(cert.verdict, Definiteness::Negative);

        for (lambda, def) in [(-3, Definiteness::Positive), (5, Definiteness::Indefinite)] {
            let k = quadratic(lambda);
            let y = vec![Rational::from_i64(2), Rational::zero()];
            let (g, cert) = trace_form_signature(&k, &y, &conj).unwrap();
            assert_eq!(
                g,
                Matrix::diagonal(&[Rational::from_i64(4), Rational::from_i64(-4 * lambda)])
            );
            assert_eq!(cert.verdict, def);
        }

        let q = CommAlg::new(
            StructureConstants::from_fn(1, |_, _| vec![Rational::one()]),
            vec![Rational::one()],
        )
        .unwrap();
        let (_, cert) =
            trace_form_signature(&q, &[Rational::from_i64(-1)], &Matrix::identity(1)).unwrap();
        assert_eq!(cert.verdict, Definiteness::Negative);
    }
}
