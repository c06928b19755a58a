use std::sync::OnceLock;

use nalgebra::DMatrix;
use proptest::prelude::*;

use ks_core::algebra::{center, split_commutative, HodgeAlgebra};
use ks_core::clifford::{build, CliffordAlgebra};
use ks_core::construction::{build_weight1, decompose};
use ks_core::fixture::{builtin, parse_fixture, serialize};
use ks_core::hodge::{
    end_gram, end_involution, flatten, induced_end_weight2, omega_adjoint, validate_weight1,
    validate_weight2, WeightOneHS,
};
use ks_core::linalg::{congruence_diagonalize, rank, solve_rank, unit_vector, Matrix, Subspace};
use ks_core::scalars::{
    exact_sign, parse_complex, ComplexQuad, FloatComplex, Rational, RealQuad, RealScalar, Scalar,
    Sign,
};

fn rat() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(p, q)| Rational::new(p, q))
}

fn quad() -> impl Strategy<Value = RealQuad> {
    (rat(), rat()).prop_map(|(a, b)| RealQuad::new(a, b, 2).unwrap())
}

fn cquad() -> impl Strategy<Value = ComplexQuad> {
    (quad(), quad()).prop_map(|(a, b)| ComplexQuad::new(a, b))
}

fn rat_matrix(max: usize) -> impl Strategy<Value = Matrix<Rational>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(
            proptest::collection::vec((-4i64..=4).prop_map(Rational::from_i64), c),
            r,
        )
        .prop_map(|rows| Matrix::from_rows(rows).unwrap())
    })
}

fn rat_vecs(n: usize, max: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    proptest::collection::vec(
        proptest::collection::vec((-3i64..=3).prop_map(Rational::from_i64), n),
        0..=max,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(x in cquad(), y in cquad(), z in cquad()) {
        prop_assert_eq!((x.clone() + &y) + &z, x.clone() + &(y.clone() + &z));
        prop_assert_eq!(x.clone() * &(y.clone() + &z), x.clone() * &y + x.clone() * &z);
        if !x.is_zero() {
            prop_assert!((x.clone() * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn conjugation(x in cquad(), y in cquad()) {
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!((x.clone() * &y).conj(), x.conj() * &y.conj());
    }

    #[test]
    fn literals_round_trip(x in cquad()) {
        prop_assert_eq!(parse_complex(&x.to_string(), 2).unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn exact_sign_matches_float(x in quad()) {
        let f = x.to_f64();
        if f.abs() > 1e-6 {
            let want = if f > 0.0 { Sign::Positive } else { Sign::Negative };
            prop_assert_eq!(exact_sign(&x), want);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn rank_and_kernel(m in rat_matrix(5)) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
        for v in solve_rank(&m, None).unwrap().kernel.vectors() {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn subspace_dimension_formula(a in rat_vecs(5, 4), b in rat_vecs(5, 4)) {
        let (u, v) = (Subspace::span(5, &a), Subspace::span(5, &b));
        let s = u.sum(&v).unwrap();
        let i = u.intersect(&v).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        prop_assert!(i.is_subspace_of(&u) && i.is_subspace_of(&v));
        // canonical forms: the same space from a different spanning set
        let mut again = u.vectors();
        again.reverse();
        again.extend(a.iter().cloned());
        prop_assert_eq!(Subspace::span(5, &again), u);
    }
}

fn symmetric() -> impl Strategy<Value = Matrix<Rational>> {
    (1usize..=5).prop_flat_map(|n| {
        proptest::collection::vec(-5i64..=5, n * n).prop_map(move |v| {
            let mut m = Matrix::<Rational>::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    let (a, b) = if i <= j { (i, j) } else { (j, i) };
                    m[(i, j)] = Rational::from_i64(v[a * n + b]);
                }
            }
            m
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn congruence_signature(g in symmetric()) {
        let (p, d) = congruence_diagonalize(&g).unwrap();
        prop_assert_eq!(p.transpose().mul(&g).unwrap().mul(&p).unwrap(), d.clone());
        let n = g.rows();
        prop_assert!((0..n).all(|i| (0..n).all(|j| i == j || d[(i, j)].is_zero())));
        let count = |s: Sign| (0..n).filter(|&i| d[(i, i)].sign() == s).count();
        let eig = DMatrix::from_fn(n, n, |i, j| g[(i, j)].to_f64()).symmetric_eigenvalues();
        let fpos = eig.iter().filter(|x| **x > 1e-9).count();
        let fneg = eig.iter().filter(|x| **x < -1e-9).count();
        prop_assert_eq!((count(Sign::Positive), count(Sign::Negative)), (fpos, fneg));
    }
}

/// `ω = [[0, I], [-I, 0]]` on `Q^{2g}`.
fn standard_omega(g: usize) -> Matrix<Rational> {
    let mut m = Matrix::zeros(2 * g, 2 * g);
    for k in 0..g {
        m[(k, g + k)] = Rational::from_i64(1);
        m[(g + k, k)] = Rational::from_i64(-1);
    }
    m
}

/// A valid `h10` moved by symplectic transvections `x ↦ x + c ω(v, x) v`.
fn random_weight1(
    g: usize,
    moves: &[(Vec<i64>, i64)],
) -> (Matrix<Rational>, Vec<Vec<ComplexQuad>>) {
    let omega = standard_omega(g);
    let n = 2 * g;
    let mut h10: Vec<Vec<ComplexQuad>> = (0..g)
        .map(|k| {
            let mut v = vec![ComplexQuad::zero(); n];
            v[k] = ComplexQuad::one();
            v[g + k] = ComplexQuad::i();
            v
        })
        .collect();
    for (v, c) in moves {
        let vq: Vec<Rational> = v.iter().take(n).map(|x| Rational::from_i64(*x)).collect();
        let vc: Vec<ComplexQuad> = vq.iter().map(ComplexQuad::from_rational).collect();
        let ov = omega.to_scalar::<ComplexQuad>();
        let c = ComplexQuad::from_i64(*c);
        for x in h10.iter_mut() {
            let w = ov.bilinear(&vc, x).unwrap() * &c;
            for (xi, vi) in x.iter_mut().zip(&vc) {
                *xi = xi.clone() + &(vi.clone() * &w);
            }
        }
    }
    (omega, h10)
}

fn moves() -> impl Strategy<Value = Vec<(Vec<i64>, i64)>> {
    proptest::collection::vec((proptest::collection::vec(-2i64..=2, 4), -2i64..=2), 0..4)
}

// keeps the float path well conditioned
fn mild_moves() -> impl Strategy<Value = Vec<(Vec<i64>, i64)>> {
    proptest::collection::vec((proptest::collection::vec(-1i64..=1, 4), -1i64..=1), 0..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn induced_end_structure_is_valid(g in 1usize..=2, mv in mild_moves()) {
        let (omega, h10) = random_weight1(g, &mv);
        let fl: Vec<Vec<FloatComplex>> =
            h10.iter().map(|v| v.iter().map(|z| FloatComplex::from_exact(z, 1e-9)).collect()).collect();
        let w1 = WeightOneHS::new(omega, Subspace::span(2 * g, &fl)).unwrap();
        prop_assert!(validate_weight1(&w1).passed());
        let hs = induced_end_weight2(&w1).unwrap();
        let rep = validate_weight2(&hs).unwrap();
        prop_assert!(rep.passed(), "{}", rep);
        let (p, q, r) = hs.hodge_numbers();
        prop_assert_eq!(p + q + r, 4 * g * g);
        prop_assert_eq!(hs.h20().conj(), hs.h02().clone());
        prop_assert_eq!(hs.h11().conj(), hs.h11().clone());
    }

    #[test]
    fn exact_weight2_dimensions(mv in moves()) {
        let (omega, h10) = random_weight1(2, &mv);
        let w1 = WeightOneHS::new(omega, Subspace::span(4, &h10)).unwrap();
        let hs = induced_end_weight2(&w1).unwrap();
        let rep = validate_weight2(&hs).unwrap();
        prop_assert!(rep.passed(), "{}", rep);
        let (p, q, r) = hs.hodge_numbers();
        prop_assert_eq!((p, q, r), (4, 8, 4));
        prop_assert_eq!(hs.h20().conj(), hs.h02().clone());
        prop_assert_eq!(hs.h11().conj(), hs.h11().clone());
    }
}

fn small_matrix(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    proptest::collection::vec((-3i64..=3).prop_map(Rational::from_i64), n * n).prop_map(move |v| {
        Matrix::from_rows(v.chunks(n).map(<[Rational]>::to_vec).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn omega_adjoint_contract(f in small_matrix(4), g in small_matrix(4), h in small_matrix(4)) {
        let omega = standard_omega(2);
        let t = |x: &Matrix<Rational>| omega_adjoint(&omega, x).unwrap();
        let fg = f.mul(&g).unwrap();
        prop_assert_eq!(t(&fg), t(&g).mul(&t(&f)).unwrap());
        let gram = end_gram(&omega).unwrap();
        let form = |x: &Matrix<Rational>, y: &Matrix<Rational>| gram.bilinear(&flatten(x), &flatten(y)).unwrap();
        prop_assert_eq!(form(&fg, &h), form(&g, &t(&f).mul(&h).unwrap()));
        let tm = end_involution(&omega).unwrap();
        prop_assert_eq!(tm.mul_vec(&flatten(&f)).unwrap(), flatten(&t(&f)));
    }
}

fn f_clifford(name: &str) -> CliffordAlgebra<ComplexQuad> {
    let f = builtin(name).unwrap();
    build(&f.gram, &f.hodge::<ComplexQuad>(1e-9).unwrap()).unwrap()
}

fn clifford_f2() -> &'static CliffordAlgebra<ComplexQuad> {
    static C: OnceLock<CliffordAlgebra<ComplexQuad>> = OnceLock::new();
    C.get_or_init(|| f_clifford("f2"))
}

fn endk2() -> &'static HodgeAlgebra<ComplexQuad> {
    static V: OnceLock<HodgeAlgebra<ComplexQuad>> = OnceLock::new();
    V.get_or_init(|| builtin("endk2").unwrap().algebra(1e-9).unwrap().unwrap())
}

fn elem(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((-3i64..=3).prop_map(Rational::from_i64), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn left_multiplication_is_a_representation(a in elem(16), b in elem(16), x in elem(16), y in elem(16)) {
        for alg in [endk2(), clifford_f2().base()] {
            let sc = alg.structure_constants();
            let ab = alg.mul(&a, &b);
            prop_assert_eq!(sc.left_matrix(&ab), sc.left_matrix(&a).mul(&sc.left_matrix(&b)).unwrap());
            let lhs = alg.form(&alg.mul(&a, &x), &y);
            let rhs = alg.form(&x, &alg.mul(&alg.t(&a), &y));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn clifford_form_is_symmetric(x in elem(16), y in elem(16)) {
        let core = clifford_f2().core();
        prop_assert_eq!(core.clifford_form(&x, &y), core.clifford_form(&y, &x));
    }
}

#[test]
fn center_idempotents() {
    let a = endk2();
    let c = center(a).unwrap();
    let k = c.center_alg(a).unwrap();
    let n = a.dim();
    for u in c.center.vectors() {
        let t = a.t(&u);
        assert!(c.center.contains(&t));
        for v in c.center.vectors() {
            assert!(c.center.contains(&a.mul(&u, &v)));
        }
        // definite form on the center: no nonzero isotropic basis vector
        assert!(!a.form(&u, &u).is_zero());
    }
    let comps = split_commutative(&c.plus_alg(a).unwrap()).unwrap();
    let mut sum = vec![Rational::from_i64(0); n];
    for (i, e) in comps.iter().enumerate() {
        for (s, x) in sum.iter_mut().zip(&e.ambient_idempotent) {
            *s = s.clone() + x;
        }
        for (j, f) in comps.iter().enumerate() {
            let p = a.mul(&e.ambient_idempotent, &f.ambient_idempotent);
            if i == j {
                assert_eq!(p, e.ambient_idempotent);
            } else {
                assert!(p.iter().all(Scalar::is_zero));
            }
        }
    }
    assert_eq!(sum, a.unit().to_vec());
    assert_eq!(k.dim(), 4);
}

#[test]
fn clifford_even_part_and_grading() {
    for name in ["f1", "f2"] {
        let cl = f_clifford(name);
        let core = cl.core();
        let dim = core.dim();
        assert_eq!(dim, 1 << core.rank());
        let even: Vec<usize> = (0..dim).filter(|m| m.count_ones() % 2 == 0).collect();
        let even_space = Subspace::span(
            dim,
            &even
                .iter()
                .map(|&m| unit_vector::<Rational>(dim, m))
                .collect::<Vec<_>>(),
        );
        for &x in &even {
            for &y in &even {
                let p = core.mul(&unit_vector::<Rational>(dim, x), &unit_vector(dim, y));
                assert!(even_space.contains(&p));
            }
        }
        // left multiplication by H^{1,1} preserves each Hodge piece of C(H)
        let hs = cl.base().hs();
        for h in cl.lattice().h11().vectors() {
            let e = core.embed(&h);
            let l = cl.base().structure_constants().left_matrix(&e);
            for piece in [hs.h20(), hs.h11(), hs.h02()] {
                assert!(piece.image(&l).unwrap().is_subspace_of(piece), "{name}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn weight1_validates_for_any_seed(seed in 0u64..10_000) {
        let cl = f_clifford("f1");
        let dec = decompose(cl.base()).unwrap();
        prop_assert_eq!(dec.w.dim() + dec.wbar.dim() + dec.m.dim(), cl.base().dim());
        let res = build_weight1(cl.base(), &dec, seed).unwrap();
        prop_assert!(res.w1.validate().passed());
    }
}

#[test]
fn decomposition_dimensions_on_builtins() {
    let algebras: Vec<HodgeAlgebra<ComplexQuad>> = vec![
        f_clifford("f1").base().clone(),
        clifford_f2().base().clone(),
        endk2().clone(),
        builtin("quat").unwrap().algebra(1e-9).unwrap().unwrap(),
    ];
    for a in &algebras {
        let dec = decompose(a).unwrap();
        assert_eq!(dec.w.dim() + dec.wbar.dim() + dec.m.dim(), a.dim());
        assert!(dec.report.passed());
    }
}

fn fixture_text() -> impl Strategy<Value = String> {
    (
        1usize..=4,
        proptest::collection::vec(-9i64..=9, 16),
        proptest::collection::vec((-5i64..=5, -5i64..=5), 4),
    )
        .prop_map(|(n, g, h)| {
            let mut s = format!("name p\nfield 2\nrank {n}\ngram\n");
            for i in 0..n {
                let row: Vec<String> = (0..n)
                    .map(|j| g[i.min(j) * 4 + i.max(j)].to_string())
                    .collect();
                s.push_str(&format!("  {}\n", row.join(" ")));
            }
            s.push_str("h20\n");
            let row: Vec<String> = h[..n]
                .iter()
                .map(|(a, b)| format!("{{re:[{a}, 1/2], im:{b}}}"))
                .collect();
            s.push_str(&format!("  {}\n", row.join(" ; ")));
            s
        })
}

proptest! {
    #[test]
    fn fixture_round_trip(text in fixture_text()) {
        let f = parse_fixture(&text).unwrap();
        let again = serialize(&f);
        prop_assert_eq!(&parse_fixture(&again).unwrap(), &f);
        prop_assert_eq!(serialize(&parse_fixture(&again).unwrap()), again);
    }
}
