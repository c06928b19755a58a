use ks_core::clifford::{build, format_element};
use ks_core::construction::{construct, decompose, verify_uniqueness, Verdict};
use ks_core::fixture::builtin;
use ks_core::scalars::{ComplexQuad, Rational, Scalar};

fn f1_clifford() -> ks_core::clifford::CliffordAlgebra<ComplexQuad> {
    let f = builtin("f1").unwrap();
    let hs = f.hodge::<ComplexQuad>(1e-9).unwrap();
    build(&f.gram, &hs).unwrap()
}

#[test]
fn f1_pipeline() {
    let cl = f1_clifford();
    let (dec, res) = construct(cl.base(), 0, 1e-9).unwrap();
    assert!(dec.report.passed(), "{}", dec.report);
    assert!(dec.m.is_zero());
    assert_eq!(dec.w.dim(), 4);
    assert_eq!(res.w1.genus(), 4);
    assert!(res.w1.is_exact());
    assert!(res.report.passed(), "{}", res.report);
    assert!(res.w1.validate().passed());
    assert_eq!(format_element(&res.a), "4*e{1}e{2}");
}

#[test]
fn f1_uniqueness() {
    let cl = f1_clifford();
    let (_, res) = construct(cl.base(), 0, 1e-9).unwrap();
    let (v, _) = verify_uniqueness(cl.base(), &res, &res.w);
    assert_eq!(v, Verdict::Equal);
    let (v, rep) = verify_uniqueness(cl.base(), &res, &res.w.conj());
    assert!(matches!(v, Verdict::NotAValidChallenger(_)), "{rep}");
    assert!(rep.failures().iter().any(|c| c.name == "H20.H in W'"));
}

#[test]
fn endk2_general() {
    let f = builtin("endk2").unwrap();
    let a = f.algebra::<ComplexQuad>(1e-9).unwrap().unwrap();
    let dec = decompose(&a).unwrap();
    assert_eq!(dec.m.dim(), 8);
    assert_eq!(dec.w.dim() + dec.wbar.dim(), 8);
    let (_, res) = construct(&a, 0, 1e-9).unwrap();
    assert!(res.report.passed(), "{}", res.report);
    let in_m: Vec<_> = res.sigma_data.iter().filter(|s| s.in_m).collect();
    assert_eq!(in_m.len(), 1);
    assert!((in_m[0].root - 2f64.sqrt()).abs() < 1e-12);
    assert!(res.w1.validate().passed());
}

#[test]
fn quat_general_float() {
    let f = builtin("quat").unwrap();
    let a = f.algebra::<ComplexQuad>(1e-9).unwrap().unwrap();
    let dec = decompose(&a).unwrap();
    assert_eq!(dec.w.dim(), 2);
    assert_eq!(dec.m.dim(), 4);
    let (_, res) = construct(&a, 0, 1e-9).unwrap();
    assert!(res.report.passed(), "{}", res.report);
    assert!(!res.w1.is_exact());
    assert!(res.w1.validate().passed());
}

#[test]
fn isotropy_for_random_antiinvariant() {
    use rand::{Rng, SeedableRng};
    let cl = f1_clifford();
    let a = cl.base();
    let n = a.dim();
    let w = decompose(a).unwrap().w;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let r: Vec<Rational> = (0..n)
            .map(|_| Rational::from_i64(rng.gen_range(-5..=5)))
            .collect();
        let tr = a.involution().mul_vec(&r).unwrap();
        let anti: Vec<Rational> = r.iter().zip(&tr).map(|(x, y)| x.clone() - y).collect();
        let om = a.omega_form(&anti).to_scalar::<ComplexQuad>();
        let vs = w.vectors();
        for x in &vs {
            for y in &vs {
                assert!(om.bilinear(x, y).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn e_beta_negative_control() {
    use ks_core::construction::{e_beta_maps, left_regular};
    use ks_core::hodge::WeightOneHS;
    use ks_core::linalg::unit_vector;
    let cl = f1_clifford();
    let a = cl.base();
    let (_, res) = construct(a, 0, 1e-9).unwrap();
    let b = res.w1.exact().unwrap();
    let emb = left_regular(a);
    let betas: Vec<Vec<Rational>> = (0..8).map(|i| unit_vector(8, i)).collect();
    let rep = e_beta_maps(a, &res, b, &emb, &betas).unwrap();
    assert!(rep.passed(), "{rep}");
    // the conjugate complex structure on the target is not hit by W
    let flipped = WeightOneHS::new(b.omega().clone(), b.h10().conj()).unwrap();
    let rep = e_beta_maps(a, &res, &flipped, &emb, &betas).unwrap();
    assert!(rep
        .failures()
        .iter()
        .any(|c| c.name.starts_with("morphism")));
    // right multiplication is not an algebra map for C(H)
    let right: Vec<_> = (0..8)
        .map(|i| {
            a.structure_constants()
                .right_matrix(&unit_vector::<Rational>(8, i))
        })
        .collect();
    assert!(e_beta_maps(a, &res, b, &right, &betas).is_err());
}

#[test]
fn polarization_terms_are_semidefinite() {
    use ks_core::construction::polarization_terms;
    use ks_core::hodge::gram_on;
    use ks_core::linalg::{hermitian_definiteness, Definiteness};
    let cl = f1_clifford();
    let a = cl.base();
    let w = decompose(a).unwrap().w;
    let terms = polarization_terms(a).unwrap();
    assert!(!terms.is_empty());
    let i = ComplexQuad::i();
    for t in &terms {
        let q: Vec<Rational> = t.iter().map(|x| x.real_parts().unwrap().0).collect();
        assert!(t.iter().all(|x| x.is_real()));
        let om = a.omega_form(&q).to_scalar::<ComplexQuad>();
        let h = gram_on(&w.vectors(), &om, true).unwrap().scale(&i);
        let cert = hermitian_definiteness(&h, true).unwrap();
        assert!(
            matches!(
                cert.verdict,
                Definiteness::Positive | Definiteness::Degenerate
            ),
            "{}",
            cert.verdict
        );
        assert!(cert.verify(&h));
    }
}

#[test]
fn quat_m_relation_and_center() {
    use ks_core::algebra::center;
    let f = builtin("quat").unwrap();
    let a = f.algebra::<ComplexQuad>(1e-9).unwrap().unwrap();
    let c = center(&a).unwrap();
    assert_eq!(c.center.dim(), 2);
    assert_eq!(c.t_invariant.dim(), 2);
    let (_, res) = construct(&a, 3, 1e-9).unwrap();
    let rel: Vec<_> = res
        .report
        .certificates
        .iter()
        .filter(|c| c.name.contains("relation"))
        .collect();
    assert!(
        !rel.is_empty() && rel.iter().all(|c| c.passed),
        "{}",
        res.report
    );
    assert!(
        res.notes.iter().any(|n| n.contains("float")),
        "{:?}",
        res.notes
    );
}

#[test]
fn endk2_m_block_commutes_with_left_multiplication() {
    let f = builtin("endk2").unwrap();
    let a = f.algebra::<ComplexQuad>(1e-9).unwrap().unwrap();
    let (_, res) = construct(&a, 0, 1e-9).unwrap();
    let c = res
        .report
        .certificates
        .iter()
        .find(|c| c.name.contains("commutes-with-left"))
        .unwrap();
    assert!(c.passed);
    assert!(res.w1.is_exact());
    assert_eq!(res.w1.genus(), 8);
}
