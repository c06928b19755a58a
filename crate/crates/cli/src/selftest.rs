//! The acceptance criteria as runnable checks. `kuga-satake selftest` and the
//! `acceptance` test target both go through [`run_all`].

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ks_core::algebra::{
    center, split_commutative, validate_algebra, CommAlg, Poly, StructureConstants,
};
use ks_core::clifford::{build, format_element, ks_structure, CliffordAlgebra};
use ks_core::construction::{
    build_weight1, construct, decompose, e_beta_maps, left_regular, verify_uniqueness, Verdict,
};
use ks_core::fixture::builtin;
use ks_core::hodge::gram_on;
use ks_core::linalg::{hermitian_definiteness, unit_vector, Definiteness, Subspace};
use ks_core::scalars::{ComplexQuad, Rational, RealQuad, Scalar, Sign};

use crate::{run_command, EXIT_CONFIG, EXIT_VALIDATION};

const TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    /// Failed checks, or a summary when everything passed.
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "criterion {} {status} {}: {}",
            self.id, self.title, self.detail
        )
    }
}

#[derive(Default)]
struct Checks {
    failed: Vec<String>,
    summary: Vec<String>,
}

impl Checks {
    fn ok(&mut self, cond: bool, what: impl Into<String>) {
        if !cond {
            self.failed.push(what.into());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.summary.push(s.into());
    }
}

type Body = fn(&mut Checks) -> Result<(), String>;

fn run(id: u8, title: &'static str, limit: Option<Duration>, body: Body) -> CriterionResult {
    let start = Instant::now();
    let mut c = Checks::default();
    if let Err(e) = body(&mut c) {
        c.failed.push(format!("error: {e}"));
    }
    let elapsed = start.elapsed();
    if let Some(l) = limit {
        c.ok(
            elapsed <= l,
            format!(
                "runtime {:.1} s exceeds {} s",
                elapsed.as_secs_f64(),
                l.as_secs()
            ),
        );
        if elapsed <= l {
            c.note(format!("within {} s", l.as_secs()));
        }
    }
    let passed = c.failed.is_empty();
    let detail = if passed {
        c.summary.join("; ")
    } else {
        c.failed.join("; ")
    };
    CriterionResult {
        id,
        title,
        passed,
        detail,
        elapsed,
    }
}

pub fn run_all() -> Vec<CriterionResult> {
    vec![
        clifford_relations(),
        kuga_satake_equivalence(),
        pipeline_f1(),
        uniqueness(),
        end_k2_example(),
        center_machinery(),
        universal_property(),
        hodge_riemann(),
        negative_controls(),
    ]
}

fn clifford_of(name: &str) -> Result<CliffordAlgebra<ComplexQuad>, String> {
    let f = builtin(name).map_err(|e| e.to_string())?;
    let hs = f.hodge::<ComplexQuad>(TOL).map_err(|e| e.to_string())?;
    build(&f.gram, &hs).map_err(|e| e.to_string())
}

fn random_rational(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|_| Rational::from_i64(rng.gen_range(-3..=3)))
        .collect()
}

pub fn clifford_relations() -> CriterionResult {
    run(
        1,
        "Clifford relations",
        Some(Duration::from_secs(10)),
        |c| {
            for name in ["f1", "f2"] {
                let cl = clifford_of(name)?;
                let core = cl.core();
                let (n, dim) = (core.rank(), core.dim());
                let rep = validate_algebra(cl.base());
                let assoc = rep.get("associative").is_some_and(|x| x.passed);
                c.ok(
                    assoc,
                    format!(
                        "{name}: associativity over all {} basis triples",
                        dim * dim * dim
                    ),
                );
                for i in 0..n {
                    let g: Vec<Rational> = core.generator(i);
                    let sq = core.mul(&g, &g);
                    let expect: Vec<Rational> = core
                        .unit()
                        .iter()
                        .map(|u| -(u.clone() * &core.generator_gram()[(i, i)]))
                        .collect();
                    c.ok(
                        sq == expect,
                        format!("{name}: e{}^2 = -G'[{i}][{i}]", i + 1),
                    );
                }
                let invol = (0..dim).all(|k| {
                    let b = unit_vector::<Rational>(dim, k);
                    core.reversal(&core.reversal(&b)) == b
                });
                c.ok(invol, format!("{name}: reversal is an involution"));
                let mut rng = ChaCha8Rng::seed_from_u64(1);
                let mut bad = 0;
                for _ in 0..100 {
                    let (v, x, y) = (
                        random_rational(&mut rng, dim),
                        random_rational(&mut rng, dim),
                        random_rational(&mut rng, dim),
                    );
                    let lhs = core.clifford_form(&core.mul(&v, &x), &y);
                    let rhs = core.clifford_form(&x, &core.mul(&core.reversal(&v), &y));
                    if lhs != rhs {
                        bad += 1;
                    }
                }
                c.ok(
                    bad == 0,
                    format!("{name}: adjunction fails on {bad} of 100 random triples"),
                );
                c.note(format!("{name}: dim {dim}, {} triples", dim * dim * dim));
            }
            Ok(())
        },
    )
}

pub fn kuga_satake_equivalence() -> CriterionResult {
    run(2, "Kuga-Satake equivalence", None, |c| {
        let cl = clifford_of("f1")?;
        let ks = ks_structure(&cl, TOL, false).map_err(|e| e.to_string())?;
        for name in ["e-real", "e-squared", "eigenspace-equals-W"] {
            c.ok(
                ks.report.get(name).is_some_and(|x| x.passed),
                format!("certificate {name}"),
            );
        }
        let core = cl.core();
        let e21: Vec<ComplexQuad> = core.mul(&core.generator(1), &core.generator(0));
        c.ok(ks.e.as_deref() == Some(&e21[..]), "e = e2 e1");
        c.ok(
            ks.float_angle < TOL,
            format!("principal angle {:.2e} >= {TOL:e}", ks.float_angle),
        );
        c.note(format!(
            "e = {}, dim W = {}, float angle {:.1e}",
            ks.e.as_deref().map(format_element).unwrap_or_default(),
            ks.w.dim(),
            ks.float_angle
        ));
        Ok(())
    })
}

pub fn pipeline_f1() -> CriterionResult {
    run(3, "weight-1 pipeline on f1", None, |c| {
        let cl = clifford_of("f1")?;
        let a = cl.base();
        let dec = decompose(a).map_err(|e| e.to_string())?;
        for name in ["W-cap-Wbar-zero", "ideal-left", "ideal-right"] {
            c.ok(
                dec.report.get(name).is_some_and(|x| x.passed),
                format!("certificate {name}"),
            );
        }
        c.ok(dec.m.is_zero(), format!("M = 0 (dim {})", dec.m.dim()));
        let res = build_weight1(a, &dec, 0).map_err(|e| e.to_string())?;
        c.ok(res.w1.genus() == 4, format!("g = {}", res.w1.genus()));
        let Some(w1) = res.w1.exact() else {
            return Err("weight-1 structure is not exact".into());
        };
        let ta = a.involution().mul_vec(&res.a).map_err(|e| e.to_string())?;
        let neg: Vec<Rational> = res.a.iter().map(|x| -x.clone()).collect();
        c.ok(ta == neg, "t(a) = -a");
        let om = a.omega_form(&res.a).to_scalar::<ComplexQuad>();
        let basis = dec.w.vectors();
        let iso = gram_on(&basis, &om, false).map_err(|e| e.to_string())?;
        c.ok(iso.is_zero(), "W totally isotropic under omega_a");
        let h = w1.hermitian_gram(&basis).map_err(|e| e.to_string())?;
        let cert = hermitian_definiteness(&h, true).map_err(|e| e.to_string())?;
        let exact_pos = cert.verify(&h) && cert.signs.iter().all(|s| *s == Sign::Positive);
        c.ok(
            cert.verdict == Definiteness::Positive && exact_pos,
            format!("h_a on W: {}", cert.verdict),
        );
        c.ok(res.w1.validate().passed(), "validate_weight1");
        c.note(format!(
            "g = {}, a = {}",
            res.w1.genus(),
            format_element(&res.a)
        ));
        Ok(())
    })
}

fn random_subspace(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Subspace<ComplexQuad> {
    let vs: Vec<Vec<ComplexQuad>> = (0..k)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let re = RealQuad::from_i64(rng.gen_range(-4..=4));
                    let im = RealQuad::from_i64(rng.gen_range(-4..=4));
                    ComplexQuad::new(re, im)
                })
                .collect()
        })
        .collect();
    Subspace::span(n, &vs)
}

pub fn uniqueness() -> CriterionResult {
    run(4, "uniqueness of W", None, |c| {
        let cl = clifford_of("f1")?;
        let a = cl.base();
        let (_, res) = construct(a, 0, TOL).map_err(|e| e.to_string())?;
        let (v, _) = verify_uniqueness(a, &res, &res.w);
        c.ok(v == Verdict::Equal, "challenger W returns equal");
        let (v, rep) = verify_uniqueness(a, &res, &res.w.conj());
        let containment_failed = rep.get("H20.H in W'").is_some_and(|x| !x.passed);
        c.ok(
            matches!(v, Verdict::NotAValidChallenger(_)) && containment_failed,
            "Wbar rejected by containment",
        );
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut rejected = 0;
        for _ in 0..10 {
            let s = random_subspace(&mut rng, a.dim(), res.w.dim());
            if matches!(
                verify_uniqueness(a, &res, &s).0,
                Verdict::NotAValidChallenger(_)
            ) {
                rejected += 1;
            }
        }
        c.ok(
            rejected == 10,
            format!("{rejected} of 10 random challengers rejected"),
        );
        c.note(format!(
            "W equal, Wbar rejected, {rejected}/10 random challengers rejected"
        ));
        Ok(())
    })
}

pub fn end_k2_example() -> CriterionResult {
    run(
        5,
        "example with M and W both nonzero",
        Some(Duration::from_secs(30)),
        |c| {
            let f = builtin("endk2").map_err(|e| e.to_string())?;
            let a = f
                .algebra::<ComplexQuad>(TOL)
                .map_err(|e| e.to_string())?
                .ok_or("no algebra")?;
            c.ok(a.dim() == 16, format!("dim H = {}", a.dim()));
            let (dec, res) = construct(&a, 0, TOL).map_err(|e| e.to_string())?;
            c.ok(dec.m.dim() == 8, format!("dim M = {}", dec.m.dim()));
            c.ok(
                dec.w.dim() + dec.wbar.dim() == 8,
                format!("dim W + dim Wbar = {}", dec.w.dim() + dec.wbar.dim()),
            );
            let in_m: Vec<_> = res.sigma_data.iter().filter(|s| s.in_m).collect();
            c.ok(
                in_m.len() == 1 && (in_m[0].root - 2f64.sqrt()).abs() < 1e-12,
                "M is the block at sqrt 2",
            );
            let has = |pat: &str| {
                let found: Vec<_> = res
                    .report
                    .certificates
                    .iter()
                    .filter(|x| x.name.contains(pat))
                    .collect();
                !found.is_empty() && found.iter().all(|x| x.passed)
            };
            c.ok(has("relation"), "m a t(m) = a on the M-block");
            c.ok(has("block-positive"), "positivity on the M-block");
            c.ok(
                in_m.iter().all(|s| s.exact),
                "M-block certified in Q(sqrt 2)",
            );
            c.ok(res.report.passed(), "general construction report");
            c.ok(res.w1.validate().passed(), "validate_weight1");
            c.note(format!(
                "dim M = {}, dim W+Wbar = {}, exact in Q(sqrt 2)",
                dec.m.dim(),
                dec.w.dim() + dec.wbar.dim()
            ));
            Ok(())
        },
    )
}

/// Float count of real roots: sign changes on a fine grid inside the
/// Cauchy bound. Valid for the squarefree test polynomials used here.
fn grid_root_count(p: &Poly) -> usize {
    let cs: Vec<f64> = p
        .coeffs()
        .iter()
        .map(Scalar::to_complex_f64)
        .map(|z| z.0)
        .collect();
    let lead = cs.last().copied().unwrap_or(1.0);
    let bound = 1.0 + cs.iter().map(|x| (x / lead).abs()).fold(0.0, f64::max);
    let steps = 200_000;
    let h = 2.0 * bound / steps as f64;
    let mut count = 0;
    let mut prev = p.eval_f64(-bound);
    for k in 1..=steps {
        let v = p.eval_f64(-bound + k as f64 * h);
        if v == 0.0 || (prev != 0.0 && v.signum() != prev.signum()) {
            count += 1;
        }
        prev = v;
    }
    count
}

pub fn center_machinery() -> CriterionResult {
    run(6, "center machinery", None, |c| {
        let cl = clifford_of("f1")?;
        let core = cl.core();
        let dim = core.dim();
        let rep = center(cl.base()).map_err(|e| e.to_string())?;
        // oracle: monomials commuting with every monomial
        let mono = |m: usize| unit_vector::<Rational>(dim, m);
        let central: Vec<Vec<Rational>> = (0..dim)
            .filter(|&m| {
                (0..dim).all(|k| core.mul(&mono(m), &mono(k)) == core.mul(&mono(k), &mono(m)))
            })
            .map(mono)
            .collect();
        let oracle = Subspace::span(dim, &central);
        c.ok(
            rep.center.dim() == 2,
            format!("dim center = {}", rep.center.dim()),
        );
        c.ok(
            rep.center == oracle,
            "center agrees with the commutator oracle",
        );
        c.ok(
            oracle == Subspace::span(dim, &[mono(0), mono(7)]),
            "center = span{1, e1e2e3}",
        );

        let mut sc = StructureConstants::new(2);
        let one = Rational::from_i64(1);
        sc.set(0, 0, 0, one.clone());
        sc.set(0, 1, 1, one.clone());
        sc.set(1, 0, 1, one.clone());
        sc.set(1, 1, 0, one.clone());
        let k = CommAlg::new(sc, vec![one.clone(), Rational::from_i64(0)])
            .map_err(|e| e.to_string())?;
        let comps = split_commutative(&k).map_err(|e| e.to_string())?;
        let half = Rational::new(1, 2);
        let mut got: Vec<Vec<Rational>> = comps.iter().map(|x| x.idempotent.clone()).collect();
        got.sort_by_key(|v| v[1].to_complex_f64().0 < 0.0);
        let want = vec![
            vec![half.clone(), half.clone()],
            vec![half.clone(), -half.clone()],
        ];
        c.ok(
            got == want,
            "Q[x]/(x^2-1) splits with idempotents (1+x)/2, (1-x)/2",
        );

        for (coeffs, real) in [
            (&[-2i64, 0, 1][..], true),
            (&[1, 0, 1][..], false),
            (&[5, 0, -5, 0, 1][..], true),
        ] {
            let p = Poly::from_i64(coeffs);
            let tr = p.is_totally_real().map_err(|e| e.to_string())?;
            c.ok(tr == real, format!("totally_real({p}) = {tr}"));
            let (sturm, grid) = (p.count_real_roots(), grid_root_count(&p));
            c.ok(
                sturm == grid,
                format!("{p}: Sturm count {sturm}, float count {grid}"),
            );
        }
        c.note("center {1, e{1}e{2}e{3}}, idempotents (1+-x)/2, totally real flags and root counts agree");
        Ok(())
    })
}

pub fn universal_property() -> CriterionResult {
    run(7, "universal property", None, |c| {
        let cl = clifford_of("f1")?;
        let a = cl.base();
        let (_, res) = construct(a, 0, TOL).map_err(|e| e.to_string())?;
        let b = res.w1.exact().ok_or("weight-1 structure is not exact")?;
        let emb = left_regular(a);
        let m = b.rank();
        let betas: Vec<Vec<Rational>> = (0..m).map(|i| unit_vector(m, i)).collect();
        let rep = e_beta_maps(a, &res, b, &emb, &betas).map_err(|e| e.to_string())?;
        for cert in &rep.certificates {
            c.ok(cert.passed, format!("{}: {}", cert.name, cert.witness));
        }
        c.note(format!(
            "{} maps e_beta, sum surjective, stacked injective",
            betas.len()
        ));
        Ok(())
    })
}

pub fn hodge_riemann() -> CriterionResult {
    run(8, "Hodge-Riemann relations on C(H)", None, |c| {
        let cl = clifford_of("f1")?;
        let hs = cl.base().hs();
        c.ok(
            hs.hodge_numbers() == (2, 4, 2),
            format!("Hodge numbers {:?}", hs.hodge_numbers()),
        );
        let core = cl.core();
        let dim = core.dim();
        let form_ok = (0..dim).all(|i| {
            (0..dim).all(|j| {
                let (x, y) = (
                    unit_vector::<Rational>(dim, i),
                    unit_vector::<Rational>(dim, j),
                );
                core.clifford_form(&x, &y) == hs.gram()[(i, j)]
            })
        });
        c.ok(form_ok, "polarization is the Clifford form");
        for (name, space, want) in [
            ("(2,0)", hs.h20(), Definiteness::Positive),
            ("(1,1)", hs.h11(), Definiteness::Negative),
        ] {
            let g = gram_on(&space.vectors(), hs.gram_s(), true).map_err(|e| e.to_string())?;
            let cert = hermitian_definiteness(&g, true).map_err(|e| e.to_string())?;
            c.ok(
                cert.verdict == want && cert.verify(&g),
                format!("{name} part: {}", cert.verdict),
            );
        }
        c.note("(2,4,2), positive on (2,0), negative on (1,1)");
        Ok(())
    })
}

const BAD_ETA: &str = "\
name bad-eta
field 1 exact
rank 3
gram
  1 0 0
  0 1 0
  0 0 -1
h20
  1 ; 0 ; {re:0, im:1}
";

const ASYMMETRIC: &str = "\
name asymmetric
field 1 exact
rank 3
gram
  1 2 0
  0 1 0
  0 0 -1
h20
  1 ; {re:0, im:1} ; 0
";

// M_2(Q) on E11, E12, E21, E22 with the identity as involution
const MATRIX_T_ID: &str = "\
name matrix-t-id
field 1 exact
rank 4
gram
  1 0 0 0
  0 1 0 0
  0 0 -1 0
  0 0 0 -1
h20
  1 ; {re:0, im:1} ; 0 ; 0
structure_constants
  0 0 0 1
  0 1 1 1
  1 2 0 1
  1 3 1 1
  2 0 2 1
  2 1 3 1
  3 2 2 1
  3 3 3 1
unit 1 0 0 1
involution
  1 0 0 0
  0 1 0 0
  0 0 1 0
  0 0 0 1
";

pub fn negative_controls() -> CriterionResult {
    run(9, "negative controls", None, |c| {
        let cases = [
            (
                "bad eta",
                BAD_ETA,
                EXIT_VALIDATION,
                "violated invariant: h20-",
            ),
            ("asymmetric gram", ASYMMETRIC, EXIT_CONFIG, "not symmetric"),
            (
                "t = id on M_2(Q)",
                MATRIX_T_ID,
                EXIT_VALIDATION,
                "FAIL anti-homomorphism",
            ),
        ];
        for (label, text, code, needle) in cases {
            let out = run_command(["kuga-satake", "validate", "-"], &mut text.as_bytes());
            c.ok(
                out.code == code,
                format!("{label}: exit {} (expected {code})", out.code),
            );
            c.ok(
                out.output.contains(needle),
                format!("{label}: report does not mention `{needle}`"),
            );
        }
        c.note("bad eta -> exit 2, asymmetric gram -> exit 3, t = id -> exit 2");
        Ok(())
    })
}
