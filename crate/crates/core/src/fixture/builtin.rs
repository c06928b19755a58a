//! Built-in fixtures.

use std::collections::BTreeMap;

use super::{ferr, parse_fixture, AlgebraBlock, Backend, Fixture, FixtureError};
use crate::hodge::{end_gram, flatten, induced_end_weight2, omega_adjoint, WeightOneHS};
use crate::linalg::{solve_rank, Matrix, Subspace};
use crate::scalars::{ComplexQuad, Rational, RealQuad, Scalar};

pub const BUILTIN_NAMES: [&str; 4] = ["f1", "f2", "endk2", "quat"];

const F1: &str = "\
name f1
field 1 exact
rank 3
gram
  1 0 0
  0 1 0
  0 0 -1
h20
  1 ; {re:0, im:1} ; 0
";

const F2: &str = "\
name f2
field 1 exact
rank 4
gram
  1 0 0 0
  0 1 0 0
  0 0 -1 0
  0 0 0 -1
h20
  1 ; {re:0, im:1} ; 0 ; 0
";

pub fn builtin(name: &str) -> Result<Fixture, FixtureError> {
    match name {
        "f1" => parse_fixture(F1),
        "f2" => parse_fixture(F2),
        "endk2" => Ok(endk2()),
        "quat" => Ok(quat()),
        _ => Err(ferr(
            0,
            "name",
            format!(
                "unknown builtin `{name}` (expected one of {})",
                BUILTIN_NAMES.join(", ")
            ),
        )),
    }
}

fn q(n: i64) -> Rational {
    Rational::from_i64(n)
}

fn quad(a: Rational, b: Rational) -> RealQuad {
    RealQuad::new(a, b, 2).expect("2 is square-free")
}

// K = Q(x, y), x^2 = 2, y^2 = -1, basis {1, x, y, xy}, index a + 2b for x^a y^b.
fn k_basis_mul(k: usize, l: usize) -> (i64, usize) {
    let (a, b) = (k % 2 + l % 2, k / 2 + l / 2);
    let c = if a == 2 { 2 } else { 1 } * if b == 2 { -1 } else { 1 };
    (c, a % 2 + 2 * (b % 2))
}

// Q(x) elements as (p, q) = p + q x.
fn kp_mul(u: (Rational, Rational), v: (Rational, Rational)) -> (Rational, Rational) {
    (
        u.0.clone() * &v.0 + q(2) * &(u.1.clone() * &v.1),
        u.0 * &v.1 + u.1 * &v.0,
    )
}

fn kp_sub(u: (Rational, Rational), v: (Rational, Rational)) -> (Rational, Rational) {
    (u.0 - &v.0, u.1 - &v.1)
}

// Omega(a + b y, c + d y) = a d - b c, the K+-bilinear form with Omega(1, y) = 1.
fn big_omega(u: &[Rational], v: &[Rational]) -> (Rational, Rational) {
    let alpha = (u[0].clone(), u[1].clone());
    let beta = (u[2].clone(), u[3].clone());
    let gamma = (v[0].clone(), v[1].clone());
    let delta = (v[2].clone(), v[3].clone());
    kp_sub(kp_mul(alpha, delta), kp_mul(beta, gamma))
}

fn k_mul_matrix(k: usize) -> Matrix<Rational> {
    let mut m = Matrix::zeros(4, 4);
    for l in 0..4 {
        let (c, idx) = k_basis_mul(k, l);
        m[(idx, l)] = q(c);
    }
    m
}

/// `H = End_K(K^2)` over Q with the weight-2 structure induced from a
/// polarized weight-1 structure on `V = K^2` whose complex structure is `y`
/// at `x = sqrt 2` and `y` resp. `-y` on the two factors at `x = -sqrt 2`.
fn endk2() -> Fixture {
    // omega(u, v) = tr(Omega_1) + tr(x Omega_2), with tr(p + q x) = 2p
    let mut omega = Matrix::<Rational>::zeros(8, 8);
    for f in 0..2 {
        for i in 0..4 {
            for j in 0..4 {
                let mut u = vec![q(0); 4];
                let mut v = vec![q(0); 4];
                u[i] = q(1);
                v[j] = q(1);
                let w = big_omega(&u, &v);
                let w = if f == 0 { w } else { kp_mul((q(0), q(1)), w) };
                omega[(f * 4 + i, f * 4 + j)] = q(2) * &w.0;
            }
        }
    }

    // I = y on factor 0, (sqrt2/2) x y on factor 1
    let my = k_mul_matrix(2);
    let mxy = k_mul_matrix(3);
    let half_root = quad(q(0), Rational::new(1, 2));
    let mut cplx = Matrix::<ComplexQuad>::zeros(8, 8);
    for i in 0..4 {
        for j in 0..4 {
            cplx[(i, j)] = ComplexQuad::from_rational(&my[(i, j)]);
            let e = half_root.clone() * &RealQuad::from_rational(&mxy[(i, j)]);
            cplx[(4 + i, 4 + j)] = ComplexQuad::new(e, RealQuad::zero());
        }
    }
    for i in 0..8 {
        cplx[(i, i)] = cplx[(i, i)].clone() + &ComplexQuad::i();
    }
    let h10 = solve_rank(&cplx, None).expect("square system").kernel;
    let w1 = WeightOneHS::new(omega.clone(), h10).expect("valid weight-1 data");
    let end_hs = induced_end_weight2(&w1).expect("positive complex structure");

    // basis (r*2 + s)*4 + k of M_2(K) acting on V (index f*4 + k)
    let mut acts = Vec::with_capacity(16);
    for r in 0..2 {
        for s in 0..2 {
            for k in 0..4 {
                let mut a = Matrix::<Rational>::zeros(8, 8);
                for l in 0..4 {
                    let (c, idx) = k_basis_mul(k, l);
                    a[(r * 4 + idx, s * 4 + l)] = q(c);
                }
                acts.push(a);
            }
        }
    }
    let index = |r: usize, s: usize, k: usize| (r * 2 + s) * 4 + k;
    let a_mat =
        Matrix::from_columns(64, &acts.iter().map(flatten).collect::<Vec<_>>()).expect("shape");

    let mut sc = Vec::new();
    for r in 0..2 {
        for s in 0..2 {
            for t in 0..2 {
                for k in 0..4 {
                    for l in 0..4 {
                        let (c, m) = k_basis_mul(k, l);
                        sc.push((index(r, s, k), index(s, t, l), index(r, t, m), q(c)));
                    }
                }
            }
        }
    }
    let mut unit = vec![q(0); 16];
    unit[index(0, 0, 0)] = q(1);
    unit[index(1, 1, 0)] = q(1);

    let adj_cols: Vec<Vec<Rational>> = acts
        .iter()
        .map(|a| flatten(&omega_adjoint(&omega, a).expect("square")))
        .collect();
    let adj = Matrix::from_columns(64, &adj_cols).expect("shape");
    let involution = solve_rank(&a_mat, Some(&adj))
        .expect("shape")
        .solution
        .expect("End_K(V) is stable under the omega-adjoint");

    let eg = end_gram(&omega).expect("nondegenerate omega");
    let gram = a_mat
        .transpose()
        .mul(&eg.mul(&a_mat).expect("shape"))
        .expect("shape");

    let a_c: Matrix<ComplexQuad> = a_mat.to_scalar();
    let h20_end = Subspace::column_span(&a_c)
        .intersect(end_hs.h20())
        .expect("same ambient");
    let vecs = h20_end.vectors();
    let rhs = Matrix::from_columns(64, &vecs).expect("shape");
    let coords = solve_rank(&a_c, Some(&rhs))
        .expect("shape")
        .solution
        .expect("inside H");
    let h20 = coords.columns();

    Fixture {
        name: "endk2".into(),
        d: 2,
        backend: Backend::Exact,
        gram,
        h20,
        algebra: Some(AlgebraBlock {
            structure_constants: sc,
            unit,
            involution,
        }),
        weight1: None,
        options: BTreeMap::new(),
    }
}

// Quaternion units {1, i, j, k} of (-1, -x): products as (coefficient in Q(x), unit).
fn quat_unit_mul(a: usize, b: usize) -> ((i64, i64), usize) {
    match (a, b) {
        (0, u) | (u, 0) => ((1, 0), u),
        (1, 1) => ((-1, 0), 0),
        (2, 2) | (3, 3) => ((0, -1), 0),
        (1, 2) => ((1, 0), 3),
        (2, 1) => ((-1, 0), 3),
        (1, 3) => ((-1, 0), 2),
        (3, 1) => ((1, 0), 2),
        (2, 3) => ((0, 1), 1),
        (3, 2) => ((0, -1), 1),
        _ => unreachable!(),
    }
}

/// The quaternion algebra `(-1, -sqrt 2)` over `Q(sqrt 2)`, ramified at one
/// real place, seen as an 8-dimensional Q-algebra with its canonical
/// involution. The center `Q(sqrt 2)` is fixed by the involution.
fn quat() -> Fixture {
    let n = 8;
    let idx = |u: usize, c: usize| u * 2 + c;
    let mut table = vec![vec![vec![q(0); n]; n]; n];
    let mut sc = Vec::new();
    for u in 0..4 {
        for c in 0..2 {
            for v in 0..4 {
                for e in 0..2 {
                    let ((p0, p1), w) = quat_unit_mul(u, v);
                    // (p0 + p1 x) x^(c+e)
                    let mut coeff = (q(p0), q(p1));
                    for _ in 0..c + e {
                        coeff = (q(2) * &coeff.1, coeff.0);
                    }
                    let (i, j) = (idx(u, c), idx(v, e));
                    for (cc, val) in [(0, coeff.0), (1, coeff.1)] {
                        if !val.is_zero() {
                            table[i][j][idx(w, cc)] = val.clone();
                            sc.push((i, j, idx(w, cc), val));
                        }
                    }
                }
            }
        }
    }
    let mut involution = Matrix::<Rational>::zeros(n, n);
    for i in 0..n {
        involution[(i, i)] = if i < 2 { q(1) } else { q(-1) };
    }
    let mut gram = Matrix::<Rational>::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            // b_a t(b_b), rational part of the scalar component
            let tb = &involution[(b, b)];
            gram[(a, b)] = q(-2) * &(table[a][b][0].clone() * tb);
        }
    }
    let mut unit = vec![q(0); n];
    unit[0] = q(1);

    let c = |re: RealQuad, im: RealQuad| ComplexQuad::new(re, im);
    let z = RealQuad::zero;
    let half = quad(Rational::new(1, 2), q(0));
    let quarter_root = quad(q(0), Rational::new(-1, 4));
    let mut eta = vec![ComplexQuad::zero(); n];
    eta[idx(2, 0)] = c(half.clone(), z());
    eta[idx(2, 1)] = c(quarter_root.clone(), z());
    eta[idx(3, 0)] = c(z(), half);
    eta[idx(3, 1)] = c(z(), quarter_root);

    Fixture {
        name: "quat".into(),
        d: 2,
        backend: Backend::Exact,
        gram,
        h20: vec![eta],
        algebra: Some(AlgebraBlock {
            structure_constants: sc,
            unit,
            involution,
        }),
        weight1: None,
        options: BTreeMap::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate_algebra;
    use crate::fixture::serialize;

    #[test]
    fn builtins_round_trip() {
        for name in BUILTIN_NAMES {
            let f = builtin(name).unwrap();
            assert_eq!(parse_fixture(&serialize(&f)).unwrap(), f, "{name}");
        }
        assert!(builtin("f3").is_err());
    }

    #[test]
    fn endk2_shape() {
        let f = builtin("endk2").unwrap();
        assert_eq!(f.rank(), 16);
        let a = f.algebra::<ComplexQuad>(1e-9).unwrap().unwrap();
        let rep = validate_algebra(&a);
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn quat_shape() {
        let f = builtin("quat").unwrap();
        let a = f.algebra::<ComplexQuad>(1e-9).unwrap().unwrap();
        assert_eq!(a.hs().hodge_numbers(), (1, 6, 1));
        let rep = validate_algebra(&a);
        assert!(rep.passed(), "{rep}");
    }
}
