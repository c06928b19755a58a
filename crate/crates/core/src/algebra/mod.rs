//! Finite-dimensional algebras over Q with an involution and a compatible
//! weight-2 Hodge structure.

mod center;
mod poly;

use thiserror::Error;

use crate::hodge::{HodgeError, WeightTwoHS};
use crate::linalg::{LinalgError, Matrix, Subspace};
use crate::report::ReportBlock;
use crate::scalars::{FloatComplex, Rational, Scalar};

pub use center::{
    center, minimal_polynomial, split_commutative, subalgebra_generated, trace_form_signature,
    CenterReport, CommAlg, Component,
};
pub use poly::Poly;

pub const MAX_DIM: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("algebra dimension {0} exceeds the cap of {MAX_DIM}")]
    TooLarge(usize),
    #[error("unsupported center: {0}")]
    UnsupportedCenter(String),
    #[error("polynomial {0} is not squarefree")]
    NotSquarefree(String),
    #[error("commutative algebra has a nilpotent element (minimal polynomial {0})")]
    Nilpotent(String),
    #[error("algebra is not commutative")]
    NotCommutative,
    #[error(transparent)]
    Hodge(#[from] HodgeError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Sparse multiplication table: `e_i e_j = Σ_k c_ijk e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    n: usize,
    table: Vec<Vec<(usize, Rational)>>,
}

impl StructureConstants {
    pub fn new(n: usize) -> Self {
        StructureConstants {
            n,
            table: vec![Vec::new(); n * n],
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Vec<Rational>) -> Self {
        let mut sc = Self::new(n);
        for i in 0..n {
            for j in 0..n {
                for (k, v) in f(i, j).into_iter().enumerate() {
                    sc.set(i, j, k, v);
                }
            }
        }
        sc
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        let cell = &mut self.table[i * self.n + j];
        cell.retain(|(kk, _)| *kk != k);
        if !v.is_zero() {
            cell.push((k, v));
            cell.sort_by_key(|(kk, _)| *kk);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i * self.n + j]
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> Rational {
        self.get(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero constants as `(i, j, k, value)`, sorted.
    pub fn triples(&self) -> Vec<(usize, usize, usize, Rational)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                for (k, v) in self.get(i, j) {
                    out.push((i, j, *k, v.clone()));
                }
            }
        }
        out
    }

    pub fn mul<T: Scalar>(&self, x: &[T], y: &[T]) -> Vec<T> {
        let n = self.n;
        let mut out = vec![T::zero(); n];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let cell = &self.table[i * n + j];
                if cell.is_empty() {
                    continue;
                }
                let ab = a.clone() * b;
                for (k, c) in cell {
                    out[*k] = out[*k].clone() + &ab.scale(c);
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ a·x`.
    pub fn left_matrix<T: Scalar>(&self, a: &[T]) -> Matrix<T> {
        let cols: Vec<Vec<T>> = (0..self.n)
            .map(|j| self.mul(a, &basis_vec::<T>(self.n, j)))
            .collect();
        Matrix::from_columns(self.n, &cols).expect("square")
    }

    /// Matrix of `x ↦ x·a`.
    pub fn right_matrix<T: Scalar>(&self, a: &[T]) -> Matrix<T> {
        let cols: Vec<Vec<T>> = (0..self.n)
            .map(|j| self.mul(&basis_vec::<T>(self.n, j), a))
            .collect();
        Matrix::from_columns(self.n, &cols).expect("square")
    }
}

fn basis_vec<T: Scalar>(n: usize, i: usize) -> Vec<T> {
    crate::linalg::unit_vector(n, i)
}

/// An algebra over Q with unit, involution `t` and a weight-2 Hodge
/// structure whose polarization is the algebra's intersection form.
#[derive(Debug, Clone)]
pub struct HodgeAlgebra<S> {
    hs: WeightTwoHS<S>,
    sc: StructureConstants,
    unit: Vec<Rational>,
    invol: Matrix<Rational>,
}

impl<S: Scalar> HodgeAlgebra<S> {
    pub fn new(
        hs: WeightTwoHS<S>,
        sc: StructureConstants,
        unit: Vec<Rational>,
        invol: Matrix<Rational>,
    ) -> Result<Self, AlgebraError> {
        let n = hs.rank();
        if n > MAX_DIM {
            return Err(AlgebraError::TooLarge(n));
        }
        if sc.dim() != n || unit.len() != n || invol.rows() != n || invol.cols() != n {
            return Err(AlgebraError::Dimension(format!(
                "rank {n}, structure constants {}, unit {}, involution {}x{}",
                sc.dim(),
                unit.len(),
                invol.rows(),
                invol.cols()
            )));
        }
        Ok(HodgeAlgebra {
            hs,
            sc,
            unit,
            invol,
        })
    }

    pub fn dim(&self) -> usize {
        self.hs.rank()
    }

    pub fn hs(&self) -> &WeightTwoHS<S> {
        &self.hs
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.sc
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    pub fn unit_s<T: Scalar>(&self) -> Vec<T> {
        self.unit.iter().map(T::from_rational).collect()
    }

    pub fn involution(&self) -> &Matrix<Rational> {
        &self.invol
    }

    pub fn gram(&self) -> &Matrix<Rational> {
        self.hs.gram()
    }

    pub fn mul<T: Scalar>(&self, x: &[T], y: &[T]) -> Vec<T> {
        self.sc.mul(x, y)
    }

    pub fn t<T: Scalar>(&self, x: &[T]) -> Vec<T> {
        (0..self.dim())
            .map(|i| {
                let mut acc = T::zero();
                for (j, xj) in x.iter().enumerate() {
                    let c = &self.invol[(i, j)];
                    if !c.is_zero() && !xj.is_zero() {
                        acc = acc + &xj.scale(c);
                    }
                }
                acc
            })
            .collect()
    }

    /// `<x, y>` extended bilinearly.
    pub fn form<T: Scalar>(&self, x: &[T], y: &[T]) -> T {
        let g = self.gram();
        let mut acc = T::zero();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                let c = &g[(i, j)];
                if c.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc + &(a.clone() * b).scale(c);
            }
        }
        acc
    }

    pub fn product_span(&self, a: &Subspace<S>, b: &Subspace<S>) -> Subspace<S> {
        a.product_span(b, self.dim(), |x, y| self.mul(x, y))
    }

    /// `Ω_a = G·R_a`, the matrix of `ω_a(x, y) = <x, y·a>`.
    pub fn omega_form(&self, a: &[Rational]) -> Matrix<Rational> {
        self.gram().mul(&self.sc.right_matrix(a)).expect("square")
    }

    /// The same algebra with the Hodge structure moved to the float backend.
    pub fn to_float(&self, tol: f64) -> Result<HodgeAlgebra<FloatComplex>, AlgebraError> {
        let h20 = self
            .hs
            .h20()
            .map_scalars(|x| FloatComplex::from_exact(x, tol));
        let hs = WeightTwoHS::new(self.gram().clone(), h20)?;
        HodgeAlgebra::new(hs, self.sc.clone(), self.unit.clone(), self.invol.clone())
    }

    /// Returns a copy with one structure constant replaced; used by negative
    /// controls.
    pub fn with_constant(&self, i: usize, j: usize, k: usize, v: Rational) -> Self {
        let mut out = self.clone();
        out.sc.set(i, j, k, v);
        out
    }
}

/// Checks every algebra hypothesis: associativity, unit, the involution, the
/// adjunction identity and compatibility with the Hodge decomposition.
pub fn validate_algebra<S: Scalar>(a: &HodgeAlgebra<S>) -> ReportBlock {
    let n = a.dim();
    let mut rep = ReportBlock::new("validate_algebra");
    let e = |i: usize| basis_vec::<Rational>(n, i);
    let basis: Vec<Vec<Rational>> = (0..n).map(e).collect();

    let mut assoc_fail = None;
    let prods: Vec<Vec<Vec<Rational>>> = (0..n)
        .map(|i| (0..n).map(|j| a.mul(&basis[i], &basis[j])).collect())
        .collect();
    'outer: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let l = a.mul(&prods[i][j], &basis[k]);
                let r = a.mul(&basis[i], &prods[j][k]);
                if l != r {
                    assoc_fail = Some((i, j, k));
                    break 'outer;
                }
            }
        }
    }
    rep.push(
        "associative",
        assoc_fail.is_none(),
        match assoc_fail {
            None => format!("all {} basis triples", n * n * n),
            Some((i, j, k)) => format!("(e{i} e{j}) e{k} != e{i} (e{j} e{k})"),
        },
    );

    let unit_ok = (0..n)
        .all(|i| a.mul(&a.unit, &basis[i]) == basis[i] && a.mul(&basis[i], &a.unit) == basis[i]);
    rep.push("unit", unit_ok, "u x = x u = x on every basis vector");

    let t2 = a
        .invol
        .mul(&a.invol)
        .map(|m| m == Matrix::identity(n))
        .unwrap_or(false);
    rep.push("involutive", t2, "T^2 = I");

    let mut anti_fail = None;
    'anti: for i in 0..n {
        for j in 0..n {
            let l = a.t(&prods[i][j]);
            let r = a.mul(&a.t(&basis[j]), &a.t(&basis[i]));
            if l != r {
                anti_fail = Some((i, j));
                break 'anti;
            }
        }
    }
    rep.push(
        "anti-homomorphism",
        anti_fail.is_none(),
        match anti_fail {
            None => "T(e_i e_j) = T(e_j) T(e_i) for all pairs".to_string(),
            Some((i, j)) => format!("T(e{i} e{j}) != T(e{j}) T(e{i})"),
        },
    );

    let mut adj_fail = None;
    'adj: for i in 0..n {
        for j in 0..n {
            let lhs = a.form(&basis[i], &basis[j]);
            let tb = a.t(&basis[j]);
            let m1 = a.form(&a.mul(&basis[i], &tb), &a.unit);
            let m2 = a.form(&a.mul(&tb, &basis[i]), &a.unit);
            if lhs != m1 || lhs != m2 {
                adj_fail = Some((i, j));
                break 'adj;
            }
        }
    }
    rep.push(
        "adjunction",
        adj_fail.is_none(),
        match adj_fail {
            None => "<a,b> = <a t(b), 1> = <t(b) a, 1> on all basis pairs".to_string(),
            Some((i, j)) => format!("fails at (e{i}, e{j})"),
        },
    );

    let ts = a.invol.to_scalar::<S>();
    let hs = a.hs();
    let stable = |s: &Subspace<S>| {
        s.image(&ts)
            .map(|img| img.is_subspace_of(s))
            .unwrap_or(false)
    };
    let t_ok = stable(hs.h20()) && stable(hs.h11()) && stable(hs.h02());
    rep.push(
        "t-preserves-type",
        t_ok,
        "T(H^{p,q}) in H^{p,q} for all three pieces",
    );

    rep.extend(bidegree_check(a));
    rep
}

/// The seven product containments of a bidegree (−1,−1) multiplication.
pub fn bidegree_check<S: Scalar>(a: &HodgeAlgebra<S>) -> ReportBlock {
    let hs = a.hs();
    let (h20, h11, h02) = (hs.h20(), hs.h11(), hs.h02());
    let mut rep = ReportBlock::new("bidegree_check");
    let check = |x: &Subspace<S>, y: &Subspace<S>, target: Option<&Subspace<S>>| {
        let p = a.product_span(x, y);
        let ok = match target {
            None => p.is_zero(),
            Some(t) => p.is_subspace_of(t),
        };
        (ok, format!("dim of product span {}", p.dim()))
    };
    let cases: [(&str, &Subspace<S>, &Subspace<S>, Option<&Subspace<S>>); 7] = [
        ("H20.H20 = 0", h20, h20, None),
        ("H20.H11 in H20", h20, h11, Some(h20)),
        ("H11.H20 in H20", h11, h20, Some(h20)),
        ("H11.H11 in H11", h11, h11, Some(h11)),
        ("H02.H02 = 0", h02, h02, None),
        ("H11.H02 in H02", h11, h02, Some(h02)),
        ("H02.H11 in H02", h02, h11, Some(h02)),
    ];
    for (name, x, y, t) in cases {
        let (ok, w) = check(x, y, t);
        rep.push(name, ok, w);
    }
    rep
}
