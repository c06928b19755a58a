use crate::scalars::Scalar;

use super::echelon::rref;
use super::{vec_conj, vec_is_zero, LinalgError, Matrix};

/// A subspace of `S^n`, stored by the reduced echelon form of a spanning set
/// (basis vectors as rows). Two spans are equal iff these forms agree.
#[derive(Clone, Debug)]
pub struct Subspace<S> {
    ambient: usize,
    canonical: Matrix<S>,
    pivots: Vec<usize>,
}

impl<S: Scalar> PartialEq for Subspace<S> {
    fn eq(&self, other: &Self) -> bool {
        if self.ambient != other.ambient || self.pivots != other.pivots {
            return false;
        }
        let (a, b) = (self.canonical.row_vecs(), other.canonical.row_vecs());
        let tol = a
            .first()
            .and_then(|r| r.first())
            .map_or(0.0, Scalar::tolerance);
        if tol == 0.0 {
            return a == b;
        }
        // float comparison relative to the largest canonical entry
        let size = |x: &S| {
            let (re, im) = x.to_complex_f64();
            re.hypot(im)
        };
        let scale = a.iter().chain(&b).flatten().map(size).fold(1.0, f64::max);
        a.iter()
            .flatten()
            .zip(b.iter().flatten())
            .all(|(x, y)| size(&(x.clone() - y)) <= tol * scale)
    }
}

impl<S: Scalar> Subspace<S> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            canonical: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            canonical: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(ambient: usize, vectors: &[Vec<S>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let m = Matrix::from_rows(vectors.to_vec()).expect("vectors of equal length");
        assert_eq!(
            m.cols(),
            ambient,
            "vector length differs from ambient dimension"
        );
        let e = rref(&m);
        let mut canonical = Matrix::zeros(e.rank(), ambient);
        for i in 0..e.rank() {
            canonical.row_mut(i).clone_from_slice(e.rref.row(i));
        }
        Subspace {
            ambient,
            canonical,
            pivots: e.pivots,
        }
    }

    /// Span of the columns of `m`.
    pub fn column_span(m: &Matrix<S>) -> Self {
        Self::span(m.rows(), &m.columns())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical basis vectors.
    pub fn vectors(&self) -> Vec<Vec<S>> {
        self.canonical.row_vecs()
    }

    /// Canonical rows as a `dim × ambient` matrix.
    pub fn canonical(&self) -> &Matrix<S> {
        &self.canonical
    }

    /// Basis as columns of an `ambient × dim` matrix.
    pub fn basis(&self) -> Matrix<S> {
        self.canonical.transpose()
    }

    fn reduce(&self, v: &[S]) -> Vec<S> {
        let mut r = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, b) in r.iter_mut().zip(self.canonical.row(i)) {
                if !b.is_zero() {
                    *x = x.clone() - &(f.clone() * b);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[S]) -> bool {
        v.len() == self.ambient && vec_is_zero(&self.reduce(v))
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[S]) -> Option<Vec<S>> {
        self.contains(v)
            .then(|| self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.canonical.row_vecs().iter().all(|v| other.contains(v))
    }

    fn check_ambient(&self, other: &Self) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other)?;
        let mut v = self.vectors();
        v.extend(other.vectors());
        Ok(Self::span(self.ambient, &v))
    }

    /// Annihilator under the standard bilinear pairing.
    fn annihilator(&self) -> Self {
        if self.is_zero() {
            return Self::full(self.ambient);
        }
        let e = rref(&self.canonical);
        Self::span(self.ambient, &e.kernel_vectors())
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    pub fn conj(&self) -> Self {
        Self::span(
            self.ambient,
            &self
                .canonical
                .row_vecs()
                .iter()
                .map(|v| vec_conj(v))
                .collect::<Vec<_>>(),
        )
    }

    /// Span of `f(a, b)` over basis vectors `a` of `self` and `b` of `other`;
    /// `f` must be bilinear. The result lives in `S^out_dim`.
    pub fn product_span(
        &self,
        other: &Self,
        out_dim: usize,
        f: impl Fn(&[S], &[S]) -> Vec<S>,
    ) -> Self {
        let mut out = Vec::new();
        for a in self.canonical.row_vecs() {
            for b in other.canonical.row_vecs() {
                let p = f(&a, &b);
                if !vec_is_zero(&p) {
                    out.push(p);
                }
            }
        }
        Self::span(out_dim, &out)
    }

    /// Image under the linear map with matrix `m` (acting on column vectors).
    pub fn image(&self, m: &Matrix<S>) -> Result<Self, LinalgError> {
        if m.cols() != self.ambient {
            return Err(LinalgError::AmbientMismatch(m.cols(), self.ambient));
        }
        let v: Result<Vec<_>, _> = self
            .canonical
            .row_vecs()
            .iter()
            .map(|x| m.mul_vec(x))
            .collect();
        Ok(Self::span(m.rows(), &v?))
    }

    /// `{v : form(v, s) = 0 for all s in self}` where `form(v, s) = vᵀ G s`,
    /// or `vᵀ G s̄` when `conjugating`.
    pub fn orth_complement(&self, g: &Matrix<S>, conjugating: bool) -> Result<Self, LinalgError> {
        if !g.is_square() || g.rows() != self.ambient {
            return Err(LinalgError::DimensionMismatch(format!(
                "form is {}x{}, ambient dimension {}",
                g.rows(),
                g.cols(),
                self.ambient
            )));
        }
        if self.is_zero() {
            return Ok(Self::full(self.ambient));
        }
        let rows: Result<Vec<_>, _> = self
            .canonical
            .row_vecs()
            .iter()
            .map(|s| {
                if conjugating {
                    g.mul_vec(&vec_conj(s))
                } else {
                    g.mul_vec(s)
                }
            })
            .collect();
        let e = rref(&Matrix::from_rows(rows?)?);
        Ok(Self::span(self.ambient, &e.kernel_vectors()))
    }

    /// True when `self ∩ other = 0`.
    pub fn is_independent_of(&self, other: &Self) -> Result<bool, LinalgError> {
        Ok(self.sum(other)?.dim() == self.dim() + other.dim())
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Subspace<T> {
        Subspace::span(self.ambient, &self.canonical.map(f).row_vecs())
    }
}
