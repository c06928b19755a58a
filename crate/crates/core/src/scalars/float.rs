use std::fmt;

use super::{forward_ops, Rational, RealScalar, Scalar, ScalarError, Sign};

pub const DEFAULT_TOL: f64 = 1e-9;

/// Real float with a comparison tolerance.
#[derive(Clone, Copy)]
pub struct Float {
    pub v: f64,
    pub tol: f64,
}

impl Float {
    pub fn new(v: f64, tol: f64) -> Self {
        Float { v, tol }
    }

    fn join_tol(&self, o: &Self) -> f64 {
        self.tol.max(o.tol)
    }

    pub(crate) fn add_ref(&self, o: &Self) -> Self {
        Float {
            v: self.v + o.v,
            tol: self.join_tol(o),
        }
    }
    pub(crate) fn sub_ref(&self, o: &Self) -> Self {
        Float {
            v: self.v - o.v,
            tol: self.join_tol(o),
        }
    }
    pub(crate) fn mul_ref(&self, o: &Self) -> Self {
        Float {
            v: self.v * o.v,
            tol: self.join_tol(o),
        }
    }
    pub(crate) fn neg_ref(&self) -> Self {
        Float {
            v: -self.v,
            tol: self.tol,
        }
    }
}

forward_ops!(Float);

impl PartialEq for Float {
    fn eq(&self, o: &Self) -> bool {
        (self.v - o.v).abs() <= self.join_tol(o)
    }
}

impl fmt::Display for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.12e}", self.v)
    }
}

impl fmt::Debug for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Scalar for Float {
    type Real = Float;

    fn zero() -> Self {
        Float {
            v: 0.0,
            tol: DEFAULT_TOL,
        }
    }
    fn one() -> Self {
        Float {
            v: 1.0,
            tol: DEFAULT_TOL,
        }
    }
    fn is_zero(&self) -> bool {
        self.v.abs() <= self.tol
    }
    fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(Float {
                v: 1.0 / self.v,
                tol: self.tol,
            })
        }
    }
    fn from_rational(q: &Rational) -> Self {
        Float {
            v: q.to_f64(),
            tol: DEFAULT_TOL,
        }
    }
    fn from_real(r: Float) -> Self {
        r
    }
    fn scale(&self, q: &Rational) -> Self {
        Float {
            v: self.v * q.to_f64(),
            tol: self.tol,
        }
    }
    fn conj(&self) -> Self {
        *self
    }
    fn re(&self) -> Float {
        *self
    }
    fn im(&self) -> Float {
        Float {
            v: 0.0,
            tol: self.tol,
        }
    }
    fn imag_unit() -> Option<Self> {
        None
    }
    fn to_complex_f64(&self) -> (f64, f64) {
        (self.v, 0.0)
    }
    fn pivot_weight(&self) -> f64 {
        self.v.abs()
    }
    fn tolerance(&self) -> f64 {
        self.tol
    }
}

impl RealScalar for Float {
    fn sign(&self) -> Sign {
        Sign::of_f64(self.v, self.tol)
    }
    fn to_f64(&self) -> f64 {
        self.v
    }
    fn sqrt_exact(&self) -> Option<Self> {
        (self.v >= -self.tol).then(|| Float {
            v: self.v.max(0.0).sqrt(),
            tol: self.tol,
        })
    }
    fn sqrt_in(q: &Rational, _d: u32) -> Option<Self> {
        Float::new(q.to_f64(), DEFAULT_TOL).sqrt_exact()
    }
}

/// Complex float with a comparison tolerance; equality and zero tests never
/// bit-compare.
#[derive(Clone, Copy)]
pub struct FloatComplex {
    pub re: f64,
    pub im: f64,
    pub tol: f64,
}

impl FloatComplex {
    pub fn new(re: f64, im: f64, tol: f64) -> Self {
        FloatComplex { re, im, tol }
    }

    /// Float image of an exact scalar, with the given tolerance.
    pub fn from_exact<S: Scalar>(x: &S, tol: f64) -> Self {
        let (re, im) = x.to_complex_f64();
        FloatComplex { re, im, tol }
    }

    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn with_tol(self, tol: f64) -> Self {
        FloatComplex { tol, ..self }
    }

    fn join_tol(&self, o: &Self) -> f64 {
        self.tol.max(o.tol)
    }

    pub(crate) fn add_ref(&self, o: &Self) -> Self {
        FloatComplex {
            re: self.re + o.re,
            im: self.im + o.im,
            tol: self.join_tol(o),
        }
    }
    pub(crate) fn sub_ref(&self, o: &Self) -> Self {
        FloatComplex {
            re: self.re - o.re,
            im: self.im - o.im,
            tol: self.join_tol(o),
        }
    }
    pub(crate) fn mul_ref(&self, o: &Self) -> Self {
        FloatComplex {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
            tol: self.join_tol(o),
        }
    }
    pub(crate) fn neg_ref(&self) -> Self {
        FloatComplex {
            re: -self.re,
            im: -self.im,
            tol: self.tol,
        }
    }
}

forward_ops!(FloatComplex);

impl PartialEq for FloatComplex {
    fn eq(&self, o: &Self) -> bool {
        (self.re - o.re).hypot(self.im - o.im) <= self.join_tol(o)
    }
}

impl fmt::Display for FloatComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.12e}{:+.12e}i)", self.re, self.im)
    }
}

impl fmt::Debug for FloatComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}{:+}i)", self.re, self.im)
    }
}

impl Scalar for FloatComplex {
    type Real = Float;

    fn zero() -> Self {
        FloatComplex {
            re: 0.0,
            im: 0.0,
            tol: DEFAULT_TOL,
        }
    }
    fn one() -> Self {
        FloatComplex {
            re: 1.0,
            im: 0.0,
            tol: DEFAULT_TOL,
        }
    }
    fn is_zero(&self) -> bool {
        self.abs() <= self.tol
    }
    fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.re * self.re + self.im * self.im;
        Ok(FloatComplex {
            re: self.re / n,
            im: -self.im / n,
            tol: self.tol,
        })
    }
    fn from_rational(q: &Rational) -> Self {
        FloatComplex {
            re: q.to_f64(),
            im: 0.0,
            tol: DEFAULT_TOL,
        }
    }
    fn from_real(r: Float) -> Self {
        FloatComplex {
            re: r.v,
            im: 0.0,
            tol: r.tol,
        }
    }
    fn scale(&self, q: &Rational) -> Self {
        let s = q.to_f64();
        FloatComplex {
            re: self.re * s,
            im: self.im * s,
            tol: self.tol,
        }
    }
    fn conj(&self) -> Self {
        FloatComplex {
            re: self.re,
            im: -self.im,
            tol: self.tol,
        }
    }
    fn re(&self) -> Float {
        Float {
            v: self.re,
            tol: self.tol,
        }
    }
    fn im(&self) -> Float {
        Float {
            v: self.im,
            tol: self.tol,
        }
    }
    fn imag_unit() -> Option<Self> {
        Some(FloatComplex {
            re: 0.0,
            im: 1.0,
            tol: DEFAULT_TOL,
        })
    }
    fn to_complex_f64(&self) -> (f64, f64) {
        (self.re, self.im)
    }
    fn pivot_weight(&self) -> f64 {
        self.abs()
    }
    fn tolerance(&self) -> f64 {
        self.tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_goes_through_tolerance() {
        let a = FloatComplex::new(1.0, 0.0, 1e-9);
        let b = FloatComplex::new(1.0 + 1e-12, -1e-12, 1e-9);
        assert_eq!(a, b);
        assert!(FloatComplex::new(1e-11, 0.0, 1e-9).is_zero());
        assert_ne!(a, FloatComplex::new(1.0 + 1e-6, 0.0, 1e-9));
    }

    #[test]
    fn sign_respects_tolerance() {
        assert_eq!(Float::new(1e-12, 1e-9).sign(), Sign::Zero);
        assert_eq!(Float::new(-1e-3, 1e-9).sign(), Sign::Negative);
    }
}
