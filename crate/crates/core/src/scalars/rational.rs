use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{forward_ops, RealScalar, Scalar, ScalarError, Sign};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(pub(crate) BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_i64(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn from_integer(v: BigInt) -> Self {
        Rational(BigRational::from_integer(v))
    }

    /// The exact binary value of a finite float.
    pub fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Rational)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            // very large operands: fall back to a scaled division
            let n = self.numer().to_f64().unwrap_or(f64::INFINITY);
            let d = self.denom().to_f64().unwrap_or(f64::INFINITY);
            n / d
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Rational::one();
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Exact square root when `self` is the square of a rational.
    pub fn sqrt(&self) -> Option<Self> {
        if self.0.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rational(BigRational::new(n, d)))
        } else {
            None
        }
    }

    pub(crate) fn add_ref(&self, o: &Self) -> Self {
        Rational(&self.0 + &o.0)
    }
    pub(crate) fn sub_ref(&self, o: &Self) -> Self {
        Rational(&self.0 - &o.0)
    }
    pub(crate) fn mul_ref(&self, o: &Self) -> Self {
        Rational(&self.0 * &o.0)
    }
    pub(crate) fn neg_ref(&self) -> Self {
        Rational(-&self.0)
    }
}

forward_ops!(Rational);

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_i64(v)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Scalar for Rational {
    type Real = Rational;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn inv(&self) -> Result<Self, ScalarError> {
        if self.0.is_zero() {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(Rational(self.0.recip()))
        }
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn from_real(r: Rational) -> Self {
        r
    }
    fn scale(&self, q: &Rational) -> Self {
        self.mul_ref(q)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn re(&self) -> Rational {
        self.clone()
    }
    fn im(&self) -> Rational {
        Rational::zero()
    }
    fn imag_unit() -> Option<Self> {
        None
    }
    fn to_complex_f64(&self) -> (f64, f64) {
        (Rational::to_f64(self), 0.0)
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn real_parts(&self) -> Option<(Rational, Rational)> {
        Some((self.clone(), Rational::zero()))
    }
}

impl RealScalar for Rational {
    fn sign(&self) -> Sign {
        if self.0.is_zero() {
            Sign::Zero
        } else if self.0.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
    fn to_f64(&self) -> f64 {
        Rational::to_f64(self)
    }
    fn sqrt_exact(&self) -> Option<Self> {
        self.sqrt()
    }
    fn sqrt_in(q: &Rational, _d: u32) -> Option<Self> {
        q.sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_after_operations() {
        let x = Rational::new(2, 4) + Rational::new(1, 4);
        assert_eq!(x.numer(), &BigInt::from(3));
        assert_eq!(x.denom(), &BigInt::from(4));
        let y = Rational::new(3, -6);
        assert_eq!(y.denom(), &BigInt::from(2));
        assert_eq!(y.to_string(), "-1/2");
    }

    #[test]
    fn square_roots() {
        assert_eq!(Rational::new(9, 4).sqrt(), Some(Rational::new(3, 2)));
        assert_eq!(Rational::new(2, 1).sqrt(), None);
        assert_eq!(Rational::new(-4, 1).sqrt(), None);
    }
}
