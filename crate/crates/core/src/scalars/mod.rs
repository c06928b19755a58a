//! Scalar backends.
//!
//! Everything in this crate is generic over [`Scalar`]. The exact backends form
//! the tower `Q ⊂ Q(√d) ⊂ Q(√d, i)` ([`Rational`], [`RealQuad`], [`ComplexQuad`]);
//! [`Float`] and [`FloatComplex`] are the floating-point backends whose equality
//! and sign decisions always go through a tolerance.

mod float;
mod literal;
mod quad;
mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

pub use float::{Float, FloatComplex, DEFAULT_TOL};
pub use literal::{parse_complex, parse_rational, parse_real_quad, LiteralError};
pub use quad::{is_square_free, ComplexQuad, RealQuad};
pub use rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields: Q(√{0}) and Q(√{1})")]
    FieldMismatch(u32, u32),
    #[error("invalid field configuration: {0}")]
    Config(String),
}

/// Exact or tolerance-aware sign of a real scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn of_f64(x: f64, tol: f64) -> Sign {
        if x > tol {
            Sign::Positive
        } else if x < -tol {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Sign::Negative => "-",
            Sign::Zero => "0",
            Sign::Positive => "+",
        };
        f.write_str(s)
    }
}

/// A field element usable by the linear-algebra layer.
///
/// Arithmetic through the `std::ops` traits panics on a field mismatch (two
/// values carrying different `√d`); [`arith`] is the checked entry point.
pub trait Scalar:
    Sized
    + Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// The real subfield fixed by [`Scalar::conj`].
    type Real: RealScalar;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Result<Self, ScalarError>;
    fn from_rational(q: &Rational) -> Self;
    fn from_real(r: Self::Real) -> Self;
    fn scale(&self, q: &Rational) -> Self;
    fn conj(&self) -> Self;
    fn re(&self) -> Self::Real;
    fn im(&self) -> Self::Real;
    /// `√-1` when the backend contains it.
    fn imag_unit() -> Option<Self>;
    /// Complex value of the scalar under the embedding `√d ↦ +√d`.
    fn to_complex_f64(&self) -> (f64, f64);
    /// Errors when the two operands cannot be combined.
    fn compatible(&self, _other: &Self) -> Result<(), ScalarError> {
        Ok(())
    }
    /// Larger is a better elimination pivot. Exact backends only need nonzero.
    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
    /// The tolerance the backend uses for zero tests, `0` for exact backends.
    fn tolerance(&self) -> f64 {
        0.0
    }

    fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.clone() * &other.inv()?)
    }

    fn is_one(&self) -> bool {
        (self.clone() - &Self::one()).is_zero()
    }

    fn is_real(&self) -> bool {
        self.im().is_zero()
    }

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_i64(v))
    }

    /// The `d` of the quadratic field the value is tagged with, `1` if none.
    fn field_d(&self) -> u32 {
        1
    }

    /// Exact real part as `(a, b)` with value `a + b√d`; `None` for floats.
    fn real_parts(&self) -> Option<(Rational, Rational)> {
        None
    }

    /// `|z|²` as a real scalar.
    fn norm_sqr(&self) -> Self::Real {
        let re = self.re();
        let im = self.im();
        re.clone() * &re + &(im.clone() * &im)
    }
}

/// A real scalar with a decidable sign.
pub trait RealScalar: Scalar<Real = Self> {
    fn sign(&self) -> Sign;
    fn to_f64(&self) -> f64;
    /// Exact square root inside the field, when one exists.
    fn sqrt_exact(&self) -> Option<Self>;
    /// Square root of a rational inside `Q(√d)` (or the float backend).
    fn sqrt_in(q: &Rational, d: u32) -> Option<Self>;

    fn cmp_sign(&self, other: &Self) -> Sign {
        (self.clone() - other).sign()
    }
}

/// Exact sign of `a + b√d`.
pub fn exact_sign(x: &RealQuad) -> Sign {
    x.sign()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
}

/// Checked field arithmetic. `Inv` ignores `y`.
pub fn arith<S: Scalar>(x: &S, y: &S, op: ArithOp) -> Result<S, ScalarError> {
    if op != ArithOp::Inv {
        x.compatible(y)?;
    }
    match op {
        ArithOp::Add => Ok(x.clone() + y),
        ArithOp::Sub => Ok(x.clone() - y),
        ArithOp::Mul => Ok(x.clone() * y),
        ArithOp::Div => x.div(y),
        ArithOp::Inv => x.inv(),
    }
}

/// Implements the by-value and by-reference `std::ops` forms in terms of
/// `add_ref`, `sub_ref`, `mul_ref` and `neg_ref` inherent methods.
macro_rules! forward_ops {
    ($t:ty) => {
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                self.add_ref(&rhs)
            }
        }
        impl<'a> std::ops::Add<&'a $t> for $t {
            type Output = $t;
            fn add(self, rhs: &'a $t) -> $t {
                self.add_ref(rhs)
            }
        }
        impl<'a, 'b> std::ops::Add<&'b $t> for &'a $t {
            type Output = $t;
            fn add(self, rhs: &'b $t) -> $t {
                self.add_ref(rhs)
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                self.sub_ref(&rhs)
            }
        }
        impl<'a> std::ops::Sub<&'a $t> for $t {
            type Output = $t;
            fn sub(self, rhs: &'a $t) -> $t {
                self.sub_ref(rhs)
            }
        }
        impl<'a, 'b> std::ops::Sub<&'b $t> for &'a $t {
            type Output = $t;
            fn sub(self, rhs: &'b $t) -> $t {
                self.sub_ref(rhs)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                self.mul_ref(&rhs)
            }
        }
        impl<'a> std::ops::Mul<&'a $t> for $t {
            type Output = $t;
            fn mul(self, rhs: &'a $t) -> $t {
                self.mul_ref(rhs)
            }
        }
        impl<'a, 'b> std::ops::Mul<&'b $t> for &'a $t {
            type Output = $t;
            fn mul(self, rhs: &'b $t) -> $t {
                self.mul_ref(rhs)
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                self.neg_ref()
            }
        }
        impl<'a> std::ops::Neg for &'a $t {
            type Output = $t;
            fn neg(self) -> $t {
                self.neg_ref()
            }
        }
    };
}
pub(crate) use forward_ops;

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn arith_examples() {
        assert_eq!(arith(&q(1, 2), &q(1, 3), ArithOp::Add).unwrap(), q(5, 6));
        let s2 = RealQuad::new(q(0, 1), q(1, 1), 2).unwrap();
        assert_eq!(
            arith(&s2, &s2, ArithOp::Mul).unwrap(),
            RealQuad::from_rational(&q(2, 1))
        );
        let i = ComplexQuad::i();
        let a = ComplexQuad::one() + &i;
        let b = ComplexQuad::one() - &i;
        assert_eq!(
            arith(&a, &b, ArithOp::Mul).unwrap(),
            ComplexQuad::from_i64(2)
        );
    }

    #[test]
    fn division_by_zero_is_distinct() {
        let err = arith(&q(1, 1), &q(0, 1), ArithOp::Div).unwrap_err();
        assert_eq!(err, ScalarError::DivisionByZero);
        assert_eq!(
            Rational::zero().inv().unwrap_err(),
            ScalarError::DivisionByZero
        );
    }

    #[test]
    fn mixed_fields_are_a_configuration_error() {
        let s2 = RealQuad::new(q(0, 1), q(1, 1), 2).unwrap();
        let s3 = RealQuad::new(q(0, 1), q(1, 1), 3).unwrap();
        assert_eq!(
            arith(&s2, &s3, ArithOp::Add).unwrap_err(),
            ScalarError::FieldMismatch(2, 3)
        );
        // a rational value is compatible with every field
        assert!(arith(&s2, &RealQuad::from_i64(3), ArithOp::Mul).is_ok());
    }

    #[test]
    fn exact_sign_examples() {
        let x = RealQuad::new(q(3, 1), q(-2, 1), 2).unwrap();
        assert_eq!(exact_sign(&x), Sign::Positive);
        assert_eq!(exact_sign(&RealQuad::zero()), Sign::Zero);
        let y = RealQuad::new(q(1, 1), q(-1, 1), 2).unwrap();
        assert_eq!(exact_sign(&y), Sign::Negative);
    }

    #[test]
    fn conj_examples() {
        let i = ComplexQuad::i();
        assert_eq!(i.conj(), -i.clone());
        let s2 = ComplexQuad::from_real(RealQuad::sqrt_of(2).unwrap());
        assert_eq!(s2.conj(), s2);
        let z = ComplexQuad::new(
            RealQuad::zero(),
            RealQuad::new(q(1, 1), q(-1, 1), 2).unwrap(),
        );
        assert_eq!(z.conj(), -z.clone());
    }
}
