use std::fmt;

use super::{forward_ops, Rational, RealScalar, Scalar, ScalarError, Sign};

pub fn is_square_free(d: u32) -> bool {
    if d == 0 {
        return false;
    }
    let mut k: u64 = 2;
    while k * k <= d as u64 {
        if (d as u64) % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// `a + b√d` for a square-free `d ≥ 1`. With `d = 1` the value is purely
/// rational and `b` is zero.
///
/// Values built without a field tag (`d = 1`) combine with every field; two
/// values tagged with different `d > 1` do not.
#[derive(Clone)]
pub struct RealQuad {
    a: Rational,
    b: Rational,
    d: u32,
}

fn join_d(d1: u32, d2: u32) -> Result<u32, ScalarError> {
    if d1 == d2 || d2 == 1 {
        Ok(d1)
    } else if d1 == 1 {
        Ok(d2)
    } else {
        Err(ScalarError::FieldMismatch(d1, d2))
    }
}

impl RealQuad {
    pub fn new(a: Rational, b: Rational, d: u32) -> Result<Self, ScalarError> {
        if !is_square_free(d) {
            return Err(ScalarError::Config(format!(
                "d = {d} is not a square-free positive integer"
            )));
        }
        if d == 1 && !b.is_zero() {
            return Err(ScalarError::Config(
                "d = 1 admits no irrational part".into(),
            ));
        }
        Ok(RealQuad { a, b, d })
    }

    /// `√d` itself.
    pub fn sqrt_of(d: u32) -> Result<Self, ScalarError> {
        if d == 1 {
            return RealQuad::new(Rational::one(), Rational::zero(), 1);
        }
        RealQuad::new(Rational::zero(), Rational::one(), d)
    }

    /// A rational number tagged with the field `Q(√d)`.
    pub fn rational_in(q: Rational, d: u32) -> Result<Self, ScalarError> {
        RealQuad::new(q, Rational::zero(), d)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }
    pub fn b(&self) -> &Rational {
        &self.b
    }
    pub fn d(&self) -> u32 {
        self.d
    }
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Replaces `√d` by the rational `approx`.
    pub fn rationalize(&self, approx: &Rational) -> Rational {
        self.a.clone() + &(self.b.clone() * approx)
    }

    /// Galois conjugate `a − b√d`.
    pub fn galois(&self) -> Self {
        RealQuad {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    fn checked_join(&self, o: &Self) -> Result<u32, ScalarError> {
        join_d(self.d, o.d)
    }

    pub(crate) fn add_ref(&self, o: &Self) -> Self {
        let d = self.checked_join(o).unwrap_or_else(|e| panic!("{e}"));
        RealQuad {
            a: self.a.clone() + &o.a,
            b: self.b.clone() + &o.b,
            d,
        }
    }
    pub(crate) fn sub_ref(&self, o: &Self) -> Self {
        let d = self.checked_join(o).unwrap_or_else(|e| panic!("{e}"));
        RealQuad {
            a: self.a.clone() - &o.a,
            b: self.b.clone() - &o.b,
            d,
        }
    }
    pub(crate) fn mul_ref(&self, o: &Self) -> Self {
        let d = self.checked_join(o).unwrap_or_else(|e| panic!("{e}"));
        let dd = Rational::from_i64(d as i64);
        let a = self.a.clone() * &o.a + &(self.b.clone() * &o.b * &dd);
        let b = self.a.clone() * &o.b + &(self.b.clone() * &o.a);
        RealQuad { a, b, d }
    }
    pub(crate) fn neg_ref(&self) -> Self {
        RealQuad {
            a: -self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// `a² − d b²`.
    pub fn norm(&self) -> Rational {
        let dd = Rational::from_i64(self.d as i64);
        self.a.clone() * &self.a - &(self.b.clone() * &self.b * &dd)
    }
}

forward_ops!(RealQuad);

impl PartialEq for RealQuad {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.b == o.b && (self.b.is_zero() || self.d == o.d)
    }
}

impl fmt::Display for RealQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "[{}, {}]", self.a, self.b)
        }
    }
}

impl fmt::Debug for RealQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}+{}√{}", self.a, self.b, self.d)
        }
    }
}

impl Scalar for RealQuad {
    type Real = RealQuad;

    fn zero() -> Self {
        RealQuad {
            a: Rational::zero(),
            b: Rational::zero(),
            d: 1,
        }
    }
    fn one() -> Self {
        RealQuad {
            a: Rational::one(),
            b: Rational::zero(),
            d: 1,
        }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn inv(&self) -> Result<Self, ScalarError> {
        // d is square-free, so the norm vanishes only at zero
        let n = self.norm();
        let ninv = n.inv()?;
        Ok(RealQuad {
            a: self.a.clone() * &ninv,
            b: -(self.b.clone() * &ninv),
            d: self.d,
        })
    }
    fn from_rational(q: &Rational) -> Self {
        RealQuad {
            a: q.clone(),
            b: Rational::zero(),
            d: 1,
        }
    }
    fn from_real(r: RealQuad) -> Self {
        r
    }
    fn scale(&self, q: &Rational) -> Self {
        RealQuad {
            a: self.a.clone() * q,
            b: self.b.clone() * q,
            d: self.d,
        }
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn re(&self) -> RealQuad {
        self.clone()
    }
    fn im(&self) -> RealQuad {
        RealQuad::zero()
    }
    fn imag_unit() -> Option<Self> {
        None
    }
    fn to_complex_f64(&self) -> (f64, f64) {
        (RealScalar::to_f64(self), 0.0)
    }
    fn compatible(&self, o: &Self) -> Result<(), ScalarError> {
        self.checked_join(o).map(|_| ())
    }
    fn field_d(&self) -> u32 {
        self.d
    }
    fn real_parts(&self) -> Option<(Rational, Rational)> {
        Some((self.a.clone(), self.b.clone()))
    }
}

impl RealScalar for RealQuad {
    fn sign(&self) -> Sign {
        let sa = self.a.sign();
        let sb = self.b.sign();
        if sb == Sign::Zero {
            return sa;
        }
        if sa == Sign::Zero || sa == sb {
            return sb;
        }
        // opposite signs: compare a² with d b²
        match self.norm().sign() {
            Sign::Positive => sa,
            Sign::Negative => sb,
            Sign::Zero => Sign::Zero,
        }
    }

    fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * (self.d as f64).sqrt()
    }

    fn sqrt_in(q: &Rational, d: u32) -> Option<Self> {
        RealQuad::rational_in(q.clone(), d).ok()?.sqrt_exact()
    }

    fn sqrt_exact(&self) -> Option<Self> {
        match self.sign() {
            Sign::Negative => return None,
            Sign::Zero => return Some(RealQuad::zero()),
            Sign::Positive => {}
        }
        let dq = Rational::from_i64(self.d as i64);
        if self.b.is_zero() {
            if let Some(r) = self.a.sqrt() {
                return Some(RealQuad {
                    a: r,
                    b: Rational::zero(),
                    d: self.d,
                });
            }
            if self.d > 1 {
                // a = d q²  ⇒  √a = q √d
                let r = (self.a.clone() * &dq.inv().ok()?).sqrt()?;
                return Some(RealQuad {
                    a: Rational::zero(),
                    b: r,
                    d: self.d,
                });
            }
            return None;
        }
        // (p + q√d)² = p² + d q² + 2pq√d
        let disc = self.norm().sqrt()?;
        let half = Rational::new(1, 2);
        for cand in [
            (self.a.clone() + &disc) * &half,
            (self.a.clone() - &disc) * &half,
        ] {
            if let Some(p) = cand.sqrt() {
                if p.is_zero() {
                    continue;
                }
                let q = self.b.clone() * &(p.clone() * Rational::from_i64(2)).inv().ok()?;
                let root = RealQuad {
                    a: p,
                    b: q,
                    d: self.d,
                };
                let root = if root.sign() == Sign::Negative {
                    -root
                } else {
                    root
                };
                if root.clone() * &root == *self {
                    return Some(root);
                }
            }
        }
        None
    }
}

/// `re + im·i` with `re, im ∈ Q(√d)`.
#[derive(Clone, PartialEq)]
pub struct ComplexQuad {
    re: RealQuad,
    im: RealQuad,
}

impl ComplexQuad {
    pub fn new(re: RealQuad, im: RealQuad) -> Self {
        ComplexQuad { re, im }
    }

    pub fn i() -> Self {
        ComplexQuad {
            re: RealQuad::zero(),
            im: RealQuad::one(),
        }
    }

    pub fn d(&self) -> u32 {
        join_d(self.re.d, self.im.d).unwrap_or(self.re.d.max(self.im.d))
    }

    pub fn re_ref(&self) -> &RealQuad {
        &self.re
    }
    pub fn im_ref(&self) -> &RealQuad {
        &self.im
    }

    pub(crate) fn add_ref(&self, o: &Self) -> Self {
        ComplexQuad {
            re: self.re.add_ref(&o.re),
            im: self.im.add_ref(&o.im),
        }
    }
    pub(crate) fn sub_ref(&self, o: &Self) -> Self {
        ComplexQuad {
            re: self.re.sub_ref(&o.re),
            im: self.im.sub_ref(&o.im),
        }
    }
    pub(crate) fn mul_ref(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return ComplexQuad {
                re: self.re.mul_ref(&o.re),
                im: RealQuad::zero(),
            };
        }
        let re = self.re.mul_ref(&o.re).sub_ref(&self.im.mul_ref(&o.im));
        let im = self.re.mul_ref(&o.im).add_ref(&self.im.mul_ref(&o.re));
        ComplexQuad { re, im }
    }
    pub(crate) fn neg_ref(&self) -> Self {
        ComplexQuad {
            re: self.re.neg_ref(),
            im: self.im.neg_ref(),
        }
    }
}

forward_ops!(ComplexQuad);

impl fmt::Display for ComplexQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(
                f,
                "{{re:[{}, {}], im:[{}, {}]}}",
                self.re.a, self.re.b, self.im.a, self.im.b
            )
        }
    }
}

impl fmt::Debug for ComplexQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{:?}", self.re)
        } else {
            write!(f, "({:?})+({:?})i", self.re, self.im)
        }
    }
}

impl Scalar for ComplexQuad {
    type Real = RealQuad;

    fn zero() -> Self {
        ComplexQuad {
            re: RealQuad::zero(),
            im: RealQuad::zero(),
        }
    }
    fn one() -> Self {
        ComplexQuad {
            re: RealQuad::one(),
            im: RealQuad::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn inv(&self) -> Result<Self, ScalarError> {
        let n = self.norm_sqr().inv()?;
        Ok(ComplexQuad {
            re: self.re.mul_ref(&n),
            im: self.im.neg_ref().mul_ref(&n),
        })
    }
    fn from_rational(q: &Rational) -> Self {
        ComplexQuad {
            re: RealQuad::from_rational(q),
            im: RealQuad::zero(),
        }
    }
    fn from_real(r: RealQuad) -> Self {
        ComplexQuad {
            re: r,
            im: RealQuad::zero(),
        }
    }
    fn scale(&self, q: &Rational) -> Self {
        ComplexQuad {
            re: self.re.scale(q),
            im: self.im.scale(q),
        }
    }
    fn conj(&self) -> Self {
        ComplexQuad {
            re: self.re.clone(),
            im: self.im.neg_ref(),
        }
    }
    fn re(&self) -> RealQuad {
        self.re.clone()
    }
    fn im(&self) -> RealQuad {
        self.im.clone()
    }
    fn imag_unit() -> Option<Self> {
        Some(ComplexQuad::i())
    }
    fn to_complex_f64(&self) -> (f64, f64) {
        (RealScalar::to_f64(&self.re), RealScalar::to_f64(&self.im))
    }
    fn compatible(&self, o: &Self) -> Result<(), ScalarError> {
        for x in [&self.re, &self.im] {
            for y in [&o.re, &o.im] {
                x.compatible(y)?;
            }
        }
        Ok(())
    }
    fn field_d(&self) -> u32 {
        self.re.d.max(self.im.d)
    }
    fn real_parts(&self) -> Option<(Rational, Rational)> {
        self.re.real_parts()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rq(a: i64, b: i64, d: u32) -> RealQuad {
        RealQuad::new(Rational::from_i64(a), Rational::from_i64(b), d).unwrap()
    }

    #[test]
    fn square_free() {
        assert!(is_square_free(1));
        assert!(is_square_free(2));
        assert!(is_square_free(30));
        assert!(!is_square_free(12));
        assert!(!is_square_free(0));
        assert!(RealQuad::new(Rational::one(), Rational::one(), 8).is_err());
        assert!(RealQuad::new(Rational::one(), Rational::one(), 1).is_err());
    }

    #[test]
    fn inverse_and_sqrt() {
        let x = rq(3, -2, 2);
        let y = x.inv().unwrap();
        assert_eq!(x.clone() * &y, RealQuad::one());
        // (1 + √2)² = 3 + 2√2
        let s = rq(3, 2, 2).sqrt_exact().unwrap();
        assert_eq!(s, rq(1, 1, 2));
        assert_eq!(
            RealQuad::rational_in(Rational::from_i64(8), 2)
                .unwrap()
                .sqrt_exact(),
            Some(rq(0, 2, 2))
        );
        assert_eq!(rq(2, 0, 3).sqrt_exact(), None);
        assert_eq!(rq(3, -2, 2).sqrt_exact(), Some(rq(-1, 1, 2)));
    }

    #[test]
    fn complex_inverse() {
        let z = ComplexQuad::new(rq(1, 1, 2), rq(2, 0, 2));
        let w = z.inv().unwrap();
        assert_eq!(z * w, ComplexQuad::one());
    }
}
