//! Univariate polynomials over Q: Sturm sequences and small-degree factoring.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalars::{Rational, RealScalar, Scalar, Sign};

use super::AlgebraError;

/// Dense polynomial, coefficients from the constant term up. No trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    c: Vec<Rational>,
}

impl Poly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(Scalar::is_zero) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| Rational::from_i64(x)).collect())
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn constant(q: Rational) -> Self {
        Poly::new(vec![q])
    }

    /// `x - r`.
    pub fn linear(r: &Rational) -> Self {
        Poly::new(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.c.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inv().expect("nonzero lead");
        self.scale(&inv)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Poly::new(self.c.iter().map(|x| x.clone() * q).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    let a = self.c.get(i).cloned().unwrap_or_else(Rational::zero);
                    let b = o.c.get(i).cloned().unwrap_or_else(Rational::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Rational::from_i64(-1)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].clone() + &(a.clone() * b);
            }
        }
        Poly::new(c)
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.lead().inv().expect("nonzero lead");
        let mut r = self.c.clone();
        let mut q = vec![Rational::zero(); self.c.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = r.last().expect("nonempty").clone() * &inv;
            for (i, b) in d.c.iter().enumerate() {
                r[k + i] = r[k + i].clone() - &(f.clone() * b);
            }
            q[k] = f;
            r.pop();
            while r.last().is_some_and(Scalar::is_zero) {
                r.pop();
            }
        }
        (Poly::new(q), Poly::new(r))
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, u, v)` with `u·self + v·o = g = gcd`.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::constant(Rational::one()), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::constant(Rational::one()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = r0.lead().inv().expect("nonzero gcd");
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, x)| x.clone() * &Rational::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.c
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, a| acc * x + a)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, a| acc * x + a.to_f64())
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    pub fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].divrem(&seq[n - 1]).1;
            if r.is_zero() {
                break;
            }
            seq.push(r.scale(&Rational::from_i64(-1)));
        }
        seq
    }

    fn sign_at(&self, x: Option<&Rational>, plus_inf: bool) -> Sign {
        match x {
            Some(x) => self.eval(x).sign(),
            None => {
                let s = self.lead().sign();
                let odd = self.degree().unwrap_or(0) % 2 == 1;
                if !plus_inf && odd {
                    match s {
                        Sign::Positive => Sign::Negative,
                        Sign::Negative => Sign::Positive,
                        Sign::Zero => Sign::Zero,
                    }
                } else {
                    s
                }
            }
        }
    }

    fn variations(seq: &[Poly], x: Option<&Rational>, plus_inf: bool) -> usize {
        let signs: Vec<Sign> = seq
            .iter()
            .map(|p| p.sign_at(x, plus_inf))
            .filter(|s| *s != Sign::Zero)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        let seq = self.sturm_sequence();
        Self::variations(&seq, None, false) - Self::variations(&seq, None, true)
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count_roots_in(&self, a: &Rational, b: &Rational) -> usize {
        let seq = self.sturm_sequence();
        Self::variations(&seq, Some(a), false).saturating_sub(Self::variations(&seq, Some(b), true))
    }

    /// Cauchy bound: every root has absolute value below it.
    pub fn root_bound(&self) -> Rational {
        let lead = self.lead().abs();
        let m = self
            .c
            .iter()
            .map(Rational::abs)
            .max()
            .unwrap_or_else(Rational::zero);
        Rational::one() + m * &lead.inv().expect("nonzero lead")
    }

    /// Disjoint intervals `(a, b]`, one per real root, in increasing order.
    pub fn isolate_real_roots(&self) -> Vec<(Rational, Rational)> {
        let seq = self.sturm_sequence();
        let count = |a: &Rational, b: &Rational| {
            Self::variations(&seq, Some(a), false).saturating_sub(Self::variations(
                &seq,
                Some(b),
                true,
            ))
        };
        let b = self.root_bound();
        let mut stack = vec![(-b.clone(), b)];
        let mut out = Vec::new();
        while let Some((lo, hi)) = stack.pop() {
            match count(&lo, &hi) {
                0 => {}
                1 => out.push((lo, hi)),
                _ => {
                    let mid = (lo.clone() + &hi) * &Rational::new(1, 2);
                    stack.push((mid.clone(), hi));
                    stack.push((lo, mid));
                }
            }
        }
        out.sort();
        out
    }

    /// Bisects an isolating interval `(a, b]` until it is shorter than `width`.
    pub fn refine_root(
        &self,
        interval: &(Rational, Rational),
        width: &Rational,
    ) -> (Rational, Rational) {
        let (mut lo, mut hi) = interval.clone();
        if self.eval(&hi).is_zero() {
            return (hi.clone(), hi);
        }
        let half = Rational::new(1, 2);
        while (hi.clone() - &lo) > *width {
            let mid = (lo.clone() + &hi) * &half;
            let fm = self.eval(&mid);
            if fm.is_zero() {
                return (mid.clone(), mid);
            }
            if self.count_roots_in(&lo, &mid) == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo, hi)
    }

    pub fn is_totally_real(&self) -> Result<bool, AlgebraError> {
        if !self.is_squarefree() {
            return Err(AlgebraError::NotSquarefree(self.to_string()));
        }
        Ok(self.count_real_roots() == self.degree().unwrap_or(0))
    }

    /// Primitive integer multiple.
    fn integer_coeffs(&self) -> Vec<BigInt> {
        let l = self
            .c
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let v: Vec<BigInt> = self
            .c
            .iter()
            .map(|x| x.numer() * (&l / x.denom()))
            .collect();
        let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            v
        } else {
            v.into_iter().map(|x| x / &g).collect()
        }
    }

    /// Factors into monic irreducibles over Q. Rational roots are split off
    /// at any degree; the remaining factor must have degree at most 4.
    pub fn factor(&self) -> Result<Vec<Poly>, AlgebraError> {
        let mut rest = self.monic();
        let mut out = Vec::new();
        while rest.degree().unwrap_or(0) >= 1 {
            match rational_root(&rest)? {
                Some(r) => {
                    let lin = Poly::linear(&r);
                    rest = rest.divrem(&lin).0;
                    out.push(lin);
                }
                None => break,
            }
        }
        match rest.degree().unwrap_or(0) {
            0 => {}
            1..=3 => out.push(rest),
            4 => match quartic_split(&rest)? {
                Some((a, b)) => {
                    out.push(a);
                    out.push(b);
                }
                None => out.push(rest),
            },
            d => {
                return Err(AlgebraError::UnsupportedCenter(format!(
                    "factor of degree {d} without rational roots in {self}"
                )))
            }
        }
        Ok(out)
    }
}

const DIVISOR_LIMIT: u64 = 1 << 40;

fn divisors(n: &BigInt) -> Result<Vec<BigInt>, AlgebraError> {
    let n = n.abs();
    let m = n.to_u64().filter(|&m| m <= DIVISOR_LIMIT).ok_or_else(|| {
        AlgebraError::UnsupportedCenter(format!("coefficient {n} too large for divisor search"))
    })?;
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= m {
        if m % i == 0 {
            out.push(BigInt::from(i));
            if i * i != m {
                out.push(BigInt::from(m / i));
            }
        }
        i += 1;
    }
    Ok(out)
}

fn rational_root(p: &Poly) -> Result<Option<Rational>, AlgebraError> {
    if p.c[0].is_zero() {
        return Ok(Some(Rational::zero()));
    }
    let z = p.integer_coeffs();
    let nums = divisors(&z[0])?;
    let dens = divisors(z.last().expect("nonzero"))?;
    for a in &nums {
        for b in &dens {
            for s in [1i64, -1] {
                let r = Rational::from_bigints(a * BigInt::from(s), b.clone()).expect("nonzero");
                if p.eval(&r).is_zero() {
                    return Ok(Some(r));
                }
            }
        }
    }
    Ok(None)
}

fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Splits a monic quartic without rational roots into two monic quadratics.
fn quartic_split(p: &Poly) -> Result<Option<(Poly, Poly)>, AlgebraError> {
    // make the coefficients integral: p(y/L)·L⁴ is monic with integer entries
    let l = p.c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let lq = Rational::from_integer(l.clone());
    let scaled: Vec<BigInt> = (0..=4)
        .map(|i| (p.c[i].clone() * &lq.pow(4 - i as u32)).numer().clone())
        .collect();
    let (d, c, b, a) = (&scaled[0], &scaled[1], &scaled[2], &scaled[3]);
    for q0 in divisors(d)? {
        for q in [q0.clone(), -q0] {
            let s = d / &q;
            let mut cands = Vec::new();
            if s != q {
                let num = c - a * &q;
                let den = &s - &q;
                if (&num % &den).is_zero() {
                    let pp = num / den;
                    cands.push((pp.clone(), a - pp));
                }
            } else if &(&q * a) == c {
                let disc = a * a - BigInt::from(4) * (b - BigInt::from(2) * &q);
                if let Some(r) = isqrt_exact(&disc) {
                    if ((a + &r) % BigInt::from(2)).is_zero() {
                        let pp = (a + &r) / BigInt::from(2);
                        cands.push((pp.clone(), a - pp));
                    }
                }
            }
            for (pp, rr) in cands {
                if &q + &s + &pp * &rr == *b && &pp * &s + &q * &rr == *c {
                    // undo the scaling y = L·x
                    let f = |x0: &BigInt, x1: &BigInt| {
                        let l = Rational::from_integer(l.clone());
                        Poly::new(vec![
                            Rational::from_integer(x0.clone()) * &l.pow(2).inv().expect("nonzero"),
                            Rational::from_integer(x1.clone()) * &l.inv().expect("nonzero"),
                            Rational::one(),
                        ])
                    };
                    return Ok(Some((f(&q, &pp), f(&s, &rr))));
                }
            }
        }
    }
    Ok(None)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.sign() == Sign::Negative;
            let abs = a.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let coeff = if abs.is_one() && i > 0 {
                String::new()
            } else {
                abs.to_string()
            };
            match i {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}x")?,
                _ => write!(f, "{coeff}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_arith() {
        let p = Poly::from_i64(&[9, 0, -2, 0, 1]);
        assert_eq!(p.to_string(), "x^4 - 2x^2 + 9");
        let (q, r) = p.divrem(&Poly::from_i64(&[1, 1]));
        assert_eq!(q.mul(&Poly::from_i64(&[1, 1])).add(&r), p);
    }

    #[test]
    fn totally_real_examples() {
        assert!(Poly::from_i64(&[-2, 0, 1]).is_totally_real().unwrap());
        assert!(!Poly::from_i64(&[1, 0, 1]).is_totally_real().unwrap());
        let p = Poly::from_i64(&[5, 0, -5, 0, 1]);
        assert_eq!(p.count_real_roots(), 4);
        assert!(p.is_totally_real().unwrap());
        assert!(Poly::from_i64(&[1, -2, 1]).is_totally_real().is_err());
    }

    #[test]
    fn factoring() {
        assert_eq!(Poly::from_i64(&[-2, 0, 1]).factor().unwrap().len(), 1);
        assert_eq!(Poly::from_i64(&[9, 0, -2, 0, 1]).factor().unwrap().len(), 1);
        let f = Poly::from_i64(&[-1, 0, 1]).factor().unwrap();
        assert_eq!(f.len(), 2);
        // (x² − 2)(x² + 3)
        let f = Poly::from_i64(&[-6, 0, 1, 0, 1]).factor().unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].mul(&f[1]), Poly::from_i64(&[-6, 0, 1, 0, 1]));
        // (x² − x/2 + 1/3)(x² + 1) has non-integral coefficients
        let a = Poly::new(vec![
            Rational::new(1, 3),
            Rational::new(-1, 2),
            Rational::one(),
        ]);
        let b = Poly::from_i64(&[1, 0, 1]);
        let f = a.mul(&b).factor().unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.contains(&a) && f.contains(&b));
        // degree 6 with no rational roots is out of range
        assert!(Poly::from_i64(&[2, 0, 0, 0, 0, 0, 1]).factor().is_err());
    }

    #[test]
    fn root_isolation() {
        let p = Poly::from_i64(&[5, 0, -5, 0, 1]);
        let iv = p.isolate_real_roots();
        assert_eq!(iv.len(), 4);
        let mut floats: Vec<f64> = iv
            .iter()
            .map(|i| {
                let (a, b) = p.refine_root(i, &Rational::new(1, 1 << 30));
                (a.to_f64() + b.to_f64()) / 2.0
            })
            .collect();
        floats.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let s5 = 5f64.sqrt();
        let expect = [
            -((5.0 + s5) / 2.0).sqrt(),
            -((5.0 - s5) / 2.0).sqrt(),
            ((5.0 - s5) / 2.0).sqrt(),
            ((5.0 + s5) / 2.0).sqrt(),
        ];
        for (x, y) in floats.iter().zip(expect) {
            assert!((x - y).abs() < 1e-8);
        }
    }

    #[test]
    fn ext_gcd_identity() {
        let a = Poly::from_i64(&[-1, 1]);
        let b = Poly::from_i64(&[1, 1]);
        let (g, u, v) = a.ext_gcd(&b);
        assert_eq!(g, Poly::from_i64(&[1]));
        assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
    }
}
