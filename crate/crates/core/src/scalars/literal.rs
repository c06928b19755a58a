//! Textual scalar literals: `p/q` or `p` for rationals, `[a, b]` for
//! `a + b√d`, and `{re:[a,b], im:[c,e]}` for complex values.

use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use super::{ComplexQuad, Rational, RealQuad, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed literal `{text}`: {reason}")]
pub struct LiteralError {
    pub text: String,
    pub reason: String,
}

fn err(text: &str, reason: impl Into<String>) -> LiteralError {
    LiteralError {
        text: text.chars().take(64).collect(),
        reason: reason.into(),
    }
}

fn parse_int(s: &str, whole: &str) -> Result<BigInt, LiteralError> {
    let t = s.trim();
    let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(whole, "expected an integer"));
    }
    BigInt::from_str(t).map_err(|e| err(whole, e.to_string()))
}

pub fn parse_rational(text: &str) -> Result<Rational, LiteralError> {
    let t = text.trim();
    match t.split_once('/') {
        Some((n, d)) => {
            let n = parse_int(n, text)?;
            let d = parse_int(d, text)?;
            Rational::from_bigints(n, d).map_err(|_| err(text, "zero denominator"))
        }
        None => Ok(Rational::from_integer(parse_int(t, text)?)),
    }
}

/// Parses `[a, b]` (meaning `a + b√d`) or a bare rational.
pub fn parse_real_quad(text: &str, d: u32) -> Result<RealQuad, LiteralError> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| err(text, "missing `]`"))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| err(text, "expected `[a, b]`"))?;
        let a = parse_rational(a)?;
        let b = parse_rational(b)?;
        RealQuad::new(a, b, d).map_err(|e| err(text, e.to_string()))
    } else {
        let q = parse_rational(t)?;
        RealQuad::rational_in(q, d).map_err(|e| err(text, e.to_string()))
    }
}

/// Parses `{re:[a,b], im:[c,e]}`, `[a, b]`, or a bare rational.
pub fn parse_complex(text: &str, d: u32) -> Result<ComplexQuad, LiteralError> {
    let t = text.trim();
    let Some(inner) = t.strip_prefix('{') else {
        return Ok(ComplexQuad::from_real(parse_real_quad(t, d)?));
    };
    let inner = inner
        .strip_suffix('}')
        .ok_or_else(|| err(text, "missing `}`"))?;
    // split at the comma that sits outside brackets
    let mut depth = 0i32;
    let mut split = None;
    for (i, c) in inner.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                split = Some(i);
                break;
            }
            _ => {}
        }
    }
    let split = split.ok_or_else(|| err(text, "expected `re:` and `im:` parts"))?;
    let (first, second) = (&inner[..split], &inner[split + 1..]);
    let re = first
        .trim()
        .strip_prefix("re:")
        .ok_or_else(|| err(text, "expected `re:`"))?;
    let im = second
        .trim()
        .strip_prefix("im:")
        .ok_or_else(|| err(text, "expected `im:`"))?;
    Ok(ComplexQuad::new(
        parse_real_quad(re, d)?,
        parse_real_quad(im, d)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("5/6").unwrap(), Rational::new(5, 6));
        assert_eq!(parse_rational(" -7 ").unwrap(), Rational::from_i64(-7));
        assert_eq!(parse_rational("4/-6").unwrap(), Rational::new(-2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("--1").is_err());
    }

    #[test]
    fn quad_and_complex() {
        let x = parse_real_quad("[1, -1/2]", 2).unwrap();
        assert_eq!(
            x,
            RealQuad::new(Rational::one(), Rational::new(-1, 2), 2).unwrap()
        );
        assert!(parse_real_quad("[1, 1]", 1).is_err());
        let z = parse_complex("{re:[1,0], im:[0,1]}", 2).unwrap();
        assert_eq!(z.re_ref(), &RealQuad::one());
        assert_eq!(z.im_ref(), &RealQuad::sqrt_of(2).unwrap());
        assert_eq!(parse_complex("3", 1).unwrap(), ComplexQuad::from_i64(3));
        assert!(parse_complex("{re:[1,0]}", 1).is_err());
        assert!(parse_complex("{re:[1,0], im:[0,1]", 1).is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "-3/4", "{re:[1, 0], im:[0, 1]}", "[2, -1]"] {
            let z = parse_complex(s, 2).unwrap();
            assert_eq!(parse_complex(&z.to_string(), 2).unwrap(), z);
        }
    }
}
