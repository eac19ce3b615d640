//! Complex literals `RE`, `IMi` or `RE+IMi`, where each part is a decimal
//! (with optional exponent) or a ratio of decimals such as `2/65`. Parts are
//! parsed exactly and converted to `f64` once.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiteralError(pub String);

impl fmt::Display for LiteralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid complex literal: {}", self.0)
    }
}

impl std::error::Error for LiteralError {}

/// Exact value of a complex literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactComplex {
    pub re: BigRational,
    pub im: BigRational,
}

impl ExactComplex {
    pub fn to_f64(&self) -> Complex<f64> {
        Complex::new(ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }
}

fn ratio_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn bad(s: &str) -> LiteralError {
    LiteralError(s.to_string())
}

fn parse_decimal(s: &str) -> Result<BigRational, LiteralError> {
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(p) => (&s[..p], s[p + 1..].parse::<i32>().map_err(|_| bad(s))?),
        None => (s, 0),
    };
    let (neg, digits) = match mant.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad(s));
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad(s));
    }
    let all = format!("{int_part}{frac_part}");
    let n: BigInt = all.parse().map_err(|_| bad(s))?;
    let ten = BigInt::from(10);
    let scale = exp - frac_part.len() as i32;
    let mut v = BigRational::from_integer(n);
    if scale >= 0 {
        v *= BigRational::from_integer(Pow::pow(&ten, scale as u32));
    } else {
        v /= BigRational::from_integer(Pow::pow(&ten, (-scale) as u32));
    }
    Ok(if neg { -v } else { v })
}

/// A real part: decimal or `decimal/decimal`.
pub fn parse_real(s: &str) -> Result<BigRational, LiteralError> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let den = parse_decimal(b)?;
            if den.is_zero() {
                return Err(LiteralError(format!("{s}: zero denominator")));
            }
            Ok(parse_decimal(a)? / den)
        }
        None => parse_decimal(s),
    }
}

fn parse_imag(s: &str) -> Result<BigRational, LiteralError> {
    match s {
        "" | "+" => Ok(BigRational::one()),
        "-" => Ok(-BigRational::one()),
        _ => parse_real(s),
    }
}

/// Index of the sign separating the real and imaginary parts, if any.
fn split_point(s: &str) -> Option<usize> {
    let b = s.as_bytes();
    (1..b.len())
        .rev()
        .find(|&i| (b[i] == b'+' || b[i] == b'-') && !matches!(b[i - 1], b'e' | b'E' | b'/'))
}

pub fn parse_complex(s: &str) -> Result<ExactComplex, LiteralError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(bad(s));
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(ExactComplex {
            re: parse_real(&t)?,
            im: BigRational::zero(),
        });
    };
    match split_point(body) {
        Some(p) => Ok(ExactComplex {
            re: parse_real(&body[..p])?,
            im: parse_imag(&body[p..])?,
        }),
        None => Ok(ExactComplex {
            re: BigRational::zero(),
            im: parse_imag(body)?,
        }),
    }
}

/// Comma-separated list of complex literals.
pub fn parse_complex_list(s: &str) -> Result<Vec<ExactComplex>, LiteralError> {
    s.split(',').map(parse_complex).collect()
}

/// Comma-separated list of integers.
pub fn parse_int_list(s: &str) -> Result<Vec<i64>, LiteralError> {
    s.split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| LiteralError(format!("{p}: not an integer"))))
        .collect()
}
