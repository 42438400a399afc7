//! Number carriers shared by the exact and the tolerant pipelines.
//!
//! Every geometric routine in this crate is generic over [`Scalar`]. The exact
//! carrier is [`Rational`] (arbitrary precision, always in lowest terms); the
//! approximate carrier is `f64`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational number. Denominator is kept positive and the fraction reduced
/// after every operation.
pub type Rational = num_rational::BigRational;

/// Sign of an evaluated quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_i32(v: i32) -> Self {
        match v.cmp(&0) {
            std::cmp::Ordering::Less => Sign::Negative,
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Positive,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic on this carrier never rounds.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    /// Exact value of the stored number (f64 values are dyadic rationals).
    fn to_rational(&self) -> Option<Rational>;
    fn is_zero(&self) -> bool;

    /// Structural zero test used by elimination and rank decisions.
    /// Exact carriers ignore `scale`.
    fn negligible(&self, scale: f64) -> bool;

    fn sign(&self) -> Sign {
        if self.is_zero() {
            Sign::Zero
        } else if *self > Self::zero() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }

    /// Rescales `v` by a positive factor so exact entries become coprime
    /// integers. No-op for floats.
    fn clear_denominators(_v: &mut [Self]) {}

    /// `sum a_i * b_i`.
    fn dot(a: &[Self], b: &[Self]) -> Self {
        a.iter().zip(b).fold(Self::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
    }

    /// `det[a; b; c]` by cofactor expansion along `a`.
    fn det3(a: &[Self; 3], b: &[Self; 3], c: &[Self; 3]) -> Self {
        let minor = |i: usize, j: usize| Self::dot(&[b[i].clone(), -b[j].clone()], &[c[j].clone(), c[i].clone()]);
        Self::dot(a, &[minor(1, 2), minor(2, 0), minor(0, 1)])
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn negligible(&self, _scale: f64) -> bool {
        Zero::is_zero(self)
    }
    fn dot(a: &[Self], b: &[Self]) -> Self {
        // Integer operands skip the gcd normalisation of every product.
        if a.iter().chain(b).all(|q| q.denom().is_one()) {
            let mut acc = BigInt::zero();
            for (x, y) in a.iter().zip(b) {
                acc += x.numer() * y.numer();
            }
            return Rational::from_integer(acc);
        }
        a.iter().zip(b).fold(Zero::zero(), |acc: Rational, (x, y)| acc + x * y)
    }
    fn clear_denominators(v: &mut [Self]) {
        let lcm = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<BigInt> = v.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if Zero::is_zero(&g) {
            return;
        }
        for (q, x) in v.iter_mut().zip(ints) {
            *q = Rational::from_integer(x / &g);
        }
    }
    fn sign(&self) -> Sign {
        if Zero::is_zero(self) {
            Sign::Zero
        } else if self.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

/// Relative threshold below which float pivots count as zero in elimination.
pub const FLOAT_STRUCTURAL_TOL: f64 = 1e-12;

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_rational(q: &Rational) -> Self {
        rational_to_f64(q)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn to_rational(&self) -> Option<Rational> {
        Rational::from_float(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn negligible(&self, scale: f64) -> bool {
        self.abs() <= FLOAT_STRUCTURAL_TOL * scale.max(f64::MIN_POSITIVE)
    }
}

/// Nearest-ish f64 of a rational, robust to huge numerators and denominators.
pub fn rational_to_f64(q: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Shift both parts down to the f64 range.
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift_n = (nb - 900).max(0) as usize;
    let shift_d = (db - 900).max(0) as usize;
    let n = (q.numer() >> shift_n).to_f64().unwrap_or(0.0);
    let d = (q.denom() >> shift_d).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi(shift_n as i32 - shift_d as i32)
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid rational literal {0:?}")]
pub struct RationalParseError(pub String);

/// Parses `[+-]digits[.digits][e[+-]digits]` or `[+-]digits/digits` exactly.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let err = || RationalParseError(text.to_string());
    let s = text.trim();
    let (neg, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    if body.is_empty() {
        return Err(err());
    }
    let all_digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let value = if let Some((num, den)) = body.split_once('/') {
        if !all_digits(num) || !all_digits(den) {
            return Err(err());
        }
        let d: BigInt = den.parse().map_err(|_| err())?;
        if Zero::is_zero(&d) {
            return Err(err());
        }
        Rational::new(num.parse().map_err(|_| err())?, d)
    } else {
        let (mantissa, exponent) = match body.find(['e', 'E']) {
            Some(pos) => {
                let exp_text = &body[pos + 1..];
                let (eneg, edigits) = match exp_text.as_bytes().first() {
                    Some(b'-') => (true, &exp_text[1..]),
                    Some(b'+') => (false, &exp_text[1..]),
                    _ => (false, exp_text),
                };
                if !all_digits(edigits) {
                    return Err(err());
                }
                let e: i64 = edigits.parse().map_err(|_| err())?;
                if e > 10_000 {
                    return Err(err());
                }
                (&body[..pos], if eneg { -e } else { e })
            }
            None => (body, 0),
        };
        let (int_part, frac_part) = match mantissa.split_once('.') {
            Some((i, f)) => (i, f),
            None => (mantissa, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err());
        }
        if !(int_part.is_empty() || all_digits(int_part)) || !(frac_part.is_empty() || all_digits(frac_part)) {
            return Err(err());
        }
        let digits = format!("{int_part}{frac_part}");
        let mut numer: BigInt = digits.parse().map_err(|_| err())?;
        let scale = exponent - frac_part.len() as i64;
        let ten = BigInt::from(10);
        if scale >= 0 {
            numer *= num_traits::pow(ten, scale as usize);
            Rational::from_integer(numer)
        } else {
            Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
        }
    };
    Ok(if neg { -value } else { value })
}

/// Formats a rational as an integer, a terminating decimal, or `p/q`.
/// The output parses back to the identical value.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        return q.numer().to_string();
    }
    let mut den = q.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let (mut twos, mut fives) = (0usize, 0usize);
    while den.is_even() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() || twos.max(fives) > 64 {
        return format!("{}/{}", q.numer(), q.denom());
    }
    let places = twos.max(fives);
    let scaled = q * Rational::from_integer(num_traits::pow(BigInt::from(10), places));
    let digits = scaled.to_integer().abs().to_string();
    let digits = format!("{digits:0>width$}", width = places + 1);
    let (int_part, frac_part) = digits.split_at(digits.len() - places);
    let frac_part = frac_part.trim_end_matches('0');
    let sign = if q.is_negative() { "-" } else { "" };
    format!("{sign}{int_part}.{frac_part}")
}

/// Exact dyadic value of a float.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_literal_grammar() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("+0.125").unwrap(), rat(1, 8));
        assert_eq!(parse_rational("1.5e2").unwrap(), int(150));
        assert_eq!(parse_rational("25e-3").unwrap(), rat(1, 40));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        for bad in ["", "-", "1/0", "a", "1..2", "1/2/3", "1.2.3", "e5", "1e"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formats_terminating_and_repeating() {
        assert_eq!(format_rational(&rat(1, 8)), "0.125");
        assert_eq!(format_rational(&rat(-5, 2)), "-2.5");
        assert_eq!(format_rational(&rat(1, 3)), "1/3");
        assert_eq!(format_rational(&int(-7)), "-7");
        assert_eq!(format_rational(&rat(-1, 1 << 20)), "-0.00000095367431640625");
    }

    #[test]
    fn float_conversion_is_exact_dyadic() {
        let q = rational_from_f64(0.1).unwrap();
        assert_ne!(q, rat(1, 10));
        assert_eq!(Scalar::to_f64(&q), 0.1);
    }

    proptest::proptest! {
        #[test]
        fn format_parse_round_trip(n in -1_000_000i64..1_000_000, e2 in 0u32..30, e3 in 0u32..3) {
            let q = rat(n, (1i64 << e2) * 3i64.pow(e3));
            proptest::prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
        }
    }
}
