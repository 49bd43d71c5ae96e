//! Exact rational scalars and Pochhammer symbols.
//!
//! Every parameter that enters a sign decision is held as a reduced
//! [`Rational`]. Parameters arrive from the outside as strings such as
//! `"3/2"`, `"-0.25"` or `"1.5e-2"` and are converted without rounding.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Builds `n/d` from machine integers. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses a rational from `p/q`, an integer, or a decimal with an optional
/// exponent. The conversion is exact.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("malformed rational {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = parse_decimal(num).ok_or_else(bad)?;
        let d = parse_decimal(den).ok_or_else(bad)?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(n / d);
    }
    parse_decimal(s).ok_or_else(bad)
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], Some(&s[i + 1..])),
        None => (s, None),
    };
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(if all_digits.is_empty() { "0" } else { &all_digits }).ok()?;
    let mut scale: i64 = -(frac_part.len() as i64);
    if let Some(e) = exponent {
        scale += e.parse::<i64>().ok()?;
    }
    if scale.unsigned_abs() > 10_000 {
        return None;
    }
    let ten = BigInt::from(10u32);
    let mut value = Rational::from_integer(numer);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if negative { -value } else { value })
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = a.clone();
    for _ in 0..n {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

/// `[(a)_0, (a)_1, ..., (a)_n]`.
pub fn pochhammer_table(a: &Rational, n: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = Rational::one();
    let mut term = a.clone();
    out.push(acc.clone());
    for _ in 0..n {
        acc *= &term;
        term += Rational::one();
        out.push(acc.clone());
    }
    out
}

/// `[0!, 1!, ..., n!]` as rationals.
pub fn factorial_table(n: usize) -> Vec<Rational> {
    pochhammer_table(&Rational::one(), n)
}

/// `Some(k)` when `x` is a non-negative integer that fits in `usize`.
pub fn as_nonneg_integer(x: &Rational) -> Option<usize> {
    if x.is_integer() && !x.is_negative() {
        x.to_integer().to_usize()
    } else {
        None
    }
}

/// True when `x` is `0, -1, -2, ...`.
pub fn is_nonpositive_integer(x: &Rational) -> bool {
    x.is_integer() && !x.is_positive()
}

/// Sign of a rational as -1, 0 or 1.
pub fn signum(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Compact display used in reports: `3/2`, `-4`, `0`.
pub fn show(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Approximate `f64` value; only for display and non-certified diagnostics.
pub fn to_f64(x: &Rational) -> f64 {
    let (n, d) = (x.numer(), x.denom());
    let shift = n.bits().max(d.bits()).saturating_sub(900) as usize;
    let (n, d) = if shift > 0 { (n >> shift, d >> shift) } else { (n.clone(), d.clone()) };
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) if b != 0.0 => a / b,
        _ => f64::NAN,
    }
}

/// `floor(x)` as a big integer.
pub fn floor(x: &Rational) -> BigInt {
    x.numer().div_floor(x.denom())
}

/// Closest "short" rational to `v`: decimal rounding to `digits`
/// significant digits. Used to turn float grids into exact parameters.
pub fn from_f64_rounded(v: f64, digits: usize) -> Rational {
    let text = format!("{:.*e}", digits.saturating_sub(1), v);
    parse_rational(&text).expect("formatted float is a valid decimal")
}

/// Serde adapters writing rationals as `"p/q"` strings.
pub mod serde_str {
    use super::{parse_rational, show, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&show(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::{parse_rational, show, Rational};
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(xs.iter().map(show))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_common_forms() {
        assert_eq!(parse_rational("1/2").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), ratio(-1, 4));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("1.5e-2").unwrap(), ratio(3, 200));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("0.5/2").unwrap(), ratio(1, 4));
    }

    #[test]
    fn rejects_malformed() {
        for s in ["1..5", "", "abc", "1/0", "--1", "1/", "e5", "1.2.3", "."] {
            assert!(parse_rational(s).is_err(), "{s} should not parse");
        }
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&ratio(1, 2), 3), ratio(15, 8));
        assert_eq!(pochhammer(&ratio(-7, 3), 0), int(1));
        assert_eq!(pochhammer(&int(3), 4), int(360));
        assert_eq!(pochhammer(&int(-2), 3), int(0));
    }

    #[test]
    fn table_matches_pointwise() {
        let a = ratio(5, 7);
        let t = pochhammer_table(&a, 8);
        for (n, v) in t.iter().enumerate() {
            assert_eq!(*v, pochhammer(&a, n));
        }
        assert_eq!(factorial_table(5)[5], int(120));
    }

    #[test]
    fn float_rounding_is_exact_decimal() {
        assert_eq!(from_f64_rounded(0.125, 6), ratio(1, 8));
        assert_eq!(from_f64_rounded(50.0, 6), int(50));
    }
}
