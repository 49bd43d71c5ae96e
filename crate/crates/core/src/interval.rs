//! Certified real intervals with outward-rounded dyadic endpoints.
//!
//! Endpoints are exact rationals. After every operation they are rounded
//! outward to a dyadic number with `bits` significant bits, so the true
//! value always lies in `[lo, hi]` while endpoint sizes stay bounded.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Environment variable overriding the default working precision, in
/// significant decimal digits.
pub const PRECISION_ENV: &str = "TURANKIT_PRECISION";

pub const DEFAULT_DIGITS: u32 = 30;

const GUARD_BITS: u32 = 16;

/// Working precision for interval endpoints, stored in bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Precision {
    bits: u32,
}

impl Precision {
    pub fn from_bits(bits: u32) -> Self {
        Precision { bits: bits.max(24) }
    }

    /// Precision carrying `digits` significant decimal digits plus guard bits.
    pub fn from_digits(digits: u32) -> Self {
        let bits = (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32;
        Self::from_bits(bits + GUARD_BITS)
    }

    /// Default precision, honouring `TURANKIT_PRECISION` when it parses.
    pub fn from_env() -> Self {
        std::env::var(PRECISION_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u32>().ok())
            .filter(|d| *d > 0)
            .map(Self::from_digits)
            .unwrap_or_default()
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn with_extra(self, extra: u32) -> Self {
        Self::from_bits(self.bits + extra)
    }

    pub fn doubled(self) -> Self {
        Self::from_bits(self.bits * 2)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self::from_digits(DEFAULT_DIGITS)
    }
}

/// Outcome of a certified sign decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CertifiedSign {
    Negative,
    Zero,
    Positive,
    Inconclusive,
}

impl CertifiedSign {
    pub fn from_rational(x: &Rational) -> Self {
        match rational::signum(x) {
            -1 => CertifiedSign::Negative,
            0 => CertifiedSign::Zero,
            _ => CertifiedSign::Positive,
        }
    }

    pub fn negate(self) -> Self {
        match self {
            CertifiedSign::Negative => CertifiedSign::Positive,
            CertifiedSign::Positive => CertifiedSign::Negative,
            s => s,
        }
    }
}

fn scale_for(x: &Rational, bits: u32) -> i64 {
    let magnitude = x.numer().bits() as i64 - x.denom().bits() as i64;
    i64::from(bits) - magnitude
}

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

/// Largest dyadic with `bits` significant bits that is `<= x`.
pub fn round_down(x: &Rational, bits: u32) -> Rational {
    round_dir(x, bits, false)
}

/// Smallest dyadic with `bits` significant bits that is `>= x`.
pub fn round_up(x: &Rational, bits: u32) -> Rational {
    round_dir(x, bits, true)
}

fn round_dir(x: &Rational, bits: u32, up: bool) -> Rational {
    if x.is_zero() {
        return Rational::zero();
    }
    let s = scale_for(x, bits);
    // Already short enough: keep it exact.
    if x.denom().is_power_of_two() && x.numer().bits() <= u64::from(bits) {
        return x.clone();
    }
    let (num, den) = if s >= 0 {
        (x.numer() << s as u64, x.denom().clone())
    } else {
        (x.numer().clone(), x.denom() << (-s) as u64)
    };
    let m = if up { -((-num).div_floor(&den)) } else { num.div_floor(&den) };
    if s >= 0 {
        Rational::new(m, pow2(s as u64))
    } else {
        Rational::from_integer(m * pow2((-s) as u64))
    }
}

trait PowerOfTwo {
    fn is_power_of_two(&self) -> bool;
}

impl PowerOfTwo for BigInt {
    fn is_power_of_two(&self) -> bool {
        self.is_positive() && self.trailing_zeros() == Some(self.bits() - 1)
    }
}

/// Closed interval `[lo, hi]` certified to contain a real value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CertifiedInterval {
    lo: Rational,
    hi: Rational,
}

impl fmt::Debug for CertifiedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo_f64(), self.hi_f64())
    }
}

/// Written as `[lo, hi]` in floating point; display only.
impl Serialize for CertifiedInterval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq([self.lo_f64(), self.hi_f64()])
    }
}

impl fmt::Display for CertifiedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.17e}, {:.17e}]", self.lo_f64(), self.hi_f64())
    }
}

impl CertifiedInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        CertifiedInterval { lo, hi }
    }

    /// Degenerate interval holding an exact value.
    pub fn exact(x: Rational) -> Self {
        CertifiedInterval { lo: x.clone(), hi: x }
    }

    /// `[x - r, x + r]` for `r >= 0`, rounded outward.
    pub fn ball(x: &Rational, radius: &Rational, prec: Precision) -> Self {
        Self::rounded(x - radius, x + radius, prec)
    }

    fn rounded(lo: Rational, hi: Rational, prec: Precision) -> Self {
        CertifiedInterval { lo: round_down(&lo, prec.bits()), hi: round_up(&hi, prec.bits()) }
    }

    /// Exact value rounded outward to the working precision.
    pub fn enclose(x: &Rational, prec: Precision) -> Self {
        Self::rounded(x.clone(), x.clone(), prec)
    }

    pub fn zero() -> Self {
        Self::exact(Rational::zero())
    }

    pub fn one() -> Self {
        Self::exact(Rational::one())
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn lo_f64(&self) -> f64 {
        rational::to_f64(&self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        rational::to_f64(&self.hi)
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    pub fn mid_f64(&self) -> f64 {
        rational::to_f64(&self.mid())
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Largest absolute value in the interval.
    pub fn mag(&self) -> Rational {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value in the interval (0 if it straddles 0).
    pub fn mig(&self) -> Rational {
        if self.contains_zero() {
            Rational::zero()
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= Rational::zero() && self.hi >= Rational::zero()
    }

    pub fn contains_interval(&self, other: &CertifiedInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &CertifiedInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Certainly `< other`.
    pub fn certainly_lt(&self, other: &CertifiedInterval) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_gt(&self, other: &CertifiedInterval) -> bool {
        self.lo > other.hi
    }

    pub fn sign(&self) -> CertifiedSign {
        if self.is_exact() && self.lo.is_zero() {
            CertifiedSign::Zero
        } else if self.lo.is_positive() {
            CertifiedSign::Positive
        } else if self.hi.is_negative() {
            CertifiedSign::Negative
        } else {
            CertifiedSign::Inconclusive
        }
    }

    pub fn neg(&self) -> Self {
        CertifiedInterval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn abs(&self) -> Self {
        if self.lo.is_negative() && self.hi.is_positive() {
            CertifiedInterval { lo: Rational::zero(), hi: self.mag() }
        } else if self.hi.is_negative() || (self.hi.is_zero() && self.lo.is_negative()) {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn add(&self, other: &Self, prec: Precision) -> Self {
        Self::rounded(&self.lo + &other.lo, &self.hi + &other.hi, prec)
    }

    pub fn sub(&self, other: &Self, prec: Precision) -> Self {
        Self::rounded(&self.lo - &other.hi, &self.hi - &other.lo, prec)
    }

    pub fn mul(&self, other: &Self, prec: Precision) -> Self {
        let p = [&self.lo * &other.lo, &self.lo * &other.hi, &self.hi * &other.lo, &self.hi * &other.hi];
        let lo = p.iter().min().cloned().unwrap();
        let hi = p.iter().max().cloned().unwrap();
        Self::rounded(lo, hi, prec)
    }

    pub fn mul_rational(&self, r: &Rational, prec: Precision) -> Self {
        let (a, b) = (&self.lo * r, &self.hi * r);
        if a <= b {
            Self::rounded(a, b, prec)
        } else {
            Self::rounded(b, a, prec)
        }
    }

    pub fn add_rational(&self, r: &Rational, prec: Precision) -> Self {
        Self::rounded(&self.lo + r, &self.hi + r, prec)
    }

    pub fn recip(&self, prec: Precision) -> Result<Self> {
        if self.contains_zero() {
            return Err(Error::Domain("reciprocal of an interval containing zero".into()));
        }
        Ok(Self::rounded(self.hi.recip(), self.lo.recip(), prec))
    }

    pub fn div(&self, other: &Self, prec: Precision) -> Result<Self> {
        Ok(self.mul(&other.recip(prec.with_extra(4))?, prec))
    }

    /// Interval hull.
    pub fn hull(&self, other: &Self) -> Self {
        CertifiedInterval { lo: self.lo.clone().min(other.lo.clone()), hi: self.hi.clone().max(other.hi.clone()) }
    }

    /// Widens by `radius` on both sides.
    pub fn inflate(&self, radius: &Rational, prec: Precision) -> Self {
        Self::rounded(&self.lo - radius, &self.hi + radius, prec)
    }

    pub fn powi(&self, n: u32, prec: Precision) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self, prec);
        }
        acc
    }

    pub fn exp(&self, prec: Precision) -> Self {
        if self.is_exact() {
            return exp_rational(&self.lo, prec);
        }
        let lo = exp_rational(&self.lo, prec);
        let hi = exp_rational(&self.hi, prec);
        CertifiedInterval { lo: lo.lo, hi: hi.hi }
    }

    pub fn ln(&self, prec: Precision) -> Result<Self> {
        if !self.lo.is_positive() {
            return Err(Error::Domain("logarithm of a non-positive interval".into()));
        }
        if self.is_exact() {
            return ln_rational(&self.lo, prec);
        }
        let lo = ln_rational(&self.lo, prec)?;
        let hi = ln_rational(&self.hi, prec)?;
        Ok(CertifiedInterval { lo: lo.lo, hi: hi.hi })
    }

    /// Relative width `(hi - lo) / min |x|`, or `None` when the interval
    /// straddles zero.
    pub fn relative_width(&self) -> Option<f64> {
        let mig = self.mig();
        if mig.is_zero() {
            return if self.is_exact() { Some(0.0) } else { None };
        }
        Some(rational::to_f64(&(self.width() / mig)))
    }
}

/// `exp(r)` for exact rational `r`.
pub fn exp_rational(r: &Rational, prec: Precision) -> CertifiedInterval {
    if r.is_zero() {
        return CertifiedInterval::one();
    }
    // halve until |s| <= 1/2
    let magnitude = r.numer().bits() as i64 - r.denom().bits() as i64;
    let halvings = (magnitude + 2).max(0) as u32;
    let wp = prec.with_extra(20 + halvings);
    let s = r / Rational::from_integer(pow2(u64::from(halvings)));
    let s_abs = s.abs();
    let eps = Rational::new(BigInt::one(), pow2(u64::from(wp.bits()) + 4));

    let mut sum = CertifiedInterval::one();
    let mut term = CertifiedInterval::one();
    let mut k: u64 = 0;
    loop {
        k += 1;
        term = term.mul_rational(&(&s / Rational::from_integer(BigInt::from(k))), wp);
        sum = sum.add(&term, wp);
        if term.mag() < eps {
            break;
        }
    }
    // remainder after the k-th term: |t_k| |s|/(k+1) / (1 - |s|/(k+2)) <= 2 |t_k| |s| / (k+1)
    let radius = term.mag() * &s_abs * Rational::new(BigInt::from(2), BigInt::from(k + 1));
    let mut value = sum.inflate(&radius, wp);
    for _ in 0..halvings {
        value = value.mul(&value, wp);
    }
    CertifiedInterval::rounded(value.lo, value.hi, prec)
}

/// `atanh(z) = z + z^3/3 + ...` for `0 <= |z| <= 1/2`.
fn atanh_small(z: &Rational, wp: Precision) -> CertifiedInterval {
    if z.is_zero() {
        return CertifiedInterval::zero();
    }
    let z2 = z * z;
    let eps = Rational::new(BigInt::one(), pow2(u64::from(wp.bits()) + 4));
    let mut power = CertifiedInterval::exact(z.clone());
    let mut sum = CertifiedInterval::zero();
    let mut i: u64 = 0;
    loop {
        let term = power.mul_rational(&Rational::new(BigInt::one(), BigInt::from(2 * i + 1)), wp);
        sum = sum.add(&term, wp);
        power = power.mul_rational(&z2, wp);
        i += 1;
        if power.mag() < eps {
            break;
        }
    }
    // tail: sum_{j>=i} |z|^{2j+1}/(2j+1) <= |z|^{2i+1} / ((2i+1)(1 - z^2))
    let tail = power.mag() / (Rational::from_integer(BigInt::from(2 * i + 1)) * (Rational::one() - &z2));
    sum.inflate(&tail, wp)
}

/// `atan(z)` for `0 < |z| <= 1/5` via the alternating Taylor series.
fn atan_small(z: &Rational, wp: Precision) -> CertifiedInterval {
    let z2 = z * z;
    let eps = Rational::new(BigInt::one(), pow2(u64::from(wp.bits()) + 4));
    let mut power = CertifiedInterval::exact(z.clone());
    let mut sum = CertifiedInterval::zero();
    let mut i: u64 = 0;
    loop {
        let mut term = power.mul_rational(&Rational::new(BigInt::one(), BigInt::from(2 * i + 1)), wp);
        if i % 2 == 1 {
            term = term.neg();
        }
        sum = sum.add(&term, wp);
        power = power.mul_rational(&z2, wp);
        i += 1;
        if power.mag() < eps {
            break;
        }
    }
    let tail = power.mag() / Rational::from_integer(BigInt::from(2 * i + 1));
    sum.inflate(&tail, wp)
}

type ConstantCache = Mutex<HashMap<(u8, u32), CertifiedInterval>>;

fn cached(kind: u8, prec: Precision, compute: impl FnOnce(Precision) -> CertifiedInterval) -> CertifiedInterval {
    static CACHE: OnceLock<ConstantCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (kind, prec.bits());
    if let Some(v) = cache.lock().unwrap().get(&key) {
        return v.clone();
    }
    let v = compute(prec);
    cache.lock().unwrap().insert(key, v.clone());
    v
}

/// `ln 2 = 2 atanh(1/3)`.
pub fn ln2(prec: Precision) -> CertifiedInterval {
    cached(0, prec, |p| {
        let wp = p.with_extra(8);
        let v = atanh_small(&rational::ratio(1, 3), wp).mul_rational(&rational::int(2), wp);
        CertifiedInterval::rounded(v.lo, v.hi, p)
    })
}

/// `pi = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi(prec: Precision) -> CertifiedInterval {
    cached(1, prec, |p| {
        let wp = p.with_extra(8);
        let a = atan_small(&rational::ratio(1, 5), wp).mul_rational(&rational::int(16), wp);
        let b = atan_small(&rational::ratio(1, 239), wp).mul_rational(&rational::int(4), wp);
        let v = a.sub(&b, wp);
        CertifiedInterval::rounded(v.lo, v.hi, p)
    })
}

/// `ln(r)` for exact positive rational `r`.
pub fn ln_rational(r: &Rational, prec: Precision) -> Result<CertifiedInterval> {
    if !r.is_positive() {
        return Err(Error::Domain(format!("ln of non-positive value {}", rational::show(r))));
    }
    if r.is_one() {
        return Ok(CertifiedInterval::zero());
    }
    let mut k = r.numer().bits() as i64 - r.denom().bits() as i64;
    let scale = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(pow2(k as u64))
        } else {
            Rational::new(BigInt::one(), pow2((-k) as u64))
        }
    };
    let mut m = r / scale(k);
    while m < Rational::one() {
        m *= rational::int(2);
        k -= 1;
    }
    while m >= rational::int(2) {
        m /= rational::int(2);
        k += 1;
    }
    let wp = prec.with_extra(12 + (64 - k.unsigned_abs().leading_zeros()));
    let z = (&m - Rational::one()) / (&m + Rational::one());
    let mut value = atanh_small(&z, wp).mul_rational(&rational::int(2), wp);
    if k != 0 {
        value = value.add(&ln2(wp).mul_rational(&rational::int(k), wp), wp);
    }
    Ok(CertifiedInterval::rounded(value.lo, value.hi, prec))
}

/// `base^exponent` for positive exact `base` and rational `exponent`.
pub fn pow_rational(base: &Rational, exponent: &Rational, prec: Precision) -> Result<CertifiedInterval> {
    if !base.is_positive() {
        return Err(Error::Domain("power of a non-positive base".into()));
    }
    if exponent.is_integer() {
        let e = exponent.to_integer();
        if e.bits() <= 32 {
            let n: i64 = i64::try_from(e).unwrap();
            let v = num_traits::pow(base.clone(), n.unsigned_abs() as usize);
            let v = if n < 0 { v.recip() } else { v };
            return Ok(CertifiedInterval::exact(v));
        }
    }
    let wp = prec.with_extra(16);
    let l = ln_rational(base, wp)?.mul_rational(exponent, wp);
    Ok(l.exp(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, parse_rational, ratio};

    // 50 decimals; independent of the series used in this module.
    const PI_50: &str = "3.14159265358979323846264338327950288419716939937510";
    const E_50: &str = "2.71828182845904523536028747135266249775724709369995";
    const LN2_40: &str = "0.6931471805599453094172321214581765680755";

    fn near(x: &CertifiedInterval, digits: &str, slack: i64) -> bool {
        let v = parse_rational(digits).unwrap();
        let tol = Rational::new(BigInt::from(slack), BigInt::from(10u32).pow(38));
        x.lo() - &tol <= v && v <= x.hi() + &tol
    }

    #[test]
    fn rounding_is_directional() {
        let x = ratio(1, 3);
        let lo = round_down(&x, 30);
        let hi = round_up(&x, 30);
        assert!(lo < x && x < hi);
        assert!(lo.denom().is_power_of_two());
        let y = ratio(-1, 3);
        assert!(round_down(&y, 30) < y && y < round_up(&y, 30));
        assert_eq!(round_down(&int(8), 30), int(8));
    }

    #[test]
    fn constants_enclose_known_digits() {
        let p = Precision::default();
        assert!(near(&pi(p), PI_50, 1));
        assert!(near(&exp_rational(&int(1), p), E_50, 1));
        assert!(near(&ln2(p), LN2_40, 1));
        assert!(pi(p).relative_width().unwrap() < 1e-30);
    }

    #[test]
    fn exp_ln_roundtrip_encloses() {
        let p = Precision::default();
        for s in ["1/3", "-7/2", "50", "-50", "1e-9", "123/7"] {
            let r = parse_rational(s).unwrap();
            let e = exp_rational(&r, p);
            let back = e.ln(p).unwrap();
            assert!(back.contains(&r), "{s}: {back}");
            assert!(back.width() < ratio(1, 1_000_000_000) * ratio(1, 1_000_000_000));
        }
    }

    #[test]
    fn ln_of_products_adds() {
        let p = Precision::default();
        let a = ln_rational(&ratio(3, 7), p).unwrap();
        let b = ln_rational(&int(11), p).unwrap();
        let ab = ln_rational(&ratio(33, 7), p).unwrap();
        assert!(a.add(&b, p).overlaps(&ab));
        assert!(ln_rational(&int(0), p).is_err());
    }

    #[test]
    fn pow_handles_integer_and_fractional_exponents() {
        let p = Precision::default();
        assert_eq!(pow_rational(&ratio(3, 2), &int(-2), p).unwrap(), CertifiedInterval::exact(ratio(4, 9)));
        let r = pow_rational(&int(4), &ratio(1, 2), p).unwrap();
        assert!(r.contains(&int(2)));
    }

    #[test]
    fn interval_ops_enclose() {
        let p = Precision::from_bits(40);
        let a = CertifiedInterval::enclose(&ratio(1, 3), p);
        let b = CertifiedInterval::enclose(&ratio(-2, 7), p);
        assert!(a.mul(&b, p).contains(&ratio(-2, 21)));
        assert!(a.sub(&b, p).contains(&ratio(13, 21)));
        assert!(a.div(&b, p).unwrap().contains(&ratio(-7, 6)));
        assert_eq!(b.sign(), CertifiedSign::Negative);
        assert_eq!(a.sub(&a, p).sign(), CertifiedSign::Inconclusive);
        assert!(CertifiedInterval::new(int(-1), int(1)).recip(p).is_err());
    }

    #[test]
    fn precision_from_digits() {
        assert!(Precision::from_digits(30).bits() >= 100);
        assert_eq!(Precision::default(), Precision::from_digits(DEFAULT_DIGITS));
        assert_eq!(Precision::from_bits(100).doubled().bits(), 200);
    }
}
