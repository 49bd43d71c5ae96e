//! Certified `ln Γ` and gamma-function ratios for rational arguments.
//!
//! `ln Γ(x)` is evaluated by shifting `x` upward past a threshold and
//! summing the Stirling series with Bernoulli corrections. For real
//! arguments the Stirling remainder is bounded by the first omitted term,
//! and that bound is folded into the returned interval.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{self, CertifiedInterval, Precision};
use crate::rational::{self, pochhammer, Rational};

/// Exact Bernoulli numbers `B_0..=B_n` (with `B_1 = +1/2`, unused here).
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    let mut guard = cache.lock().unwrap();
    if guard.len() <= n {
        // Akiyama–Tanigawa
        let mut out = Vec::with_capacity(n + 1);
        let mut a: Vec<Rational> = Vec::with_capacity(n + 1);
        for m in 0..=n {
            a.push(Rational::new(BigInt::one(), BigInt::from(m + 1)));
            for j in (1..=m).rev() {
                let d = &a[j - 1] - &a[j];
                a[j - 1] = d * Rational::from_integer(BigInt::from(j));
            }
            out.push(a[0].clone());
        }
        *guard = out;
    }
    guard[..=n].to_vec()
}

fn shift_threshold(wp: Precision) -> i64 {
    // Stirling error at y is about exp(-2 pi y); 0.12 > ln(2)/(2 pi).
    (f64::from(wp.bits()) * 0.12).ceil() as i64 + 4
}

/// Certified enclosure of `ln Γ(x)` for rational `x > 0`.
pub fn log_gamma(x: &Rational, prec: Precision) -> Result<CertifiedInterval> {
    if !x.is_positive() {
        return Err(Error::Domain(format!("log_gamma needs x > 0, got {}", rational::show(x))));
    }
    if x.is_one() || *x == rational::int(2) {
        return Ok(CertifiedInterval::zero());
    }
    let wp = prec.with_extra(24);
    let threshold = shift_threshold(wp).max(10);
    let floor_x = rational::floor(x);
    let shift: usize = if floor_x >= BigInt::from(threshold) {
        0
    } else {
        (threshold - i64::try_from(floor_x).unwrap_or(0)).max(0) as usize
    };
    let y = x + Rational::from_integer(BigInt::from(shift));
    let shifted_product = pochhammer(x, shift);

    let half = rational::ratio(1, 2);
    let ln_y = interval::ln_rational(&y, wp)?;
    let two_pi = interval::pi(wp).mul_rational(&rational::int(2), wp);
    let half_ln_two_pi = two_pi.ln(wp)?.mul_rational(&half, wp);
    let mut value = ln_y
        .mul_rational(&(&y - &half), wp)
        .add_rational(&(-&y), wp)
        .add(&half_ln_two_pi, wp);

    let eps = Rational::new(BigInt::one(), BigInt::one() << (wp.bits() as usize + 4));
    let max_terms = 80usize;
    let bern = bernoulli_numbers(2 * max_terms + 2);
    let y_sq = &y * &y;
    let mut y_pow = y.clone(); // y^(2k-1)
    let mut correction = Rational::zero();
    let mut remainder = Rational::zero();
    for k in 1..=max_terms {
        let two_k = 2 * k as i64;
        correction += &bern[2 * k] / (Rational::from_integer(BigInt::from(two_k * (two_k - 1))) * &y_pow);
        y_pow *= &y_sq;
        let next = bern[2 * k + 2].abs()
            / (Rational::from_integer(BigInt::from((two_k + 2) * (two_k + 1))) * &y_pow);
        remainder = next;
        if remainder < eps {
            break;
        }
    }
    value = value.add(&CertifiedInterval::enclose(&correction, wp), wp).inflate(&remainder, wp);
    if shift > 0 {
        value = value.sub(&interval::ln_rational(&shifted_product, wp)?, wp);
    }
    Ok(round_to(value, prec))
}

fn round_to(v: CertifiedInterval, prec: Precision) -> CertifiedInterval {
    CertifiedInterval::new(
        interval::round_down(v.lo(), prec.bits()),
        interval::round_up(v.hi(), prec.bits()),
    )
}

/// Certified enclosure of `Γ(x + δ) / Γ(x)`. Exact when `δ` is a
/// non-negative integer.
pub fn gamma_ratio(x: &Rational, delta: &Rational, prec: Precision) -> Result<CertifiedInterval> {
    if !x.is_positive() {
        return Err(Error::Domain(format!("gamma_ratio needs x > 0, got {}", rational::show(x))));
    }
    if delta.is_negative() {
        return Err(Error::Domain(format!("gamma_ratio needs delta >= 0, got {}", rational::show(delta))));
    }
    if let Some(n) = rational::as_nonneg_integer(delta) {
        if n <= 100_000 {
            return Ok(CertifiedInterval::exact(pochhammer(x, n)));
        }
    }
    let wp = prec.with_extra(20);
    let upper = log_gamma(&(x + delta), wp)?;
    let lower = log_gamma(x, wp)?;
    Ok(round_to(upper.sub(&lower, wp).exp(wp), prec))
}

/// Certified `Γ(a+δ)Γ(b) / (Γ(b+δ)Γ(a))`, the lower bound in the two-sided
/// product-ratio estimates.
pub fn product_ratio_bound(a: &Rational, b: &Rational, delta: &Rational, prec: Precision) -> Result<CertifiedInterval> {
    let wp = prec.with_extra(8);
    let num = gamma_ratio(a, delta, wp)?;
    let den = gamma_ratio(b, delta, wp)?;
    if num.is_exact() && den.is_exact() {
        return Ok(CertifiedInterval::exact(num.lo() / den.lo()));
    }
    let q = num.div(&den, wp)?;
    Ok(round_to(q, prec))
}
