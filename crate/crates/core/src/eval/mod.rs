//! Certified numerical evaluation of `pFq` at rational arguments.

mod conjecture;
mod transform;

pub use conjecture::{default_conjecture_grid, explore_conjecture, Branch, ConjecturePoint, ConjectureReport, StepKind};
pub use transform::{check_euler_pfaff, check_kummer_transform, TransformReport, TransformSide};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{self, CertifiedInterval, Precision};
use crate::rational::{self, Rational};
use crate::series::{Family, HypSeriesSpec};

pub const DEFAULT_TERM_CAP: usize = 10_000;

/// Default relative width asked of an evaluation.
pub const DEFAULT_TOL: f64 = 1e-25;

/// Upper and lower parameter lists of `pFq`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PFQSpec {
    #[serde(with = "rational::serde_str::vec")]
    pub upper: Vec<Rational>,
    #[serde(with = "rational::serde_str::vec")]
    pub lower: Vec<Rational>,
}

impl PFQSpec {
    pub fn new(upper: Vec<Rational>, lower: Vec<Rational>) -> Self {
        PFQSpec { upper, lower }
    }

    /// `₁F₁(a; c; ·)`
    pub fn kummer(a: Rational, c: Rational) -> Self {
        Self::new(vec![a], vec![c])
    }

    /// `₂F₁(a, b; c; ·)`
    pub fn gauss(a: Rational, b: Rational, c: Rational) -> Self {
        Self::new(vec![a, b], vec![c])
    }

    /// Number of terms when some upper parameter is `0, -1, -2, ...`.
    pub fn terminating_length(&self) -> Option<usize> {
        self.upper
            .iter()
            .filter(|u| rational::is_nonpositive_integer(u))
            .filter_map(|u| rational::as_nonneg_integer(&-u.clone()))
            .min()
            .map(|m| m + 1)
    }

    pub fn validate(&self, x: &Rational) -> Result<()> {
        if let Some(l) = self.lower.iter().find(|l| rational::is_nonpositive_integer(l)) {
            return Err(Error::Pole(format!("lower parameter {} is a non-positive integer", rational::show(l))));
        }
        if self.terminating_length().is_some() {
            return Ok(());
        }
        let (p, q) = (self.upper.len(), self.lower.len());
        if p > q + 1 {
            return Err(Error::Divergent(format!("{p}F{q} has zero radius of convergence")));
        }
        if p == q + 1 && x.abs() >= Rational::one() {
            return Err(Error::Divergent(format!("{p}F{q} needs |x| < 1, got x = {}", rational::show(x))));
        }
        Ok(())
    }

    /// Exact ratio `t_{n+1} / t_n` of consecutive terms at `x`.
    fn term_ratio(&self, n: usize, x: &Rational) -> Rational {
        let nn = Rational::from_integer(BigInt::from(n));
        let mut r = x.clone();
        for u in &self.upper {
            r *= u + &nn;
        }
        for l in &self.lower {
            r /= l + &nn;
        }
        r / (nn + Rational::one())
    }

    /// Bound `r` with `|t_{k+1}/t_k| <= r` for every `k >= n`, or `None` if
    /// some parameter is still negative-shifted at `n`.
    fn tail_ratio_bound(&self, n: usize, x: &Rational) -> Option<Rational> {
        let nn = Rational::from_integer(BigInt::from(n));
        let mut upper: Vec<Rational> = self.upper.iter().map(|u| u + &nn).collect();
        let mut lower: Vec<Rational> = self.lower.iter().map(|l| l + &nn).collect();
        lower.push(Rational::one() + &nn);
        if upper.iter().chain(&lower).any(|v| !v.is_positive()) {
            return None;
        }
        if upper.len() > lower.len() {
            return None;
        }
        upper.sort();
        lower.sort();
        let mut r = x.abs();
        let extra = lower.len() - upper.len();
        // the smallest lowers stay unpaired; they give the weakest decay bound
        // so pairing the largest ones with uppers keeps the product honest
        for l in &lower[..extra] {
            r /= l;
        }
        for (u, l) in upper.iter().zip(&lower[extra..]) {
            if u > l {
                r *= u / l;
            }
        }
        Some(r)
    }
}

/// Certified value of a series evaluation.
#[derive(Debug, Clone, Serialize)]
pub struct EvalResult {
    pub value: CertifiedInterval,
    pub terms_used: usize,
    /// Rigorous bound on the discarded tail (0 for terminating sums).
    pub truncation_bound: f64,
    /// False when the term cap was hit before the tail bound applied.
    pub converged: bool,
    /// True when the relative width target was met.
    pub within_tol: bool,
    pub precision_bits: u32,
}

impl EvalResult {
    pub fn lo(&self) -> f64 {
        self.value.lo_f64()
    }

    pub fn hi(&self) -> f64 {
        self.value.hi_f64()
    }
}

/// Evaluation knobs shared by every numeric routine.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalOptions {
    pub prec: Precision,
    pub tol: f64,
    pub term_cap: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { prec: Precision::default(), tol: DEFAULT_TOL, term_cap: DEFAULT_TERM_CAP }
    }
}

impl EvalOptions {
    pub fn with_prec(prec: Precision) -> Self {
        EvalOptions { prec, ..Default::default() }
    }

    /// Twice the precision and twice the term cap.
    pub fn doubled(self) -> Self {
        EvalOptions { prec: self.prec.doubled(), tol: self.tol, term_cap: self.term_cap * 2 }
    }
}

/// Sums the series term by term at working precision `prec`, stopping once
/// the geometric tail bound drops below the precision-scaled target.
pub fn sum_direct(spec: &PFQSpec, x: &Rational, opts: EvalOptions) -> Result<EvalResult> {
    spec.validate(x)?;
    if x.is_zero() {
        return Ok(exact_result(Rational::one(), 1, opts.prec));
    }
    let cancellation = if x.is_negative() && spec.upper.len() <= spec.lower.len() {
        (rational::to_f64(&x.abs()) * std::f64::consts::LOG2_E).ceil().min(20_000.0) as u32
    } else {
        0
    };
    let wp = opts.prec.with_extra(24 + cancellation);
    let stop = Rational::new(BigInt::one(), BigInt::one() << (opts.prec.bits() as usize + 8));
    let cap = opts.term_cap.max(1);

    let mut term = CertifiedInterval::one();
    let mut sum = CertifiedInterval::one();
    let mut n = 0usize;
    let mut tail = None;
    while n < cap {
        let ratio = spec.term_ratio(n, x);
        n += 1;
        if ratio.is_zero() {
            tail = Some(Rational::zero());
            break;
        }
        term = term.mul_rational(&ratio, wp);
        sum = sum.add(&term, wp);
        if let Some(r) = spec.tail_ratio_bound(n, x) {
            if r < Rational::one() {
                let bound = term.mag() * &r / (Rational::one() - &r);
                let scale = sum.mig().max(term.mag());
                if bound <= &scale * &stop {
                    tail = Some(bound);
                    break;
                }
            }
        }
    }
    let converged = tail.is_some();
    let tail = match tail {
        Some(t) => t,
        None => match spec.tail_ratio_bound(n, x).filter(|r| *r < Rational::one()) {
            Some(r) => term.mag() * &r / (Rational::one() - &r),
            None => {
                return Ok(EvalResult {
                    value: sum.inflate(&term.mag(), opts.prec),
                    terms_used: n + 1,
                    truncation_bound: f64::INFINITY,
                    converged: false,
                    within_tol: false,
                    precision_bits: opts.prec.bits(),
                })
            }
        },
    };
    let value = sum.inflate(&tail, opts.prec);
    let within_tol = value.relative_width().is_some_and(|w| w <= opts.tol);
    Ok(EvalResult {
        value,
        terms_used: n + 1,
        truncation_bound: rational::to_f64(&tail),
        converged,
        within_tol,
        precision_bits: opts.prec.bits(),
    })
}

fn exact_result(v: Rational, terms: usize, prec: Precision) -> EvalResult {
    EvalResult {
        value: CertifiedInterval::exact(v),
        terms_used: terms,
        truncation_bound: 0.0,
        converged: true,
        within_tol: true,
        precision_bits: prec.bits(),
    }
}

/// Certified `pFq(upper; lower; x)`.
///
/// `₁F₁` at negative `x` is routed through `e^x ₁F₁(c-a; c; -x)` when
/// `c - a >= 0`. If the first attempt misses the width target, it is
/// repeated once at doubled precision and term cap.
pub fn eval_pfq(spec: &PFQSpec, x: &Rational, opts: EvalOptions) -> Result<EvalResult> {
    let first = eval_routed(spec, x, opts)?;
    if first.within_tol && first.converged {
        return Ok(first);
    }
    eval_routed(spec, x, opts.doubled())
}

fn eval_routed(spec: &PFQSpec, x: &Rational, opts: EvalOptions) -> Result<EvalResult> {
    if spec.upper.len() == 1 && spec.lower.len() == 1 && x.is_negative() {
        let (a, c) = (&spec.upper[0], &spec.lower[0]);
        let shifted = c - a;
        if !shifted.is_negative() && !rational::is_nonpositive_integer(c) {
            let mirrored = sum_direct(&PFQSpec::kummer(shifted, c.clone()), &-x.clone(), opts)?;
            let wp = opts.prec.with_extra(8);
            let e = interval::exp_rational(x, wp);
            let value = mirrored.value.mul(&e, opts.prec);
            let within_tol = value.relative_width().is_some_and(|w| w <= opts.tol);
            return Ok(EvalResult { value, within_tol, ..mirrored });
        }
    }
    sum_direct(spec, x, opts)
}

/// The `pFq` whose value at `x` equals the series of `spec` with shifted
/// parameter `a` (the `Γ(a)` prefactor of the gamma family excluded).
pub fn family_pfq(spec: &HypSeriesSpec, a: &Rational) -> PFQSpec {
    let w = &spec.weights;
    let mut upper = w.upper.clone();
    let mut lower = w.lower.clone();
    let one = Rational::one();
    match spec.family {
        Family::UpperFactor => {
            upper.insert(0, a.clone());
            if w.divide_factorial {
                lower.push(one);
            }
        }
        Family::GammaFactor => {
            upper.insert(0, a.clone());
            if !w.divide_factorial {
                upper.push(one);
            }
        }
        Family::LowerFactor => {
            lower.insert(0, a.clone());
            if !w.divide_factorial {
                upper.push(one);
            }
        }
    }
    PFQSpec::new(upper, lower)
}

/// Certified value of the family series with shifted parameter `a` at `x`.
pub fn eval_family(spec: &HypSeriesSpec, a: &Rational, x: &Rational, opts: EvalOptions) -> Result<EvalResult> {
    eval_pfq(&family_pfq(spec, a), x, opts)
}
