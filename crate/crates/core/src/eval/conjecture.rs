//! Numerical exploration of the monotone product-ratio conjecture for `₁F₁`.
//!
//! With `F(α) = ₁F₁(α; c; x)` the explored quantity is
//! `Q(x) = F(b+δ) F(a) / (F(a+δ) F(b))`. For `x > 0` and `0 < a < b` it is
//! expected to fall from 1 toward `Γ(a+δ)Γ(b) / (Γ(b+δ)Γ(a))`. For `x < 0`
//! and `a < b < c-δ` the Kummer transformation turns `Q(x)` into the same
//! ratio with parameters `a' = c-b-δ`, `b' = c-a-δ` at `-x`, so both
//! branches are evaluated on positive arguments and the exponential
//! factors cancel exactly. Results are evidence, never a proof.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{eval_pfq, EvalOptions, PFQSpec};
use crate::error::{Error, Result};
use crate::gamma::product_ratio_bound;
use crate::interval::CertifiedInterval;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Positive,
    Negative,
}

/// How `Q` moved between a grid point and its predecessor in `|x|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Start,
    /// Certified move in the conjectured direction.
    Consistent,
    /// Certified move against it.
    Violation,
    /// Enclosures overlap.
    Undecided,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjecturePoint {
    pub x: String,
    pub q_lo: f64,
    pub q_hi: f64,
    pub step: StepKind,
    /// `Q` certainly lies strictly between the limit value and 1.
    pub within_bounds: bool,
    #[serde(skip)]
    pub q: CertifiedInterval,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub branch: Branch,
    pub a: String,
    pub b: String,
    pub delta: String,
    pub c: String,
    /// Limit of `Q` as `|x| → ∞`.
    pub bound: CertifiedInterval,
    /// Points ordered by increasing `|x|`.
    pub points: Vec<ConjecturePoint>,
    pub violations: usize,
    pub undecided: usize,
    pub out_of_bounds: usize,
    /// `1 - Q` at the smallest `|x|`.
    pub gap_to_one: f64,
    /// `(Q - bound) / bound` at the largest `|x|`.
    pub gap_to_bound: f64,
}

impl ConjectureReport {
    pub fn undecided_fraction(&self) -> f64 {
        let steps = self.points.len().saturating_sub(1);
        if steps == 0 {
            0.0
        } else {
            self.undecided as f64 / steps as f64
        }
    }
}

/// `n` log-spaced points on `[max/5000, max]`, rounded to 6 significant
/// digits and returned as exact rationals.
pub fn default_conjecture_grid(n: usize, max: f64) -> Vec<Rational> {
    let min = max / 5000.0;
    let mut out: Vec<Rational> = (0..n)
        .map(|i| {
            let t = if n > 1 { i as f64 / (n - 1) as f64 } else { 1.0 };
            rational::from_f64_rounded(min * (max / min).powf(t), 6)
        })
        .collect();
    out.dedup();
    out
}

fn ratio_q(a: &Rational, b: &Rational, delta: &Rational, c: &Rational, y: &Rational, opts: EvalOptions) -> Result<CertifiedInterval> {
    let wp = opts.prec.with_extra(8);
    let inner = EvalOptions { prec: wp, ..opts };
    let f = |alpha: Rational| eval_pfq(&PFQSpec::kummer(alpha, c.clone()), y, inner).map(|r| r.value);
    let num = f(b + delta)?.mul(&f(a.clone())?, wp);
    let den = f(a + delta)?.mul(&f(b.clone())?, wp);
    num.div(&den, opts.prec)
}

/// Evaluates `Q` over `grid` (all positive or all negative) and classifies
/// each consecutive step.
pub fn explore_conjecture(
    a: &Rational,
    b: &Rational,
    delta: &Rational,
    c: &Rational,
    grid: &[Rational],
    opts: EvalOptions,
) -> Result<ConjectureReport> {
    if grid.is_empty() {
        return Err(Error::Config("empty x grid".into()));
    }
    let branch = if grid.iter().all(|x| x.is_positive()) {
        Branch::Positive
    } else if grid.iter().all(|x| x.is_negative()) {
        Branch::Negative
    } else {
        return Err(Error::Config("x grid must be entirely positive or entirely negative".into()));
    };
    if !delta.is_positive() || !c.is_positive() {
        return Err(Error::Domain("need delta > 0 and c > 0".into()));
    }
    let (pa, pb) = match branch {
        Branch::Positive => {
            if !(a.is_positive() && a < b) {
                return Err(Error::Domain("positive branch needs 0 < a < b".into()));
            }
            (a.clone(), b.clone())
        }
        Branch::Negative => {
            if !(a < b && *b < c - delta) {
                return Err(Error::Domain("negative branch needs a < b < c - delta".into()));
            }
            (c - b - delta, c - a - delta)
        }
    };
    let bound = product_ratio_bound(&pa, &pb, delta, opts.prec)?;

    let mut ys: Vec<Rational> = grid.iter().map(|x| x.abs()).collect();
    ys.sort();
    ys.dedup();
    let one = CertifiedInterval::one();
    let mut points: Vec<ConjecturePoint> = Vec::with_capacity(ys.len());
    for y in &ys {
        let q = ratio_q(&pa, &pb, delta, c, y, opts)?;
        let step = match points.last() {
            None => StepKind::Start,
            Some(prev) if q.certainly_lt(&prev.q) => StepKind::Consistent,
            Some(prev) if q.certainly_gt(&prev.q) => StepKind::Violation,
            Some(_) => StepKind::Undecided,
        };
        let x = match branch {
            Branch::Positive => y.clone(),
            Branch::Negative => -y.clone(),
        };
        points.push(ConjecturePoint {
            x: rational::show(&x),
            q_lo: q.lo_f64(),
            q_hi: q.hi_f64(),
            step,
            within_bounds: q.certainly_gt(&bound) && q.certainly_lt(&one),
            q,
        });
    }
    let count = |k: StepKind| points.iter().filter(|p| p.step == k).count();
    let first = &points[0].q;
    let last = &points[points.len() - 1].q;
    let bound_mid = bound.mid();
    let gap_to_bound = if bound_mid.is_zero() {
        f64::NAN
    } else {
        rational::to_f64(&((last.mid() - &bound_mid) / &bound_mid))
    };
    Ok(ConjectureReport {
        branch,
        a: rational::show(a),
        b: rational::show(b),
        delta: rational::show(delta),
        c: rational::show(c),
        violations: count(StepKind::Violation),
        undecided: count(StepKind::Undecided),
        out_of_bounds: points.iter().filter(|p| !p.within_bounds).count(),
        gap_to_one: rational::to_f64(&(Rational::one() - first.mid())),
        gap_to_bound,
        bound,
        points,
    })
}
