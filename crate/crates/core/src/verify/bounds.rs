use num_traits::{One, Signed};
use serde::Serialize;

use super::{list_param, params, Params, TheoremId, Verdict};
use crate::error::{Error, Result};
use crate::eval::{eval_family, EvalOptions};
use crate::gamma::product_ratio_bound;
use crate::interval::CertifiedInterval;
use crate::rational::{self, Rational};
use crate::series::{Family, HypSeriesSpec, RatioTrend};

/// Relative distance to the lower bound accepted as "close" at the
/// largest grid point.
pub const SHARPNESS_TOL: f64 = 0.05;

#[derive(Debug, Clone, Serialize)]
pub struct BoundPoint {
    pub x: String,
    pub ratio: Option<CertifiedInterval>,
    pub within_bounds: Verdict,
    pub error: Option<String>,
}

/// `bound < f(b+δ)f(a) / (f(a+δ)f(b)) < 1` on a grid of `x > 0`.
#[derive(Debug, Clone, Serialize)]
pub struct TwoSidedBoundReport {
    pub theorem: TheoremId,
    pub params: Params,
    pub lower_bound: CertifiedInterval,
    pub points: Vec<BoundPoint>,
    /// `1 - ratio` at the smallest grid point.
    pub gap_to_one: Option<f64>,
    /// `(ratio - bound) / bound` at the largest grid point.
    pub gap_to_lower: Option<f64>,
    pub approaches_lower_at_large_x: bool,
    pub verdict: Verdict,
}

fn middle_ratio(
    spec: &HypSeriesSpec,
    a: &Rational,
    b: &Rational,
    delta: &Rational,
    x: &Rational,
    opts: EvalOptions,
) -> Result<CertifiedInterval> {
    let wp = opts.prec.with_extra(8);
    let inner = EvalOptions { prec: wp, ..opts };
    let f = |s: Rational| eval_family(spec, &s, x, inner).map(|r| r.value);
    let num = f(b + delta)?.mul(&f(a.clone())?, wp);
    let den = f(a + delta)?.mul(&f(b.clone())?, wp);
    num.div(&den, opts.prec)
}

fn two_sided(
    theorem: TheoremId,
    spec: &HypSeriesSpec,
    a: &Rational,
    b: &Rational,
    delta: &Rational,
    grid: &[Rational],
    opts: EvalOptions,
) -> Result<TwoSidedBoundReport> {
    if spec.family != Family::UpperFactor {
        return Err(Error::Config("two-sided bounds need an upper-factor series".into()));
    }
    if !(a.is_positive() && a < b && delta.is_positive()) {
        return Err(Error::Domain("need b > a > 0 and delta > 0".into()));
    }
    if grid.is_empty() || grid.iter().any(|x| !x.is_positive()) {
        return Err(Error::Config("x grid must be non-empty and positive".into()));
    }
    let trend = spec.weights.ratio_trend(spec.order.max(2))?;
    let lower_bound = product_ratio_bound(a, b, delta, opts.prec)?;
    let one = CertifiedInterval::one();
    let mut xs = grid.to_vec();
    xs.sort();
    let points: Vec<BoundPoint> = xs
        .iter()
        .map(|x| match middle_ratio(spec, a, b, delta, x, opts) {
            Ok(q) => {
                let within_bounds = if q.certainly_gt(&lower_bound) && q.certainly_lt(&one) {
                    Verdict::Verified
                } else if q.hi() <= lower_bound.lo() || q.lo() >= &Rational::one() {
                    Verdict::Violated
                } else {
                    Verdict::Inconclusive
                };
                BoundPoint { x: rational::show(x), ratio: Some(q), within_bounds, error: None }
            }
            Err(e) => BoundPoint { x: rational::show(x), ratio: None, within_bounds: Verdict::Inconclusive, error: Some(e.to_string()) },
        })
        .collect();
    let gap_to_one = points.first().and_then(|p| p.ratio.as_ref()).map(|q| 1.0 - q.mid_f64());
    let bound_mid = lower_bound.mid_f64();
    let gap_to_lower = points.last().and_then(|p| p.ratio.as_ref()).map(|q| (q.mid_f64() - bound_mid) / bound_mid);
    let mut verdict = points.iter().fold(Verdict::Verified, |v, p| v.and(p.within_bounds));
    if trend != RatioTrend::Decreasing {
        verdict = verdict.and(Verdict::Inconclusive);
    }
    let mut p = params([("a", a), ("b", b), ("delta", delta)]);
    p.insert("w_upper".into(), list_param(&spec.weights.upper));
    p.insert("w_lower".into(), list_param(&spec.weights.lower));
    Ok(TwoSidedBoundReport {
        theorem,
        params: p,
        lower_bound,
        points,
        gap_to_one,
        gap_to_lower,
        approaches_lower_at_large_x: gap_to_lower.is_some_and(|g| g.abs() < SHARPNESS_TOL),
        verdict,
    })
}

/// Certified check of the two-sided product-ratio bound for a
/// decreasing-ratio upper-factor series.
pub fn verify_two_sided(
    spec: &HypSeriesSpec,
    a: &Rational,
    b: &Rational,
    delta: &Rational,
    grid: &[Rational],
    opts: EvalOptions,
) -> Result<TwoSidedBoundReport> {
    two_sided(TheoremId::TwoSidedBound, spec, a, b, delta, grid, opts)
}

/// The Turán form `b = a + δ`; for `δ = 1` the lower bound is `a/(a+1)`.
pub fn verify_turan(spec: &HypSeriesSpec, a: &Rational, delta: &Rational, grid: &[Rational], opts: EvalOptions) -> Result<TwoSidedBoundReport> {
    two_sided(TheoremId::TuranBound, spec, a, &(a + delta), delta, grid, opts)
}
