use std::collections::HashMap;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{list_param, params, Params, TheoremId, Verdict};
use crate::error::{Error, Result};
use crate::eval::{eval_pfq, EvalOptions, PFQSpec};
use crate::interval::CertifiedInterval;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Shape {
    LogConcave,
    LogConvex,
}

/// One certified comparison `lhs ? rhs`.
#[derive(Debug, Clone, Serialize)]
pub struct PointCheck {
    pub label: String,
    pub relation: &'static str,
    pub lhs: Option<CertifiedInterval>,
    pub rhs: Option<CertifiedInterval>,
    pub outcome: Verdict,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PointwiseReport {
    pub theorem: TheoremId,
    pub params: Params,
    pub checks: Vec<PointCheck>,
    pub verdict: Verdict,
}

impl PointwiseReport {
    pub fn first_violation(&self) -> Option<usize> {
        self.checks.iter().position(|c| c.outcome == Verdict::Violated)
    }
}

/// `lhs < rhs` certified.
fn compare_lt(label: String, lhs: Result<CertifiedInterval>, rhs: Result<CertifiedInterval>) -> PointCheck {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => {
            let outcome = if l.certainly_lt(&r) {
                Verdict::Verified
            } else if l.lo() >= r.hi() && !(l.is_exact() && r.is_exact() && l == r) {
                Verdict::Violated
            } else {
                Verdict::Inconclusive
            };
            PointCheck { label, relation: "<", lhs: Some(l), rhs: Some(r), outcome, error: None }
        }
        (l, r) => {
            let error = l.err().or(r.err()).map(|e| e.to_string());
            PointCheck { label, relation: "<", lhs: None, rhs: None, outcome: Verdict::Inconclusive, error }
        }
    }
}

struct Evaluator<F: Fn(&Rational) -> Result<CertifiedInterval>> {
    f: F,
    cache: HashMap<Rational, std::result::Result<CertifiedInterval, String>>,
}

impl<F: Fn(&Rational) -> Result<CertifiedInterval>> Evaluator<F> {
    fn get(&mut self, p: &Rational) -> Result<CertifiedInterval> {
        let f = &self.f;
        self.cache
            .entry(p.clone())
            .or_insert_with(|| f(p).map_err(|e| e.to_string()))
            .clone()
            .map_err(Error::Domain)
    }
}

/// Ratio steps `F(p+δ)/F(p)` along `ratio_points` and Turán-type products
/// at `turan_points`, checked against the claimed shape.
#[allow(clippy::too_many_arguments)]
fn parameter_shape(
    theorem: TheoremId,
    params: Params,
    shape: Shape,
    delta: &Rational,
    ratio_points: &[Rational],
    turan_points: &[Rational],
    eval: impl Fn(&Rational) -> Result<CertifiedInterval>,
    opts: EvalOptions,
) -> Result<PointwiseReport> {
    if ratio_points.len() < 2 && turan_points.is_empty() {
        return Err(Error::Domain("no grid point lies in the claimed parameter range".into()));
    }
    let prec = opts.prec;
    let mut ev = Evaluator { f: eval, cache: HashMap::new() };
    let mut ratio = |p: &Rational| -> Result<CertifiedInterval> {
        let top = ev.get(&(p + delta))?;
        let bottom = ev.get(p)?;
        top.div(&bottom, prec)
    };
    let mut checks = Vec::new();
    let mut sorted = ratio_points.to_vec();
    sorted.sort();
    sorted.dedup();
    let ratios: Vec<Result<CertifiedInterval>> = sorted.iter().map(&mut ratio).collect();
    for i in 1..sorted.len() {
        let label = format!("ratio at {} vs {}", rational::show(&sorted[i]), rational::show(&sorted[i - 1]));
        let (prev, next) = (ratios[i - 1].clone(), ratios[i].clone());
        checks.push(match shape {
            Shape::LogConcave => compare_lt(label, next, prev),
            Shape::LogConvex => compare_lt(label, prev, next),
        });
    }
    for p in turan_points {
        let mid = ev.get(&(p + delta)).map(|m| m.mul(&m, prec));
        let outer = ev.get(p).and_then(|lo| ev.get(&(p + delta + delta)).map(|hi| lo.mul(&hi, prec)));
        let label = format!("turan at {}", rational::show(p));
        checks.push(match shape {
            Shape::LogConcave => compare_lt(label, outer, mid),
            Shape::LogConvex => compare_lt(label, mid, outer),
        });
    }
    let verdict = checks.iter().fold(Verdict::Verified, |v, c| v.and(c.outcome));
    Ok(PointwiseReport { theorem, params, checks, verdict })
}

fn value(spec: PFQSpec, x: &Rational, opts: EvalOptions) -> Result<CertifiedInterval> {
    eval_pfq(&spec, x, opts).map(|r| r.value)
}

fn nonzero_x(x: &Rational) -> Result<()> {
    if x.is_zero() {
        Err(Error::Domain("x must be non-zero".into()))
    } else {
        Ok(())
    }
}

/// `a ↦ ₁F₁(a; c; x)`: ratio decreasing and Turán inequality, on `a >= 0`
/// for `x > 0` and on `a <= c - δ` (ratio) / `a + 2δ <= c` (Turán) for `x < 0`.
pub fn verify_kummer_log_concave(c: &Rational, delta: &Rational, x: &Rational, a_grid: &[Rational], opts: EvalOptions) -> Result<PointwiseReport> {
    nonzero_x(x)?;
    if !c.is_positive() || !delta.is_positive() {
        return Err(Error::Domain("need c > 0 and delta > 0".into()));
    }
    let (ratio_pts, turan_pts): (Vec<Rational>, Vec<Rational>) = if x.is_positive() {
        let pts: Vec<Rational> = a_grid.iter().filter(|a| !a.is_negative()).cloned().collect();
        (pts.clone(), pts)
    } else {
        (
            a_grid.iter().filter(|a| *a + delta <= *c).cloned().collect(),
            a_grid.iter().filter(|a| *a + delta + delta <= *c).cloned().collect(),
        )
    };
    let p = {
        let mut p = params([("c", c), ("delta", delta), ("x", x)]);
        p.insert("a_grid".into(), list_param(a_grid));
        p
    };
    let (c, x) = (c.clone(), x.clone());
    parameter_shape(
        TheoremId::KummerLogConcave,
        p,
        Shape::LogConcave,
        delta,
        &ratio_pts,
        &turan_pts,
        move |a| value(PFQSpec::kummer(a.clone(), c.clone()), &x, opts),
        opts,
    )
}

/// `c ↦ ₁F₁(a; c; x)` log-convex on `c > 0` when `a` and `x` share a sign.
pub fn verify_kummer_lower_log_convex(a: &Rational, delta: &Rational, x: &Rational, c_grid: &[Rational], opts: EvalOptions) -> Result<PointwiseReport> {
    nonzero_x(x)?;
    if a.is_zero() || a.is_positive() != x.is_positive() || !delta.is_positive() {
        return Err(Error::Domain("need a and x non-zero of equal sign, delta > 0".into()));
    }
    let pts: Vec<Rational> = c_grid.iter().filter(|c| c.is_positive()).cloned().collect();
    let mut p = params([("a", a), ("delta", delta), ("x", x)]);
    p.insert("c_grid".into(), list_param(c_grid));
    let (a, x) = (a.clone(), x.clone());
    parameter_shape(
        TheoremId::KummerLowerLogConvex,
        p,
        Shape::LogConvex,
        delta,
        &pts,
        &pts,
        move |c| value(PFQSpec::kummer(a.clone(), c.clone()), &x, opts),
        opts,
    )
}

/// `μ ↦ ₁F₁(a+μ; c+μ; x)` log-convex on `μ >= 0` for `a >= c > 0, x > 0`
/// or `a <= c, c > 0, x <= 0`.
pub fn verify_kummer_diagonal_log_convex(
    a: &Rational,
    c: &Rational,
    delta: &Rational,
    x: &Rational,
    mu_grid: &[Rational],
    opts: EvalOptions,
) -> Result<PointwiseReport> {
    let ok = c.is_positive() && delta.is_positive() && if x.is_positive() { a >= c } else { a <= c };
    if !ok {
        return Err(Error::Domain("need a >= c > 0 for x > 0, or a <= c with c > 0 for x <= 0".into()));
    }
    let pts: Vec<Rational> = mu_grid.iter().filter(|m| !m.is_negative()).cloned().collect();
    let mut p = params([("a", a), ("c", c), ("delta", delta), ("x", x)]);
    p.insert("mu_grid".into(), list_param(mu_grid));
    let (a, c, x) = (a.clone(), c.clone(), x.clone());
    parameter_shape(
        TheoremId::KummerDiagonalLogConvex,
        p,
        Shape::LogConvex,
        delta,
        &pts,
        &pts,
        move |mu| value(PFQSpec::kummer(&a + mu, &c + mu), &x, opts),
        opts,
    )
}

fn gauss_range(x: &Rational) -> Result<()> {
    nonzero_x(x)?;
    if x.abs() >= Rational::from_integer(1.into()) {
        return Err(Error::Domain("need |x| < 1".into()));
    }
    Ok(())
}

/// `a ↦ ₂F₁(a, b; c; x)` log-concave: on `a >= 0` when `0 < x < 1, b > c > 0`
/// or `x < 0, c > 0 > b`; on `a <= c` when `0 < x < 1, c > 0 > b` or
/// `x < 0, b > c > 0`.
pub fn verify_gauss_log_concave(b: &Rational, c: &Rational, delta: &Rational, x: &Rational, a_grid: &[Rational], opts: EvalOptions) -> Result<PointwiseReport> {
    gauss_range(x)?;
    if !c.is_positive() || !delta.is_positive() {
        return Err(Error::Domain("need c > 0 and delta > 0".into()));
    }
    let b_above = b > c;
    let b_negative = b.is_negative();
    let (ratio_pts, turan_pts): (Vec<Rational>, Vec<Rational>) =
        if (x.is_positive() && b_above) || (x.is_negative() && b_negative) {
            let pts: Vec<Rational> = a_grid.iter().filter(|a| !a.is_negative()).cloned().collect();
            (pts.clone(), pts)
        } else if (x.is_positive() && b_negative) || (x.is_negative() && b_above) {
            (
                a_grid.iter().filter(|a| *a + delta <= *c).cloned().collect(),
                a_grid.iter().filter(|a| *a + delta + delta <= *c).cloned().collect(),
            )
        } else {
            return Err(Error::Domain("parameters outside the log-concavity ranges".into()));
        };
    let mut p = params([("b", b), ("c", c), ("delta", delta), ("x", x)]);
    p.insert("a_grid".into(), list_param(a_grid));
    let (b, c, x) = (b.clone(), c.clone(), x.clone());
    parameter_shape(
        TheoremId::GaussLogConcave,
        p,
        Shape::LogConcave,
        delta,
        &ratio_pts,
        &turan_pts,
        move |a| value(PFQSpec::gauss(a.clone(), b.clone(), c.clone()), &x, opts),
        opts,
    )
}

/// `a ↦ ₂F₁(a, b; c; x)` log-convex on the whole line for `c > b > 0`.
pub fn verify_gauss_log_convex(b: &Rational, c: &Rational, delta: &Rational, x: &Rational, a_grid: &[Rational], opts: EvalOptions) -> Result<PointwiseReport> {
    gauss_range(x)?;
    if !(b.is_positive() && c > b && delta.is_positive()) {
        return Err(Error::Domain("need c > b > 0 and delta > 0".into()));
    }
    let mut p = params([("b", b), ("c", c), ("delta", delta), ("x", x)]);
    p.insert("a_grid".into(), list_param(a_grid));
    let (b, c, x) = (b.clone(), c.clone(), x.clone());
    parameter_shape(
        TheoremId::GaussLogConvex,
        p,
        Shape::LogConvex,
        delta,
        a_grid,
        a_grid,
        move |a| value(PFQSpec::gauss(a.clone(), b.clone(), c.clone()), &x, opts),
        opts,
    )
}

/// `c ↦ ₂F₁(a, b; c; x)` log-convex on `c > 0` if `a, b > 0, 0 < x < 1`,
/// or `x < 0` with one of `a, b` negative and the other positive.
pub fn verify_gauss_lower_log_convex(a: &Rational, b: &Rational, delta: &Rational, x: &Rational, c_grid: &[Rational], opts: EvalOptions) -> Result<PointwiseReport> {
    gauss_range(x)?;
    let ok = delta.is_positive()
        && if x.is_positive() {
            a.is_positive() && b.is_positive()
        } else {
            (a.is_negative() && b.is_positive()) || (b.is_negative() && a.is_positive())
        };
    if !ok {
        return Err(Error::Domain("parameters outside the log-convexity ranges".into()));
    }
    let pts: Vec<Rational> = c_grid.iter().filter(|c| c.is_positive()).cloned().collect();
    let mut p = params([("a", a), ("b", b), ("delta", delta), ("x", x)]);
    p.insert("c_grid".into(), list_param(c_grid));
    let (a, b, x) = (a.clone(), b.clone(), x.clone());
    parameter_shape(
        TheoremId::GaussLowerLogConvex,
        p,
        Shape::LogConvex,
        delta,
        &pts,
        &pts,
        move |c| value(PFQSpec::gauss(a.clone(), b.clone(), c.clone()), &x, opts),
        opts,
    )
}
