//! Grids of independent cases for every checkable claim, run in parallel
//! and reported in input order.

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::eval::{check_euler_pfaff, check_kummer_transform, EvalOptions};
use crate::lemmas::{
    check_ratio_chain, check_truncated_chain, find_negative_point, necessity_witness, ratio_r_monotone, wronskian_coeffs, Monotonicity,
    PositivePolynomial,
};
use crate::par::{self, ExecMode};
use crate::rational::{int, ratio, Rational};
use crate::series::{HypSeriesSpec, Weights};
use crate::sums::{check_4f3_coefficient_link, eval_qfq_sum, SumVerdict};
use crate::verify::{self, list_param, params, Params, TheoremId, Verdict};

/// Knobs shared by all cases of a run.
#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    /// Truncation order for the exact coefficient suites.
    pub order: usize,
    pub gamma_order: usize,
    pub eval: EvalOptions,
    /// Midpoint relative residual accepted by the transformation checks.
    pub transform_tol: f64,
    pub mode: ExecMode,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { order: 40, gamma_order: 30, eval: EvalOptions::default(), transform_tol: 1e-12, mode: ExecMode::Parallel }
    }
}

#[derive(Debug, Clone)]
pub enum Case {
    UpperShift { spec: HypSeriesSpec, a: Rational, b: Rational, delta: Rational },
    GammaShift { spec: HypSeriesSpec, a: Rational, b: Rational, delta: Rational },
    LowerShift { spec: HypSeriesSpec, a: Rational, b: Rational, delta: Rational },
    TwoSided { spec: HypSeriesSpec, a: Rational, b: Rational, delta: Rational, grid: Vec<Rational> },
    Turan { spec: HypSeriesSpec, a: Rational, delta: Rational, grid: Vec<Rational> },
    /// `fixed` holds the non-varying parameters in the order the matching
    /// `verify_*` function takes them.
    Pointwise { theorem: TheoremId, fixed: Vec<Rational>, delta: Rational, x: Rational, grid: Vec<Rational> },
    PfqChain { upper: Vec<Rational>, lower: Vec<Rational>, alpha: Rational, beta: Rational, delta: Rational, order: usize },
    TerminatingSum { a: Rational, b: Rational, c: Rational, m: usize },
    QfqSum { alpha: Rational, beta: Rational, a: Vec<Rational>, b: Vec<Rational>, m: usize },
    RatioLemma { seed: u64, pairs: usize, max_degree: usize },
    Necessity { n: usize },
    SymmetricChain { a: Vec<Rational>, b: Vec<Rational> },
    KummerTransform { a: Rational, c: Rational, x: Rational },
    EulerPfaff { a: Rational, b: Rational, c: Rational, x: Rational },
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseResult {
    pub theorem: TheoremId,
    pub params: Params,
    pub verdict: Verdict,
    pub first_violation: Option<usize>,
    pub details: Value,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub verified: usize,
    pub violated: usize,
    pub inconclusive: usize,
}

impl Summary {
    pub fn of(results: &[CaseResult]) -> Self {
        let mut s = Summary::default();
        for r in results {
            match r.verdict {
                Verdict::Verified => s.verified += 1,
                Verdict::Violated => s.violated += 1,
                Verdict::Inconclusive => s.inconclusive += 1,
            }
        }
        s
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

impl Case {
    pub fn theorem(&self) -> TheoremId {
        match self {
            Case::UpperShift { .. } => TheoremId::UpperShift,
            Case::GammaShift { .. } => TheoremId::GammaShift,
            Case::LowerShift { .. } => TheoremId::LowerShift,
            Case::TwoSided { .. } => TheoremId::TwoSidedBound,
            Case::Turan { .. } => TheoremId::TuranBound,
            Case::Pointwise { theorem, .. } => *theorem,
            Case::PfqChain { .. } => TheoremId::PfqChain,
            Case::TerminatingSum { .. } => TheoremId::TerminatingSum,
            Case::QfqSum { .. } => TheoremId::QfqSum,
            Case::RatioLemma { .. } | Case::Necessity { .. } => TheoremId::RatioLemma,
            Case::SymmetricChain { .. } => TheoremId::SymmetricChain,
            Case::KummerTransform { .. } => TheoremId::KummerTransform,
            Case::EulerPfaff { .. } => TheoremId::EulerPfaff,
        }
    }

    pub fn run(&self, opts: &SuiteOptions) -> Result<CaseResult> {
        let theorem = self.theorem();
        let sign = |r: verify::SignReport| CaseResult {
            theorem,
            params: r.params.clone(),
            verdict: r.verdict,
            first_violation: r.first_violation,
            details: to_json(&r),
        };
        let pointwise = |r: verify::PointwiseReport| CaseResult {
            theorem,
            params: r.params.clone(),
            verdict: r.verdict,
            first_violation: r.first_violation(),
            details: to_json(&r),
        };
        let bound = |r: verify::TwoSidedBoundReport| CaseResult {
            theorem,
            params: r.params.clone(),
            verdict: r.verdict,
            first_violation: r.points.iter().position(|p| p.within_bounds == Verdict::Violated),
            details: to_json(&r),
        };
        Ok(match self {
            Case::UpperShift { spec, a, b, delta } => sign(verify::verify_upper_shift(spec, a, b, delta)?),
            Case::GammaShift { spec, a, b, delta } => sign(verify::verify_gamma_shift(spec, a, b, delta, opts.eval.prec)?),
            Case::LowerShift { spec, a, b, delta } => sign(verify::verify_lower_shift(spec, a, b, delta)?),
            Case::TwoSided { spec, a, b, delta, grid } => bound(verify::verify_two_sided(spec, a, b, delta, grid, opts.eval)?),
            Case::Turan { spec, a, delta, grid } => bound(verify::verify_turan(spec, a, delta, grid, opts.eval)?),
            Case::Pointwise { theorem, fixed, delta, x, grid } => pointwise(run_pointwise(*theorem, fixed, delta, x, grid, opts.eval)?),
            Case::PfqChain { upper, lower, alpha, beta, delta, order } => {
                sign(verify::verify_pfq_chain(upper, lower, alpha, beta, delta, *order)?)
            }
            Case::TerminatingSum { a, b, c, m } => {
                let r = check_4f3_coefficient_link(a, b, c, *m)?;
                let verdict = if r.passed() { Verdict::Verified } else { Verdict::Violated };
                let mut p = params([("a", a), ("b", b), ("c", c)]);
                p.insert("m".into(), m.to_string());
                CaseResult { theorem, params: p, verdict, first_violation: None, details: to_json(&r) }
            }
            Case::QfqSum { alpha, beta, a, b, m } => {
                let r = eval_qfq_sum(alpha, beta, a, b, *m)?;
                let verdict = match r.verdict {
                    SumVerdict::Positive => Verdict::Verified,
                    SumVerdict::NotPositive => Verdict::Violated,
                    SumVerdict::SkippedHypothesis => Verdict::Inconclusive,
                };
                let mut p = params([("alpha", alpha), ("beta", beta)]);
                p.insert("a".into(), list_param(a));
                p.insert("b".into(), list_param(b));
                p.insert("m".into(), m.to_string());
                CaseResult { theorem, params: p, verdict, first_violation: None, details: to_json(&r) }
            }
            Case::RatioLemma { seed, pairs, max_degree } => random_chain_pairs(*seed, *pairs, *max_degree),
            Case::Necessity { n } => {
                let r = necessity_witness(*n)?;
                let verdict = if r.passed() { Verdict::Verified } else { Verdict::Violated };
                let mut p = Params::new();
                p.insert("n".into(), n.to_string());
                let details = json!({
                    "n": r.n,
                    "pairs_checked": r.pairs_checked,
                    "violating": r.violating,
                    "witnesses_found": r.witnesses.len(),
                    "missing": r.missing,
                    "iff_mismatches": r.iff_mismatches,
                });
                CaseResult { theorem, params: p, verdict, first_violation: None, details }
            }
            Case::SymmetricChain { a, b } => symmetric_chain_case(a, b)?,
            Case::KummerTransform { a, c, x } => {
                let r = check_kummer_transform(a, c, x, opts.transform_tol, opts.eval)?;
                transform_result(theorem, params([("a", a), ("c", c), ("x", x)]), r)
            }
            Case::EulerPfaff { a, b, c, x } => {
                let r = check_euler_pfaff(a, b, c, x, opts.transform_tol, opts.eval)?;
                transform_result(theorem, params([("a", a), ("b", b), ("c", c), ("x", x)]), r)
            }
        })
    }
}

fn transform_result(theorem: TheoremId, params: Params, r: crate::eval::TransformReport) -> CaseResult {
    // disjoint enclosures are a certified failure; a large midpoint residual alone is not
    let verdict = if r.passed {
        Verdict::Verified
    } else if !r.overlap {
        Verdict::Violated
    } else {
        Verdict::Inconclusive
    };
    CaseResult { theorem, params, verdict, first_violation: None, details: to_json(&r) }
}

fn run_pointwise(
    theorem: TheoremId,
    fixed: &[Rational],
    delta: &Rational,
    x: &Rational,
    grid: &[Rational],
    opts: EvalOptions,
) -> Result<verify::PointwiseReport> {
    let need = |n: usize| -> Result<()> {
        if fixed.len() == n {
            Ok(())
        } else {
            Err(Error::Config(format!("{theorem} takes {n} fixed parameter(s), got {}", fixed.len())))
        }
    };
    match theorem {
        TheoremId::KummerLogConcave => {
            need(1)?;
            verify::verify_kummer_log_concave(&fixed[0], delta, x, grid, opts)
        }
        TheoremId::KummerLowerLogConvex => {
            need(1)?;
            verify::verify_kummer_lower_log_convex(&fixed[0], delta, x, grid, opts)
        }
        TheoremId::KummerDiagonalLogConvex => {
            need(2)?;
            verify::verify_kummer_diagonal_log_convex(&fixed[0], &fixed[1], delta, x, grid, opts)
        }
        TheoremId::GaussLogConcave => {
            need(2)?;
            verify::verify_gauss_log_concave(&fixed[0], &fixed[1], delta, x, grid, opts)
        }
        TheoremId::GaussLogConvex => {
            need(2)?;
            verify::verify_gauss_log_convex(&fixed[0], &fixed[1], delta, x, grid, opts)
        }
        TheoremId::GaussLowerLogConvex => {
            need(2)?;
            verify::verify_gauss_lower_log_convex(&fixed[0], &fixed[1], delta, x, grid, opts)
        }
        other => Err(Error::Config(format!("{other} is not a pointwise claim"))),
    }
}

/// A random pair with `a_k / b_k` non-decreasing; about a third of the
/// steps are ties so weak chains and proportional pairs show up too.
fn chain_pair(rng: &mut ChaCha8Rng, max_degree: usize) -> (Vec<Rational>, Vec<Rational>) {
    let degree = rng.gen_range(0..=max_degree);
    let mut r = ratio(rng.gen_range(1..=12), rng.gen_range(1..=6));
    let mut a = Vec::with_capacity(degree + 1);
    let mut b = Vec::with_capacity(degree + 1);
    for _ in 0..=degree {
        let bk = ratio(rng.gen_range(1..=20), rng.gen_range(1..=4));
        a.push(&r * &bk);
        b.push(bk);
        if rng.gen_range(0..3) != 0 {
            r += ratio(rng.gen_range(1..=8), rng.gen_range(1..=8));
        }
    }
    (a, b)
}

fn random_chain_pairs(seed: u64, pairs: usize, max_degree: usize) -> CaseResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut negative, mut no_positive, mut weak, mut proportional, mut not_chain) = (0usize, 0usize, 0usize, 0usize, 0usize);
    let mut first_violation = None;
    for i in 0..pairs {
        let (ca, cb) = chain_pair(&mut rng, max_degree);
        let a = PositivePolynomial::new(ca).expect("positive by construction");
        let b = PositivePolynomial::new(cb).expect("positive by construction");
        let chain = check_ratio_chain(&a, &b);
        if !chain.kind.increasing() {
            not_chain += 1;
        }
        let w = wronskian_coeffs(&a, &b);
        let strict = chain.any_strict();
        if !strict {
            proportional += 1;
        } else if chain.strict.iter().any(|s| !s) {
            weak += 1;
        }
        let bad_sign = w.iter().any(Signed::is_negative);
        let bad_strict = strict && !w.iter().any(Signed::is_positive);
        negative += bad_sign as usize;
        no_positive += bad_strict as usize;
        if (bad_sign || bad_strict || !chain.kind.increasing()) && first_violation.is_none() {
            first_violation = Some(i);
        }
    }
    let verdict = if first_violation.is_none() { Verdict::Verified } else { Verdict::Violated };
    let mut p = Params::new();
    p.insert("seed".into(), seed.to_string());
    p.insert("pairs".into(), pairs.to_string());
    p.insert("max_degree".into(), max_degree.to_string());
    let details = json!({
        "pairs": pairs,
        "negative_coefficient": negative,
        "strict_without_positive": no_positive,
        "weak_chains": weak,
        "proportional": proportional,
        "not_chain": not_chain,
    });
    CaseResult { theorem: TheoremId::RatioLemma, params: p, verdict, first_violation, details }
}

fn symmetric_chain_case(a: &[Rational], b: &[Rational]) -> Result<CaseResult> {
    let r = ratio_r_monotone(a, b)?;
    let componentwise = a.iter().zip(b).all(|(x, y)| y > x);
    let sufficiency = !componentwise || r.verdict == Monotonicity::Increasing;
    // for q <= 2 the chain is also necessary: a silent lemma means R' changes sign
    let necessity = if a.len() <= 2 && r.verdict == Monotonicity::UndeterminedByLemma {
        let neg: Vec<Rational> = r.wronskian.iter().map(|c| -c).collect();
        Some(find_negative_point(&r.wronskian).is_some() && find_negative_point(&neg).is_some())
    } else {
        None
    };
    let ok = r.cross_checked && sufficiency && necessity.unwrap_or(true);
    let mut p = Params::new();
    p.insert("a".into(), list_param(a));
    p.insert("b".into(), list_param(b));
    let mut details = to_json(&r);
    details["componentwise_greater"] = json!(componentwise);
    details["sign_change_when_silent"] = json!(necessity);
    Ok(CaseResult {
        theorem: TheoremId::SymmetricChain,
        params: p,
        verdict: if ok { Verdict::Verified } else { Verdict::Violated },
        first_violation: None,
        details,
    })
}

fn grid5() -> Vec<Rational> {
    vec![ratio(1, 2), int(1), ratio(3, 2), int(2), int(3)]
}

fn ordered_pairs(values: &[Rational]) -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            out.push((a.clone(), b.clone()));
        }
    }
    out
}

fn deltas() -> Vec<Rational> {
    vec![ratio(1, 2), int(1), int(2)]
}

/// Upper-factor weights: `₁F₁` for `c ∈ {1, 2, 3}` and `₂F₁` with `b > c`
/// (decreasing ratio) and `b < c` (increasing ratio).
pub fn default_upper_weights() -> Vec<Weights> {
    let mut w: Vec<Weights> = [1, 2, 3].iter().map(|&c| Weights::kummer_upper(int(c))).collect();
    for (b, c) in [(int(3), int(1)), (int(2), ratio(1, 2)), (ratio(3, 2), int(1)), (int(1), int(2)), (ratio(1, 2), int(3)), (int(2), int(3))] {
        w.push(Weights::gauss_upper(b, c));
    }
    w
}

/// Lower-factor weights: `₁F₁` in `c` and `₂F₁` in `c`.
pub fn default_lower_weights() -> Vec<Weights> {
    let mut w: Vec<Weights> = [ratio(1, 2), int(1), int(2)].into_iter().map(Weights::kummer_lower).collect();
    for (a, b) in [(int(1), ratio(3, 2)), (ratio(1, 2), int(2)), (int(2), int(3))] {
        w.push(Weights::gauss_lower(a, b));
    }
    w
}

fn shift_grid(weights: &[Weights], make: impl Fn(Weights) -> HypSeriesSpec) -> Vec<(HypSeriesSpec, Rational, Rational, Rational)> {
    let mut out = Vec::new();
    for w in weights {
        for (a, b) in ordered_pairs(&grid5()) {
            for d in deltas() {
                out.push((make(w.clone()), a.clone(), b.clone(), d));
            }
        }
    }
    out
}

fn x_grid(include_two: bool) -> Vec<Rational> {
    let mut xs = vec![ratio(-3, 4), ratio(-1, 2), ratio(-1, 4), ratio(1, 4), ratio(1, 2), ratio(3, 4)];
    if include_two {
        xs.insert(0, int(-2));
        xs.push(int(2));
    }
    xs
}

/// Values of the varying parameter for a pointwise claim: `a` for the
/// upper-parameter claims, `c` for the lower ones, `μ` for the diagonal.
pub fn pointwise_grid(theorem: TheoremId) -> Vec<Rational> {
    match theorem {
        TheoremId::KummerLowerLogConvex | TheoremId::GaussLowerLogConvex => vec![ratio(1, 2), int(1), ratio(3, 2), int(2), int(3)],
        TheoremId::KummerDiagonalLogConvex => vec![int(0), ratio(1, 2), int(1), int(2)],
        _ => vec![int(0), ratio(1, 2), int(1), ratio(3, 2), int(2), int(3)],
    }
}

fn pointwise_cases(theorem: TheoremId) -> Vec<Case> {
    let grid = pointwise_grid(theorem);
    let small_deltas = [ratio(1, 2), int(1)];
    let mut out = Vec::new();
    let mut push = |fixed: Vec<Rational>, x: &Rational, grid: &[Rational]| {
        for d in &small_deltas {
            out.push(Case::Pointwise { theorem, fixed: fixed.clone(), delta: d.clone(), x: x.clone(), grid: grid.to_vec() });
        }
    };
    match theorem {
        TheoremId::KummerLogConcave => {
            for c in [int(2), int(3)] {
                for x in x_grid(true) {
                    push(vec![c.clone()], &x, &grid);
                }
            }
        }
        TheoremId::KummerLowerLogConvex => {
            for x in x_grid(true) {
                let a_values = if x.is_positive() { [ratio(1, 2), int(2)] } else { [ratio(-1, 2), int(-2)] };
                for a in a_values {
                    push(vec![a], &x, &grid);
                }
            }
        }
        TheoremId::KummerDiagonalLogConvex => {
            for x in x_grid(true) {
                let pairs = if x.is_positive() { [(int(3), int(1)), (int(2), ratio(1, 2))] } else { [(int(1), int(3)), (ratio(1, 2), int(2))] };
                for (a, c) in pairs {
                    push(vec![a, c], &x, &grid);
                }
            }
        }
        TheoremId::GaussLogConcave => {
            for x in x_grid(false) {
                // (b, c): one unbounded-range class and one bounded-range class per sign of x
                let pairs = if x.is_positive() {
                    [(int(3), int(1)), (int(2), ratio(1, 2)), (ratio(-1, 2), int(3)), (ratio(-3, 2), int(2))]
                } else {
                    [(ratio(-1, 2), int(2)), (ratio(-3, 2), int(1)), (int(3), int(2)), (int(4), int(3))]
                };
                for (b, c) in pairs {
                    push(vec![b, c], &x, &grid);
                }
            }
        }
        TheoremId::GaussLogConvex => {
            for x in x_grid(false) {
                for (b, c) in [(int(1), int(3)), (ratio(1, 2), int(2)), (int(2), int(3))] {
                    push(vec![b, c], &x, &grid);
                }
            }
        }
        TheoremId::GaussLowerLogConvex => {
            for x in x_grid(false) {
                let pairs = if x.is_positive() {
                    [(int(1), int(2)), (ratio(1, 2), ratio(3, 2))]
                } else {
                    [(ratio(-1, 2), int(2)), (int(1), ratio(-1, 2))]
                };
                for (a, b) in pairs {
                    push(vec![a, b], &x, &grid);
                }
            }
        }
        _ => {}
    }
    out
}

/// The default grid for one claim.
pub fn default_cases_for(theorem: TheoremId, opts: &SuiteOptions) -> Vec<Case> {
    let order = opts.order;
    match theorem {
        TheoremId::UpperShift => shift_grid(&default_upper_weights(), |w| HypSeriesSpec::upper(w, order))
            .into_iter()
            .map(|(spec, a, b, delta)| Case::UpperShift { spec, a, b, delta })
            .collect(),
        TheoremId::LowerShift => shift_grid(&default_lower_weights(), |w| HypSeriesSpec::lower(w, order))
            .into_iter()
            .map(|(spec, a, b, delta)| Case::LowerShift { spec, a, b, delta })
            .collect(),
        TheoremId::GammaShift => {
            let weights: Vec<Weights> = [1, 2, 3].iter().map(|&c| Weights::kummer_gamma(int(c))).collect();
            shift_grid(&weights, |w| HypSeriesSpec::gamma(w, opts.gamma_order))
                .into_iter()
                .map(|(spec, a, b, delta)| Case::GammaShift { spec, a, b, delta })
                .collect()
        }
        TheoremId::TwoSidedBound => {
            let kummer_x = vec![ratio(1, 4), int(1), int(4), int(16), int(50)];
            let gauss_x = vec![ratio(1, 4), ratio(1, 2), ratio(3, 4)];
            let mut out = Vec::new();
            for (a, b) in [(int(1), int(2)), (ratio(1, 2), int(3)), (ratio(3, 2), int(2))] {
                for delta in [ratio(1, 2), int(1)] {
                    for c in [int(2), int(3)] {
                        let spec = HypSeriesSpec::upper(Weights::kummer_upper(c), order);
                        out.push(Case::TwoSided { spec, a: a.clone(), b: b.clone(), delta: delta.clone(), grid: kummer_x.clone() });
                    }
                    let spec = HypSeriesSpec::upper(Weights::gauss_upper(int(3), int(1)), order);
                    out.push(Case::TwoSided { spec, a: a.clone(), b: b.clone(), delta: delta.clone(), grid: gauss_x.clone() });
                }
            }
            out
        }
        TheoremId::TuranBound => [ratio(1, 2), int(1), int(2)]
            .into_iter()
            .map(|a| Case::Turan {
                spec: HypSeriesSpec::upper(Weights::kummer_upper(int(3)), order),
                a,
                delta: int(1),
                grid: vec![ratio(1, 4), int(1), int(4), int(16), int(50)],
            })
            .collect(),
        TheoremId::KummerLogConcave
        | TheoremId::KummerLowerLogConvex
        | TheoremId::KummerDiagonalLogConvex
        | TheoremId::GaussLogConcave
        | TheoremId::GaussLogConvex
        | TheoremId::GaussLowerLogConvex => pointwise_cases(theorem),
        TheoremId::PfqChain => {
            let lists: [(Vec<Rational>, Vec<Rational>); 5] = [
                (vec![int(1), int(1)], vec![int(2), int(3)]),
                (vec![int(3), int(2)], vec![int(1), int(1)]),
                (vec![ratio(1, 2), int(2)], vec![int(1), int(3)]),
                (vec![int(2)], vec![int(3)]),
                (vec![int(3)], vec![ratio(3, 2)]),
            ];
            let mut out = Vec::new();
            for (upper, lower) in lists {
                for (alpha, beta) in [(int(1), int(2)), (ratio(1, 2), int(3))] {
                    for delta in [ratio(1, 2), int(1)] {
                        out.push(Case::PfqChain {
                            upper: upper.clone(),
                            lower: lower.clone(),
                            alpha: alpha.clone(),
                            beta: beta.clone(),
                            delta,
                            order: order.min(30),
                        });
                    }
                }
            }
            out
        }
        TheoremId::TerminatingSum => {
            let values = [ratio(1, 2), int(1), int(2), int(3)];
            let mut out = Vec::new();
            for a in &values {
                for b in &values {
                    for c in [int(1), int(2)] {
                        for m in 2..=5 {
                            out.push(Case::TerminatingSum { a: a.clone(), b: b.clone(), c: c.clone(), m });
                        }
                    }
                }
            }
            out
        }
        TheoremId::QfqSum => qfq_grid(),
        TheoremId::RatioLemma => vec![
            Case::RatioLemma { seed: 0x5eed, pairs: 1000, max_degree: 6 },
            Case::Necessity { n: 1 },
            Case::Necessity { n: 2 },
        ],
        TheoremId::SymmetricChain => {
            let lists: [(Vec<Rational>, Vec<Rational>); 6] = [
                (vec![int(1), int(1)], vec![int(2), int(3)]),
                (vec![int(2), int(3)], vec![int(1), int(1)]),
                (vec![int(1), int(4)], vec![int(2), int(2)]),
                (vec![int(1), int(2)], vec![int(1), int(2)]),
                (vec![ratio(1, 2), int(1), int(2)], vec![int(1), int(2), int(3)]),
                (vec![int(2)], vec![int(5)]),
            ];
            lists.into_iter().map(|(a, b)| Case::SymmetricChain { a, b }).collect()
        }
        TheoremId::KummerTransform => {
            let mut out = Vec::new();
            for a in [ratio(1, 2), int(1), int(2)] {
                for c in [int(1), ratio(3, 2), int(3)] {
                    for x in [int(-2), ratio(-1, 2), ratio(1, 2), int(2)] {
                        out.push(Case::KummerTransform { a: a.clone(), c: c.clone(), x });
                    }
                }
            }
            out
        }
        TheoremId::EulerPfaff => {
            let mut out = Vec::new();
            for (a, b) in [(ratio(1, 2), int(1)), (int(1), int(1)), (ratio(1, 3), ratio(2, 3))] {
                for c in [ratio(3, 2), int(3)] {
                    for x in x_grid(false) {
                        out.push(Case::EulerPfaff { a: a.clone(), b: b.clone(), c: c.clone(), x });
                    }
                }
            }
            out
        }
    }
}

/// Every hypothesis-satisfying tuple for `q ∈ {1, 2}`, `m ∈ 2..=6`.
pub fn qfq_grid() -> Vec<Case> {
    let mut lists: Vec<(Vec<Rational>, Vec<Rational>)> = [ratio(1, 2), int(1), int(2)].into_iter().map(|b| (vec![], vec![b])).collect();
    for a1 in [ratio(1, 4), ratio(1, 2), int(1), int(2)] {
        for (b1, b2) in [(int(1), int(2)), (ratio(1, 2), int(1)), (int(2), int(3))] {
            lists.push((vec![a1.clone()], vec![b1, b2]));
        }
    }
    lists.retain(|(a, b)| check_truncated_chain(a, b).is_ok_and(|c| c.holds));
    let mut out = Vec::new();
    for (a, b) in &lists {
        for (alpha, beta) in [(int(2), int(1)), (int(3), ratio(1, 2)), (ratio(3, 2), int(1))] {
            for m in 2..=6 {
                out.push(Case::QfqSum { alpha: alpha.clone(), beta: beta.clone(), a: a.clone(), b: b.clone(), m });
            }
        }
    }
    out
}

/// Default grids for the selected claims, in `TheoremId::ALL` order.
pub fn default_cases(selection: &[TheoremId], opts: &SuiteOptions) -> Vec<Case> {
    TheoremId::ALL
        .into_iter()
        .filter(|t| selection.contains(t))
        .flat_map(|t| default_cases_for(t, opts))
        .collect()
}

/// Seeded extra coefficient cases with parameters drawn from `k/4`.
pub fn random_cases(seed: u64, count: usize, opts: &SuiteOptions) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut quarter = |lo: i64, hi: i64| ratio(rng.gen_range(lo..=hi), 4);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let a = quarter(1, 12);
        let b = &a + quarter(1, 12);
        let delta = quarter(1, 8);
        let param = quarter(1, 16);
        out.push(if i % 2 == 0 {
            Case::UpperShift { spec: HypSeriesSpec::upper(Weights::kummer_upper(param), opts.order), a, b, delta }
        } else {
            Case::LowerShift { spec: HypSeriesSpec::lower(Weights::kummer_lower(param), opts.order), a, b, delta }
        });
    }
    out
}

/// Runs the cases in parallel (per `opts.mode`), keeping input order.
pub fn run_cases(cases: &[Case], opts: &SuiteOptions) -> Result<Vec<CaseResult>> {
    par::map_with(opts.mode, cases, |c| c.run(opts)).into_iter().collect()
}
