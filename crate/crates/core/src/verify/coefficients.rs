use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{list_param, params, Params, TheoremId, Verdict};
use crate::error::{Error, Result};
use crate::interval::{CertifiedSign, Precision};
use crate::lemmas::{check_symmetric_chain, SymmetricChainKind};
use crate::rational::Rational;
use crate::series::{
    lambda_coefficients, lower_mk_profile, mk_profiles, phi_coefficients, psi_coefficients, Family, HypSeriesSpec,
    RatioTrend, Weights,
};

/// Per-index signs of a product-difference series against the claimed sign.
#[derive(Debug, Clone, Serialize)]
pub struct SignReport {
    pub theorem: TheoremId,
    pub params: Params,
    pub order: usize,
    pub per_index_sign: Vec<CertifiedSign>,
    /// Claimed sign for indices `>= claimed_from`; `None` when the
    /// hypothesis could not be established.
    pub expected_sign: Option<CertifiedSign>,
    pub claimed_from: usize,
    pub first_violation: Option<usize>,
    /// Every `M_k` profile has exactly one sign change (upper family).
    pub mk_single_sign_change: Option<bool>,
    /// Every `M_k` profile sums to 0 (upper family).
    pub mk_sums_zero: Option<bool>,
    /// `Σ w_k w_{m-k} M_k` reproduces the coefficient for every `m`.
    pub mk_recombines: Option<bool>,
    pub weight_trend: Option<RatioTrend>,
    pub chain: Option<SymmetricChainKind>,
    /// Inconclusive signs before the precision retry (gamma family).
    pub inconclusive_initial: Option<usize>,
    pub escalated: bool,
    /// `a = b`: every coefficient is 0 by antisymmetry.
    pub degenerate: bool,
    pub verdict: Verdict,
    pub note: Option<String>,
}

impl SignReport {
    pub fn count(&self, sign: CertifiedSign) -> usize {
        self.per_index_sign.iter().filter(|s| **s == sign).count()
    }
}

fn weight_params(w: &Weights) -> [(String, String); 3] {
    [
        ("w_upper".into(), list_param(&w.upper)),
        ("w_lower".into(), list_param(&w.lower)),
        ("w_factorial".into(), w.divide_factorial.to_string()),
    ]
}

fn base_params(spec: &HypSeriesSpec, a: &Rational, b: &Rational, delta: &Rational) -> Params {
    let mut p = params([("a", a), ("b", b), ("delta", delta)]);
    p.extend(weight_params(&spec.weights));
    p
}

fn orient(sign: CertifiedSign, a: &Rational, b: &Rational) -> CertifiedSign {
    if a > b {
        sign.negate()
    } else {
        sign
    }
}

/// Compares signs from `claimed_from` on; indices below must be exactly 0.
fn first_mismatch(signs: &[CertifiedSign], expected: CertifiedSign, claimed_from: usize) -> (Option<usize>, bool) {
    let mut inconclusive = false;
    for (m, s) in signs.iter().enumerate() {
        let want = if m < claimed_from { CertifiedSign::Zero } else { expected };
        match *s {
            CertifiedSign::Inconclusive => inconclusive = true,
            s if s != want => return (Some(m), inconclusive),
            _ => {}
        }
    }
    (None, inconclusive)
}

fn check_shift_args(a: &Rational, b: &Rational, delta: &Rational, strict: bool) -> Result<()> {
    let ok = |x: &Rational| if strict { x.is_positive() } else { !x.is_negative() };
    if !ok(a) || !ok(b) || !delta.is_positive() {
        let need = if strict { "a, b > 0" } else { "a, b >= 0" };
        return Err(Error::Domain(format!("need {need} and delta > 0")));
    }
    Ok(())
}

fn upper_report(
    theorem: TheoremId,
    spec: &HypSeriesSpec,
    a: &Rational,
    b: &Rational,
    delta: &Rational,
    base_expected: Option<CertifiedSign>,
) -> Result<SignReport> {
    if spec.family != Family::UpperFactor {
        return Err(Error::Config("upper-shift checks need an upper-factor series".into()));
    }
    check_shift_args(a, b, delta, false)?;
    let phi = phi_coefficients(spec, a, b, delta)?;
    let signs: Vec<CertifiedSign> = phi.iter().map(CertifiedSign::from_rational).collect();
    let degenerate = a == b;
    let expected = if degenerate { Some(CertifiedSign::Zero) } else { base_expected.map(|s| orient(s, a, b)) };

    let (mut mk_single, mut mk_zero, mut mk_recombine) = (None, None, None);
    if !degenerate && spec.order >= 2 {
        let w = spec.weights.table(spec.order)?;
        let profiles = mk_profiles(a, b, delta, spec.order);
        mk_single = Some(profiles.iter().all(|p| p.sign_changes() == 1));
        mk_zero = Some(profiles.iter().all(|p| p.sum().is_zero()));
        mk_recombine = Some(profiles.iter().all(|p| p.combine(&w) == phi[p.m]));
    }

    let (first_violation, verdict, note) = match expected {
        None => (None, Verdict::Inconclusive, Some("hypothesis not met: no claimed sign".to_string())),
        Some(e) => {
            let (fv, _) = first_mismatch(&signs, e, 2);
            let mk_ok = [mk_single, mk_zero, mk_recombine].iter().all(|c| c.unwrap_or(true));
            let verdict = if fv.is_some() || !mk_ok { Verdict::Violated } else { Verdict::Verified };
            let note = (!mk_ok).then(|| "M_k profile check failed".to_string());
            (fv, verdict, note)
        }
    };
    Ok(SignReport {
        theorem,
        params: base_params(spec, a, b, delta),
        order: spec.order,
        per_index_sign: signs,
        expected_sign: expected,
        claimed_from: 2,
        first_violation,
        mk_single_sign_change: mk_single,
        mk_sums_zero: mk_zero,
        mk_recombines: mk_recombine,
        weight_trend: None,
        chain: None,
        inconclusive_initial: None,
        escalated: false,
        degenerate,
        verdict,
        note,
    })
}

/// Coefficients of `f(a+δ)f(b) - f(b+δ)f(a)`: positive when `w_n/w_{n-1}`
/// decreases, negative when it increases, zero when it is constant
/// (signs reversed for `a > b`). Also checks every `M_k` profile.
pub fn verify_upper_shift(spec: &HypSeriesSpec, a: &Rational, b: &Rational, delta: &Rational) -> Result<SignReport> {
    let trend = spec.weights.ratio_trend(spec.order.max(2))?;
    let base = match trend {
        RatioTrend::Decreasing => Some(CertifiedSign::Positive),
        RatioTrend::Increasing => Some(CertifiedSign::Negative),
        RatioTrend::Constant => Some(CertifiedSign::Zero),
        RatioTrend::Neither => None,
    };
    let mut report = upper_report(TheoremId::UpperShift, spec, a, b, delta, base)?;
    report.weight_trend = Some(trend);
    if trend == RatioTrend::Neither && !report.degenerate {
        report.note = Some("weight ratios are not monotone".into());
    }
    Ok(report)
}

/// `q+1Fq` in its first upper parameter: with `u` the other upper and `l`
/// the lower parameters, the increasing symmetric chain claims negative
/// coefficients and the decreasing one positive coefficients (`β > α`).
pub fn verify_pfq_chain(
    upper: &[Rational],
    lower: &[Rational],
    alpha: &Rational,
    beta: &Rational,
    delta: &Rational,
    order: usize,
) -> Result<SignReport> {
    let chain = check_symmetric_chain(upper, lower)?;
    let base = match chain.kind {
        SymmetricChainKind::Increasing => Some(CertifiedSign::Negative),
        SymmetricChainKind::Decreasing => Some(CertifiedSign::Positive),
        SymmetricChainKind::Both => Some(CertifiedSign::Zero),
        SymmetricChainKind::Neither => None,
    };
    let spec = HypSeriesSpec::upper(Weights::pfq_upper(upper.to_vec(), lower.to_vec()), order);
    let mut report = upper_report(TheoremId::PfqChain, &spec, alpha, beta, delta, base)?;
    report.chain = Some(chain.kind);
    if chain.kind == SymmetricChainKind::Neither && !report.degenerate {
        report.note = Some("symmetric chain fails both ways; skipped".into());
    }
    Ok(report)
}

/// Gamma-factor coefficients `ψ_m < 0` for `b > a > 0`, decided against
/// the certified gamma ratio, with one retry at doubled precision.
pub fn verify_gamma_shift(spec: &HypSeriesSpec, a: &Rational, b: &Rational, delta: &Rational, prec: Precision) -> Result<SignReport> {
    check_shift_args(a, b, delta, true)?;
    let first = psi_coefficients(spec, a, b, delta, prec)?;
    let inconclusive_initial = first.inconclusive_count();
    let escalated = inconclusive_initial > 0;
    let psi = if escalated { psi_coefficients(spec, a, b, delta, prec.doubled())? } else { first };
    let signs: Vec<CertifiedSign> = psi.coefficients.iter().map(|c| c.sign).collect();
    let degenerate = a == b;
    let expected = if degenerate { CertifiedSign::Zero } else { orient(CertifiedSign::Negative, a, b) };
    let (first_violation, inconclusive) = first_mismatch(&signs, expected, 0);
    let verdict = if first_violation.is_some() {
        Verdict::Violated
    } else if inconclusive {
        Verdict::Inconclusive
    } else {
        Verdict::Verified
    };
    let note = psi.gamma_factor.as_ref().map(|g| format!("gamma factor {g}, {} bits", psi.precision_bits));
    Ok(SignReport {
        theorem: TheoremId::GammaShift,
        params: base_params(spec, a, b, delta),
        order: spec.order,
        per_index_sign: signs,
        expected_sign: Some(expected),
        claimed_from: 0,
        first_violation,
        mk_single_sign_change: None,
        mk_sums_zero: None,
        mk_recombines: None,
        weight_trend: None,
        chain: None,
        inconclusive_initial: Some(inconclusive_initial),
        escalated,
        degenerate,
        verdict,
        note,
    })
}

/// Lower-factor coefficients `λ_m < 0` for `m >= 1` and `b > a > 0`.
pub fn verify_lower_shift(spec: &HypSeriesSpec, a: &Rational, b: &Rational, delta: &Rational) -> Result<SignReport> {
    check_shift_args(a, b, delta, true)?;
    let lambda = lambda_coefficients(spec, a, b, delta)?;
    let signs: Vec<CertifiedSign> = lambda.iter().map(CertifiedSign::from_rational).collect();
    let degenerate = a == b;
    let expected = if degenerate { CertifiedSign::Zero } else { orient(CertifiedSign::Negative, a, b) };
    let (first_violation, _) = first_mismatch(&signs, expected, 1);
    let mut recombines = None;
    if !degenerate {
        let w = spec.weights.table(spec.order)?;
        let mut ok = true;
        for m in 1..=spec.order {
            ok &= lower_mk_profile(a, b, delta, m)?.combine(&w) == lambda[m];
        }
        recombines = Some(ok);
    }
    let verdict = if first_violation.is_some() || recombines == Some(false) { Verdict::Violated } else { Verdict::Verified };
    Ok(SignReport {
        theorem: TheoremId::LowerShift,
        params: base_params(spec, a, b, delta),
        order: spec.order,
        per_index_sign: signs,
        expected_sign: Some(expected),
        claimed_from: 1,
        first_violation,
        mk_single_sign_change: None,
        mk_sums_zero: None,
        mk_recombines: recombines,
        weight_trend: None,
        chain: None,
        inconclusive_initial: None,
        escalated: false,
        degenerate,
        verdict,
        note: None,
    })
}
