//! Exact truncated power series for the three shifted-parameter families
//!
//! * upper factor: `f(a, x) = Σ w_n (a)_n x^n / n!`
//! * gamma factor: `g(a, x) = Σ w_n Γ(a + n) x^n`
//! * lower factor: `h(a, x) = Σ w_n x^n / (a)_n`
//!
//! and of the coefficient sequences of the product differences
//! `F(a+δ) F(b) - F(b+δ) F(a)` built from them.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma;
use crate::interval::{CertifiedInterval, CertifiedSign, Precision};
use crate::rational::{self, pochhammer_table, Rational};

pub const DEFAULT_ORDER: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `Σ w_n (a)_n x^n / n!`
    UpperFactor,
    /// `Σ w_n Γ(a+n) x^n`
    GammaFactor,
    /// `Σ w_n x^n / (a)_n`
    LowerFactor,
}

/// Positive weight sequence `w_n = Π (u_i)_n / (Π (l_j)_n · (n!)^e)` with
/// `e ∈ {0, 1}`. It never depends on the shifted parameter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weights {
    #[serde(with = "rational::serde_str::vec")]
    pub upper: Vec<Rational>,
    #[serde(with = "rational::serde_str::vec")]
    pub lower: Vec<Rational>,
    pub divide_factorial: bool,
}

/// Shape of the ratio sequence `w_n / w_{n-1}`, `1 <= n <= M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RatioTrend {
    Decreasing,
    Increasing,
    Constant,
    Neither,
}

impl Weights {
    pub fn new(upper: Vec<Rational>, lower: Vec<Rational>, divide_factorial: bool) -> Self {
        Weights { upper, lower, divide_factorial }
    }

    /// `w_n = 1`; the binomial case.
    pub fn constant() -> Self {
        Self::new(vec![], vec![], false)
    }

    /// `1/(c)_n`: ₁F₁ viewed in its upper parameter.
    pub fn kummer_upper(c: Rational) -> Self {
        Self::new(vec![], vec![c], false)
    }

    /// `(b)_n/(c)_n`: ₂F₁ viewed in one upper parameter.
    pub fn gauss_upper(b: Rational, c: Rational) -> Self {
        Self::new(vec![b], vec![c], false)
    }

    /// `1/((c)_n n!)`: `Γ(a) ₁F₁(a; c; x)` as a gamma-factor series.
    pub fn kummer_gamma(c: Rational) -> Self {
        Self::new(vec![], vec![c], true)
    }

    /// `(a)_n/n!`: ₁F₁ viewed in its lower parameter.
    pub fn kummer_lower(a: Rational) -> Self {
        Self::new(vec![a], vec![], true)
    }

    /// `(a)_n (b)_n / n!`: ₂F₁ viewed in its lower parameter.
    pub fn gauss_lower(a: Rational, b: Rational) -> Self {
        Self::new(vec![a, b], vec![], true)
    }

    /// `Π(a_i)_n / Π(b_j)_n`: `pFq` viewed in one extra upper parameter.
    pub fn pfq_upper(upper: Vec<Rational>, lower: Vec<Rational>) -> Self {
        Self::new(upper, lower, false)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(l) = self.lower.iter().find(|l| !l.is_positive()) {
            return Err(Error::Domain(format!("lower weight parameter {} must be positive", rational::show(l))));
        }
        if let Some(u) = self.upper.iter().find(|u| !u.is_positive()) {
            return Err(Error::Domain(format!("upper weight parameter {} must be positive", rational::show(u))));
        }
        Ok(())
    }

    /// `w_0, ..., w_order`.
    pub fn table(&self, order: usize) -> Result<Vec<Rational>> {
        self.validate()?;
        let mut w = vec![Rational::one(); order + 1];
        for u in &self.upper {
            for (wn, p) in w.iter_mut().zip(pochhammer_table(u, order)) {
                *wn *= p;
            }
        }
        for l in &self.lower {
            for (wn, p) in w.iter_mut().zip(pochhammer_table(l, order)) {
                *wn /= p;
            }
        }
        if self.divide_factorial {
            for (wn, p) in w.iter_mut().zip(rational::factorial_table(order)) {
                *wn /= p;
            }
        }
        Ok(w)
    }

    pub fn weight(&self, n: usize) -> Result<Rational> {
        Ok(self.table(n)?.pop().unwrap())
    }

    /// Classifies `w_n / w_{n-1}` for `1 <= n <= order` by exact comparison.
    pub fn ratio_trend(&self, order: usize) -> Result<RatioTrend> {
        let w = self.table(order)?;
        let ratios: Vec<Rational> = w.windows(2).map(|p| &p[1] / &p[0]).collect();
        let (mut dec, mut inc, mut eq) = (true, true, true);
        for pair in ratios.windows(2) {
            dec &= pair[1] < pair[0];
            inc &= pair[1] > pair[0];
            eq &= pair[1] == pair[0];
        }
        Ok(if eq {
            RatioTrend::Constant
        } else if dec {
            RatioTrend::Decreasing
        } else if inc {
            RatioTrend::Increasing
        } else {
            RatioTrend::Neither
        })
    }
}

/// A series family, its weights and a truncation order `M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HypSeriesSpec {
    pub family: Family,
    pub weights: Weights,
    pub order: usize,
}

impl HypSeriesSpec {
    pub fn new(family: Family, weights: Weights, order: usize) -> Self {
        HypSeriesSpec { family, weights, order }
    }

    pub fn upper(weights: Weights, order: usize) -> Self {
        Self::new(Family::UpperFactor, weights, order)
    }

    pub fn gamma(weights: Weights, order: usize) -> Self {
        Self::new(Family::GammaFactor, weights, order)
    }

    pub fn lower(weights: Weights, order: usize) -> Self {
        Self::new(Family::LowerFactor, weights, order)
    }

    fn expect(&self, family: Family) -> Result<()> {
        if self.family == family {
            Ok(())
        } else {
            Err(Error::Config(format!("expected a {family:?} series, got {:?}", self.family)))
        }
    }
}

/// `w_n` for `spec` at index `n`.
pub fn weight_sequence(spec: &HypSeriesSpec, n: usize) -> Result<Rational> {
    spec.weights.weight(n)
}

/// Coefficients `c_0..=c_M` of a formal power series.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncatedSeries {
    #[serde(with = "rational::serde_str::vec")]
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series keeps at least c_0");
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Truncated Cauchy product; the result has the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|m| {
                (0..=m).fold(Rational::zero(), |acc, k| acc + &self.coeffs[k] * &other.coeffs[m - k])
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|m| &self.coeffs[m] - &other.coeffs[m]).collect();
        TruncatedSeries { coeffs }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

/// Coefficients of the series with shifted parameter `a`.
///
/// For the gamma family the common factor `Γ(a)` is held aside, so the
/// returned coefficients are `w_n (a)_n` and the true series is
/// `Γ(a) · Σ w_n (a)_n x^n`.
pub fn build_series(spec: &HypSeriesSpec, a: &Rational) -> Result<TruncatedSeries> {
    let m = spec.order;
    let w = spec.weights.table(m)?;
    let poch = pochhammer_table(a, m);
    let coeffs = match spec.family {
        Family::UpperFactor => {
            let fact = rational::factorial_table(m);
            w.iter().zip(&poch).zip(&fact).map(|((w, p), f)| w * p / f).collect()
        }
        Family::GammaFactor => {
            if !a.is_positive() {
                return Err(Error::Domain(format!("gamma-factor series needs a > 0, got {}", rational::show(a))));
            }
            w.iter().zip(&poch).map(|(w, p)| w * p).collect()
        }
        Family::LowerFactor => {
            if let Some(n) = poch.iter().position(|p| p.is_zero()) {
                return Err(Error::Pole(format!("(a)_{n} = 0 for a = {}", rational::show(a))));
            }
            w.iter().zip(&poch).map(|(w, p)| w / p).collect()
        }
    };
    Ok(TruncatedSeries::new(coeffs))
}

/// `F(a+δ) F(b) - F(b+δ) F(a)` for the upper or lower family.
fn product_difference(spec: &HypSeriesSpec, a: &Rational, b: &Rational, delta: &Rational) -> Result<Vec<Rational>> {
    if a == b {
        return Ok(vec![Rational::zero(); spec.order + 1]);
    }
    let left = build_series(spec, &(a + delta))?.mul(&build_series(spec, b)?);
    let right = build_series(spec, &(b + delta))?.mul(&build_series(spec, a)?);
    Ok(left.sub(&right).into_coeffs())
}

/// `φ_0..=φ_M` for `φ = f(a+δ)f(b) - f(b+δ)f(a)` (upper family).
pub fn phi_coefficients(spec: &HypSeriesSpec, a: &Rational, b: &Rational, delta: &Rational) -> Result<Vec<Rational>> {
    spec.expect(Family::UpperFactor)?;
    product_difference(spec, a, b, delta)
}

/// `λ_0..=λ_M` for `λ = h(a+δ)h(b) - h(b+δ)h(a)` (lower family).
pub fn lambda_coefficients(spec: &HypSeriesSpec, a: &Rational, b: &Rational, delta: &Rational) -> Result<Vec<Rational>> {
    spec.expect(Family::LowerFactor)?;
    product_difference(spec, a, b, delta)
}

/// Half-range decomposition `φ_m = Σ_{k<=m/2} w_k w_{m-k} M_k` of the
/// upper-family coefficient. The `M_k` do not depend on the weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MkProfile {
    pub m: usize,
    #[serde(with = "rational::serde_str::vec")]
    pub values: Vec<Rational>,
}

impl MkProfile {
    pub fn sum(&self) -> Rational {
        self.values.iter().fold(Rational::zero(), |acc, v| acc + v)
    }

    /// Number of sign changes, zeros skipped.
    pub fn sign_changes(&self) -> usize {
        let signs: Vec<i8> = self.values.iter().map(rational::signum).filter(|s| *s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Recombines with a weight table into `φ_m`.
    pub fn combine(&self, weights: &[Rational]) -> Rational {
        self.values
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (k, mk)| acc + &weights[k] * &weights[self.m - k] * mk)
    }
}

/// Pochhammer tables shared by every `M_k` of a given `(a, b, δ)`.
struct ShiftTables {
    a: Vec<Rational>,
    b: Vec<Rational>,
    a_d: Vec<Rational>,
    b_d: Vec<Rational>,
    fact: Vec<Rational>,
}

impl ShiftTables {
    fn new(a: &Rational, b: &Rational, delta: &Rational, order: usize) -> Self {
        ShiftTables {
            a: pochhammer_table(a, order),
            b: pochhammer_table(b, order),
            a_d: pochhammer_table(&(a + delta), order),
            b_d: pochhammer_table(&(b + delta), order),
            fact: rational::factorial_table(order),
        }
    }

    fn upper_mk(&self, m: usize) -> MkProfile {
        let t = self;
        let values = (0..=m / 2)
            .map(|k| {
                let j = m - k;
                let norm = &t.fact[k] * &t.fact[j];
                if 2 * k < m {
                    (&t.a_d[k] * &t.b[j] + &t.a_d[j] * &t.b[k] - &t.a[k] * &t.b_d[j] - &t.a[j] * &t.b_d[k]) / norm
                } else {
                    (&t.a_d[k] * &t.b[j] - &t.a[k] * &t.b_d[j]) / norm
                }
            })
            .collect();
        MkProfile { m, values }
    }

    fn lower_mk(&self, m: usize) -> MkProfile {
        let t = self;
        let inv = |x: Rational| x.recip();
        let values = (0..=m / 2)
            .map(|k| {
                let j = m - k;
                if 2 * k < m {
                    inv(&t.a_d[k] * &t.b[j]) + inv(&t.a_d[j] * &t.b[k]) - inv(&t.a[j] * &t.b_d[k]) - inv(&t.a[k] * &t.b_d[j])
                } else {
                    inv(&t.a_d[k] * &t.b[j]) - inv(&t.a[k] * &t.b_d[j])
                }
            })
            .collect();
        MkProfile { m, values }
    }
}

/// `M_k`, `k = 0..=m/2`, for the upper family.
pub fn mk_profile(a: &Rational, b: &Rational, delta: &Rational, m: usize) -> MkProfile {
    ShiftTables::new(a, b, delta, m).upper_mk(m)
}

/// `M_k` profiles for every `2 <= m <= order`, sharing Pochhammer tables.
pub fn mk_profiles(a: &Rational, b: &Rational, delta: &Rational, order: usize) -> Vec<MkProfile> {
    let t = ShiftTables::new(a, b, delta, order);
    (2..=order).map(|m| t.upper_mk(m)).collect()
}

/// Lower-family analogue `λ_m = Σ_{k<=m/2} w_k w_{m-k} M_k`, every term
/// of which is negative when `b > a > 0`.
pub fn lower_mk_profile(a: &Rational, b: &Rational, delta: &Rational, m: usize) -> Result<MkProfile> {
    let t = ShiftTables::new(a, b, delta, m);
    for table in [&t.a, &t.b, &t.a_d, &t.b_d] {
        if table.iter().any(|p| p.is_zero()) {
            return Err(Error::Pole("Pochhammer symbol vanishes in the lower family".into()));
        }
    }
    Ok(t.lower_mk(m))
}

/// One gamma-family coefficient in factored form
/// `ψ_m = Γ(a+δ)Γ(b)·s1 - Γ(b+δ)Γ(a)·s2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiCoefficient {
    #[serde(with = "rational::serde_str")]
    pub s1: Rational,
    #[serde(with = "rational::serde_str")]
    pub s2: Rational,
    pub sign: CertifiedSign,
}

/// Factored gamma-family coefficients together with the certified factor
/// `G = Γ(b+δ)Γ(a) / (Γ(a+δ)Γ(b))` the signs were decided against.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PsiCoefficients {
    pub coefficients: Vec<PsiCoefficient>,
    #[serde(skip)]
    pub gamma_factor: Option<CertifiedInterval>,
    pub precision_bits: u32,
}

impl PsiCoefficients {
    pub fn inconclusive_count(&self) -> usize {
        self.coefficients.iter().filter(|c| c.sign == CertifiedSign::Inconclusive).count()
    }
}

/// `ψ_0..=ψ_M` for `ψ = g(a+δ)g(b) - g(b+δ)g(a)` (gamma family).
pub fn psi_coefficients(
    spec: &HypSeriesSpec,
    a: &Rational,
    b: &Rational,
    delta: &Rational,
    prec: Precision,
) -> Result<PsiCoefficients> {
    spec.expect(Family::GammaFactor)?;
    if !a.is_positive() || !b.is_positive() || delta.is_negative() {
        return Err(Error::Domain("gamma family needs a, b > 0 and delta >= 0".into()));
    }
    let s1 = build_series(spec, &(a + delta))?.mul(&build_series(spec, b)?);
    let s2 = build_series(spec, &(b + delta))?.mul(&build_series(spec, a)?);
    let factor = if a == b {
        CertifiedInterval::one()
    } else {
        gamma::product_ratio_bound(a, b, delta, prec.with_extra(8))?.recip(prec.with_extra(8))?
    };
    let exact_factor = factor.is_exact().then(|| factor.lo().clone());
    let coefficients = s1
        .into_coeffs()
        .into_iter()
        .zip(s2.into_coeffs())
        .map(|(s1, s2)| {
            let sign = match &exact_factor {
                Some(g) => CertifiedSign::from_rational(&(&s1 - g * &s2)),
                None => CertifiedInterval::enclose(&s1, prec)
                    .sub(&factor.mul_rational(&s2, prec), prec)
                    .sign(),
            };
            PsiCoefficient { s1, s2, sign }
        })
        .collect();
    Ok(PsiCoefficients { coefficients, gamma_factor: Some(factor), precision_bits: prec.bits() })
}

/// As [`psi_coefficients`], retrying once at doubled precision when any
/// sign is inconclusive.
pub fn psi_coefficients_escalating(
    spec: &HypSeriesSpec,
    a: &Rational,
    b: &Rational,
    delta: &Rational,
    prec: Precision,
) -> Result<(PsiCoefficients, bool)> {
    let first = psi_coefficients(spec, a, b, delta, prec)?;
    if first.inconclusive_count() == 0 {
        return Ok((first, false));
    }
    Ok((psi_coefficients(spec, a, b, delta, prec.doubled())?, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn weight_examples() {
        let f = HypSeriesSpec::upper(Weights::kummer_upper(int(2)), 5);
        assert_eq!(weight_sequence(&f, 2).unwrap(), ratio(1, 6));
        let g = HypSeriesSpec::upper(Weights::gauss_upper(int(3), int(1)), 5);
        assert_eq!(weight_sequence(&g, 1).unwrap(), int(3));
        let h = HypSeriesSpec::lower(Weights::kummer_lower(int(1)), 5);
        assert_eq!(weight_sequence(&h, 3).unwrap(), int(1));
        let k = HypSeriesSpec::gamma(Weights::kummer_gamma(int(1)), 5);
        assert_eq!(weight_sequence(&k, 3).unwrap(), ratio(1, 36));
    }

    #[test]
    fn nonpositive_lower_weight_is_domain_error() {
        let w = Weights::kummer_upper(int(0));
        assert!(matches!(w.table(3), Err(Error::Domain(_))));
        assert!(Weights::kummer_upper(ratio(-1, 2)).validate().is_err());
    }

    #[test]
    fn ratio_trends() {
        assert_eq!(Weights::kummer_upper(int(3)).ratio_trend(10).unwrap(), RatioTrend::Decreasing);
        assert_eq!(Weights::gauss_upper(int(3), int(1)).ratio_trend(10).unwrap(), RatioTrend::Decreasing);
        assert_eq!(Weights::gauss_upper(int(1), int(3)).ratio_trend(10).unwrap(), RatioTrend::Increasing);
        assert_eq!(Weights::gauss_upper(int(2), int(2)).ratio_trend(10).unwrap(), RatioTrend::Constant);
        assert_eq!(Weights::constant().ratio_trend(10).unwrap(), RatioTrend::Constant);
        let mixed = Weights::new(vec![int(5)], vec![int(1), int(1)], false);
        // ratios (n+4)/n^2: 5, 3/2, 7/9, ... decreasing
        assert_eq!(mixed.ratio_trend(10).unwrap(), RatioTrend::Decreasing);
    }

    #[test]
    fn binomial_series() {
        let spec = HypSeriesSpec::upper(Weights::constant(), 3);
        let s = build_series(&spec, &int(2)).unwrap();
        assert_eq!(s.coeffs(), &[int(1), int(2), int(3), int(4)]);
    }

    #[test]
    fn exponential_series() {
        let spec = HypSeriesSpec::upper(Weights::kummer_upper(int(1)), 4);
        let s = build_series(&spec, &int(1)).unwrap();
        assert_eq!(s.coeffs(), &[int(1), int(1), ratio(1, 2), ratio(1, 6), ratio(1, 24)]);
    }

    #[test]
    fn order_zero_series() {
        for family in [Family::UpperFactor, Family::GammaFactor, Family::LowerFactor] {
            let spec = HypSeriesSpec::new(family, Weights::kummer_upper(int(2)), 0);
            let s = build_series(&spec, &ratio(3, 2)).unwrap();
            assert_eq!(s.coeffs(), &[int(1)]);
        }
    }

    #[test]
    fn lower_family_pole() {
        let spec = HypSeriesSpec::lower(Weights::kummer_lower(int(1)), 5);
        assert!(matches!(build_series(&spec, &int(-2)), Err(Error::Pole(_))));
        // a pole beyond the truncation order is not hit
        let short = HypSeriesSpec::lower(Weights::kummer_lower(int(1)), 2);
        assert!(build_series(&short, &int(-2)).is_ok());
        assert!(build_series(&spec, &ratio(-5, 2)).is_ok());
    }

    #[test]
    fn truncated_product_keeps_min_order() {
        let a = TruncatedSeries::new(vec![int(1), int(1), int(1)]);
        let b = TruncatedSeries::new(vec![int(1), int(-1)]);
        assert_eq!(a.mul(&b).coeffs(), &[int(1), int(0)]);
    }

    /// Direct double sum over k of the displayed φ_m formula.
    fn phi_brute(w: &[Rational], a: &Rational, b: &Rational, d: &Rational, m: usize) -> Rational {
        let p = |x: &Rational, n| rational::pochhammer(x, n);
        let fact = |n| rational::pochhammer(&int(1), n);
        (0..=m).fold(Rational::zero(), |acc, k| {
            let term = (p(&(a + d), k) * p(b, m - k) - p(&(b + d), k) * p(a, m - k)) / (fact(k) * fact(m - k));
            acc + &w[k] * &w[m - k] * term
        })
    }

    #[test]
    fn phi_matches_brute_force_and_mk() {
        let spec = HypSeriesSpec::upper(Weights::kummer_upper(int(1)), 8);
        let (a, b, d) = (int(1), int(2), int(1));
        let phi = phi_coefficients(&spec, &a, &b, &d).unwrap();
        let w = spec.weights.table(8).unwrap();
        assert_eq!(phi[0], int(0));
        assert_eq!(phi[1], int(0));
        // m = 2 by hand: w0 w2 M0 + w1^2 M1 with w = 1/n!:
        // M0 = [(2)_0(2)_2 + (2)_2(2)_0 - (1)_0(3)_2 - (1)_2(3)_0]/2! = (6+6-12-2)/2 = -1
        // M1 = (2)_1(2)_1 - (1)_1(3)_1 = 4 - 3 = 1
        // phi_2 = (1)(1/2)(-1) + 1*1*1 = 1/2
        assert_eq!(phi[2], ratio(1, 2));
        for m in 0..=8 {
            assert_eq!(phi[m], phi_brute(&w, &a, &b, &d, m), "m = {m}");
        }
        for m in 2..=8 {
            assert_eq!(mk_profile(&a, &b, &d, m).combine(&w), phi[m]);
        }
    }

    #[test]
    fn phi_antisymmetric() {
        let spec = HypSeriesSpec::upper(Weights::kummer_upper(int(3)), 12);
        let p = phi_coefficients(&spec, &ratio(1, 2), &int(2), &ratio(1, 3)).unwrap();
        let q = phi_coefficients(&spec, &int(2), &ratio(1, 2), &ratio(1, 3)).unwrap();
        for (x, y) in p.iter().zip(&q) {
            assert_eq!(*x, -y);
        }
    }

    #[test]
    fn phi_degenerate_equal_shifts() {
        let spec = HypSeriesSpec::upper(Weights::kummer_upper(int(3)), 6);
        assert!(phi_coefficients(&spec, &int(2), &int(2), &int(1)).unwrap().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn mk_profile_structure() {
        let (a, b, d) = (ratio(1, 2), int(3), ratio(2, 3));
        for prof in mk_profiles(&a, &b, &d, 20) {
            assert!(prof.sum().is_zero());
            assert!(prof.values[0].is_negative());
            assert_eq!(prof.sign_changes(), 1);
        }
    }

    fn lambda_brute(w: &[Rational], a: &Rational, b: &Rational, d: &Rational, m: usize) -> Rational {
        let p = |x: &Rational, n| rational::pochhammer(x, n);
        (0..=m).fold(Rational::zero(), |acc, k| {
            let term = (p(&(a + d), k) * p(b, m - k)).recip() - (p(&(b + d), k) * p(a, m - k)).recip();
            acc + &w[k] * &w[m - k] * term
        })
    }

    #[test]
    fn lambda_matches_brute_force() {
        let spec = HypSeriesSpec::lower(Weights::kummer_lower(int(1)), 6);
        let (a, b, d) = (int(1), int(2), int(1));
        let lam = lambda_coefficients(&spec, &a, &b, &d).unwrap();
        let w = spec.weights.table(6).unwrap();
        assert_eq!(lam[0], int(0));
        // m = 1: w0 w1 [1/((2)_0 (2)_1) - 1/((3)_0 (1)_1) + 1/((2)_1(2)_0) - 1/((3)_1 (1)_0)]
        //      = 1/2 - 1 + 1/2 - 1/3 = -1/3
        assert_eq!(lam[1], ratio(-1, 3));
        for m in 0..=6 {
            assert_eq!(lam[m], lambda_brute(&w, &a, &b, &d, m));
        }
        for m in 1..=6 {
            let prof = lower_mk_profile(&a, &b, &d, m).unwrap();
            assert_eq!(prof.combine(&w), lam[m]);
            assert!(prof.values.iter().all(|v| v.is_negative()));
        }
        let swapped = lambda_coefficients(&spec, &b, &a, &d).unwrap();
        assert!(lam.iter().zip(&swapped).all(|(x, y)| *x == -y));
    }

    #[test]
    fn psi_integer_delta_is_exact_and_negative() {
        let spec = HypSeriesSpec::gamma(Weights::kummer_gamma(int(2)), 15);
        let psi = psi_coefficients(&spec, &int(1), &int(2), &int(1), Precision::default()).unwrap();
        assert!(psi.gamma_factor.as_ref().unwrap().is_exact());
        assert!(psi.coefficients.iter().all(|c| c.sign == CertifiedSign::Negative));
    }

    #[test]
    fn psi_half_integer_certified() {
        let spec = HypSeriesSpec::gamma(Weights::kummer_gamma(int(2)), 20);
        let (a, b, d) = (ratio(1, 2), ratio(3, 2), ratio(1, 2));
        let p = Precision::default();
        let lo = psi_coefficients(&spec, &a, &b, &d, p).unwrap();
        let hi = psi_coefficients(&spec, &a, &b, &d, p.doubled()).unwrap();
        assert!(lo.coefficients.iter().all(|c| c.sign == CertifiedSign::Negative));
        assert_eq!(lo.coefficients, hi.coefficients);
    }

    #[test]
    fn psi_degenerate_is_zero() {
        let spec = HypSeriesSpec::gamma(Weights::kummer_gamma(int(2)), 5);
        let psi = psi_coefficients(&spec, &ratio(3, 2), &ratio(3, 2), &ratio(1, 2), Precision::default()).unwrap();
        assert!(psi.coefficients.iter().all(|c| c.sign == CertifiedSign::Zero));
    }

    #[test]
    fn wrong_family_is_rejected() {
        let spec = HypSeriesSpec::lower(Weights::kummer_lower(int(1)), 4);
        assert!(phi_coefficients(&spec, &int(1), &int(2), &int(1)).is_err());
    }
}
