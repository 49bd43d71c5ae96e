//! Exact terminating hypergeometric sums at `-1`.
//!
//! The `x^m` coefficient of `f(α+1)f(β) - f(β+1)f(α)` for
//! `f(α, x) = Σ (α)_n Π(a_i)_n / (Π(b_i)_n n!) x^n` (so `₁F₁` when
//! `q = 1`) collapses to a terminating `₂q₊₂F₂q₊₁` at `-1`:
//!
//! ```text
//! φ_m = K · F(-m, α, a_i, 1-b_i-m, 1-t ; b_i, 1-a_i-m, 1-β-m, -t ; -1),
//! t = αm/(α+β),   K = -(β+1)_{m-1} Π(a_i)_m / ((m-1)! Π(b_i)_m).
//! ```
//!
//! `K` follows from `(α+1)_k/(α)_k - (β+1)_{m-k}/(β)_{m-k} =
//! ((α+β)k - αm)/(αβ)` together with the reflections
//! `(x)_{m-k} = (-1)^k (x)_m / (1-x-m)_k` and
//! `(m-k)! = (-1)^k m! / (-m)_k`. It is always negative, so the sum has
//! the sign of `α - β`.
//!
//! The pair `1-t` over `-t` is evaluated as `(1-t)_k/(-t)_k = 1 - k/t`,
//! which stays finite when `t` is a small integer (e.g. `α = β`, `m` even).

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lemmas::{check_truncated_chain, TruncatedChainReport};
use crate::rational::{self, factorial_table, pochhammer, Rational};
use crate::series::{phi_coefficients, HypSeriesSpec, Weights};

/// `Σ_{k=0}^{m} Π(u)_k / Π(l)_k · Π(1 + k/p) · (-1)^k / k!`.
///
/// `paired` holds the lower members `p` of upper/lower pairs `(p+1, p)`,
/// kept apart so that their ratio `(p+k)/p` never divides by a vanishing
/// Pochhammer symbol.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerminatingSum {
    pub m: usize,
    #[serde(with = "rational::serde_str::vec")]
    pub upper: Vec<Rational>,
    #[serde(with = "rational::serde_str::vec")]
    pub lower: Vec<Rational>,
    #[serde(with = "rational::serde_str::vec")]
    pub paired: Vec<Rational>,
}

impl TerminatingSum {
    /// Builds the sum from full parameter lists; `-m` must be among `upper`.
    /// Identical upper/lower entries cancel and `(p+1, p)` pairs are split off.
    pub fn new(m: usize, upper: Vec<Rational>, lower: Vec<Rational>) -> Result<Self> {
        let neg_m = -Rational::from_integer(m.into());
        let mut upper = upper;
        let Some(pos) = upper.iter().position(|u| *u == neg_m) else {
            return Err(Error::Domain(format!("upper parameters must include -{m}")));
        };
        upper.remove(pos);
        let mut lower = lower;
        let mut kept_upper = Vec::new();
        let mut paired = Vec::new();
        for u in upper {
            if let Some(i) = lower.iter().position(|l| *l == u) {
                lower.remove(i);
            } else if let Some(i) = lower.iter().position(|l| l + Rational::one() == u && !l.is_zero()) {
                paired.push(lower.remove(i));
            } else {
                kept_upper.push(u);
            }
        }
        kept_upper.insert(0, neg_m);
        let sum = TerminatingSum { m, upper: kept_upper, lower, paired };
        sum.check_poles()?;
        Ok(sum)
    }

    /// The shape whose value is tied to `φ_m` of the `qFq` family (see the
    /// module docs). `a` has `q-1` entries and `b` has `q`.
    pub fn qfq_shape(alpha: &Rational, beta: &Rational, a: &[Rational], b: &[Rational], m: usize) -> Result<Self> {
        if !alpha.is_positive() || !beta.is_positive() {
            return Err(Error::Domain("alpha and beta must be positive".into()));
        }
        if b.is_empty() || a.len() + 1 != b.len() {
            return Err(Error::Domain("need q-1 upper and q lower parameters".into()));
        }
        let one = Rational::one();
        let mm = Rational::from_integer(m.into());
        let t = alpha * &mm / (alpha + beta);
        let mut upper = vec![-mm.clone(), alpha.clone()];
        upper.extend(a.iter().cloned());
        upper.extend(b.iter().map(|bi| &one - bi - &mm));
        upper.push(&one - &t);
        let mut lower: Vec<Rational> = b.to_vec();
        lower.extend(a.iter().map(|ai| &one - ai - &mm));
        lower.push(&one - beta - &mm);
        lower.push(-t);
        Self::new(m, upper, lower)
    }

    /// `₄F₃(-m, a, 1-c-m, 1-am/(a+b); c, 1-b-m, -am/(a+b); -1)`.
    pub fn four_f_three(a: &Rational, b: &Rational, c: &Rational, m: usize) -> Result<Self> {
        Self::qfq_shape(a, b, &[], std::slice::from_ref(c), m)
    }

    fn check_poles(&self) -> Result<()> {
        for l in &self.lower {
            if let Some(k) = rational::as_nonneg_integer(&-l.clone()) {
                if k < self.m {
                    return Err(Error::Domain(format!("lower parameter {} vanishes within the sum", rational::show(l))));
                }
            }
        }
        Ok(())
    }

    /// The `m + 1` exact terms, `k = 0..=m`.
    pub fn terms(&self) -> Vec<Rational> {
        let fact = factorial_table(self.m);
        (0..=self.m)
            .map(|k| {
                let kk = Rational::from_integer(k.into());
                let mut t = Rational::one();
                for u in &self.upper {
                    t *= pochhammer(u, k);
                }
                for l in &self.lower {
                    t /= pochhammer(l, k);
                }
                for p in &self.paired {
                    t *= (p + &kk) / p;
                }
                t /= &fact[k];
                if k % 2 == 1 {
                    -t
                } else {
                    t
                }
            })
            .collect()
    }

    pub fn value(&self) -> Rational {
        eval_terminating(self)
    }
}

pub fn eval_terminating(sum: &TerminatingSum) -> Rational {
    sum.terms().into_iter().fold(Rational::zero(), |acc, t| acc + t)
}

/// The exact factor `K` with `φ_m = K · S` (module docs).
pub fn link_factor(beta: &Rational, a: &[Rational], b: &[Rational], m: usize) -> Rational {
    assert!(m >= 1, "link factor needs m >= 1");
    let mut k = -pochhammer(&(beta + Rational::one()), m - 1) / &factorial_table(m - 1)[m - 1];
    for ai in a {
        k *= pochhammer(ai, m);
    }
    for bi in b {
        k /= pochhammer(bi, m);
    }
    k
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LinkReport {
    pub m: usize,
    #[serde(with = "rational::serde_str")]
    pub phi_m: Rational,
    #[serde(with = "rational::serde_str")]
    pub sum: Rational,
    #[serde(with = "rational::serde_str")]
    pub factor: Rational,
    /// `φ_m == factor · sum` exactly.
    pub exact: bool,
    /// `sign(sum) == sign(α - β)`.
    pub sign_matches: bool,
}

impl LinkReport {
    pub fn passed(&self) -> bool {
        self.exact && self.sign_matches
    }
}

/// Computes `φ_m` by series multiplication and the terminating sum
/// independently, then checks `φ_m = K · S` and the sign of `S`.
pub fn check_qfq_coefficient_link(alpha: &Rational, beta: &Rational, a: &[Rational], b: &[Rational], m: usize) -> Result<LinkReport> {
    if m < 2 {
        return Err(Error::Domain(format!("need m >= 2, got {m}")));
    }
    let spec = HypSeriesSpec::upper(Weights::pfq_upper(a.to_vec(), b.to_vec()), m);
    let phi_m = phi_coefficients(&spec, alpha, beta, &Rational::one())?.swap_remove(m);
    let sum = TerminatingSum::qfq_shape(alpha, beta, a, b, m)?.value();
    let factor = link_factor(beta, a, b, m);
    Ok(LinkReport {
        m,
        exact: phi_m == &factor * &sum,
        sign_matches: rational::signum(&sum) == rational::signum(&(alpha - beta)),
        phi_m,
        sum,
        factor,
    })
}

/// The `₁F₁` case: `f = ₁F₁(·; c; x)`.
pub fn check_4f3_coefficient_link(a: &Rational, b: &Rational, c: &Rational, m: usize) -> Result<LinkReport> {
    if !c.is_positive() {
        return Err(Error::Domain("c must be positive".into()));
    }
    check_qfq_coefficient_link(a, b, &[], std::slice::from_ref(c), m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SumVerdict {
    Positive,
    NotPositive,
    /// The symmetric-function chain on `(a, b)` fails.
    SkippedHypothesis,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QfqSumReport {
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
    pub verdict: SumVerdict,
    pub chain: TruncatedChainReport,
}

/// Evaluates the `₂q₊₂F₂q₊₁` sum for `α > β > 0`; positivity is asserted
/// only when the truncated chain on `(a, b)` holds.
pub fn eval_qfq_sum(alpha: &Rational, beta: &Rational, a: &[Rational], b: &[Rational], m: usize) -> Result<QfqSumReport> {
    if !(alpha > beta && beta.is_positive()) {
        return Err(Error::Domain("need alpha > beta > 0".into()));
    }
    if m < 2 {
        return Err(Error::Domain(format!("need m >= 2, got {m}")));
    }
    let chain = check_truncated_chain(a, b)?;
    let value = TerminatingSum::qfq_shape(alpha, beta, a, b, m)?.value();
    let verdict = if !chain.holds {
        SumVerdict::SkippedHypothesis
    } else if value.is_positive() {
        SumVerdict::Positive
    } else {
        SumVerdict::NotPositive
    };
    Ok(QfqSumReport { value, verdict, chain })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    /// Term-by-term oracle on the raw parameter lists, no simplification.
    fn raw_sum(m: usize, upper: &[Rational], lower: &[Rational]) -> Rational {
        let mut total = Rational::zero();
        for k in 0..=m {
            let mut t = Rational::one();
            for u in upper {
                t *= pochhammer(u, k);
            }
            for l in lower {
                t /= pochhammer(l, k);
            }
            t /= pochhammer(&int(1), k);
            total += if k % 2 == 1 { -t } else { t };
        }
        total
    }

    #[test]
    fn matches_raw_sum_without_poles() {
        let (a, b, c, m) = (int(2), int(1), int(1), 2usize);
        let s = TerminatingSum::four_f_three(&a, &b, &c, m).unwrap();
        let t = ratio(4, 3); // am/(a+b)
        let raw = raw_sum(
            m,
            &[int(-2), a.clone(), int(1) - &c - int(2), int(1) - &t],
            &[c.clone(), int(1) - &b - int(2), -t],
        );
        assert_eq!(s.value(), raw);
        assert!(raw.is_positive());
    }

    #[test]
    fn reverse_order_is_identical() {
        let s = TerminatingSum::four_f_three(&ratio(3, 2), &ratio(1, 2), &int(2), 5).unwrap();
        let rev = s.terms().into_iter().rev().fold(Rational::zero(), |acc, t| acc + t);
        assert_eq!(rev, s.value());
        assert_eq!(s.terms().len(), 6);
    }

    #[test]
    fn equal_shifts_give_zero() {
        for m in 2..=6 {
            let s = TerminatingSum::four_f_three(&int(2), &int(2), &int(1), m).unwrap();
            assert_eq!(s.value(), Rational::zero(), "m = {m}");
            let r = check_4f3_coefficient_link(&int(2), &int(2), &int(1), m).unwrap();
            assert!(r.phi_m.is_zero() && r.exact);
        }
    }

    #[test]
    fn swap_flips_sign() {
        let x = TerminatingSum::four_f_three(&int(3), &ratio(1, 2), &int(1), 4).unwrap().value();
        let y = TerminatingSum::four_f_three(&ratio(1, 2), &int(3), &int(1), 4).unwrap().value();
        assert!(x.is_positive() && y.is_negative());
    }

    #[test]
    fn link_small_case() {
        // φ_2 for ₁F₁(·;1;x), α=2, β=1 by hand: f(α) = 1 + αx + α(α+1)x²/4
        // φ_2 = [3·4/4 + 3·1 + 1·2/4] - [2·3/4 + 2·2 + 1·6/4] = 13/2 - 7 = -1/2
        let r = check_4f3_coefficient_link(&int(2), &int(1), &int(1), 2).unwrap();
        assert_eq!(r.phi_m, ratio(-1, 2));
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.factor, int(-1));
        assert_eq!(r.sum, ratio(1, 2));
    }

    #[test]
    fn link_grid() {
        let vals = [ratio(1, 2), int(1), int(2), int(3)];
        for a in &vals {
            for b in &vals {
                for c in [int(1), int(2)] {
                    for m in 2..=5 {
                        let r = check_4f3_coefficient_link(a, b, &c, m).unwrap();
                        assert!(r.passed(), "a={a} b={b} c={c} m={m}: {r:?}");
                        assert!(r.factor.is_negative());
                    }
                }
            }
        }
    }

    #[test]
    fn qfq_link_two() {
        let r = check_qfq_coefficient_link(&int(2), &int(1), &[int(1)], &[int(1), int(2)], 3).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn qfq_sum_example_and_screening() {
        let r = eval_qfq_sum(&int(2), &int(1), &[int(1)], &[int(1), int(2)], 2).unwrap();
        assert_eq!(r.verdict, SumVerdict::Positive);
        let raw_t = ratio(4, 3);
        let raw = raw_sum(
            2,
            &[int(-2), int(2), int(1), int(1) - int(1) - int(2), int(1) - int(2) - int(2), int(1) - &raw_t],
            &[int(1), int(2), int(1) - int(1) - int(2), int(1) - int(1) - int(2), -raw_t],
        );
        assert_eq!(r.value, raw);
        // a1 below b1 b2/(b1+b2) = 2/3
        let s = eval_qfq_sum(&int(2), &int(1), &[ratio(1, 2)], &[int(1), int(2)], 2).unwrap();
        assert_eq!(s.verdict, SumVerdict::SkippedHypothesis);
        assert!(eval_qfq_sum(&int(1), &int(2), &[], &[int(1)], 2).is_err());
    }

    #[test]
    fn q_one_reduces_to_four_f_three() {
        let a = TerminatingSum::qfq_shape(&int(3), &int(2), &[], &[int(2)], 4).unwrap();
        let b = TerminatingSum::four_f_three(&int(3), &int(2), &int(2), 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn requires_terminating_parameter() {
        assert!(TerminatingSum::new(3, vec![int(1)], vec![int(2)]).is_err());
    }
}
