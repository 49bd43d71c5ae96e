//! Executable checks of the coefficient-sign, bound and pointwise claims.
//!
//! Coefficient claims are decided with exact rationals (or certified
//! intervals for the gamma family). Pointwise claims use certified series
//! evaluation; overlapping enclosures give `Inconclusive`, never a pass.

mod bounds;
mod coefficients;
mod pointwise;

pub use bounds::{verify_turan, verify_two_sided, BoundPoint, TwoSidedBoundReport};
pub use coefficients::{verify_gamma_shift, verify_lower_shift, verify_pfq_chain, verify_upper_shift, SignReport};
pub use pointwise::{
    verify_gauss_log_concave, verify_gauss_log_convex, verify_gauss_lower_log_convex, verify_kummer_diagonal_log_convex,
    verify_kummer_log_concave, verify_kummer_lower_log_convex, PointCheck, PointwiseReport,
};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Violated,
    Inconclusive,
}

impl Verdict {
    /// Worst of two verdicts: any violation dominates, then inconclusive.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Violated, _) | (_, Violated) => Violated,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Verified,
        }
    }
}

/// Every claim the toolkit can check, named by what it asserts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    /// Sign of `f(a+δ)f(b) - f(b+δ)f(a)` coefficients, upper-factor family.
    UpperShift,
    /// Negativity of the gamma-factor product difference.
    GammaShift,
    /// Negativity of the lower-factor product difference.
    LowerShift,
    /// Two-sided gamma-ratio bound on the product ratio.
    TwoSidedBound,
    /// `a/(a+1) < f(a+2)f(a)/f(a+1)^2 < 1`.
    TuranBound,
    /// `a ↦ ₁F₁(a; c; x)` log-concave, both signs of `x`.
    KummerLogConcave,
    /// `c ↦ ₁F₁(a; c; x)` log-convex.
    KummerLowerLogConvex,
    /// `μ ↦ ₁F₁(a+μ; c+μ; x)` log-convex.
    KummerDiagonalLogConvex,
    /// `a ↦ ₂F₁(a, b; c; x)` log-concave (`b > c` or `b < 0`).
    GaussLogConcave,
    /// `a ↦ ₂F₁(a, b; c; x)` log-convex (`c > b > 0`).
    GaussLogConvex,
    /// `c ↦ ₂F₁(a, b; c; x)` log-convex.
    GaussLowerLogConvex,
    /// `q+1Fq` coefficient signs screened by the symmetric-function chain.
    PfqChain,
    /// Sign of the terminating `₄F₃(-1)` and its link to `φ_m`.
    TerminatingSum,
    /// Positivity of the terminating `₂q₊₂F₂q₊₁(-1)`.
    QfqSum,
    /// `A'B - B'A` sign lemma with necessity in degrees 1 and 2.
    RatioLemma,
    /// Monotonicity of `Π(a_i+x)/Π(b_i+x)` from the symmetric chain.
    SymmetricChain,
    KummerTransform,
    EulerPfaff,
}

impl TheoremId {
    pub const ALL: [TheoremId; 18] = [
        TheoremId::UpperShift,
        TheoremId::GammaShift,
        TheoremId::LowerShift,
        TheoremId::TwoSidedBound,
        TheoremId::TuranBound,
        TheoremId::KummerLogConcave,
        TheoremId::KummerLowerLogConvex,
        TheoremId::KummerDiagonalLogConvex,
        TheoremId::GaussLogConcave,
        TheoremId::GaussLogConvex,
        TheoremId::GaussLowerLogConvex,
        TheoremId::PfqChain,
        TheoremId::TerminatingSum,
        TheoremId::QfqSum,
        TheoremId::RatioLemma,
        TheoremId::SymmetricChain,
        TheoremId::KummerTransform,
        TheoremId::EulerPfaff,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::UpperShift => "upper-shift",
            TheoremId::GammaShift => "gamma-shift",
            TheoremId::LowerShift => "lower-shift",
            TheoremId::TwoSidedBound => "two-sided-bound",
            TheoremId::TuranBound => "turan-bound",
            TheoremId::KummerLogConcave => "kummer-log-concave",
            TheoremId::KummerLowerLogConvex => "kummer-lower-log-convex",
            TheoremId::KummerDiagonalLogConvex => "kummer-diagonal-log-convex",
            TheoremId::GaussLogConcave => "gauss-log-concave",
            TheoremId::GaussLogConvex => "gauss-log-convex",
            TheoremId::GaussLowerLogConvex => "gauss-lower-log-convex",
            TheoremId::PfqChain => "pfq-chain",
            TheoremId::TerminatingSum => "terminating-sum",
            TheoremId::QfqSum => "qfq-sum",
            TheoremId::RatioLemma => "ratio-lemma",
            TheoremId::SymmetricChain => "symmetric-chain",
            TheoremId::KummerTransform => "kummer-transform",
            TheoremId::EulerPfaff => "euler-pfaff",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let key = s.trim().to_ascii_lowercase();
        let alias = match key.as_str() {
            "thm1" => Some(TheoremId::UpperShift),
            "thm2" => Some(TheoremId::GammaShift),
            "thm3" => Some(TheoremId::LowerShift),
            _ => None,
        };
        alias
            .or_else(|| TheoremId::ALL.into_iter().find(|t| t.name() == key))
            .ok_or_else(|| Error::Config(format!("unknown theorem selector {s:?}")))
    }
}

/// Ordered `name -> rational` parameter record used in reports.
pub type Params = BTreeMap<String, String>;

pub fn params<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a Rational)>) -> Params {
    pairs.into_iter().map(|(k, v)| (k.to_string(), rational::show(v))).collect()
}

pub fn list_param(xs: &[Rational]) -> String {
    let parts: Vec<String> = xs.iter().map(rational::show).collect();
    format!("[{}]", parts.join(","))
}
