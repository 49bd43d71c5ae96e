//! Polynomial sign lemmas behind the coefficient theorems.
//!
//! For polynomials `A`, `B` with positive coefficients the sign pattern of
//! `A'B - B'A` is governed by the monotonicity of `a_k / b_k`. The same
//! machinery applied to `Π(a_i + x)` and `Π(b_i + x)` decides when the
//! ratio `R(x) = Π(a_i + x) / Π(b_i + x)` is monotone, through chains of
//! elementary symmetric polynomial ratios. All comparisons are done by
//! cross-multiplication.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;
use crate::rational::{self, Rational};

/// `a_0 + a_1 x + ... + a_n x^n` with a positive prefix of coefficients,
/// optionally followed by explicit zeros up to the declared degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PositivePolynomial {
    #[serde(with = "rational::serde_str::vec")]
    coeffs: Vec<Rational>,
}

impl PositivePolynomial {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("polynomial needs at least one coefficient".into()));
        }
        if let Some(c) = coeffs.iter().find(|c| !c.is_positive()) {
            return Err(Error::Domain(format!("coefficient {} is not positive", rational::show(c))));
        }
        Ok(PositivePolynomial { coeffs })
    }

    /// Positive `coeffs` padded with zero leading coefficients up to
    /// `degree`.
    pub fn padded(mut coeffs: Vec<Rational>, degree: usize) -> Result<Self> {
        let mut p = Self::new(std::mem::take(&mut coeffs))?;
        if degree + 1 < p.coeffs.len() {
            return Err(Error::Domain("declared degree below coefficient count".into()));
        }
        p.coeffs.resize(degree + 1, Rational::zero());
        Ok(p)
    }

    /// Monic `Π(c_i + x)`, whose coefficient of `x^k` is `e_{q-k}(c)`.
    pub fn from_roots_shifted(c: &[Rational]) -> Result<Self> {
        let mut e = elementary_symmetric(c);
        e.reverse();
        Self::new(e)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// Evaluates a coefficient list at `x` by Horner's rule.
pub fn eval_poly(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

fn nat(k: usize) -> Rational {
    Rational::from_integer(k.into())
}

/// Coefficients of `A'B - B'A`, lowest degree first, trailing zeros
/// trimmed (at least one entry is kept).
pub fn wronskian_coeffs(a: &PositivePolynomial, b: &PositivePolynomial) -> Vec<Rational> {
    let n = a.degree().max(b.degree());
    let get = |p: &PositivePolynomial, k: usize| p.coeffs.get(k).cloned().unwrap_or_else(Rational::zero);
    let mut out = vec![Rational::zero(); (2 * n).max(1)];
    // coefficient of x^(m-1) is sum over i+k=m, k>=1 of k (a_k b_i - a_i b_k)
    for k in 1..=n {
        for i in 0..=n {
            let term = nat(k) * (get(a, k) * get(b, i) - get(a, i) * get(b, k));
            out[i + k - 1] += term;
        }
    }
    while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainKind {
    /// `a_k / b_k` non-decreasing in `k`: `A'B - B'A` has non-negative coefficients.
    Increasing,
    /// `a_k / b_k` non-increasing in `k`: non-positive coefficients.
    Decreasing,
    /// Constant ratio.
    Both,
    Neither,
}

impl ChainKind {
    fn from_orderings(steps: &[Ordering]) -> Self {
        let up = steps.iter().all(|o| *o != Ordering::Less);
        let down = steps.iter().all(|o| *o != Ordering::Greater);
        match (up, down) {
            (true, true) => ChainKind::Both,
            (true, false) => ChainKind::Increasing,
            (false, true) => ChainKind::Decreasing,
            (false, false) => ChainKind::Neither,
        }
    }

    pub fn increasing(self) -> bool {
        matches!(self, ChainKind::Increasing | ChainKind::Both)
    }

    pub fn decreasing(self) -> bool {
        matches!(self, ChainKind::Decreasing | ChainKind::Both)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioChain {
    pub kind: ChainKind,
    /// `strict[k-1]` tells whether `a_k/b_k` and `a_{k-1}/b_{k-1}` differ.
    pub strict: Vec<bool>,
}

impl RatioChain {
    pub fn any_strict(&self) -> bool {
        self.strict.iter().any(|s| *s)
    }
}

/// Classifies the coefficient ratio sequence `a_k / b_k`.
pub fn check_ratio_chain(a: &PositivePolynomial, b: &PositivePolynomial) -> RatioChain {
    let n = a.degree().max(b.degree());
    let get = |p: &PositivePolynomial, k: usize| p.coeffs.get(k).cloned().unwrap_or_else(Rational::zero);
    // a_k/b_k vs a_{k-1}/b_{k-1}  <=>  a_k b_{k-1} vs a_{k-1} b_k  (b > 0)
    let steps: Vec<Ordering> = (1..=n).map(|k| (get(a, k) * get(b, k - 1)).cmp(&(get(a, k - 1) * get(b, k)))).collect();
    RatioChain { kind: ChainKind::from_orderings(&steps), strict: steps.iter().map(|o| *o != Ordering::Equal).collect() }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Witness {
    #[serde(with = "rational::serde_str::vec")]
    pub a: Vec<Rational>,
    #[serde(with = "rational::serde_str::vec")]
    pub b: Vec<Rational>,
    #[serde(with = "rational::serde_str")]
    pub x: Rational,
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NecessityReport {
    pub n: usize,
    pub pairs_checked: usize,
    pub violating: usize,
    pub witnesses: Vec<Witness>,
    /// Violating pairs for which no `x > 0` with `A'B - B'A < 0` was found.
    pub missing: usize,
    /// Pairs where "chain fails" and "some coefficient < 0" disagree.
    pub iff_mismatches: usize,
}

impl NecessityReport {
    pub fn passed(&self) -> bool {
        self.missing == 0 && self.iff_mismatches == 0 && self.witnesses.len() == self.violating
    }
}

/// Searches `x > 0` with `W(x) < 0`: first `k/8` for `k = 1..=80`, then
/// towards 0 or infinity depending on which end coefficient is negative.
pub fn find_negative_point(w: &[Rational]) -> Option<Rational> {
    let grid = (1..=80).map(|k| rational::ratio(k, 8));
    for x in grid {
        if eval_poly(w, &x).is_negative() {
            return Some(x);
        }
    }
    let lowest = w.iter().find(|c| !c.is_zero());
    let leading = w.iter().rev().find(|c| !c.is_zero());
    let (mut x, factor) = if lowest.is_some_and(Signed::is_negative) {
        (rational::ratio(1, 16), rational::ratio(1, 2))
    } else if leading.is_some_and(Signed::is_negative) {
        (rational::int(20), rational::int(2))
    } else {
        return None;
    };
    for _ in 0..200 {
        if eval_poly(w, &x).is_negative() {
            return Some(x);
        }
        x *= &factor;
    }
    None
}

/// Exhaustive check over all coefficient tuples from `{1/2, 1, 2, 3}` of
/// degree `n ∈ {1, 2}`: every pair violating the increasing chain must
/// have a point `x > 0` with `A'B - B'A < 0`.
pub fn necessity_witness(n: usize) -> Result<NecessityReport> {
    if !(1..=2).contains(&n) {
        return Err(Error::Domain(format!("necessity is only claimed for n = 1, 2; got {n}")));
    }
    let values = [rational::ratio(1, 2), rational::int(1), rational::int(2), rational::int(3)];
    let mut tuples: Vec<Vec<Rational>> = vec![vec![]];
    for _ in 0..=n {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                values.iter().map(move |v| {
                    let mut t = t.clone();
                    t.push(v.clone());
                    t
                })
            })
            .collect();
    }
    let pairs: Vec<(usize, usize)> = (0..tuples.len()).flat_map(|i| (0..tuples.len()).map(move |j| (i, j))).collect();
    let outcomes = par::map(&pairs, |&(i, j)| {
        let a = PositivePolynomial::new(tuples[i].clone()).expect("grid values are positive");
        let b = PositivePolynomial::new(tuples[j].clone()).expect("grid values are positive");
        let w = wronskian_coeffs(&a, &b);
        let violated = !check_ratio_chain(&a, &b).kind.increasing();
        let negative_coeff = w.iter().any(Signed::is_negative);
        let witness = if violated {
            find_negative_point(&w).map(|x| Witness { value: eval_poly(&w, &x), x, a: tuples[i].clone(), b: tuples[j].clone() })
        } else {
            None
        };
        (violated, violated != negative_coeff, witness)
    });
    let violating = outcomes.iter().filter(|o| o.0).count();
    let iff_mismatches = outcomes.iter().filter(|o| o.1).count();
    let witnesses: Vec<Witness> = outcomes.into_iter().filter_map(|o| o.2).collect();
    Ok(NecessityReport {
        n,
        pairs_checked: pairs.len(),
        violating,
        missing: violating - witnesses.len(),
        witnesses,
        iff_mismatches,
    })
}

/// `[e_0, e_1, ..., e_q]` of `c`, read off `Π(1 + c_i t)`.
pub fn elementary_symmetric(c: &[Rational]) -> Vec<Rational> {
    let mut e = vec![Rational::one()];
    for ci in c {
        e.push(Rational::zero());
        for m in (1..e.len()).rev() {
            let add = &e[m - 1] * ci;
            e[m] += add;
        }
    }
    e
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymmetricChainKind {
    /// `e_q(b)/e_q(a) >= ... >= e_1(b)/e_1(a) >= 1`: `R` increasing.
    Increasing,
    /// All inequalities reversed: `R` decreasing.
    Decreasing,
    /// Every ratio equals 1.
    Both,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    /// `e_m(b) / e_m(a)` for `m = 1..=q`.
    #[serde(with = "rational::serde_str::vec")]
    pub ratios: Vec<Rational>,
    pub kind: SymmetricChainKind,
}

fn check_positive(name: &str, xs: &[Rational]) -> Result<()> {
    match xs.iter().find(|x| !x.is_positive()) {
        Some(x) => Err(Error::Domain(format!("{name} entries must be positive, got {}", rational::show(x)))),
        None => Ok(()),
    }
}

/// Walks the chain `r_q ? r_{q-1} ? ... ? r_1 ? 1` where `r_m = num_m/den_m`,
/// comparing by cross-multiplication. Returns the orderings of consecutive
/// links, the anchor step last.
fn chain_orderings(num: &[Rational], den: &[Rational]) -> Vec<Ordering> {
    let q = num.len();
    let mut steps = Vec::with_capacity(q);
    for m in (2..=q).rev() {
        // r_m vs r_{m-1}
        steps.push((&num[m - 1] * &den[m - 2]).cmp(&(&num[m - 2] * &den[m - 1])));
    }
    if q > 0 {
        steps.push(num[0].cmp(&den[0]));
    }
    steps
}

fn symmetric_kind(steps: &[Ordering]) -> SymmetricChainKind {
    // every link `>=` is the increasing chain, every link `<=` the decreasing one
    match ChainKind::from_orderings(steps) {
        ChainKind::Both => SymmetricChainKind::Both,
        ChainKind::Increasing => SymmetricChainKind::Increasing,
        ChainKind::Decreasing => SymmetricChainKind::Decreasing,
        ChainKind::Neither => SymmetricChainKind::Neither,
    }
}

/// Classifies the symmetric-function chain of `(a, b)`, equal lengths.
pub fn check_symmetric_chain(a: &[Rational], b: &[Rational]) -> Result<ChainReport> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::Domain("parameter lists must be non-empty and of equal length".into()));
    }
    check_positive("a", a)?;
    check_positive("b", b)?;
    let ea = elementary_symmetric(a);
    let eb = elementary_symmetric(b);
    let steps = chain_orderings(&eb[1..], &ea[1..]);
    let ratios = (1..=a.len()).map(|m| &eb[m] / &ea[m]).collect();
    Ok(ChainReport { ratios, kind: symmetric_kind(&steps) })
}

/// The chain used when the leading upper parameters vanish: `q-1` upper
/// values `a` against `q` lower values `b`, requiring
/// `e_q(b)/e_{q-1}(a) <= e_{q-1}(b)/e_{q-2}(a) <= ... <= e_1(b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedChainReport {
    /// `e_m(b) / e_{m-1}(a)` for `m = 1..=q`.
    #[serde(with = "rational::serde_str::vec")]
    pub ratios: Vec<Rational>,
    pub holds: bool,
}

pub fn check_truncated_chain(a: &[Rational], b: &[Rational]) -> Result<TruncatedChainReport> {
    if b.is_empty() || a.len() + 1 != b.len() {
        return Err(Error::Domain("need q-1 upper and q lower parameters".into()));
    }
    check_positive("a", a)?;
    check_positive("b", b)?;
    let ea = elementary_symmetric(a);
    let eb = elementary_symmetric(b);
    let q = b.len();
    let ratios = (1..=q).map(|m| &eb[m] / &ea[m - 1]).collect();
    // r_m <= r_{m-1}  <=>  e_m(b) e_{m-2}(a) <= e_{m-1}(b) e_{m-1}(a)
    let holds = (2..=q).all(|m| &eb[m] * &ea[m - 2] <= &eb[m - 1] * &ea[m - 1]);
    Ok(TruncatedChainReport { ratios, holds })
}

/// The `q = 2` case of the truncated chain: `a_1 >= b_1 b_2 / (b_1 + b_2)`.
pub fn two_f_two_condition(a1: &Rational, b1: &Rational, b2: &Rational) -> bool {
    a1 * (b1 + b2) >= b1 * b2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    /// `a` and `b` agree as multisets, so `R ≡ 1`.
    Constant,
    /// The chain conditions fail both ways and the lemma says nothing.
    UndeterminedByLemma,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RMonotoneReport {
    pub verdict: Monotonicity,
    pub chain: ChainReport,
    /// Coefficients of the numerator of `R'`, i.e. `A'B - B'A`.
    #[serde(with = "rational::serde_str::vec")]
    pub wronskian: Vec<Rational>,
    /// The coefficient signs and sampled values of `R'` agree with the verdict.
    pub cross_checked: bool,
}

/// Monotonicity of `R(x) = Π(a_i + x) / Π(b_i + x)` on `(0, ∞)`.
pub fn ratio_r_monotone(a: &[Rational], b: &[Rational]) -> Result<RMonotoneReport> {
    let chain = check_symmetric_chain(a, b)?;
    let pa = PositivePolynomial::from_roots_shifted(a)?;
    let pb = PositivePolynomial::from_roots_shifted(b)?;
    let wronskian = wronskian_coeffs(&pa, &pb);
    let verdict = match chain.kind {
        SymmetricChainKind::Both => Monotonicity::Constant,
        SymmetricChainKind::Increasing => Monotonicity::Increasing,
        SymmetricChainKind::Decreasing => Monotonicity::Decreasing,
        SymmetricChainKind::Neither => Monotonicity::UndeterminedByLemma,
    };
    let samples: Vec<Rational> = (1..=80).map(|k| eval_poly(&wronskian, &rational::ratio(k, 8))).collect();
    let cross_checked = match verdict {
        Monotonicity::Constant => wronskian.iter().all(Zero::is_zero),
        Monotonicity::Increasing => {
            !wronskian.iter().any(Signed::is_negative) && samples.iter().all(Signed::is_positive)
        }
        Monotonicity::Decreasing => {
            !wronskian.iter().any(Signed::is_positive) && samples.iter().all(Signed::is_negative)
        }
        Monotonicity::UndeterminedByLemma => true,
    };
    Ok(RMonotoneReport { verdict, chain, wronskian, cross_checked })
}
