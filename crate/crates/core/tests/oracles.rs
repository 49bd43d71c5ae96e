//! Worked examples checked against independent oracles written here:
//! brute-force double sums, raw term-by-term sums, plain convolution and
//! reference constants computed with mpmath at 50 digits.

use num_traits::{One, Signed, Zero};
use turankit::eval::{eval_pfq, EvalOptions, PFQSpec};
use turankit::gamma::{gamma_ratio, log_gamma, product_ratio_bound};
use turankit::interval::{CertifiedInterval, CertifiedSign, Precision};
use turankit::lemmas::{
    check_ratio_chain, check_symmetric_chain, elementary_symmetric, ratio_r_monotone, wronskian_coeffs, ChainKind,
    Monotonicity, PositivePolynomial, SymmetricChainKind,
};
use turankit::rational::{int, parse_rational, ratio, Rational};
use turankit::series::{build_series, lambda_coefficients, mk_profiles, phi_coefficients, psi_coefficients, HypSeriesSpec, Weights};
use turankit::sums::{check_4f3_coefficient_link, eval_qfq_sum, SumVerdict, TerminatingSum};
use turankit::verify::{verify_turan, verify_two_sided, Verdict};

fn r(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

fn poch(a: &Rational, n: usize) -> Rational {
    (0..n).fold(Rational::one(), |acc, i| acc * (a + int(i as i64)))
}

fn fact(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, i| acc * int(i as i64))
}

fn contains_f64(iv: &CertifiedInterval, v: f64, slack: f64) -> bool {
    iv.lo_f64() - slack <= v && v <= iv.hi_f64() + slack
}

// ---- exact arithmetic -------------------------------------------------

#[test]
fn pochhammer_examples() {
    assert_eq!(turankit::rational::pochhammer(&ratio(1, 2), 3), ratio(15, 8));
    assert_eq!(turankit::rational::pochhammer(&ratio(-7, 3), 0), int(1));
    assert_eq!(turankit::rational::pochhammer(&int(3), 4), int(360));
}

#[test]
fn log_gamma_and_ratio_reference_values() {
    let p = Precision::default();
    assert!(log_gamma(&int(1), p).unwrap().contains(&Rational::zero()));
    assert!(log_gamma(&int(2), p).unwrap().contains(&Rational::zero()));
    // ln Γ(1/2) = ln √π
    let lg = log_gamma(&ratio(1, 2), p).unwrap();
    assert!(contains_f64(&lg, 0.572_364_942_924_700_1, 1e-15));
    assert!(lg.width() < ratio(1, 1_000_000_000_000));
    // Γ(1)/Γ(1/2) = 1/√π
    let g = gamma_ratio(&ratio(1, 2), &ratio(1, 2), p).unwrap();
    assert!(contains_f64(&g, 0.564_189_583_547_756_3, 1e-15));
    assert_eq!(gamma_ratio(&ratio(7, 3), &int(1), p).unwrap(), CertifiedInterval::exact(ratio(7, 3)));
    assert_eq!(gamma_ratio(&int(3), &int(2), p).unwrap(), CertifiedInterval::exact(int(12)));
}

// ---- series engine ------------------------------------------------------

#[test]
fn weight_and_series_examples() {
    assert_eq!(Weights::kummer_upper(int(2)).weight(2).unwrap(), ratio(1, 6));
    assert_eq!(Weights::gauss_upper(int(3), int(1)).weight(1).unwrap(), int(3));
    assert_eq!(Weights::kummer_lower(int(1)).weight(3).unwrap(), int(1));

    // w_n = 1, a = 2: (1 - x)^{-2}
    let binom = build_series(&HypSeriesSpec::upper(Weights::constant(), 3), &int(2)).unwrap();
    assert_eq!(binom.coeffs(), &[int(1), int(2), int(3), int(4)]);
    // 1F1(1; 1; x) = e^x
    let exp = build_series(&HypSeriesSpec::upper(Weights::kummer_upper(int(1)), 4), &int(1)).unwrap();
    assert_eq!(exp.coeffs(), &[int(1), int(1), ratio(1, 2), ratio(1, 6), ratio(1, 24)]);
}

/// `φ_m` straight from its double-sum definition.
fn phi_oracle(w: &[Rational], a: &Rational, b: &Rational, d: &Rational, m: usize) -> Rational {
    (0..=m)
        .map(|k| {
            let j = m - k;
            &w[k] * &w[j] * (poch(&(a + d), k) * poch(b, j) - poch(&(b + d), k) * poch(a, j)) / (fact(k) * fact(j))
        })
        .fold(Rational::zero(), |s, t| s + t)
}

/// `λ_m` straight from its double-sum definition.
fn lambda_oracle(w: &[Rational], a: &Rational, b: &Rational, d: &Rational, m: usize) -> Rational {
    (0..=m)
        .map(|k| {
            let j = m - k;
            &w[k] * &w[j] * (Rational::one() / (poch(&(a + d), k) * poch(b, j)) - Rational::one() / (poch(&(b + d), k) * poch(a, j)))
        })
        .fold(Rational::zero(), |s, t| s + t)
}

#[test]
fn phi_matches_double_sum() {
    for (weights, a, b, d) in [
        (Weights::kummer_upper(int(1)), int(1), int(2), int(1)),
        (Weights::kummer_upper(int(3)), int(1), int(2), ratio(1, 2)),
        (Weights::gauss_upper(ratio(1, 2), int(3)), ratio(3, 2), int(3), int(2)),
    ] {
        let spec = HypSeriesSpec::upper(weights.clone(), 12);
        let w = weights.table(12).unwrap();
        let phi = phi_coefficients(&spec, &a, &b, &d).unwrap();
        assert!(phi[0].is_zero() && phi[1].is_zero());
        for m in 0..=12 {
            assert_eq!(phi[m], phi_oracle(&w, &a, &b, &d, m), "m = {m}");
        }
        let swapped = phi_coefficients(&spec, &b, &a, &d).unwrap();
        assert!(phi.iter().zip(&swapped).all(|(x, y)| *x == -y));
    }
}

#[test]
fn phi_two_by_hand() {
    // c = 3, a = 1, b = 2, δ = 1/2, m = 2: expand the three k terms
    let w = Weights::kummer_upper(int(3)).table(2).unwrap();
    let hand = {
        let (a, b, d) = (int(1), int(2), ratio(1, 2));
        let t0 = &w[0] * &w[2] * (poch(&b, 2) - poch(&a, 2)) / int(2);
        let t1 = &w[1] * &w[1] * ((&a + &d) * &b - (&b + &d) * &a);
        let t2 = &w[2] * &w[0] * (poch(&(&a + &d), 2) - poch(&(&b + &d), 2)) / int(2);
        t0 + t1 + t2
    };
    let spec = HypSeriesSpec::upper(Weights::kummer_upper(int(3)), 2);
    assert_eq!(phi_coefficients(&spec, &int(1), &int(2), &ratio(1, 2)).unwrap()[2], hand);
    assert!(hand.is_positive());
}

#[test]
fn mk_profiles_sum_to_zero_and_change_sign_once() {
    for (a, b, d) in [(int(1), int(2), int(1)), (ratio(1, 2), int(3), ratio(1, 2)), (ratio(3, 2), int(2), int(2))] {
        for p in mk_profiles(&a, &b, &d, 30) {
            assert!(p.sum().is_zero(), "m = {}", p.m);
            assert_eq!(p.sign_changes(), 1, "m = {}", p.m);
            assert!(p.values[0].is_negative(), "m = {}", p.m);
        }
    }
}

#[test]
fn lambda_matches_double_sum() {
    let weights = Weights::kummer_lower(int(1));
    let w = weights.table(10).unwrap();
    let spec = HypSeriesSpec::lower(weights, 10);
    let lambda = lambda_coefficients(&spec, &int(1), &int(2), &int(1)).unwrap();
    assert!(lambda[0].is_zero());
    assert!(lambda[1].is_negative());
    for m in 0..=10 {
        assert_eq!(lambda[m], lambda_oracle(&w, &int(1), &int(2), &int(1), m));
    }
    let swapped = lambda_coefficients(&spec, &int(2), &int(1), &int(1)).unwrap();
    assert!(lambda.iter().zip(&swapped).all(|(x, y)| *x == -y));
}

#[test]
fn psi_signs_integer_delta_exact_oracle() {
    // Γ(b+δ)Γ(a)/(Γ(a+δ)Γ(b)) = (b)_δ/(a)_δ for integer δ
    let (a, b, d) = (int(1), int(2), int(1));
    let weights = Weights::kummer_gamma(int(2));
    let spec = HypSeriesSpec::gamma(weights.clone(), 20);
    let psi = psi_coefficients(&spec, &a, &b, &d, Precision::default()).unwrap();
    let g = poch(&b, 1) / poch(&a, 1);
    let w = weights.table(20).unwrap();
    for (m, c) in psi.coefficients.iter().enumerate() {
        let s1: Rational = (0..=m).map(|k| &w[k] * &w[m - k] * poch(&(&a + &d), k) * poch(&b, m - k)).sum();
        let s2: Rational = (0..=m).map(|k| &w[k] * &w[m - k] * poch(&(&b + &d), k) * poch(&a, m - k)).sum();
        assert_eq!(c.sign, CertifiedSign::from_rational(&(&s1 - &g * &s2)));
        assert_eq!(c.sign, CertifiedSign::Negative, "m = {m}");
    }
}

#[test]
fn psi_signs_stable_under_doubled_precision() {
    let spec = HypSeriesSpec::gamma(Weights::kummer_gamma(int(2)), 20);
    let p = Precision::default();
    let lo = psi_coefficients(&spec, &ratio(1, 2), &ratio(3, 2), &ratio(1, 2), p).unwrap();
    let hi = psi_coefficients(&spec, &ratio(1, 2), &ratio(3, 2), &ratio(1, 2), p.doubled()).unwrap();
    for (x, y) in lo.coefficients.iter().zip(&hi.coefficients) {
        assert_eq!(x.sign, CertifiedSign::Negative);
        assert_eq!(x.sign, y.sign);
    }
}

// ---- numeric evaluation -------------------------------------------------

/// Plain f64 partial sums, accurate enough for moderate arguments.
fn naive_1f1(a: f64, c: f64, x: f64) -> f64 {
    let (mut term, mut sum) = (1.0, 1.0);
    for n in 0..400 {
        let n = n as f64;
        term *= (a + n) / (c + n) * x / (n + 1.0);
        sum += term;
    }
    sum
}

#[test]
fn closed_form_values() {
    let o = EvalOptions::default();
    assert_eq!(eval_pfq(&PFQSpec::kummer(int(2), int(3)), &int(0), o).unwrap().value, CertifiedInterval::one());
    let e = eval_pfq(&PFQSpec::kummer(int(1), int(1)), &int(1), o).unwrap();
    assert!(contains_f64(&e.value, std::f64::consts::E, 1e-15));
    let two = eval_pfq(&PFQSpec::gauss(int(1), int(2), int(2)), &ratio(1, 2), o).unwrap();
    assert!(two.value.contains(&int(2)));
    let k = eval_pfq(&PFQSpec::kummer(ratio(1, 3), ratio(5, 2)), &ratio(-7, 2), o).unwrap();
    assert!(contains_f64(&k.value, naive_1f1(1.0 / 3.0, 2.5, -3.5), 1e-12));
}

#[test]
fn two_sided_bound_reference_values() {
    // mpmath: Q(50) for a = 1, b = 2, δ = 1, c = 3
    let spec = HypSeriesSpec::upper(Weights::kummer_upper(int(3)), 40);
    let rep = verify_two_sided(&spec, &int(1), &int(2), &int(1), &[ratio(1, 1000), int(50)], EvalOptions::default()).unwrap();
    assert_eq!(rep.lower_bound, CertifiedInterval::exact(ratio(1, 2)));
    let q0 = rep.points[0].ratio.as_ref().unwrap();
    assert!(1.0 - q0.mid_f64() < 1e-3);
    let q50 = rep.points[1].ratio.as_ref().unwrap();
    assert!(contains_f64(q50, 0.520_62, 5e-6));
    assert_eq!(product_ratio_bound(&int(1), &int(2), &int(1), Precision::default()).unwrap(), CertifiedInterval::exact(ratio(1, 2)));
}

#[test]
fn turan_a2_c5_x3_inside() {
    let spec = HypSeriesSpec::upper(Weights::kummer_upper(int(5)), 40);
    let rep = verify_turan(&spec, &int(2), &int(1), &[int(3)], EvalOptions::default()).unwrap();
    assert_eq!(rep.verdict, Verdict::Verified);
    let oracle = naive_1f1(4.0, 5.0, 3.0) * naive_1f1(2.0, 5.0, 3.0) / naive_1f1(3.0, 5.0, 3.0).powi(2);
    let q = rep.points[0].ratio.as_ref().unwrap();
    assert!(contains_f64(q, oracle, 1e-12));
    assert!(oracle > 2.0 / 3.0 && oracle < 1.0);
}

// ---- structural lemmas --------------------------------------------------

fn poly(cs: &[&str]) -> PositivePolynomial {
    PositivePolynomial::new(cs.iter().map(|c| r(c)).collect()).unwrap()
}

/// `A'B - B'A` by multiplying out derivative and polynomial.
fn wronskian_oracle(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let deriv = |p: &[Rational]| -> Vec<Rational> { p.iter().enumerate().skip(1).map(|(k, c)| c * int(k as i64)).collect() };
    let mul = |p: &[Rational], q: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); (p.len() + q.len()).saturating_sub(1).max(1)];
        for (i, x) in p.iter().enumerate() {
            for (j, y) in q.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    };
    let l = mul(&deriv(a), b);
    let rr = mul(&deriv(b), a);
    let n = l.len().max(rr.len());
    let mut out: Vec<Rational> = (0..n).map(|i| l.get(i).cloned().unwrap_or_default() - rr.get(i).cloned().unwrap_or_default()).collect();
    while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

#[test]
fn wronskian_examples() {
    let a = poly(&["1", "2"]);
    let b = poly(&["1", "1"]);
    assert_eq!(wronskian_coeffs(&a, &b), vec![int(1)]);
    assert_eq!(wronskian_coeffs(&a, &a), vec![int(0)]);
    // degree-4 chain pair: ratios 1/2, 1, 3/2, 3, 4
    let ca = ["1", "3", "3", "6", "2"];
    let cb = ["2", "3", "2", "2", "1/2"];
    let (pa, pb) = (poly(&ca), poly(&cb));
    assert_eq!(check_ratio_chain(&pa, &pb).kind, ChainKind::Increasing);
    let w = wronskian_coeffs(&pa, &pb);
    let oracle = wronskian_oracle(&ca.map(r), &cb.map(r));
    assert_eq!(w, oracle);
    assert!(w.iter().all(|c| !c.is_negative()) && w.iter().any(Signed::is_positive));
}

#[test]
fn ratio_chain_examples() {
    assert_eq!(check_ratio_chain(&poly(&["1", "1", "2"]), &poly(&["1", "1", "1"])).kind, ChainKind::Increasing);
    assert_eq!(check_ratio_chain(&poly(&["1", "2", "1"]), &poly(&["1", "1", "1"])).kind, ChainKind::Neither);
    assert_eq!(check_ratio_chain(&poly(&["2", "4"]), &poly(&["1", "2"])).kind, ChainKind::Both);
    // degree 1, decreasing ratio: the single coefficient a1 b0 - a0 b1 is negative
    let w = wronskian_coeffs(&poly(&["1", "1"]), &poly(&["1", "2"]));
    assert_eq!(w, vec![int(-1)]);
    let w2 = wronskian_coeffs(&poly(&["1", "2", "1"]), &poly(&["1", "1", "1"]));
    assert!(w2.iter().any(Signed::is_negative));
    assert_eq!(w2, wronskian_oracle(&[int(1), int(2), int(1)], &[int(1), int(1), int(1)]));
}

#[test]
fn symmetric_function_examples() {
    assert_eq!(elementary_symmetric(&[int(1), int(2), int(3)]), vec![int(1), int(6), int(11), int(6)]);
    let e = elementary_symmetric(&vec![ratio(2, 3); 4]);
    for (m, binom) in [1, 4, 6, 4, 1].iter().enumerate() {
        assert_eq!(e[m], int(*binom) * poch_pow(&ratio(2, 3), m));
    }
    let neither = check_symmetric_chain(&[int(1), int(4)], &[int(2), int(2)]).unwrap();
    assert_eq!(neither.ratios, vec![ratio(4, 5), int(1)]);
    assert_eq!(neither.kind, SymmetricChainKind::Neither);
    let inc = check_symmetric_chain(&[int(1), int(1)], &[int(2), int(3)]).unwrap();
    assert_eq!(inc.ratios, vec![ratio(5, 2), int(6)]);
    assert_eq!(inc.kind, SymmetricChainKind::Increasing);
    assert_eq!(ratio_r_monotone(&[int(1), int(1)], &[int(2), int(3)]).unwrap().verdict, Monotonicity::Increasing);
    let same = ratio_r_monotone(&[int(2), int(5)], &[int(2), int(5)]).unwrap();
    assert_eq!(same.verdict, Monotonicity::Constant);
    assert!(same.wronskian.iter().all(Zero::is_zero));
}

fn poch_pow(x: &Rational, m: usize) -> Rational {
    (0..m).fold(Rational::one(), |acc, _| acc * x)
}

// ---- finite sums --------------------------------------------------------

/// Raw `Σ_k Π(u)_k/Π(l)_k (-1)^k/k!` over uncancelled parameter lists.
fn raw_terminating(m: usize, upper: &[Rational], lower: &[Rational]) -> Rational {
    (0..=m)
        .map(|k| {
            let num: Rational = upper.iter().map(|u| poch(u, k)).product();
            let den: Rational = lower.iter().map(|l| poch(l, k)).product();
            let sign = if k % 2 == 0 { int(1) } else { int(-1) };
            sign * num / (den * fact(k))
        })
        .sum()
}

fn raw_qfq(alpha: &Rational, beta: &Rational, a: &[Rational], b: &[Rational], m: usize) -> Rational {
    let one = Rational::one();
    let mm = int(m as i64);
    let t = alpha * &mm / (alpha + beta);
    let mut upper = vec![-mm.clone(), alpha.clone()];
    upper.extend(a.iter().cloned());
    upper.extend(b.iter().map(|x| &one - x - &mm));
    upper.push(&one - &t);
    let mut lower = b.to_vec();
    lower.extend(a.iter().map(|x| &one - x - &mm));
    lower.push(&one - beta - &mm);
    lower.push(-t);
    raw_terminating(m, &upper, &lower)
}

#[test]
fn four_f_three_examples() {
    let s = TerminatingSum::four_f_three(&int(2), &int(1), &int(1), 2).unwrap();
    assert_eq!(s.terms().len(), 3);
    let v = s.value();
    assert!(v.is_positive());
    assert_eq!(v, raw_qfq(&int(2), &int(1), &[], &[int(1)], 2));
    let forward: Rational = s.terms().into_iter().sum();
    let backward: Rational = s.terms().into_iter().rev().sum();
    assert_eq!(forward, backward);
    let swapped = TerminatingSum::four_f_three(&int(1), &int(2), &int(1), 2).unwrap().value();
    assert!(swapped.is_negative());
}

#[test]
fn four_f_three_link_grid() {
    let values = [ratio(1, 2), int(1), int(2), int(3)];
    for a in &values {
        for b in &values {
            for c in [int(1), int(2)] {
                for m in 2..=5 {
                    let rep = check_4f3_coefficient_link(a, b, &c, m).unwrap();
                    assert!(rep.exact && rep.sign_matches, "a={a} b={b} c={c} m={m}");
                    // φ_m from the double-sum oracle
                    let w = Weights::kummer_upper(c.clone()).table(m).unwrap();
                    assert_eq!(rep.phi_m, phi_oracle(&w, a, b, &int(1), m));
                    if a == b {
                        assert!(rep.sum.is_zero() && rep.phi_m.is_zero());
                    }
                }
            }
        }
    }
    let first = check_4f3_coefficient_link(&int(2), &int(1), &int(1), 2).unwrap();
    assert_eq!(first.factor, int(-1));
    assert_eq!(first.sum, ratio(1, 2));
}

#[test]
fn qfq_examples() {
    let rep = eval_qfq_sum(&int(2), &int(1), &[int(1)], &[int(1), int(2)], 2).unwrap();
    assert_eq!(rep.verdict, SumVerdict::Positive);
    assert_eq!(rep.value, raw_qfq(&int(2), &int(1), &[int(1)], &[int(1), int(2)], 2));
    // q = 1 is the 4F3 shape
    assert_eq!(
        eval_qfq_sum(&int(3), &ratio(1, 2), &[], &[int(2)], 4).unwrap().value,
        TerminatingSum::four_f_three(&int(3), &ratio(1, 2), &int(2), 4).unwrap().value()
    );
    // b1 b2/(b1 + b2) = 2/3 for b = (1, 2)
    let admit = eval_qfq_sum(&int(2), &int(1), &[ratio(2, 3)], &[int(1), int(2)], 3).unwrap();
    assert_eq!(admit.verdict, SumVerdict::Positive);
    let reject = eval_qfq_sum(&int(2), &int(1), &[ratio(1, 2)], &[int(1), int(2)], 3).unwrap();
    assert_eq!(reject.verdict, SumVerdict::SkippedHypothesis);
}
