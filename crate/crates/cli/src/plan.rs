//! Turns parsed flags into a list of suite cases.

use turankit::error::{Error, Result};
use turankit::rational::{parse_rational, Rational};
use turankit::series::{HypSeriesSpec, Weights};
use turankit::suite::{default_cases, pointwise_grid, random_cases, Case, SuiteOptions};
use turankit::verify::TheoremId;

use crate::args::{FamilyArg, GridArg, VerifyArgs};

pub fn parse_selection(text: &str) -> Result<Vec<TheoremId>> {
    if text.trim().eq_ignore_ascii_case("all") {
        return Ok(TheoremId::ALL.to_vec());
    }
    let mut out = Vec::new();
    for part in text.split(',').filter(|p| !p.trim().is_empty()) {
        let t: TheoremId = part.parse()?;
        if !out.contains(&t) {
            out.push(t);
        }
    }
    if out.is_empty() {
        return Err(Error::Config("empty theorem selection".into()));
    }
    Ok(out)
}

pub fn parse_list(text: &str) -> Result<Vec<Rational>> {
    let items: Vec<&str> = text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if items.is_empty() {
        return Err(Error::Config("empty list".into()));
    }
    items.into_iter().map(parse_rational).collect()
}

fn opt(value: &Option<String>) -> Result<Option<Rational>> {
    value.as_deref().map(parse_rational).transpose()
}

fn req(value: &Option<String>, flag: &str) -> Result<Rational> {
    opt(value)?.ok_or_else(|| Error::Config(format!("--{flag} is required here")))
}

fn req_list(value: &Option<String>, flag: &str) -> Result<Vec<Rational>> {
    match value {
        Some(v) => parse_list(v),
        None => Err(Error::Config(format!("--{flag} is required here"))),
    }
}

/// Explicit mode runs one parameter set; it is chosen whenever a
/// parameter flag is present and `--grid default` is not.
pub fn is_explicit(args: &VerifyArgs) -> bool {
    if args.grid == Some(GridArg::Default) {
        return false;
    }
    [&args.a, &args.b, &args.c, &args.delta, &args.weight_a, &args.weight_b, &args.upper, &args.lower, &args.x, &args.values]
        .iter()
        .any(|v| v.is_some())
        || args.family.is_some()
}

fn upper_weights(args: &VerifyArgs) -> Result<Weights> {
    match args.family.unwrap_or(FamilyArg::KummerUpper) {
        FamilyArg::KummerUpper => Ok(Weights::kummer_upper(req(&args.c, "c")?)),
        FamilyArg::GaussUpper => Ok(Weights::gauss_upper(req(&args.weight_b, "weight-b")?, req(&args.c, "c")?)),
        FamilyArg::Constant => Ok(Weights::constant()),
        FamilyArg::PfqUpper => Ok(Weights::pfq_upper(req_list(&args.upper, "upper")?, req_list(&args.lower, "lower")?)),
        other => Err(Error::Config(format!("family {other:?} does not have an upper-factor form"))),
    }
}

fn explicit_case(theorem: TheoremId, args: &VerifyArgs, order: usize) -> Result<Vec<Case>> {
    use TheoremId::*;
    let delta = || req(&args.delta, "delta");
    let xs = || req_list(&args.x, "x");
    let values = |t: TheoremId| match &args.values {
        Some(v) => parse_list(v),
        None => Ok(pointwise_grid(t)),
    };
    let pointwise = |fixed: Vec<Rational>| -> Result<Vec<Case>> {
        let (d, grid) = (delta()?, values(theorem)?);
        Ok(xs()?
            .into_iter()
            .map(|x| Case::Pointwise { theorem, fixed: fixed.clone(), delta: d.clone(), x, grid: grid.clone() })
            .collect())
    };
    let terminating_m = || -> Result<Vec<usize>> {
        match args.m {
            Some(m) if m >= 2 => Ok(vec![m]),
            Some(m) => Err(Error::Config(format!("--m must be >= 2, got {m}"))),
            None => Ok((2..=5).collect()),
        }
    };
    Ok(match theorem {
        UpperShift => vec![Case::UpperShift {
            spec: HypSeriesSpec::upper(upper_weights(args)?, order),
            a: req(&args.a, "a")?,
            b: req(&args.b, "b")?,
            delta: delta()?,
        }],
        GammaShift => {
            if !matches!(args.family, None | Some(FamilyArg::KummerGamma)) {
                return Err(Error::Config("gamma-shift takes --family 1f1-gamma".into()));
            }
            vec![Case::GammaShift {
                spec: HypSeriesSpec::gamma(Weights::kummer_gamma(req(&args.c, "c")?), order),
                a: req(&args.a, "a")?,
                b: req(&args.b, "b")?,
                delta: delta()?,
            }]
        }
        LowerShift => {
            let weights = match args.family.unwrap_or(FamilyArg::KummerLower) {
                FamilyArg::KummerLower => Weights::kummer_lower(req(&args.weight_a, "weight-a")?),
                FamilyArg::GaussLower => Weights::gauss_lower(req(&args.weight_a, "weight-a")?, req(&args.weight_b, "weight-b")?),
                other => return Err(Error::Config(format!("family {other:?} is not a lower-factor family"))),
            };
            vec![Case::LowerShift { spec: HypSeriesSpec::lower(weights, order), a: req(&args.a, "a")?, b: req(&args.b, "b")?, delta: delta()? }]
        }
        TwoSidedBound => vec![Case::TwoSided {
            spec: HypSeriesSpec::upper(upper_weights(args)?, order),
            a: req(&args.a, "a")?,
            b: req(&args.b, "b")?,
            delta: delta()?,
            grid: xs()?,
        }],
        TuranBound => vec![Case::Turan {
            spec: HypSeriesSpec::upper(upper_weights(args)?, order),
            a: req(&args.a, "a")?,
            delta: delta()?,
            grid: xs()?,
        }],
        KummerLogConcave => pointwise(vec![req(&args.c, "c")?])?,
        KummerLowerLogConvex => pointwise(vec![req(&args.a, "a")?])?,
        KummerDiagonalLogConvex => pointwise(vec![req(&args.a, "a")?, req(&args.c, "c")?])?,
        GaussLogConcave | GaussLogConvex => pointwise(vec![req(&args.b, "b")?, req(&args.c, "c")?])?,
        GaussLowerLogConvex => pointwise(vec![req(&args.a, "a")?, req(&args.b, "b")?])?,
        PfqChain => vec![Case::PfqChain {
            upper: req_list(&args.upper, "upper")?,
            lower: req_list(&args.lower, "lower")?,
            alpha: req(&args.a, "a")?,
            beta: req(&args.b, "b")?,
            delta: delta()?,
            order,
        }],
        TerminatingSum => {
            let (a, b, c) = (req(&args.a, "a")?, req(&args.b, "b")?, req(&args.c, "c")?);
            terminating_m()?
                .into_iter()
                .map(|m| Case::TerminatingSum { a: a.clone(), b: b.clone(), c: c.clone(), m })
                .collect()
        }
        QfqSum => {
            let (alpha, beta) = (req(&args.a, "a")?, req(&args.b, "b")?);
            let upper = match &args.upper {
                Some(u) if !u.trim().is_empty() => parse_list(u)?,
                _ => vec![],
            };
            let lower = req_list(&args.lower, "lower")?;
            terminating_m()?
                .into_iter()
                .map(|m| Case::QfqSum { alpha: alpha.clone(), beta: beta.clone(), a: upper.clone(), b: lower.clone(), m })
                .collect()
        }
        RatioLemma => vec![Case::RatioLemma { seed: args.seed.unwrap_or(0x5eed), pairs: args.random.max(1), max_degree: 6 }],
        SymmetricChain => vec![Case::SymmetricChain { a: req_list(&args.upper, "upper")?, b: req_list(&args.lower, "lower")? }],
        KummerTransform => {
            let (a, c) = (req(&args.a, "a")?, req(&args.c, "c")?);
            xs()?.into_iter().map(|x| Case::KummerTransform { a: a.clone(), c: c.clone(), x }).collect()
        }
        EulerPfaff => {
            let (a, b, c) = (req(&args.a, "a")?, req(&args.b, "b")?, req(&args.c, "c")?);
            xs()?.into_iter().map(|x| Case::EulerPfaff { a: a.clone(), b: b.clone(), c: c.clone(), x }).collect()
        }
    })
}

/// Builds the case list for `verify`.
pub fn build_cases(selection: &[TheoremId], args: &VerifyArgs, opts: &SuiteOptions) -> Result<Vec<Case>> {
    if is_explicit(args) {
        if selection.len() != 1 {
            return Err(Error::Config("explicit parameters need exactly one --theorem".into()));
        }
        let cases = explicit_case(selection[0], args, opts.order)?;
        if cases.is_empty() {
            return Err(Error::Config("empty grid".into()));
        }
        return Ok(cases);
    }
    let mut cases = default_cases(selection, opts);
    if let Some(seed) = args.seed {
        for c in &mut cases {
            if let Case::RatioLemma { seed: s, .. } = c {
                *s = seed;
            }
        }
    }
    if args.random > 0 {
        cases.extend(random_cases(args.seed.unwrap_or(0x5eed), args.random, opts));
    }
    Ok(cases)
}
