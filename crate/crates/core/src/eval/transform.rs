//! Numerical cross-checks of the Kummer, Euler and Pfaff transformations.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{sum_direct, EvalOptions, PFQSpec};
use crate::error::Result;
use crate::interval::{self, CertifiedInterval};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Serialize)]
pub struct TransformSide {
    pub label: &'static str,
    pub value: CertifiedInterval,
}

#[derive(Debug, Clone, Serialize)]
pub struct TransformReport {
    pub identity: &'static str,
    pub params: Vec<String>,
    pub x: String,
    pub sides: Vec<TransformSide>,
    /// Sides not evaluated because their series would not converge.
    pub skipped: Vec<&'static str>,
    /// Every pair of side enclosures intersects.
    pub overlap: bool,
    /// Largest `|mid_i - mid_0| / |mid_0|` over the sides.
    pub max_residual: f64,
    pub passed: bool,
}

impl TransformReport {
    fn finish(identity: &'static str, params: Vec<String>, x: &Rational, sides: Vec<TransformSide>, skipped: Vec<&'static str>, tol: f64) -> Self {
        let overlap = sides.iter().all(|s| sides.iter().all(|t| s.value.overlaps(&t.value)));
        let reference = sides[0].value.mid();
        let max_residual = sides
            .iter()
            .skip(1)
            .map(|s| {
                let diff = (s.value.mid() - &reference).abs();
                if reference.is_zero() {
                    rational::to_f64(&diff)
                } else {
                    rational::to_f64(&(diff / reference.abs()))
                }
            })
            .fold(0.0, f64::max);
        TransformReport {
            identity,
            params,
            x: rational::show(x),
            sides,
            skipped,
            overlap,
            max_residual,
            passed: overlap && max_residual < tol,
        }
    }
}

/// Compares `₁F₁(a; c; x)` with `e^x ₁F₁(c-a; c; -x)`, both summed
/// directly so that neither side borrows from the other.
pub fn check_kummer_transform(a: &Rational, c: &Rational, x: &Rational, tol: f64, opts: EvalOptions) -> Result<TransformReport> {
    let lhs = sum_direct(&PFQSpec::kummer(a.clone(), c.clone()), x, opts)?;
    let mirrored = sum_direct(&PFQSpec::kummer(c - a, c.clone()), &-x.clone(), opts)?;
    let rhs = mirrored.value.mul(&interval::exp_rational(x, opts.prec.with_extra(8)), opts.prec);
    let sides = vec![
        TransformSide { label: "1F1(a;c;x)", value: lhs.value },
        TransformSide { label: "e^x 1F1(c-a;c;-x)", value: rhs },
    ];
    Ok(TransformReport::finish("kummer", vec![rational::show(a), rational::show(c)], x, sides, vec![], tol))
}

/// Compares `₂F₁(a, b; c; x)` with its Euler transform and both Pfaff
/// transforms. The Pfaff sides are skipped when `|x/(x-1)| >= 1`.
pub fn check_euler_pfaff(a: &Rational, b: &Rational, c: &Rational, x: &Rational, tol: f64, opts: EvalOptions) -> Result<TransformReport> {
    let one = Rational::one();
    let prec = opts.prec;
    let wp = prec.with_extra(8);
    let base = &one - x;
    let direct = sum_direct(&PFQSpec::gauss(a.clone(), b.clone(), c.clone()), x, opts)?;
    let euler = sum_direct(&PFQSpec::gauss(c - a, c - b, c.clone()), x, opts)?
        .value
        .mul(&interval::pow_rational(&base, &(c - a - b), wp)?, prec);
    let mut sides = vec![
        TransformSide { label: "2F1(a,b;c;x)", value: direct.value },
        TransformSide { label: "(1-x)^(c-a-b) 2F1(c-a,c-b;c;x)", value: euler },
    ];
    let mut skipped = Vec::new();
    let z = x / (x - &one);
    if z.abs() < one {
        let p1 = sum_direct(&PFQSpec::gauss(a.clone(), c - b, c.clone()), &z, opts)?
            .value
            .mul(&interval::pow_rational(&base, &-a.clone(), wp)?, prec);
        let p2 = sum_direct(&PFQSpec::gauss(c - a, b.clone(), c.clone()), &z, opts)?
            .value
            .mul(&interval::pow_rational(&base, &-b.clone(), wp)?, prec);
        sides.push(TransformSide { label: "(1-x)^(-a) 2F1(a,c-b;c;x/(x-1))", value: p1 });
        sides.push(TransformSide { label: "(1-x)^(-b) 2F1(c-a,b;c;x/(x-1))", value: p2 });
    } else {
        skipped.push("(1-x)^(-a) 2F1(a,c-b;c;x/(x-1))");
        skipped.push("(1-x)^(-b) 2F1(c-a,b;c;x/(x-1))");
    }
    let params = vec![rational::show(a), rational::show(b), rational::show(c)];
    Ok(TransformReport::finish("euler-pfaff", params, x, sides, skipped, tol))
}
