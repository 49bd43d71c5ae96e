mod args;
mod plan;
mod report;

use std::process::ExitCode;

use clap::Parser;
use serde_json::json;
use turankit::eval::{default_conjecture_grid, explore_conjecture, EvalOptions};
use turankit::interval::Precision;
use turankit::par::ExecMode;
use turankit::rational::{self, parse_rational};
use turankit::suite::{run_cases, SuiteOptions, Summary};

use crate::args::{Cli, Command, ExploreArgs, VerifyArgs};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] turankit::error::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

fn precision(digits: Option<u32>) -> Result<Precision, CliError> {
    match digits {
        Some(0) => Err(turankit::error::Error::Config("--precision must be positive".into()).into()),
        Some(d) => Ok(Precision::from_digits(d)),
        None => Ok(Precision::from_env()),
    }
}

fn eval_options(digits: Option<u32>, tol: Option<f64>) -> Result<EvalOptions, CliError> {
    let mut opts = EvalOptions::with_prec(precision(digits)?);
    if let Some(t) = tol {
        if !(t > 0.0 && t < 1.0) {
            return Err(turankit::error::Error::Config(format!("--tol must lie in (0, 1), got {t}")).into());
        }
        opts.tol = t;
    }
    Ok(opts)
}

fn verify(args: VerifyArgs) -> Result<ExitCode, CliError> {
    let selection = plan::parse_selection(&args.theorem)?;
    let mut opts = SuiteOptions { eval: eval_options(args.precision, args.tol)?, ..SuiteOptions::default() };
    if let Some(m) = args.order {
        if m < 2 {
            return Err(turankit::error::Error::Config(format!("--M must be >= 2, got {m}")).into());
        }
        opts.order = m;
        opts.gamma_order = m;
    }
    if args.sequential {
        opts.mode = ExecMode::Sequential;
    }
    let cases = plan::build_cases(&selection, &args, &opts)?;
    let results = run_cases(&cases, &opts)?;
    let summary = Summary::of(&results);

    let config_echo = json!({
        "command": "verify",
        "theorems": selection.iter().map(|t| t.name()).collect::<Vec<_>>(),
        "explicit": plan::is_explicit(&args),
        "args": &args,
        "order": opts.order,
        "gamma_order": opts.gamma_order,
        "precision_bits": opts.eval.prec.bits(),
        "tol": opts.eval.tol,
        "cases": cases.len(),
    });
    let run_id = report::run_id(&config_echo);
    if let Some(path) = &args.out_json {
        report::write_json(path, &report::VerifyReport { run_id: run_id.clone(), config_echo: &config_echo, per_case: &results, summary })?;
    }
    if let Some(path) = &args.out_csv {
        report::write_verify_csv(path, &results)?;
    }

    for t in &selection {
        let of_t: Vec<_> = results.iter().filter(|r| r.theorem == *t).cloned().collect();
        if of_t.is_empty() {
            continue;
        }
        let s = Summary::of(&of_t);
        println!("{:<28} verified {:>4}  violated {:>3}  inconclusive {:>3}", t.name(), s.verified, s.violated, s.inconclusive);
    }
    println!("run {run_id}: {} verified, {} violated, {} inconclusive", summary.verified, summary.violated, summary.inconclusive);
    if summary.inconclusive > 0 {
        eprintln!("warning: {} inconclusive case(s)", summary.inconclusive);
    }
    Ok(exit_code(summary.violated))
}

/// 0 unless something was certifiably violated.
fn exit_code(violated: usize) -> ExitCode {
    if violated > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn explore(args: ExploreArgs) -> Result<ExitCode, CliError> {
    let opts = eval_options(args.precision, args.tol)?;
    let (a, b, delta, c) = (parse_rational(&args.a)?, parse_rational(&args.b)?, parse_rational(&args.delta)?, parse_rational(&args.c)?);
    let grid = match &args.x {
        Some(list) => plan::parse_list(list)?,
        None => {
            let max = rational::to_f64(&parse_rational(&args.max)?);
            if max.is_nan() || max <= 0.0 {
                return Err(turankit::error::Error::Config("--max must be positive".into()).into());
            }
            let sign = if args.negative { -1 } else { 1 };
            default_conjecture_grid(args.points, max).into_iter().map(|x| x * rational::int(sign)).collect()
        }
    };
    let r = explore_conjecture(&a, &b, &delta, &c, &grid, opts)?;
    let config_echo = json!({
        "command": "explore",
        "args": &args,
        "precision_bits": opts.prec.bits(),
        "tol": opts.tol,
    });
    let run_id = report::run_id(&config_echo);
    let summary = json!({
        "points": r.points.len(),
        "violations": r.violations,
        "undecided": r.undecided,
        "undecided_fraction": r.undecided_fraction(),
        "out_of_bounds": r.out_of_bounds,
        "gap_to_one": r.gap_to_one,
        "gap_to_bound": r.gap_to_bound,
    });
    if let Some(path) = &args.out_json {
        report::write_json(path, &json!({ "run_id": run_id, "config_echo": config_echo, "report": &r, "summary": summary }))?;
    }
    if let Some(path) = &args.out_csv {
        report::write_explore_csv(path, &r)?;
    }
    println!(
        "run {run_id}: {} points, {} violations, {} undecided ({:.1}%), bound {:.6}",
        r.points.len(),
        r.violations,
        r.undecided,
        100.0 * r.undecided_fraction(),
        r.bound.mid_f64()
    );
    if r.undecided > 0 {
        eprintln!("warning: {} undecided step(s)", r.undecided);
    }
    Ok(exit_code(r.violations))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(args) => verify(args),
        Command::Explore(args) => explore(args),
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}
