//! JSON and CSV artifacts. Everything is ordered and formatted
//! deterministically so that identical configs give identical bytes.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use turankit::eval::ConjectureReport;
use turankit::suite::{CaseResult, Summary};

use crate::CliError;

/// Hex SHA-256 of the canonical config echo.
pub fn run_id(config_echo: &Value) -> String {
    let digest = Sha256::digest(config_echo.to_string().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Serialize)]
pub struct VerifyReport<'a> {
    pub run_id: String,
    pub config_echo: &'a Value,
    pub per_case: &'a [CaseResult],
    pub summary: Summary,
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut file = File::create(path)?;
    serde_json::to_writer_pretty(&mut file, value)?;
    file.write_all(b"\n")?;
    Ok(())
}

fn params_cell(case: &CaseResult) -> String {
    case.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

/// One row per coefficient index for sign-type cases, one row per case
/// (empty `index`) for everything else.
pub fn write_verify_csv(path: &Path, cases: &[CaseResult]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["case", "theorem", "params", "index", "sign", "expected_sign", "verdict"])?;
    for (i, case) in cases.iter().enumerate() {
        let (case_no, theorem, params, verdict) = (i.to_string(), case.theorem.to_string(), params_cell(case), verdict_str(case));
        let expected = case.details.get("expected_sign").and_then(Value::as_str).unwrap_or("");
        match case.details.get("per_index_sign").and_then(Value::as_array) {
            Some(signs) => {
                for (m, s) in signs.iter().enumerate() {
                    let sign = s.as_str().unwrap_or("");
                    w.write_record([case_no.as_str(), &theorem, &params, &m.to_string(), sign, expected, &verdict])?;
                }
            }
            None => w.write_record([case_no.as_str(), &theorem, &params, "", "", "", &verdict])?,
        }
    }
    w.flush()?;
    Ok(())
}

fn verdict_str(case: &CaseResult) -> String {
    serde_json::to_value(case.verdict).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

pub fn write_explore_csv(path: &Path, report: &ConjectureReport) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["x", "Q_lo", "Q_hi", "bound", "step"])?;
    let bound = format!("{:e}", report.bound.mid_f64());
    for p in &report.points {
        let step = serde_json::to_value(p.step)?.as_str().unwrap_or("").to_string();
        w.write_record([p.x.clone(), format!("{:e}", p.q_lo), format!("{:e}", p.q_hi), bound.clone(), step])?;
    }
    w.flush()?;
    Ok(())
}
