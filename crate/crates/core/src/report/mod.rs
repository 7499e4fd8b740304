//! Report envelopes, the formula-status ledger and output rendering.

mod commands;
mod verify;

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

pub use commands::{
    cmd_asymptotics, cmd_compute, cmd_congruence, cmd_period, cmd_quadrature, QuadratureOp,
    QuadratureParams,
};
pub use verify::{cmd_verify, VerifyParams, MAX_VERIFY_INDEX};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// JSON schema every envelope validates against.
pub const SCHEMA: &str = include_str!("../../schema/report.schema.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaStatus {
    Verified,
    Mismatch,
    Calibrated,
    Unverifiable,
}

impl FormulaStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            FormulaStatus::Verified => "verified",
            FormulaStatus::Mismatch => "mismatch",
            FormulaStatus::Calibrated => "calibrated",
            FormulaStatus::Unverifiable => "unverifiable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LedgerRow {
    pub equation_id: String,
    pub status: FormulaStatus,
    /// JSON pointer into `results` holding the supporting data.
    pub evidence: String,
}

impl LedgerRow {
    pub fn new(equation_id: &str, status: FormulaStatus, evidence: &str) -> Self {
        LedgerRow {
            equation_id: equation_id.to_string(),
            status,
            evidence: evidence.to_string(),
        }
    }
}

/// Status of every ledgered formula as of the last freeze run.
pub const FROZEN_LEDGER: &[(&str, FormulaStatus)] = &[
    ("egf-definition", FormulaStatus::Verified),
    ("table-values", FormulaStatus::Verified),
    ("euler-secant", FormulaStatus::Verified),
    ("bernoulli-tangent", FormulaStatus::Verified),
    ("stirling-sum", FormulaStatus::Mismatch),
    ("stirling-kernel-integral", FormulaStatus::Mismatch),
    ("laplace-product-integral", FormulaStatus::Mismatch),
    ("falling-factorial-identity", FormulaStatus::Mismatch),
    ("contour-integral", FormulaStatus::Mismatch),
    ("contour-integral-scaled", FormulaStatus::Calibrated),
    ("hyper-sinh", FormulaStatus::Mismatch),
    ("hyper-sinh-calibrated", FormulaStatus::Calibrated),
    ("hyper-classical", FormulaStatus::Mismatch),
    ("hyper-calibrated", FormulaStatus::Calibrated),
    ("spectral-series", FormulaStatus::Mismatch),
    ("spectral-series-calibrated", FormulaStatus::Calibrated),
    ("fourier-sine-coefficient", FormulaStatus::Mismatch),
    ("mellin-cosh", FormulaStatus::Verified),
    ("mellin-sinh", FormulaStatus::Verified),
    ("asymptotic-law", FormulaStatus::Verified),
    ("touchard-congruence", FormulaStatus::Mismatch),
    ("wilson-step", FormulaStatus::Mismatch),
    ("an-period-congruence", FormulaStatus::Mismatch),
    ("an-scaling-congruence", FormulaStatus::Mismatch),
    ("mod-p2-congruence", FormulaStatus::Unverifiable),
    ("mod-9-residue", FormulaStatus::Verified),
];

pub fn frozen_status(equation_id: &str) -> Option<FormulaStatus> {
    FROZEN_LEDGER
        .iter()
        .find(|(id, _)| *id == equation_id)
        .map(|&(_, s)| s)
}

/// Rows frozen as verified that no longer are (missing rows count as regressions).
pub fn ledger_regressions(ledger: &[LedgerRow]) -> Vec<String> {
    FROZEN_LEDGER
        .iter()
        .filter(|(_, s)| *s == FormulaStatus::Verified)
        .filter_map(|(id, _)| match ledger.iter().find(|r| r.equation_id == *id) {
            Some(row) if row.status == FormulaStatus::Verified => None,
            Some(row) => Some(format!("{id}: frozen verified, now {}", row.status.as_str())),
            None => Some(format!("{id}: frozen verified, row missing")),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportEnvelope {
    pub tool_version: String,
    pub command: String,
    pub parameters: Value,
    pub results: Value,
    pub formula_status_ledger: Vec<LedgerRow>,
}

impl ReportEnvelope {
    pub fn new<P: Serialize, R: Serialize>(
        command: &str,
        parameters: &P,
        results: &R,
        ledger: Vec<LedgerRow>,
    ) -> Result<Self> {
        let encode = |e: serde_json::Error| Error::InvalidInput(format!("serialization: {e}"));
        Ok(ReportEnvelope {
            tool_version: TOOL_VERSION.to_string(),
            command: command.to_string(),
            parameters: serde_json::to_value(parameters).map_err(encode)?,
            results: serde_json::to_value(results).map_err(encode)?,
            formula_status_ledger: ledger,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("envelope values are finite JSON");
        s.push('\n');
        s
    }
}

/// Plain rows for CSV output.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// 17 significant digits.
pub fn csv_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Outcome of one command: the envelope, an optional tabular view, and any
/// disagreement with frozen expectations.
#[derive(Debug, Clone)]
pub struct Run {
    pub envelope: ReportEnvelope,
    pub table: Option<Table>,
    pub regressions: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Human,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "human" => Ok(OutputFormat::Human),
            other => Err(Error::InvalidInput(format!("unknown format {other:?}"))),
        }
    }
}

pub fn render(run: &Run, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => Ok(run.envelope.to_json()),
        OutputFormat::Csv => run.table.as_ref().map(Table::to_csv).ok_or_else(|| {
            Error::InvalidInput(format!(
                "csv output is not available for {}; use compute, period or asymptotics",
                run.envelope.command
            ))
        }),
        OutputFormat::Human => Ok(human(run)),
    }
}

fn human(run: &Run) -> String {
    let env = &run.envelope;
    let mut out = String::new();
    let _ = writeln!(out, "zigzag-lab {} :: {}", env.tool_version, env.command);
    let _ = writeln!(out, "parameters: {}", env.parameters);
    if let Some(table) = &run.table {
        let _ = writeln!(out, "{}", table.header.join("\t"));
        for row in &table.rows {
            let _ = writeln!(out, "{}", row.join("\t"));
        }
    } else {
        let pretty = serde_json::to_string_pretty(&env.results).unwrap_or_default();
        let _ = writeln!(out, "{pretty}");
    }
    if !env.formula_status_ledger.is_empty() {
        let _ = writeln!(out, "ledger:");
        for row in &env.formula_status_ledger {
            let _ = writeln!(
                out,
                "  {:<28} {:<13} {}",
                row.equation_id,
                row.status.as_str(),
                row.evidence
            );
        }
    }
    for r in &run.regressions {
        let _ = writeln!(out, "REGRESSION {r}");
    }
    out
}
