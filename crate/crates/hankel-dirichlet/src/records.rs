//! Machine-readable output: determinant records and check reports.

use std::collections::BTreeMap;
use std::io::Write;

use hankel_core::hankel::DetResult;
use hankel_core::numerics::decimal::format_ball;
use hankel_core::Ball;
use serde::{Deserialize, Serialize};

use crate::series_file::rational_string;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// One certified determinant: `{"series","n","r","mid","rad","sign","engine","bits"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetRecord {
    pub series: String,
    pub n: usize,
    pub r: i64,
    pub mid: String,
    pub rad: String,
    pub sign: String,
    pub engine: String,
    pub bits: u32,
}

impl DetRecord {
    pub fn new(series: &str, res: &DetResult) -> Self {
        let (mid, rad) = match &res.exact {
            Some(q) => (rational_string(q), "0".to_string()),
            None => format_ball(&res.value),
        };
        DetRecord {
            series: series.into(),
            n: res.n,
            r: res.r,
            mid,
            rad,
            sign: res.sign.as_str().into(),
            engine: res.engine.as_str().into(),
            bits: res.bits_used,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// Decides the exit code.
    Hard,
    /// Reported only.
    Heuristic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Holds,
    Fails,
    Unresolved,
}

/// One comparison: `{"check","lhs","rhs","holds","kind","status"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub check: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    pub kind: CheckKind,
    pub status: CheckStatus,
}

impl ReportRow {
    pub fn new(check: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>, status: CheckStatus) -> Self {
        ReportRow {
            check: check.into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
            holds: status == CheckStatus::Holds,
            kind: CheckKind::Hard,
            status,
        }
    }

    pub fn from_bool(check: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>, holds: bool) -> Self {
        let status = if holds { CheckStatus::Holds } else { CheckStatus::Fails };
        ReportRow::new(check, lhs, rhs, status)
    }

    pub fn heuristic(mut self) -> Self {
        self.kind = CheckKind::Heuristic;
        self
    }
}

/// The output of a `verify` command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub series: String,
    pub summary: BTreeMap<String, String>,
    pub rows: Vec<ReportRow>,
    pub all_hard_checks_hold: bool,
}

impl Report {
    pub fn new(command: &str, series: &str) -> Self {
        Report {
            command: command.into(),
            series: series.into(),
            summary: BTreeMap::new(),
            rows: Vec::new(),
            all_hard_checks_hold: true,
        }
    }

    pub fn note(&mut self, key: &str, value: impl Into<String>) {
        self.summary.insert(key.into(), value.into());
    }

    pub fn push(&mut self, row: ReportRow) {
        if row.kind == CheckKind::Hard && !row.holds {
            self.all_hard_checks_hold = false;
        }
        self.rows.push(row);
    }

    fn hard(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| r.kind == CheckKind::Hard)
    }

    /// `0` when every hard check holds, `1` when one fails, `2` when the only
    /// shortfalls are rows left unresolved at the precision ceiling.
    pub fn exit_code(&self) -> i32 {
        if self.hard().any(|r| r.status == CheckStatus::Fails) {
            crate::error::EXIT_HARD_CHECK_FAILED
        } else if self.hard().any(|r| r.status == CheckStatus::Unresolved) {
            crate::error::EXIT_PRECISION_EXHAUSTED
        } else {
            0
        }
    }
}

/// `mid +/- rad` with certified digits only.
pub fn ball_string(b: &Ball) -> String {
    let (mid, rad) = format_ball(b);
    if rad == "0" {
        mid
    } else {
        format!("{mid} +/- {rad}")
    }
}

/// JSON lines or CSV with the fixed column order of [`DetRecord`].
pub fn write_records<W: Write>(records: &[DetRecord], format: OutputFormat, out: W) -> Result<(), CliError> {
    match format {
        OutputFormat::Json => {
            let mut out = out;
            for r in records {
                serde_json::to_writer(&mut out, r)?;
                out.write_all(b"\n")?;
            }
            out.flush()?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in records {
                w.serialize(r)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// Pretty JSON, or the rows as CSV with columns `check,lhs,rhs,holds,kind,status`.
pub fn write_report<W: Write>(report: &Report, format: OutputFormat, mut out: W) -> Result<(), CliError> {
    match format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut out, report)?;
            out.write_all(b"\n")?;
            out.flush()?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in &report.rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
