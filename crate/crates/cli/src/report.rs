//! Run reports and their JSON / CSV renderings.
//!
//! The CSV header is `index,<variable names…>,residual`, one row per point.
//! Floats are printed in scientific notation with 17 significant digits.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Exit status of a run: 0 when every requested certificate or verdict
/// holds, 1 on a violation, 2 on usage, parse or I/O errors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(into = "i32")]
pub enum ExitCode {
    Pass,
    Violation,
    Usage,
}

impl From<ExitCode> for i32 {
    fn from(code: ExitCode) -> i32 {
        match code {
            ExitCode::Pass => 0,
            ExitCode::Violation => 1,
            ExitCode::Usage => 2,
        }
    }
}

impl ExitCode {
    pub fn from_verdict(holds: bool) -> ExitCode {
        if holds {
            ExitCode::Pass
        } else {
            ExitCode::Violation
        }
    }
}

/// A point with the residual that certifies it.
#[derive(Clone, Debug, PartialEq)]
pub struct PointRow {
    pub point: Vec<f64>,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub tolerances: Value,
    pub results: Value,
    pub exit_code: ExitCode,
    /// Point list flattened into CSV; absent for commands without points.
    #[serde(skip)]
    pub rows: Option<Vec<PointRow>>,
    #[serde(skip)]
    pub variables: Vec<String>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report values are serializable");
        text.push('\n');
        text
    }

    /// `None` when the command produces no point list.
    pub fn to_csv(&self) -> Option<String> {
        let rows = self.rows.as_ref()?;
        let mut out = String::from("index");
        for v in &self.variables {
            out.push(',');
            out.push_str(v);
        }
        out.push_str(",residual\n");
        for (i, row) in rows.iter().enumerate() {
            write!(out, "{i}").unwrap();
            for c in row.point.iter().chain([&row.residual]) {
                write!(out, ",{c:.16e}").unwrap();
            }
            out.push('\n');
        }
        Some(out)
    }

    pub fn render(&self, format: Format) -> Option<String> {
        match format {
            Format::Json => Some(self.to_json()),
            Format::Csv => self.to_csv(),
        }
    }
}
