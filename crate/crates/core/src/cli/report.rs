use std::fmt::Write as _;

use serde::Serialize;

use super::config::{OutputFormat, RunConfig};
use crate::verify::{Record, Status};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Overall {
    Pass,
    Fail,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub deviation: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub tool_version: &'static str,
    pub command: String,
    pub subject: Option<String>,
    pub config: RunConfig,
    pub status: Overall,
    pub tally: Tally,
    /// Sorted by `check_id`.
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(
        command: &str,
        subject: Option<String>,
        config: RunConfig,
        mut records: Vec<Record>,
    ) -> Self {
        records.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        let mut tally = Tally::default();
        for r in &records {
            match r.status {
                Status::Pass => tally.pass += 1,
                Status::Fail => tally.fail += 1,
                Status::Deviation => tally.deviation += 1,
            }
        }
        Self {
            tool_version: TOOL_VERSION,
            command: command.to_string(),
            subject,
            config,
            status: if tally.fail == 0 {
                Overall::Pass
            } else {
                Overall::Fail
            },
            tally,
            records,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Overall::Pass
    }

    pub fn exit_code(&self) -> u8 {
        u8::from(!self.passed())
    }

    /// Pretty JSON with keys sorted at every level.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let subject = self
            .subject
            .as_deref()
            .map(|s| format!(" {s}"))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "hbrackets {} {}{subject}",
            self.tool_version, self.command
        );
        let _ = writeln!(
            out,
            "max-arity {} order {} tuple-cap {} seed {} samples {} unary {}",
            c.max_arity,
            c.series_order,
            c.tuple_cap,
            c.sample_seed,
            c.sample_count,
            match c.unary_sign {
                crate::derived::UnarySign::Minus => "minus",
                crate::derived::UnarySign::Plus => "plus",
            }
        );
        let width = self
            .records
            .iter()
            .map(|r| r.check_id.len())
            .max()
            .unwrap_or(0);
        for r in &self.records {
            let _ = write!(
                out,
                "{:<9} {:<width$}  {}",
                r.status.as_str(),
                r.check_id,
                r.detail
            );
            if let Some(ms) = r.elapsed_ms {
                let _ = write!(out, " [{ms} ms]");
            }
            out.push('\n');
            if let Some(w) = &r.witness {
                let _ = writeln!(out, "{:<9} {:<width$}  witness ({})", "", "", w.join(", "));
            }
        }
        let t = &self.tally;
        let _ = writeln!(
            out,
            "{}: {} pass, {} fail, {} deviation",
            match self.status {
                Overall::Pass => "PASS",
                Overall::Fail => "FAIL",
            },
            t.pass,
            t.fail,
            t.deviation
        );
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.to_text(),
            OutputFormat::Json => self.to_json(),
        }
    }
}
