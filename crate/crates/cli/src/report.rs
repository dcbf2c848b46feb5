//! Report shapes shared by every command. One `Report` backs both the
//! human summary on stdout and the machine JSON written to `--out`; the
//! two can never drift apart because they are the same struct.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::{CliError, CliResult, EXIT_HYPOTHESIS, EXIT_PASS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
    NonConverged,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => EXIT_PASS,
            _ => EXIT_HYPOTHESIS,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::NotApplicable => "NOT_APPLICABLE",
            Verdict::NonConverged => "NON_CONVERGED",
        }
    }
}

/// What a command computed, before it is wrapped into a [`Report`].
pub struct CmdOutcome {
    pub verdict: Verdict,
    /// Command-specific certificates and measurements.
    pub details: serde_json::Value,
    /// Human-facing lines, printed under the verdict banner.
    pub summary: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub instance: Option<String>,
    pub seed: u64,
    pub tol: Option<f64>,
    pub verdict: Verdict,
    pub exit_code: i32,
    pub summary: Vec<String>,
    pub details: serde_json::Value,
}

impl Report {
    pub fn new(
        command: &str,
        instance: Option<&Path>,
        seed: u64,
        tol: Option<f64>,
        outcome: CmdOutcome,
    ) -> Self {
        Report {
            tool: "fixpoint",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            instance: instance.map(|p| p.display().to_string()),
            seed,
            tol,
            verdict: outcome.verdict,
            exit_code: outcome.verdict.exit_code(),
            summary: outcome.summary,
            details: outcome.details,
        }
    }

    /// The stdout rendering: a verdict banner plus the summary lines.
    pub fn human(&self) -> String {
        let mut out = format!("fixpoint {}: {}", self.command, self.verdict.as_str());
        if let Some(instance) = &self.instance {
            out.push_str(&format!("  [{instance}]"));
        }
        out.push('\n');
        for line in &self.summary {
            out.push_str("  ");
            out.push_str(line);
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> CliResult<String> {
        serde_json::to_string_pretty(self)
            .map_err(|e| CliError::Input(format!("cannot serialize report: {e}")))
    }

    /// Write the JSON report atomically: a partial file is never left at
    /// the destination, even if the process dies mid-write.
    pub fn write_json(&self, path: &Path) -> CliResult<()> {
        let json = self.to_json()?;
        let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
        let io_err = |source: std::io::Error| CliError::Io {
            path: path.display().to_string(),
            source,
        };
        {
            let mut f = std::fs::File::create(&tmp).map_err(io_err)?;
            f.write_all(json.as_bytes()).map_err(io_err)?;
            f.write_all(b"\n").map_err(io_err)?;
            f.sync_all().map_err(io_err)?;
        }
        std::fs::rename(&tmp, path).map_err(io_err)?;
        Ok(())
    }
}

/// Compact scientific rendering for summary lines.
pub fn sci(x: f64) -> String {
    format!("{x:.6e}")
}
