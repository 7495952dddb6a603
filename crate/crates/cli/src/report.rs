use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};


use crate::anchors::is_registered;
use crate::config::{Format, RunConfig};
use crate::error::{is_config_error, CliError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    /// Recorded for reference; does not enter the overall status.
    Info,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub anchor: String,
    pub status: Status,
    pub computed: String,
    pub expected: String,
    pub ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub mode: String,
    pub rho: Option<String>,
    pub theta: Option<String>,
    pub max_degree: Option<usize>,
    pub seed: u64,
    pub modules: Vec<String>,
}

impl ConfigEcho {
    pub fn of(cfg: &RunConfig) -> Self {
        let point = cfg.mode.rational_point();
        let specialized = matches!(cfg.mode, bcsurf::params::Mode::Specialized { .. });
        ConfigEcho {
            mode: cfg.mode.name().to_string(),
            rho: point.as_ref().filter(|_| specialized).map(|p| p.0.to_string()),
            theta: point.as_ref().filter(|_| specialized).map(|p| p.1.to_string()),
            max_degree: cfg.max_degree,
            seed: cfg.seed,
            modules: cfg.modules.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub config: ConfigEcho,
    pub status: Status,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn new(command: &str, cfg: &RunConfig, checks: Vec<CheckRecord>) -> Self {
        let ok = checks.iter().all(|c| c.status != Status::Fail);
        Report { command: command.to_string(), config: ConfigEcho::of(cfg), status: if ok { Status::Pass } else { Status::Fail }, checks }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).map_err(|e| CliError::Config(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                for c in &self.checks {
                    w.serialize(c).map_err(|e| CliError::Config(e.to_string()))?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::Config(e.to_string()))?;
                Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
            }
            Format::Table => Ok(self.table()),
        }
    }

    fn table(&self) -> String {
        let headers = ["status", "name", "computed", "expected"];
        let rows: Vec<[&str; 4]> =
            self.checks.iter().map(|c| [c.status.label(), c.name.as_str(), c.computed.as_str(), c.expected.as_str()]).collect();
        let mut widths = headers.map(str::len);
        for r in &rows {
            for (w, cell) in widths.iter_mut().zip(r) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        let line = |out: &mut String, cells: [&str; 4]| {
            let padded: Vec<String> = cells.iter().zip(widths).map(|(c, w)| format!("{:<w$}", c, w = w)).collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        let _ = writeln!(out, "{} ({}): {}", self.command, self.config.mode, self.status.label());
        line(&mut out, headers);
        for r in rows {
            line(&mut out, r);
        }
        out
    }
}

/// Collects check records, timing each one when asked to.
pub struct Recorder {
    pub checks: Vec<CheckRecord>,
    timing: bool,
    progress: bool,
}

impl Recorder {
    pub fn new(timing: bool, progress: bool) -> Self {
        Recorder { checks: Vec::new(), timing, progress }
    }

    pub fn push(&mut self, name: String, anchor: &str, status: Status, computed: String, expected: String, ms: u64) {
        debug_assert!(is_registered(anchor), "unregistered anchor {}", anchor);
        if self.progress {
            eprintln!("{} {}", status.label(), name);
        }
        self.checks.push(CheckRecord { name, anchor: anchor.to_string(), status, computed, expected, ms: if self.timing { ms } else { 0 } });
    }

    /// Runs a computation; a failed check becomes a FAIL record, a bad request stops the run.
    pub fn attempt<T>(&mut self, name: &str, anchor: &str, f: impl FnOnce() -> bcsurf::Result<T>) -> Result<Option<(T, u64)>, CliError> {
        let start = Instant::now();
        match f() {
            Ok(v) => Ok(Some((v, start.elapsed().as_millis() as u64))),
            Err(e) if is_config_error(&e) => Err(e.into()),
            Err(e) => {
                self.push(name.to_string(), anchor, Status::Fail, format!("error: {}", e), String::new(), 0);
                Ok(None)
            }
        }
    }

    /// One check from one computation returning (pass, computed, expected).
    pub fn check(
        &mut self,
        name: &str,
        anchor: &str,
        f: impl FnOnce() -> bcsurf::Result<(bool, String, String)>,
    ) -> Result<(), CliError> {
        if let Some(((pass, computed, expected), ms)) = self.attempt(name, anchor, f)? {
            self.push(name.to_string(), anchor, if pass { Status::Pass } else { Status::Fail }, computed, expected, ms);
        }
        Ok(())
    }
}

pub fn status_of(pass: bool) -> Status {
    if pass {
        Status::Pass
    } else {
        Status::Fail
    }
}

