//! Command-line driver: runs verification checks and emits reports.

pub mod anchors;
pub mod commands;
pub mod config;
pub mod error;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use config::{split_modules, Format, RunConfig, Settings};
use error::CliError;
use report::{Recorder, Report};

#[derive(Debug, Parser)]
#[command(name = "bcsurf", version, about = "Verification checks for birationally commutative graded algebras on P1 x P1")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// generic, tau-one or specialized
    #[arg(long, global = true)]
    pub mode: Option<String>,
    /// Rational value of rho in specialized mode, e.g. 2 or 3/5
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub rho: Option<String>,
    /// Rational value of theta in specialized mode
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub theta: Option<String>,
    /// Largest degree to check (default per check; env BCSURF_MAX_DEGREE)
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for the random evaluation point
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Comma-separated module selection for `suite`
    #[arg(long, global = true)]
    pub modules: Option<String>,
    /// key = value file with defaults for the flags above
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Record elapsed milliseconds per check (reports are then not byte-stable)
    #[arg(long, global = true)]
    pub timing: bool,
    /// Print one status line per check to standard error
    #[arg(long, global = true)]
    pub progress: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Graded dimensions against C(n+3, 3)
    Dims,
    /// Defining relations, degree-two kernel, auxiliary relations
    Relations,
    /// Matrix identities and exactness of the resolution
    Resolution,
    /// Ext groups of the dual complex and the quotient by z9, z10
    Ext,
    /// Orbit points of the fundamental points
    Orbit,
    /// Critical-density determinants
    Critdens,
    /// Base loci of the pulled back coordinate curves
    Baselocus,
    /// Sheaf cohomology of the graded pieces
    Sheaf,
    /// Cohomology on fat fibers
    Fibercoh,
    /// Pushforward lengths, splittings and the Leray count
    Pushforward,
    /// Non-noetherian witness at the degenerate value
    Witness,
    /// Every check of the selected modules
    Suite,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Dims => "dims",
            Command::Relations => "relations",
            Command::Resolution => "resolution",
            Command::Ext => "ext",
            Command::Orbit => "orbit",
            Command::Critdens => "critdens",
            Command::Baselocus => "baselocus",
            Command::Sheaf => "sheaf",
            Command::Fibercoh => "fibercoh",
            Command::Pushforward => "pushforward",
            Command::Witness => "witness",
            Command::Suite => "suite",
        }
    }
}

impl Cli {
    fn settings(&self) -> Settings {
        Settings {
            mode: self.mode.clone(),
            rho: self.rho.clone(),
            theta: self.theta.clone(),
            max_degree: self.max_degree,
            seed: self.seed,
            format: self.format,
            out: self.out.clone(),
            modules: self.modules.as_deref().map(split_modules),
            timing: self.timing.then_some(true),
        }
    }

    /// Flags over the config file over the environment over built-in defaults.
    pub fn run_config(&self) -> Result<RunConfig, CliError> {
        let file = match &self.config {
            Some(p) => Settings::parse_file(&std::fs::read_to_string(p)?)?,
            None => Settings::default(),
        };
        RunConfig::from_settings(self.settings().over(file.over(Settings::from_env()?)))
    }
}

/// Runs one command and assembles its report.
pub fn execute(command: Command, cfg: &RunConfig, progress: bool) -> Result<Report, CliError> {
    let mut rec = Recorder::new(cfg.timing, progress);
    let r = &mut rec;
    match command {
        Command::Dims => commands::dims(cfg, r, false)?,
        Command::Relations => commands::relations(cfg, r)?,
        Command::Resolution => commands::resolution(cfg, r, false)?,
        Command::Ext => commands::ext(cfg, r, false)?,
        Command::Orbit => commands::orbit(cfg, r)?,
        Command::Critdens => commands::critdens(r)?,
        Command::Baselocus => commands::baselocus(cfg, r)?,
        Command::Sheaf => commands::sheaf(cfg, r)?,
        Command::Fibercoh => commands::fibercoh(cfg, r)?,
        Command::Pushforward => commands::pushforward(cfg, r)?,
        Command::Witness => commands::witness(cfg, r, false)?,
        Command::Suite => suite(cfg, r)?,
    }
    Ok(Report::new(command.name(), cfg, rec.checks))
}

fn suite(cfg: &RunConfig, r: &mut Recorder) -> Result<(), CliError> {
    if cfg.selected("skew") {
        commands::dims(cfg, r, true)?;
        commands::relations(cfg, r)?;
        commands::opposite(cfg, r, true)?;
        commands::syzygies(r)?;
        commands::witness(cfg, r, true)?;
    }
    if cfg.selected("complexes") {
        commands::resolution(cfg, r, true)?;
        commands::ext(cfg, r, true)?;
    }
    if cfg.selected("surface") {
        commands::orbit(cfg, r)?;
        commands::critdens(r)?;
        commands::baselocus(cfg, r)?;
    }
    if cfg.selected("linsys") {
        commands::sheaf(cfg, r)?;
    }
    if cfg.selected("diamond") {
        commands::diamond(r)?;
    }
    if cfg.selected("fibercoh") {
        commands::fibercoh(cfg, r)?;
        commands::pushforward(cfg, r)?;
    }
    Ok(())
}

/// Parses arguments, runs, and writes the report. Returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(report) => i32::from(!report.passed()),
        Err(e) => {
            eprintln!("bcsurf: {}", e);
            e.exit_code()
        }
    }
}

/// Runs the parsed command and emits the report to `--out` or standard output.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let cfg = cli.run_config()?;
    let report = execute(cli.command, &cfg, cli.progress)?;
    let text = report.render(cfg.format)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(report)
}
