use std::collections::BTreeMap;
use std::path::PathBuf;

use bcsurf::params::{check_guards, parse_rat, Mode};
use bcsurf::skew::default_bound;

use crate::error::CliError;

pub const ENV_MAX_DEGREE: &str = "BCSURF_MAX_DEGREE";

/// Module selectors understood by `--modules`.
pub const MODULES: [&str; 6] = ["surface", "skew", "linsys", "diamond", "complexes", "fibercoh"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl Format {
    fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "table" => Ok(Format::Table),
            _ => Err(CliError::Config(format!("unknown format {:?}", s))),
        }
    }
}

/// Raw settings from flags or a config file; unset fields fall through.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Settings {
    pub mode: Option<String>,
    pub rho: Option<String>,
    pub theta: Option<String>,
    pub max_degree: Option<usize>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub modules: Option<Vec<String>>,
    pub timing: Option<bool>,
}

impl Settings {
    /// Fields of `self` win over those of `lower`.
    pub fn over(self, lower: Settings) -> Settings {
        Settings {
            mode: self.mode.or(lower.mode),
            rho: self.rho.or(lower.rho),
            theta: self.theta.or(lower.theta),
            max_degree: self.max_degree.or(lower.max_degree),
            seed: self.seed.or(lower.seed),
            format: self.format.or(lower.format),
            out: self.out.or(lower.out),
            modules: self.modules.or(lower.modules),
            timing: self.timing.or(lower.timing),
        }
    }

    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse_file(text: &str) -> Result<Settings, CliError> {
        let mut map = BTreeMap::new();
        for (k, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) =
                line.split_once('=').ok_or_else(|| CliError::Config(format!("config line {}: expected key = value", k + 1)))?;
            map.insert(key.trim().replace('-', "_"), value.trim().to_string());
        }
        let mut s = Settings::default();
        for (key, value) in map {
            let bad = |what: &str| CliError::Config(format!("config key {}: {} {:?}", key, what, value));
            match key.as_str() {
                "mode" => s.mode = Some(value),
                "rho" => s.rho = Some(value),
                "theta" => s.theta = Some(value),
                "max_degree" => s.max_degree = Some(value.parse().map_err(|_| bad("not a count"))?),
                "seed" => s.seed = Some(value.parse().map_err(|_| bad("not an integer"))?),
                "format" => s.format = Some(Format::parse(&value)?),
                "out" => s.out = Some(PathBuf::from(value)),
                "modules" => s.modules = Some(split_modules(&value)),
                "timing" => s.timing = Some(value.parse().map_err(|_| bad("not a boolean"))?),
                _ => return Err(CliError::Config(format!("unknown config key {:?}", key))),
            }
        }
        Ok(s)
    }

    pub fn from_env() -> Result<Settings, CliError> {
        let mut s = Settings::default();
        if let Ok(v) = std::env::var(ENV_MAX_DEGREE) {
            s.max_degree = Some(v.trim().parse().map_err(|_| CliError::Config(format!("{} = {:?} is not a count", ENV_MAX_DEGREE, v)))?);
        }
        Ok(s)
    }
}

pub fn split_modules(s: &str) -> Vec<String> {
    s.split(',').map(|m| m.trim().to_string()).filter(|m| !m.is_empty()).collect()
}

/// Validated configuration of one run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    /// Requested degree bound; `None` lets each check use its own default.
    pub max_degree: Option<usize>,
    pub modules: Vec<String>,
    pub seed: u64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub timing: bool,
}

impl RunConfig {
    pub fn from_settings(s: Settings) -> Result<RunConfig, CliError> {
        let mode = match s.mode.as_deref().unwrap_or("generic") {
            "generic" => Mode::Generic,
            "tau-one" | "tau_one" => Mode::TauOne,
            "specialized" => {
                let need = |v: &Option<String>, name: &str| {
                    v.clone().ok_or_else(|| CliError::Config(format!("specialized mode needs --{}", name)))
                };
                let rho = parse_rat(&need(&s.rho, "rho")?)?;
                let theta = parse_rat(&need(&s.theta, "theta")?)?;
                Mode::Specialized { rho, theta }
            }
            other => return Err(CliError::Config(format!("unknown mode {:?}", other))),
        };
        if !matches!(mode, Mode::Specialized { .. }) && (s.rho.is_some() || s.theta.is_some()) {
            return Err(CliError::Config("--rho and --theta need --mode specialized".into()));
        }
        let modules = s.modules.unwrap_or_else(|| MODULES.iter().map(|m| m.to_string()).collect());
        if let Some(bad) = modules.iter().find(|m| !MODULES.contains(&m.as_str())) {
            return Err(CliError::Config(format!("unknown module {:?}; known: {}", bad, MODULES.join(", "))));
        }
        let cfg = RunConfig {
            mode,
            max_degree: s.max_degree,
            modules,
            seed: s.seed.unwrap_or(1),
            format: s.format.unwrap_or(Format::Json),
            out: s.out,
            timing: s.timing.unwrap_or(false),
        };
        if let Mode::Specialized { rho, theta } = &cfg.mode {
            check_guards(rho, theta, cfg.max_degree.unwrap_or_else(|| default_bound(&cfg.mode)))?;
        }
        Ok(cfg)
    }

    /// Degree bound for a check whose own limit is `bound`: an explicit request above
    /// the limit is an error for single commands and is clamped inside the suite.
    pub fn degree(&self, bound: usize, clamp: bool) -> Result<usize, CliError> {
        match self.max_degree {
            None => Ok(bound),
            Some(d) if d <= bound => Ok(d),
            Some(_) if clamp => Ok(bound),
            Some(d) => Err(CliError::Config(format!("max degree {} exceeds the supported bound {} for this check", d, bound))),
        }
    }

    pub fn selected(&self, module: &str) -> bool {
        self.modules.iter().any(|m| m == module)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let flags = Settings { max_degree: Some(3), ..Default::default() };
        let file = Settings::parse_file("max_degree = 6\nseed = 9 # comment\n").unwrap();
        let env = Settings { max_degree: Some(7), seed: Some(2), ..Default::default() };
        let s = flags.over(file.over(env));
        assert_eq!((s.max_degree, s.seed), (Some(3), Some(9)));
    }

    #[test]
    fn guards_are_errors() {
        let s = Settings { mode: Some("specialized".into()), rho: Some("2".into()), theta: Some("-1".into()), ..Default::default() };
        assert!(matches!(RunConfig::from_settings(s), Err(CliError::Guard(_))));
        let s = Settings { mode: Some("specialized".into()), rho: Some("2".into()), theta: Some("3".into()), ..Default::default() };
        assert!(RunConfig::from_settings(s).is_ok());
    }

    #[test]
    fn bad_keys_and_modules() {
        assert!(Settings::parse_file("colour = red").is_err());
        let s = Settings { modules: Some(vec!["nope".into()]), ..Default::default() };
        assert!(RunConfig::from_settings(s).is_err());
    }
}
