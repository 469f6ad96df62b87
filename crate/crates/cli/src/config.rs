//! Run configuration: built-in defaults, then an optional `key = value`
//! file, then command-line flags.

use std::fs;
use std::path::{Path, PathBuf};

use bosecap_core::entropy::nats_to_bits;
use bosecap_core::{OptimizerSettings, PhysicalConstants};
use clap::ValueEnum;

use crate::error::{CliError, Result};

/// Environment variable naming a config file when `--config` is absent.
pub const CONFIG_ENV: &str = "BOSECAP_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LogBase {
    /// Natural logarithm (nats).
    E,
    /// Base 2 (bits).
    Two,
}

impl LogBase {
    /// Converts a value in nats to this base.
    pub fn convert(self, nats: f64) -> f64 {
        match self {
            LogBase::E => nats,
            LogBase::Two => nats_to_bits(nats),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub hbar: f64,
    pub omega: f64,
    pub log_base: LogBase,
    pub tol: f64,
    /// Fock truncation; `None` picks a size from the photon budget.
    pub n_max: Option<usize>,
    /// Destination for CSV output; standard output when `None`.
    pub output_path: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            hbar: 1.0,
            omega: 1.0,
            log_base: LogBase::E,
            tol: OptimizerSettings::default().tol,
            n_max: None,
            output_path: None,
        }
    }
}

/// Values given on the command line; each one overrides the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub hbar: Option<f64>,
    pub omega: Option<f64>,
    pub log_base: Option<LogBase>,
    pub tol: Option<f64>,
    pub n_max: Option<usize>,
    pub output_path: Option<PathBuf>,
}

impl RunConfig {
    /// Resolves the config from the optional file path (falling back to
    /// [`CONFIG_ENV`]) and the command-line overrides.
    pub fn resolve(config_path: Option<&Path>, overrides: &Overrides) -> Result<Self> {
        let mut cfg = RunConfig::default();
        let env_path = std::env::var_os(CONFIG_ENV).map(PathBuf::from);
        if let Some(path) = config_path.map(Path::to_path_buf).or(env_path) {
            let text = fs::read_to_string(&path).map_err(|e| CliError::Config {
                path: path.display().to_string(),
                line: 0,
                reason: e.to_string(),
            })?;
            cfg.apply_file(&path.display().to_string(), &text)?;
        }
        if let Some(v) = overrides.hbar {
            cfg.hbar = v;
        }
        if let Some(v) = overrides.omega {
            cfg.omega = v;
        }
        if let Some(v) = overrides.log_base {
            cfg.log_base = v;
        }
        if let Some(v) = overrides.tol {
            cfg.tol = v;
        }
        if let Some(v) = overrides.n_max {
            cfg.n_max = Some(v);
        }
        if let Some(v) = &overrides.output_path {
            cfg.output_path = Some(v.clone());
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn apply_file(&mut self, path: &str, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |reason: String| CliError::Config {
                path: path.to_string(),
                line: i + 1,
                reason,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected key = value, got `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            let num = |v: &str| v.parse::<f64>().map_err(|e| err(format!("{key}: {e}")));
            match key {
                "hbar" => self.hbar = num(value)?,
                "omega" => self.omega = num(value)?,
                "tol" => self.tol = num(value)?,
                "n_max" => {
                    self.n_max = Some(value.parse().map_err(|e| err(format!("{key}: {e}")))?);
                }
                "log_base" => {
                    self.log_base = LogBase::from_str(value, true).map_err(|_| err(format!("log_base: unknown `{value}`")))?;
                }
                "output_path" => self.output_path = Some(PathBuf::from(value)),
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        Ok(())
    }

    fn validate(&self) -> Result<()> {
        PhysicalConstants::new(self.hbar, self.omega)
            .map_err(|e| CliError::Usage(format!("invalid constants: {e}")))?;
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(CliError::Usage(format!("tol must be positive, got {}", self.tol)));
        }
        if self.n_max == Some(0) {
            return Err(CliError::Usage("n_max must be positive".into()));
        }
        Ok(())
    }

    pub fn consts(&self) -> PhysicalConstants {
        PhysicalConstants::new(self.hbar, self.omega).expect("validated in resolve")
    }

    pub fn settings(&self) -> OptimizerSettings {
        OptimizerSettings {
            tol: self.tol,
            ..OptimizerSettings::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_values_apply_and_flags_win() {
        let mut cfg = RunConfig::default();
        cfg.apply_file("t", "# comment\nhbar = 2\nlog_base = two\nn_max = 40 # trailing\n")
            .unwrap();
        assert_eq!(cfg.hbar, 2.0);
        assert_eq!(cfg.log_base, LogBase::Two);
        assert_eq!(cfg.n_max, Some(40));
    }

    #[test]
    fn file_errors_name_the_line() {
        let mut cfg = RunConfig::default();
        let err = cfg.apply_file("t", "hbar = 1\nbogus = 3\n").unwrap_err();
        assert!(err.to_string().contains("t:2"), "{err}");
        assert!(cfg.apply_file("t", "hbar 1\n").is_err());
        assert!(cfg.apply_file("t", "tol = abc\n").is_err());
    }

    #[test]
    fn bits_are_nats_over_ln2() {
        let v = 1.234_567;
        assert_eq!(LogBase::Two.convert(v), v / std::f64::consts::LN_2);
        assert_eq!(LogBase::E.convert(v), v);
    }
}
