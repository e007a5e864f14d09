use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use stieltjes_core::monotonicity::CheckGrid;

use crate::args::{Cli, Format};
use crate::error::CliError;

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    #[serde(default = "default_n_max")]
    pub n_max: usize,
    #[serde(default = "default_h_ratio")]
    pub h_ratio: f64,
}

fn default_n_max() -> usize {
    8
}

fn default_h_ratio() -> f64 {
    1.0 / 16.0
}

/// Contents of a `--config` file. Every field is optional.
#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Per-suite tolerance overrides, keyed by suite name.
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    pub grid: Option<GridSpec>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CliError::Config { path: path.display().to_string(), source })?;
        let cfg: RunConfig = serde_json::from_str(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        for (k, &v) in &self.tolerances {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::usage(format!("tolerance for {k} must be positive")));
            }
        }
        if let Some(g) = &self.grid {
            g.to_grid()?;
        }
        if self.jobs == Some(0) {
            return Err(CliError::usage("jobs must be at least 1"));
        }
        Ok(())
    }
}

impl GridSpec {
    pub fn to_grid(&self) -> Result<CheckGrid, CliError> {
        let ordered = self.lo > 0.0 && self.hi >= self.lo;
        if self.points == 0 || !ordered {
            return Err(CliError::usage("grid needs points >= 1 and 0 < lo <= hi"));
        }
        let xs = stieltjes_core::monotonicity::log_space(self.lo, self.hi, self.points);
        Ok(CheckGrid::new(xs, self.h_ratio, self.n_max)?)
    }
}

/// Config file merged under the command-line flags.
#[derive(Clone, Debug)]
pub struct Settings {
    pub format: Option<Format>,
    pub seed: u64,
    pub jobs: Option<usize>,
    pub tol: Option<f64>,
    pub tolerances: BTreeMap<String, f64>,
    pub grid: CheckGrid,
}

impl Settings {
    pub fn resolve(cli: &Cli) -> Result<Self, CliError> {
        let cfg = match &cli.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if let Some(t) = cli.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::usage("--tol must be positive"));
            }
        }
        if cli.jobs == Some(0) {
            return Err(CliError::usage("--jobs must be at least 1"));
        }
        let grid = match &cfg.grid {
            Some(g) => g.to_grid()?,
            None => CheckGrid::default(),
        };
        Ok(Self {
            format: cli.format.or(cfg.format),
            seed: cli.seed.or(cfg.seed).unwrap_or(0),
            jobs: cli.jobs.or(cfg.jobs),
            tol: cli.tol,
            tolerances: cfg.tolerances,
            grid,
        })
    }

    /// `--tol` wins over the config entry for `key`.
    pub fn tol_for(&self, key: &str) -> Option<f64> {
        self.tol.or_else(|| self.tolerances.get(key).copied())
    }

    pub fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_validates() {
        let cfg: RunConfig = serde_json::from_str(
            r#"{"tolerances":{"hamburger":1e-6},"grid":{"lo":0.1,"hi":10,"points":5},"format":"csv","seed":3}"#,
        )
        .unwrap();
        cfg.validate().unwrap();
        assert_eq!(cfg.format, Some(Format::Csv));
        assert_eq!(cfg.grid.unwrap().n_max, 8);
        let bad: RunConfig = serde_json::from_str(r#"{"tolerances":{"x":-1}}"#).unwrap();
        assert!(bad.validate().is_err());
        let empty: RunConfig = serde_json::from_str(r#"{"grid":{"lo":1,"hi":2,"points":0}}"#).unwrap();
        assert!(empty.validate().is_err());
        assert!(serde_json::from_str::<RunConfig>(r#"{"colour":1}"#).is_err());
    }
}
