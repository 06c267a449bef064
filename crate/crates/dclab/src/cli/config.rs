use std::path::{Path, PathBuf};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::extensions::{Beta, DEFAULT_WINDOW, MEMBERSHIP_TOLERANCE};
use crate::greenop::DEFAULT_SEED;
use crate::radial::{GridParams, RadialGrid};

/// Output encoding of a command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Fully resolved settings of one invocation: defaults, then the config file, then flags.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub nu: Vec<f64>,
    pub kappa: i32,
    #[serde(serialize_with = "betas_as_text")]
    pub beta: Vec<Beta>,
    pub grid: GridParams,
    pub window: (f64, f64),
    pub emin: f64,
    pub emax: f64,
    pub scan: usize,
    pub points: usize,
    pub r: Option<f64>,
    pub rho: Option<f64>,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub seed: u64,
    pub tolerance: f64,
    pub with_norm: bool,
}

fn betas_as_text<S: Serializer>(betas: &[Beta], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(betas.iter().map(|b| b.to_string()))
}

/// Keys accepted in config files; flags use the same names with `-` for `_`.
pub const KEYS: &[&str] = &[
    "nu", "kappa", "beta", "r_min", "r_max", "panels", "order", "window_lo", "window_hi", "emin", "emax", "scan",
    "points", "r", "rho", "input", "output", "format", "seed", "tolerance", "with_norm",
];

impl RunConfig {
    pub fn defaults(command: &str) -> Self {
        Self {
            command: command.to_string(),
            nu: vec![0.9],
            kappa: 1,
            beta: vec![Beta::Infinite],
            grid: GridParams::default(),
            window: DEFAULT_WINDOW,
            emin: -0.99,
            emax: 0.99,
            scan: 200,
            points: 200,
            r: None,
            rho: None,
            input: None,
            output: None,
            format: if matches!(command, "dump-solutions" | "flow") { Format::Csv } else { Format::Json },
            seed: DEFAULT_SEED,
            tolerance: MEMBERSHIP_TOLERANCE,
            with_norm: false,
        }
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().replace('-', "_");
        let value = value.trim();
        let bad = |what: &str| Error::InvalidParams(format!("{key} = {value:?}: {what}"));
        let real = |v: &str| -> Result<f64> {
            let x: f64 = v.trim().parse().map_err(|_| bad("expected a number"))?;
            if x.is_finite() { Ok(x) } else { Err(bad("expected a finite number")) }
        };
        let count = |v: &str| -> Result<usize> { v.parse().map_err(|_| bad("expected a non-negative integer")) };
        match key.as_str() {
            "nu" => self.nu = value.split(',').map(real).collect::<Result<_>>()?,
            "kappa" => self.kappa = value.parse().map_err(|_| bad("expected an integer"))?,
            "beta" => self.beta = value.split(',').map(Beta::parse).collect::<Result<_>>()?,
            "r_min" => self.grid.r_min = real(value)?,
            "r_max" => self.grid.r_max = real(value)?,
            "panels" => self.grid.panels = count(value)?,
            "order" => self.grid.order = count(value)?,
            "window_lo" => self.window.0 = real(value)?,
            "window_hi" => self.window.1 = real(value)?,
            "emin" => self.emin = real(value)?,
            "emax" => self.emax = real(value)?,
            "scan" => self.scan = count(value)?,
            "points" => self.points = count(value)?,
            "r" => self.r = Some(real(value)?),
            "rho" => self.rho = Some(real(value)?),
            "input" => self.input = Some(PathBuf::from(value)),
            "output" => self.output = Some(PathBuf::from(value)),
            "format" => {
                self.format = match value {
                    "json" => Format::Json,
                    "csv" => Format::Csv,
                    _ => return Err(bad("expected json or csv")),
                }
            }
            "seed" => self.seed = value.parse().map_err(|_| bad("expected an unsigned integer"))?,
            "tolerance" => self.tolerance = real(value)?,
            "with_norm" => self.with_norm = value.parse().map_err(|_| bad("expected true or false"))?,
            _ => return Err(Error::Malformed(format!("unknown configuration key '{key}'"))),
        }
        Ok(())
    }

    /// Reads `key = value` lines; `#` starts a comment.
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Malformed(format!("cannot read config {}: {e}", path.display())))?;
        self.apply_text(&text)
    }

    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        let mut seen = std::collections::HashSet::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Malformed(format!("config line {}: expected key = value", n + 1)))?;
            let key = key.trim().replace('-', "_");
            if !seen.insert(key.clone()) {
                return Err(Error::Malformed(format!("config line {}: duplicate key '{key}'", n + 1)));
            }
            self.set(&key, value)?;
        }
        Ok(())
    }

    /// Checks settings that do not depend on the command.
    pub fn validate(&self) -> Result<()> {
        RadialGrid::new(self.grid)?;
        if self.nu.is_empty() || self.beta.is_empty() {
            return Err(Error::InvalidParams("nu and beta need at least one value".into()));
        }
        if self.kappa == 0 {
            return Err(Error::InvalidParams("kappa must be non-zero".into()));
        }
        let (lo, hi) = self.window;
        if !(lo > 0.0 && lo < hi) {
            return Err(Error::InvalidRange(format!("fit window ({lo}, {hi})")));
        }
        if !(-1.0 < self.emin && self.emin < self.emax && self.emax < 1.0) {
            return Err(Error::InvalidRange(format!("energy window ({}, {}) must lie inside (-1, 1)", self.emin, self.emax)));
        }
        if self.scan < 2 || self.points < 2 {
            return Err(Error::InvalidParams("scan and points need at least 2".into()));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::InvalidParams(format!("tolerance = {}", self.tolerance)));
        }
        Ok(())
    }

    /// The single `nu` of commands that do not sweep.
    pub fn single_nu(&self) -> Result<f64> {
        match self.nu.as_slice() {
            [x] => Ok(*x),
            _ => Err(Error::InvalidParams(format!("{} takes one nu, got {}", self.command, self.nu.len()))),
        }
    }

    pub fn single_beta(&self) -> Result<Beta> {
        match self.beta.as_slice() {
            [b] => Ok(*b),
            _ => Err(Error::InvalidParams(format!("{} takes one beta, got {}", self.command, self.beta.len()))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let mut c = RunConfig::defaults("spectrum");
        c.apply_text("# comment\nnu = 0.95\nbeta = -1, inf\nr-max = 60 # trailing\n").unwrap();
        assert_eq!(c.nu, vec![0.95]);
        assert_eq!(c.beta, vec![Beta::Finite(-1.0), Beta::Infinite]);
        assert_eq!(c.grid.r_max, 60.0);
        c.set("nu", "0.9,0.88").unwrap();
        assert_eq!(c.nu, vec![0.9, 0.88]);
        c.validate().unwrap();
    }

    #[test]
    fn malformed_configs() {
        let mut c = RunConfig::defaults("constants");
        assert!(matches!(c.apply_text("colour = red"), Err(Error::Malformed(_))));
        assert!(matches!(c.apply_text("nu 0.9"), Err(Error::Malformed(_))));
        assert!(matches!(c.apply_text("nu = 0.9\nnu = 0.8"), Err(Error::Malformed(_))));
        assert!(c.apply_text("nu = abc").unwrap_err().is_validation());
        assert!(c.apply_text("format = xml").unwrap_err().is_validation());
    }

    #[test]
    fn validation_rejects_bad_windows() {
        let mut c = RunConfig::defaults("spectrum");
        c.emin = 0.5;
        c.emax = 0.2;
        assert!(c.validate().is_err());
        let mut c = RunConfig::defaults("spectrum");
        c.grid.r_min = -1.0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn every_key_is_settable() {
        let values = [
            "0.9", "1", "inf", "1e-8", "40", "100", "8", "1e-6", "1e-3", "-0.5", "0.5", "20", "20", "1", "2", "in.csv",
            "out.json", "json", "7", "1e-8", "true",
        ];
        let mut c = RunConfig::defaults("constants");
        for (k, v) in KEYS.iter().zip(values) {
            c.set(k, v).unwrap_or_else(|e| panic!("{k}: {e}"));
        }
    }
}
