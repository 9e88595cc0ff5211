//! Run configuration: tolerance set, named grids, seed, and output
//! selection. Sources are layered lowest-priority first: built-in
//! defaults, the `SENDOV_LAB_SEED` environment variable, an optional
//! `key=value` config file, then command-line flags.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use sendov_core::Tols;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutFormat {
    Json,
    Csv,
}

impl FromStr for OutFormat {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutFormat::Json),
            "csv" => Ok(OutFormat::Csv),
            other => bail!("unknown format {other:?} (expected json or csv)"),
        }
    }
}

impl fmt::Display for OutFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutFormat::Json => "json",
            OutFormat::Csv => "csv",
        })
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub tols: Tols,
    pub grids: BTreeMap<String, Vec<f64>>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: OutFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tols: Tols::default(),
            grids: BTreeMap::new(),
            seed: 0,
            out: None,
            format: OutFormat::Json,
        }
    }
}

impl RunConfig {
    /// Defaults plus the `SENDOV_LAB_SEED` fallback.
    pub fn from_env() -> Result<Self> {
        let mut cfg = RunConfig::default();
        if let Ok(v) = std::env::var("SENDOV_LAB_SEED") {
            cfg.seed = v
                .parse()
                .with_context(|| format!("SENDOV_LAB_SEED={v:?} is not an integer"))?;
        }
        Ok(cfg)
    }

    /// Applies a `key=value` config file on top of `self`. Blank lines
    /// and `#` comments are ignored; `grid.<name>` keys take a
    /// comma-separated list of reals.
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .with_context(|| format!("{}:{}: expected key=value", path.display(), lineno + 1))?;
            self.apply_pair(key.trim(), value.trim())
                .with_context(|| format!("{}:{}", path.display(), lineno + 1))?;
        }
        self.validate()
    }

    fn apply_pair(&mut self, key: &str, value: &str) -> Result<()> {
        let tol = |v: &str| -> Result<f64> {
            let x: f64 = v.parse().with_context(|| format!("bad real {v:?}"))?;
            Ok(x)
        };
        match key {
            "root_residual_tol" => self.tols.root_residual_tol = tol(value)?,
            "classify_tol" => self.tols.classify_tol = tol(value)?,
            "pos_sing_tol" => self.tols.pos_sing_tol = tol(value)?,
            "crit_tie_tol" => self.tols.crit_tie_tol = tol(value)?,
            "boundary_tol" => self.tols.boundary_tol = tol(value)?,
            "simple_root_tol" => self.tols.simple_root_tol = tol(value)?,
            "seed" => {
                self.seed = value
                    .parse()
                    .with_context(|| format!("bad seed {value:?}"))?
            }
            "format" => self.format = value.parse()?,
            "out" => self.out = Some(PathBuf::from(value)),
            _ => {
                if let Some(name) = key.strip_prefix("grid.") {
                    let mut grid = Vec::new();
                    for part in value.split(',') {
                        grid.push(tol(part.trim())?);
                    }
                    self.grids.insert(name.to_string(), grid);
                } else {
                    bail!("unknown config key {key:?}");
                }
            }
        }
        Ok(())
    }

    /// All tolerances must be positive.
    pub fn validate(&self) -> Result<()> {
        let entries = [
            ("root_residual_tol", self.tols.root_residual_tol),
            ("classify_tol", self.tols.classify_tol),
            ("pos_sing_tol", self.tols.pos_sing_tol),
            ("crit_tie_tol", self.tols.crit_tie_tol),
            ("boundary_tol", self.tols.boundary_tol),
            ("simple_root_tol", self.tols.simple_root_tol),
        ];
        for (name, v) in entries {
            if !(v > 0.0) || !v.is_finite() {
                bail!("tolerance {name} must be positive (got {v})");
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn parses_file_and_overrides() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(
            f,
            "# experiment\nclassify_tol = 1e-7\nseed=42\nformat = csv\ngrid.a = 0.001, 0.002,0.004"
        )
        .unwrap();
        let mut cfg = RunConfig::default();
        cfg.apply_file(f.path()).unwrap();
        assert_eq!(cfg.tols.classify_tol, 1e-7);
        assert_eq!(cfg.seed, 42);
        assert_eq!(cfg.format, OutFormat::Csv);
        assert_eq!(cfg.grids["a"], vec![0.001, 0.002, 0.004]);
    }

    #[test]
    fn rejects_bad_entries() {
        for bad in [
            "classify_tol = 0.0",
            "classify_tol = -1e-8",
            "mystery = 1",
            "seed = not-a-number",
            "no equals sign",
        ] {
            let mut f = tempfile::NamedTempFile::new().unwrap();
            writeln!(f, "{bad}").unwrap();
            let mut cfg = RunConfig::default();
            assert!(cfg.apply_file(f.path()).is_err(), "{bad}");
        }
    }
}
