use std::path::Path;

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

/// Environment variable naming a TOML file with default settings.
pub const CONFIG_ENV: &str = "LGCY_CONFIG";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BranchMeta {
    pub xi: String,
    pub t: String,
    pub contour: String,
    pub fractional_powers: String,
}

impl Default for BranchMeta {
    fn default() -> Self {
        let b = continuation::BRANCH;
        Self {
            xi: b.xi.into(),
            t: b.t.into(),
            contour: b.contour.into(),
            fractional_powers: b.fractional_powers.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    pub truncation_order: usize,
    pub precision_digits: u32,
    pub thread_count: Option<usize>,
    pub output_format: Format,
    pub branch: BranchMeta,
}

impl Default for Config {
    fn default() -> Self {
        Self { truncation_order: 30, precision_digits: 80, thread_count: None, output_format: Format::Json, branch: BranchMeta::default() }
    }
}

impl Config {
    pub fn from_toml(text: &str) -> anyhow::Result<Self> {
        let c: Self = toml::from_str(text)?;
        c.validate()?;
        Ok(c)
    }

    /// Defaults, overridden by the file in `LGCY_CONFIG` when it is set.
    pub fn load() -> anyhow::Result<Self> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) => Self::from_file(Path::new(&p)),
            None => Ok(Self::default()),
        }
    }

    pub fn from_file(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_toml(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.truncation_order < 5 {
            bail!("truncation order must be at least 5, got {}", self.truncation_order);
        }
        if self.precision_digits < 30 {
            bail!("precision must be at least 30 digits, got {}", self.precision_digits);
        }
        if self.thread_count == Some(0) {
            bail!("thread count must be positive");
        }
        Ok(())
    }
}
