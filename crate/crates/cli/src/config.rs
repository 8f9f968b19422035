//! `key = value` config files and the merged run settings.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Network {
    /// Recorded fixtures and the cache only.
    #[default]
    Offline,
    /// Download b-files and record them in the cache directory.
    Fetch,
}

impl FromStr for Format {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        <Self as clap::ValueEnum>::from_str(s, true).map_err(|_| CliError::Usage(format!("unknown format {s:?}")))
    }
}

impl FromStr for Network {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        <Self as clap::ValueEnum>::from_str(s, true).map_err(|_| CliError::Usage(format!("unknown network policy {s:?}")))
    }
}

/// Values read from a config file; unset keys stay `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FileConfig {
    pub format: Option<Format>,
    pub cache: Option<PathBuf>,
    pub network: Option<Network>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut c = FileConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", i + 1)))?;
            let v = v.trim();
            match k.trim() {
                "format" => c.format = Some(v.parse()?),
                "cache" => c.cache = Some(PathBuf::from(v)),
                "network" => c.network = Some(v.parse()?),
                other => return Err(CliError::Usage(format!("config line {}: unknown key {other:?}", i + 1))),
            }
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

/// Settings after merging flags, environment and config file (in that order of precedence).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunConfig {
    pub format: Format,
    pub cache: Option<PathBuf>,
    pub network: Network,
}

impl RunConfig {
    pub fn merge(format: Option<Format>, cache: Option<PathBuf>, network: Option<Network>, file: FileConfig) -> Self {
        RunConfig {
            format: format.or(file.format).unwrap_or_default(),
            cache: cache.or(file.cache),
            network: network.or(file.network).unwrap_or_default(),
        }
    }
}
