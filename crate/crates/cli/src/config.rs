//! Defaults for the global options, read from a TOML file.
//!
//! Precedence is command-line flag, then `BERRYKIT_*` environment variable,
//! then the config file, then the built-in default.

use std::path::Path;

use serde::Deserialize;

pub const DEFAULT_BUDGET: u64 = 64;
pub const DEFAULT_SEED: u64 = 0;

#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub budget: Option<u64>,
    pub cap: Option<u64>,
    pub seed: Option<u64>,
    pub json: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

/// Effective global settings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Settings {
    pub budget: u64,
    pub cap: u64,
    pub seed: u64,
    pub json: bool,
}

impl Settings {
    pub fn resolve(
        budget: Option<u64>,
        cap: Option<u64>,
        seed: Option<u64>,
        json: bool,
        file: &FileConfig,
    ) -> Settings {
        Settings {
            budget: budget.or(file.budget).unwrap_or(DEFAULT_BUDGET),
            cap: cap.or(file.cap).unwrap_or(berrykit::berry::DEFAULT_CAP),
            seed: seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            json: json || file.json.unwrap_or(false),
        }
    }
}
