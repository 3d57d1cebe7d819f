//! JSON configuration document: `{"system": {...}, "scenario": {...}}`.
//!
//! Both sections are optional and default field by field; unknown keys are
//! rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::CoreError;
use crate::linkmodel::SystemParams;
use crate::simulator::ScenarioConfig;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub system: SystemParams,
    pub scenario: ScenarioConfig,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("config parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Invalid(#[from] CoreError),
}

impl Config {
    pub fn validate(&self) -> Result<(), CoreError> {
        self.system.validate()?;
        self.scenario.validate()
    }
}

pub fn parse_config(text: &str) -> Result<Config, ConfigError> {
    let cfg: Config = serde_json::from_str(text).map_err(|e| ConfigError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn load_config(path: &Path) -> Result<Config, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config(&text)
}
