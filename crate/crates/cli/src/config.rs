//! Flat key-value config files mirroring the command-line flags.
//!
//! A config file is a single JSON object whose keys are the long flag names
//! (`"state": "bell-plus"`, `"energy-ev": 2.48`, `"force": true`). Values
//! given on the command line take precedence over config values.

use std::path::Path;

use serde_json::{Map, Value};

use crate::commands::CliError;

pub struct ConfigFile {
    values: Map<String, Value>,
}

impl ConfigFile {
    pub fn empty() -> Self {
        Self { values: Map::new() }
    }

    /// Load a config file and reject keys the command does not understand.
    pub fn load(path: &Path, allowed_keys: &[&str]) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Usage(format!("cannot read config file {}: {e}", path.display()))
        })?;
        let values: Map<String, Value> = serde_json::from_str(&text).map_err(|e| {
            CliError::Usage(format!(
                "config file {} is not a flat JSON object: {e}",
                path.display()
            ))
        })?;
        for key in values.keys() {
            if !allowed_keys.contains(&key.as_str()) {
                return Err(CliError::Usage(format!(
                    "unknown config key `{key}` in {}",
                    path.display()
                )));
            }
        }
        Ok(Self { values })
    }

    pub fn string(&self, key: &str, cli: Option<String>) -> Result<Option<String>, CliError> {
        if cli.is_some() {
            return Ok(cli);
        }
        match self.values.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(other) => Err(type_error(key, "a string", other)),
        }
    }

    pub fn f64(&self, key: &str, cli: Option<f64>) -> Result<Option<f64>, CliError> {
        if cli.is_some() {
            return Ok(cli);
        }
        match self.values.get(key) {
            None => Ok(None),
            Some(Value::Number(n)) => Ok(n.as_f64()),
            Some(other) => Err(type_error(key, "a number", other)),
        }
    }

    pub fn u64(&self, key: &str, cli: Option<u64>) -> Result<Option<u64>, CliError> {
        if cli.is_some() {
            return Ok(cli);
        }
        match self.values.get(key) {
            None => Ok(None),
            Some(Value::Number(n)) if n.as_u64().is_some() => Ok(n.as_u64()),
            Some(other) => Err(type_error(key, "a non-negative integer", other)),
        }
    }

    /// Flags: true on the command line wins; otherwise the config value.
    pub fn flag(&self, key: &str, cli: bool) -> Result<bool, CliError> {
        if cli {
            return Ok(true);
        }
        match self.values.get(key) {
            None => Ok(false),
            Some(Value::Bool(b)) => Ok(*b),
            Some(other) => Err(type_error(key, "a boolean", other)),
        }
    }
}

fn type_error(key: &str, wanted: &str, got: &Value) -> CliError {
    CliError::Usage(format!("config key `{key}` must be {wanted}, got {got}"))
}
