//! Config-file and flag merging. A config file is a JSON object whose keys
//! are flag names with `-` replaced by `_`; a run manifest is accepted too,
//! in which case its `config` object is used. Flags given on the command
//! line win over the file.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

/// Options shared by every subcommand, after merging.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Globals {
    pub seed: u64,
    pub oversample: usize,
    pub out_dir: PathBuf,
    pub json: bool,
}

impl Default for Globals {
    fn default() -> Self {
        Self { seed: 1, oversample: 4, out_dir: PathBuf::from("."), json: false }
    }
}

pub fn load(path: &Path) -> CliResult<Map<String, Value>> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("config {} is not valid JSON: {e}", path.display())))?;
    match value {
        Value::Object(mut map) => match map.remove("config") {
            Some(Value::Object(inner)) if map.contains_key("command") => Ok(inner),
            Some(other) => {
                map.insert("config".into(), other);
                Ok(map)
            }
            None => Ok(map),
        },
        _ => Err(CliError::Validation(format!("config {} must be a JSON object", path.display()))),
    }
}

/// Lays the non-null fields of each `layer` over `base`.
pub fn overlay<S: Serialize>(base: &mut Map<String, Value>, layer: &S) -> CliResult<()> {
    let value = serde_json::to_value(layer).map_err(|e| CliError::Runtime(e.to_string()))?;
    if let Value::Object(map) = value {
        for (k, v) in map {
            if !v.is_null() {
                base.insert(k, v);
            }
        }
    }
    Ok(())
}

pub fn extract<T: DeserializeOwned>(merged: &Map<String, Value>) -> CliResult<T> {
    serde_json::from_value(Value::Object(merged.clone()))
        .map_err(|e| CliError::Validation(format!("invalid configuration: {e}")))
}
