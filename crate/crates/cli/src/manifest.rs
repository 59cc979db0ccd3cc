use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::config::{self, Globals};
use crate::error::{CliError, CliResult};

/// Everything needed to reproduce a run: pass the file back with
/// `--config` and the same subcommand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub config: Map<String, Value>,
    pub seed: u64,
    pub version: String,
    pub duration_secs: f64,
    pub outputs: Vec<PathBuf>,
}

impl RunManifest {
    pub fn new<A: Serialize>(command: &str, g: &Globals, args: &A, elapsed: Duration, outputs: Vec<PathBuf>) -> CliResult<Self> {
        let mut cfg = Map::new();
        config::overlay(&mut cfg, g)?;
        config::overlay(&mut cfg, args)?;
        cfg.remove("json");
        Ok(Self {
            command: command.to_string(),
            config: cfg,
            seed: g.seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            duration_secs: elapsed.as_secs_f64(),
            outputs,
        })
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        let text = serde_json::to_string_pretty(self).map_err(|e| CliError::Runtime(e.to_string()))?;
        fs::write(path, text + "\n").map_err(|e| CliError::io(path, e))
    }
}

/// `dir/name.csv` becomes `dir/name.manifest.json`.
pub fn path_for(output: &Path) -> PathBuf {
    let stem = output.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "run".into());
    output.with_file_name(format!("{stem}.manifest.json"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_path() {
        assert_eq!(path_for(Path::new("out/ccdf_g3.csv")), PathBuf::from("out/ccdf_g3.manifest.json"));
        assert_eq!(path_for(Path::new("pair")), PathBuf::from("pair.manifest.json"));
    }

    #[test]
    fn manifest_round_trips_through_config() {
        let dir = tempfile::tempdir().unwrap();
        let g = Globals { seed: 42, ..Globals::default() };
        let m = RunManifest::new("ccdf", &g, &serde_json::json!({"guards": 2}), Duration::from_millis(5), vec![]).unwrap();
        let path = dir.path().join("x.manifest.json");
        m.write(&path).unwrap();
        let map = config::load(&path).unwrap();
        assert_eq!(map.get("guards"), Some(&serde_json::json!(2)));
        let back: Globals = config::extract(&map).unwrap();
        assert_eq!(back.seed, 42);
    }
}
