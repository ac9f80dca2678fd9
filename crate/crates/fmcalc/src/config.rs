use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::Value;

use crate::error::{config_err, CliResult};

pub const DEFAULT_SEED: u64 = 20240601;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

/// Settings read from `--config`, `FMCALC_CONFIG` or flags. Flags win.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub tower: Option<Value>,
    pub towers: Option<Vec<Value>>,
    #[serde(rename = "N")]
    pub n: Option<usize>,
    pub weight_bound: Option<u64>,
    pub k_max: Option<u64>,
    pub m_max: Option<u64>,
    pub output: Option<OutputFormat>,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| config_err(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| config_err(format!("{}: {e}", path.display())))
    }

    /// `--config` if given, else `FMCALC_CONFIG`, else defaults.
    pub fn discover(explicit: Option<&PathBuf>) -> CliResult<Self> {
        match explicit {
            Some(p) => RunConfig::load(p),
            None => match std::env::var_os("FMCALC_CONFIG") {
                Some(p) if !p.is_empty() => RunConfig::load(Path::new(&p)),
                _ => Ok(RunConfig::default()),
            },
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        let positive = [
            ("N", self.n.map(|x| x as u64)),
            ("weight_bound", self.weight_bound),
            ("k_max", self.k_max),
            ("m_max", self.m_max),
        ];
        for (name, v) in positive {
            if v == Some(0) {
                return Err(config_err(format!("{name} must be positive")));
            }
        }
        Ok(())
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    pub fn k_max(&self) -> u64 {
        self.k_max.unwrap_or(20)
    }

    pub fn m_max(&self) -> u64 {
        self.m_max.unwrap_or(32)
    }

    pub fn output(&self) -> OutputFormat {
        self.output.unwrap_or_default()
    }

    /// Towers named by the config, single `tower` first.
    pub fn tower_values(&self) -> Vec<Value> {
        self.tower.iter().cloned().chain(self.towers.iter().flatten().cloned()).collect()
    }
}
