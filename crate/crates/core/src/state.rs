//! On-disk ask/tell state.
//!
//! The file is a single JSON object:
//!
//! | field | meaning |
//! |---|---|
//! | `schema_version` | integer, currently 1; checked before anything else is read |
//! | `rng` | generator description: algorithm, base seed, stream layout |
//! | `optimizer.config` | the full campaign configuration |
//! | `optimizer.initial_design` | the `n_init` seeded initial points |
//! | `optimizer.data.observations` | every `(x, y)` in order, original units |
//! | `optimizer.augment` | `gamma`, `dropped`, `drop_iteration` |
//! | `optimizer.mean_mode` | current GP prior mean, `zero` or `linear` |
//! | `optimizer.mean_swap_iteration` | iteration the mean was switched off, if ever |
//! | `optimizer.warm_start` | last GP hyperparameters, the next fit's first start |
//! | `optimizer.gamma_history` | effective γ after each iteration |
//! | `optimizer.pending` | the outstanding suggestion, if any |
//!
//! No generator position is stored: every random draw comes from a stream
//! derived from the seed, a purpose and the iteration number, so the
//! observations determine all future draws.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimizer::{CampaignConfig, Optimizer};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngDescriptor {
    pub algorithm: String,
    pub seed: u64,
    pub streams: String,
}

impl RngDescriptor {
    fn for_seed(seed: u64) -> Self {
        Self {
            algorithm: "chacha8".into(),
            seed,
            streams: "purpose << 48 | iteration; 1 initial design, 2 gp restarts, 3 acquisition, 4 regressor, 5 random search"
                .into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub schema_version: u32,
    pub rng: RngDescriptor,
    pub optimizer: Optimizer,
}

#[derive(Deserialize)]
struct VersionProbe {
    schema_version: Option<u32>,
}

impl StateFile {
    pub fn new(optimizer: Optimizer) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            rng: RngDescriptor::for_seed(optimizer.config().seed),
            optimizer,
        }
    }

    pub fn create(config: CampaignConfig) -> Result<Self> {
        Ok(Self::new(Optimizer::new(config)?))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let probe: VersionProbe =
            serde_json::from_str(text).map_err(|e| Error::State(format!("not a state document: {e}")))?;
        match probe.schema_version {
            Some(SCHEMA_VERSION) => {}
            Some(found) => {
                return Err(Error::SchemaVersion {
                    found,
                    expected: SCHEMA_VERSION,
                })
            }
            None => return Err(Error::State("missing schema_version".into())),
        }
        let state: Self = serde_json::from_str(text).map_err(|e| Error::State(e.to_string()))?;
        state.optimizer.config().validate()?;
        if state.rng.seed != state.optimizer.config().seed {
            return Err(Error::State("rng seed disagrees with config seed".into()));
        }
        Ok(state)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("state serializes")
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    /// Writes to a sibling temporary file, then renames it over `path`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let dir = path
            .parent()
            .filter(|p| !p.as_os_str().is_empty())
            .unwrap_or(Path::new("."));
        let name = path
            .file_name()
            .ok_or_else(|| Error::State(format!("{} is not a file path", path.display())))?;
        let tmp = dir.join(format!(".{}.tmp", name.to_string_lossy()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(self.to_json().as_bytes())?;
            f.write_all(b"\n")?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::SearchSpace;

    fn state() -> StateFile {
        let cfg = CampaignConfig::new(SearchSpace::new(vec![-1.0, 0.0], vec![1.0, 5.0]).unwrap(), 11)
            .with_iterations(4)
            .normalized();
        StateFile::create(cfg).unwrap()
    }

    #[test]
    fn json_round_trip_is_exact() {
        let mut s = state();
        s.optimizer
            .observe(vec![0.1 + 0.2, 1.0 / 3.0], std::f64::consts::PI)
            .unwrap();
        let back = StateFile::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn schema_version_checked_first() {
        let mut v: serde_json::Value = serde_json::from_str(&state().to_json()).unwrap();
        v["schema_version"] = 7.into();
        v["optimizer"] = serde_json::Value::Null;
        let err = StateFile::from_json(&v.to_string()).unwrap_err();
        assert!(matches!(err, Error::SchemaVersion { found: 7, expected: 1 }));
        assert!(matches!(StateFile::from_json("{}"), Err(Error::State(_))));
        assert!(matches!(StateFile::from_json("nonsense"), Err(Error::State(_))));
    }

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("state.json");
        let s = state();
        s.save(&path).unwrap();
        assert_eq!(StateFile::load(&path).unwrap(), s);
        let names: Vec<_> = fs::read_dir(dir.path())
            .unwrap()
            .map(|e| e.unwrap().file_name())
            .collect();
        assert_eq!(names.len(), 1);
    }
}
