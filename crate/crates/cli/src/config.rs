//! Experiment files.
//!
//! ```json
//! {
//!   "output_dir": "results/table1",
//!   "jobs": 4,
//!   "cmr_mode": "instantaneous",
//!   "experiments": [
//!     {"variant": "dkibo", "benchmark": "branin", "trials": 50},
//!     {"variant": "sbo", "benchmark": "branin", "trials": 50, "acquisition": "ei"}
//!   ]
//! }
//! ```
//!
//! Experiment fields and defaults: `label` (derived from variant and
//! regressor), `variant`, `benchmark`, `acquisition` = `ucb`, `kappa` = 2.6,
//! `xi_offset` = 0, `epsilon` = 0.05, `schedule` = true, `regressor` =
//! `{"kind": "random_forest"}`, `trials` = 50, `i_max` = 100, `n_init` = 5,
//! `base_seed` = 0, `search` (inner optimizer budgets). Trial `t` uses seed
//! `base_seed + t`. Unknown fields are rejected.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use dkibo::benchmark::{Benchmark, CmrMode};
use dkibo::optimizer::SearchOptions;
use dkibo::{AcquisitionConfig, AcquisitionKind, CampaignConfig, RegressorKind, RegressorSpec, Variant};
use serde::{Deserialize, Serialize};

pub const OUTPUT_DIR_ENV: &str = "DKIBO_OUTPUT_DIR";
pub const JOBS_ENV: &str = "DKIBO_JOBS";

fn default_kappa() -> f64 {
    2.6
}
fn default_epsilon() -> f64 {
    0.05
}
fn default_trials() -> usize {
    50
}
fn default_i_max() -> usize {
    100
}
fn default_n_init() -> usize {
    5
}
fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    #[serde(default)]
    pub label: Option<String>,
    pub variant: Variant,
    pub benchmark: String,
    #[serde(default)]
    pub acquisition: AcquisitionKind,
    #[serde(default = "default_kappa")]
    pub kappa: f64,
    #[serde(default)]
    pub xi_offset: f64,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default = "yes")]
    pub schedule: bool,
    #[serde(default)]
    pub regressor: RegressorSpec,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "default_i_max")]
    pub i_max: usize,
    #[serde(default = "default_n_init")]
    pub n_init: usize,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default)]
    pub search: SearchOptions,
}

impl ExperimentSpec {
    pub fn new(variant: Variant, benchmark: &str) -> Self {
        Self {
            label: None,
            variant,
            benchmark: benchmark.to_string(),
            acquisition: AcquisitionKind::Ucb,
            kappa: default_kappa(),
            xi_offset: 0.0,
            epsilon: default_epsilon(),
            schedule: true,
            regressor: RegressorSpec::random_forest(),
            trials: default_trials(),
            i_max: default_i_max(),
            n_init: default_n_init(),
            base_seed: 0,
            search: SearchOptions::default(),
        }
    }

    /// Column name in the summaries: `label` if given, else the variant,
    /// with the regressor appended for DKIBO runs that do not use a forest.
    pub fn label(&self) -> String {
        if let Some(l) = &self.label {
            return l.clone();
        }
        match (self.variant, self.regressor.kind) {
            (Variant::Dkibo, RegressorKind::RandomForest) => "dkibo".into(),
            (Variant::Dkibo, kind) => format!("dkibo_{}", kind_name(kind)),
            (v, _) => v.name().into(),
        }
    }

    pub fn benchmark(&self) -> dkibo::Result<Benchmark> {
        Benchmark::by_name(&self.benchmark)
    }

    /// Campaign configuration of trial `trial`.
    pub fn campaign(&self, space: dkibo::SearchSpace, trial: usize) -> CampaignConfig {
        CampaignConfig {
            space,
            variant: self.variant,
            acquisition: AcquisitionConfig {
                kind: self.acquisition,
                kappa: self.kappa,
                xi_offset: self.xi_offset,
                epsilon: self.epsilon,
                i_max: self.i_max.max(1),
                schedule_enabled: self.schedule,
            },
            regressor: self.regressor.clone(),
            n_init: self.n_init,
            i_max: self.i_max,
            seed: self.base_seed + trial as u64,
            search: self.search,
        }
    }
}

fn kind_name(kind: RegressorKind) -> &'static str {
    match kind {
        RegressorKind::RandomForest => "random_forest",
        RegressorKind::GradientBoosting => "gradient_boosting",
        RegressorKind::Linear => "linear",
        RegressorKind::None => "none",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentFile {
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    /// Worker threads for trials; defaults to the available cores.
    #[serde(default)]
    pub jobs: Option<usize>,
    #[serde(default)]
    pub cmr_mode: CmrMode,
    pub experiments: Vec<ExperimentSpec>,
}

impl ExperimentFile {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let file: Self = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        file.validate()?;
        Ok(file)
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.experiments.is_empty() {
            bail!("experiments: at least one experiment is required");
        }
        if self.jobs == Some(0) {
            bail!("jobs: must be at least 1");
        }
        let mut keys = std::collections::BTreeSet::new();
        for (k, e) in self.experiments.iter().enumerate() {
            let at = |field: &str| format!("experiments[{k}].{field}");
            let bench = e.benchmark().with_context(|| at("benchmark"))?;
            if e.trials == 0 {
                bail!("{}: must be at least 1", at("trials"));
            }
            e.campaign(bench.space().clone(), 0)
                .validate()
                .with_context(|| format!("experiments[{k}]"))?;
            let key = (bench.name(), e.acquisition.name(), e.kappa.to_bits(), e.label());
            if !keys.insert(key) {
                bail!(
                    "{}: `{}` appears twice for {} / {} / kappa {}; give one of them a distinct label",
                    at("label"),
                    e.label(),
                    bench.name(),
                    e.acquisition.name(),
                    e.kappa
                );
            }
        }
        Ok(())
    }

    /// Output directory after applying the environment override.
    pub fn resolved_output_dir(&self, fallback: &Path) -> PathBuf {
        match std::env::var_os(OUTPUT_DIR_ENV) {
            Some(v) if !v.is_empty() => PathBuf::from(v),
            _ => self.output_dir.clone().unwrap_or_else(|| fallback.to_path_buf()),
        }
    }

    /// Worker count after applying the environment override.
    pub fn resolved_jobs(&self) -> anyhow::Result<usize> {
        if let Ok(v) = std::env::var(JOBS_ENV) {
            let n: usize = v
                .parse()
                .with_context(|| format!("{JOBS_ENV}={v} is not a positive integer"))?;
            if n == 0 {
                bail!("{JOBS_ENV} must be at least 1");
            }
            return Ok(n);
        }
        Ok(self
            .jobs
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> anyhow::Result<ExperimentFile> {
        let f: ExperimentFile = serde_json::from_str(s)?;
        f.validate()?;
        Ok(f)
    }

    #[test]
    fn minimal_file_gets_documented_defaults() {
        let f = parse(r#"{"experiments": [{"variant": "dkibo", "benchmark": "branin"}]}"#).unwrap();
        let e = &f.experiments[0];
        assert_eq!(
            (e.trials, e.i_max, e.n_init, e.kappa, e.epsilon),
            (50, 100, 5, 2.6, 0.05)
        );
        assert_eq!(e.regressor, RegressorSpec::random_forest());
        assert_eq!(e.label(), "dkibo");
        assert_eq!(e.campaign(e.benchmark().unwrap().space().clone(), 3).seed, 3);
    }

    #[test]
    fn diagnostics_name_the_field() {
        let err = parse(r#"{"experiments": [{"variant": "dkibo", "benchmark": "branin", "kapa": 1}]}"#).unwrap_err();
        assert!(err.to_string().contains("kapa"), "{err}");
        let err = parse(r#"{"experiments": [{"variant": "sbo", "benchmark": "nope"}]}"#).unwrap_err();
        assert!(format!("{err:#}").contains("experiments[0].benchmark"), "{err:#}");
        let err = parse(r#"{"experiments": [{"variant": "sbo", "benchmark": "branin", "n_init": 1}]}"#).unwrap_err();
        assert!(format!("{err:#}").contains("n_init"), "{err:#}");
        let err = parse(r#"{"experiments": [{"variant": "sbo", "benchmark": "branin", "kappa": -1}]}"#).unwrap_err();
        assert!(format!("{err:#}").contains("experiments[0]"), "{err:#}");
    }

    #[test]
    fn duplicate_columns_rejected() {
        let s = r#"{"experiments": [
            {"variant": "dkibo", "benchmark": "branin"},
            {"variant": "dkibo", "benchmark": "branin", "regressor": {"kind": "random_forest", "n_estimators": 5}}
        ]}"#;
        assert!(parse(s).is_err());
        let s = r#"{"experiments": [
            {"variant": "dkibo", "benchmark": "branin"},
            {"variant": "dkibo", "benchmark": "branin", "regressor": {"kind": "gradient_boosting"}}
        ]}"#;
        let f = parse(s).unwrap();
        assert_eq!(f.experiments[1].label(), "dkibo_gradient_boosting");
    }
}
