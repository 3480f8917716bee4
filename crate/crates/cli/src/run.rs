//! The `run` subcommand: every experiment of a file, trials in parallel,
//! results in trial order.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use dkibo::benchmark::CmrMode;
use dkibo::{run_campaign, CampaignResult};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{ExperimentFile, ExperimentSpec};
use crate::output::{self, RowKey, TrajectoryRow, TrajectoryWriter};

pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Complete,
    Failed,
    NotRun,
}

#[derive(Debug, Clone, Serialize)]
pub struct ManifestEntry {
    pub label: String,
    pub benchmark: String,
    pub acquisition: String,
    pub kappa: f64,
    pub trials_requested: usize,
    pub trials_completed: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub complete: bool,
    pub files: Vec<String>,
    pub experiments: Vec<ManifestEntry>,
}

impl Manifest {
    fn write(&self, dir: &Path) -> anyhow::Result<()> {
        let text = serde_json::to_string_pretty(self)? + "\n";
        output::write_atomic(&dir.join(MANIFEST), &text)
    }
}

/// Outcome of one experiment.
#[derive(Debug, Clone)]
pub struct ExperimentRun {
    pub spec: ExperimentSpec,
    /// Completed trials in order, with their index.
    pub trials: Vec<(usize, CampaignResult)>,
}

/// Runs the trials of one experiment on the current rayon pool. Trials
/// after the first failed one are discarded and the failure is returned
/// alongside the completed ones.
pub fn run_experiment(spec: &ExperimentSpec) -> anyhow::Result<(ExperimentRun, Option<dkibo::Error>)> {
    let bench = spec.benchmark()?;
    let outcomes: Vec<dkibo::Result<CampaignResult>> = (0..spec.trials)
        .into_par_iter()
        .map(|t| run_campaign(&spec.campaign(bench.space().clone(), t), bench.objective()))
        .collect();
    let mut trials = Vec::with_capacity(spec.trials);
    let mut error = None;
    for (t, r) in outcomes.into_iter().enumerate() {
        match r {
            Ok(r) if error.is_none() => trials.push((t, r)),
            Ok(_) => {}
            Err(e) => {
                error.get_or_insert(e);
            }
        }
    }
    let run = ExperimentRun {
        spec: spec.clone(),
        trials,
    };
    Ok((run, error))
}

pub fn rows_for(run: &ExperimentRun, mode: CmrMode) -> anyhow::Result<Vec<TrajectoryRow>> {
    let bench = run.spec.benchmark()?;
    let label = run.spec.label();
    let key = RowKey {
        label: &label,
        benchmark: &bench,
        acquisition: run.spec.acquisition.name(),
        kappa: run.spec.kappa,
    };
    Ok(run
        .trials
        .iter()
        .flat_map(|(t, r)| output::trial_rows(&key, *t, r, mode))
        .collect())
}

/// What `run` produced.
#[derive(Debug)]
pub struct RunReport {
    pub output_dir: PathBuf,
    pub manifest: Manifest,
    pub runs: Vec<ExperimentRun>,
    /// First campaign failure; files written so far are kept.
    pub failure: Option<dkibo::Error>,
}

/// Runs every experiment and writes trajectories, summaries and the
/// manifest into `output_dir`. Output is a pure function of the file.
pub fn run_experiments(file: &ExperimentFile, output_dir: &Path, jobs: usize) -> anyhow::Result<RunReport> {
    fs::create_dir_all(output_dir).with_context(|| format!("creating {}", output_dir.display()))?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    let files: Vec<String> = [
        output::TRAJECTORIES,
        output::SUMMARY_SIMPLE,
        output::SUMMARY_CMR,
        output::DROP_STATS,
        output::BANDS,
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let mut manifest = Manifest {
        schema_version: output::CSV_SCHEMA_VERSION,
        complete: false,
        files,
        experiments: file
            .experiments
            .iter()
            .map(|e| ManifestEntry {
                label: e.label(),
                benchmark: e.benchmark.clone(),
                acquisition: e.acquisition.name().to_string(),
                kappa: e.kappa,
                trials_requested: e.trials,
                trials_completed: 0,
                status: Status::NotRun,
                error: None,
            })
            .collect(),
    };
    manifest.write(output_dir)?;

    let mut writer = TrajectoryWriter::create(&output_dir.join(output::TRAJECTORIES))?;
    let mut all_rows = Vec::new();
    let mut runs = Vec::new();
    let mut failure = None;
    for (k, spec) in file.experiments.iter().enumerate() {
        log::info!(
            "experiment {}/{}: {} on {} ({} trials)",
            k + 1,
            file.experiments.len(),
            spec.label(),
            spec.benchmark,
            spec.trials
        );
        let (run, error) = pool.install(|| run_experiment(spec))?;
        let rows = rows_for(&run, file.cmr_mode)?;
        writer.write(&rows)?;
        all_rows.extend(rows);
        let entry = &mut manifest.experiments[k];
        entry.trials_completed = run.trials.len();
        entry.status = if error.is_some() {
            Status::Failed
        } else {
            Status::Complete
        };
        entry.error = error.as_ref().map(|e| e.to_string());
        let failed = error.is_some();
        failure = error;
        runs.push(run);
        manifest.write(output_dir)?;
        if failed {
            break;
        }
    }
    drop(writer);
    output::write_summaries(&all_rows, output_dir)?;
    manifest.complete = failure.is_none();
    manifest.write(output_dir)?;
    Ok(RunReport {
        output_dir: output_dir.to_path_buf(),
        manifest,
        runs,
        failure,
    })
}
