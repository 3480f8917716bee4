//! CSV files written by `run` and read back by `report`.
//!
//! Every file starts with a `schema_version,<n>` row, then a header row.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context};
use dkibo::benchmark::{aggregate, summarize, Benchmark, CmrMode, DropStats, RegretSeries};
use dkibo::CampaignResult;
use serde::{Deserialize, Serialize};

pub const CSV_SCHEMA_VERSION: u32 = 1;

pub const TRAJECTORIES: &str = "trajectories.csv";
pub const SUMMARY_SIMPLE: &str = "summary_simple_regret.csv";
pub const SUMMARY_CMR: &str = "summary_cmr.csv";
pub const DROP_STATS: &str = "drop_stats.csv";
pub const BANDS: &str = "bands.csv";

/// One evaluation. `y` and `best_y` are in the benchmark's own units
/// (minimized for every suite function except `mixture_demo`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRow {
    pub variant: String,
    pub benchmark: String,
    pub acquisition: String,
    pub kappa: f64,
    pub trial: usize,
    /// 0 for the initial design.
    pub iteration: usize,
    /// Coordinates joined with `;`.
    pub x: String,
    pub y: f64,
    pub best_y: f64,
    pub simple_regret: f64,
    pub cmr: f64,
    pub gamma: f64,
    pub dropped: u8,
}

/// Identity of one experiment's rows.
#[derive(Debug, Clone)]
pub struct RowKey<'a> {
    pub label: &'a str,
    pub benchmark: &'a Benchmark,
    pub acquisition: &'a str,
    pub kappa: f64,
}

pub fn trial_rows(key: &RowKey, trial: usize, result: &CampaignResult, mode: CmrMode) -> Vec<TrajectoryRow> {
    let b = key.benchmark;
    let native: Vec<f64> = result.trajectory.iter().map(|p| b.from_maximize(p.y)).collect();
    let regrets: Vec<f64> = native.iter().map(|&v| b.regret(v)).collect();
    let series = RegretSeries::from_regrets(&regrets, result.seed, mode);
    result
        .trajectory
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let dropped = result.drop_iteration.is_some_and(|d| p.iteration >= d);
            let gamma = match p.iteration {
                0 => result.gamma,
                i => result.gamma_history[i - 1],
            };
            TrajectoryRow {
                variant: key.label.to_string(),
                benchmark: b.name().to_string(),
                acquisition: key.acquisition.to_string(),
                kappa: key.kappa,
                trial,
                iteration: p.iteration,
                x: join(&p.x),
                y: native[k],
                best_y: b.from_maximize(result.best_y[k]),
                simple_regret: series.simple[k],
                cmr: series.cumulative_mean[k],
                gamma,
                dropped: dropped as u8,
            }
        })
        .collect()
}

fn join(x: &[f64]) -> String {
    x.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(";")
}

fn writer(path: &Path) -> anyhow::Result<csv::Writer<fs::File>> {
    let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(file);
    w.write_record(["schema_version", &CSV_SCHEMA_VERSION.to_string()])?;
    Ok(w)
}

/// Streams trajectory rows to a file.
pub struct TrajectoryWriter {
    inner: csv::Writer<fs::File>,
}

impl TrajectoryWriter {
    pub fn create(path: &Path) -> anyhow::Result<Self> {
        Ok(Self { inner: writer(path)? })
    }

    pub fn write(&mut self, rows: &[TrajectoryRow]) -> anyhow::Result<()> {
        for r in rows {
            self.inner.serialize(r)?;
        }
        self.inner.flush()?;
        Ok(())
    }
}

pub fn read_trajectories(path: &Path) -> anyhow::Result<Vec<TrajectoryRow>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_path(path)
        .with_context(|| format!("opening {}", path.display()))?;
    let mut records = rdr.records();
    let version = records.next().transpose()?;
    match version.as_ref().map(|r| (r.get(0), r.get(1))) {
        Some((Some("schema_version"), Some(v))) if v == CSV_SCHEMA_VERSION.to_string() => {}
        Some((Some("schema_version"), Some(v))) => {
            bail!(
                "{}: schema version {v} is not supported (expected {CSV_SCHEMA_VERSION})",
                path.display()
            )
        }
        _ => bail!("{}: missing schema_version row", path.display()),
    }
    let header = records
        .next()
        .transpose()?
        .with_context(|| format!("{}: missing header row", path.display()))?;
    let mut rows = Vec::new();
    for (k, rec) in records.enumerate() {
        let rec = rec?;
        let row: TrajectoryRow = rec
            .deserialize(Some(&header))
            .with_context(|| format!("{}: data row {}", path.display(), k + 1))?;
        rows.push(row);
    }
    Ok(rows)
}

/// Rows of one (benchmark, acquisition, κ, variant) cell, split by trial.
#[derive(Debug, Clone)]
pub struct Group {
    pub benchmark: String,
    pub acquisition: String,
    pub kappa: f64,
    pub label: String,
    pub trials: Vec<Vec<TrajectoryRow>>,
}

impl Group {
    fn row_key(&self) -> (String, String, String) {
        (self.benchmark.clone(), self.acquisition.clone(), self.kappa.to_string())
    }

    pub fn series(&self) -> Vec<RegretSeries> {
        self.trials
            .iter()
            .map(|rows| RegretSeries {
                simple: rows.iter().map(|r| r.simple_regret).collect(),
                cumulative_mean: rows.iter().map(|r| r.cmr).collect(),
                seed: rows[0].trial as u64,
            })
            .collect()
    }

    pub fn drop_iterations(&self) -> Vec<Option<usize>> {
        self.trials
            .iter()
            .map(|rows| rows.iter().find(|r| r.dropped == 1).map(|r| r.iteration))
            .collect()
    }
}

/// Groups rows in order of first appearance.
pub fn group_rows(rows: &[TrajectoryRow]) -> Vec<Group> {
    let mut groups: Vec<Group> = Vec::new();
    for r in rows {
        let g = match groups.iter_mut().position(|g| {
            g.benchmark == r.benchmark && g.acquisition == r.acquisition && g.kappa == r.kappa && g.label == r.variant
        }) {
            Some(i) => &mut groups[i],
            None => {
                groups.push(Group {
                    benchmark: r.benchmark.clone(),
                    acquisition: r.acquisition.clone(),
                    kappa: r.kappa,
                    label: r.variant.clone(),
                    trials: Vec::new(),
                });
                groups.last_mut().expect("just pushed")
            }
        };
        match g.trials.last_mut() {
            Some(t) if t[0].trial == r.trial => t.push(r.clone()),
            _ => g.trials.push(vec![r.clone()]),
        }
    }
    groups
}

/// `median±std` with three decimals of mantissa.
pub fn cell(values: &[f64]) -> String {
    let s = summarize(values);
    format!("{:.3e}±{:.3e}", s.median, s.std_dev)
}

/// Benchmarks (with acquisition and κ) as rows, variants as columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<(String, String, String, Vec<String>)>,
}

impl Table {
    fn build(groups: &[Group], value: impl Fn(&Group) -> String) -> Self {
        let mut columns: Vec<String> = Vec::new();
        let mut keys: Vec<(String, String, String)> = Vec::new();
        for g in groups {
            if !columns.contains(&g.label) {
                columns.push(g.label.clone());
            }
            if !keys.contains(&g.row_key()) {
                keys.push(g.row_key());
            }
        }
        let rows = keys
            .into_iter()
            .map(|k| {
                let cells = columns
                    .iter()
                    .map(|c| {
                        groups
                            .iter()
                            .find(|g| &g.label == c && g.row_key() == k)
                            .map_or_else(String::new, &value)
                    })
                    .collect();
                (k.0, k.1, k.2, cells)
            })
            .collect();
        Self { columns, rows }
    }

    pub fn final_simple_regret(groups: &[Group]) -> Self {
        Self::build(groups, |g| {
            cell(
                &g.trials
                    .iter()
                    .map(|t| t.last().expect("non-empty").simple_regret)
                    .collect::<Vec<_>>(),
            )
        })
    }

    pub fn final_cmr(groups: &[Group]) -> Self {
        Self::build(groups, |g| {
            cell(
                &g.trials
                    .iter()
                    .map(|t| t.last().expect("non-empty").cmr)
                    .collect::<Vec<_>>(),
            )
        })
    }

    pub fn write(&self, path: &Path) -> anyhow::Result<()> {
        let mut w = writer(path)?;
        let mut header = vec!["benchmark".to_string(), "acquisition".into(), "kappa".into()];
        header.extend(self.columns.iter().cloned());
        w.write_record(&header)?;
        for (b, a, k, cells) in &self.rows {
            let mut rec = vec![b.clone(), a.clone(), k.clone()];
            rec.extend(cells.iter().cloned());
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Fixed-width rendering for terminals.
    pub fn render(&self) -> String {
        let mut lines = vec![{
            let mut h = vec!["benchmark".to_string(), "acq".into(), "kappa".into()];
            h.extend(self.columns.iter().cloned());
            h
        }];
        for (b, a, k, cells) in &self.rows {
            let mut l = vec![b.clone(), a.clone(), k.clone()];
            l.extend(cells.iter().cloned());
            lines.push(l);
        }
        let widths: Vec<usize> = (0..lines[0].len())
            .map(|c| lines.iter().map(|l| l[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for l in &lines {
            let cells: Vec<String> = l.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

pub fn write_drop_stats(groups: &[Group], path: &Path) -> anyhow::Result<()> {
    let mut w = writer(path)?;
    w.write_record([
        "variant",
        "benchmark",
        "acquisition",
        "kappa",
        "trials",
        "never_dropped",
        "median",
        "q25",
        "q75",
        "outliers",
    ])?;
    let opt = |v: Option<f64>| v.map_or_else(String::new, |v| v.to_string());
    for g in groups {
        let d = DropStats::from_iterations(&g.drop_iterations());
        let outliers: Vec<String> = d.outliers.iter().map(|o| o.to_string()).collect();
        w.write_record([
            g.label.clone(),
            g.benchmark.clone(),
            g.acquisition.clone(),
            g.kappa.to_string(),
            d.trials.to_string(),
            d.never_dropped.to_string(),
            opt(d.median),
            opt(d.q25),
            opt(d.q75),
            outliers.join(";"),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Per-evaluation median and interquartile band of both regrets.
pub fn write_bands(groups: &[Group], path: &Path) -> anyhow::Result<()> {
    let mut w = writer(path)?;
    w.write_record([
        "variant",
        "benchmark",
        "acquisition",
        "kappa",
        "evaluation",
        "simple_median",
        "simple_q25",
        "simple_q75",
        "cmr_median",
        "cmr_q25",
        "cmr_q75",
    ])?;
    for g in groups {
        let agg = aggregate(&g.series());
        for (s, c) in agg.simple.iter().zip(&agg.cumulative_mean) {
            w.write_record([
                g.label.clone(),
                g.benchmark.clone(),
                g.acquisition.clone(),
                g.kappa.to_string(),
                (s.iteration + 1).to_string(),
                s.median.to_string(),
                s.q25.to_string(),
                s.q75.to_string(),
                c.median.to_string(),
                c.q25.to_string(),
                c.q75.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Writes the summary, drop-statistics and band files for `rows` into `dir`.
pub fn write_summaries(rows: &[TrajectoryRow], dir: &Path) -> anyhow::Result<Vec<Group>> {
    let groups = group_rows(rows);
    Table::final_simple_regret(&groups).write(&dir.join(SUMMARY_SIMPLE))?;
    Table::final_cmr(&groups).write(&dir.join(SUMMARY_CMR))?;
    write_drop_stats(&groups, &dir.join(DROP_STATS))?;
    write_bands(&groups, &dir.join(BANDS))?;
    Ok(groups)
}

/// Writes `text` to `path` via a temporary sibling and a rename.
pub fn write_atomic(path: &Path, text: &str) -> anyhow::Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = fs::File::create(&tmp).with_context(|| format!("creating {}", tmp.display()))?;
        f.write_all(text.as_bytes())?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(label: &str, trial: usize, iteration: usize, simple: f64, cmr: f64, dropped: u8) -> TrajectoryRow {
        TrajectoryRow {
            variant: label.into(),
            benchmark: "branin".into(),
            acquisition: "ucb".into(),
            kappa: 2.6,
            trial,
            iteration,
            x: "0.5;1".into(),
            y: simple,
            best_y: simple,
            simple_regret: simple,
            cmr,
            gamma: 1.0,
            dropped,
        }
    }

    #[test]
    fn rows_round_trip_with_schema_row() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        let rows = vec![
            row("dkibo", 0, 0, 0.1 + 0.2, 1.0 / 3.0, 0),
            row("dkibo", 0, 1, 1e-300, 2.0, 1),
        ];
        let mut w = TrajectoryWriter::create(&path).unwrap();
        w.write(&rows).unwrap();
        drop(w);
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("schema_version,1\nvariant,benchmark,"));
        assert_eq!(read_trajectories(&path).unwrap(), rows);
    }

    #[test]
    fn wrong_schema_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        fs::write(&path, "schema_version,9\nvariant\n").unwrap();
        assert!(read_trajectories(&path)
            .unwrap_err()
            .to_string()
            .contains("schema version 9"));
        fs::write(&path, "variant,benchmark\n").unwrap();
        assert!(read_trajectories(&path).is_err());
    }

    #[test]
    fn summary_medians_by_hand() {
        // final simple regrets 5, 1, 4, 2, 3 -> median 3, population std sqrt(2)
        let finals = [5.0, 1.0, 4.0, 2.0, 3.0];
        let mut rows = Vec::new();
        for (t, f) in finals.iter().enumerate() {
            rows.push(row("sbo", t, 0, 10.0, 10.0, 0));
            rows.push(row("sbo", t, 1, *f, 2.0 * f, 0));
        }
        let groups = group_rows(&rows);
        assert_eq!(groups.len(), 1);
        assert_eq!(groups[0].trials.len(), 5);
        let t = Table::final_simple_regret(&groups);
        assert_eq!(t.rows[0].3, vec![format!("{:.3e}±{:.3e}", 3.0, 2f64.sqrt())]);
        let t = Table::final_cmr(&groups);
        assert_eq!(t.rows[0].3, vec![format!("{:.3e}±{:.3e}", 6.0, 2.0 * 2f64.sqrt())]);
    }

    #[test]
    fn table_layout_and_drops() {
        let rows = vec![
            row("dkibo", 0, 0, 1.0, 1.0, 0),
            row("dkibo", 0, 1, 1.0, 1.0, 0),
            row("dkibo", 0, 2, 1.0, 1.0, 1),
            row("sbo", 0, 0, 2.0, 2.0, 0),
        ];
        let groups = group_rows(&rows);
        assert_eq!(groups[0].drop_iterations(), vec![Some(2)]);
        assert_eq!(groups[1].drop_iterations(), vec![None]);
        let t = Table::final_simple_regret(&groups);
        assert_eq!(t.columns, vec!["dkibo", "sbo"]);
        assert_eq!(t.rows.len(), 1);
        assert!(t.render().starts_with("benchmark"));
    }
}
