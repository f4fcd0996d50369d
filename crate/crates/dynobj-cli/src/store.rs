//! On-disk layout and serialization of experiment artifacts.
//!
//! Every file is line-oriented text with `#`-prefixed headers, written with
//! full decimal precision and an atomic rename so concurrent workers never
//! expose partial files. Writers always produce the same bytes for the same
//! inputs.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};

use dynobj::metrics::{RunKey, StageSnapshot};
use dynobj::subset::ObjectiveSubset;
use dynobj::textfmt::{format_full, parse_f64};

use crate::config::Cell;

pub const RUN_FORMAT_VERSION: &str = "1";

pub fn fronts_dir(out: &Path) -> PathBuf {
    out.join("fronts")
}

pub fn runs_dir(out: &Path) -> PathBuf {
    out.join("runs")
}

pub fn plots_dir(out: &Path) -> PathBuf {
    out.join("plots")
}

pub fn front_path(out: &Path, problem: &str, m_max: usize, subset: &ObjectiveSubset) -> PathBuf {
    let subset_tag = subset
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join("-");
    fronts_dir(out).join(format!("{problem}_m{m_max}_f{subset_tag}.front"))
}

pub fn run_path(out: &Path, cell: &Cell) -> PathBuf {
    runs_dir(out).join(format!(
        "{}_{}_t{}_{}_r{:03}.run",
        cell.setting, cell.problem, cell.tau_t, cell.algorithm, cell.run_index
    ))
}

pub fn mhv_rows_path(out: &Path) -> PathBuf {
    out.join("mhv_rows.csv")
}

pub fn mhv_table_path(out: &Path) -> PathBuf {
    out.join("mhv_table.csv")
}

pub fn rank_summary_path(out: &Path, setting: &str) -> PathBuf {
    out.join(format!("rank_{setting}.csv"))
}

/// Writes via a temporary sibling and renames into place.
pub fn atomic_write(path: &Path, contents: &str) -> Result<()> {
    let parent = path
        .parent()
        .ok_or_else(|| anyhow!("no parent directory for {}", path.display()))?;
    fs::create_dir_all(parent)
        .with_context(|| format!("creating {}", parent.display()))?;
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

/// A persisted run: the cell coordinates plus the per-stage snapshots.
#[derive(Debug, Clone, PartialEq)]
pub struct StoredRun {
    pub key: RunKey,
    pub run_index: usize,
    pub population: usize,
    pub warmup: usize,
    pub snapshots: Vec<StageSnapshot>,
}

pub fn render_run(run: &StoredRun) -> String {
    let mut out = String::new();
    out.push_str(&format!("# dynobj run record v{RUN_FORMAT_VERSION}\n"));
    out.push_str(&format!("# problem={}\n", run.key.problem));
    out.push_str(&format!("# setting={}\n", run.key.setting));
    out.push_str(&format!("# tau_t={}\n", run.key.tau_t));
    out.push_str(&format!("# algorithm={}\n", run.key.algorithm));
    out.push_str(&format!("# run_index={}\n", run.run_index));
    out.push_str(&format!("# seed={}\n", run.key.seed));
    out.push_str(&format!("# population={}\n", run.population));
    out.push_str(&format!("# warmup={}\n", run.warmup));
    out.push_str(&format!("# stages={}\n", run.snapshots.len()));
    for snapshot in &run.snapshots {
        out.push_str(&format!(
            "# stage={} subset={} points={}\n",
            snapshot.stage,
            snapshot.subset,
            snapshot.points.len()
        ));
        for row in &snapshot.points {
            let line = row
                .iter()
                .map(|&v| format_full(v))
                .collect::<Vec<_>>()
                .join(",");
            out.push_str(&line);
            out.push('\n');
        }
    }
    out
}

pub fn parse_run(text: &str) -> Result<StoredRun> {
    let mut lines = text.lines().peekable();
    match lines.next() {
        Some(first) if first == format!("# dynobj run record v{RUN_FORMAT_VERSION}") => {}
        Some(first) => bail!("unsupported run record version: {first:?}"),
        None => bail!("empty run record"),
    }
    let mut header: std::collections::BTreeMap<String, String> = Default::default();
    while let Some(line) = lines.peek() {
        match line.strip_prefix("# ") {
            Some(rest) if !rest.starts_with("stage=") => {
                let (key, value) = rest
                    .split_once('=')
                    .ok_or_else(|| anyhow!("malformed header {line:?}"))?;
                header.insert(key.to_string(), value.to_string());
                lines.next();
            }
            _ => break,
        }
    }
    let get = |key: &str| {
        header
            .get(key)
            .cloned()
            .ok_or_else(|| anyhow!("run record missing header {key}"))
    };
    let key = RunKey {
        setting: get("setting")?,
        problem: get("problem")?,
        tau_t: get("tau_t")?.parse().context("tau_t")?,
        algorithm: get("algorithm")?,
        seed: get("seed")?.parse().context("seed")?,
    };
    let run_index: usize = get("run_index")?.parse().context("run_index")?;
    let population: usize = get("population")?.parse().context("population")?;
    let warmup: usize = get("warmup")?.parse().context("warmup")?;
    let stages: usize = get("stages")?.parse().context("stages")?;

    let mut snapshots = Vec::with_capacity(stages);
    let mut current: Option<(StageSnapshot, usize)> = None;
    for line in lines {
        if let Some(rest) = line.strip_prefix("# stage=") {
            if let Some((snapshot, declared)) = current.take() {
                ensure_points(&snapshot, declared)?;
                snapshots.push(snapshot);
            }
            let mut stage = None;
            let mut subset = None;
            let mut points = None;
            for field in format!("stage={rest}").split_whitespace() {
                match field.split_once('=') {
                    Some(("stage", v)) => stage = v.parse::<usize>().ok(),
                    Some(("subset", v)) => subset = ObjectiveSubset::parse(v).ok(),
                    Some(("points", v)) => points = v.parse::<usize>().ok(),
                    _ => bail!("malformed stage header {line:?}"),
                }
            }
            let (stage, subset, points) = stage
                .zip(subset)
                .zip(points)
                .map(|((a, b), c)| (a, b, c))
                .ok_or_else(|| anyhow!("incomplete stage header {line:?}"))?;
            current = Some((StageSnapshot { stage, subset, points: Vec::new() }, points));
        } else if !line.trim().is_empty() {
            let (snapshot, _) = current
                .as_mut()
                .ok_or_else(|| anyhow!("objective row before any stage header"))?;
            let row = line
                .split(',')
                .map(|tok| parse_f64(tok).map_err(|e| anyhow!(e)))
                .collect::<Result<Vec<f64>>>()?;
            snapshot.points.push(row);
        }
    }
    if let Some((snapshot, declared)) = current.take() {
        ensure_points(&snapshot, declared)?;
        snapshots.push(snapshot);
    }
    if snapshots.len() != stages {
        bail!("run record declares {stages} stages but contains {}", snapshots.len());
    }
    Ok(StoredRun { key, run_index, population, warmup, snapshots })
}

fn ensure_points(snapshot: &StageSnapshot, declared: usize) -> Result<()> {
    if snapshot.points.len() != declared {
        bail!(
            "stage {} declares {declared} points but contains {}",
            snapshot.stage,
            snapshot.points.len()
        );
    }
    Ok(())
}

/// Renders one MHV row: `setting,problem,tau_t,algorithm,seed,mhv,ratios...`.
pub fn render_mhv_row(report: &dynobj::MhvReport) -> String {
    let mut fields = vec![
        report.key.setting.clone(),
        report.key.problem.clone(),
        report.key.tau_t.to_string(),
        report.key.algorithm.clone(),
        report.key.seed.to_string(),
        format_full(report.mhv),
    ];
    fields.extend(report.per_stage_ratios.iter().map(|&r| format_full(r)));
    fields.join(",")
}
