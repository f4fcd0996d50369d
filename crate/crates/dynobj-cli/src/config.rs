//! Experiment configuration: a single flat key/value text file with
//! repeated `[schedule <name>]` sections for custom dynamics, plus the
//! deterministic per-cell seed derivation.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use sha2::{Digest, Sha256};

use dynobj::dynamics::{parse_schedule_text, ObjectiveSchedule, Setting, DEFAULT_WARMUP};
use dynobj::optimizer::ChangeResponse;
use dynobj::problems::ProblemSpec;
use dynobj::subset::ObjectiveSubset;

/// One entry of the `settings =` list.
#[derive(Debug, Clone)]
pub struct SettingDef {
    pub name: String,
    pub m_max: usize,
    pub kind: SettingKind,
}

#[derive(Debug, Clone)]
pub enum SettingKind {
    /// Built-in setting; crossed with the config's tau_t list.
    Builtin(Setting),
    /// `[schedule <name>]` section; crossed with the config's tau_t list.
    Section { subsets: Vec<ObjectiveSubset>, warmup: usize },
    /// Schedule file referenced by path; runs at the file's own tau_t.
    File { schedule: ObjectiveSchedule },
}

impl SettingDef {
    pub fn taus(&self, config: &ExperimentConfig) -> Vec<usize> {
        match &self.kind {
            SettingKind::File { schedule } => vec![schedule.tau_t()],
            _ => config.tau_ts.clone(),
        }
    }

    pub fn schedule(&self, tau_t: usize) -> Result<ObjectiveSchedule> {
        Ok(match &self.kind {
            SettingKind::Builtin(setting) => ObjectiveSchedule::builtin(*setting, tau_t),
            SettingKind::Section { subsets, warmup } => {
                ObjectiveSchedule::new(subsets.clone(), tau_t, *warmup)
                    .with_context(|| format!("schedule section {:?}", self.name))?
            }
            SettingKind::File { schedule } => schedule.clone(),
        })
    }

    /// Distinct subsets appearing in this setting, in first-use order.
    pub fn distinct_subsets(&self) -> Vec<ObjectiveSubset> {
        let subsets: Vec<ObjectiveSubset> = match &self.kind {
            SettingKind::Builtin(setting) => {
                ObjectiveSchedule::builtin(*setting, 1).subsets().to_vec()
            }
            SettingKind::Section { subsets, .. } => subsets.clone(),
            SettingKind::File { schedule } => schedule.subsets().to_vec(),
        };
        let mut distinct = Vec::new();
        for s in subsets {
            if !distinct.contains(&s) {
                distinct.push(s);
            }
        }
        distinct
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub problems: Vec<String>,
    pub settings: Vec<SettingDef>,
    pub tau_ts: Vec<usize>,
    pub algorithms: Vec<String>,
    pub runs: usize,
    pub base_seed: u64,
    pub population: usize,
    pub front_budget: usize,
    pub front_cap: Option<usize>,
    pub projection_cap: usize,
    pub exact_dim_cap: usize,
    pub mc_samples: usize,
    pub out_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            problems: Vec::new(),
            settings: Vec::new(),
            tau_ts: vec![25, 50, 100],
            algorithms: Vec::new(),
            runs: 31,
            base_seed: 0,
            population: 300,
            front_budget: 200_000,
            front_cap: None,
            projection_cap: 25_000,
            exact_dim_cap: 8,
            mc_samples: 5_000_000,
            out_dir: PathBuf::from("results"),
        }
    }
}

/// One experiment cell: everything needed to reproduce a single run.
#[derive(Debug, Clone)]
pub struct Cell {
    pub problem: String,
    pub setting: String,
    pub tau_t: usize,
    pub algorithm: String,
    pub run_index: usize,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let base_dir = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, base_dir)
    }

    pub fn parse(text: &str, base_dir: &Path) -> Result<Self> {
        let mut flat: BTreeMap<String, String> = BTreeMap::new();
        let mut sections: BTreeMap<String, Vec<(String, String)>> = BTreeMap::new();
        let mut current_section: Option<String> = None;

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(inner) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                let mut parts = inner.split_whitespace();
                match (parts.next(), parts.next(), parts.next()) {
                    (Some("schedule"), Some(name), None) => {
                        current_section = Some(name.to_string());
                        sections.entry(name.to_string()).or_default();
                    }
                    _ => bail!("line {}: unknown section {line:?}", lineno + 1),
                }
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected key = value, got {line:?}", lineno + 1))?;
            let entry = (key.trim().to_string(), value.trim().to_string());
            match &current_section {
                Some(name) => sections.get_mut(name).expect("section exists").push(entry),
                None => {
                    flat.insert(entry.0, entry.1);
                }
            }
        }

        let mut config = ExperimentConfig::default();
        let mut setting_names: Vec<String> = Vec::new();
        for (key, value) in &flat {
            match key.as_str() {
                "problems" => config.problems = split_list(value),
                "settings" => setting_names = split_list(value),
                "tau_t" => {
                    config.tau_ts = split_list(value)
                        .iter()
                        .map(|v| parse_num(v, "tau_t"))
                        .collect::<Result<_>>()?
                }
                "algorithms" => config.algorithms = split_list(value),
                "runs" => config.runs = parse_num(value, "runs")?,
                "base_seed" => config.base_seed = parse_num(value, "base_seed")?,
                "population" => config.population = parse_num(value, "population")?,
                "front_budget" => config.front_budget = parse_num(value, "front_budget")?,
                "front_cap" => config.front_cap = Some(parse_num(value, "front_cap")?),
                "projection_cap" => config.projection_cap = parse_num(value, "projection_cap")?,
                "exact_dim_cap" => config.exact_dim_cap = parse_num(value, "exact_dim_cap")?,
                "mc_samples" => config.mc_samples = parse_num(value, "mc_samples")?,
                "out_dir" => config.out_dir = base_dir.join(value),
                other => bail!("unknown configuration key {other:?}"),
            }
        }

        for name in setting_names {
            config.settings.push(resolve_setting(&name, &sections, base_dir)?);
        }
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        if self.problems.is_empty() {
            bail!("config lists no problems");
        }
        if self.settings.is_empty() {
            bail!("config lists no settings");
        }
        if self.algorithms.is_empty() {
            bail!("config lists no algorithms");
        }
        if self.tau_ts.is_empty() || self.tau_ts.iter().any(|&t| t == 0) {
            bail!("tau_t list must be nonempty and positive");
        }
        if self.runs == 0 {
            bail!("runs must be at least 1");
        }
        for algorithm in &self.algorithms {
            ChangeResponse::parse_id(algorithm)
                .map_err(|e| anyhow!("algorithm {algorithm:?}: {e}"))?;
        }
        for setting in &self.settings {
            for problem in &self.problems {
                self.spec(problem, setting)
                    .with_context(|| format!("problem {problem:?} under setting {:?}", setting.name))?;
            }
        }
        Ok(())
    }

    /// The problem spec a `(problem, setting)` pair runs on: the identifier
    /// parsed at the setting's m_max with default dimensions.
    pub fn spec(&self, problem: &str, setting: &SettingDef) -> Result<ProblemSpec> {
        ProblemSpec::parse_id(problem, setting.m_max)
            .map_err(|e| anyhow!("problem {problem:?}: {e}"))
    }

    pub fn setting(&self, name: &str) -> Result<&SettingDef> {
        self.settings
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| anyhow!("setting {name:?} not in config"))
    }

    /// All experiment cells in deterministic order.
    pub fn cells(&self) -> Vec<Cell> {
        let mut cells = Vec::new();
        for problem in &self.problems {
            for setting in &self.settings {
                for tau_t in setting.taus(self) {
                    for algorithm in &self.algorithms {
                        for run_index in 0..self.runs {
                            cells.push(Cell {
                                problem: problem.clone(),
                                setting: setting.name.clone(),
                                tau_t,
                                algorithm: algorithm.clone(),
                                run_index,
                                seed: self.run_seed(problem, &setting.name, tau_t, algorithm, run_index),
                            });
                        }
                    }
                }
            }
        }
        cells
    }

    /// Collision-free per-run seed: SHA-256 over the cell coordinates.
    pub fn run_seed(
        &self,
        problem: &str,
        setting: &str,
        tau_t: usize,
        algorithm: &str,
        run_index: usize,
    ) -> u64 {
        derive_seed(
            self.base_seed,
            &[
                "run",
                problem,
                setting,
                &tau_t.to_string(),
                algorithm,
                &run_index.to_string(),
            ],
        )
    }

    /// Seed fixed per `(problem, m_max, subset)` front.
    pub fn front_seed(&self, problem: &str, m_max: usize, subset: &ObjectiveSubset) -> u64 {
        derive_seed(
            self.base_seed,
            &["front", problem, &m_max.to_string(), &subset.to_string()],
        )
    }

    /// Base seed for the Monte Carlo numerators of one run's stage ratios.
    pub fn mc_seed(&self, cell: &Cell) -> u64 {
        derive_seed(
            self.base_seed,
            &[
                "mc",
                &cell.problem,
                &cell.setting,
                &cell.tau_t.to_string(),
                &cell.algorithm,
                &cell.run_index.to_string(),
            ],
        )
    }

    pub fn sample_options(&self, seed: u64) -> dynobj::SampleOptions {
        let mut opts = dynobj::SampleOptions::new(seed).with_budget(self.front_budget);
        opts.cap = self.front_cap;
        opts.projection_cap = self.projection_cap;
        opts.exact_dim_cap = self.exact_dim_cap;
        opts.mc_samples = self.mc_samples;
        opts
    }
}

pub fn derive_seed(base: u64, parts: &[&str]) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(b"dynobj-seed-v1");
    hasher.update(base.to_le_bytes());
    for part in parts {
        hasher.update([0u8]);
        hasher.update(part.as_bytes());
    }
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest is long enough"))
}

fn resolve_setting(
    name: &str,
    sections: &BTreeMap<String, Vec<(String, String)>>,
    base_dir: &Path,
) -> Result<SettingDef> {
    if let Some(builtin) = Setting::from_name(name) {
        return Ok(SettingDef {
            name: builtin.name().to_string(),
            m_max: builtin.m_max(),
            kind: SettingKind::Builtin(builtin),
        });
    }
    if let Some(entries) = sections.get(name) {
        let mut warmup = DEFAULT_WARMUP;
        let mut m_max = None;
        let mut subsets = Vec::new();
        for (key, value) in entries {
            match key.as_str() {
                "warmup" => warmup = parse_num(value, "warmup")?,
                "m_max" => m_max = Some(parse_num(value, "m_max")?),
                "stage" => subsets.push(
                    ObjectiveSubset::parse(value)
                        .map_err(|e| anyhow!("schedule {name:?} stage {value:?}: {e}"))?,
                ),
                other => bail!("schedule {name:?}: unknown key {other:?}"),
            }
        }
        // Validate the stages by building a throwaway schedule.
        let probe = ObjectiveSchedule::new(subsets.clone(), 1, warmup)
            .map_err(|e| anyhow!("schedule {name:?}: {e}"))?;
        let m_max = m_max.unwrap_or_else(|| probe.max_index());
        if m_max < probe.max_index() {
            bail!(
                "schedule {name:?}: m_max={m_max} below the largest used index {}",
                probe.max_index()
            );
        }
        return Ok(SettingDef {
            name: name.to_string(),
            m_max,
            kind: SettingKind::Section { subsets, warmup },
        });
    }
    // Otherwise the entry is a schedule file path.
    let path = base_dir.join(name);
    let text = std::fs::read_to_string(&path)
        .with_context(|| format!("setting {name:?}: no built-in, section or readable file"))?;
    let parsed = parse_schedule_text(&text)
        .map_err(|e| anyhow!("schedule file {}: {e}", path.display()))?;
    let stem = Path::new(name)
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or(name)
        .to_string();
    Ok(SettingDef {
        name: stem,
        m_max: parsed.m_max,
        kind: SettingKind::File { schedule: parsed.schedule },
    })
}

fn split_list(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(|v| v.trim().to_string())
        .filter(|v| !v.is_empty())
        .collect()
}

fn parse_num<T: std::str::FromStr>(value: &str, key: &str) -> Result<T> {
    value
        .trim()
        .parse::<T>()
        .map_err(|_| anyhow!("cannot parse {key} value {value:?}"))
}
