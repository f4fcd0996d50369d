//! Objective-subset schedules: the dynamic view over a static problem.
//!
//! A schedule is pure data: an ordered list of active objective subsets plus
//! the change frequency `tau_t` and a warm-up budget. Stage 0 spans the
//! warm-up; every later stage spans exactly `tau_t` generations.

use thiserror::Error;

use crate::subset::{ObjectiveSubset, SubsetError};

#[derive(Debug, Error, PartialEq)]
pub enum ScheduleError {
    #[error("schedule needs at least one subset")]
    NoStages,
    #[error("tau_t must be positive")]
    ZeroTau,
    #[error("stage {stage} has fewer than 2 objectives")]
    TooFewObjectives { stage: usize },
    #[error("stages {stage} and {} have identical subsets", stage + 1)]
    NoChange { stage: usize },
    #[error("generation {generation} is past the schedule end ({total} generations)")]
    GenerationOutOfRange { generation: usize, total: usize },
    #[error("schedule text: {0}")]
    Parse(String),
    #[error(transparent)]
    Subset(#[from] SubsetError),
}

/// Location of a generation within a schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StagePointer {
    pub stage_index: usize,
    pub generations_into_stage: usize,
}

/// The three dynamic settings studied by the benchmark.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Setting {
    I,
    II,
    III,
}

impl Setting {
    pub const ALL: [Setting; 3] = [Setting::I, Setting::II, Setting::III];

    pub fn m_max(self) -> usize {
        match self {
            Setting::I => 6,
            Setting::II | Setting::III => 10,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Setting::I => "I",
            Setting::II => "II",
            Setting::III => "III",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name.trim().to_ascii_uppercase().as_str() {
            "I" => Some(Setting::I),
            "II" => Some(Setting::II),
            "III" => Some(Setting::III),
            _ => None,
        }
    }

    fn subsets(self) -> Vec<Vec<usize>> {
        match self {
            // Mild: one objective added or removed per change (m_max = 6).
            Setting::I => vec![
                vec![2, 4],
                vec![2, 4, 5],
                vec![1, 2, 4, 5],
                vec![1, 2, 4, 5, 6],
                vec![1, 2, 3, 4, 5, 6],
                vec![2, 3, 4, 5, 6],
                vec![2, 3, 4, 5],
                vec![2, 3, 5],
                vec![3, 5],
            ],
            // Moderate: two objectives added or removed per change (m_max = 10).
            Setting::II => vec![
                vec![2, 7],
                vec![2, 5, 7, 10],
                vec![1, 2, 5, 6, 7, 10],
                vec![1, 2, 4, 5, 6, 7, 9, 10],
                vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
                vec![1, 2, 3, 5, 6, 8, 9, 10],
                vec![2, 3, 5, 6, 9, 10],
                vec![2, 5, 6, 9],
                vec![5, 6],
            ],
            // Severe: irregular magnitude and direction (m_max = 10).
            Setting::III => vec![
                vec![3, 8],
                vec![2, 3, 6, 7, 8],
                vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
                vec![1, 3, 5, 6, 7, 10],
                vec![3, 7, 8],
                vec![1, 3, 4, 5, 6, 7, 8, 9],
                vec![2, 5, 7, 10],
                vec![1, 2, 4, 5, 6, 9, 10],
                vec![1, 2, 3, 4, 5, 6, 7, 8, 10],
            ],
        }
    }
}

impl std::fmt::Display for Setting {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Number of warm-up generations before the first change.
pub const DEFAULT_WARMUP: usize = 300;

/// An ordered sequence of active objective subsets with timing parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectiveSchedule {
    subsets: Vec<ObjectiveSubset>,
    tau_t: usize,
    warmup: usize,
}

impl ObjectiveSchedule {
    pub fn new(
        subsets: Vec<ObjectiveSubset>,
        tau_t: usize,
        warmup: usize,
    ) -> Result<Self, ScheduleError> {
        if subsets.is_empty() {
            return Err(ScheduleError::NoStages);
        }
        if tau_t == 0 {
            return Err(ScheduleError::ZeroTau);
        }
        for (stage, subset) in subsets.iter().enumerate() {
            if subset.len() < 2 {
                return Err(ScheduleError::TooFewObjectives { stage });
            }
        }
        for (stage, pair) in subsets.windows(2).enumerate() {
            if pair[0] == pair[1] {
                return Err(ScheduleError::NoChange { stage });
            }
        }
        Ok(Self { subsets, tau_t, warmup })
    }

    /// The exact subset sequence of a built-in setting with the standard
    /// 300-generation warm-up.
    pub fn builtin(setting: Setting, tau_t: usize) -> Self {
        let subsets = setting
            .subsets()
            .into_iter()
            .map(|v| ObjectiveSubset::new(v).expect("built-in subsets are valid"))
            .collect();
        Self::new(subsets, tau_t, DEFAULT_WARMUP).expect("built-in schedules are valid")
    }

    pub fn subsets(&self) -> &[ObjectiveSubset] {
        &self.subsets
    }

    pub fn subset(&self, stage: usize) -> &ObjectiveSubset {
        &self.subsets[stage]
    }

    pub fn num_stages(&self) -> usize {
        self.subsets.len()
    }

    pub fn tau_t(&self) -> usize {
        self.tau_t
    }

    pub fn warmup(&self) -> usize {
        self.warmup
    }

    /// Largest objective index appearing anywhere in the schedule.
    pub fn max_index(&self) -> usize {
        self.subsets.iter().map(|s| s.max_index()).max().unwrap_or(0)
    }

    /// The run ends once the final subset has received `tau_t` generations.
    pub fn total_generations(&self) -> usize {
        self.warmup + (self.num_stages() - 1) * self.tau_t
    }

    /// Maps a generation counter to its stage. Stage 0 spans `[0, warmup)`;
    /// stage `s >= 1` spans `[warmup + (s-1)*tau_t, warmup + s*tau_t)`.
    pub fn stage_at(&self, generation: usize) -> Result<StagePointer, ScheduleError> {
        let total = self.total_generations();
        if generation >= total {
            return Err(ScheduleError::GenerationOutOfRange { generation, total });
        }
        if generation < self.warmup {
            return Ok(StagePointer {
                stage_index: 0,
                generations_into_stage: generation,
            });
        }
        let past = generation - self.warmup;
        Ok(StagePointer {
            stage_index: 1 + past / self.tau_t,
            generations_into_stage: past % self.tau_t,
        })
    }

    pub fn active_subset(&self, generation: usize) -> Result<&ObjectiveSubset, ScheduleError> {
        Ok(self.subset(self.stage_at(generation)?.stage_index))
    }

    /// Last generation belonging to `stage`.
    pub fn last_generation_of(&self, stage: usize) -> usize {
        if stage == 0 {
            self.warmup.saturating_sub(1)
        } else {
            self.warmup + stage * self.tau_t - 1
        }
    }
}

/// Indices added and removed when the active subset changes.
pub fn diff_subsets(previous: &ObjectiveSubset, next: &ObjectiveSubset) -> (Vec<usize>, Vec<usize>) {
    previous.diff(next)
}

/// Schedule text plus the maximum objective index it is meant for (from an
/// `m_max=` header, defaulting to the largest index used).
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedSchedule {
    pub schedule: ObjectiveSchedule,
    pub m_max: usize,
}

/// Parses the schedule text format: `#` comments, `tau_t=<int>` and
/// `warmup=<int>` header lines (plus optional `m_max=<int>`), then one stage
/// per line as comma-separated 1-based indices.
pub fn parse_schedule_text(text: &str) -> Result<ParsedSchedule, ScheduleError> {
    let mut tau_t = None;
    let mut warmup = None;
    let mut m_max = None;
    let mut subsets = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some((key, value)) = line.split_once('=') {
            let value = value.trim();
            let parsed: usize = value.parse().map_err(|_| {
                ScheduleError::Parse(format!("line {}: bad value {value:?}", lineno + 1))
            })?;
            match key.trim() {
                "tau_t" => tau_t = Some(parsed),
                "warmup" => warmup = Some(parsed),
                "m_max" => m_max = Some(parsed),
                other => {
                    return Err(ScheduleError::Parse(format!(
                        "line {}: unknown header {other:?}",
                        lineno + 1
                    )))
                }
            }
        } else {
            subsets.push(ObjectiveSubset::parse(line)?);
        }
    }
    let tau_t = tau_t.ok_or_else(|| ScheduleError::Parse("missing tau_t header".into()))?;
    let warmup = warmup.ok_or_else(|| ScheduleError::Parse("missing warmup header".into()))?;
    let schedule = ObjectiveSchedule::new(subsets, tau_t, warmup)?;
    let m_max = m_max.unwrap_or_else(|| schedule.max_index());
    if m_max < schedule.max_index() {
        return Err(ScheduleError::Parse(format!(
            "declared m_max={m_max} is below the largest used index {}",
            schedule.max_index()
        )));
    }
    Ok(ParsedSchedule { schedule, m_max })
}

pub fn render_schedule_text(schedule: &ObjectiveSchedule, m_max: usize) -> String {
    let mut out = String::new();
    out.push_str(&format!("tau_t={}\n", schedule.tau_t()));
    out.push_str(&format!("warmup={}\n", schedule.warmup()));
    out.push_str(&format!("m_max={m_max}\n"));
    for subset in schedule.subsets() {
        out.push_str(&format!("{subset}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stage_arithmetic() {
        let s = ObjectiveSchedule::builtin(Setting::I, 50);
        assert_eq!(
            s.stage_at(0).unwrap(),
            StagePointer { stage_index: 0, generations_into_stage: 0 }
        );
        assert_eq!(
            s.stage_at(299).unwrap(),
            StagePointer { stage_index: 0, generations_into_stage: 299 }
        );
        assert_eq!(
            s.stage_at(349).unwrap(),
            StagePointer { stage_index: 1, generations_into_stage: 49 }
        );
        assert_eq!(s.total_generations(), 300 + 8 * 50);
        assert!(matches!(
            s.stage_at(700),
            Err(ScheduleError::GenerationOutOfRange { .. })
        ));
    }

    #[test]
    fn builtin_setting_sequences() {
        let one = ObjectiveSchedule::builtin(Setting::I, 50);
        assert_eq!(one.num_stages(), 9);
        let cards: Vec<usize> = one.subsets().iter().map(|s| s.len()).collect();
        assert_eq!(cards, vec![2, 3, 4, 5, 6, 5, 4, 3, 2]);
        assert_eq!(one.subset(0).indices(), &[2, 4]);
        assert_eq!(one.subset(8).indices(), &[3, 5]);

        let two = ObjectiveSchedule::builtin(Setting::II, 25);
        let cards: Vec<usize> = two.subsets().iter().map(|s| s.len()).collect();
        assert_eq!(cards, vec![2, 4, 6, 8, 10, 8, 6, 4, 2]);
        assert_eq!(two.subset(4), &ObjectiveSubset::full(10));

        let three = ObjectiveSchedule::builtin(Setting::III, 100);
        let cards: Vec<usize> = three.subsets().iter().map(|s| s.len()).collect();
        assert_eq!(cards, vec![2, 5, 10, 6, 3, 8, 4, 7, 9]);
        assert_eq!(three.max_index(), 10);
    }

    #[test]
    fn active_subset_examples() {
        let s = ObjectiveSchedule::builtin(Setting::I, 50);
        assert_eq!(s.active_subset(0).unwrap().indices(), &[2, 4]);
        assert_eq!(s.active_subset(300).unwrap().indices(), &[2, 4, 5]);
        assert_eq!(s.active_subset(699).unwrap().indices(), &[3, 5]);
    }

    #[test]
    fn construction_rejects_degenerate_schedules() {
        let a = ObjectiveSubset::new(vec![1, 2]).unwrap();
        let b = ObjectiveSubset::new(vec![1, 3]).unwrap();
        assert_eq!(
            ObjectiveSchedule::new(vec![a.clone(), a.clone()], 10, 0),
            Err(ScheduleError::NoChange { stage: 0 })
        );
        assert_eq!(
            ObjectiveSchedule::new(vec![], 10, 0),
            Err(ScheduleError::NoStages)
        );
        assert_eq!(
            ObjectiveSchedule::new(vec![a.clone(), b.clone()], 0, 0),
            Err(ScheduleError::ZeroTau)
        );
        let single = ObjectiveSubset::new(vec![3]).unwrap();
        assert_eq!(
            ObjectiveSchedule::new(vec![single], 10, 0),
            Err(ScheduleError::TooFewObjectives { stage: 0 })
        );
        assert!(ObjectiveSchedule::new(vec![a, b], 10, 0).is_ok());
    }

    #[test]
    fn stage_spans_tile_the_run() {
        for tau in [1usize, 7, 25] {
            for warmup in [1usize, 3, 300] {
                let subsets: Vec<ObjectiveSubset> = [vec![1, 2], vec![2, 3], vec![1, 3], vec![1, 2, 3]]
                    .into_iter()
                    .map(|v| ObjectiveSubset::new(v).unwrap())
                    .collect();
                let s = ObjectiveSchedule::new(subsets, tau, warmup).unwrap();
                let mut previous = None;
                for gen in 0..s.total_generations() {
                    let ptr = s.stage_at(gen).unwrap();
                    match previous {
                        None => assert_eq!((ptr.stage_index, ptr.generations_into_stage), (0, 0)),
                        Some(StagePointer { stage_index, generations_into_stage }) => {
                            let same = ptr.stage_index == stage_index
                                && ptr.generations_into_stage == generations_into_stage + 1;
                            let next = ptr.stage_index == stage_index + 1
                                && ptr.generations_into_stage == 0;
                            assert!(same || next, "gap at generation {gen}");
                        }
                    }
                    previous = Some(ptr);
                }
                assert_eq!(previous.unwrap().stage_index, s.num_stages() - 1);
            }
        }
    }

    #[test]
    fn diffs_reconstruct_the_sequence() {
        for setting in Setting::ALL {
            let s = ObjectiveSchedule::builtin(setting, 25);
            let mut current: Vec<usize> = s.subset(0).indices().to_vec();
            for stage in 1..s.num_stages() {
                let (added, removed) = diff_subsets(s.subset(stage - 1), s.subset(stage));
                current.retain(|i| !removed.contains(i));
                current.extend(added);
                current.sort_unstable();
                assert_eq!(current.as_slice(), s.subset(stage).indices());
            }
        }
    }

    #[test]
    fn schedule_text_round_trip() {
        let s = ObjectiveSchedule::builtin(Setting::I, 25);
        let text = render_schedule_text(&s, 6);
        let parsed = parse_schedule_text(&text).unwrap();
        assert_eq!(parsed.schedule, s);
        assert_eq!(parsed.m_max, 6);

        assert!(parse_schedule_text("warmup=1\n1,2\n2,3\n").is_err());
        assert!(parse_schedule_text("tau_t=5\nwarmup=1\nm_max=2\n1,2\n1,2,3\n").is_err());
        let inferred = parse_schedule_text("tau_t=5\nwarmup=1\n1,2\n2,3\n").unwrap();
        assert_eq!(inferred.m_max, 3);
    }
}
