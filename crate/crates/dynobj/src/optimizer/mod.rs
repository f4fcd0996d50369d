//! Baseline dynamic optimizers: a reference-vector-guided evolutionary core
//! with pluggable environmental-change responses.
//!
//! These are honest stand-ins that exercise the benchmark end to end; they
//! are not re-implementations of any published dynamic algorithm.

mod selection;
mod variation;

pub use selection::{fast_nondominated_sort, reference_vectors};

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dynamics::ObjectiveSchedule;
use crate::frontier::nondominated_filter;
use crate::metrics::StageSnapshot;
use crate::problems::{DecisionVector, ProblemError, ProblemSpec};
use crate::subset::ObjectiveSubset;

#[derive(Debug, Error, PartialEq)]
pub enum OptError {
    #[error("invalid EA config: {0}")]
    InvalidConfig(String),
    #[error("schedule uses objective {index} but the problem has only {m_max}")]
    ScheduleOutOfRange { index: usize, m_max: usize },
    #[error("schedule warm-up must be at least 1 generation")]
    ZeroWarmup,
    #[error("unknown algorithm identifier {0:?}")]
    UnknownAlgorithm(String),
    #[error(transparent)]
    Problem(#[from] ProblemError),
}

/// Evolutionary-core parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct EaConfig {
    pub population_size: usize,
    /// SBX distribution index.
    pub eta_c: f64,
    /// Polynomial-mutation distribution index.
    pub eta_m: f64,
    pub p_crossover: f64,
    /// Per-variable mutation probability; `None` means `1 / n`.
    pub p_mutation: Option<f64>,
    pub seed: u64,
}

impl EaConfig {
    pub fn new(seed: u64) -> Self {
        Self {
            population_size: 300,
            eta_c: 20.0,
            eta_m: 20.0,
            p_crossover: 1.0,
            p_mutation: None,
            seed,
        }
    }

    pub fn with_population(mut self, population_size: usize) -> Self {
        self.population_size = population_size;
        self
    }

    fn validate(&self) -> Result<(), OptError> {
        if self.population_size < 4 || self.population_size % 2 != 0 {
            return Err(OptError::InvalidConfig(format!(
                "population_size must be even and >= 4, got {}",
                self.population_size
            )));
        }
        for (name, p) in [("p_crossover", self.p_crossover)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(OptError::InvalidConfig(format!("{name} = {p} outside [0, 1]")));
            }
        }
        if let Some(p) = self.p_mutation {
            if !(0.0..=1.0).contains(&p) {
                return Err(OptError::InvalidConfig(format!(
                    "p_mutation = {p} outside [0, 1]"
                )));
            }
        }
        Ok(())
    }
}

/// What the optimizer does to its population at a stage boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChangeResponse {
    /// Keep every decision vector; re-evaluate on the new subset.
    RetainReevaluate,
    /// Replace a uniformly chosen fraction with fresh uniform samples.
    PartialRestart(f64),
    /// Keep the nondominated set under the new subset, fill the remainder
    /// with mutated copies of retained members.
    InheritanceFill,
}

impl ChangeResponse {
    /// Parses harness identifiers: `rvea-retain`, `rvea-restart<f>`,
    /// `rvea-inherit`.
    pub fn parse_id(id: &str) -> Result<Self, OptError> {
        if id == "rvea-retain" {
            return Ok(ChangeResponse::RetainReevaluate);
        }
        if id == "rvea-inherit" {
            return Ok(ChangeResponse::InheritanceFill);
        }
        if let Some(rest) = id.strip_prefix("rvea-restart") {
            let fraction: f64 = rest
                .parse()
                .map_err(|_| OptError::UnknownAlgorithm(id.to_string()))?;
            if fraction > 0.0 && fraction <= 1.0 {
                return Ok(ChangeResponse::PartialRestart(fraction));
            }
        }
        Err(OptError::UnknownAlgorithm(id.to_string()))
    }

    pub fn id(&self) -> String {
        match self {
            ChangeResponse::RetainReevaluate => "rvea-retain".to_string(),
            ChangeResponse::PartialRestart(f) => format!("rvea-restart{f}"),
            ChangeResponse::InheritanceFill => "rvea-inherit".to_string(),
        }
    }

    fn validate(&self) -> Result<(), OptError> {
        if let ChangeResponse::PartialRestart(f) = self {
            if !(*f > 0.0 && *f <= 1.0) {
                return Err(OptError::InvalidConfig(format!(
                    "restart fraction {f} outside (0, 1]"
                )));
            }
        }
        Ok(())
    }
}

/// One population member.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub decision: Vec<f64>,
    pub objectives: Vec<f64>,
    /// True only transiently while a change response is being applied.
    pub stale: bool,
}

/// Output of a dynamic run: one snapshot per schedule stage.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub seed: u64,
    pub snapshots: Vec<StageSnapshot>,
    /// Wall-clock duration; informational only and never serialized.
    pub duration: Duration,
}

/// Simulates the full generational timeline of a schedule. Deterministic:
/// `(spec, schedule, ea, response)` fixes the record bitwise.
pub fn run_dynamic(
    spec: &ProblemSpec,
    schedule: &ObjectiveSchedule,
    ea: &EaConfig,
    response: ChangeResponse,
) -> Result<RunRecord, OptError> {
    ea.validate()?;
    response.validate()?;
    if schedule.max_index() > spec.m_max() {
        return Err(OptError::ScheduleOutOfRange {
            index: schedule.max_index(),
            m_max: spec.m_max(),
        });
    }
    if schedule.warmup() == 0 {
        return Err(OptError::ZeroWarmup);
    }
    let started = Instant::now();
    let bounds = spec.decision_bounds();
    let p_mutation = ea.p_mutation.unwrap_or(1.0 / spec.n() as f64);
    let mut rng = ChaCha8Rng::seed_from_u64(ea.seed);

    let mut population: Vec<Individual> = (0..ea.population_size)
        .map(|_| {
            let decision = variation::random_decision(&bounds, &mut rng);
            Individual { decision, objectives: Vec::new(), stale: true }
        })
        .collect();
    evaluate_all(spec, schedule.subset(0), &mut population)?;

    let mut snapshots = Vec::with_capacity(schedule.num_stages());
    let mut stage = 0usize;
    let mut reference = reference_vectors(schedule.subset(0).len(), ea.population_size);

    for generation in 0..schedule.total_generations() {
        let pointer = schedule.stage_at(generation).expect("generation in range");
        if pointer.stage_index != stage {
            let old = schedule.subset(stage).clone();
            stage = pointer.stage_index;
            let new = schedule.subset(stage);
            population = respond_to_change(
                spec,
                population,
                &old,
                new,
                response,
                ea,
                p_mutation,
                &mut rng,
            )?;
            reference = reference_vectors(new.len(), ea.population_size);
        }
        let subset = schedule.subset(stage);

        // Mating: shuffled pairing, SBX, polynomial mutation.
        let mut order: Vec<usize> = (0..population.len()).collect();
        order.shuffle(&mut rng);
        let mut offspring: Vec<Individual> = Vec::with_capacity(population.len());
        for pair in order.chunks_exact(2) {
            let (a, b) = (&population[pair[0]], &population[pair[1]]);
            let (mut ca, mut cb) =
                variation::sbx(&a.decision, &b.decision, &bounds, ea.eta_c, ea.p_crossover, &mut rng);
            variation::polynomial_mutation(&mut ca, &bounds, ea.eta_m, p_mutation, &mut rng);
            variation::polynomial_mutation(&mut cb, &bounds, ea.eta_m, p_mutation, &mut rng);
            offspring.push(Individual { decision: ca, objectives: Vec::new(), stale: true });
            offspring.push(Individual { decision: cb, objectives: Vec::new(), stale: true });
        }
        evaluate_all(spec, subset, &mut offspring)?;

        let mut candidates = population;
        candidates.extend(offspring);
        population = environmental_selection(candidates, &reference, ea.population_size);
        debug_assert_eq!(population.len(), ea.population_size);
        debug_assert!(population.iter().all(|ind| ind.objectives.len() == subset.len()));

        if generation == schedule.last_generation_of(stage) {
            let rows: Vec<Vec<f64>> =
                population.iter().map(|ind| ind.objectives.clone()).collect();
            snapshots.push(StageSnapshot {
                stage,
                subset: subset.clone(),
                points: nondominated_filter(&rows),
            });
        }
    }

    Ok(RunRecord { seed: ea.seed, snapshots, duration: started.elapsed() })
}

/// Applies a change response and re-evaluates every member on the new
/// subset; no stale objectives survive.
#[allow(clippy::too_many_arguments)]
pub fn respond_to_change(
    spec: &ProblemSpec,
    mut population: Vec<Individual>,
    old_subset: &ObjectiveSubset,
    new_subset: &ObjectiveSubset,
    strategy: ChangeResponse,
    ea: &EaConfig,
    p_mutation: f64,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Individual>, OptError> {
    debug_assert!(population
        .iter()
        .all(|ind| ind.objectives.len() == old_subset.len()));
    let bounds = spec.decision_bounds();
    let target = population.len();
    for ind in &mut population {
        ind.stale = true;
    }
    let mut population = match strategy {
        ChangeResponse::RetainReevaluate => population,
        ChangeResponse::PartialRestart(fraction) => {
            let replace = ((fraction * target as f64).round() as usize).clamp(1, target);
            let picked = rand::seq::index::sample(rng, target, replace);
            for idx in picked {
                population[idx].decision = variation::random_decision(&bounds, rng);
            }
            population
        }
        ChangeResponse::InheritanceFill => {
            for ind in &mut population {
                ind.objectives = spec
                    .evaluate_subset(&DecisionVector::new(ind.decision.clone()), new_subset)?
                    .into_values();
                ind.stale = false;
            }
            let rows: Vec<Vec<f64>> =
                population.iter().map(|ind| ind.objectives.clone()).collect();
            let fronts = fast_nondominated_sort(&rows);
            let mut kept: Vec<Individual> = fronts[0]
                .iter()
                .map(|&i| population[i].clone())
                .collect();
            if kept.len() > target {
                let reference = reference_vectors(new_subset.len(), target);
                kept = environmental_selection(kept, &reference, target);
            }
            let retained = kept.len();
            while kept.len() < target {
                let template = kept[rng.random_range(0..retained)].decision.clone();
                let mut decision = template;
                variation::polynomial_mutation(&mut decision, &bounds, ea.eta_m, p_mutation, rng);
                kept.push(Individual { decision, objectives: Vec::new(), stale: true });
            }
            kept
        }
    };
    evaluate_all(spec, new_subset, &mut population)?;
    Ok(population)
}

/// Nondominated sorting plus reference-vector niching down to `target`.
pub fn environmental_selection(
    candidates: Vec<Individual>,
    reference: &[Vec<f64>],
    target: usize,
) -> Vec<Individual> {
    let rows: Vec<Vec<f64>> = candidates.iter().map(|ind| ind.objectives.clone()).collect();
    let picked = selection::select_indices(&rows, reference, target);
    let mut candidates = candidates;
    picked
        .into_iter()
        .map(|i| {
            std::mem::replace(
                &mut candidates[i],
                Individual { decision: Vec::new(), objectives: Vec::new(), stale: true },
            )
        })
        .collect()
}

fn evaluate_all(
    spec: &ProblemSpec,
    subset: &ObjectiveSubset,
    population: &mut [Individual],
) -> Result<(), OptError> {
    for ind in population {
        ind.objectives = spec
            .evaluate_subset(&DecisionVector::new(ind.decision.clone()), subset)?
            .into_values();
        ind.stale = false;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::Setting;
    use crate::problems::ProblemFamily;

    fn small_schedule() -> ObjectiveSchedule {
        let subsets = [vec![1, 2], vec![1, 2, 3], vec![2, 3]]
            .into_iter()
            .map(|v| ObjectiveSubset::new(v).unwrap())
            .collect();
        ObjectiveSchedule::new(subsets, 5, 10).unwrap()
    }

    fn small_spec() -> ProblemSpec {
        ProblemSpec::with_default_dims(ProblemFamily::Dtlz2, true, 3).unwrap()
    }

    #[test]
    fn run_produces_one_snapshot_per_stage() {
        let spec = small_spec();
        let schedule = small_schedule();
        let ea = EaConfig::new(7).with_population(16);
        let record = run_dynamic(&spec, &schedule, &ea, ChangeResponse::RetainReevaluate).unwrap();
        assert_eq!(record.snapshots.len(), 3);
        for (snapshot, subset) in record.snapshots.iter().zip(schedule.subsets()) {
            assert_eq!(&snapshot.subset, subset);
            for p in &snapshot.points {
                assert_eq!(p.len(), subset.len());
            }
            assert!(!snapshot.points.is_empty());
        }
    }

    #[test]
    fn equal_seeds_give_bit_identical_records() {
        let spec = small_spec();
        let schedule = small_schedule();
        let ea = EaConfig::new(99).with_population(16);
        let a = run_dynamic(&spec, &schedule, &ea, ChangeResponse::InheritanceFill).unwrap();
        let b = run_dynamic(&spec, &schedule, &ea, ChangeResponse::InheritanceFill).unwrap();
        assert_eq!(a.snapshots, b.snapshots);
        let other = EaConfig::new(100).with_population(16);
        let c = run_dynamic(&spec, &schedule, &other, ChangeResponse::InheritanceFill).unwrap();
        assert_ne!(a.snapshots, c.snapshots);
    }

    #[test]
    fn setting_one_protocol_shape_small_population() {
        let spec = ProblemSpec::with_default_dims(ProblemFamily::Dtlz2, true, 6).unwrap();
        let schedule = ObjectiveSchedule::builtin(Setting::I, 5);
        let ea = EaConfig::new(3).with_population(12);
        let record = run_dynamic(&spec, &schedule, &ea, ChangeResponse::RetainReevaluate).unwrap();
        let cards: Vec<usize> = record.snapshots.iter().map(|s| s.subset.len()).collect();
        assert_eq!(cards, vec![2, 3, 4, 5, 6, 5, 4, 3, 2]);
    }

    #[test]
    fn full_restart_resamples_every_decision() {
        let spec = small_spec();
        let bounds = spec.decision_bounds();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let old = ObjectiveSubset::new(vec![1, 2]).unwrap();
        let new = ObjectiveSubset::new(vec![1, 2, 3]).unwrap();
        let mut before: Vec<Individual> = (0..8)
            .map(|_| Individual {
                decision: variation::random_decision(&bounds, &mut rng),
                objectives: Vec::new(),
                stale: true,
            })
            .collect();
        evaluate_all(&spec, &old, &mut before).unwrap();
        let originals: Vec<Vec<f64>> = before.iter().map(|i| i.decision.clone()).collect();
        let ea = EaConfig::new(5).with_population(8);
        let after = respond_to_change(
            &spec,
            before,
            &old,
            &new,
            ChangeResponse::PartialRestart(1.0),
            &ea,
            0.1,
            &mut rng,
        )
        .unwrap();
        assert_eq!(after.len(), 8);
        for ind in &after {
            assert!(!originals.contains(&ind.decision));
            assert!(!ind.stale);
            assert_eq!(ind.objectives.len(), 3);
        }
    }

    #[test]
    fn retain_keeps_decisions_and_reprojects() {
        let spec = small_spec();
        let bounds = spec.decision_bounds();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let old = ObjectiveSubset::new(vec![1, 2]).unwrap();
        let new = ObjectiveSubset::new(vec![2, 3]).unwrap();
        let mut before: Vec<Individual> = (0..8)
            .map(|_| Individual {
                decision: variation::random_decision(&bounds, &mut rng),
                objectives: Vec::new(),
                stale: true,
            })
            .collect();
        evaluate_all(&spec, &old, &mut before).unwrap();
        let originals: Vec<Vec<f64>> = before.iter().map(|i| i.decision.clone()).collect();
        let ea = EaConfig::new(6).with_population(8);
        let after = respond_to_change(
            &spec,
            before,
            &old,
            &new,
            ChangeResponse::RetainReevaluate,
            &ea,
            0.1,
            &mut rng,
        )
        .unwrap();
        for (ind, original) in after.iter().zip(&originals) {
            assert_eq!(&ind.decision, original);
            let expect = spec
                .evaluate_subset(&DecisionVector::new(ind.decision.clone()), &new)
                .unwrap();
            assert_eq!(ind.objectives, expect.values());
        }
    }

    #[test]
    fn inheritance_truncates_overfull_nondominated_sets() {
        // On Minus-DTLZ2 essentially the whole population is nondominated
        // under the full subset, so inheritance must truncate by niching.
        let spec = small_spec();
        let schedule = small_schedule();
        let ea = EaConfig::new(11).with_population(16);
        let record = run_dynamic(&spec, &schedule, &ea, ChangeResponse::InheritanceFill).unwrap();
        assert_eq!(record.snapshots.len(), 3);
    }

    #[test]
    fn algorithm_identifiers_round_trip() {
        for id in ["rvea-retain", "rvea-inherit", "rvea-restart0.5", "rvea-restart1"] {
            let parsed = ChangeResponse::parse_id(id).unwrap();
            assert_eq!(ChangeResponse::parse_id(&parsed.id()).unwrap(), parsed);
        }
        assert!(ChangeResponse::parse_id("rvea-restart0").is_err());
        assert!(ChangeResponse::parse_id("rvea-restart1.5").is_err());
        assert!(ChangeResponse::parse_id("nsga2").is_err());
    }

    #[test]
    fn config_validation() {
        let mut ea = EaConfig::new(1);
        ea.population_size = 7;
        assert!(matches!(
            run_dynamic(&small_spec(), &small_schedule(), &ea, ChangeResponse::RetainReevaluate),
            Err(OptError::InvalidConfig(_))
        ));
        let spec = small_spec();
        let schedule = {
            let subsets = [vec![1, 2], vec![1, 2, 4]]
                .into_iter()
                .map(|v| ObjectiveSubset::new(v).unwrap())
                .collect();
            ObjectiveSchedule::new(subsets, 5, 10).unwrap()
        };
        assert!(matches!(
            run_dynamic(&spec, &schedule, &EaConfig::new(1).with_population(8), ChangeResponse::RetainReevaluate),
            Err(OptError::ScheduleOutOfRange { index: 4, m_max: 3 })
        ));
    }
}
