//! Reference Pareto fronts and desk-scale optimality checks.
//!
//! A [`ReferenceFront`] is the sampled approximation of the true front of a
//! `(problem, objective subset)` pair, together with the ideal point, nadir
//! point and the hypervolume of its normalized form. Fronts are meant to be
//! computed once, persisted, and reused for every metric evaluation so that
//! all algorithms are normalized identically.

mod archive;
mod cloud;
mod filter;

pub use archive::{parse_front_archive, render_front_archive};
pub use cloud::{distance_optimum, rastrigin_argmax, rastrigin_term, sample_cloud, DistanceOptimum};
pub use filter::{dominates, ideal_nadir, nondominated_filter, nondominated_marks};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::hypervolume::{self, HvMethod};
use crate::problems::{legacy_f1_evaluate, DecisionVector, ProblemError, ProblemFamily, ProblemSpec};
use crate::subset::ObjectiveSubset;

#[derive(Debug, Error, PartialEq)]
pub enum FrontError {
    #[error("empty point set")]
    EmptyFront,
    #[error("front is degenerate in objective dimension {dim}")]
    DegenerateDimension { dim: usize },
    #[error("sampling budget must be at least 100, got {got}")]
    BudgetTooSmall { got: usize },
    #[error("{family:?} has no analytic distance optimum; sample the front instead")]
    NoAnalyticOptimum { family: ProblemFamily },
    #[error("subset {a} is not contained in {b}")]
    NotASubset { a: String, b: String },
    #[error("grid of {points} points exceeds the cap of {cap}")]
    GridTooLarge { points: u128, cap: usize },
    #[error("front archive: {0}")]
    Archive(String),
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Subset(#[from] crate::subset::SubsetError),
    #[error(transparent)]
    Hypervolume(#[from] crate::hypervolume::HvError),
}

/// Options controlling [`sample_front`].
#[derive(Debug, Clone)]
pub struct SampleOptions {
    /// Number of cloud evaluations.
    pub budget: usize,
    /// Maximum retained front size; `None` picks [`default_front_cap`].
    pub cap: Option<usize>,
    /// Projected clouds larger than this are subsampled before exact
    /// filtering when the subset has 4+ objectives.
    pub projection_cap: usize,
    pub seed: u64,
    /// Dimensions above this use Monte Carlo for the front hypervolume.
    pub exact_dim_cap: usize,
    pub mc_samples: usize,
}

impl SampleOptions {
    pub fn new(seed: u64) -> Self {
        Self {
            budget: 200_000,
            cap: None,
            projection_cap: 25_000,
            seed,
            exact_dim_cap: hypervolume::DEFAULT_EXACT_DIM_CAP,
            mc_samples: hypervolume::DEFAULT_MC_SAMPLES,
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }
}

/// Default retained front size per objective count, chosen so the exact
/// hypervolume of a front stays tractable.
pub fn default_front_cap(m: usize) -> usize {
    match m {
        0..=2 => 10_000,
        3 => 4_000,
        4 => 1_500,
        5 => 800,
        6 => 500,
        7 => 350,
        8 => 250,
        _ => 2_000,
    }
}

/// A sampled true Pareto front for one `(problem, subset)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceFront {
    spec: ProblemSpec,
    subset: ObjectiveSubset,
    points: Vec<Vec<f64>>,
    ideal: Vec<f64>,
    nadir: Vec<f64>,
    front_hv: f64,
    hv_method: HvMethod,
    degenerate: bool,
    seed: u64,
    budget: usize,
}

impl ReferenceFront {
    pub fn spec(&self) -> &ProblemSpec {
        &self.spec
    }

    pub fn subset(&self) -> &ObjectiveSubset {
        &self.subset
    }

    /// Front points in raw objective space, sorted lexicographically.
    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn ideal(&self) -> &[f64] {
        &self.ideal
    }

    pub fn nadir(&self) -> &[f64] {
        &self.nadir
    }

    /// Hypervolume of the normalized front (0 when degenerate).
    pub fn front_hv(&self) -> f64 {
        self.front_hv
    }

    pub fn hv_method(&self) -> HvMethod {
        self.hv_method
    }

    pub fn degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn budget(&self) -> usize {
        self.budget
    }
}

/// Samples the reference front of `(spec, subset)`: evaluates the decision
/// cloud, projects it onto the subset, filters to the nondominated set and
/// thins to the cap. Deterministic given the seed. Degenerate fronts (fewer
/// than 2 distinct points, or a flat objective) are returned with the
/// degeneracy flag set rather than as an error.
pub fn sample_front(
    spec: &ProblemSpec,
    subset: &ObjectiveSubset,
    opts: &SampleOptions,
) -> Result<ReferenceFront, FrontError> {
    if opts.budget < 100 {
        return Err(FrontError::BudgetTooSmall { got: opts.budget });
    }
    if subset.max_index() > spec.m_max() {
        return Err(ProblemError::IndexOutOfRange {
            index: subset.max_index(),
            m_max: spec.m_max(),
        }
        .into());
    }
    let cloud = sample_cloud(spec, opts.budget, opts.seed);
    let filtered = projected_nondominated(&cloud, subset, opts);
    build_front(spec, subset, filtered, opts)
}

/// Projection + reduction + filter stage of [`sample_front`], exposed so the
/// pipeline can be recomposed in tests and by the archive tooling.
pub fn projected_nondominated(
    cloud: &[Vec<f64>],
    subset: &ObjectiveSubset,
    opts: &SampleOptions,
) -> Vec<Vec<f64>> {
    let mut projected: Vec<Vec<f64>> = cloud
        .iter()
        .map(|row| subset.iter().map(|i| row[i - 1]).collect())
        .collect();
    if subset.len() >= 4 && projected.len() > opts.projection_cap {
        let mut rng = ChaCha8Rng::seed_from_u64(cloud::derive_seed(opts.seed, 99));
        let picked = rand::seq::index::sample(&mut rng, projected.len(), opts.projection_cap);
        let mut indices: Vec<usize> = picked.into_iter().collect();
        indices.sort_unstable();
        projected = indices.into_iter().map(|i| std::mem::take(&mut projected[i])).collect();
    }
    nondominated_filter(&projected)
}

fn build_front(
    spec: &ProblemSpec,
    subset: &ObjectiveSubset,
    filtered: Vec<Vec<f64>>,
    opts: &SampleOptions,
) -> Result<ReferenceFront, FrontError> {
    let m = subset.len();
    if filtered.is_empty() {
        return Err(FrontError::EmptyFront);
    }
    let (ideal, nadir) = filter::raw_ideal_nadir(&filtered);
    // Collapsed fronts of the classical formulations shrink to floating-point
    // dust rather than one exact point, so the flatness test is relative.
    let degenerate = filtered.len() < 2
        || ideal.iter().zip(&nadir).any(|(&lo, &hi)| {
            hi - lo <= 1e-9 * lo.abs().max(hi.abs()).max(1.0)
        });
    let cap = opts.cap.unwrap_or_else(|| default_front_cap(m));
    let points = thin_front(filtered, cap, &ideal, &nadir);

    let (front_hv, hv_method) = if degenerate {
        (0.0, HvMethod::Exact)
    } else {
        let normalized: Vec<Vec<f64>> = points
            .iter()
            .map(|p| {
                p.iter()
                    .zip(ideal.iter().zip(&nadir))
                    .map(|(&v, (&lo, &hi))| (v - lo) / (hi - lo))
                    .collect()
            })
            .collect();
        let method = if m <= opts.exact_dim_cap {
            HvMethod::Exact
        } else {
            HvMethod::MonteCarlo {
                samples: opts.mc_samples,
                seed: cloud::derive_seed(opts.seed, 7),
            }
        };
        (hypervolume::compute(&normalized, m, &method)?, method)
    };

    Ok(ReferenceFront {
        spec: *spec,
        subset: subset.clone(),
        points,
        ideal,
        nadir,
        front_hv,
        hv_method,
        degenerate,
        seed: opts.seed,
        budget: opts.budget,
    })
}

/// Farthest-point thinning in normalized space. The per-dimension extreme
/// points are always retained, so the stored ideal/nadir still bound the
/// thinned set tightly.
fn thin_front(points: Vec<Vec<f64>>, cap: usize, ideal: &[f64], nadir: &[f64]) -> Vec<Vec<f64>> {
    if points.len() <= cap.max(1) {
        return points;
    }
    let m = ideal.len();
    let scale: Vec<f64> = ideal
        .iter()
        .zip(nadir)
        .map(|(&lo, &hi)| if hi > lo { hi - lo } else { 1.0 })
        .collect();
    let norm: Vec<Vec<f64>> = points
        .iter()
        .map(|p| {
            p.iter()
                .zip(ideal.iter().zip(&scale))
                .map(|(&v, (&lo, &s))| (v - lo) / s)
                .collect()
        })
        .collect();

    // Extremes are located on the raw values: normalization can collapse
    // sub-epsilon differences and lose the true per-dimension extreme.
    let mut chosen: Vec<usize> = Vec::with_capacity(cap);
    for d in 0..m {
        let lo = argmin_by(&points, |p| p[d]);
        let hi = argmin_by(&points, |p| -p[d]);
        for idx in [lo, hi] {
            if !chosen.contains(&idx) && chosen.len() < cap {
                chosen.push(idx);
            }
        }
    }
    if chosen.is_empty() {
        chosen.push(0);
    }

    let mut taken = vec![false; norm.len()];
    for &idx in &chosen {
        taken[idx] = true;
    }
    let mut min_dist: Vec<f64> = norm
        .iter()
        .map(|p| {
            chosen
                .iter()
                .map(|&c| squared_distance(p, &norm[c]))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    while chosen.len() < cap {
        // Untaken points only: raw-distinct points can collapse onto a
        // chosen one in normalized space, leaving min_dist at exactly 0.
        let mut best = usize::MAX;
        let mut best_d = f64::NEG_INFINITY;
        for (i, &d) in min_dist.iter().enumerate() {
            if !taken[i] && d > best_d {
                best_d = d;
                best = i;
            }
        }
        if best == usize::MAX {
            break;
        }
        chosen.push(best);
        taken[best] = true;
        for (i, d) in min_dist.iter_mut().enumerate() {
            let nd = squared_distance(&norm[i], &norm[best]);
            if nd < *d {
                *d = nd;
            }
        }
    }
    chosen.sort_unstable();
    let mut points = points;
    chosen
        .into_iter()
        .map(|i| std::mem::take(&mut points[i]))
        .collect()
}

fn argmin_by(points: &[Vec<f64>], key: impl Fn(&[f64]) -> f64) -> usize {
    let mut best = 0;
    let mut best_v = f64::INFINITY;
    for (i, p) in points.iter().enumerate() {
        let v = key(p);
        if v < best_v {
            best_v = v;
            best = i;
        }
    }
    best
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(&x, &y)| (x - y) * (x - y)).sum()
}

/// Outcome of a brute-force Pareto-set inclusion check on a decision grid.
#[derive(Debug, Clone, PartialEq)]
pub struct InclusionReport {
    pub holds: bool,
    pub counterexample: Option<InclusionCounterexample>,
    pub grid_points: usize,
    pub optimal_under_a: usize,
    pub optimal_under_b: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InclusionCounterexample {
    pub decision: Vec<f64>,
    pub objectives_a: Vec<f64>,
    pub objectives_b: Vec<f64>,
}

pub const DEFAULT_GRID_CAP: usize = 20_000;

/// Enumerates a full decision grid and reports whether every grid point that
/// is Pareto-optimal under `subset_a` is also Pareto-optimal under
/// `subset_b` (with `subset_a` contained in `subset_b`). Because objective
/// functions here never change, this is the testable form of the
/// front/set inclusion property.
pub fn verify_inclusion(
    spec: &ProblemSpec,
    subset_a: &ObjectiveSubset,
    subset_b: &ObjectiveSubset,
    resolution: usize,
    grid_cap: usize,
) -> Result<InclusionReport, FrontError> {
    if !subset_a.is_subset_of(subset_b) {
        return Err(FrontError::NotASubset {
            a: subset_a.to_string(),
            b: subset_b.to_string(),
        });
    }
    if subset_b.max_index() > spec.m_max() {
        return Err(ProblemError::IndexOutOfRange {
            index: subset_b.max_index(),
            m_max: spec.m_max(),
        }
        .into());
    }
    if subset_a == subset_b {
        return Ok(InclusionReport {
            holds: true,
            counterexample: None,
            grid_points: 0,
            optimal_under_a: 0,
            optimal_under_b: 0,
        });
    }
    let grid = decision_grid(&spec.decision_bounds(), resolution, grid_cap)?;
    let full: Vec<Vec<f64>> = grid
        .iter()
        .map(|x| {
            spec.evaluate_full(&DecisionVector::new(x.clone()))
                .map(|f| f.into_values())
        })
        .collect::<Result<_, _>>()?;
    let project = |subset: &ObjectiveSubset| -> Vec<Vec<f64>> {
        full.iter()
            .map(|row| subset.iter().map(|i| row[i - 1]).collect())
            .collect()
    };
    let rows_a = project(subset_a);
    let rows_b = project(subset_b);
    Ok(inclusion_from_rows(&grid, &rows_a, &rows_b))
}

/// The analogous check for the legacy time-dependent formulation, where the
/// two stages do not even share objective functions. Reports both whether
/// the shared objectives agree (they do not) and whether grid Pareto-set
/// inclusion happens to hold.
#[derive(Debug, Clone, PartialEq)]
pub struct LegacyInclusionReport {
    /// True if every shared objective evaluates identically at both stages.
    pub shared_objectives_consistent: bool,
    pub max_shared_discrepancy: f64,
    /// Decision vector with the largest shared-objective discrepancy.
    pub discrepancy_witness: Option<Vec<f64>>,
    pub inclusion: InclusionReport,
}

impl LegacyInclusionReport {
    /// The comparison is meaningful evidence against the legacy construction
    /// if the objectives changed underfoot or inclusion failed outright.
    pub fn violated_or_vacuous(&self) -> bool {
        !self.shared_objectives_consistent || !self.inclusion.holds
    }
}

pub fn verify_inclusion_legacy(
    n: usize,
    m_small: usize,
    m_large: usize,
    resolution: usize,
    grid_cap: usize,
) -> Result<LegacyInclusionReport, FrontError> {
    let bounds = vec![(0.0, 1.0); n];
    let grid = decision_grid(&bounds, resolution, grid_cap)?;
    let mut rows_a = Vec::with_capacity(grid.len());
    let mut rows_b = Vec::with_capacity(grid.len());
    for x in &grid {
        let dv = DecisionVector::new(x.clone());
        rows_a.push(legacy_f1_evaluate(&dv, m_small)?.into_values());
        rows_b.push(legacy_f1_evaluate(&dv, m_large)?.into_values());
    }
    let shared = m_small.min(m_large);
    let mut max_disc = 0.0f64;
    let mut witness = None;
    for ((x, a), b) in grid.iter().zip(&rows_a).zip(&rows_b) {
        for d in 0..shared {
            let disc = (a[d] - b[d]).abs();
            if disc > max_disc {
                max_disc = disc;
                witness = Some(x.clone());
            }
        }
    }
    let inclusion = inclusion_from_rows(&grid, &rows_a, &rows_b);
    Ok(LegacyInclusionReport {
        shared_objectives_consistent: max_disc <= 1e-12,
        max_shared_discrepancy: max_disc,
        discrepancy_witness: witness,
        inclusion,
    })
}

fn inclusion_from_rows(
    grid: &[Vec<f64>],
    rows_a: &[Vec<f64>],
    rows_b: &[Vec<f64>],
) -> InclusionReport {
    let marks_a = nondominated_marks(rows_a);
    let marks_b = nondominated_marks(rows_b);
    let optimal_under_a = marks_a.iter().filter(|&&m| m).count();
    let optimal_under_b = marks_b.iter().filter(|&&m| m).count();
    for i in 0..grid.len() {
        if marks_a[i] && !marks_b[i] {
            return InclusionReport {
                holds: false,
                counterexample: Some(InclusionCounterexample {
                    decision: grid[i].clone(),
                    objectives_a: rows_a[i].clone(),
                    objectives_b: rows_b[i].clone(),
                }),
                grid_points: grid.len(),
                optimal_under_a,
                optimal_under_b,
            };
        }
    }
    InclusionReport {
        holds: true,
        counterexample: None,
        grid_points: grid.len(),
        optimal_under_a,
        optimal_under_b,
    }
}

fn decision_grid(
    bounds: &[(f64, f64)],
    resolution: usize,
    grid_cap: usize,
) -> Result<Vec<Vec<f64>>, FrontError> {
    assert!(resolution >= 2, "grid needs at least 2 points per dimension");
    let n = bounds.len();
    let total = (resolution as u128).pow(n as u32);
    if total > grid_cap as u128 {
        return Err(FrontError::GridTooLarge { points: total, cap: grid_cap });
    }
    let mut grid = Vec::with_capacity(total as usize);
    let mut counter = vec![0usize; n];
    loop {
        grid.push(
            counter
                .iter()
                .zip(bounds)
                .map(|(&c, &(lo, hi))| lo + (hi - lo) * c as f64 / (resolution - 1) as f64)
                .collect(),
        );
        let mut dim = 0;
        loop {
            if dim == n {
                return Ok(grid);
            }
            counter[dim] += 1;
            if counter[dim] < resolution {
                break;
            }
            counter[dim] = 0;
            dim += 1;
        }
    }
}
