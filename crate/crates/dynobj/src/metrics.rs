//! Normalization, the per-stage hypervolume ratio, MHV aggregation and
//! Friedman ranking.
//!
//! The metric of a run is the mean over stages of
//! `HV(normalized snapshot) / HV(normalized reference front)`, both measured
//! against the fixed 1.1 reference after discarding points outside
//! `[0, 1.1]^m`. Numerator and denominator always use the same method class
//! (and, for Monte Carlo, the same sample budget with independent seeds), so
//! estimator bias largely cancels in the ratio.

use thiserror::Error;

use crate::frontier::ReferenceFront;
use crate::hypervolume::{self, HvMethod};
use crate::subset::ObjectiveSubset;

#[derive(Debug, Error, PartialEq)]
pub enum MetricError {
    #[error("normalization range is not positive in dimension {dim}")]
    NonPositiveRange { dim: usize },
    #[error("snapshot subset {snapshot} does not match front subset {front}")]
    SubsetMismatch { snapshot: String, front: String },
    #[error("reference front is degenerate; no ratio is defined")]
    DegenerateFront,
    #[error("run has {snapshots} snapshots but {fronts} fronts were supplied")]
    StageCountMismatch { snapshots: usize, fronts: usize },
    #[error("stage {stage} ratio {ratio} is outside [0, {limit}]")]
    RatioOutOfBounds { stage: usize, ratio: f64, limit: f64 },
    #[error("aggregation needs at least 2 runs, got {got}")]
    TooFewRuns { got: usize },
    #[error("Friedman ranking needs at least 2 algorithms, got {got}")]
    TooFewAlgorithms { got: usize },
    #[error("Friedman table is ragged: cell {cell} has {got} entries, expected {expected}")]
    RaggedTable { cell: usize, got: usize, expected: usize },
    #[error("Friedman ranking needs at least one cell")]
    EmptyTable,
    #[error(transparent)]
    Hypervolume(#[from] hypervolume::HvError),
}

/// Stage ratios may exceed 1 slightly because reference fronts are sampled
/// approximations; anything above this slack fails the run.
pub const RATIO_TOLERANCE: f64 = 0.05;

/// Population snapshot taken at the final generation of a stage.
#[derive(Debug, Clone, PartialEq)]
pub struct StageSnapshot {
    pub stage: usize,
    pub subset: ObjectiveSubset,
    /// Nondominated objective vectors in raw objective space.
    pub points: Vec<Vec<f64>>,
}

/// Identifies the experiment cell a run belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RunKey {
    pub setting: String,
    pub problem: String,
    pub tau_t: usize,
    pub algorithm: String,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MhvReport {
    pub key: RunKey,
    pub per_stage_ratios: Vec<f64>,
    pub mhv: f64,
}

/// Componentwise affine map sending the ideal point to the origin and the
/// nadir point to the all-ones vector.
pub fn normalize(
    points: &[Vec<f64>],
    ideal: &[f64],
    nadir: &[f64],
) -> Result<Vec<Vec<f64>>, MetricError> {
    for (dim, (lo, hi)) in ideal.iter().zip(nadir).enumerate() {
        if hi - lo <= 0.0 {
            return Err(MetricError::NonPositiveRange { dim: dim + 1 });
        }
    }
    Ok(points
        .iter()
        .map(|p| {
            p.iter()
                .zip(ideal.iter().zip(nadir))
                .map(|(&v, (&lo, &hi))| (v - lo) / (hi - lo))
                .collect()
        })
        .collect())
}

/// `HV(normalized snapshot) / HV(normalized front)` for one stage. The
/// numerator reuses the front's method class; `mc_seed` seeds the numerator
/// when that class is Monte Carlo. An empty snapshot after clipping scores 0.
pub fn stage_ratio(
    snapshot: &StageSnapshot,
    front: &ReferenceFront,
    mc_seed: u64,
) -> Result<f64, MetricError> {
    if front.degenerate() {
        return Err(MetricError::DegenerateFront);
    }
    if &snapshot.subset != front.subset() {
        return Err(MetricError::SubsetMismatch {
            snapshot: snapshot.subset.to_string(),
            front: front.subset().to_string(),
        });
    }
    let m = snapshot.subset.len();
    let normalized = normalize(&snapshot.points, front.ideal(), front.nadir())?;
    let clipped = hypervolume::clip_to_box(&normalized, m);
    if clipped.is_empty() {
        return Ok(0.0);
    }
    let method = match front.hv_method() {
        HvMethod::Exact => HvMethod::Exact,
        HvMethod::MonteCarlo { samples, .. } => HvMethod::MonteCarlo { samples, seed: mc_seed },
    };
    let hv = hypervolume::compute(&clipped, m, &method)?;
    Ok(hv / front.front_hv())
}

/// Mean stage ratio over a full run. Ratios outside `[0, 1 + RATIO_TOLERANCE]`
/// indicate a defective front approximation and fail the computation.
pub fn mhv(
    key: RunKey,
    snapshots: &[StageSnapshot],
    fronts: &[&ReferenceFront],
    mc_seed_base: u64,
) -> Result<MhvReport, MetricError> {
    if snapshots.len() != fronts.len() {
        return Err(MetricError::StageCountMismatch {
            snapshots: snapshots.len(),
            fronts: fronts.len(),
        });
    }
    let limit = 1.0 + RATIO_TOLERANCE;
    let mut per_stage_ratios = Vec::with_capacity(snapshots.len());
    for (snapshot, front) in snapshots.iter().zip(fronts) {
        let ratio = stage_ratio(
            snapshot,
            front,
            mc_seed_base.wrapping_add(snapshot.stage as u64),
        )?;
        if !(0.0..=limit).contains(&ratio) {
            return Err(MetricError::RatioOutOfBounds {
                stage: snapshot.stage,
                ratio,
                limit,
            });
        }
        per_stage_ratios.push(ratio);
    }
    let mhv = per_stage_ratios.iter().sum::<f64>() / per_stage_ratios.len() as f64;
    Ok(MhvReport { key, per_stage_ratios, mhv })
}

/// Sample mean and sample standard deviation (n - 1 denominator).
pub fn aggregate_runs(values: &[f64]) -> Result<(f64, f64), MetricError> {
    if values.len() < 2 {
        return Err(MetricError::TooFewRuns { got: values.len() });
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    Ok((mean, var.sqrt()))
}

/// Ranks one cell: rank 1 for the highest value, ties averaged.
pub fn rank_descending(values: &[f64]) -> Vec<f64> {
    let k = values.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| values[j].partial_cmp(&values[i]).expect("finite values"));
    let mut ranks = vec![0.0; k];
    let mut pos = 0;
    while pos < k {
        let mut end = pos;
        while end + 1 < k && values[order[end + 1]] == values[order[pos]] {
            end += 1;
        }
        // Positions pos..=end share the average of ranks pos+1..=end+1.
        let avg = (pos + 1 + end + 1) as f64 / 2.0;
        for &idx in &order[pos..=end] {
            ranks[idx] = avg;
        }
        pos = end + 1;
    }
    ranks
}

/// Average Friedman rank per algorithm over a complete table of cells.
/// Within each cell, algorithms are ranked 1 (best = highest MHV) to k with
/// tied values receiving the average of their ranks.
pub fn friedman_ranks(cells: &[Vec<f64>]) -> Result<Vec<f64>, MetricError> {
    if cells.is_empty() {
        return Err(MetricError::EmptyTable);
    }
    let k = cells[0].len();
    if k < 2 {
        return Err(MetricError::TooFewAlgorithms { got: k });
    }
    for (i, cell) in cells.iter().enumerate() {
        if cell.len() != k {
            return Err(MetricError::RaggedTable { cell: i, got: cell.len(), expected: k });
        }
    }
    let mut totals = vec![0.0; k];
    for cell in cells {
        for (total, rank) in totals.iter_mut().zip(rank_descending(cell)) {
            *total += rank;
        }
    }
    let n = cells.len() as f64;
    Ok(totals.into_iter().map(|t| t / n).collect())
}
