//! Hypervolume of normalized point sets against the fixed 1.1 reference.
//!
//! All points are interpreted in minimization sense inside the normalized
//! box `[0, 1.1]^m`: the indicator is the Lebesgue measure of the union of
//! boxes `[p_1, 1.1] x ... x [p_m, 1.1]`. Moderate dimensions use an exact
//! recursive computation; higher dimensions fall back to seeded Monte Carlo.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Upper corner of the normalized evaluation box.
pub const REFERENCE: f64 = 1.1;

/// Largest dimension served by the exact computation by default.
pub const DEFAULT_EXACT_DIM_CAP: usize = 8;

/// Default Monte Carlo budget for dimensions above the cap.
pub const DEFAULT_MC_SAMPLES: usize = 5_000_000;

const MIN_MC_SAMPLES: usize = 10_000;

#[derive(Debug, Error, PartialEq)]
pub enum HvError {
    #[error("dimension {m} exceeds the exact cap {cap}; use Monte Carlo")]
    DimensionAboveCap { m: usize, cap: usize },
    #[error("point of length {got} in a {m}-dimensional computation")]
    DimensionMismatch { m: usize, got: usize },
    #[error("Monte Carlo needs at least {MIN_MC_SAMPLES} samples, got {got}")]
    TooFewSamples { got: usize },
}

/// How a hypervolume value is obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HvMethod {
    Exact,
    MonteCarlo { samples: usize, seed: u64 },
}

impl HvMethod {
    pub fn kind(&self) -> HvKind {
        match self {
            HvMethod::Exact => HvKind::Exact,
            HvMethod::MonteCarlo { .. } => HvKind::MonteCarlo,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HvKind {
    Exact,
    MonteCarlo,
}

/// Keeps exactly the points with every component in `[0, 1.1]`.
pub fn clip_to_box(points: &[Vec<f64>], m: usize) -> Vec<Vec<f64>> {
    points
        .iter()
        .filter(|p| p.len() == m && p.iter().all(|&v| (0.0..=REFERENCE).contains(&v)))
        .cloned()
        .collect()
}

/// Dispatches on the method; the estimate is returned without its standard
/// error (see [`hv_monte_carlo`] when the error matters).
pub fn compute(points: &[Vec<f64>], m: usize, method: &HvMethod) -> Result<f64, HvError> {
    match *method {
        HvMethod::Exact => hv_exact(points, m),
        HvMethod::MonteCarlo { samples, seed } => {
            hv_monte_carlo(points, m, samples, seed).map(|(est, _)| est)
        }
    }
}

/// Exact hypervolume for `m <= DEFAULT_EXACT_DIM_CAP`.
pub fn hv_exact(points: &[Vec<f64>], m: usize) -> Result<f64, HvError> {
    hv_exact_with_cap(points, m, DEFAULT_EXACT_DIM_CAP)
}

pub fn hv_exact_with_cap(points: &[Vec<f64>], m: usize, cap: usize) -> Result<f64, HvError> {
    if m > cap {
        return Err(HvError::DimensionAboveCap { m, cap });
    }
    for p in points {
        if p.len() != m {
            return Err(HvError::DimensionMismatch { m, got: p.len() });
        }
    }
    let pruned = prune(points.to_vec());
    Ok(hv_recursive(pruned, m))
}

/// Seeded uniform sampling in `[0, 1.1]^m`; returns `(estimate, standard
/// error)`. Deterministic given the seed.
pub fn hv_monte_carlo(
    points: &[Vec<f64>],
    m: usize,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64), HvError> {
    if samples < MIN_MC_SAMPLES {
        return Err(HvError::TooFewSamples { got: samples });
    }
    for p in points {
        if p.len() != m {
            return Err(HvError::DimensionMismatch { m, got: p.len() });
        }
    }
    if points.is_empty() {
        return Ok((0.0, 0.0));
    }
    // Dominated points only slow the scan down; sorting on the first
    // coordinate lets each sample scan just the prefix that can dominate it.
    let mut pruned = prune(points.to_vec());
    pruned.sort_unstable_by(|a, b| a[0].partial_cmp(&b[0]).expect("finite objective values"));
    let firsts: Vec<f64> = pruned.iter().map(|p| p[0]).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample = vec![0.0f64; m];
    let mut hits: u64 = 0;
    for _ in 0..samples {
        for v in &mut sample {
            *v = rng.random::<f64>() * REFERENCE;
        }
        let cut = firsts.partition_point(|&f| f <= sample[0]);
        if pruned[..cut]
            .iter()
            .any(|p| p.iter().zip(&sample).all(|(&pi, &si)| pi <= si))
        {
            hits += 1;
        }
    }
    let volume = REFERENCE.powi(m as i32);
    let fraction = hits as f64 / samples as f64;
    let std_err = volume * (fraction * (1.0 - fraction) / samples as f64).sqrt();
    Ok((volume * fraction, std_err))
}

/// Drops duplicates and dominated points (minimization sense).
fn prune(points: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let mut kept: Vec<Vec<f64>> = Vec::with_capacity(points.len());
    for p in points {
        if kept.iter().any(|q| weakly_dominates(q, &p)) {
            continue;
        }
        kept.retain(|q| !weakly_dominates(&p, q));
        kept.push(p);
    }
    kept
}

/// `a <= b` componentwise; with a dedup-first pass this doubles as both a
/// domination and a duplicate test.
fn weakly_dominates(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(&ai, &bi)| ai <= bi)
}

fn box_volume(p: &[f64]) -> f64 {
    p.iter().map(|&v| REFERENCE - v).product()
}

fn hv_recursive(mut points: Vec<Vec<f64>>, m: usize) -> f64 {
    match points.len() {
        0 => 0.0,
        1 => box_volume(&points[0]),
        2 => {
            let joint: Vec<f64> = points[0]
                .iter()
                .zip(&points[1])
                .map(|(&a, &b)| a.max(b))
                .collect();
            box_volume(&points[0]) + box_volume(&points[1]) - box_volume(&joint)
        }
        _ => {
            if m == 1 {
                let best = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
                return REFERENCE - best;
            }
            if m == 2 {
                return hv_sweep_2d(&mut points);
            }
            // Exclusive contribution of each point against its successors,
            // worst-first so limit sets collapse quickly.
            points.sort_unstable_by(|a, b| b.partial_cmp(a).expect("finite objective values"));
            let mut total = 0.0;
            for i in 0..points.len() {
                let limited: Vec<Vec<f64>> = points[i + 1..]
                    .iter()
                    .map(|q| {
                        q.iter()
                            .zip(&points[i])
                            .map(|(&qi, &pi)| qi.max(pi))
                            .collect()
                    })
                    .collect();
                total += box_volume(&points[i]) - hv_recursive(prune(limited), m);
            }
            total
        }
    }
}

/// Exact 2-D case: after pruning the points form a staircase.
fn hv_sweep_2d(points: &mut [Vec<f64>]) -> f64 {
    points.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite objective values"));
    let mut total = 0.0;
    for i in 0..points.len() {
        let right = if i + 1 < points.len() { points[i + 1][0] } else { REFERENCE };
        total += (right - points[i][0]) * (REFERENCE - points[i][1]);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clip_examples() {
        let pts = vec![vec![0.5, 0.5], vec![1.2, 0.1]];
        assert_eq!(clip_to_box(&pts, 2), vec![vec![0.5, 0.5]]);
        // The closed boundary is retained and contributes zero volume.
        assert_eq!(clip_to_box(&[vec![1.1, 1.1]], 2), vec![vec![1.1, 1.1]]);
        assert!(clip_to_box(&[], 2).is_empty());
        assert!(clip_to_box(&[vec![-0.01, 0.5]], 2).is_empty());
    }

    #[test]
    fn exact_hand_values() {
        assert_eq!(hv_exact(&[], 3).unwrap(), 0.0);
        let single = vec![vec![0.0, 0.0, 0.0]];
        assert!((hv_exact(&single, 3).unwrap() - 1.331).abs() < 1e-12);
        let two = vec![vec![0.0, 0.5], vec![0.5, 0.0]];
        assert!((hv_exact(&two, 2).unwrap() - 0.96).abs() < 1e-12);
        // A fully dominated extra point changes nothing.
        let three = vec![vec![0.0, 0.5], vec![0.5, 0.0], vec![0.6, 0.6]];
        assert!((hv_exact(&three, 2).unwrap() - 0.96).abs() < 1e-12);
    }

    #[test]
    fn boundary_point_contributes_zero() {
        let pts = vec![vec![1.1, 1.1]];
        assert_eq!(hv_exact(&pts, 2).unwrap(), 0.0);
    }

    #[test]
    fn dimension_cap_is_enforced() {
        let p = vec![vec![0.5; 9]];
        assert_eq!(
            hv_exact(&p, 9),
            Err(HvError::DimensionAboveCap { m: 9, cap: DEFAULT_EXACT_DIM_CAP })
        );
        assert!(hv_exact_with_cap(&p, 9, 9).is_ok());
    }

    #[test]
    fn monte_carlo_empty_and_full() {
        assert_eq!(hv_monte_carlo(&[], 4, 100_000, 7).unwrap(), (0.0, 0.0));
        // Every sample is dominated, so the estimate is the full box volume
        // with zero standard error.
        let origin = vec![vec![0.0; 10]];
        let (est, se) = hv_monte_carlo(&origin, 10, 1_000_000, 7).unwrap();
        assert!((est - REFERENCE.powi(10)).abs() < 1e-12);
        assert_eq!(se, 0.0);
        assert_eq!(
            hv_monte_carlo(&origin, 10, 100, 7),
            Err(HvError::TooFewSamples { got: 100 })
        );
    }

    #[test]
    fn monte_carlo_is_deterministic() {
        let pts = vec![vec![0.3, 0.8, 0.2], vec![0.9, 0.1, 0.4]];
        let a = hv_monte_carlo(&pts, 3, 50_000, 11).unwrap();
        let b = hv_monte_carlo(&pts, 3, 50_000, 11).unwrap();
        assert_eq!(a, b);
        let c = hv_monte_carlo(&pts, 3, 50_000, 12).unwrap();
        assert_ne!(a.0, c.0);
    }

    #[test]
    fn exact_matches_monte_carlo_small() {
        let pts = vec![
            vec![0.2, 0.7, 0.5, 0.9],
            vec![0.8, 0.1, 0.6, 0.3],
            vec![0.4, 0.4, 0.4, 0.4],
            vec![0.9, 0.9, 0.05, 0.7],
        ];
        let exact = hv_exact(&pts, 4).unwrap();
        let (mc, se) = hv_monte_carlo(&pts, 4, 400_000, 3).unwrap();
        assert!((exact - mc).abs() <= 3.0 * se, "exact={exact}, mc={mc}, se={se}");
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let pts = vec![vec![0.1, 0.2, 0.3]];
        assert_eq!(
            hv_exact(&pts, 2),
            Err(HvError::DimensionMismatch { m: 2, got: 3 })
        );
    }
}
