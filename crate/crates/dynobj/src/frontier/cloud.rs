//! Decision-space sampling of Pareto-front candidate clouds.
//!
//! For DTLZ families the distance variables have closed-form optima, so the
//! cloud lies exactly on the optimal manifold and only the position
//! variables are swept. WFG fronts are approximated by driving the reduced
//! position and distance coordinates through structured profiles mixed with
//! uniform sampling; the stability gate in the tests bounds the quality of
//! that approximation.
//!
//! Projections onto small objective subsets concentrate on sub-manifolds
//! where most reduced position coordinates sit exactly at 0 or 1, so besides
//! a plain lattice the samplers emit corner sweeps: every assignment of
//! corners to all but one or two coordinates, with the free coordinates
//! swept densely.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::problems::{wfg, DecisionVector, ProblemFamily, ProblemSpec};

use super::FrontError;

/// Optimal value(s) of each DTLZ distance variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistanceOptimum {
    /// Every distance variable takes this value.
    Fixed(f64),
    /// Either endpoint is optimal with equal distance contribution.
    Either(f64, f64),
}

/// Per-variable optimum of the DTLZ distance function: 0.5 for the classical
/// problems (g = 0), the unit-interval endpoints for Minus-DTLZ2/4, and the
/// numerically located maximizer of `(x-0.5)^2 - cos(20 pi (x-0.5))` for
/// Minus-DTLZ1/3. WFG families have no closed form here and report an error.
pub fn distance_optimum(spec: &ProblemSpec) -> Result<DistanceOptimum, FrontError> {
    if spec.family().is_wfg() {
        return Err(FrontError::NoAnalyticOptimum { family: spec.family() });
    }
    if !spec.minus() {
        return Ok(DistanceOptimum::Fixed(0.5));
    }
    match spec.family() {
        ProblemFamily::Dtlz2 | ProblemFamily::Dtlz4 => Ok(DistanceOptimum::Either(0.0, 1.0)),
        ProblemFamily::Dtlz1 | ProblemFamily::Dtlz3 => {
            Ok(DistanceOptimum::Fixed(rastrigin_argmax()))
        }
        _ => unreachable!("non-DTLZ handled above"),
    }
}

/// Per-variable term of the Rastrigin-style distance function.
pub fn rastrigin_term(x: f64) -> f64 {
    (x - 0.5).powi(2) - (20.0 * PI * (x - 0.5)).cos()
}

/// Argmax of [`rastrigin_term`] over `[0, 1]`: dense grid scan refined by
/// bisection on the derivative inside the bracketing grid interval.
pub fn rastrigin_argmax() -> f64 {
    let grid = 100_000usize;
    let mut best_x = 0.0;
    let mut best = f64::NEG_INFINITY;
    for i in 0..=grid {
        let x = i as f64 / grid as f64;
        let v = rastrigin_term(x);
        if v > best {
            best = v;
            best_x = x;
        }
    }
    let h = 1.0 / grid as f64;
    let dh = |x: f64| 2.0 * (x - 0.5) + 20.0 * PI * (20.0 * PI * (x - 0.5)).sin();
    let (mut lo, mut hi) = ((best_x - h).max(0.0), (best_x + h).min(1.0));
    if dh(lo).signum() == dh(hi).signum() {
        return best_x;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if dh(lo).signum() == dh(mid).signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let refined = 0.5 * (lo + hi);
    if rastrigin_term(refined) >= best {
        refined
    } else {
        best_x
    }
}

/// Evaluates the full objective cloud for a spec. The cloud depends only on
/// `(spec, budget, seed)`; fronts for every subset are projections of the
/// same cloud. Chunk RNG seeds are derived from the pair seed, so chunks
/// could be generated independently and unioned in order.
pub fn sample_cloud(spec: &ProblemSpec, budget: usize, seed: u64) -> Vec<Vec<f64>> {
    let decisions = if spec.family().is_wfg() {
        wfg_decisions(spec, budget, seed)
    } else {
        dtlz_decisions(spec, budget, seed)
    };
    decisions
        .into_iter()
        .map(|x| {
            spec.evaluate_full(&DecisionVector::new(x))
                .expect("sampled point matches spec dimensions")
                .into_values()
        })
        .collect()
}

pub(super) fn derive_seed(seed: u64, tag: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(tag)
        .rotate_left(17)
        .wrapping_mul(0xBF58_476D_1CE4_E5B9)
}

fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, chunk))
}

/// Target for one reduced position coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Slot {
    /// Drive the reduced coordinate to 0.
    Zero,
    /// Drive the reduced coordinate to 1.
    One,
    /// Sweep value in [0, 1].
    Value(f64),
}

impl Slot {
    fn corner(bit: bool) -> Slot {
        if bit {
            Slot::One
        } else {
            Slot::Zero
        }
    }
}

/// Structured target rows over `p` reduced coordinates: a full lattice plus
/// corner sweeps with one and (when possible) two free coordinates.
fn structured_targets(
    p: usize,
    lattice_alloc: usize,
    sweep1_alloc: usize,
    sweep2_alloc: usize,
) -> Vec<Vec<Slot>> {
    let mut rows = Vec::new();

    let side = lattice_side(lattice_alloc.max(4), p);
    let mut counter = vec![0usize; p];
    for _ in 0..lattice_alloc.min(side.pow(p as u32)) {
        rows.push(
            counter
                .iter()
                .map(|&c| Slot::Value(c as f64 / (side - 1) as f64))
                .collect(),
        );
        if !advance(&mut counter, side) {
            break;
        }
    }

    // One free coordinate; corners everywhere else.
    if p >= 1 && p <= 24 && sweep1_alloc > 0 {
        let patterns = p * (1usize << (p - 1));
        let per = (sweep1_alloc / patterns).max(1);
        let mut emitted = 0usize;
        'outer1: for free in 0..p {
            for corners in 0..(1usize << (p - 1)) {
                for step in 0..per {
                    let value = if per == 1 {
                        0.5
                    } else {
                        step as f64 / (per - 1) as f64
                    };
                    let mut row = Vec::with_capacity(p);
                    let mut bit = 0;
                    for slot in 0..p {
                        if slot == free {
                            row.push(Slot::Value(value));
                        } else {
                            row.push(Slot::corner(corners >> bit & 1 == 1));
                            bit += 1;
                        }
                    }
                    rows.push(row);
                    emitted += 1;
                    if emitted >= sweep1_alloc {
                        break 'outer1;
                    }
                }
            }
        }
    }

    // Two free coordinates on a small grid; corners everywhere else.
    if p >= 2 && p <= 24 && sweep2_alloc > 0 {
        let patterns = p * (p - 1) / 2 * (1usize << (p - 2));
        let per = (sweep2_alloc / patterns).max(1);
        let grid = (1..).find(|g| g * g >= per).expect("grid side exists");
        let coord = |step: usize| {
            if grid == 1 {
                0.5
            } else {
                step as f64 / (grid - 1) as f64
            }
        };
        let mut emitted = 0usize;
        'outer2: for a in 0..p {
            for b in a + 1..p {
                for corners in 0..(1usize << (p - 2)) {
                    for sa in 0..grid {
                        for sb in 0..grid {
                            let mut row = Vec::with_capacity(p);
                            let mut bit = 0;
                            for slot in 0..p {
                                if slot == a {
                                    row.push(Slot::Value(coord(sa)));
                                } else if slot == b {
                                    row.push(Slot::Value(coord(sb)));
                                } else {
                                    row.push(Slot::corner(corners >> bit & 1 == 1));
                                    bit += 1;
                                }
                            }
                            rows.push(row);
                            emitted += 1;
                            if emitted >= sweep2_alloc {
                                break 'outer2;
                            }
                        }
                    }
                }
            }
        }
    }
    rows
}

fn lattice_side(budget: usize, dims: usize) -> usize {
    let mut side = 2usize;
    while side < budget && (side + 1).pow(dims as u32) <= budget.max(4) {
        side += 1;
    }
    side
}

fn advance(counter: &mut [usize], side: usize) -> bool {
    for c in counter.iter_mut() {
        *c += 1;
        if *c < side {
            return true;
        }
        *c = 0;
    }
    false
}

fn dtlz_decisions(spec: &ProblemSpec, budget: usize, seed: u64) -> Vec<Vec<f64>> {
    let n = spec.n();
    let p = spec.m_max() - 1;
    let dist_value = match distance_optimum(spec).expect("DTLZ family") {
        DistanceOptimum::Fixed(v) => v,
        DistanceOptimum::Either(_, hi) => hi,
    };
    // DTLZ4 raises position variables to the 100th power; warping the swept
    // values spreads the sampled front back out.
    let warp = spec.family() == ProblemFamily::Dtlz4;

    let mut out: Vec<Vec<f64>> = Vec::with_capacity(budget);
    let complete = |mut position: Vec<f64>| -> Vec<f64> {
        position.resize(n, dist_value);
        position
    };

    for row in structured_targets(p, budget / 4, budget / 4, 3 * budget / 20) {
        let position = row
            .iter()
            .map(|slot| match slot {
                Slot::Zero => 0.0,
                Slot::One => 1.0,
                Slot::Value(v) if warp => v.powf(0.01),
                Slot::Value(v) => *v,
            })
            .collect();
        out.push(complete(position));
    }

    let mut rng = chunk_rng(seed, 1);
    while out.len() < budget {
        let mut position: Vec<f64> = (0..p).map(|_| rng.random::<f64>()).collect();
        if warp && out.len().is_multiple_of(2) {
            for v in &mut position {
                *v = v.powf(0.01);
            }
        }
        out.push(complete(position));
    }
    out
}

fn wfg_decisions(spec: &ProblemSpec, budget: usize, seed: u64) -> Vec<Vec<f64>> {
    let n = spec.n();
    let k = spec.position_params();
    let family = spec.family();
    let minus = spec.minus();
    let groups = spec.m_max() - 1;
    let gap = k / groups;

    let mut ys: Vec<Vec<f64>> = Vec::with_capacity(budget);

    // Structured chunk: reduced-space lattice plus corner sweeps.
    let mut rng = chunk_rng(seed, 10);
    let targets = structured_targets(groups, budget * 3 / 20, budget / 5, budget / 10);
    for (row, slots) in targets.into_iter().enumerate() {
        let mut y: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
        materialize_row(family, minus, k, gap, &slots, row, &mut y, &mut rng);
        ys.push(y);
    }

    // Uniform positions with optimal/extreme distance values.
    let mut rng = chunk_rng(seed, 11);
    let uniform_count = budget / 4;
    for row in 0..uniform_count {
        let mut y: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
        fill_distance(family, minus, k, row, &mut y, &mut rng);
        ys.push(y);
    }

    // Fully uniform fallback.
    let mut rng = chunk_rng(seed, 12);
    while ys.len() < budget {
        ys.push((0..n).map(|_| rng.random::<f64>()).collect());
    }

    ys.into_iter()
        .map(|y| {
            y.into_iter()
                .enumerate()
                .map(|(i, v)| v * 2.0 * (i + 1) as f64)
                .collect()
        })
        .collect()
}

/// Applies one structured row: position group targets plus the distance
/// profile. WFG8's distance depends on the position prefix, so positions go
/// first; WFG9's transforms read the tail, so distance goes first and the
/// groups are materialized right to left.
#[allow(clippy::too_many_arguments)]
fn materialize_row(
    family: ProblemFamily,
    minus: bool,
    k: usize,
    gap: usize,
    slots: &[Slot],
    row: usize,
    y: &mut [f64],
    rng: &mut ChaCha8Rng,
) {
    if family == ProblemFamily::Wfg9 {
        fill_distance(family, minus, k, row, y, rng);
        for g in (0..slots.len()).rev() {
            apply_group_slot(family, slots[g], g, gap, y);
        }
    } else {
        for (g, slot) in slots.iter().enumerate() {
            apply_group_slot(family, *slot, g, gap, y);
        }
        fill_distance(family, minus, k, row, y, rng);
    }
}

/// Writes one position group so its reduced value hits the slot target.
/// `Zero` and `One` are exact for the default even group size; `Value`
/// ties the raw group members, which sweeps the reduced coordinate densely
/// if not always onto its full range.
fn apply_group_slot(family: ProblemFamily, slot: Slot, g: usize, gap: usize, y: &mut [f64]) {
    let start = g * gap;
    match family {
        // s_multi(0) = s_multi(1) = 1 and s_multi(0.35) = 0.
        ProblemFamily::Wfg4 => {
            let v = match slot {
                Slot::Zero => 0.35,
                Slot::One => 0.0,
                Slot::Value(v) => v,
            };
            y[start..start + gap].fill(v);
        }
        // s_decept peaks at A +/- B = 0.35 +/- 0.001 and vanishes at 0.35.
        ProblemFamily::Wfg5 => {
            let v = match slot {
                Slot::Zero => 0.35,
                Slot::One => 0.351,
                Slot::Value(v) => v,
            };
            y[start..start + gap].fill(v);
        }
        // Raw nonseparable reduction: all-zero blocks give 0, alternating
        // extremes give 1.
        ProblemFamily::Wfg6 => match slot {
            Slot::Zero => y[start..start + gap].fill(0.0),
            Slot::One => {
                for (offset, value) in y[start..start + gap].iter_mut().enumerate() {
                    *value = if offset % 2 == 0 { 1.0 } else { 0.0 };
                }
            }
            Slot::Value(v) => y[start..start + gap].fill(v),
        },
        // The parameter bias fixes 0 and 1 regardless of its exponent.
        ProblemFamily::Wfg7 | ProblemFamily::Wfg8 => {
            let v = match slot {
                Slot::Zero => 0.0,
                Slot::One => 1.0,
                Slot::Value(v) => v,
            };
            y[start..start + gap].fill(v);
        }
        // Invert the parameter bias against the already-final tail so the
        // deceptive shift lands exactly on its zero (0.35) or peak (0.351).
        ProblemFamily::Wfg9 => match slot {
            Slot::Zero | Slot::One => {
                for i in (start..start + gap).rev() {
                    let target: f64 = match slot {
                        Slot::Zero => 0.35,
                        _ => {
                            if (i - start) % 2 == 0 {
                                0.351
                            } else {
                                0.35
                            }
                        }
                    };
                    let u = mean(&y[i + 1..]);
                    y[i] = target.powf(1.0 / wfg::param_exponent(u));
                }
            }
            Slot::Value(v) => y[start..start + gap].fill(v),
        },
        _ => unreachable!("not a WFG family"),
    }
}

/// Sets the distance block of `y`: classical specs use the known optimal
/// profile (x_M = 0); Minus specs use per-family profiles that maximize the
/// reduced distance value (x_M = 1), alternated with randomized variants.
fn fill_distance(
    family: ProblemFamily,
    minus: bool,
    k: usize,
    row: usize,
    y: &mut [f64],
    rng: &mut ChaCha8Rng,
) {
    if !minus {
        classical_distance_profile(family, k, y);
        return;
    }
    minus_distance_profile(family, k, !row.is_multiple_of(2), y, rng);
}

/// Distance values driving the reduced distance coordinate to 1 for the
/// Minus variants. The separable reductions peak when every shifted value
/// is 1; the nonseparable reductions of WFG6/9 peak on alternating 0/1
/// shifted patterns instead.
fn minus_distance_profile(
    family: ProblemFamily,
    k: usize,
    randomized: bool,
    y: &mut [f64],
    rng: &mut ChaCha8Rng,
) {
    let n = y.len();
    let extreme = |rng: &mut ChaCha8Rng| -> f64 {
        if randomized && rng.random::<bool>() {
            0.0
        } else {
            1.0
        }
    };
    match family {
        // s_multi maps both domain edges to 1.
        ProblemFamily::Wfg4 => {
            for i in k..n {
                y[i] = extreme(rng);
            }
        }
        // s_decept peaks at A +/- B.
        ProblemFamily::Wfg5 => {
            for v in &mut y[k..] {
                *v = if randomized && rng.random::<bool>() { 0.349 } else { 0.351 };
            }
        }
        // Alternating shifted values 0, 1 maximize the full-block r_nonsep.
        ProblemFamily::Wfg6 => {
            let offset = usize::from(randomized && rng.random::<bool>());
            for i in k..n {
                y[i] = if (i - k) % 2 == offset { 0.35 } else { extreme(rng) };  
            }
        }
        ProblemFamily::Wfg7 | ProblemFamily::Wfg8 => {
            for i in k..n {
                y[i] = extreme(rng);
            }
        }
        // Like WFG6, but the 0-valued slots must invert the parameter-
        // dependent bias, working backwards from the last variable.
        ProblemFamily::Wfg9 => {
            let offset = usize::from(randomized && rng.random::<bool>());
            for i in (k..n).rev() {
                if (n - 1 - i) % 2 == offset {
                    y[i] = extreme(rng);
                } else if i == n - 1 {
                    y[i] = 0.35;
                } else {
                    let u = mean(&y[i + 1..]);
                    y[i] = 0.35f64.powf(1.0 / wfg::param_exponent(u));
                }
            }
        }
        _ => unreachable!("not a WFG family"),
    }
}

/// Writes the classical distance optimum into `y[k..]`, given the position
/// values already in `y[..k]`. WFG8/9 invert the parameter-dependent bias.
pub(super) fn classical_distance_profile(family: ProblemFamily, k: usize, y: &mut [f64]) {
    let n = y.len();
    match family {
        ProblemFamily::Wfg4 | ProblemFamily::Wfg5 | ProblemFamily::Wfg6 | ProblemFamily::Wfg7 => {
            for v in &mut y[k..] {
                *v = 0.35;
            }
        }
        ProblemFamily::Wfg8 => {
            for i in k..n {
                let u = mean(&y[..i]);
                y[i] = 0.35f64.powf(1.0 / wfg::param_exponent(u));
            }
        }
        ProblemFamily::Wfg9 => {
            y[n - 1] = 0.35;
            for i in (k..n - 1).rev() {
                let u = mean(&y[i + 1..]);
                y[i] = 0.35f64.powf(1.0 / wfg::param_exponent(u));
            }
        }
        _ => unreachable!("not a WFG family"),
    }
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}
