//! Environmental selection: fast nondominated sorting plus niching against
//! a systematic reference-vector lattice.

use crate::frontier::dominates;

/// Das-Dennis simplex lattice with `divisions` per axis.
fn das_dennis(m: usize, divisions: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    let mut current = vec![0usize; m];
    fill_lattice(m, divisions, 0, divisions, &mut current, &mut out);
    out
}

fn fill_lattice(
    m: usize,
    divisions: usize,
    dim: usize,
    remaining: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<f64>>,
) {
    if dim == m - 1 {
        current[dim] = remaining;
        out.push(current.iter().map(|&c| c as f64 / divisions as f64).collect());
        return;
    }
    for c in 0..=remaining {
        current[dim] = c;
        fill_lattice(m, divisions, dim + 1, remaining - c, current, out);
    }
}

fn lattice_count(m: usize, divisions: usize) -> usize {
    // C(divisions + m - 1, m - 1)
    let mut count = 1usize;
    for i in 1..m {
        count = count * (divisions + i) / i;
    }
    count
}

/// Systematic reference vectors for dimension `m`: the smallest single-layer
/// lattice of size >= `target`, switching to a two-layer construction when
/// that lattice would overshoot the target by more than 2x.
pub fn reference_vectors(m: usize, target: usize) -> Vec<Vec<f64>> {
    assert!(m >= 2, "reference vectors need at least 2 objectives");
    let mut divisions = 1;
    while lattice_count(m, divisions) < target {
        divisions += 1;
    }
    if lattice_count(m, divisions) <= 2 * target || divisions == 1 {
        return das_dennis(m, divisions);
    }
    // Two layers: the largest boundary lattice below the target plus an
    // inner layer shrunk halfway towards the centroid.
    let mut boundary = divisions - 1;
    while boundary > 1 && lattice_count(m, boundary) > target {
        boundary -= 1;
    }
    let mut vectors = das_dennis(m, boundary);
    let mut inner_div = 1;
    while vectors.len() + lattice_count(m, inner_div) < target {
        inner_div += 1;
    }
    let centre_shift = 0.5 / m as f64;
    vectors.extend(das_dennis(m, inner_div).into_iter().map(|w| {
        w.into_iter().map(|v| 0.5 * v + centre_shift).collect::<Vec<f64>>()
    }));
    vectors
}

/// Fast nondominated sorting; returns fronts of candidate indices, best
/// first.
pub fn fast_nondominated_sort(objectives: &[Vec<f64>]) -> Vec<Vec<usize>> {
    let n = objectives.len();
    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut counts = vec![0usize; n];
    for i in 0..n {
        for j in i + 1..n {
            if dominates(&objectives[i], &objectives[j]) {
                dominated_by[i].push(j);
                counts[j] += 1;
            } else if dominates(&objectives[j], &objectives[i]) {
                dominated_by[j].push(i);
                counts[i] += 1;
            }
        }
    }
    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| counts[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominated_by[i] {
                counts[j] -= 1;
                if counts[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        fronts.push(std::mem::replace(&mut current, next));
    }
    fronts
}

/// Selects `target` indices from `objectives`: whole fronts first, with the
/// critical front resolved by reference-vector niching. Fully deterministic;
/// ties break towards lower candidate index.
pub fn select_indices(
    objectives: &[Vec<f64>],
    reference: &[Vec<f64>],
    target: usize,
) -> Vec<usize> {
    assert!(objectives.len() >= target, "not enough candidates");
    let fronts = fast_nondominated_sort(objectives);
    let mut selected: Vec<usize> = Vec::with_capacity(target);
    let mut critical: Option<&Vec<usize>> = None;
    for front in &fronts {
        if selected.len() + front.len() <= target {
            selected.extend(front.iter().copied());
            if selected.len() == target {
                return finish(selected);
            }
        } else {
            critical = Some(front);
            break;
        }
    }
    let critical = critical.expect("selection cannot be satisfied by whole fronts");

    // Normalize by the ideal/extent of the combined candidate set so the
    // angular association is scale-free.
    let considered: Vec<usize> = selected.iter().chain(critical.iter()).copied().collect();
    let m = objectives[0].len();
    let mut ideal = vec![f64::INFINITY; m];
    let mut extent = vec![f64::NEG_INFINITY; m];
    for &i in &considered {
        for d in 0..m {
            ideal[d] = ideal[d].min(objectives[i][d]);
            extent[d] = extent[d].max(objectives[i][d]);
        }
    }
    let range: Vec<f64> = ideal
        .iter()
        .zip(&extent)
        .map(|(&lo, &hi)| if hi - lo > 1e-12 { hi - lo } else { 1.0 })
        .collect();
    let assoc = |i: usize| -> (usize, f64) {
        let scaled: Vec<f64> = (0..m)
            .map(|d| (objectives[i][d] - ideal[d]) / range[d])
            .collect();
        let mut best = (0usize, f64::INFINITY);
        for (r, w) in reference.iter().enumerate() {
            let d = perpendicular_distance(&scaled, w);
            if d < best.1 {
                best = (r, d);
            }
        }
        best
    };

    let mut niche_counts = vec![0usize; reference.len()];
    for &i in &selected {
        niche_counts[assoc(i).0] += 1;
    }
    // (reference index, distance, candidate index) per critical member.
    let mut pool: Vec<(usize, f64, usize)> = critical
        .iter()
        .map(|&i| {
            let (r, d) = assoc(i);
            (r, d, i)
        })
        .collect();

    while selected.len() < target {
        let available: Vec<usize> = pool.iter().map(|&(r, _, _)| r).collect();
        let min_count = available
            .iter()
            .map(|&r| niche_counts[r])
            .min()
            .expect("pool is nonempty");
        let niche = *available
            .iter()
            .filter(|&&r| niche_counts[r] == min_count)
            .min()
            .expect("some niche attains the minimum");
        let mut best: Option<(f64, usize, usize)> = None;
        for (slot, &(r, d, i)) in pool.iter().enumerate() {
            if r == niche {
                let better = match best {
                    None => true,
                    Some((bd, bi, _)) => d < bd || (d == bd && i < bi),
                };
                if better {
                    best = Some((d, i, slot));
                }
            }
        }
        let (_, idx, slot) = best.expect("niche has a pool member");
        selected.push(idx);
        niche_counts[niche] += 1;
        pool.swap_remove(slot);
    }
    finish(selected)
}

fn finish(mut selected: Vec<usize>) -> Vec<usize> {
    selected.sort_unstable();
    selected
}

fn perpendicular_distance(point: &[f64], direction: &[f64]) -> f64 {
    let norm_sq: f64 = direction.iter().map(|w| w * w).sum();
    if norm_sq == 0.0 {
        return point.iter().map(|v| v * v).sum::<f64>().sqrt();
    }
    let dot: f64 = point.iter().zip(direction).map(|(p, w)| p * w).sum();
    let t = dot / norm_sq;
    point
        .iter()
        .zip(direction)
        .map(|(p, w)| (p - t * w) * (p - t * w))
        .sum::<f64>()
        .sqrt()
}
