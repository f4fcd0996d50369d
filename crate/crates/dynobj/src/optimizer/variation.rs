//! Real-coded variation operators: simulated binary crossover and
//! polynomial mutation, with clamping to the decision bounds.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_decision(bounds: &[(f64, f64)], rng: &mut ChaCha8Rng) -> Vec<f64> {
    bounds
        .iter()
        .map(|&(lo, hi)| lo + rng.random::<f64>() * (hi - lo))
        .collect()
}

/// Simulated binary crossover (per-variable probability 0.5 once the pair
/// is selected for crossover).
pub fn sbx(
    parent_a: &[f64],
    parent_b: &[f64],
    bounds: &[(f64, f64)],
    eta_c: f64,
    p_crossover: f64,
    rng: &mut ChaCha8Rng,
) -> (Vec<f64>, Vec<f64>) {
    let mut child_a = parent_a.to_vec();
    let mut child_b = parent_b.to_vec();
    if rng.random::<f64>() > p_crossover {
        return (child_a, child_b);
    }
    for i in 0..child_a.len() {
        if rng.random::<f64>() > 0.5 {
            continue;
        }
        let u: f64 = rng.random();
        let beta = if u <= 0.5 {
            (2.0 * u).powf(1.0 / (eta_c + 1.0))
        } else {
            (1.0 / (2.0 * (1.0 - u))).powf(1.0 / (eta_c + 1.0))
        };
        let (p, q) = (parent_a[i], parent_b[i]);
        let (lo, hi) = bounds[i];
        child_a[i] = (0.5 * ((1.0 + beta) * p + (1.0 - beta) * q)).clamp(lo, hi);
        child_b[i] = (0.5 * ((1.0 - beta) * p + (1.0 + beta) * q)).clamp(lo, hi);
    }
    (child_a, child_b)
}

/// Polynomial mutation with per-variable probability `p_mutation`.
pub fn polynomial_mutation(
    x: &mut [f64],
    bounds: &[(f64, f64)],
    eta_m: f64,
    p_mutation: f64,
    rng: &mut ChaCha8Rng,
) {
    for (v, &(lo, hi)) in x.iter_mut().zip(bounds) {
        if rng.random::<f64>() > p_mutation {
            continue;
        }
        let u: f64 = rng.random();
        let delta = if u < 0.5 {
            (2.0 * u).powf(1.0 / (eta_m + 1.0)) - 1.0
        } else {
            1.0 - (2.0 * (1.0 - u)).powf(1.0 / (eta_m + 1.0))
        };
        *v = (*v + delta * (hi - lo)).clamp(lo, hi);
    }
}
