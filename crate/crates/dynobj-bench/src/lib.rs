//! Shared fixtures for the benchmark targets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dynobj::frontier::{sample_front, SampleOptions};
use dynobj::problems::{DecisionVector, ProblemFamily, ProblemSpec};
use dynobj::subset::ObjectiveSubset;

/// Random in-bounds decision vectors for a spec.
pub fn random_decisions(spec: &ProblemSpec, count: usize, seed: u64) -> Vec<DecisionVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bounds = spec.decision_bounds();
    (0..count)
        .map(|_| {
            DecisionVector::new(
                bounds
                    .iter()
                    .map(|&(lo, hi)| lo + rng.random::<f64>() * (hi - lo))
                    .collect(),
            )
        })
        .collect()
}

/// A normalized reference-front point set for hypervolume benchmarks.
pub fn normalized_front(m: usize, budget: usize, cap: usize) -> Vec<Vec<f64>> {
    let spec = ProblemSpec::with_default_dims(ProblemFamily::Dtlz2, true, m).unwrap();
    let mut opts = SampleOptions::new(11).with_budget(budget);
    opts.cap = Some(cap);
    let subset = ObjectiveSubset::full(m);
    let front = sample_front(&spec, &subset, &opts).unwrap();
    dynobj::metrics::normalize(front.points(), front.ideal(), front.nadir()).unwrap()
}

/// Random points in the clipped box, for filter benchmarks.
pub fn random_points(m: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..m).map(|_| rng.random::<f64>()).collect())
        .collect()
}
