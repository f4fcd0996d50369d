//! Property tests over the core invariants: function preservation across
//! subsets, minus symmetry, hypervolume laws, filtering against a
//! brute-force oracle, ranking identities.

use proptest::prelude::*;

use dynobj::frontier::{self, nondominated_filter};
use dynobj::hypervolume::{clip_to_box, hv_exact};
use dynobj::metrics::{friedman_ranks, normalize, rank_descending};
use dynobj::problems::{DecisionVector, ProblemFamily, ProblemSpec};
use dynobj::subset::ObjectiveSubset;

fn all_specs(m_max: usize) -> Vec<ProblemSpec> {
    let mut specs = Vec::new();
    for family in ProblemFamily::ALL {
        for minus in [false, true] {
            specs.push(ProblemSpec::with_default_dims(family, minus, m_max).unwrap());
        }
    }
    specs
}

fn unit_point(spec: &ProblemSpec, unit: &[f64]) -> DecisionVector {
    let values = spec
        .decision_bounds()
        .iter()
        .zip(unit.iter().cycle())
        .map(|(&(lo, hi), &u)| lo + u * (hi - lo))
        .collect();
    DecisionVector::new(values)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // The central design requirement: a shared objective evaluates
    // bit-identically under any two subsets.
    #[test]
    fn function_preservation(unit in prop::collection::vec(0.0f64..=1.0, 28),
                             picks in prop::collection::vec(any::<bool>(), 12)) {
        let m_max = 6;
        let choose = |offset: usize| -> ObjectiveSubset {
            let mut indices: Vec<usize> = (1..=m_max)
                .filter(|i| picks[(offset + i) % picks.len()])
                .collect();
            if indices.is_empty() {
                indices.push(1 + offset % m_max);
            }
            ObjectiveSubset::new(indices).unwrap()
        };
        let a = choose(0);
        let b = choose(5);
        for spec in all_specs(m_max) {
            let x = unit_point(&spec, &unit);
            let under_a = spec.evaluate_subset(&x, &a).unwrap();
            let under_b = spec.evaluate_subset(&x, &b).unwrap();
            for i in a.iter().filter(|&i| b.contains(i)) {
                let va = under_a.value_of(i).unwrap();
                let vb = under_b.value_of(i).unwrap();
                prop_assert!(va.to_bits() == vb.to_bits(),
                    "{} objective {i}: {va} vs {vb}", spec.id());
            }
        }
    }

    // Minus output is the bitwise negation of the classical output.
    #[test]
    fn minus_symmetry(unit in prop::collection::vec(0.0f64..=1.0, 28)) {
        for family in ProblemFamily::ALL {
            let classical = ProblemSpec::with_default_dims(family, false, 3).unwrap();
            let minus = ProblemSpec::with_default_dims(family, true, 3).unwrap();
            let x = unit_point(&classical, &unit);
            let c = classical.evaluate_full(&x).unwrap();
            let m = minus.evaluate_full(&x).unwrap();
            for (cv, mv) in c.values().iter().zip(m.values()) {
                prop_assert!(mv.to_bits() == (-cv).to_bits());
            }
        }
    }

    // DTLZ1 objectives sum to 0.5 on the optimal distance manifold; the
    // spherical variants have unit norm there.
    #[test]
    fn dtlz_optimal_manifolds(unit in prop::collection::vec(0.0f64..=1.0, 5)) {
        for m_max in [3usize, 6] {
            let simplex = ProblemSpec::with_default_dims(ProblemFamily::Dtlz1, false, m_max).unwrap();
            let mut x = vec![0.5; simplex.n()];
            for (slot, &u) in x.iter_mut().zip(unit.iter().cycle()).take(m_max - 1) {
                *slot = u;
            }
            let f = simplex.evaluate_full(&DecisionVector::new(x)).unwrap();
            let sum: f64 = f.values().iter().sum();
            prop_assert!((sum - 0.5).abs() < 1e-12, "sum {sum}");

            for family in [ProblemFamily::Dtlz2, ProblemFamily::Dtlz3, ProblemFamily::Dtlz4] {
                let sphere = ProblemSpec::with_default_dims(family, false, m_max).unwrap();
                let mut x = vec![0.5; sphere.n()];
                for (slot, &u) in x.iter_mut().zip(unit.iter().cycle()).take(m_max - 1) {
                    *slot = u;
                }
                let f = sphere.evaluate_full(&DecisionVector::new(x)).unwrap();
                let norm: f64 = f.values().iter().map(|v| v * v).sum::<f64>().sqrt();
                prop_assert!((norm - 1.0).abs() < 1e-12, "{family:?} norm {norm}");
            }
        }
    }

    // Filtering agrees with the O(n^2) pairwise oracle.
    #[test]
    fn filter_matches_bruteforce(raw in prop::collection::vec(
        prop::collection::vec(0.0f64..1.0, 4), 1..120)) {
        let points: Vec<Vec<f64>> = raw;
        let mut expected: Vec<Vec<f64>> = Vec::new();
        for (i, p) in points.iter().enumerate() {
            let dominated = points
                .iter()
                .any(|q| frontier::dominates(q, p));
            let duplicate_earlier = points[..i].iter().any(|q| q == p);
            if !dominated && !duplicate_earlier {
                expected.push(p.clone());
            }
        }
        expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
        prop_assert_eq!(nondominated_filter(&points), expected);
    }

    // The 2-D and 3-D fast paths agree with the general path.
    #[test]
    fn filter_fast_paths_match_general(raw in prop::collection::vec(
        prop::collection::vec(0.0f64..1.0, 3), 1..200)) {
        let low: Vec<Vec<f64>> = raw.iter().map(|p| p[..2].to_vec()).collect();
        let padded: Vec<Vec<f64>> = low.iter().map(|p| {
            let mut q = p.clone();
            q.push(0.0);
            q.push(0.0);
            q
        }).collect();
        let direct = nondominated_filter(&low);
        let via_general: Vec<Vec<f64>> = nondominated_filter(&padded)
            .into_iter()
            .map(|p| p[..2].to_vec())
            .collect();
        prop_assert_eq!(direct, via_general);

        let three: Vec<Vec<f64>> = raw;
        let padded3: Vec<Vec<f64>> = three.iter().map(|p| {
            let mut q = p.clone();
            q.push(0.5);
            q
        }).collect();
        let direct3 = nondominated_filter(&three);
        let via_general3: Vec<Vec<f64>> = nondominated_filter(&padded3)
            .into_iter()
            .map(|p| p[..3].to_vec())
            .collect();
        prop_assert_eq!(direct3, via_general3);
    }

    // Hypervolume laws: bounds, monotonicity, dominated-point neutrality,
    // permutation invariance over points and coordinates.
    #[test]
    fn hypervolume_laws(raw in prop::collection::vec(
        prop::collection::vec(0.0f64..1.1, 4), 1..24),
        extra in prop::collection::vec(0.0f64..1.1, 4),
        swap in 0usize..4) {
        let m = 4;
        let points = clip_to_box(&raw, m);
        let base = hv_exact(&points, m).unwrap();
        prop_assert!(base >= 0.0 && base <= 1.1f64.powi(4) + 1e-12);

        // Adding a point never decreases the volume.
        let mut more = points.clone();
        more.push(extra.clone());
        let grown = hv_exact(&more, m).unwrap();
        prop_assert!(grown + 1e-12 >= base, "grown {grown} < base {base}");

        // Adding a dominated point changes nothing.
        if let Some(first) = points.first() {
            let dominated: Vec<f64> = first.iter().map(|v| (v + 0.05).min(1.1)).collect();
            let mut padded = points.clone();
            padded.push(dominated);
            let same = hv_exact(&padded, m).unwrap();
            prop_assert!((same - base).abs() < 1e-12);
        }

        // Point order never matters.
        let mut reversed = points.clone();
        reversed.reverse();
        let rev = hv_exact(&reversed, m).unwrap();
        prop_assert!((rev - base).abs() < 1e-12);

        // Identically permuting objective axes never matters.
        let permuted: Vec<Vec<f64>> = points
            .iter()
            .map(|p| {
                let mut q = p.clone();
                q.swap(swap, (swap + 1) % m);
                q
            })
            .collect();
        let perm = hv_exact(&permuted, m).unwrap();
        prop_assert!((perm - base).abs() < 1e-12);
    }

    // Per-cell ranks sum to k(k+1)/2 and survive positive rescaling.
    #[test]
    fn friedman_rank_identities(cells in prop::collection::vec(
        prop::collection::vec(0.0f64..1.0, 4), 1..30),
        scale in 0.01f64..100.0) {
        let k = 4;
        for cell in &cells {
            let sum: f64 = rank_descending(cell).iter().sum();
            prop_assert!((sum - (k * (k + 1)) as f64 / 2.0).abs() < 1e-9);
        }
        let ranks = friedman_ranks(&cells).unwrap();
        let rescaled: Vec<Vec<f64>> = cells
            .iter()
            .map(|cell| cell.iter().map(|v| v * scale).collect())
            .collect();
        prop_assert_eq!(friedman_ranks(&rescaled).unwrap(), ranks);
    }

    // Normalization is the exact affine map and inverts cleanly.
    #[test]
    fn normalization_affine_identities(points in prop::collection::vec(
        prop::collection::vec(-5.0f64..5.0, 3), 1..40)) {
        let mut ideal = vec![f64::INFINITY; 3];
        let mut nadir = vec![f64::NEG_INFINITY; 3];
        for p in &points {
            for d in 0..3 {
                ideal[d] = ideal[d].min(p[d]);
                nadir[d] = nadir[d].max(p[d]);
            }
        }
        for d in 0..3 {
            nadir[d] = nadir[d].max(ideal[d] + 1.0);
        }
        let normalized = normalize(&points, &ideal, &nadir).unwrap();
        prop_assert_eq!(
            normalize(&[ideal.clone()], &ideal, &nadir).unwrap()[0].clone(),
            vec![0.0; 3]
        );
        prop_assert_eq!(
            normalize(&[nadir.clone()], &ideal, &nadir).unwrap()[0].clone(),
            vec![1.0; 3]
        );
        for (norm, raw) in normalized.iter().zip(&points) {
            for d in 0..3 {
                let back = ideal[d] + norm[d] * (nadir[d] - ideal[d]);
                prop_assert!((back - raw[d]).abs() < 1e-12);
            }
        }
    }
}
