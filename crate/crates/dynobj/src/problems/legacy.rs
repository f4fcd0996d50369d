//! Time-dependent F1 formulation kept for demonstration purposes.
//!
//! In this legacy construction the number of objectives `m` appears inside
//! the objective definitions themselves, so changing `m` rewrites every
//! objective: the same decision vector yields different `f_1` for different
//! `m`. It exists here only to exhibit that inconsistency; none of the
//! benchmark machinery builds on it.

use crate::subset::ObjectiveSubset;

use super::{DecisionVector, ObjectiveVector, ProblemError};

/// Distance function of the legacy F1 problem at objective count `m`:
/// `100 * [n - m + 1 + sum_{i=m}^{n} ((x_i - 0.5)^2 - cos(20 pi (x_i - 0.5)))]`.
pub fn legacy_g(x: &[f64], m: usize) -> f64 {
    let n = x.len();
    let sum: f64 = x[m - 1..]
        .iter()
        .map(|&v| (v - 0.5).powi(2) - (20.0 * std::f64::consts::PI * (v - 0.5)).cos())
        .sum();
    100.0 * ((n - m + 1) as f64 + sum)
}

/// Evaluates the legacy F1 problem with `m` objectives over `x in [0,1]^n`.
///
/// Requires `2 <= m <= n`. Evaluating the same `x` at different `m` changes
/// even the objectives that remain active, which is exactly the flaw this
/// function demonstrates.
pub fn legacy_f1_evaluate(x: &DecisionVector, m: usize) -> Result<ObjectiveVector, ProblemError> {
    let n = x.len();
    if m < 2 || m > n {
        return Err(ProblemError::LegacyObjectiveCount { m, n });
    }
    let xs = x.values();
    let scale = (1.0 + legacy_g(xs, m)).sqrt();
    let mut values = Vec::with_capacity(m);
    for j in 1..=m {
        let mut f = scale;
        for &v in &xs[..m - j] {
            f *= v;
        }
        if j > 1 {
            f *= 1.0 - xs[m - j];
        }
        values.push(f);
    }
    Ok(ObjectiveVector::new(values, ObjectiveSubset::full(m)).expect("m values for m objectives"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_inconsistency_example() {
        let x = DecisionVector::new(vec![0.5, 0.5, 0.5]);

        assert_eq!(legacy_g(x.values(), 2), 0.0);
        assert_eq!(legacy_g(x.values(), 3), 0.0);

        let at_two = legacy_f1_evaluate(&x, 2).unwrap();
        let at_three = legacy_f1_evaluate(&x, 3).unwrap();
        assert_eq!(at_two.values()[0], 0.5);
        assert_eq!(at_three.values()[0], 0.25);
    }

    #[test]
    fn objective_count_bounds() {
        let x = DecisionVector::new(vec![0.5, 0.5, 0.5]);
        assert!(legacy_f1_evaluate(&x, 1).is_err());
        assert!(legacy_f1_evaluate(&x, 4).is_err());
        assert_eq!(legacy_f1_evaluate(&x, 3).unwrap().values().len(), 3);
    }
}
