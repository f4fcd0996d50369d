//! Static maximum-objective test problems.
//!
//! Every problem here is a fixed vector function `F_max(x) = (f_1(x), ...,
//! f_{m_max}(x))`. Dynamics never touch these definitions: a stage only
//! selects which components of `F_max` are active, so a shared objective
//! evaluates to bit-identical values in every stage. The time-dependent
//! formulation that violates this property is kept in [`legacy`] purely as a
//! documented counterexample.

mod dtlz;
mod legacy;
pub(crate) mod wfg;

pub use legacy::{legacy_f1_evaluate, legacy_g};

use thiserror::Error;

use crate::subset::{ObjectiveSubset, SubsetError};

/// Base problem families. The Minus variants are expressed by
/// [`ProblemSpec::minus`], not separate family entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemFamily {
    Dtlz1,
    Dtlz2,
    Dtlz3,
    Dtlz4,
    Wfg4,
    Wfg5,
    Wfg6,
    Wfg7,
    Wfg8,
    Wfg9,
}

impl ProblemFamily {
    pub const ALL: [ProblemFamily; 10] = [
        ProblemFamily::Dtlz1,
        ProblemFamily::Dtlz2,
        ProblemFamily::Dtlz3,
        ProblemFamily::Dtlz4,
        ProblemFamily::Wfg4,
        ProblemFamily::Wfg5,
        ProblemFamily::Wfg6,
        ProblemFamily::Wfg7,
        ProblemFamily::Wfg8,
        ProblemFamily::Wfg9,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProblemFamily::Dtlz1 => "dtlz1",
            ProblemFamily::Dtlz2 => "dtlz2",
            ProblemFamily::Dtlz3 => "dtlz3",
            ProblemFamily::Dtlz4 => "dtlz4",
            ProblemFamily::Wfg4 => "wfg4",
            ProblemFamily::Wfg5 => "wfg5",
            ProblemFamily::Wfg6 => "wfg6",
            ProblemFamily::Wfg7 => "wfg7",
            ProblemFamily::Wfg8 => "wfg8",
            ProblemFamily::Wfg9 => "wfg9",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|f| f.name() == name)
    }

    pub fn is_wfg(self) -> bool {
        matches!(
            self,
            ProblemFamily::Wfg4
                | ProblemFamily::Wfg5
                | ProblemFamily::Wfg6
                | ProblemFamily::Wfg7
                | ProblemFamily::Wfg8
                | ProblemFamily::Wfg9
        )
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ProblemError {
    #[error("invalid problem spec: {0}")]
    InvalidSpec(String),
    #[error("unknown problem identifier {0:?}")]
    UnknownId(String),
    #[error("decision vector has {got} variables, spec requires {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("objective index {index} outside [1, {m_max}]")]
    IndexOutOfRange { index: usize, m_max: usize },
    #[error("legacy formulation requires 2 <= m <= n, got m={m}, n={n}")]
    LegacyObjectiveCount { m: usize, n: usize },
    #[error(transparent)]
    Subset(#[from] SubsetError),
}

/// Immutable definition of a maximum-objective problem instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProblemSpec {
    family: ProblemFamily,
    minus: bool,
    m_max: usize,
    n: usize,
    position_params: usize,
}

impl ProblemSpec {
    pub fn new(
        family: ProblemFamily,
        minus: bool,
        m_max: usize,
        n: usize,
        position_params: usize,
    ) -> Result<Self, ProblemError> {
        if m_max < 2 {
            return Err(ProblemError::InvalidSpec(format!(
                "m_max must be at least 2, got {m_max}"
            )));
        }
        if n < m_max {
            return Err(ProblemError::InvalidSpec(format!(
                "n ({n}) must be at least m_max ({m_max})"
            )));
        }
        if family.is_wfg() {
            if position_params == 0 || position_params % (m_max - 1) != 0 {
                return Err(ProblemError::InvalidSpec(format!(
                    "WFG position_params ({position_params}) must be a positive multiple of m_max - 1 ({})",
                    m_max - 1
                )));
            }
            if position_params >= n {
                return Err(ProblemError::InvalidSpec(format!(
                    "WFG position_params ({position_params}) must be smaller than n ({n})"
                )));
            }
        }
        Ok(Self {
            family,
            minus,
            m_max,
            n,
            position_params: if family.is_wfg() { position_params } else { 0 },
        })
    }

    /// Builds a spec with community-standard dimensions: DTLZ uses
    /// `n = m_max + k - 1` with `k = 5` for DTLZ1/3 and `k = 10` for DTLZ2/4;
    /// WFG uses `2 * (m_max - 1)` position and 10 distance parameters.
    pub fn with_default_dims(
        family: ProblemFamily,
        minus: bool,
        m_max: usize,
    ) -> Result<Self, ProblemError> {
        if family.is_wfg() {
            let k = 2 * (m_max.saturating_sub(1));
            Self::new(family, minus, m_max, k + 10, k)
        } else {
            let k_dist = match family {
                ProblemFamily::Dtlz1 | ProblemFamily::Dtlz3 => 5,
                _ => 10,
            };
            Self::new(family, minus, m_max, m_max + k_dist - 1, 0)
        }
    }

    /// Parses identifiers of the form `"dtlz3"` or `"minus-wfg9"` using
    /// default dimensions for the requested `m_max`.
    pub fn parse_id(id: &str, m_max: usize) -> Result<Self, ProblemError> {
        let (minus, base) = match id.strip_prefix("minus-") {
            Some(rest) => (true, rest),
            None => (false, id),
        };
        let family = ProblemFamily::from_name(base)
            .ok_or_else(|| ProblemError::UnknownId(id.to_string()))?;
        Self::with_default_dims(family, minus, m_max)
    }

    /// The identifier used by configuration files and the CLI.
    pub fn id(&self) -> String {
        if self.minus {
            format!("minus-{}", self.family.name())
        } else {
            self.family.name().to_string()
        }
    }

    pub fn family(&self) -> ProblemFamily {
        self.family
    }

    pub fn minus(&self) -> bool {
        self.minus
    }

    pub fn m_max(&self) -> usize {
        self.m_max
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn position_params(&self) -> usize {
        self.position_params
    }

    /// Per-variable `(lower, upper)` bounds: `[0, 1]` for DTLZ and `[0, 2i]`
    /// for WFG variable `i` (1-based).
    pub fn decision_bounds(&self) -> Vec<(f64, f64)> {
        if self.family.is_wfg() {
            (1..=self.n).map(|i| (0.0, 2.0 * i as f64)).collect()
        } else {
            vec![(0.0, 1.0); self.n]
        }
    }

    pub fn in_bounds(&self, x: &DecisionVector) -> bool {
        x.len() == self.n
            && self
                .decision_bounds()
                .iter()
                .zip(x.values())
                .all(|(&(lo, hi), &v)| v >= lo && v <= hi)
    }

    /// Evaluates all `m_max` objectives. Pure and time-independent.
    pub fn evaluate_full(&self, x: &DecisionVector) -> Result<ObjectiveVector, ProblemError> {
        if x.len() != self.n {
            return Err(ProblemError::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        let mut values = Vec::with_capacity(self.m_max);
        match self.family {
            ProblemFamily::Dtlz1
            | ProblemFamily::Dtlz2
            | ProblemFamily::Dtlz3
            | ProblemFamily::Dtlz4 => {
                dtlz::evaluate(self.family, self.m_max, x.values(), &mut values)
            }
            _ => wfg::evaluate(
                self.family,
                self.m_max,
                self.position_params,
                x.values(),
                &mut values,
            ),
        }
        if self.minus {
            for v in &mut values {
                *v = -*v;
            }
        }
        Ok(ObjectiveVector::new(values, ObjectiveSubset::full(self.m_max))
            .expect("full evaluation matches its subset"))
    }

    /// Evaluates the projection of [`Self::evaluate_full`] onto `subset`, in
    /// ascending index order. Bit-identical to projecting the full vector.
    pub fn evaluate_subset(
        &self,
        x: &DecisionVector,
        subset: &ObjectiveSubset,
    ) -> Result<ObjectiveVector, ProblemError> {
        if subset.max_index() > self.m_max {
            return Err(ProblemError::IndexOutOfRange {
                index: subset.max_index(),
                m_max: self.m_max,
            });
        }
        let full = self.evaluate_full(x)?;
        let values = subset.iter().map(|i| full.values()[i - 1]).collect();
        Ok(ObjectiveVector::new(values, subset.clone()).expect("projection matches subset"))
    }
}

/// A point in decision space.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionVector(Vec<f64>);

impl DecisionVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.0
    }
}

impl From<Vec<f64>> for DecisionVector {
    fn from(values: Vec<f64>) -> Self {
        Self(values)
    }
}

/// Objective values paired with the subset they were evaluated on.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveVector {
    values: Vec<f64>,
    subset: ObjectiveSubset,
}

impl ObjectiveVector {
    pub fn new(values: Vec<f64>, subset: ObjectiveSubset) -> Result<Self, ProblemError> {
        if values.len() != subset.len() {
            return Err(ProblemError::InvalidSpec(format!(
                "{} objective values for subset of size {}",
                values.len(),
                subset.len()
            )));
        }
        Ok(Self { values, subset })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn subset(&self) -> &ObjectiveSubset {
        &self.subset
    }

    /// Value of objective `index` (1-based), if present in the subset.
    pub fn value_of(&self, index: usize) -> Option<f64> {
        self.subset
            .indices()
            .iter()
            .position(|&i| i == index)
            .map(|pos| self.values[pos])
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(values: &[f64]) -> DecisionVector {
        DecisionVector::new(values.to_vec())
    }

    #[test]
    fn decision_bounds_follow_suite_conventions() {
        let dtlz = ProblemSpec::new(ProblemFamily::Dtlz2, false, 3, 4, 0).unwrap();
        assert_eq!(dtlz.decision_bounds(), vec![(0.0, 1.0); 4]);

        let wfg = ProblemSpec::new(ProblemFamily::Wfg4, false, 2, 3, 1).unwrap();
        assert_eq!(wfg.decision_bounds(), vec![(0.0, 2.0), (0.0, 4.0), (0.0, 6.0)]);

        // Deterministic on repeated calls.
        assert_eq!(wfg.decision_bounds(), wfg.decision_bounds());
    }

    #[test]
    fn spec_validation() {
        assert!(ProblemSpec::new(ProblemFamily::Dtlz1, false, 1, 5, 0).is_err());
        assert!(ProblemSpec::new(ProblemFamily::Dtlz1, false, 4, 3, 0).is_err());
        // position_params must divide into m_max - 1 groups.
        assert!(ProblemSpec::new(ProblemFamily::Wfg4, false, 3, 12, 3).is_err());
        assert!(ProblemSpec::new(ProblemFamily::Wfg4, false, 3, 4, 4).is_err());
        assert!(ProblemSpec::new(ProblemFamily::Wfg4, false, 3, 12, 4).is_ok());
    }

    #[test]
    fn identifiers_round_trip() {
        for family in ProblemFamily::ALL {
            for minus in [false, true] {
                let spec = ProblemSpec::with_default_dims(family, minus, 6).unwrap();
                let parsed = ProblemSpec::parse_id(&spec.id(), 6).unwrap();
                assert_eq!(parsed, spec);
            }
        }
        assert!(ProblemSpec::parse_id("dtlz9", 3).is_err());
        assert_eq!(
            ProblemSpec::parse_id("minus-wfg9", 6).unwrap().id(),
            "minus-wfg9"
        );
    }

    #[test]
    fn dtlz1_centre_point() {
        let spec = ProblemSpec::new(ProblemFamily::Dtlz1, false, 3, 7, 0).unwrap();
        let x = dv(&[0.5; 7]);
        let f = spec.evaluate_full(&x).unwrap();
        let expect = [0.125, 0.125, 0.25];
        for (got, want) in f.values().iter().zip(expect) {
            assert!((got - want).abs() < 1e-15, "got {got}, want {want}");
        }

        let minus = ProblemSpec::new(ProblemFamily::Dtlz1, true, 3, 7, 0).unwrap();
        let g = minus.evaluate_full(&x).unwrap();
        for (m, c) in g.values().iter().zip(f.values()) {
            assert_eq!(*m, -c);
        }
    }

    #[test]
    fn dtlz2_sphere_corner() {
        let spec = ProblemSpec::new(ProblemFamily::Dtlz2, false, 3, 12, 0).unwrap();
        let mut x = vec![0.5; 12];
        x[0] = 0.0;
        x[1] = 0.0;
        let f = spec.evaluate_full(&dv(&x)).unwrap();
        assert!((f.values()[0] - 1.0).abs() < 1e-15);
        assert!(f.values()[1].abs() < 1e-15);
        assert!(f.values()[2].abs() < 1e-15);
    }

    #[test]
    fn subset_evaluation_is_projection() {
        let spec = ProblemSpec::new(ProblemFamily::Dtlz1, false, 3, 7, 0).unwrap();
        let x = dv(&[0.5; 7]);
        let subset = ObjectiveSubset::new(vec![1, 3]).unwrap();
        let f = spec.evaluate_subset(&x, &subset).unwrap();
        assert_eq!(f.values(), &[0.125, 0.25]);

        let full = spec
            .evaluate_subset(&x, &ObjectiveSubset::full(3))
            .unwrap();
        assert_eq!(full.values(), spec.evaluate_full(&x).unwrap().values());
    }

    #[test]
    fn subset_evaluation_errors() {
        let spec = ProblemSpec::new(ProblemFamily::Dtlz1, false, 3, 7, 0).unwrap();
        let x = dv(&[0.5; 7]);
        let oob = ObjectiveSubset::new(vec![1, 4]).unwrap();
        assert_eq!(
            spec.evaluate_subset(&x, &oob),
            Err(ProblemError::IndexOutOfRange { index: 4, m_max: 3 })
        );
        let short = dv(&[0.5; 6]);
        assert_eq!(
            spec.evaluate_full(&short),
            Err(ProblemError::DimensionMismatch { expected: 7, got: 6 })
        );
    }

    #[test]
    fn objective_vector_lookup() {
        let subset = ObjectiveSubset::new(vec![2, 4]).unwrap();
        let v = ObjectiveVector::new(vec![0.5, 0.7], subset).unwrap();
        assert_eq!(v.value_of(4), Some(0.7));
        assert_eq!(v.value_of(3), None);
    }
}
