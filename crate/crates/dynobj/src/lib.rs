//! Benchmark construction and evaluation toolkit for dynamic multi-objective
//! optimization with a changing number of objectives.
//!
//! The suite fixes a maximum-objective problem `F_max(x) = (f_1(x), ...,
//! f_{m_max}(x))` and makes only the *active subset* of objectives change
//! over time, so every shared objective evaluates bit-identically across
//! stages. Minus variants of the DTLZ and WFG suites keep every objective
//! subset mutually conflicting, avoiding the single-point fronts of the
//! classical formulations.
//!
//! Modules:
//! - [`problems`]: DTLZ1-4 / WFG4-9 and their Minus variants, plus the
//!   legacy time-dependent formulation kept as a counterexample.
//! - [`dynamics`]: objective-subset schedules and the three built-in
//!   settings.
//! - [`frontier`]: sampled reference fronts, nondominated filtering and
//!   desk-scale inclusion checks.
//! - [`hypervolume`]: exact and Monte Carlo hypervolume against the 1.1
//!   reference.
//! - [`metrics`]: normalization, per-stage ratios, MHV and Friedman ranks.
//! - [`optimizer`]: a reference-vector-guided baseline EA with pluggable
//!   change responses.

pub mod dynamics;
pub mod frontier;
pub mod hypervolume;
pub mod metrics;
pub mod optimizer;
pub mod problems;
pub mod subset;
pub mod textfmt;

pub use dynamics::{ObjectiveSchedule, Setting, StagePointer};
pub use frontier::{ReferenceFront, SampleOptions};
pub use hypervolume::HvMethod;
pub use metrics::{MhvReport, RunKey, StageSnapshot};
pub use optimizer::{ChangeResponse, EaConfig, Individual, RunRecord};
pub use problems::{DecisionVector, ObjectiveVector, ProblemFamily, ProblemSpec};
pub use subset::ObjectiveSubset;
