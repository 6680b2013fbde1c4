//! Exact identity suites, finite-level smoothness probes and coverage checks.
mod cover;
mod probe;
mod report;
mod suites;

pub use cover::{wavefront_cover_check, CoverBundle, CoverCase, CoverReport, ProbeSpec};
pub use probe::{evaluate, local_constancy_probe, smoothness_probe, ConstancyOutcome, ProbeOutcome, ProbeReport};
pub use report::{CaseVerdict, SuiteReport};
pub use suites::{homogeneity_suite, reduction_identity_check, ReductionOutcome};
