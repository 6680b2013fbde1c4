//! The explicit wave-front bound `L` and the smooth locus `U`.
mod build;
mod chart;
mod pcrit;
mod resultant;

pub use build::build_l;
pub use chart::ResolutionChart;
pub use pcrit::{
    pcrit_exact, pcrit_sampled, smooth_locus_membership, CurveScene, MethodTag, PolyMap, SampledFiber,
    TransversalityReport, MAX_CURVE_DEGREE, MAX_PROJECTIVE_DIM, MAX_SAMPLE_BUDGET,
};
pub use resultant::{binary_resultant, determinant};
