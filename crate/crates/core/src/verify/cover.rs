use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::probe::{smoothness_probe, ProbeOutcome};
use crate::char_sums::Scene;
use crate::error::{Error, Result};
use crate::geometry::{membership, ConicSetDescriptor};
use crate::padic::{PrimeContext, ResidueCube};
use crate::rational::Rational;

/// One `(cube, direction)` pair of a probe plan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeSpec {
    pub cube: ResidueCube,
    #[serde(with = "crate::rational::serde_vec")]
    pub direction: Vec<Rational>,
}

/// A scene, its bound `L`, and the probes to run against it.
#[derive(Debug, Clone)]
pub struct CoverBundle {
    pub scene: Scene,
    pub bound: ConicSetDescriptor,
    pub probes: Vec<ProbeSpec>,
    /// Chart coordinates that map to the `Y` coordinates of `L`.
    pub y_coords: Vec<usize>,
    pub k_max: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCase {
    pub probe_id: usize,
    pub outcome: ProbeOutcome,
    /// Set when the probe did not vanish, so its point must lie in `L`.
    pub in_bound: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub cases: Vec<CoverCase>,
    pub violations: usize,
}

impl CoverReport {
    pub fn ok(&self) -> bool {
        self.violations == 0
    }
}

/// Every probe that fails to vanish must lie in `L`; the converse is never checked.
///
/// A transform that does not decay along `lambda xi0` is, by homogeneity in the
/// frequency variable, singular at the apex `xi = 0` in the codirection `xi0`.
/// The probe is therefore mapped to the base point `(y, 0)`, with `y` the cube
/// base read through `y_coords`, and the covector `(0, xi0)`.
pub fn wavefront_cover_check(ctx: &PrimeContext, bundle: &CoverBundle) -> Result<CoverReport> {
    let q = bundle.bound.ambient.q;
    let d = bundle.bound.ambient.d;
    if bundle.y_coords.len() != q {
        return Err(Error::DimensionMismatch { expected: q, got: bundle.y_coords.len() });
    }
    if bundle.scene.d() != d {
        return Err(Error::DimensionMismatch { expected: d, got: bundle.scene.d() });
    }
    let mut cases = Vec::with_capacity(bundle.probes.len());
    let mut violations = 0;
    for (probe_id, spec) in bundle.probes.iter().enumerate() {
        let rep = smoothness_probe(ctx, &bundle.scene, &spec.cube, &spec.direction, bundle.k_max)?;
        let in_bound = if rep.outcome.vanished() {
            None
        } else {
            let mut base: Vec<Rational> = bundle
                .y_coords
                .iter()
                .map(|&i| Rational::from_integer(spec.cube.base()[i].into()))
                .collect();
            base.extend(std::iter::repeat_n(Rational::zero(), d));
            let mut covector = vec![Rational::zero(); q];
            covector.extend(spec.direction.iter().cloned());
            let hit = membership(&bundle.bound, &base, &covector)?;
            if !hit {
                violations += 1;
            }
            Some(hit)
        };
        cases.push(CoverCase { probe_id, outcome: rep.outcome, in_bound });
    }
    Ok(CoverReport { cases, violations })
}
