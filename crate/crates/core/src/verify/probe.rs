use serde::{Deserialize, Serialize};

use crate::char_sums::{direct_ft, inverse_ft, FrequencyPoint, Scene};
use crate::error::{Error, Result};
use crate::padic::{CyclotomicValue, PAdicScalar, PrimeContext, ResidueCube};
use crate::rational::{pow_p, Rational};

/// The localized transform of either scene type at `xi`.
pub fn evaluate(ctx: &PrimeContext, scene: &Scene, cube: &ResidueCube, xi: &[PAdicScalar]) -> Result<CyclotomicValue> {
    match scene {
        Scene::Direct(s) => direct_ft(ctx, s, cube, &FrequencyPoint::new(xi.to_vec())),
        Scene::Inverse(s) => {
            if xi.len() != 1 {
                return Err(Error::DimensionMismatch { expected: 1, got: xi.len() });
            }
            inverse_ft(ctx, s, cube, &xi[0])
        }
    }
}

pub(crate) fn to_scalars(ctx: &PrimeContext, xi: &[Rational], d: usize) -> Result<Vec<PAdicScalar>> {
    if xi.len() != d {
        return Err(Error::DimensionMismatch { expected: d, got: xi.len() });
    }
    xi.iter().map(|x| PAdicScalar::new(ctx, x.clone())).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeOutcome {
    /// Exactly zero from this level to the last one tested.
    VanishedAt(u32),
    /// Constant and nonzero from this level on, over at least two levels.
    StabilizedAt(u32),
    NotStabilized(u32),
}

impl ProbeOutcome {
    pub fn vanished(&self) -> bool {
        matches!(self, ProbeOutcome::VanishedAt(_))
    }
}

/// Values of the localized transform along the ray `p^-k xi0`, `k = 1..=levels_tested`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub cube: ResidueCube,
    #[serde(with = "crate::rational::serde_vec")]
    pub direction: Vec<Rational>,
    pub levels_tested: u32,
    pub outcome: ProbeOutcome,
    pub values: Vec<CyclotomicValue>,
}

/// Scans the ray through `xi0` and classifies the trace of exact values.
pub fn smoothness_probe(
    ctx: &PrimeContext,
    scene: &Scene,
    cube: &ResidueCube,
    xi0: &[Rational],
    k_max: u32,
) -> Result<ProbeReport> {
    let dir = to_scalars(ctx, xi0, scene.d())?;
    if dir.iter().all(PAdicScalar::is_zero) {
        return Err(Error::ZeroFrequency);
    }
    if k_max == 0 {
        return Err(Error::InvalidArgument("a probe needs at least one level".into()));
    }
    let p = ctx.p();
    let mut values = Vec::with_capacity(k_max as usize);
    for k in 1..=k_max {
        let lam = pow_p(p, -(k as i64));
        let xi: Vec<PAdicScalar> =
            dir.iter().map(|x| PAdicScalar::new(ctx, x.value() * &lam)).collect::<Result<_>>()?;
        values.push(evaluate(ctx, scene, cube, &xi)?);
    }
    let outcome = classify(&values);
    Ok(ProbeReport { cube: cube.clone(), direction: xi0.to_vec(), levels_tested: k_max, outcome, values })
}

fn classify(values: &[CyclotomicValue]) -> ProbeOutcome {
    let n = values.len();
    let last = &values[n - 1];
    let run = values.iter().rev().take_while(|v| *v == last).count();
    let start = (n - run + 1) as u32;
    if last.is_zero() {
        ProbeOutcome::VanishedAt(start)
    } else if run >= 2 {
        ProbeOutcome::StabilizedAt(start)
    } else {
        ProbeOutcome::NotStabilized(n as u32)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstancyOutcome {
    StableAt(u32),
    NotStabilized,
}

/// Least `j` such that, for every `j' in j..=refine_max`, the value at `xi`
/// equals the values at `xi (1 + p^j' u)` and `xi + p^j' u e_i` for all
/// `u = 1..p-1` and every coordinate `i`.
pub fn local_constancy_probe(
    ctx: &PrimeContext,
    scene: &Scene,
    cube: &ResidueCube,
    xi: &[Rational],
    refine_max: u32,
) -> Result<ConstancyOutcome> {
    let base = to_scalars(ctx, xi, scene.d())?;
    if base.iter().all(PAdicScalar::is_zero) {
        return Err(Error::ZeroFrequency);
    }
    let p = ctx.p();
    let v0 = evaluate(ctx, scene, cube, &base)?;
    let mut stable = None;
    for j in (1..=refine_max).rev() {
        let step = pow_p(p, j as i64);
        let mut agree = true;
        'outer: for u in 1..p {
            let du = &step * Rational::from_integer(u.into());
            let mult: Vec<Rational> = xi.iter().map(|x| x * (Rational::from_integer(1.into()) + &du)).collect();
            let mut cands = vec![mult];
            for i in 0..xi.len() {
                let mut add = xi.to_vec();
                add[i] += &du;
                cands.push(add);
            }
            for c in cands {
                if evaluate(ctx, scene, cube, &to_scalars(ctx, &c, scene.d())?)? != v0 {
                    agree = false;
                    break 'outer;
                }
            }
        }
        if !agree {
            break;
        }
        stable = Some(j);
    }
    Ok(stable.map_or(ConstancyOutcome::NotStabilized, ConstancyOutcome::StableAt))
}
