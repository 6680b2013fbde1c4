use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::report::{CaseVerdict, SuiteReport};
use crate::char_sums::{
    homogeneity_factor, inverse_ft, scaled_eval, truncated_stratum_oracle, vanishing_threshold, MonomialScene,
};
use crate::error::{Error, Result};
use crate::exec;
use crate::padic::{CyclotomicValue, PAdicScalar, PrimeContext, ResidueCube, Valuation};
use crate::rational::{self, Rational};

struct Trial {
    alpha: Vec<PAdicScalar>,
    cube: ResidueCube,
    xi: PAdicScalar,
}

fn random_unit(rng: &mut ChaCha8Rng, p: u64, modulus: u64) -> i64 {
    loop {
        let u = rng.gen_range(1..modulus);
        if u % p != 0 {
            return u as i64;
        }
    }
}

fn draw_trial(ctx: &PrimeContext, scene: &MonomialScene, rng: &mut ChaCha8Rng) -> Trial {
    let p = ctx.p();
    let n = scene.n();
    let alpha = (0..n)
        .map(|_| {
            let a = rng.gen_range(0..=1u32);
            let w = random_unit(rng, p, p * p);
            PAdicScalar::from_parts(ctx, w * p.pow(a) as i64, 0)
        })
        .collect();
    let level = rng.gen_range(0..=1u32);
    let base = (0..n).map(|_| rng.gen_range(0..p.pow(level)) as i64).collect();
    let cube = ResidueCube::new(p, base, level).expect("small cube");
    let m = rng.gen_range(0..=2u32);
    let xi = PAdicScalar::from_parts(ctx, random_unit(rng, p, p * p), m);
    Trial { alpha, cube, xi }
}

/// Checks `scaled_eval(alpha, cube, xi) = prod |alpha_i|^(1 + r_i) G(cube, xi)`
/// on `trials` seeded random `(alpha, cube, xi)`.
///
/// With `mutate`, the right side is deliberately off by one factor `|alpha_0|`,
/// which the suite must detect.
pub fn homogeneity_suite(
    ctx: &PrimeContext,
    scene: &MonomialScene,
    trials: usize,
    seed: u64,
    mutate: bool,
) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let drawn: Vec<Trial> = (0..trials).map(|_| draw_trial(ctx, scene, &mut rng)).collect();
    let results = exec::map_ordered(ctx.exec(), &drawn, |t| -> Result<(bool, CyclotomicValue, CyclotomicValue)> {
        let lhs = scaled_eval(ctx, scene, &t.alpha, &t.cube, &t.xi)?;
        let mut factor = homogeneity_factor(scene, &t.alpha);
        if mutate {
            factor *= t.alpha[0].abs_norm();
        }
        let rhs = inverse_ft(ctx, scene, &t.cube, &t.xi)?.scale(&factor);
        Ok((lhs == rhs, lhs, rhs))
    });
    let mut cases = Vec::with_capacity(trials);
    let mut counterexample = None;
    for (id, (t, res)) in drawn.iter().zip(results).enumerate() {
        let (pass, lhs, rhs) = res?;
        if !pass && counterexample.is_none() {
            counterexample = Some(json!({
                "case": id,
                "alpha": t.alpha.iter().map(|a| rational::format(a.value())).collect::<Vec<_>>(),
                "cube": t.cube,
                "xi": rational::format(t.xi.value()),
                "scaled": lhs,
                "expected": rhs,
            }));
        }
        cases.push(CaseVerdict { id, pass, detail: (!pass).then(|| format!("scaled {lhs} != expected {rhs}")) });
    }
    let passed = cases.iter().filter(|c| c.pass).count();
    Ok(SuiteReport { suite: "homogeneity".into(), seed, trials, passed, cases, counterexample })
}

/// Both sides of the constant-`a` reduction on one cube.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutcome {
    pub pass: bool,
    /// The `W`-valued scene `y -> a / prod y_i^(l_i)` paired with `xi`.
    pub vector_side: CyclotomicValue,
    /// The scalar scene at frequency `<xi, a>`.
    pub scalar_side: CyclotomicValue,
    pub depth: u32,
}

/// At a constant `a in W`, the transform of `y -> a / prod y_i^(l_i)` at `xi`
/// equals the scalar inverse-monomial transform at `<xi, a>`.
///
/// The vector side is an independent Riemann-sum evaluation in which each
/// `xi_j a_j / prod y^l` phase is computed separately, over valuation shells
/// down to a depth past which every dropped shell is provably zero.
pub fn reduction_identity_check(
    ctx: &PrimeContext,
    a: &[Rational],
    scene: &MonomialScene,
    cube: &ResidueCube,
    xi: &[Rational],
) -> Result<ReductionOutcome> {
    if a.len() != xi.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), got: xi.len() });
    }
    if a.iter().all(Zero::is_zero) {
        return Err(Error::InvalidArgument("a = 0: the reduction needs a nonvanishing constant".into()));
    }
    let parts: Vec<PAdicScalar> =
        a.iter().zip(xi).map(|(a, x)| PAdicScalar::new(ctx, a * x)).collect::<Result<_>>()?;
    let pairing = parts.iter().fold(Rational::zero(), |acc, x| acc + x.value());
    let scalar = PAdicScalar::new(ctx, pairing)?;
    let m = match scalar.valuation() {
        Valuation::Infinity => return Err(Error::ZeroFrequency),
        Valuation::Finite(v) => -v,
    };
    let mut depth = cube.level();
    for (i, &l) in scene.l().iter().enumerate() {
        if l > 0 && cube.slice_contains_zero(i) {
            let t = vanishing_threshold(ctx.p(), l) as i64;
            depth = depth.max(((t - m).max(0) as u32).div_ceil(l));
        }
    }
    let scalar_side = inverse_ft(ctx, scene, cube, &scalar)?;
    let vector_side = truncated_stratum_oracle(ctx, scene, cube, &parts, depth)?;
    Ok(ReductionOutcome { pass: scalar_side == vector_side, vector_side, scalar_side, depth })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn homogeneity_passes_and_mutation_fails() {
        let ctx = PrimeContext::new(3, 8).unwrap();
        let s = MonomialScene::new(vec![1], vec![0]).unwrap();
        let rep = homogeneity_suite(&ctx, &s, 50, 11, false).unwrap();
        assert!(rep.ok(), "{}", rep.summary_table());
        let bad = homogeneity_suite(&ctx, &s, 50, 11, true).unwrap();
        assert!(!bad.ok() && bad.counterexample.is_some());
        assert_eq!(homogeneity_suite(&ctx, &s, 50, 11, false).unwrap(), rep);
    }

    #[test]
    fn reduction_examples() {
        let ctx = PrimeContext::new(3, 8).unwrap();
        let s = MonomialScene::new(vec![1], vec![0]).unwrap();
        let full = ResidueCube::full(1);
        let one = reduction_identity_check(&ctx, &[int(1)], &s, &full, &[ratio(1, 3)]).unwrap();
        assert!(one.pass);
        let two = reduction_identity_check(&ctx, &[int(1), int(1)], &s, &full, &[ratio(1, 3), ratio(2, 3)]).unwrap();
        assert!(two.pass);
        assert!(matches!(
            reduction_identity_check(&ctx, &[int(0)], &s, &full, &[int(1)]),
            Err(Error::InvalidArgument(_))
        ));
    }
}
