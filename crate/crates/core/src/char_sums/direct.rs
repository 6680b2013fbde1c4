use num_traits::{One, Zero};

use super::scene::{FrequencyPoint, PolynomialScene};
use super::weight::{weight_cube_integral, zero_class_weight};
use crate::error::{Error, Result};
use crate::exec;
use crate::padic::{mul_mod, reduce_p_integral, residue_valuation, CyclotomicValue, PrimeContext, ResidueCube};
use crate::poly::MultiPoly;
use crate::rational::{self, pow_p, Rational};

const MAX_DIM: usize = 16;
const MAX_DEGREE: usize = 32;

/// `<xi, phi> + t q` as a single polynomial.
pub(crate) fn phase_poly(scene: &PolynomialScene, freq: &FrequencyPoint) -> Result<MultiPoly> {
    if freq.xi.len() != scene.d() {
        return Err(Error::DimensionMismatch { expected: scene.d(), got: freq.xi.len() });
    }
    let mut acc = MultiPoly::zero(scene.n());
    for (f, x) in scene.phi().iter().zip(&freq.xi) {
        acc = acc.add(&f.scale(x.value()));
    }
    if let Some(q) = scene.twist() {
        let t = freq.twist_scale.as_ref().map_or_else(Rational::one, |t| t.value().clone());
        acc = acc.add(&q.scale(&t));
    }
    Ok(acc)
}

/// Conductor exponent of `psi(f(y))` on `Z_p^n`: `max(0, -min v_p(coeff))`.
pub(crate) fn phase_level(f: &MultiPoly, p: u64) -> u32 {
    f.terms()
        .filter_map(|(_, c)| rational::valuation(c, p))
        .map(|v| (-v).max(0) as u32)
        .max()
        .unwrap_or(0)
}

/// `int_cube psi(<xi, phi(y)> + t q(y)) prod |y_i|^(r_i) dy`, exactly.
///
/// With `p`-integral `phi` and `q` and conductor `p^m`, the phase only depends on
/// `y mod p^m`, so the integral is a finite sum of characters against the exact
/// weights of the level-`max(m, cube level)` subcubes.
pub fn direct_ft(
    ctx: &PrimeContext,
    scene: &PolynomialScene,
    cube: &ResidueCube,
    freq: &FrequencyPoint,
) -> Result<CyclotomicValue> {
    let p = ctx.p();
    cube.check_dim(scene.n())?;
    scene.check_integral(p)?;
    let phase = phase_poly(scene, freq)?;
    let m = phase_level(&phase, p);
    ctx.check_level(m)?;
    if m == 0 {
        return Ok(CyclotomicValue::from_rational(p, weight_cube_integral(ctx, cube, scene.r())?));
    }
    let level = m.max(cube.level());
    ctx.check_level(level)?;

    let modulus = ctx.modulus(m);
    let scaled = phase.scale(&pow_p(p, m as i64));
    let monos: Vec<(Vec<u32>, u64)> = scaled
        .terms()
        .map(|(e, c)| Ok((e.clone(), reduce_p_integral(c, p, m)?)))
        .collect::<Result<_>>()?;
    if scene.n() > MAX_DIM || scaled.total_degree() > MAX_DEGREE {
        return Err(Error::InvalidArgument(format!(
            "direct evaluation supports n <= {MAX_DIM} and degree <= {MAX_DEGREE}"
        )));
    }

    let n = scene.n();
    let r = scene.r();
    let active: Vec<usize> = (0..n).filter(|&i| r[i] != 0).collect();
    let classes_per = level as usize + 1;
    let nclasses = classes_per.pow(active.len() as u32);
    let span = p.pow(level - cube.level());
    let total = span.pow(n as u32);
    let step = ctx.modulus(cube.level());
    let full = ctx.modulus(level);
    let base = cube.base();

    let counts = exec::sum_counts(ctx.exec(), total, modulus as usize * nclasses, |mut idx, acc| {
        let mut y = [0u64; MAX_DIM];
        for i in (0..n).rev() {
            y[i] = base[i] + (idx % span) * step;
            idx /= span;
        }
        let mut e = 0u64;
        let mut pows = [1u64; MAX_DEGREE + 1];
        for (exps, c) in &monos {
            let mut t = *c;
            for (i, &k) in exps.iter().enumerate() {
                if k > 0 {
                    pows[0] = 1;
                    let yi = y[i] % modulus;
                    for j in 1..=k as usize {
                        pows[j] = mul_mod(pows[j - 1], yi, modulus);
                    }
                    t = mul_mod(t, pows[k as usize], modulus);
                }
            }
            e = (e + t) % modulus;
        }
        let mut class = 0usize;
        for &i in &active {
            class = class * classes_per + residue_valuation(y[i] % full, p, level) as usize;
        }
        acc[class * modulus as usize + e as usize] += 1;
    });

    // weight of one level-`level` subcube in each valuation class
    let mut dense = vec![Rational::zero(); modulus as usize];
    let inactive = pow_p(p, -((n - active.len()) as i64) * level as i64);
    for class in 0..nclasses {
        let row = &counts[class * modulus as usize..(class + 1) * modulus as usize];
        if row.iter().all(|&c| c == 0) {
            continue;
        }
        let mut w = inactive.clone();
        let mut c = class;
        for &i in active.iter().rev() {
            let v = (c % classes_per) as u32;
            c /= classes_per;
            w *= if v == level {
                zero_class_weight(p, level, r[i])
            } else {
                pow_p(p, -(level as i64) - r[i] * v as i64)
            };
        }
        for (slot, &cnt) in dense.iter_mut().zip(row) {
            if cnt > 0 {
                *slot += &w * Rational::from_integer(cnt.into());
            }
        }
    }
    Ok(CyclotomicValue::from_dense(p, m, dense))
}
