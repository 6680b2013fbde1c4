//! Plain Riemann sums over residue classes, written independently of the
//! stratified evaluators so that the two can be compared.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::scene::{FrequencyPoint, MonomialScene, PolynomialScene, Scene};
use super::weight::zero_class_weight;
use crate::error::{Error, Result};
use crate::padic::{CyclotomicValue, PAdicScalar, PrimeContext, ResidueCube, Valuation};
use crate::rational::{pow_p, Rational};

/// Largest number of residue points a single oracle call will enumerate.
pub const ORACLE_POINT_LIMIT: u64 = 1 << 24;

/// `sum_{y mod p^K, y in cube} psi(phase(y)) * w(y)`, with `w(y)` the exact
/// integral of `prod |y_i|^(r_i)` over the cell `y + p^K Z_p^n`.
///
/// For the direct phase `K` must reach the conductor of `<xi, phi> + t q`. For the
/// inverse phase the cube must stay off the divisor and `K` must reach
/// `m + sum l_i v_i + max v_i`, past which the phase is constant on cells.
pub fn brute_force_ft(
    ctx: &PrimeContext,
    scene: &Scene,
    cube: &ResidueCube,
    freq: &FrequencyPoint,
    k: u32,
) -> Result<CyclotomicValue> {
    cube.check_dim(scene.n())?;
    match scene {
        Scene::Direct(s) => brute_direct(ctx, s, cube, freq, k),
        Scene::Inverse(s) => {
            if freq.xi.len() != 1 {
                return Err(Error::DimensionMismatch { expected: 1, got: freq.xi.len() });
            }
            brute_inverse(ctx, s, cube, std::slice::from_ref(&freq.xi[0]), k)
        }
    }
}

fn cube_points(ctx: &PrimeContext, cube: &ResidueCube, k: u32) -> Result<Vec<Vec<u64>>> {
    let per = ctx.p().pow(k - cube.level());
    let total = (per as u128).pow(cube.dim() as u32);
    if total > ORACLE_POINT_LIMIT as u128 {
        return Err(Error::BudgetExceeded { budget: total.min(usize::MAX as u128) as usize, limit: ORACLE_POINT_LIMIT as usize });
    }
    Ok(cube.subcubes(ctx.p(), k).into_iter().map(|c| c.base().to_vec()).collect())
}

fn int(y: u64) -> Rational {
    Rational::from_integer(BigInt::from(y))
}

/// Exponent of `psi(x)` at level `top`, i.e. `{x}_p = e / p^top`.
///
/// `x` is any rational with `v_p(x) >= -top`; writing `x = a / (p^k b)` with `b`
/// prime to `p`, the fractional part is `(a b^-1 mod p^k) / p^k`.
fn exponent_at(p: u64, x: &Rational, top: u32) -> Result<u64> {
    let pb = BigInt::from(p);
    let mut b = x.denom().clone();
    let mut k = 0u32;
    while (&b % &pb).is_zero() {
        b /= &pb;
        k += 1;
    }
    if k > top {
        return Err(Error::InvalidArgument(format!("phase conductor {k} above the expected {top}")));
    }
    if k == 0 {
        return Ok(0);
    }
    let modulus = pb.pow(k);
    let inv = b.modinv(&modulus).expect("denominator part is prime to p");
    let j = (x.numer() * inv).mod_floor(&modulus);
    Ok(j.to_u64().expect("residue fits") * p.pow(top - k))
}

fn brute_direct(
    ctx: &PrimeContext,
    scene: &PolynomialScene,
    cube: &ResidueCube,
    freq: &FrequencyPoint,
    k: u32,
) -> Result<CyclotomicValue> {
    let p = ctx.p();
    scene.check_integral(p)?;
    if freq.xi.len() != scene.d() {
        return Err(Error::DimensionMismatch { expected: scene.d(), got: freq.xi.len() });
    }
    // conductor read off from the frequency sizes: every coefficient is p-integral
    let mut m = 0u32;
    for x in freq.xi.iter().chain(freq.twist_scale.iter()) {
        if let Valuation::Finite(v) = x.valuation() {
            m = m.max((-v).max(0) as u32);
        }
    }
    let required = m.max(cube.level());
    if k < required {
        return Err(Error::OracleLevelTooLow { given: k, required });
    }
    ctx.check_level(k)?;
    let t = freq.twist_scale.as_ref().map_or_else(Rational::one, |t| t.value().clone());

    let mut dense = vec![Rational::zero(); p.pow(m) as usize];
    for y in cube_points(ctx, cube, k)? {
        let yq: Vec<Rational> = y.iter().map(|&v| int(v)).collect();
        let mut phase = Rational::zero();
        for (f, x) in scene.phi().iter().zip(&freq.xi) {
            phase += f.eval(&yq) * x.value();
        }
        if let Some(q) = scene.twist() {
            phase += q.eval(&yq) * &t;
        }
        let e = exponent_at(p, &phase, m)?;
        let mut w = Rational::one();
        for (&yi, &ri) in y.iter().zip(scene.r()) {
            w *= if yi == 0 {
                zero_class_weight(p, k, ri)
            } else {
                let a = PAdicScalar::with_prime(p, int(yi))?.abs_norm();
                pow_p(p, -(k as i64)) * num_traits::pow(a, ri as usize)
            };
        }
        dense[e as usize] += w;
    }
    Ok(CyclotomicValue::from_dense(p, m, dense))
}

/// Inverse-phase Riemann sum with the frequency given as a sum of parts; each
/// part's phase is evaluated separately and the phases are added exactly.
pub(crate) fn brute_inverse(
    ctx: &PrimeContext,
    scene: &MonomialScene,
    cube: &ResidueCube,
    parts: &[PAdicScalar],
    k: u32,
) -> Result<CyclotomicValue> {
    let p = ctx.p();
    let mut vmax = 0i64;
    let mut shift = 0i64;
    for i in 0..scene.n() {
        if !scene.on_divisor(i) {
            continue;
        }
        let b = cube.base()[i];
        if b == 0 {
            return Err(Error::DivisorTouched { coord: i });
        }
        let v = crate::rational::int_valuation(&BigInt::from(b), p);
        vmax = vmax.max(v);
        shift += scene.l()[i] as i64 * v;
    }
    let total: Rational = parts.iter().map(|x| x.value().clone()).sum();
    let m = match PAdicScalar::with_prime(p, total)?.valuation() {
        Valuation::Finite(v) => -v,
        Valuation::Infinity => i64::MIN / 4,
    };
    let top = (m + shift).max(0) as u32;
    let required = ((m + shift + vmax).max(0) as u32).max(cube.level());
    if k < required {
        return Err(Error::OracleLevelTooLow { given: k, required });
    }
    ctx.check_level(k.max(top))?;

    let mut dense = vec![Rational::zero(); p.pow(top) as usize];
    let cell = pow_p(p, -(k as i64) * scene.n() as i64);
    for y in cube_points(ctx, cube, k)? {
        let mut mono = Rational::one();
        let mut w = cell.clone();
        for (i, &yi) in y.iter().enumerate() {
            let l = scene.l()[i];
            if l > 0 {
                mono /= num_traits::pow(int(yi), l as usize);
            }
            let r = scene.r()[i];
            if r != 0 {
                let a = PAdicScalar::with_prime(p, int(yi))?.abs_norm();
                w *= if r > 0 {
                    num_traits::pow(a, r as usize)
                } else {
                    num_traits::pow(Rational::one() / a, (-r) as usize)
                };
            }
        }
        let mut phase = Rational::zero();
        for x in parts {
            phase += x.value() * &mono;
        }
        dense[exponent_at(p, &phase, top)? as usize] += w;
    }
    Ok(CyclotomicValue::from_dense(p, top, dense))
}

/// Inverse-phase oracle on cubes that may meet the divisor: every coordinate
/// slice through `0` is cut into shells `p^v (Z/p)^x` for `v < depth`, each shell
/// product is summed by [`brute_force_ft`], and the remainder `p^depth Z_p` is
/// dropped.
///
/// Dropping the remainder is exact once `depth` is past the vanishing level of the
/// stratified evaluation, which makes this a check on that claim.
pub fn truncated_stratum_oracle(
    ctx: &PrimeContext,
    scene: &MonomialScene,
    cube: &ResidueCube,
    parts: &[PAdicScalar],
    depth: u32,
) -> Result<CyclotomicValue> {
    let p = ctx.p();
    cube.check_dim(scene.n())?;
    let k = cube.level();
    // per coordinate: list of (base, level) pieces
    let mut pieces: Vec<Vec<(u64, u32)>> = Vec::new();
    for i in 0..scene.n() {
        let b = cube.base()[i];
        if !scene.on_divisor(i) || b != 0 {
            pieces.push(vec![(b, k)]);
            continue;
        }
        if scene.l()[i] == 0 {
            return Err(Error::InvalidArgument(format!(
                "coordinate {i} has l = 0 and meets the divisor; its tail does not vanish"
            )));
        }
        let mut shells = Vec::new();
        for v in k..depth {
            for u in 1..p {
                shells.push((u * p.pow(v), v + 1));
            }
        }
        pieces.push(shells);
    }
    let mut acc = CyclotomicValue::zero(p);
    let mut idx = vec![0usize; scene.n()];
    if pieces.iter().any(|v| v.is_empty()) {
        return Ok(acc);
    }
    loop {
        let level = idx.iter().enumerate().map(|(i, &j)| pieces[i][j].1).max().unwrap_or(k);
        // refine every coordinate to the common level
        let mut sub = vec![ResidueCube::full(0)];
        for (i, &j) in idx.iter().enumerate() {
            let (b, lv) = pieces[i][j];
            let one = ResidueCube::new(p, vec![b as i64], lv)?.subcubes(p, level);
            sub = sub
                .iter()
                .flat_map(|c| {
                    one.iter().map(move |o| {
                        let mut base: Vec<i64> = c.base().iter().map(|&x| x as i64).collect();
                        base.push(o.base()[0] as i64);
                        base
                    })
                })
                .map(|base| ResidueCube::new(p, base, level).unwrap())
                .collect();
        }
        for c in &sub {
            let need = oracle_level(p, scene, c, parts);
            acc = acc.add(&brute_inverse(ctx, scene, c, parts, need.max(level))?);
        }
        // next multi-index
        let mut pos = scene.n();
        loop {
            if pos == 0 {
                return Ok(acc);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < pieces[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Smallest Riemann-sum level that is exact on a cube avoiding the divisor.
pub fn oracle_level(p: u64, scene: &MonomialScene, cube: &ResidueCube, parts: &[PAdicScalar]) -> u32 {
    let total: Rational = parts.iter().map(|x| x.value().clone()).sum();
    let m = crate::rational::valuation(&total, p).map_or(i64::MIN / 4, |v| -v);
    let mut vmax = 0i64;
    let mut shift = 0i64;
    for i in 0..scene.n() {
        let b = cube.base()[i];
        if scene.on_divisor(i) && b != 0 {
            let v = crate::rational::int_valuation(&BigInt::from(b), p);
            vmax = vmax.max(v);
            shift += scene.l()[i] as i64 * v;
        }
    }
    ((m + shift + vmax).max(0) as u32).max(cube.level())
}
