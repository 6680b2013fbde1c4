use std::collections::HashMap;

use num_traits::{One, Zero};

use super::scene::MonomialScene;
use super::weight::{coord_weight, weight_cube_integral};
use crate::error::Result;
use crate::padic::{
    inv_mod, pow_mod, residue_valuation, CyclotomicValue, PAdicScalar, PrimeContext, ResidueCube, Valuation,
};
use crate::rational::{pow_p, Rational};

/// How coordinate `i` (with `l_i > 0`) meets the cube.
#[derive(Debug, Clone, Copy)]
enum Slice {
    /// `v(y_i) = v` and `y_i / p^v = u0 mod p^kappa`.
    Fixed { v: u32, u0: u64, kappa: u32 },
    /// `y_i in p^k Z_p`: every valuation `>= k` occurs with an arbitrary unit part.
    Free { k: u32 },
}

/// `v_p(l) + 2 + [p = 2]`: a free coordinate with phase conductor at least this
/// contributes exactly zero.
///
/// Substituting `u -> u (1 + p^s t)` with `s = M - v_p(l) - 1` makes the phase
/// linear and nontrivial in `t` while the higher binomial terms stay integral.
pub(crate) fn vanishing_threshold(p: u64, l: u32) -> u32 {
    let mut v = 0;
    let mut x = l;
    while x.is_multiple_of(p as u32) {
        x /= p as u32;
        v += 1;
    }
    v + 2 + u32::from(p == 2)
}

/// `G(cube, xi) = int_cube psi(xi prod y_i^(-l_i)) prod |y_i|^(r_i) dy`.
///
/// The cube is split into valuation strata `y_i = p^(v_i) u_i`. With
/// `M = -v(xi) + sum l_i v_i`, strata with `M <= 0` have trivial phase and
/// contribute their volume; strata with `M >= 1` are unit character sums modulo
/// `p^M`; strata where a free coordinate has `M` past its vanishing threshold are
/// exactly zero, which leaves finitely many strata.
pub fn inverse_ft(
    ctx: &PrimeContext,
    scene: &MonomialScene,
    cube: &ResidueCube,
    xi: &PAdicScalar,
) -> Result<CyclotomicValue> {
    let p = ctx.p();
    cube.check_dim(scene.n())?;
    let vxi = match xi.valuation() {
        Valuation::Infinity => {
            return Ok(CyclotomicValue::from_rational(p, weight_cube_integral(ctx, cube, scene.r())?));
        }
        Valuation::Finite(v) => v,
    };
    let m = -vxi;
    if m > 0 {
        ctx.check_level(m as u32)?;
    }
    let k = cube.level();

    let mut factor = Rational::one();
    let mut slices = Vec::new();
    for i in 0..scene.n() {
        let (b, l, r) = (cube.base()[i], scene.l()[i], scene.r()[i]);
        if l == 0 {
            factor *= coord_weight(p, b, k, r, i)?;
        } else if b == 0 {
            slices.push((i, Slice::Free { k }));
        } else {
            let v = residue_valuation(b, p, k);
            let kappa = k - v;
            slices.push((i, Slice::Fixed { v, u0: (b / p.pow(v)) % p.pow(kappa), kappa }));
        }
    }

    let threshold = slices
        .iter()
        .filter(|(_, s)| matches!(s, Slice::Free { .. }))
        .map(|(i, _)| vanishing_threshold(p, scene.l()[*i]) as i64)
        .min();

    let mut total = CyclotomicValue::zero(p);
    let mut vs = vec![0u32; slices.len()];
    let mut cache = HashMap::new();
    enumerate(&slices, scene, m, threshold, 0, 0, &mut vs, &mut |vs, shift| {
        let c = stratum(ctx, scene, &slices, vs, m + shift, xi, &mut cache)?;
        total = total.add(&c);
        Ok(())
    })?;
    Ok(total.scale(&factor))
}

/// Visits every valuation vector whose stratum can be nonzero.
#[allow(clippy::too_many_arguments)]
fn enumerate(
    slices: &[(usize, Slice)],
    scene: &MonomialScene,
    m: i64,
    threshold: Option<i64>,
    pos: usize,
    shift: i64,
    vs: &mut Vec<u32>,
    visit: &mut dyn FnMut(&[u32], i64) -> Result<()>,
) -> Result<()> {
    if threshold.is_some_and(|t| m + shift >= t) {
        return Ok(());
    }
    if pos == slices.len() {
        return visit(vs, shift);
    }
    let (i, slice) = slices[pos];
    let l = scene.l()[i] as i64;
    match slice {
        Slice::Fixed { v, .. } => {
            vs[pos] = v;
            enumerate(slices, scene, m, threshold, pos + 1, shift + l * v as i64, vs, visit)
        }
        Slice::Free { k } => {
            let t = threshold.expect("free slice implies a threshold");
            let mut v = k;
            while m + shift + l * (v as i64) < t {
                vs[pos] = v;
                enumerate(slices, scene, m, threshold, pos + 1, shift + l * v as i64, vs, visit)?;
                v += 1;
            }
            Ok(())
        }
    }
}

type Histogram = Vec<u128>;

/// Contribution of the stratum `v`, with phase conductor `p^cond`.
fn stratum(
    ctx: &PrimeContext,
    scene: &MonomialScene,
    slices: &[(usize, Slice)],
    vs: &[u32],
    cond: i64,
    xi: &PAdicScalar,
    cache: &mut HashMap<(usize, u32), (Histogram, u32)>,
) -> Result<CyclotomicValue> {
    let p = ctx.p();
    // p^(-v_i (1 + r_i)) from dy_i = p^(-v_i) du_i and |y_i|^(r_i)
    let mut scale = Rational::one();
    for ((i, _), &v) in slices.iter().zip(vs) {
        scale *= pow_p(p, -(v as i64) * (1 + scene.r()[*i]));
    }
    if cond <= 0 {
        for (_, s) in slices {
            scale *= match *s {
                Slice::Fixed { kappa, .. } => pow_p(p, -(kappa as i64)),
                Slice::Free { .. } => Rational::one() - pow_p(p, -1),
            };
        }
        return Ok(CyclotomicValue::from_rational(p, scale));
    }
    let big_m = cond as u32;
    ctx.check_level(big_m)?;
    let modulus = p.pow(big_m);

    // product over coordinates of the distribution of u_i^(-l_i) mod p^M
    let mut acc: Histogram = vec![0; modulus as usize];
    acc[1 % modulus as usize] = 1;
    for (pos, (i, s)) in slices.iter().enumerate() {
        let (hist, depth) = cache
            .entry((pos, big_m))
            .or_insert_with(|| unit_histogram(p, *s, scene.l()[*i], big_m))
            .clone();
        scale *= pow_p(p, -(depth as i64));
        let mut next = vec![0u128; modulus as usize];
        for (a, &ca) in acc.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (b, &cb) in hist.iter().enumerate() {
                if cb != 0 {
                    next[(a as u128 * b as u128 % modulus as u128) as usize] += ca * cb;
                }
            }
        }
        acc = next;
    }

    // xi p^(-sum l v) = p^(-M) * eps with eps a unit
    let shift: i64 = slices.iter().zip(vs).map(|((i, _), &v)| scene.l()[*i] as i64 * v as i64).sum();
    let c = PAdicScalar::with_prime(p, xi.value() * pow_p(p, -shift))?;
    let eps = c.scaled_residue(big_m);
    let mut dense = vec![Rational::zero(); modulus as usize];
    for (x, &cnt) in acc.iter().enumerate() {
        if cnt > 0 {
            let e = (eps as u128 * x as u128 % modulus as u128) as usize;
            dense[e] += Rational::from_integer(cnt.into());
        }
    }
    Ok(CyclotomicValue::from_dense(p, big_m, dense).scale(&scale))
}

/// Counts of `u^(-l) mod p^M` over the unit residues `u mod p^depth` of the slice,
/// `depth = max(M, kappa)`; each residue has measure `p^(-depth)`.
fn unit_histogram(p: u64, slice: Slice, l: u32, big_m: u32) -> (Histogram, u32) {
    let (u0, kappa) = match slice {
        Slice::Fixed { u0, kappa, .. } => (u0, kappa),
        Slice::Free { .. } => (0, 0),
    };
    let depth = big_m.max(kappa);
    let modulus = p.pow(big_m);
    let step = p.pow(kappa);
    let mut hist = vec![0u128; modulus as usize];
    for t in 0..p.pow(depth - kappa) {
        let u = u0 + t * step;
        if u % p == 0 {
            continue;
        }
        let x = pow_mod(inv_mod(u % modulus, modulus), l as u64, modulus);
        hist[x as usize] += 1;
    }
    (hist, depth)
}
