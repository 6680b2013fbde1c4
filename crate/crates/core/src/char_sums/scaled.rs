use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::inverse::inverse_ft;
use super::scene::MonomialScene;
use crate::error::{Error, Result};
use crate::padic::{CyclotomicValue, PAdicScalar, PrimeContext, ResidueCube, Valuation};
use crate::rational::pow_p;

/// `G(alpha . cube, xi prod alpha_i^(l_i))`: the pairing transported by the torus
/// action `y -> alpha y`.
///
/// Substituting `y = alpha z` gives the identity
/// `scaled_eval = prod |alpha_i|^(1 + r_i) * G(cube, xi)`.
/// The `alpha_i` must be `p`-integral so that `alpha . cube` stays in `Z_p^n`; when
/// their valuations differ the image is a box, evaluated as a union of cubes.
pub fn scaled_eval(
    ctx: &PrimeContext,
    scene: &MonomialScene,
    alpha: &[PAdicScalar],
    cube: &ResidueCube,
    xi: &PAdicScalar,
) -> Result<CyclotomicValue> {
    let p = ctx.p();
    cube.check_dim(scene.n())?;
    if alpha.len() != scene.n() {
        return Err(Error::DimensionMismatch { expected: scene.n(), got: alpha.len() });
    }
    let mut shifts = Vec::with_capacity(alpha.len());
    let mut units = Vec::with_capacity(alpha.len());
    for (i, a) in alpha.iter().enumerate() {
        match a.valuation() {
            Valuation::Infinity => {
                return Err(Error::InvalidArgument(format!("alpha_{i} must be nonzero")));
            }
            Valuation::Finite(v) if v < 0 => {
                return Err(Error::InvalidArgument(format!("alpha_{i} = {a} must be {p}-integral")));
            }
            Valuation::Finite(v) => {
                shifts.push(v as u32);
                // integral elements of Z[1/p] are integers
                units.push(a.value().to_integer() / BigInt::from(p).pow(v as u32));
            }
        }
    }
    let top = cube.level() + shifts.iter().copied().max().unwrap_or(0);
    ctx.check_level(top)?;

    let mut freq = xi.value().clone();
    for (a, &l) in alpha.iter().zip(scene.l()) {
        freq *= num_traits::pow(a.value().clone(), l as usize);
    }
    let freq = PAdicScalar::new(ctx, freq)?;

    // coordinate i of alpha . cube is p^(a_i) w_i b_i mod p^(k + a_i)
    let mut acc = CyclotomicValue::zero(p);
    let mut boxes = vec![Vec::<i64>::new()];
    for i in 0..scene.n() {
        let lv = cube.level() + shifts[i];
        let modulus = BigInt::from(p).pow(lv);
        let b = (BigInt::from(p).pow(shifts[i]) * &units[i] * BigInt::from(cube.base()[i])).mod_floor(&modulus);
        let slice = ResidueCube::new(p, vec![b.to_i64().expect("residue fits")], lv)?;
        let refined: Vec<i64> = slice.subcubes(p, top).iter().map(|c| c.base()[0] as i64).collect();
        boxes = boxes
            .into_iter()
            .flat_map(|prefix| {
                refined.iter().map(move |&r| {
                    let mut v = prefix.clone();
                    v.push(r);
                    v
                })
            })
            .collect();
    }
    for base in boxes {
        let sub = ResidueCube::new(p, base, top)?;
        acc = acc.add(&inverse_ft(ctx, scene, &sub, &freq)?);
    }
    Ok(acc)
}

/// `prod |alpha_i|^(1 + r_i)`, the factor relating [`scaled_eval`] to the
/// untransported pairing.
pub fn homogeneity_factor(scene: &MonomialScene, alpha: &[PAdicScalar]) -> crate::rational::Rational {
    let mut f = crate::rational::Rational::from_integer(1.into());
    for (a, &r) in alpha.iter().zip(scene.r()) {
        let v = a.valuation().finite().expect("nonzero alpha");
        f *= pow_p(a.p(), -v * (1 + r));
    }
    f
}
