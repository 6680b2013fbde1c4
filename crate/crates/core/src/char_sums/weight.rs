use num_traits::One;

use crate::error::{Error, Result};
use crate::padic::{residue_valuation, PrimeContext, ResidueCube};
use crate::rational::{pow_p, Rational};

/// `int_{p^L Z_p} |y|^r dy = p^(-L(r+1)) (1 - 1/p) / (1 - p^(-(r+1)))`, for `r > -1`.
pub(crate) fn zero_class_weight(p: u64, level: u32, r: i64) -> Rational {
    let e = r + 1;
    let head = pow_p(p, -(level as i64) * e);
    let one = Rational::one();
    head * (&one - pow_p(p, -1)) / (&one - pow_p(p, -e))
}

/// `int |y|^r dy` over `{y = b mod p^L}` in one coordinate.
pub(crate) fn coord_weight(p: u64, base: u64, level: u32, r: i64, coord: usize) -> Result<Rational> {
    if base == 0 {
        if r <= -1 {
            return Err(Error::Divergent { coord, exponent: r });
        }
        Ok(zero_class_weight(p, level, r))
    } else {
        let v = residue_valuation(base, p, level) as i64;
        Ok(pow_p(p, -(level as i64) - r * v))
    }
}

/// `int_cube prod |y_i|^(r_i) dy`, exactly.
pub fn weight_cube_integral(ctx: &PrimeContext, cube: &ResidueCube, r: &[i64]) -> Result<Rational> {
    cube.check_dim(r.len())?;
    let mut acc = Rational::one();
    for (i, (&b, &ri)) in cube.base().iter().zip(r).enumerate() {
        acc *= coord_weight(ctx.p(), b, cube.level(), ri, i)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn examples() {
        let c3 = PrimeContext::new(3, 4).unwrap();
        assert_eq!(weight_cube_integral(&c3, &ResidueCube::full(3), &[0, 0, 0]).unwrap(), int(1));
        assert_eq!(weight_cube_integral(&c3, &ResidueCube::full(1), &[1]).unwrap(), ratio(3, 4));
        let c5 = PrimeContext::new(5, 4).unwrap();
        let cube = ResidueCube::new(5, vec![2], 1).unwrap();
        assert_eq!(weight_cube_integral(&c5, &cube, &[1]).unwrap(), ratio(1, 5));
    }

    #[test]
    fn truncated_series_agrees() {
        // sum_{v < 12} p^-v (1 - 1/p) p^-rv approaches the closed form from below
        let p = 3u64;
        let mut s = Rational::from_integer(0.into());
        for v in 0..12 {
            s += pow_p(p, -v) * (int(1) - pow_p(p, -1)) * pow_p(p, -v);
        }
        let exact = zero_class_weight(p, 0, 1);
        let tail = zero_class_weight(p, 12, 1);
        assert_eq!(s + tail, exact);
    }

    #[test]
    fn divergence() {
        let c = PrimeContext::new(3, 4).unwrap();
        assert_eq!(
            weight_cube_integral(&c, &ResidueCube::full(1), &[-1]),
            Err(Error::Divergent { coord: 0, exponent: -1 })
        );
        let away = ResidueCube::new(3, vec![1], 1).unwrap();
        assert_eq!(weight_cube_integral(&c, &away, &[-5]).unwrap(), ratio(1, 3));
    }
}
