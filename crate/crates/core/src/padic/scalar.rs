use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::context::PrimeContext;
use super::cyclo::CyclotomicValue;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// `v_p(x)`, with a distinguished infinity for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
            (Valuation::Infinity, _) => Ordering::Greater,
            (_, Valuation::Infinity) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "+inf"),
        }
    }
}

/// An element of `Z[1/p]`, used as an exact representative of a point of `Q_p`.
///
/// Every sum evaluated by this crate depends only on residues modulo a finite
/// power of `p`, so dense representatives lose nothing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PAdicScalar {
    #[serde(with = "rational::serde_str")]
    value: Rational,
    p: u64,
}

impl PAdicScalar {
    pub fn new(ctx: &PrimeContext, value: Rational) -> Result<Self> {
        Self::with_prime(ctx.p(), value)
    }

    pub(crate) fn with_prime(p: u64, value: Rational) -> Result<Self> {
        let mut d = value.denom().clone();
        let pb = BigInt::from(p);
        while !d.is_one() {
            let (q, r) = d.div_rem(&pb);
            if !r.is_zero() {
                return Err(Error::NotPAdicRational { value: rational::format(&value), p });
            }
            d = q;
        }
        Ok(Self { value, p })
    }

    pub fn from_int(ctx: &PrimeContext, n: i64) -> Self {
        Self { value: rational::int(n), p: ctx.p() }
    }

    pub fn zero(ctx: &PrimeContext) -> Self {
        Self::from_int(ctx, 0)
    }

    /// `n / p^k`.
    pub fn from_parts(ctx: &PrimeContext, n: i64, k: u32) -> Self {
        Self { value: rational::int(n) * rational::pow_p(ctx.p(), -(k as i64)), p: ctx.p() }
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn valuation(&self) -> Valuation {
        match rational::valuation(&self.value, self.p) {
            Some(v) => Valuation::Finite(v),
            None => Valuation::Infinity,
        }
    }

    /// `|x| = p^(-v_p(x))`, and `0` for `x = 0`.
    pub fn abs_norm(&self) -> Rational {
        match self.valuation() {
            Valuation::Finite(v) => rational::pow_p(self.p, -v),
            Valuation::Infinity => Rational::zero(),
        }
    }

    /// The additive character value `psi(x)` as an exact root of unity.
    pub fn psi(&self, ctx: &PrimeContext) -> Result<CyclotomicValue> {
        let (level, j) = self.fractional_residue();
        ctx.check_level(level)?;
        Ok(CyclotomicValue::root(ctx.p(), level, j))
    }

    /// `(k, j)` with `{x}_p = j / p^k`, `0 <= j < p^k`; `(0, 0)` when `x` is integral.
    pub fn fractional_residue(&self) -> (u32, u64) {
        let k = match self.valuation() {
            Valuation::Finite(v) if v < 0 => (-v) as u32,
            _ => return (0, 0),
        };
        let modulus = BigInt::from(self.p).pow(k);
        let j = self.value.numer().mod_floor(&modulus);
        (k, j.to_u64().expect("residue fits in u64"))
    }

    /// The integer `x * p^k mod p^k` for a level `k` at least the conductor.
    pub(crate) fn scaled_residue(&self, k: u32) -> u64 {
        let modulus = BigInt::from(self.p).pow(k);
        let scaled = &self.value * Rational::from_integer(modulus.clone());
        debug_assert!(scaled.is_integer());
        scaled.to_integer().mod_floor(&modulus).to_u64().expect("residue fits in u64")
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self { value: &self.value * &other.value, p: self.p }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { value: &self.value + &other.value, p: self.p }
    }

    pub fn neg(&self) -> Self {
        Self { value: -self.value.clone(), p: self.p }
    }

    pub fn is_negative(&self) -> bool {
        self.value.is_negative()
    }
}

impl fmt::Display for PAdicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// `u^(-1) mod p^k`.
pub fn unit_inverse_mod(ctx: &PrimeContext, u: i128, k: u32) -> Result<u64> {
    let p = ctx.p();
    if u.rem_euclid(p as i128) == 0 {
        return Err(Error::NotAUnit { value: u.to_string(), p });
    }
    if k == 0 {
        return Ok(0);
    }
    let m = ctx.modulus(k);
    Ok(inv_mod(u.rem_euclid(m as i128) as u64, m))
}

/// Inverse of `a` modulo `m`; `a` must be coprime to `m`.
pub(crate) fn inv_mod(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "{a} is not invertible mod {m}");
    old_s.rem_euclid(m as i128) as u64
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// `v_p` of a residue `0 < y < p^k`, or `k` when `y == 0`.
pub(crate) fn residue_valuation(mut y: u64, p: u64, k: u32) -> u32 {
    if y == 0 {
        return k;
    }
    let mut v = 0;
    while y.is_multiple_of(p) {
        y /= p;
        v += 1;
    }
    v
}

/// Reduces a `p`-integral rational to a residue modulo `p^k`.
pub(crate) fn reduce_p_integral(q: &Rational, p: u64, k: u32) -> Result<u64> {
    if rational::valuation(q, p).is_some_and(|v| v < 0) {
        return Err(Error::InvalidArgument(format!(
            "coefficient {} is not {p}-integral",
            rational::format(q)
        )));
    }
    if k == 0 {
        return Ok(0);
    }
    let m = p.pow(k);
    let mb = BigInt::from(m);
    let num = q.numer().mod_floor(&mb).to_u64().unwrap();
    let den = q.denom().mod_floor(&mb).to_u64().unwrap();
    Ok(mul_mod(num, inv_mod(den, m), m))
}
