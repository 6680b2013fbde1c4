use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, Rational};

/// An exact element of `Q(zeta_{p^m})`, `zeta = exp(2 pi i / p^m)`.
///
/// Stored sparsely as `sum_j c_j zeta^j` in canonical form: exponents lie in
/// `0 .. (p-1) p^(m-1)` (the top block is eliminated with
/// `sum_k zeta^(j + k p^(m-1)) = 0`), and the level is the smallest `m` in which
/// the value lives. Canonical forms are unique, so `==` is exact equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicValue {
    p: u64,
    level: u32,
    coeffs: BTreeMap<u64, Rational>,
}

fn top_block_start(p: u64, level: u32) -> u64 {
    if level == 0 {
        1
    } else {
        (p - 1) * p.pow(level - 1)
    }
}

impl CyclotomicValue {
    pub fn zero(p: u64) -> Self {
        Self { p, level: 0, coeffs: BTreeMap::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::from_rational(p, Rational::one())
    }

    pub fn from_rational(p: u64, q: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !q.is_zero() {
            coeffs.insert(0, q);
        }
        Self { p, level: 0, coeffs }
    }

    /// `zeta_{p^level}^j`.
    pub fn root(p: u64, level: u32, j: u64) -> Self {
        let n = p.pow(level);
        Self::from_dense(p, level, {
            let mut v = vec![Rational::zero(); n as usize];
            v[(j % n) as usize] = Rational::one();
            v
        })
    }

    /// Canonicalizes `sum_j dense[j] zeta^j` with `dense.len() == p^level`.
    pub fn from_dense(p: u64, level: u32, mut dense: Vec<Rational>) -> Self {
        let n = p.pow(level) as usize;
        assert_eq!(dense.len(), n, "dense coefficient vector has wrong length");
        if level > 0 {
            let block = p.pow(level - 1) as usize;
            let top = top_block_start(p, level) as usize;
            for j in top..n {
                if dense[j].is_zero() {
                    continue;
                }
                let c = std::mem::take(&mut dense[j]);
                let j0 = j - top;
                for k in 0..(p as usize - 1) {
                    dense[j0 + k * block] -= &c;
                }
            }
        }
        let coeffs = dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j as u64, c))
            .collect();
        let mut out = Self { p, level, coeffs };
        out.minimize_level();
        out
    }

    fn minimize_level(&mut self) {
        while self.level > 0 && self.coeffs.keys().all(|j| j % self.p == 0) {
            let p = self.p;
            self.coeffs = std::mem::take(&mut self.coeffs).into_iter().map(|(j, c)| (j / p, c)).collect();
            self.level -= 1;
        }
    }

    fn dense_at(&self, level: u32) -> Vec<Rational> {
        debug_assert!(level >= self.level);
        let shift = self.p.pow(level - self.level);
        let mut v = vec![Rational::zero(); self.p.pow(level) as usize];
        for (j, c) in &self.coeffs {
            v[(j * shift) as usize] += c;
        }
        v
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The smallest `m` with the value in `Q(zeta_{p^m})`.
    pub fn level(&self) -> u32 {
        self.level
    }

    /// Canonical coefficients `(j, c_j)` in increasing `j`.
    pub fn coeffs(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.coeffs.iter().map(|(j, c)| (*j, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The value as a rational, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.level {
            0 => Some(self.coeffs.get(&0).cloned().unwrap_or_else(Rational::zero)),
            _ => None,
        }
    }

    /// Recomputes the canonical form; a no-op on values built through this API.
    pub fn reduce(&self) -> Self {
        Self::from_dense(self.p, self.level, self.dense_at(self.level))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "mixed primes");
        let level = self.level.max(other.level);
        let mut a = self.dense_at(level);
        let shift = self.p.pow(level - other.level);
        for (j, c) in &other.coeffs {
            a[(j * shift) as usize] += c;
        }
        Self::from_dense(self.p, level, a)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero(self.p);
        }
        Self {
            p: self.p,
            level: self.level,
            coeffs: self.coeffs.iter().map(|(j, c)| (*j, c * q)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "mixed primes");
        let level = self.level.max(other.level);
        let n = self.p.pow(level);
        let (sa, sb) = (self.p.pow(level - self.level), self.p.pow(level - other.level));
        let mut v = vec![Rational::zero(); n as usize];
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                v[((i * sa + j * sb) % n) as usize] += a * b;
            }
        }
        Self::from_dense(self.p, level, v)
    }

    /// Complex conjugation `zeta -> zeta^(-1)`.
    pub fn conj(&self) -> Self {
        let n = self.p.pow(self.level);
        let mut v = vec![Rational::zero(); n as usize];
        for (j, c) in &self.coeffs {
            v[((n - j) % n) as usize] += c;
        }
        Self::from_dense(self.p, self.level, v)
    }

    /// `|z|^2 = z * conj(z)`, which always lies in the real subfield.
    pub fn norm_sq(&self) -> Self {
        self.mul(&self.conj())
    }

    /// Double-precision rendering, for reporting only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.p.pow(self.level) as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in &self.coeffs {
            let x = c.to_f64().unwrap_or(f64::NAN);
            let t = std::f64::consts::TAU * (*j as f64) / n;
            re += x * t.cos();
            im += x * t.sin();
        }
        (re, im)
    }
}

impl fmt::Display for CyclotomicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let z = format!("z{}", self.p.pow(self.level));
        for (i, (j, c)) in self.coeffs.iter().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            match (i, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            match *j {
                0 => write!(f, "{mag}")?,
                1 if mag.is_one() => write!(f, "{z}")?,
                1 => write!(f, "{mag}*{z}")?,
                _ if mag.is_one() => write!(f, "{z}^{j}")?,
                _ => write!(f, "{mag}*{z}^{j}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CycloRepr {
    p: u64,
    level: u32,
    terms: Vec<(u64, String)>,
}

impl Serialize for CyclotomicValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycloRepr {
            p: self.p,
            level: self.level,
            terms: self.coeffs.iter().map(|(j, c)| (*j, rational::format(c))).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = CycloRepr::deserialize(d)?;
        if r.p < 2 || r.level > 40 {
            return Err(D::Error::custom("bad cyclotomic header"));
        }
        let n = r.p.checked_pow(r.level).ok_or_else(|| D::Error::custom("level too large"))?;
        let mut v = vec![Rational::zero(); n as usize];
        for (j, c) in r.terms {
            if j >= n {
                return Err(D::Error::custom(format!("exponent {j} out of range")));
            }
            v[j as usize] += rational::parse(&c).map_err(D::Error::custom)?;
        }
        Ok(Self::from_dense(r.p, r.level, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn full_root_sum_vanishes() {
        for p in [2u64, 3, 5, 7] {
            let mut acc = CyclotomicValue::zero(p);
            for j in 0..p {
                acc = acc.add(&CyclotomicValue::root(p, 1, j));
            }
            assert!(acc.is_zero(), "p = {p}");
        }
    }

    #[test]
    fn level_unification() {
        assert_eq!(CyclotomicValue::root(3, 2, 3), CyclotomicValue::root(3, 1, 1));
        assert_eq!(CyclotomicValue::root(5, 3, 0), CyclotomicValue::one(5));
    }

    #[test]
    fn additive_identity() {
        let a = CyclotomicValue::root(5, 2, 7).scale(&ratio(2, 3));
        assert_eq!(a.add(&CyclotomicValue::zero(5)), a);
    }

    #[test]
    fn gauss_sum_norm() {
        // sum_y zeta_5^(y^2) has |.|^2 = 5
        let mut g = CyclotomicValue::zero(5);
        for y in 0..5u64 {
            g = g.add(&CyclotomicValue::root(5, 1, y * y));
        }
        assert_eq!(g.norm_sq().as_rational(), Some(int(5)));
        let (re, im) = g.to_complex();
        assert!((re * re + im * im - 5.0).abs() < 1e-9);
    }

    #[test]
    fn unit_root_sum_is_minus_one() {
        let s = CyclotomicValue::root(3, 1, 1).add(&CyclotomicValue::root(3, 1, 2));
        assert_eq!(s.as_rational(), Some(int(-1)));
    }

    #[test]
    fn mul_and_conj() {
        let z = CyclotomicValue::root(2, 3, 3);
        assert!(z.mul(&z.conj()).is_one());
        assert_eq!(z.mul(&z), CyclotomicValue::root(2, 2, 3));
        assert_eq!(CyclotomicValue::root(2, 1, 1).as_rational(), Some(int(-1)));
    }

    #[test]
    fn serde_roundtrip() {
        let v = CyclotomicValue::root(7, 2, 10).add(&CyclotomicValue::from_rational(7, ratio(-1, 2)));
        let s = serde_json::to_string(&v).unwrap();
        let back: CyclotomicValue = serde_json::from_str(&s).unwrap();
        assert_eq!(v, back);
        assert_eq!(v.reduce(), v);
    }

    #[test]
    fn display() {
        let v = CyclotomicValue::one(3).add(&CyclotomicValue::root(3, 1, 1).scale(&int(2)));
        assert_eq!(v.scale(&ratio(1, 3)).to_string(), "1/3 + 2/3*z3");
    }
}
