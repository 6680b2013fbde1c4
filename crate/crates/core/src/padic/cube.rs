use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// `{ y in Z_p^n : y = base mod p^level }`; level 0 is all of `Z_p^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResidueCube {
    base: Vec<u64>,
    level: u32,
}

impl ResidueCube {
    /// Reduces `base` modulo `p^level`.
    pub fn new(p: u64, base: Vec<i64>, level: u32) -> Result<Self> {
        let m = p
            .checked_pow(level)
            .ok_or_else(|| Error::InvalidArgument(format!("cube level {level} too large")))?;
        let base = base.into_iter().map(|b| b.rem_euclid(m as i64) as u64).collect();
        Ok(Self { base, level })
    }

    pub fn full(n: usize) -> Self {
        Self { base: vec![0; n], level: 0 }
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn base(&self) -> &[u64] {
        &self.base
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `p^(-n level)`.
    pub fn volume(&self, p: u64) -> Rational {
        rational::pow_p(p, -((self.dim() as i64) * self.level as i64))
    }

    /// Whether `y` (residues mod some `p^k`, `k >= level`) lies in the cube.
    pub fn contains(&self, p: u64, y: &[u64]) -> bool {
        let m = p.pow(self.level);
        y.len() == self.dim() && y.iter().zip(&self.base).all(|(a, b)| a % m == *b)
    }

    /// Whether coordinate `i` of the cube contains `0`.
    pub fn slice_contains_zero(&self, i: usize) -> bool {
        self.base[i] == 0
    }

    /// The `p^n` subcubes one level finer.
    pub fn children(&self, p: u64) -> Vec<ResidueCube> {
        self.subcubes(p, self.level + 1)
    }

    /// All subcubes at `level >= self.level`, in lexicographic order of the added digits.
    pub fn subcubes(&self, p: u64, level: u32) -> Vec<ResidueCube> {
        assert!(level >= self.level);
        let step = p.pow(self.level);
        let per = p.pow(level - self.level);
        let n = self.dim();
        let total = per.pow(n as u32);
        (0..total)
            .map(|mut idx| {
                let mut base = self.base.clone();
                for b in base.iter_mut().rev() {
                    *b += (idx % per) * step;
                    idx /= per;
                }
                ResidueCube { base, level }
            })
            .collect()
    }

    /// Validates the dimension against a scene.
    pub fn check_dim(&self, n: usize) -> Result<()> {
        if self.dim() != n {
            Err(Error::DimensionMismatch { expected: n, got: self.dim() })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn reduces_base_and_volume() {
        let c = ResidueCube::new(5, vec![-3, 27], 1).unwrap();
        assert_eq!(c.base(), &[2, 2]);
        assert_eq!(c.volume(5), ratio(1, 25));
        assert_eq!(ResidueCube::full(3).volume(7), ratio(1, 1));
    }

    #[test]
    fn subcubes_partition() {
        let c = ResidueCube::new(3, vec![1, 0], 1).unwrap();
        let kids = c.subcubes(3, 2);
        assert_eq!(kids.len(), 9);
        assert!(kids.iter().all(|k| c.contains(3, k.base())));
        let mut bases: Vec<_> = kids.iter().map(|k| k.base().to_vec()).collect();
        bases.dedup();
        assert_eq!(bases.len(), 9);
    }
}
