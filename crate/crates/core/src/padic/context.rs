use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::ExecMode;

/// The prime, the level cap for character conductors, and the execution mode.
///
/// The additive character is fixed to `psi(x) = exp(2 pi i {x}_p)` where `{x}_p`
/// is the `p`-adic fractional part; twisted characters `psi_t(x) = psi(t x)` are
/// obtained by scaling arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeContext {
    p: u64,
    max_level: u32,
    #[serde(default)]
    exec: ExecMode,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeContext {
    pub fn new(p: u64, max_level: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if max_level == 0 {
            return Err(Error::InvalidArgument("max_level must be at least 1".into()));
        }
        // p^(2 max_level) must fit in u64 so that products of residues fit in u128
        // after one reduction.
        if (p as f64).powi(max_level as i32) >= 2f64.powi(62) {
            return Err(Error::InvalidArgument(format!(
                "p^max_level = {p}^{max_level} does not fit the residue arithmetic"
            )));
        }
        Ok(Self { p, max_level, exec: ExecMode::default() })
    }

    pub fn with_exec(mut self, exec: ExecMode) -> Self {
        self.exec = exec;
        self
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn max_level(&self) -> u32 {
        self.max_level
    }

    pub fn exec(&self) -> ExecMode {
        self.exec
    }

    pub fn check_level(&self, level: u32) -> Result<()> {
        if level > self.max_level {
            Err(Error::LevelExceeded { level, max_level: self.max_level })
        } else {
            Ok(())
        }
    }

    /// `p^k` for `k <= max_level`.
    pub fn modulus(&self, k: u32) -> u64 {
        self.p.pow(k)
    }
}
