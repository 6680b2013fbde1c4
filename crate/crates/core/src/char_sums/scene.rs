use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::PAdicScalar;
use crate::poly::MultiPoly;

/// Inverse-monomial model: phase `xi * prod y_i^(-l_i)`, weight `prod |y_i|^(r_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialScene {
    l: Vec<u32>,
    r: Vec<i64>,
}

impl MonomialScene {
    pub fn new(l: Vec<u32>, r: Vec<i64>) -> Result<Self> {
        if l.len() != r.len() {
            return Err(Error::DimensionMismatch { expected: l.len(), got: r.len() });
        }
        if let Some(i) = (0..l.len()).find(|&i| l[i] == 0 && r[i] < 0) {
            return Err(Error::InvalidArgument(format!(
                "coordinate {i}: r must be non-negative where l vanishes (r = {})",
                r[i]
            )));
        }
        Ok(Self { l, r })
    }

    pub fn n(&self) -> usize {
        self.l.len()
    }

    pub fn l(&self) -> &[u32] {
        &self.l
    }

    pub fn r(&self) -> &[i64] {
        &self.r
    }

    /// Coordinates of the divisor `{prod_{l_i > 0 or r_i != 0} y_i = 0}`.
    pub fn on_divisor(&self, i: usize) -> bool {
        self.l[i] > 0 || self.r[i] != 0
    }
}

/// Direct phase `<xi, phi(y)> + t q(y)` against `prod |y_i|^(r_i) dy`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialScene {
    n: usize,
    phi: Vec<MultiPoly>,
    r: Vec<i64>,
    twist: Option<MultiPoly>,
}

impl PolynomialScene {
    pub fn new(n: usize, phi: Vec<MultiPoly>, r: Vec<i64>, twist: Option<MultiPoly>) -> Result<Self> {
        if r.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: r.len() });
        }
        for f in phi.iter().chain(twist.iter()) {
            if f.nvars() != n {
                return Err(Error::DimensionMismatch { expected: n, got: f.nvars() });
            }
        }
        if phi.is_empty() {
            return Err(Error::InvalidArgument("phi must have at least one component".into()));
        }
        if let Some(i) = r.iter().position(|&x| x < 0) {
            return Err(Error::InvalidArgument(format!("coordinate {i}: direct-phase weights need r >= 0")));
        }
        Ok(Self { n, phi, r, twist })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `dim W`.
    pub fn d(&self) -> usize {
        self.phi.len()
    }

    pub fn phi(&self) -> &[MultiPoly] {
        &self.phi
    }

    pub fn r(&self) -> &[i64] {
        &self.r
    }

    pub fn twist(&self) -> Option<&MultiPoly> {
        self.twist.as_ref()
    }

    pub(crate) fn check_integral(&self, p: u64) -> Result<()> {
        for f in self.phi.iter().chain(self.twist.iter()) {
            if !f.is_p_integral(p) {
                return Err(Error::InvalidArgument(format!(
                    "polynomial {f} has a coefficient that is not {p}-integral"
                )));
            }
        }
        Ok(())
    }
}

/// A point `xi` of `W*` in dual coordinates, with an optional twist scale `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrequencyPoint {
    pub xi: Vec<PAdicScalar>,
    #[serde(default)]
    pub twist_scale: Option<PAdicScalar>,
}

impl FrequencyPoint {
    pub fn new(xi: Vec<PAdicScalar>) -> Self {
        Self { xi, twist_scale: None }
    }

    pub fn scalar(xi: PAdicScalar) -> Self {
        Self::new(vec![xi])
    }

    pub fn with_twist(mut self, t: PAdicScalar) -> Self {
        self.twist_scale = Some(t);
        self
    }
}

/// Either phase model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scene {
    Direct(PolynomialScene),
    Inverse(MonomialScene),
}

impl Scene {
    pub fn n(&self) -> usize {
        match self {
            Scene::Direct(s) => s.n(),
            Scene::Inverse(s) => s.n(),
        }
    }

    pub fn d(&self) -> usize {
        match self {
            Scene::Direct(s) => s.d(),
            Scene::Inverse(_) => 1,
        }
    }
}
