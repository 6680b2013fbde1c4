use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Monomial data of one resolution chart.
///
/// Coordinates `i` with `l_i > 0` or `r_i != 0` are the divisor components in
/// this chart; `dprime_flags[i]` marks those lying over the hyperplane at
/// infinity of `W` (where the map has a pole). `y_coords[j]` is the chart
/// coordinate mapped to the `j`-th coordinate of `Y`, so the map to `Y` is a
/// coordinate projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionChart {
    pub chart_id: String,
    pub n: usize,
    pub l: Vec<u32>,
    pub r: Vec<i64>,
    pub dprime_flags: Vec<bool>,
    pub glue: Option<String>,
    pub y_coords: Vec<usize>,
    /// Direction in `W` of the pole along the flagged components; may be
    /// omitted when `dim W = 1`.
    pub pole_direction: Option<Vec<Rational>>,
}

impl ResolutionChart {
    /// A chart with no map to `Y`, no glue note and no pole direction.
    pub fn new(chart_id: impl Into<String>, l: Vec<u32>, r: Vec<i64>, dprime_flags: Vec<bool>) -> Result<Self> {
        let chart = Self {
            chart_id: chart_id.into(),
            n: l.len(),
            l,
            r,
            dprime_flags,
            glue: None,
            y_coords: Vec::new(),
            pole_direction: None,
        };
        chart.validate()?;
        Ok(chart)
    }

    pub fn with_y_coords(mut self, y_coords: Vec<usize>) -> Result<Self> {
        self.y_coords = y_coords;
        self.validate()?;
        Ok(self)
    }

    pub fn with_pole_direction(mut self, dir: Vec<Rational>) -> Result<Self> {
        self.pole_direction = Some(dir);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::MalformedStratum(format!("chart {}: {msg}", self.chart_id)));
        if self.l.len() != self.n || self.r.len() != self.n || self.dprime_flags.len() != self.n {
            return bad(format!("l, r and dprime_flags must all have length n = {}", self.n));
        }
        if let Some(i) = (0..self.n).find(|&i| self.dprime_flags[i] && self.l[i] == 0) {
            return bad(format!("coordinate {i} is flagged as a pole component but l = 0"));
        }
        if let Some(&i) = self.y_coords.iter().find(|&&i| i >= self.n) {
            return bad(format!("y coordinate {i} out of range"));
        }
        let mut seen = self.y_coords.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != self.y_coords.len() {
            return bad("repeated y coordinate".into());
        }
        if let Some(dir) = &self.pole_direction {
            if dir.iter().all(Rational::is_zero) {
                return bad("pole direction is zero".into());
            }
        }
        Ok(())
    }

    /// Indices of the divisor components.
    pub fn divisor_components(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.l[i] > 0 || self.r[i] != 0).collect()
    }
}
