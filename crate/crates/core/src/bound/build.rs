use num_traits::One;

use super::chart::ResolutionChart;
use crate::error::{Error, Result};
use crate::geometry::{
    conormal_union, pushforward_coordinate, symplectic_swap, AmbientSpec, Block, ConicSetDescriptor, Projection,
    Stratum, Subspace, WRule,
};
use crate::rational::Rational;

/// Strata of `X x W` making up the chart-local piece of the critical source:
/// the zero section, every divisor stratum over `0`, and over strata touching a
/// pole component the line of the pole direction.
fn chart_strata(chart: &ResolutionChart, d: usize) -> Result<Vec<Stratum>> {
    let pole_line = if chart.dprime_flags.iter().any(|&f| f) {
        let dir = match (&chart.pole_direction, d) {
            (Some(v), _) if v.len() == d => v.clone(),
            (Some(v), _) => {
                return Err(Error::MalformedStratum(format!(
                    "chart {}: pole direction has length {}, expected {d}",
                    chart.chart_id,
                    v.len()
                )))
            }
            (None, 1) => vec![Rational::one()],
            (None, _) => {
                return Err(Error::MalformedStratum(format!(
                    "chart {}: a pole direction is required when dim W > 1",
                    chart.chart_id
                )))
            }
        };
        Some(WRule::from_subspace(Subspace::span(d, vec![dir])))
    } else {
        None
    };

    let comps = chart.divisor_components();
    let mut strata = vec![Stratum::new([], WRule::ZeroSection)];
    for mask in 1u64..1 << comps.len() {
        let s: Vec<usize> = (0..comps.len()).filter(|b| mask >> b & 1 == 1).map(|b| comps[b]).collect();
        strata.push(Stratum::new(s.iter().copied(), WRule::ZeroSection));
        if let Some(rule) = &pole_line {
            if s.iter().any(|&i| chart.dprime_flags[i]) {
                strata.push(Stratum::new(s, rule.clone()));
            }
        }
    }
    Ok(strata)
}

/// The explicit wave-front bound `L` in `T*(Y x W*)`.
///
/// Per chart: conormals of the critical strata in `T*(X x W)`, swapped into
/// `T*(X x W*)` and pushed to `Y` along the coordinate projection
/// `y_coords`. The result is the deduplicated union over charts, always
/// containing the zero section. Consumes no prime.
pub fn build_l(charts: &[ResolutionChart], d: usize, q: usize) -> Result<ConicSetDescriptor> {
    let target = AmbientSpec::new(q, d, Block::WStar);
    let mut comps = ConicSetDescriptor::zero_section(target).components;
    for chart in charts {
        chart.validate()?;
        if chart.y_coords.len() != q {
            return Err(Error::UnsupportedMap(format!(
                "chart {} maps to Y through {} coordinates, expected {q}",
                chart.chart_id,
                chart.y_coords.len()
            )));
        }
        let crit = conormal_union(AmbientSpec::new(chart.n, d, Block::W), &chart_strata(chart, d)?)?;
        let swapped = symplectic_swap(&crit);
        let pushed = pushforward_coordinate(&swapped, &Projection::coordinate(chart.n, d, &chart.y_coords))?;
        comps.extend(pushed.components);
    }
    Ok(ConicSetDescriptor::new(target, comps))
}
