use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::resultant::binary_resultant;
use crate::error::{Error, Result};
use crate::geometry::nullspace;
use crate::poly::{uni_gcd_is_one, MultiPoly};
use crate::rational::{ratio, Rational};

pub const MAX_PROJECTIVE_DIM: usize = 3;
pub const MAX_CURVE_DEGREE: usize = 8;
pub const MAX_SAMPLE_BUDGET: usize = 4096;
const SAMPLED_TOLERANCE: f64 = 1e-9;

/// A one-parameter curve `s -> (param_0(s) : ... : param_d(s))` in projective `d`-space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveScene {
    param: Vec<MultiPoly>,
}

impl CurveScene {
    /// `param` are univariate polynomials in `s` with no common factor.
    pub fn new(param: Vec<MultiPoly>) -> Result<Self> {
        if param.len() < 2 || param.len() > MAX_PROJECTIVE_DIM + 1 {
            return Err(Error::InvalidArgument(format!(
                "curve needs between 2 and {} homogeneous coordinates, got {}",
                MAX_PROJECTIVE_DIM + 1,
                param.len()
            )));
        }
        if param.iter().any(|p| p.nvars() != 1) {
            return Err(Error::InvalidArgument("curve components must be univariate".into()));
        }
        if param.iter().all(MultiPoly::is_zero) {
            return Err(Error::DegenerateParametrization("all components vanish identically".into()));
        }
        if let Some(deg) = param.iter().map(MultiPoly::total_degree).find(|&d| d > MAX_CURVE_DEGREE) {
            return Err(Error::DegreeTooHigh { degree: deg, limit: MAX_CURVE_DEGREE });
        }
        if !uni_gcd_is_one(&param) {
            return Err(Error::InvalidArgument("curve components share a common factor".into()));
        }
        Ok(Self { param })
    }

    /// Projective dimension of the target.
    pub fn d(&self) -> usize {
        self.param.len() - 1
    }

    pub fn param(&self) -> &[MultiPoly] {
        &self.param
    }
}

/// A polynomial map `Q^source_dim -> Q^(d+1)` read in homogeneous coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMap {
    pub source_dim: usize,
    pub components: Vec<MultiPoly>,
    /// The source is empty (no pole components), so nothing is sampled.
    pub empty_source: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodTag {
    Exact,
    Sampled,
}

/// The hyperplanes failing transversality at one sampled source point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampledFiber {
    #[serde(with = "crate::rational::serde_vec")]
    pub source: Vec<Rational>,
    /// Basis of the linear space of such hyperplanes; empty when transversal.
    #[serde(with = "crate::rational::serde_vec_vec")]
    pub hyperplanes: Vec<Vec<Rational>>,
}

/// Non-transversal hyperplanes and the complementary smooth locus.
///
/// In exact mode a hyperplane `l` is non-transversal iff every listed
/// equation vanishes at `l`; an empty list means no hyperplane is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransversalityReport {
    pub method: MethodTag,
    pub d: usize,
    pub equations: Vec<MultiPoly>,
    pub samples: Vec<SampledFiber>,
}

impl TransversalityReport {
    /// Names of the dual coordinates, `l0 .. ld`.
    pub fn variable_names(&self) -> Vec<String> {
        (0..=self.d).map(|i| format!("l{i}")).collect()
    }

    pub fn equation_strings(&self) -> Vec<String> {
        let names = self.variable_names();
        self.equations.iter().map(|e| e.format_with(&names)).collect()
    }

    /// `ξ` is in the smooth locus: see [`smooth_locus_membership`].
    pub fn contains(&self, xi: &[Rational]) -> Result<bool> {
        smooth_locus_membership(self, xi)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "method": self.method,
            "variables": self.variable_names(),
            "equations": self.equation_strings(),
            "samples": self.samples,
        })
    }
}

/// Coefficient `c_k` of `s^k t^(D-k)` in `F = sum_i l_i param_i^h`, as a linear form in `l`.
fn pencil_coefficients(param: &[MultiPoly], deg: usize) -> Vec<MultiPoly> {
    let nl = param.len();
    (0..=deg)
        .map(|k| {
            param.iter().enumerate().fold(MultiPoly::zero(nl), |acc, (i, p)| {
                let c = p.terms().find(|(e, _)| e[0] as usize == k).map(|(_, c)| c.clone());
                match c {
                    Some(c) => acc.add(&MultiPoly::var(nl, i).scale(&c)),
                    None => acc,
                }
            })
        })
        .collect()
}

/// Exact non-transversality locus of a curve.
///
/// With `F(s, t) = sum_i l_i param_i^h(s, t)` homogenized to the common degree
/// `D`, a hyperplane fails transversality at a point iff `F` has a multiple
/// root there. For `D >= 2` this is `Res(dF/ds, dF/dt) = 0`; for `D = 1` it
/// means `F` vanishes identically; for `D = 0` the curve is a point `z` and the
/// locus is `<l, z> = 0`.
pub fn pcrit_exact(scene: &CurveScene) -> Result<TransversalityReport> {
    let param = scene.param();
    let nl = param.len();
    let deg = param.iter().map(MultiPoly::total_degree).max().unwrap_or(0);
    let c = pencil_coefficients(param, deg);
    let mut equations = match deg {
        0 => vec![c[0].clone()],
        1 => {
            let rows: Vec<Vec<Rational>> = c.iter().map(|f| linear_coeffs(f, nl)).collect();
            let (_, pivots) = crate::geometry::rref(rows, nl);
            if pivots.len() == nl {
                Vec::new()
            } else {
                c.clone()
            }
        }
        _ => {
            let ds: Vec<MultiPoly> = (0..deg).map(|j| c[j + 1].scale(&Rational::from_integer((j + 1).into()))).collect();
            let dt: Vec<MultiPoly> = (0..deg).map(|j| c[j].scale(&Rational::from_integer((deg - j).into()))).collect();
            let res = binary_resultant(&ds, &dt, nl);
            if res.is_zero() {
                return Err(Error::DegenerateParametrization(
                    "every hyperplane is tangent; the smooth locus is empty".into(),
                ));
            }
            if res.is_constant() {
                Vec::new()
            } else {
                vec![res]
            }
        }
    };
    for e in equations.iter_mut() {
        *e = e.primitive();
    }
    equations.retain(|e| !e.is_zero());
    Ok(TransversalityReport { method: MethodTag::Exact, d: nl - 1, equations, samples: Vec::new() })
}

fn linear_coeffs(f: &MultiPoly, nl: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); nl];
    for (e, c) in f.terms() {
        if let Some(i) = e.iter().position(|&k| k == 1) {
            v[i] = c.clone();
        }
    }
    v
}

/// Sampled non-transversality: at seeded random rational source points, the
/// hyperplanes containing the image point and the image of the differential.
pub fn pcrit_sampled(map: &PolyMap, budget: usize, seed: u64) -> Result<TransversalityReport> {
    if budget > MAX_SAMPLE_BUDGET {
        return Err(Error::BudgetExceeded { budget, limit: MAX_SAMPLE_BUDGET });
    }
    if map.components.len() < 2 {
        return Err(Error::InvalidArgument("need at least two homogeneous coordinates".into()));
    }
    if map.components.iter().any(|c| c.nvars() != map.source_dim) {
        return Err(Error::DimensionMismatch {
            expected: map.source_dim,
            got: map.components.iter().map(MultiPoly::nvars).find(|&n| n != map.source_dim).unwrap_or(0),
        });
    }
    let d = map.components.len() - 1;
    let mut samples = Vec::new();
    if !map.empty_source {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..budget {
            let x: Vec<Rational> =
                (0..map.source_dim).map(|_| ratio(rng.gen_range(-64..=64), rng.gen_range(1..=16))).collect();
            let mut rows = vec![map.components.iter().map(|c| c.eval(&x)).collect::<Vec<_>>()];
            if rows[0].iter().all(Rational::is_zero) {
                continue;
            }
            for j in 0..map.source_dim {
                rows.push(map.components.iter().map(|c| c.derivative(j).eval(&x)).collect());
            }
            samples.push(SampledFiber { source: x, hyperplanes: nullspace(&rows, d + 1) });
        }
    }
    Ok(TransversalityReport { method: MethodTag::Sampled, d, equations: Vec::new(), samples })
}

/// Whether `xi` lies in the smooth locus `U`.
///
/// Exact reports decide this exactly. Sampled reports use a floating-point
/// distance from the direction of `xi` to each sampled hyperplane space and
/// are a heuristic only.
pub fn smooth_locus_membership(report: &TransversalityReport, xi: &[Rational]) -> Result<bool> {
    if xi.len() != report.d + 1 {
        return Err(Error::DimensionMismatch { expected: report.d + 1, got: xi.len() });
    }
    if xi.iter().all(Rational::is_zero) {
        return Err(Error::ZeroFrequency);
    }
    Ok(match report.method {
        MethodTag::Exact => report.equations.is_empty() || report.equations.iter().any(|e| !e.eval(xi).is_zero()),
        MethodTag::Sampled => report.samples.iter().all(|s| distance_to_span(xi, &s.hyperplanes) > SAMPLED_TOLERANCE),
    })
}

/// Sine of the angle between `v` and a subspace, by Gram-Schmidt in `f64`.
fn distance_to_span(v: &[Rational], basis: &[Vec<Rational>]) -> f64 {
    let to_f = |x: &Rational| x.to_f64().unwrap_or(0.0);
    let v: Vec<f64> = v.iter().map(to_f).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut ortho: Vec<Vec<f64>> = Vec::new();
    for b in basis {
        let mut w: Vec<f64> = b.iter().map(to_f).collect();
        for o in &ortho {
            let dot: f64 = w.iter().zip(o).map(|(a, b)| a * b).sum();
            w.iter_mut().zip(o).for_each(|(a, b)| *a -= dot * b);
        }
        let n = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 {
            ortho.push(w.into_iter().map(|x| x / n).collect());
        }
    }
    let mut r = v.iter().map(|x| x / norm).collect::<Vec<_>>();
    for o in &ortho {
        let dot: f64 = r.iter().zip(o).map(|(a, b)| a * b).sum();
        r.iter_mut().zip(o).for_each(|(a, b)| *a -= dot * b);
    }
    r.iter().map(|x| x * x).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn s() -> MultiPoly {
        MultiPoly::var(1, 0)
    }

    fn k(c: i64) -> MultiPoly {
        MultiPoly::constant(1, int(c))
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn parabola_discriminant() {
        let rep = pcrit_exact(&CurveScene::new(vec![k(1), s(), s().pow(2)]).unwrap()).unwrap();
        assert_eq!(rep.equation_strings(), vec!["4*l0*l2 - l1^2"]);
        assert!(smooth_locus_membership(&rep, &ints(&[1, 0, 1])).unwrap());
        assert!(!smooth_locus_membership(&rep, &ints(&[0, 0, 1])).unwrap());
        assert_eq!(smooth_locus_membership(&rep, &ints(&[0, 0, 0])), Err(Error::ZeroFrequency));
    }

    #[test]
    fn point_and_line() {
        let rep = pcrit_exact(&CurveScene::new(vec![k(1), k(2), k(3)]).unwrap()).unwrap();
        assert_eq!(rep.equation_strings(), vec!["l0 + 2*l1 + 3*l2"]);
        // the identity of the projective line is transversal to every point
        let rep = pcrit_exact(&CurveScene::new(vec![k(1), s()]).unwrap()).unwrap();
        assert!(rep.equations.is_empty());
        assert!(smooth_locus_membership(&rep, &ints(&[0, 1])).unwrap());
        // a line in the plane: only the hyperplane containing it
        let rep = pcrit_exact(&CurveScene::new(vec![k(1), s(), s()]).unwrap()).unwrap();
        assert!(!smooth_locus_membership(&rep, &ints(&[0, 1, -1])).unwrap());
        assert!(smooth_locus_membership(&rep, &ints(&[0, 1, 0])).unwrap());
    }

    #[test]
    fn double_cover_branch_points() {
        let rep = pcrit_exact(&CurveScene::new(vec![k(1), s().pow(2)]).unwrap()).unwrap();
        assert_eq!(rep.equation_strings(), vec!["l0*l1"]);
    }

    #[test]
    fn rejects_bad_curves() {
        assert!(matches!(CurveScene::new(vec![s(), s().pow(2)]), Err(Error::InvalidArgument(_))));
        assert!(matches!(CurveScene::new(vec![k(0), k(0)]), Err(Error::DegenerateParametrization(_))));
        assert!(matches!(CurveScene::new(vec![k(1), s().pow(9)]), Err(Error::DegreeTooHigh { .. })));
    }

    #[test]
    fn sampled_agrees_with_exact() {
        let parabola = vec![k(1), s(), s().pow(2)];
        let exact = pcrit_exact(&CurveScene::new(parabola.clone()).unwrap()).unwrap();
        let map = PolyMap { source_dim: 1, components: parabola, empty_source: false };
        let rep = pcrit_sampled(&map, 40, 7).unwrap();
        assert_eq!(rep.samples.len(), 40);
        for smp in &rep.samples {
            assert_eq!(smp.hyperplanes.len(), 1);
            assert!(exact.equations[0].eval(&smp.hyperplanes[0]).is_zero());
        }
        assert_eq!(pcrit_sampled(&map, 40, 7).unwrap(), rep);
    }

    #[test]
    fn sampled_edge_cases() {
        let point = PolyMap { source_dim: 1, components: vec![k(1), k(2), k(3)], empty_source: false };
        let rep = pcrit_sampled(&point, 5, 1).unwrap();
        assert!(rep.samples.iter().all(|s| s.hyperplanes.len() == 2));
        let empty = PolyMap { source_dim: 1, components: vec![k(1), s()], empty_source: true };
        let rep = pcrit_sampled(&empty, 5, 1).unwrap();
        assert!(rep.samples.is_empty() && smooth_locus_membership(&rep, &ints(&[1, 1])).unwrap());
        assert!(matches!(pcrit_sampled(&empty, 5000, 1), Err(Error::BudgetExceeded { .. })));
    }
}
