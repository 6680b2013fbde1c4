//! The scene-file schema: TOML for hand-written scenes, JSON for interchange.
//!
//! Parsing is strict: unknown keys and float literals are errors, and every
//! number is read as an exact rational (an integer or an `"a/b"` string).

use std::fmt;
use std::path::Path;

use padic_wavefront::bound::{CurveScene, PolyMap, ResolutionChart};
use padic_wavefront::char_sums::{MonomialScene, PolynomialScene, Scene};
use padic_wavefront::rational::{self, Rational};
use padic_wavefront::verify::ProbeSpec;
use padic_wavefront::{PrimeContext, ResidueCube};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer};

use crate::error::CliError;
use crate::polyparse::parse_poly;

pub const FORMAT_VERSION: u32 = 1;

/// An exact rational literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Num(pub Rational);

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Num;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a rational string \"a/b\"")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Num, E> {
                Ok(Num(rational::int(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Num, E> {
                Ok(Num(Rational::from_integer(v.into())))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Num, E> {
                Err(E::custom(format!("float literal {v} is not accepted; write rationals as \"a/b\"")))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Num, E> {
                rational::parse(v).map(Num).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

fn nums(v: &[Num]) -> Vec<Rational> {
    v.iter().map(|n| n.0.clone()).collect()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    pub format_version: u32,
    pub prime: u64,
    pub max_level: u32,
    pub scene: SceneSpec,
    #[serde(default)]
    pub probes: Option<ProbePlan>,
    #[serde(default)]
    pub cover: Option<CoverSpec>,
    #[serde(default)]
    pub output: Option<OutputSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SceneSpec {
    Monomial(MonomialSpec),
    Polynomial(PolynomialSpec),
    Charts(ChartsSpec),
    Curve(CurveSpec),
    Polymap(PolyMapSpec),
}

impl SceneSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            SceneSpec::Monomial(_) => "monomial",
            SceneSpec::Polynomial(_) => "polynomial",
            SceneSpec::Charts(_) => "charts",
            SceneSpec::Curve(_) => "curve",
            SceneSpec::Polymap(_) => "polymap",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialSpec {
    pub l: Vec<u32>,
    pub r: Vec<i64>,
}

/// Polynomials in `y1 .. yn`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialSpec {
    pub n: usize,
    pub phi: Vec<String>,
    pub r: Vec<i64>,
    #[serde(default)]
    pub twist: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartSpec {
    pub chart_id: String,
    pub l: Vec<u32>,
    pub r: Vec<i64>,
    pub dprime_flags: Vec<bool>,
    #[serde(default)]
    pub glue: Option<String>,
    #[serde(default)]
    pub y_coords: Vec<usize>,
    #[serde(default)]
    pub pole_direction: Option<Vec<Num>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartsSpec {
    pub d: usize,
    pub q: usize,
    pub charts: Vec<ChartSpec>,
}

/// Homogeneous coordinates as polynomials in `s`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub param: Vec<String>,
}

/// Homogeneous coordinates as polynomials in `x1 .. xk`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyMapSpec {
    pub source_dim: usize,
    pub components: Vec<String>,
    #[serde(default)]
    pub empty_source: bool,
    pub budget: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubeSpec {
    pub base: Vec<i64>,
    pub level: u32,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeItem {
    pub cube: CubeSpec,
    pub direction: Vec<Num>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbePlan {
    pub k_max: u32,
    pub plan: Vec<ProbeItem>,
}

/// Chart data of the bound used by the coverage suite.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverSpec {
    pub q: usize,
    #[serde(default)]
    pub y_coords: Vec<usize>,
    pub charts: Vec<ChartSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub path: Option<String>,
    #[serde(default)]
    pub format: OutputFormat,
}

/// Reads a scene file; `.json` files are JSON, anything else TOML.
pub fn load(path: &Path) -> Result<SceneFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let is_json = path.extension().is_some_and(|e| e == "json");
    parse(&text, is_json).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn parse(text: &str, is_json: bool) -> Result<SceneFile, String> {
    let file: SceneFile = if is_json {
        serde_json::from_str(text).map_err(|e| e.to_string())?
    } else {
        toml::from_str(text).map_err(|e| e.to_string())?
    };
    if file.format_version != FORMAT_VERSION {
        return Err(format!("format_version {} is not supported (expected {FORMAT_VERSION})", file.format_version));
    }
    Ok(file)
}

impl SceneFile {
    pub fn context(&self) -> Result<PrimeContext, CliError> {
        PrimeContext::new(self.prime, self.max_level).map_err(|e| CliError::Parse(e.to_string()))
    }

    /// The scene as an evaluable transform.
    pub fn evaluable(&self) -> Result<Scene, CliError> {
        match &self.scene {
            SceneSpec::Monomial(m) => Ok(Scene::Inverse(monomial(m)?)),
            SceneSpec::Polynomial(s) => Ok(Scene::Direct(polynomial(s)?)),
            other => Err(CliError::Parse(format!("a {} scene cannot be evaluated", other.kind()))),
        }
    }

    pub fn probe_specs(&self) -> Result<(u32, Vec<ProbeSpec>), CliError> {
        let plan = self.probes.as_ref().ok_or_else(|| CliError::Parse("scene file has no [probes] section".into()))?;
        let specs = plan
            .plan
            .iter()
            .map(|it| Ok(ProbeSpec { cube: cube(self.prime, &it.cube)?, direction: nums(&it.direction) }))
            .collect::<Result<_, CliError>>()?;
        Ok((plan.k_max, specs))
    }
}

pub fn monomial(m: &MonomialSpec) -> Result<MonomialScene, CliError> {
    MonomialScene::new(m.l.clone(), m.r.clone()).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn polynomial(s: &PolynomialSpec) -> Result<PolynomialScene, CliError> {
    let names: Vec<String> = (1..=s.n).map(|i| format!("y{i}")).collect();
    let vars: Vec<&str> = names.iter().map(String::as_str).collect();
    let phi = s.phi.iter().map(|f| parse_poly(f, &vars)).collect::<Result<Vec<_>, _>>().map_err(CliError::Parse)?;
    let twist = s.twist.as_deref().map(|t| parse_poly(t, &vars)).transpose().map_err(CliError::Parse)?;
    PolynomialScene::new(s.n, phi, s.r.clone(), twist).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn charts(list: &[ChartSpec]) -> Result<Vec<ResolutionChart>, CliError> {
    list.iter()
        .map(|c| {
            let chart = ResolutionChart {
                chart_id: c.chart_id.clone(),
                n: c.l.len(),
                l: c.l.clone(),
                r: c.r.clone(),
                dprime_flags: c.dprime_flags.clone(),
                glue: c.glue.clone(),
                y_coords: c.y_coords.clone(),
                pole_direction: c.pole_direction.as_deref().map(nums),
            };
            chart.validate().map_err(|e| CliError::Parse(e.to_string()))?;
            Ok(chart)
        })
        .collect()
}

pub fn curve(c: &CurveSpec) -> Result<CurveScene, CliError> {
    let param = c.param.iter().map(|f| parse_poly(f, &["s"])).collect::<Result<Vec<_>, _>>().map_err(CliError::Parse)?;
    CurveScene::new(param).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn polymap(m: &PolyMapSpec) -> Result<PolyMap, CliError> {
    let names: Vec<String> = (1..=m.source_dim).map(|i| format!("x{i}")).collect();
    let vars: Vec<&str> = names.iter().map(String::as_str).collect();
    let components =
        m.components.iter().map(|f| parse_poly(f, &vars)).collect::<Result<Vec<_>, _>>().map_err(CliError::Parse)?;
    Ok(PolyMap { source_dim: m.source_dim, components, empty_source: m.empty_source })
}

pub fn cube(p: u64, c: &CubeSpec) -> Result<ResidueCube, CliError> {
    ResidueCube::new(p, c.base.clone(), c.level).map_err(|e| CliError::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const MONO: &str = r#"
format_version = 1
prime = 3
max_level = 8

[scene]
kind = "monomial"
l = [1]
r = [0]
"#;

    #[test]
    fn parses_toml() {
        let f = parse(MONO, false).unwrap();
        assert!(matches!(f.scene, SceneSpec::Monomial(_)));
    }

    #[test]
    fn rejects_unknown_keys_floats_and_versions() {
        let extra = MONO.replace("r = [0]", "r = [0]\nbogus = 1");
        assert!(parse(&extra, false).unwrap_err().contains("bogus"));
        let top = MONO.replace("max_level = 8", "max_level = 8\ncolour = \"red\"");
        assert!(parse(&top, false).is_err());
        let version = MONO.replace("format_version = 1", "format_version = 2");
        assert!(parse(&version, false).unwrap_err().contains("format_version"));
        let probes = format!("{MONO}\n[probes]\nk_max = 3\nplan = [{{ cube = {{ base = [0], level = 0 }}, direction = [0.5] }}]\n");
        assert!(parse(&probes, false).unwrap_err().contains("float"));
    }

    #[test]
    fn parses_json() {
        let json = r#"{"format_version":1,"prime":5,"max_level":4,
            "scene":{"kind":"curve","param":["1","s","s^2"]},
            "probes":{"k_max":2,"plan":[{"cube":{"base":[0],"level":0},"direction":["1/5"]}]}}"#;
        let f = parse(json, true).unwrap();
        let (k, specs) = f.probe_specs().unwrap();
        assert_eq!(k, 2);
        assert_eq!(specs[0].direction, vec![rational::ratio(1, 5)]);
        let bad = json.replace("\"1/5\"", "0.2");
        assert!(parse(&bad, true).is_err());
    }
}
