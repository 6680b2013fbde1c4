use std::path::Path;

use padic_wavefront::bound::{build_l, pcrit_exact, pcrit_sampled};
use padic_wavefront::char_sums::{brute_force_ft, oracle_level, truncated_stratum_oracle, FrequencyPoint, Scene};
use padic_wavefront::rational::{self, Rational};
use padic_wavefront::verify::{
    evaluate, homogeneity_suite, smoothness_probe, wavefront_cover_check, CaseVerdict, CoverBundle, SuiteReport,
};
use padic_wavefront::{CyclotomicValue, PAdicScalar, PrimeContext, ResidueCube};
use serde_json::json;

use crate::error::CliError;
use crate::output::Sink;
use crate::scene_file::{self, OutputFormat, SceneFile, SceneSpec};

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}

/// Float view of an exact value, with rounding noise below `1e-12` cleared.
fn complex(v: &CyclotomicValue) -> (f64, f64) {
    let (re, im) = v.to_complex();
    let clean = |x: f64| if x.abs() < 1e-12 { 0.0 } else { x };
    (clean(re), clean(im))
}

fn value_json(v: &CyclotomicValue) -> serde_json::Value {
    let (re, im) = complex(v);
    json!({ "exact": v, "text": v.to_string(), "complex": [re, im] })
}

/// `"1/3,2/3"` into rationals.
pub fn parse_xi(s: &str) -> Result<Vec<Rational>, CliError> {
    s.split(',').map(|t| rational::parse(t.trim()).map_err(CliError::Parse)).collect()
}

/// `"b1,b2@level"` into a cube.
pub fn parse_cube(p: u64, s: &str) -> Result<ResidueCube, CliError> {
    let (base, level) = s.split_once('@').ok_or_else(|| CliError::Parse(format!("cube {s:?} must look like b1,b2@level")))?;
    let base = base
        .split(',')
        .map(|b| b.trim().parse::<i64>().map_err(|e| CliError::Parse(format!("cube base {b:?}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let level = level.trim().parse::<u32>().map_err(|e| CliError::Parse(format!("cube level {level:?}: {e}")))?;
    ResidueCube::new(p, base, level).map_err(|e| CliError::Parse(e.to_string()))
}

fn scalars(ctx: &PrimeContext, xi: &[Rational]) -> Result<Vec<PAdicScalar>, CliError> {
    xi.iter().map(|x| PAdicScalar::new(ctx, x.clone()).map_err(|e| CliError::Parse(e.to_string()))).collect()
}

pub fn eval(
    file: &SceneFile,
    sink: &Sink,
    xi: &str,
    cube: Option<&str>,
    oracle: Option<u32>,
) -> Result<(), CliError> {
    let ctx = file.context()?;
    let scene = file.evaluable()?;
    let xi_q = parse_xi(xi)?;
    let xi = scalars(&ctx, &xi_q)?;
    let cube = match cube {
        Some(c) => parse_cube(ctx.p(), c)?,
        None => ResidueCube::full(scene.n()),
    };
    let value = evaluate(&ctx, &scene, &cube, &xi)?;
    let mut record = json!({
        "scene": file.scene.kind(),
        "prime": ctx.p(),
        "xi": xi_q.iter().map(rational::format).collect::<Vec<_>>(),
        "cube": cube,
        "value": value_json(&value),
    });
    let mut agrees = true;
    if let Some(k) = oracle {
        let (method, level, ov) = match &scene {
            Scene::Inverse(s) if (0..s.n()).any(|i| s.on_divisor(i) && cube.slice_contains_zero(i)) => {
                ("truncated_strata", k, truncated_stratum_oracle(&ctx, s, &cube, &xi, k)?)
            }
            Scene::Inverse(s) => {
                let k = k.max(oracle_level(ctx.p(), s, &cube, &xi));
                ("riemann_sum", k, brute_force_ft(&ctx, &scene, &cube, &FrequencyPoint::new(xi.clone()), k)?)
            }
            Scene::Direct(_) => {
                ("riemann_sum", k, brute_force_ft(&ctx, &scene, &cube, &FrequencyPoint::new(xi.clone()), k)?)
            }
        };
        agrees = ov == value;
        record["oracle"] = json!({ "method": method, "level": level, "value": value_json(&ov), "agrees": agrees });
    }
    sink.emit(&pretty(&record))?;
    if agrees {
        Ok(())
    } else {
        Err(CliError::Assertion("oracle value differs from the evaluator".into()))
    }
}

pub fn bound(file: &SceneFile, sink: &Sink) -> Result<(), CliError> {
    let SceneSpec::Charts(spec) = &file.scene else {
        return Err(CliError::Parse(format!("bound needs a charts scene, got {}", file.scene.kind())));
    };
    let desc = build_l(&scene_file::charts(&spec.charts)?, spec.d, spec.q)?;
    sink.emit(&(desc.to_json() + "\n"))
}

pub fn pcrit(file: &SceneFile, sink: &Sink) -> Result<(), CliError> {
    let report = match &file.scene {
        SceneSpec::Curve(c) => pcrit_exact(&scene_file::curve(c)?)?,
        SceneSpec::Polymap(m) => pcrit_sampled(&scene_file::polymap(m)?, m.budget, m.seed)?,
        other => return Err(CliError::Parse(format!("pcrit needs a curve or polymap scene, got {}", other.kind()))),
    };
    sink.emit(&pretty(&report.to_json()))
}

pub fn probe(file: &SceneFile, sink: &Sink) -> Result<(), CliError> {
    let ctx = file.context()?;
    let scene = file.evaluable()?;
    let (k_max, specs) = file.probe_specs()?;
    let mut reports = Vec::with_capacity(specs.len());
    for spec in &specs {
        reports.push(smoothness_probe(&ctx, &scene, &spec.cube, &spec.direction, k_max)?);
    }
    let body = match sink.format {
        OutputFormat::Json => {
            let items: Vec<_> =
                reports.iter().enumerate().map(|(i, r)| json!({ "probe_id": i, "report": r })).collect();
            pretty(&json!(items))
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let csv_err = |e: csv::Error| CliError::Eval(e.to_string());
            w.write_record(["probe_id", "level", "value_re", "value_im", "exact_zero"]).map_err(csv_err)?;
            for (i, r) in reports.iter().enumerate() {
                for (k, v) in r.values.iter().enumerate() {
                    let (re, im) = complex(v);
                    w.write_record([
                        i.to_string(),
                        (k + 1).to_string(),
                        re.to_string(),
                        im.to_string(),
                        v.is_zero().to_string(),
                    ])
                    .map_err(csv_err)?;
                }
            }
            String::from_utf8(w.into_inner().map_err(|e| CliError::Eval(e.to_string()))?).expect("csv is utf-8")
        }
    };
    sink.emit(&body)
}

fn cover_suite(file: &SceneFile, seed: u64) -> Result<SuiteReport, CliError> {
    let ctx = file.context()?;
    let scene = file.evaluable()?;
    let cover = file.cover.as_ref().ok_or_else(|| CliError::Parse("the cover suite needs a [cover] section".into()))?;
    let bound = build_l(&scene_file::charts(&cover.charts)?, scene.d(), cover.q)?;
    let (k_max, probes) = file.probe_specs()?;
    let bundle = CoverBundle { scene, bound, probes, y_coords: cover.y_coords.clone(), k_max };
    let rep = wavefront_cover_check(&ctx, &bundle)?;
    let cases: Vec<CaseVerdict> = rep
        .cases
        .iter()
        .map(|c| CaseVerdict {
            id: c.probe_id,
            pass: c.in_bound != Some(false),
            detail: Some(format!("{:?}, in L: {:?}", c.outcome, c.in_bound)),
        })
        .collect();
    let counterexample = rep
        .cases
        .iter()
        .find(|c| c.in_bound == Some(false))
        .map(|c| json!({ "probe_id": c.probe_id, "probe": bundle.probes[c.probe_id], "outcome": c.outcome }));
    let passed = cases.iter().filter(|c| c.pass).count();
    Ok(SuiteReport { suite: "cover".into(), seed, trials: cases.len(), passed, cases, counterexample })
}

pub fn verify(file: &SceneFile, sink: &Sink, suite: &str, seed: u64, trials: usize) -> Result<(), CliError> {
    let report = match suite {
        "homogeneity" => {
            let SceneSpec::Monomial(m) = &file.scene else {
                return Err(CliError::Parse("the homogeneity suite needs a monomial scene".into()));
            };
            homogeneity_suite(&file.context()?, &scene_file::monomial(m)?, trials, seed, false)?
        }
        "cover" => cover_suite(file, seed)?,
        other => return Err(CliError::Parse(format!("unknown suite {other:?} (expected homogeneity or cover)"))),
    };
    sink.emit(&(report.to_json() + "\n"))?;
    let table = report.summary_table();
    if sink.is_file() {
        print!("{table}");
    } else {
        eprint!("{table}");
    }
    if report.ok() {
        Ok(())
    } else {
        Err(CliError::Assertion(format!("{} of {} cases failed", report.trials - report.passed, report.trials)))
    }
}

/// Loads the file and resolves its output sink.
pub fn open(path: &Path, command: &str, out: Option<&Path>) -> Result<(SceneFile, Sink), CliError> {
    let file = scene_file::load(path)?;
    let sink = Sink::resolve(&file, path, command, out);
    Ok((file, sink))
}

#[cfg(test)]
mod tests {
    use super::*;
    use padic_wavefront::rational::{int, ratio};

    #[test]
    fn xi_lists() {
        assert_eq!(parse_xi("1/3, -2").unwrap(), vec![ratio(1, 3), int(-2)]);
        assert!(matches!(parse_xi("0.5"), Err(CliError::Parse(_))));
    }

    #[test]
    fn cube_syntax() {
        let c = parse_cube(3, "1,2@1").unwrap();
        assert_eq!((c.base(), c.level()), (&[1u64, 2][..], 1));
        assert!(parse_cube(3, "1,2").is_err());
        assert!(parse_cube(3, "x@1").is_err());
    }
}
