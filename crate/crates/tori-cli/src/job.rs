//! Job descriptions and their dispatch into the classification
//! library.
//!
//! A [`JobSpec`] is the fully parsed form of one command line
//! invocation: the requested family, a key-to-value parameter map, and
//! the output format. [`run`] validates the map (naming the offending
//! parameter on failure) and produces reports.

use std::collections::BTreeMap;
use std::path::Path;

use tori::modular::Tau;
use tori::report::{self, ClassReport, ComplexPair, EquivReport};
use tori::sweep::{self, SweepKind};
use tori::{ProductMetric, StandardTorus};

use crate::curve;
use crate::error::CliError;

/// Job families the front end can request.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JobKind {
    Standard,
    Product,
    HopfCircle,
    HopfCurve,
    Reduce,
    Equiv,
    Sweep,
}

impl JobKind {
    pub fn name(self) -> &'static str {
        match self {
            JobKind::Standard => "standard",
            JobKind::Product => "product",
            JobKind::HopfCircle => "hopf-circle",
            JobKind::HopfCurve => "hopf-curve",
            JobKind::Reduce => "reduce",
            JobKind::Equiv => "equiv",
            JobKind::Sweep => "sweep",
        }
    }
}

/// One parsed parameter value.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Number(f64),
    Count(usize),
    Text(String),
}

/// Output targets the renderers understand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Svg,
}

/// A fully described request.
#[derive(Debug, Clone, PartialEq)]
pub struct JobSpec {
    pub kind: JobKind,
    pub parameters: BTreeMap<String, ParamValue>,
    pub output_format: OutputFormat,
}

/// What a job produced: one report, an ordered list, or a comparison.
#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Single(ClassReport),
    List(Vec<ClassReport>),
    Comparison(EquivReport),
}

impl Output {
    /// The reduced moduli carried by the output, in emission order;
    /// these are the points a plot marks.
    pub fn reduced_points(&self) -> Vec<ComplexPair> {
        match self {
            Output::Single(report) => vec![report.tau_reduced],
            Output::List(reports) => reports.iter().map(|r| r.tau_reduced).collect(),
            Output::Comparison(report) => vec![report.reduced1, report.reduced2],
        }
    }
}

fn need<'a>(
    params: &'a BTreeMap<String, ParamValue>,
    kind: JobKind,
    key: &str,
) -> Result<&'a ParamValue, CliError> {
    params.get(key).ok_or_else(|| {
        CliError::validation(format!("job `{}` is missing parameter `{key}`", kind.name()))
    })
}

fn need_number(
    params: &BTreeMap<String, ParamValue>,
    kind: JobKind,
    key: &str,
) -> Result<f64, CliError> {
    match need(params, kind, key)? {
        ParamValue::Number(value) => Ok(*value),
        other => Err(CliError::validation(format!(
            "parameter `{key}` must be a number, got {other:?}"
        ))),
    }
}

fn need_count(
    params: &BTreeMap<String, ParamValue>,
    kind: JobKind,
    key: &str,
) -> Result<usize, CliError> {
    match need(params, kind, key)? {
        ParamValue::Count(value) => Ok(*value),
        other => Err(CliError::validation(format!(
            "parameter `{key}` must be a count, got {other:?}"
        ))),
    }
}

fn need_text<'a>(
    params: &'a BTreeMap<String, ParamValue>,
    kind: JobKind,
    key: &str,
) -> Result<&'a str, CliError> {
    match need(params, kind, key)? {
        ParamValue::Text(value) => Ok(value.as_str()),
        other => Err(CliError::validation(format!(
            "parameter `{key}` must be text, got {other:?}"
        ))),
    }
}

/// Execute a job. Missing or ill-typed parameters yield validation
/// errors naming the parameter; everything else is delegated to the
/// library, whose error classes map onto exit codes.
pub fn run(job: &JobSpec) -> Result<Output, CliError> {
    let params = &job.parameters;
    match job.kind {
        JobKind::Standard => {
            let major = need_number(params, job.kind, "R")?;
            let minor = need_number(params, job.kind, "r")?;
            let torus = StandardTorus::new(major, minor)?;
            Ok(Output::Single(report::classify_standard(&torus)?))
        }
        JobKind::Product => {
            let a = need_number(params, job.kind, "a")?;
            let b = need_number(params, job.kind, "b")?;
            // The metric reads b dtheta^2 + a dphi^2, so b scales the
            // theta direction and a the phi direction.
            let metric = ProductMetric::new(b, a)?;
            Ok(Output::Single(report::classify_product(&metric)?))
        }
        JobKind::HopfCircle => {
            let t = need_number(params, job.kind, "t")?;
            let samples = need_count(params, job.kind, "n")?;
            Ok(Output::Single(report::classify_hopf_circle(t, samples)?))
        }
        JobKind::HopfCurve => {
            let path = need_text(params, job.kind, "path")?;
            let curve = curve::load_sphere_curve(Path::new(path))?;
            Ok(Output::Single(report::classify_hopf_curve(&curve)?))
        }
        JobKind::Reduce => {
            let re = need_number(params, job.kind, "re")?;
            let im = need_number(params, job.kind, "im")?;
            let tau = Tau::new(re, im)?;
            let mut inputs = BTreeMap::new();
            inputs.insert("re".to_string(), re);
            inputs.insert("im".to_string(), im);
            Ok(Output::Single(report::classify_tau("tau", inputs, tau, BTreeMap::new())?))
        }
        JobKind::Equiv => {
            let t1 = Tau::new(
                need_number(params, job.kind, "tau1_re")?,
                need_number(params, job.kind, "tau1_im")?,
            )?;
            let t2 = Tau::new(
                need_number(params, job.kind, "tau2_re")?,
                need_number(params, job.kind, "tau2_im")?,
            )?;
            let tol = need_number(params, job.kind, "tol")?;
            if !tol.is_finite() || tol <= 0.0 {
                return Err(CliError::validation(format!(
                    "tolerance must be positive and finite, got {tol}"
                )));
            }
            Ok(Output::Comparison(report::equivalence_report(t1, t2, tol)?))
        }
        JobKind::Sweep => {
            let family = match need_text(params, job.kind, "kind")? {
                "standard" => SweepKind::Standard,
                "product" => SweepKind::Product,
                "hopf-circle" => SweepKind::HopfCircle,
                other => {
                    return Err(CliError::validation(format!(
                        "unknown sweep family `{other}`"
                    )))
                }
            };
            let from = need_number(params, job.kind, "from")?;
            let to = need_number(params, job.kind, "to")?;
            let steps = need_count(params, job.kind, "steps")?;
            let points = sweep::sweep(family, from, to, steps)?;
            Ok(Output::List(points.into_iter().map(|point| point.report).collect()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::FailureKind;

    fn spec(kind: JobKind, entries: &[(&str, ParamValue)]) -> JobSpec {
        let parameters = entries
            .iter()
            .map(|(key, value)| (key.to_string(), value.clone()))
            .collect();
        JobSpec { kind, parameters, output_format: OutputFormat::Json }
    }

    #[test]
    fn missing_parameters_are_named() {
        let job = spec(JobKind::Standard, &[("R", ParamValue::Number(5.0))]);
        let err = run(&job).unwrap_err();
        assert_eq!(err.kind(), FailureKind::Validation);
        assert!(err.message().contains("`r`"), "{}", err.message());
    }

    #[test]
    fn ill_typed_parameters_are_named() {
        let job = spec(
            JobKind::Standard,
            &[
                ("R", ParamValue::Number(5.0)),
                ("r", ParamValue::Text("three".to_string())),
            ],
        );
        let err = run(&job).unwrap_err();
        assert!(err.message().contains("`r` must be a number"), "{}", err.message());
    }

    #[test]
    fn reduce_jobs_report_the_canonical_point() {
        let job = spec(
            JobKind::Reduce,
            &[
                ("re", ParamValue::Number(0.0)),
                ("im", ParamValue::Number(0.25)),
            ],
        );
        let Output::Single(report) = run(&job).unwrap() else {
            panic!("reduce yields a single report");
        };
        assert_eq!(report.kind, "tau");
        assert!((report.tau_reduced.im - 4.0).abs() < 1e-12);
        assert!(report.diagnostics.is_empty());
    }

    #[test]
    fn equiv_jobs_validate_the_tolerance() {
        let job = spec(
            JobKind::Equiv,
            &[
                ("tau1_re", ParamValue::Number(0.0)),
                ("tau1_im", ParamValue::Number(1.0)),
                ("tau2_re", ParamValue::Number(0.0)),
                ("tau2_im", ParamValue::Number(1.0)),
                ("tol", ParamValue::Number(-1.0)),
            ],
        );
        let err = run(&job).unwrap_err();
        assert!(err.message().contains("tolerance"), "{}", err.message());
    }

    #[test]
    fn product_jobs_keep_the_coefficient_roles_apart() {
        // a scales dphi^2, b scales dtheta^2, so the modulus is
        // i sqrt(a / b).
        let job = spec(
            JobKind::Product,
            &[("a", ParamValue::Number(9.0)), ("b", ParamValue::Number(4.0))],
        );
        let Output::Single(report) = run(&job).unwrap() else {
            panic!("product yields a single report");
        };
        assert!((report.tau.im - 1.5).abs() < 1e-15);
        assert_eq!(report.tau.re, 0.0);
    }

    #[test]
    fn unknown_sweep_families_are_rejected() {
        let job = spec(
            JobKind::Sweep,
            &[
                ("kind", ParamValue::Text("spiral".to_string())),
                ("from", ParamValue::Number(1.5)),
                ("to", ParamValue::Number(2.0)),
                ("steps", ParamValue::Count(2)),
            ],
        );
        let err = run(&job).unwrap_err();
        assert!(err.message().contains("spiral"), "{}", err.message());
    }

    #[test]
    fn comparison_outputs_carry_both_reduced_points() {
        let job = spec(
            JobKind::Equiv,
            &[
                ("tau1_re", ParamValue::Number(0.0)),
                ("tau1_im", ParamValue::Number(0.75)),
                ("tau2_re", ParamValue::Number(0.36)),
                ("tau2_im", ParamValue::Number(0.48)),
                ("tol", ParamValue::Number(1e-9)),
            ],
        );
        let output = run(&job).unwrap();
        let points = output.reduced_points();
        assert_eq!(points.len(), 2);
        assert!((points[0].im - points[1].im).abs() < 1e-9);
    }
}
