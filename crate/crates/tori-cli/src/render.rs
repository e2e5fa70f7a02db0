//! Deterministic report rendering.
//!
//! The JSON writer is hand-rolled so the byte stream is a pure
//! function of the report: fields appear in declaration order, maps in
//! key order, and every float is printed in scientific notation with
//! 17 significant digits — enough to reconstruct the exact value on
//! re-parse. CSV and SVG output follow the same rule.

use tori::report::{ClassReport, ComplexPair, EquivReport};

use crate::error::CliError;
use crate::job::{Output, OutputFormat};
use crate::svg;

const INDENT: &str = "  ";

/// Scientific notation with 16 digits after the point: 17 significant
/// digits, the smallest count that round-trips every f64.
pub fn fmt_f64(value: f64) -> String {
    format!("{value:.16e}")
}

/// Quote and escape a string for JSON.
pub fn json_string(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                out.push_str(&format!("\\u{:04x}", c as u32));
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn push_indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str(INDENT);
    }
}

fn push_pair_object(out: &mut String, depth: usize, pair: &ComplexPair) {
    out.push_str("{\n");
    push_indent(out, depth + 1);
    out.push_str("\"re\": ");
    out.push_str(&fmt_f64(pair.re));
    out.push_str(",\n");
    push_indent(out, depth + 1);
    out.push_str("\"im\": ");
    out.push_str(&fmt_f64(pair.im));
    out.push('\n');
    push_indent(out, depth);
    out.push('}');
}

fn push_f64_map(
    out: &mut String,
    depth: usize,
    map: &std::collections::BTreeMap<String, f64>,
) {
    if map.is_empty() {
        out.push_str("{}");
        return;
    }
    out.push_str("{\n");
    let last = map.len() - 1;
    for (index, (key, value)) in map.iter().enumerate() {
        push_indent(out, depth + 1);
        out.push_str(&json_string(key));
        out.push_str(": ");
        out.push_str(&fmt_f64(*value));
        if index < last {
            out.push(',');
        }
        out.push('\n');
    }
    push_indent(out, depth);
    out.push('}');
}

fn push_witness(out: &mut String, witness: &[i64; 4]) {
    out.push_str(&format!(
        "[{}, {}, {}, {}]",
        witness[0], witness[1], witness[2], witness[3]
    ));
}

fn push_class_report(out: &mut String, depth: usize, report: &ClassReport) {
    let inner = depth + 1;
    out.push_str("{\n");
    push_indent(out, inner);
    out.push_str("\"kind\": ");
    out.push_str(&json_string(&report.kind));
    out.push_str(",\n");
    push_indent(out, inner);
    out.push_str("\"inputs\": ");
    push_f64_map(out, inner, &report.inputs);
    out.push_str(",\n");
    push_indent(out, inner);
    out.push_str("\"tau\": ");
    push_pair_object(out, inner, &report.tau);
    out.push_str(",\n");
    push_indent(out, inner);
    out.push_str("\"tau_reduced\": ");
    push_pair_object(out, inner, &report.tau_reduced);
    out.push_str(",\n");
    push_indent(out, inner);
    out.push_str("\"witness\": ");
    push_witness(out, &report.witness);
    out.push_str(",\n");
    push_indent(out, inner);
    out.push_str("\"j\": ");
    push_pair_object(out, inner, &report.j);
    out.push_str(",\n");
    push_indent(out, inner);
    out.push_str("\"diagnostics\": ");
    push_f64_map(out, inner, &report.diagnostics);
    out.push('\n');
    push_indent(out, depth);
    out.push('}');
}

pub fn class_report_json(report: &ClassReport) -> String {
    let mut out = String::new();
    push_class_report(&mut out, 0, report);
    out.push('\n');
    out
}

pub fn class_report_list_json(reports: &[ClassReport]) -> String {
    if reports.is_empty() {
        return "[]\n".to_string();
    }
    let mut out = String::from("[\n");
    let last = reports.len() - 1;
    for (index, report) in reports.iter().enumerate() {
        push_indent(&mut out, 1);
        push_class_report(&mut out, 1, report);
        if index < last {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("]\n");
    out
}

pub fn equiv_report_json(report: &EquivReport) -> String {
    let mut out = String::from("{\n");
    let fields: [(&str, &ComplexPair); 4] = [
        ("tau1", &report.tau1),
        ("tau2", &report.tau2),
        ("reduced1", &report.reduced1),
        ("reduced2", &report.reduced2),
    ];
    for (key, pair) in fields {
        push_indent(&mut out, 1);
        out.push_str(&format!("\"{key}\": "));
        push_pair_object(&mut out, 1, pair);
        out.push_str(",\n");
    }
    push_indent(&mut out, 1);
    out.push_str(if report.equivalent {
        "\"equivalent\": true,\n"
    } else {
        "\"equivalent\": false,\n"
    });
    push_indent(&mut out, 1);
    out.push_str("\"witness\": ");
    match &report.witness {
        Some(witness) => push_witness(&mut out, witness),
        None => out.push_str("null"),
    }
    out.push_str(",\n");
    for (key, pair) in [("j1", &report.j1), ("j2", &report.j2)] {
        push_indent(&mut out, 1);
        out.push_str(&format!("\"{key}\": "));
        push_pair_object(&mut out, 1, pair);
        out.push_str(",\n");
    }
    push_indent(&mut out, 1);
    out.push_str("\"j_distance\": ");
    out.push_str(&fmt_f64(report.j_distance));
    out.push_str(",\n");
    push_indent(&mut out, 1);
    out.push_str("\"tol\": ");
    out.push_str(&fmt_f64(report.tol));
    out.push('\n');
    out.push_str("}\n");
    out
}

/// Tabulate classification reports. All rows must come from one
/// family so the parameter columns line up; the defect column is
/// filled only for circle-bundle reports.
pub fn reports_csv(reports: &[ClassReport]) -> Result<String, CliError> {
    let first = reports
        .first()
        .ok_or_else(|| CliError::validation("no reports to tabulate"))?;
    let keys: Vec<&str> = first.inputs.keys().map(String::as_str).collect();
    for report in reports {
        let same = report.inputs.len() == keys.len()
            && report.inputs.keys().map(String::as_str).eq(keys.iter().copied());
        if !same {
            return Err(CliError::validation(
                "csv output needs a uniform parameter set across rows",
            ));
        }
    }
    let mut out = String::from("kind");
    for key in &keys {
        out.push(',');
        out.push_str(key);
    }
    out.push_str(",tau_re,tau_im,red_re,red_im,j_re,j_im,defect\n");
    for report in reports {
        out.push_str(&report.kind);
        for key in &keys {
            out.push(',');
            out.push_str(&fmt_f64(report.inputs[*key]));
        }
        for value in [
            report.tau.re,
            report.tau.im,
            report.tau_reduced.re,
            report.tau_reduced.im,
            report.j.re,
            report.j.im,
        ] {
            out.push(',');
            out.push_str(&fmt_f64(value));
        }
        out.push(',');
        if let Some(defect) = report.diagnostics.get("isoperimetric_defect") {
            out.push_str(&fmt_f64(*defect));
        }
        out.push('\n');
    }
    Ok(out)
}

/// Render an output in the requested format. Comparisons have no
/// tabular form; SVG renders the reduced moduli in the fundamental
/// domain.
pub fn render(output: &Output, format: OutputFormat) -> Result<String, CliError> {
    match format {
        OutputFormat::Json => Ok(match output {
            Output::Single(report) => class_report_json(report),
            Output::List(reports) => class_report_list_json(reports),
            Output::Comparison(report) => equiv_report_json(report),
        }),
        OutputFormat::Csv => match output {
            Output::Single(report) => reports_csv(std::slice::from_ref(report)),
            Output::List(reports) => reports_csv(reports),
            Output::Comparison(_) => Err(CliError::validation(
                "csv output is defined for classification reports; comparisons emit json",
            )),
        },
        OutputFormat::Svg => Ok(svg::fundamental_domain_svg(&output.reduced_points())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn sample_report() -> ClassReport {
        let mut inputs = BTreeMap::new();
        inputs.insert("major".to_string(), 5.0);
        inputs.insert("minor".to_string(), 3.0);
        let mut diagnostics = BTreeMap::new();
        diagnostics.insert("omega".to_string(), 1.0 / 3.0);
        ClassReport {
            kind: "standard".to_string(),
            inputs,
            tau: ComplexPair { re: 0.0, im: 0.75 },
            tau_reduced: ComplexPair { re: 0.0, im: 4.0 / 3.0 },
            witness: [0, -1, 1, 0],
            j: ComplexPair { re: 178.8, im: -0.0 },
            diagnostics,
        }
    }

    #[test]
    fn floats_round_trip_exactly() {
        for value in [
            0.75,
            1.0 / 3.0,
            std::f64::consts::PI,
            1.0e-300,
            -2.5e300,
            0.0,
            -0.0,
            16384.0,
        ] {
            let text = fmt_f64(value);
            let back: f64 = text.parse().unwrap();
            assert_eq!(back.to_bits(), value.to_bits(), "{value} -> {text}");
        }
    }

    #[test]
    fn json_strings_escape_control_characters() {
        assert_eq!(json_string("plain"), "\"plain\"");
        assert_eq!(json_string("a\"b\\c\nd\u{1}"), "\"a\\\"b\\\\c\\nd\\u0001\"");
    }

    #[test]
    fn class_report_json_reparses_to_the_same_report() {
        let report = sample_report();
        let text = class_report_json(&report);
        let back: ClassReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn report_lists_reparse_and_keep_order() {
        let mut second = sample_report();
        second.inputs.insert("major".to_string(), 7.0);
        let reports = vec![sample_report(), second];
        let text = class_report_list_json(&reports);
        let back: Vec<ClassReport> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, reports);
        assert_eq!(class_report_list_json(&[]), "[]\n");
    }

    #[test]
    fn equiv_report_json_reparses_with_and_without_witness() {
        let mut report = EquivReport {
            tau1: ComplexPair { re: 0.0, im: 0.75 },
            tau2: ComplexPair { re: 0.36, im: 0.48 },
            reduced1: ComplexPair { re: 0.0, im: 4.0 / 3.0 },
            reduced2: ComplexPair { re: 0.0, im: 4.0 / 3.0 },
            equivalent: true,
            witness: Some([1, 0, 1, 1]),
            j1: ComplexPair { re: 1.0, im: 0.0 },
            j2: ComplexPair { re: 1.0, im: 0.0 },
            j_distance: 0.0,
            tol: 1e-9,
        };
        let back: EquivReport = serde_json::from_str(&equiv_report_json(&report)).unwrap();
        assert_eq!(back, report);
        report.equivalent = false;
        report.witness = None;
        let back: EquivReport = serde_json::from_str(&equiv_report_json(&report)).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn csv_has_the_documented_columns() {
        let report = sample_report();
        let text = reports_csv(std::slice::from_ref(&report)).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "kind,major,minor,tau_re,tau_im,red_re,red_im,j_re,j_im,defect"
        );
        let row = lines.next().unwrap();
        assert!(row.starts_with("standard,5.0000000000000000e0,"));
        assert!(row.ends_with(','), "defect column stays empty: {row}");
        assert!(lines.next().is_none());
    }

    #[test]
    fn csv_fills_the_defect_column_for_circle_bundles() {
        let mut report = sample_report();
        report.kind = "hopf-circle".to_string();
        report
            .diagnostics
            .insert("isoperimetric_defect".to_string(), 0.125);
        let text = reports_csv(std::slice::from_ref(&report)).unwrap();
        assert!(text.ends_with(",1.2500000000000000e-1\n"), "{text}");
    }

    #[test]
    fn mismatched_rows_are_rejected() {
        let mut second = sample_report();
        second.inputs.remove("minor");
        let err = reports_csv(&[sample_report(), second]).unwrap_err();
        assert!(err.message().contains("uniform"), "{}", err.message());
    }
}
