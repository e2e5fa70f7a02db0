//! Classification bundles: one record per torus, one per comparison.
//!
//! A [`ClassReport`] carries the modulus of a torus together with its
//! reduced representative, the integer witness of the reduction, the
//! j-invariant, and family-specific diagnostics. The maps are ordered
//! so serialized reports are stable.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hopf::{self, SphereCurve};
use crate::modular::{self, Tau};
use crate::product::ProductMetric;
use crate::standard::StandardTorus;

/// Grid side used for the covering-residual diagnostic of a torus of
/// revolution.
const RESIDUAL_DIAG_GRID: usize = 8;

/// Scale factor probed by the product-metric invariance diagnostic.
const SCALE_PROBE: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexPair {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexPair {
    fn from(z: Complex64) -> Self {
        ComplexPair { re: z.re, im: z.im }
    }
}

impl From<Tau> for ComplexPair {
    fn from(t: Tau) -> Self {
        ComplexPair { re: t.re(), im: t.im() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    /// Family name: `standard`, `product`, `hopf-circle`, `hopf-curve`
    /// or `tau`.
    pub kind: String,
    /// The defining parameters, keyed by name.
    pub inputs: BTreeMap<String, f64>,
    /// Modulus as computed by the family formula.
    pub tau: ComplexPair,
    /// Canonical representative in the fundamental domain.
    pub tau_reduced: ComplexPair,
    /// Row-major entries of the reducing matrix.
    pub witness: [i64; 4],
    /// j-invariant of the class.
    pub j: ComplexPair,
    /// Family-specific scalar diagnostics, keyed by name.
    pub diagnostics: BTreeMap<String, f64>,
}

/// Classify a bare modulus. All family classifiers funnel through
/// here.
pub fn classify_tau(
    kind: &str,
    inputs: BTreeMap<String, f64>,
    tau: Tau,
    diagnostics: BTreeMap<String, f64>,
) -> Result<ClassReport> {
    let reduced = modular::reduce_to_fundamental(tau)?;
    let j = modular::j_invariant(tau)?;
    Ok(ClassReport {
        kind: kind.to_string(),
        inputs,
        tau: tau.into(),
        tau_reduced: reduced.tau().into(),
        witness: reduced.witness().entries(),
        j: j.into(),
        diagnostics,
    })
}

/// Classify a torus of revolution. Diagnostics include the conformal
/// period of the profile circle and a sampled covering residual.
pub fn classify_standard(torus: &StandardTorus) -> Result<ClassReport> {
    let mut inputs = BTreeMap::new();
    inputs.insert("major".to_string(), torus.major());
    inputs.insert("minor".to_string(), torus.minor());
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("aspect".to_string(), torus.aspect());
    diagnostics.insert("omega".to_string(), crate::standard::omega(torus.aspect())?);
    diagnostics.insert(
        "max_conformality_residual".to_string(),
        torus.max_conformality_residual(RESIDUAL_DIAG_GRID)?,
    );
    classify_tau("standard", inputs, torus.tau()?, diagnostics)
}

/// Classify a flat product metric.
pub fn classify_product(metric: &ProductMetric) -> Result<ClassReport> {
    let mut inputs = BTreeMap::new();
    inputs.insert("theta_coeff".to_string(), metric.theta_coeff());
    inputs.insert("phi_coeff".to_string(), metric.phi_coeff());
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("scale_drift".to_string(), metric.scale_drift(SCALE_PROBE)?);
    diagnostics.insert(
        "swap_modulus_product".to_string(),
        metric.tau()?.im() * metric.swapped().tau()?.im(),
    );
    classify_tau("product", inputs, metric.tau()?, diagnostics)
}

fn hopf_diagnostics(curve: &SphereCurve) -> Result<(Tau, BTreeMap<String, f64>)> {
    let area = curve.signed_area();
    let length = curve.length();
    let start = hopf::initial_lift(&curve.points()[0]);
    let lift = hopf::horizontal_lift(curve, &start)?;
    let tau = hopf::tau_hopf(length, area)?;
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("area".to_string(), area);
    diagnostics.insert("length".to_string(), length);
    diagnostics.insert("holonomy".to_string(), lift.holonomy_delta);
    diagnostics.insert("lift_length".to_string(), lift.lift_length);
    diagnostics.insert("phase_drift".to_string(), lift.phase_drift);
    diagnostics.insert(
        "holonomy_area_residual".to_string(),
        hopf::wrap_angle(lift.holonomy_delta - area / 2.0).abs(),
    );
    // The defect is sharp on the enclosed-area representative in
    // [0, 4 pi), so fold before evaluating.
    diagnostics.insert(
        "isoperimetric_defect".to_string(),
        hopf::isoperimetric_defect(length, hopf::fold_area(area)),
    );
    Ok((tau, diagnostics))
}

/// Classify the torus over a latitude circle, sampled by `samples`
/// vertices.
pub fn classify_hopf_circle(t: f64, samples: usize) -> Result<ClassReport> {
    let curve = SphereCurve::circle(t, samples)?;
    let (tau, diagnostics) = hopf_diagnostics(&curve)?;
    let mut inputs = BTreeMap::new();
    inputs.insert("t".to_string(), t);
    inputs.insert("samples".to_string(), samples as f64);
    classify_tau("hopf-circle", inputs, tau, diagnostics)
}

/// Classify the torus over an arbitrary closed curve.
pub fn classify_hopf_curve(curve: &SphereCurve) -> Result<ClassReport> {
    let (tau, diagnostics) = hopf_diagnostics(curve)?;
    let mut inputs = BTreeMap::new();
    inputs.insert("points".to_string(), curve.len() as f64);
    classify_tau("hopf-curve", inputs, tau, diagnostics)
}

/// Outcome of comparing two moduli.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivReport {
    pub tau1: ComplexPair,
    pub tau2: ComplexPair,
    pub reduced1: ComplexPair,
    pub reduced2: ComplexPair,
    pub equivalent: bool,
    /// Integer matrix mapping the first modulus onto the second, when
    /// the classes agree.
    pub witness: Option<[i64; 4]>,
    pub j1: ComplexPair,
    pub j2: ComplexPair,
    /// Euclidean distance of the two j-invariants, an independent
    /// measure of class separation.
    pub j_distance: f64,
    pub tol: f64,
}

/// Compare two moduli: reduce both, search for an identifying group
/// element, and cross-check with the j-invariant.
pub fn equivalence_report(t1: Tau, t2: Tau, tol: f64) -> Result<EquivReport> {
    let r1 = modular::reduce_to_fundamental(t1)?;
    let r2 = modular::reduce_to_fundamental(t2)?;
    let witness = modular::is_equivalent(t1, t2, tol)?;
    let j1 = modular::j_invariant(t1)?;
    let j2 = modular::j_invariant(t2)?;
    Ok(EquivReport {
        tau1: t1.into(),
        tau2: t2.into(),
        reduced1: r1.tau().into(),
        reduced2: r2.tau().into(),
        equivalent: witness.is_some(),
        witness: witness.map(|w| w.entries()),
        j1: j1.into(),
        j2: j2.into(),
        j_distance: (j1 - j2).norm(),
        tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::mobius_apply;

    #[test]
    fn standard_report_is_coherent() {
        let torus = StandardTorus::new(2.0, 1.0).unwrap();
        let report = classify_standard(&torus).unwrap();
        assert_eq!(report.kind, "standard");
        assert_eq!(report.inputs["major"], 2.0);
        assert!((report.tau.im - 1.0 / 3.0f64.sqrt()).abs() < 1e-15);
        // i / sqrt(3) inverts to i sqrt(3).
        assert!((report.tau_reduced.im - 3.0f64.sqrt()).abs() < 1e-12);
        assert_eq!(report.witness, [0, -1, 1, 0]);
        assert!(report.j.im.abs() < 1e-8, "axis classes have real j");
        assert!((report.diagnostics["omega"] - 3.6275987284684357).abs() < 1e-12);
        assert!(report.diagnostics["max_conformality_residual"] < 1e-6);
    }

    #[test]
    fn circle_bundle_matches_the_corresponding_revolution_torus() {
        // t = 3/5 gives tau = 9/25 + 12/25 i, the class of the
        // revolution torus with aspect 5/4.
        let hopf_report = classify_hopf_circle(0.6, 4096).unwrap();
        let std_report =
            classify_standard(&StandardTorus::new(5.0, 4.0).unwrap()).unwrap();
        assert!((hopf_report.tau.re - 0.36).abs() < 1e-6);
        assert!((hopf_report.tau.im - 0.48).abs() < 1e-6);
        assert!((hopf_report.tau_reduced.re - std_report.tau_reduced.re).abs() < 1e-6);
        assert!((hopf_report.tau_reduced.im - std_report.tau_reduced.im).abs() < 1e-6);
        let dj = ((hopf_report.j.re - std_report.j.re).powi(2)
            + (hopf_report.j.im - std_report.j.im).powi(2))
        .sqrt();
        assert!(dj < 1e-2, "j distance {dj}");
        assert!(hopf_report.diagnostics["holonomy_area_residual"] < 1e-9);
        assert!(hopf_report.diagnostics["isoperimetric_defect"].abs() < 1e-4);
    }

    #[test]
    fn witness_in_report_maps_first_to_second() {
        let t1 = StandardTorus::new(2.0, 1.0).unwrap().tau().unwrap();
        let t2 = ProductMetric::new(1.0, 3.0).unwrap().tau().unwrap();
        let report = equivalence_report(t1, t2, 1e-9).unwrap();
        assert!(report.equivalent);
        assert!(report.j_distance < 1e-8);
        let w = report.witness.expect("equivalent classes carry a witness");
        let m = crate::modular::Unimodular::new(w[0], w[1], w[2], w[3]).unwrap();
        let moved = mobius_apply(&m, t1);
        assert!((moved.re() - t2.re()).abs() < 1e-9);
        assert!((moved.im() - t2.im()).abs() < 1e-9);
    }

    #[test]
    fn distinct_classes_are_reported_apart() {
        let t1 = StandardTorus::new(2.0, 1.0).unwrap().tau().unwrap();
        let t2 = StandardTorus::new(3.0, 1.0).unwrap().tau().unwrap();
        let report = equivalence_report(t1, t2, 1e-9).unwrap();
        assert!(!report.equivalent);
        assert!(report.witness.is_none());
        assert!(report.j_distance > 1.0);
    }
}
