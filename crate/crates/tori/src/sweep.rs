//! Parameter sweeps over the torus families.
//!
//! A sweep classifies every point of an evenly spaced parameter range
//! and returns the reports in order. Points are independent, so the
//! whole range is mapped through the crate's parallel layer.

use crate::error::{Error, Result};
use crate::par;
use crate::product::ProductMetric;
use crate::report::{self, ClassReport};
use crate::standard::StandardTorus;

/// Vertex count of the latitude circles used by circle-family sweeps.
pub const SWEEP_CIRCLE_SAMPLES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    /// Tori of revolution with minor radius 1, parameter = aspect.
    Standard,
    /// Product metrics `d theta^2 + p d phi^2`, parameter = `p`.
    Product,
    /// Circle-bundle tori over latitude circles, parameter = `t`.
    HopfCircle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub parameter: f64,
    pub report: ClassReport,
}

fn classify(kind: SweepKind, parameter: f64) -> Result<ClassReport> {
    match kind {
        SweepKind::Standard => {
            report::classify_standard(&StandardTorus::new(parameter, 1.0)?)
        }
        SweepKind::Product => report::classify_product(&ProductMetric::new(1.0, parameter)?),
        SweepKind::HopfCircle => report::classify_hopf_circle(parameter, SWEEP_CIRCLE_SAMPLES),
    }
}

/// Classify `count` evenly spaced parameters from `start` to `stop`
/// inclusive. Every point must be valid for the family; the first
/// invalid one aborts the sweep.
pub fn sweep(kind: SweepKind, start: f64, stop: f64, count: usize) -> Result<Vec<SweepPoint>> {
    if !start.is_finite() || !stop.is_finite() {
        return Err(Error::domain(format!("sweep range [{start}, {stop}] must be finite")));
    }
    if count < 2 {
        return Err(Error::domain(format!("sweep needs at least 2 points, got {count}")));
    }
    let step = (stop - start) / (count - 1) as f64;
    let params: Vec<f64> = (0..count).map(|k| start + step * k as f64).collect();
    let reports = par::try_map(&params, |&p| classify(kind, p))?;
    Ok(params
        .into_iter()
        .zip(reports)
        .map(|(parameter, report)| SweepPoint { parameter, report })
        .collect())
}
