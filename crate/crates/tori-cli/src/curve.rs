//! Reading closed spherical curves from JSON files.
//!
//! The file format is a single object `{"points": [[c1, cj, ck], ...]}`.
//! Closure is implicit: the last vertex connects back to the first, so
//! the first point must not be repeated at the end. Points are
//! renormalized onto the sphere when within the library tolerance of
//! unit length and rejected otherwise.

use std::path::Path;

use serde::Deserialize;
use tori::{SphereCurve, SpherePoint};

use crate::error::CliError;

#[derive(Debug, Deserialize)]
struct CurveFile {
    points: Vec<[f64; 3]>,
}

/// Load and validate a curve file. Read failures are I/O errors,
/// everything after a successful read is a validation error.
pub fn load_sphere_curve(path: &Path) -> Result<SphereCurve, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| CliError::io(format!("cannot read {}: {err}", path.display())))?;
    let parsed: CurveFile = serde_json::from_str(&text).map_err(|err| {
        CliError::validation(format!("malformed curve file {}: {err}", path.display()))
    })?;
    let mut points = Vec::with_capacity(parsed.points.len());
    for (index, [c1, cj, ck]) in parsed.points.iter().copied().enumerate() {
        let point = SpherePoint::new(c1, cj, ck)
            .map_err(|err| CliError::validation(format!("point {index}: {err}")))?;
        points.push(point);
    }
    Ok(SphereCurve::new(points)?)
}
