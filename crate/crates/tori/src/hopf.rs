//! Circle-bundle tori over closed spherical curves.
//!
//! The map `q -> tilde(q) q` sends the unit quaternions onto the unit
//! sphere of `span{1, j, k}`, with circle fibers `e^{i s} q`. The
//! preimage of a closed curve is a torus; its conformal class is read
//! off from two scalars of the base curve, the enclosed signed area `A`
//! and the length `L`, as `tau = (A + i L) / (4 pi)`.
//!
//! Orientation conventions are fixed once and used everywhere: the
//! signed area of a curve is the area of the component lying to the
//! right of the direction of travel (measured with outward normals),
//! normalized to `[-2 pi, 2 pi)`, and the holonomy of the horizontal
//! lift then satisfies `delta = A / 2` on the matching window
//! `[-pi, pi)`. Both facts are exercised by tests rather than assumed.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::modular::Tau as Modulus;
use crate::numerics::solve_ivp;
use crate::par;
use crate::quaternion::Quaternion;

/// How far a raw point may sit from the unit sphere before it is
/// rejected instead of renormalized.
pub const UNIT_TOL: f64 = 1e-6;

/// Consecutive vertices closer than this angle are treated as
/// duplicates.
const DUPLICATE_GAP: f64 = 1e-12;

/// Consecutive vertices this close to antipodal leave the connecting
/// geodesic ill-defined.
const ANTIPODAL_GAP: f64 = 1e-9;

/// How far a quaternion may sit from the unit three-sphere before
/// projection refuses it.
const PROJECT_UNIT_TOL: f64 = 1e-9;

/// How far the projection of a caller-supplied starting fiber point
/// may sit from the first curve vertex.
const LIFT_START_TOL: f64 = 1e-8;

/// Cap on the accumulated phase correction of a lift; the per-edge
/// transport is horizontal by construction, so anything larger than
/// rounding noise signals a broken input.
const LIFT_DRIFT_LIMIT: f64 = 1e-5;

/// Vertex count of the internal circle lift sampled by
/// [`hopf_cover_metric_check`]; chosen so the centered differences
/// along the lift are well below the certification threshold.
pub const COVER_LIFT_SAMPLES: usize = 16_384;

/// Step for the centered differences in the fiber direction of the
/// metric check.
pub const COVER_PHI_STEP: f64 = 1e-4;

/// A point on the unit sphere of `span{1, j, k}`, stored by its three
/// coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    c1: f64,
    cj: f64,
    ck: f64,
}

impl SpherePoint {
    /// Accepts a vector within [`UNIT_TOL`] of unit length and
    /// renormalizes it exactly onto the sphere.
    pub fn new(c1: f64, cj: f64, ck: f64) -> Result<Self> {
        if !(c1.is_finite() && cj.is_finite() && ck.is_finite()) {
            return Err(Error::InvalidCurve(format!(
                "point ({c1}, {cj}, {ck}) has non-finite coordinates"
            )));
        }
        let norm = (c1 * c1 + cj * cj + ck * ck).sqrt();
        if (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::InvalidCurve(format!(
                "point ({c1}, {cj}, {ck}) has norm {norm}, more than {UNIT_TOL} from 1"
            )));
        }
        Ok(SpherePoint { c1: c1 / norm, cj: cj / norm, ck: ck / norm })
    }

    pub(crate) fn raw_normalized(c1: f64, cj: f64, ck: f64) -> Self {
        let norm = (c1 * c1 + cj * cj + ck * ck).sqrt();
        SpherePoint { c1: c1 / norm, cj: cj / norm, ck: ck / norm }
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn cj(&self) -> f64 {
        self.cj
    }

    pub fn ck(&self) -> f64 {
        self.ck
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.c1, self.cj, self.ck]
    }

    pub fn dot(&self, other: &SpherePoint) -> f64 {
        self.c1 * other.c1 + self.cj * other.cj + self.ck * other.ck
    }

    /// Geodesic distance, computed through the chord so that small
    /// separations lose no precision.
    pub fn angle_to(&self, other: &SpherePoint) -> f64 {
        let d1 = self.c1 - other.c1;
        let dj = self.cj - other.cj;
        let dk = self.ck - other.ck;
        let half_chord = 0.5 * (d1 * d1 + dj * dj + dk * dk).sqrt();
        2.0 * half_chord.clamp(0.0, 1.0).asin()
    }

}

/// A closed geodesic polygon on the sphere. Vertices are connected by
/// minor arcs, the last back to the first.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereCurve {
    points: Vec<SpherePoint>,
}

impl SphereCurve {
    /// Requires at least three vertices, no duplicate neighbors, and
    /// no antipodal neighbors (their connecting arc is ambiguous).
    pub fn new(points: Vec<SpherePoint>) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::InvalidCurve(format!(
                "a closed curve needs at least 3 vertices, got {}",
                points.len()
            )));
        }
        for k in 0..points.len() {
            let next = &points[(k + 1) % points.len()];
            let gap = points[k].angle_to(next);
            if gap < DUPLICATE_GAP {
                return Err(Error::InvalidCurve(format!(
                    "vertices {k} and {} coincide",
                    (k + 1) % points.len()
                )));
            }
            if gap > PI - ANTIPODAL_GAP {
                return Err(Error::InvalidCurve(format!(
                    "vertices {k} and {} are antipodal",
                    (k + 1) % points.len()
                )));
            }
        }
        Ok(SphereCurve { points })
    }

    /// Latitude circle in the `(j, k)` plane at height `2 t^2 - 1`,
    /// sampled by `n` vertices with increasing fiber-compatible angle.
    pub fn circle(t: f64, n: usize) -> Result<Self> {
        if !(t.is_finite() && t > 0.0 && t < 1.0) {
            return Err(Error::domain(format!("circle parameter must lie in (0, 1), got {t}")));
        }
        if n < 16 {
            return Err(Error::domain(format!(
                "a sampled circle needs at least 16 vertices, got {n}"
            )));
        }
        let height = 2.0 * t * t - 1.0;
        let radius = 2.0 * t * (1.0 - t * t).sqrt();
        let points = (0..n)
            .map(|k| {
                let ang = TAU * k as f64 / n as f64;
                SpherePoint::raw_normalized(height, radius * ang.cos(), radius * ang.sin())
            })
            .collect();
        SphereCurve::new(points)
    }

    pub fn points(&self) -> &[SpherePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Same vertex cycle walked the other way.
    pub fn reversed(&self) -> SphereCurve {
        let mut points = self.points.clone();
        points.reverse();
        SphereCurve { points }
    }

    /// Total geodesic length.
    pub fn length(&self) -> f64 {
        (0..self.points.len())
            .map(|k| self.points[k].angle_to(&self.points[(k + 1) % self.points.len()]))
            .sum()
    }

    /// Signed enclosed area: the area of the component to the right of
    /// the direction of travel, in `[-2 pi, 2 pi)`.
    ///
    /// For an embedded geodesic polygon the turning angles determine
    /// the left component as `2 pi - sum`, hence the right one as
    /// `2 pi + sum`, which is then normalized. Self-intersecting
    /// curves do not split the sphere into two components; for those
    /// the result is the turning-angle expression, which matches the
    /// winding-weighted area only up to full turns.
    pub fn signed_area(&self) -> f64 {
        let n = self.points.len();
        let mut turn_sum = 0.0;
        for k in 0..n {
            let prev = &self.points[(k + n - 1) % n];
            let here = &self.points[k];
            let next = &self.points[(k + 1) % n];
            // Tangents of the incoming and outgoing arcs at the vertex.
            let cos_in = prev.dot(here);
            let cos_out = here.dot(next);
            let t_in = [
                cos_in * here.c1 - prev.c1,
                cos_in * here.cj - prev.cj,
                cos_in * here.ck - prev.ck,
            ];
            let t_out = [
                next.c1 - cos_out * here.c1,
                next.cj - cos_out * here.cj,
                next.ck - cos_out * here.ck,
            ];
            let cross = [
                t_in[1] * t_out[2] - t_in[2] * t_out[1],
                t_in[2] * t_out[0] - t_in[0] * t_out[2],
                t_in[0] * t_out[1] - t_in[1] * t_out[0],
            ];
            let along_normal = cross[0] * here.c1 + cross[1] * here.cj + cross[2] * here.ck;
            let dot = t_in[0] * t_out[0] + t_in[1] * t_out[1] + t_in[2] * t_out[2];
            turn_sum += along_normal.atan2(dot);
        }
        normalize_area(TAU + turn_sum)
    }
}

/// Projection onto the base sphere: the coefficients of
/// `tilde(q) q = (w^2 + x^2 - y^2 - z^2) + 2(w y + x z) j + 2(w z - x y) k`.
/// The `i` coefficient of that product vanishes identically. The input
/// must sit on the unit three-sphere to within `1e-9`.
pub fn hopf_project(q: &Quaternion) -> Result<SpherePoint> {
    let norm = q.norm();
    if !norm.is_finite() || (norm - 1.0).abs() > PROJECT_UNIT_TOL {
        return Err(Error::domain(format!(
            "projection needs a unit quaternion, got one of norm {norm}"
        )));
    }
    Ok(project_unit(q))
}

/// Projection without the unit-norm gate, for internal states that are
/// renormalized by construction.
fn project_unit(q: &Quaternion) -> SpherePoint {
    SpherePoint::raw_normalized(
        q.w * q.w + q.x * q.x - q.y * q.y - q.z * q.z,
        2.0 * (q.w * q.y + q.x * q.z),
        2.0 * (q.w * q.z - q.x * q.y),
    )
}

/// One point in the fiber over `p`. Built from `(1 + p)` when `p` is
/// away from `-1`, otherwise routed through the `j`-translate so the
/// formula never degenerates.
pub fn initial_lift(p: &SpherePoint) -> Quaternion {
    if p.c1 >= -0.5 {
        let scale = (2.0 * (1.0 + p.c1)).sqrt();
        Quaternion::new((1.0 + p.c1) / scale, 0.0, p.cj / scale, p.ck / scale)
    } else {
        // Right multiplication by j maps the fiber over
        // (-c1, -cj, ck) onto the fiber over (c1, cj, ck).
        let scale = (2.0 * (1.0 - p.c1)).sqrt();
        let base = Quaternion::new((1.0 - p.c1) / scale, 0.0, -p.cj / scale, p.ck / scale);
        base * Quaternion::J
    }
}

/// The doubly periodic parametrization of the torus over a latitude
/// circle: `t e^{i theta} + sqrt(1 - t^2) e^{i phi} j`. Left
/// multiplication by `e^{i s}` shifts both angles by `s` exactly.
pub fn product_embedding(t: f64, theta: f64, phi: f64) -> Result<Quaternion> {
    if !(t.is_finite() && t > 0.0 && t < 1.0) {
        return Err(Error::domain(format!("parameter must lie in (0, 1), got {t}")));
    }
    let r = (1.0 - t * t).sqrt();
    Ok(Quaternion::exp_i(theta) * t + Quaternion::exp_i(phi) * Quaternion::J * r)
}

/// Horizontal lift of a closed curve, one fiber point per vertex plus
/// the closing point over the first vertex again.
#[derive(Debug, Clone)]
pub struct LiftResult {
    /// Cumulative base arc length at each state, from 0 to the curve
    /// length.
    pub arc_lengths: Vec<f64>,
    /// Lift points; `states.len() == curve.len() + 1`.
    pub states: Vec<Quaternion>,
    /// Fiber rotation from the first state to the last, in
    /// `[-pi, pi)`.
    pub holonomy_delta: f64,
    /// Length of the lifted path; half the base length.
    pub lift_length: f64,
    /// Accumulated phase correction, a certificate that the transport
    /// stayed horizontal.
    pub phase_drift: f64,
}

/// Transport the fiber point `eta0` around the curve, edge by edge.
/// `eta0` must project onto the first vertex to within `1e-8`; any
/// point of that fiber works, and [`initial_lift`] supplies one.
///
/// Each edge is lifted by aligning the fiber phase over the far vertex
/// to maximize overlap with the current state; the great-circle arc
/// between the two states is then the horizontal geodesic over the
/// base arc (it meets every fiber orthogonally). A two-step
/// integration of the connection form along the arc measures any
/// residual vertical motion and applies it as a correction; for a
/// healthy lift the correction is rounding noise, and its accumulated
/// size is reported and capped.
pub fn horizontal_lift(curve: &SphereCurve, eta0: &Quaternion) -> Result<LiftResult> {
    let verts = curve.points();
    let n = verts.len();
    let start = eta0.normalized();
    let start_gap = project_unit(&start).angle_to(&verts[0]);
    if start_gap.is_nan() || start_gap > LIFT_START_TOL {
        return Err(Error::domain(format!(
            "starting fiber point projects {start_gap} away from the first vertex, \
             more than {LIFT_START_TOL}"
        )));
    }
    let mut states = Vec::with_capacity(n + 1);
    let mut arc_lengths = Vec::with_capacity(n + 1);
    let mut cur = start;
    states.push(cur);
    arc_lengths.push(0.0);
    let mut drift = 0.0f64;
    let mut base_len = 0.0f64;

    for k in 0..n {
        let target = &verts[(k + 1) % n];
        base_len += verts[k].angle_to(target);
        let raw = initial_lift(target);
        let align = cur.dot(&(Quaternion::I * raw)).atan2(cur.dot(&raw));
        let mut next = (Quaternion::exp_i(align) * raw).normalized();

        // Connection form along the arc from cur to next; vanishes for
        // a horizontal path, so the integral is a certificate.
        let gap = 2.0 * (0.5 * (next - cur).norm()).clamp(0.0, 1.0).asin();
        if gap > 1e-9 {
            let sin_gap = gap.sin();
            let field = move |u: f64, _y: &[f64]| {
                let here = cur * (((1.0 - u) * gap).sin() / sin_gap)
                    + next * ((u * gap).sin() / sin_gap);
                let vel = cur * (-gap * ((1.0 - u) * gap).cos() / sin_gap)
                    + next * (gap * (u * gap).cos() / sin_gap);
                vec![-vel.dot(&(Quaternion::I * here))]
            };
            let phase = solve_ivp(field, &[0.0], 0.0, 1.0, 2)?.final_state()[0];
            drift += phase.abs();
            if drift > LIFT_DRIFT_LIMIT {
                return Err(Error::LiftDiverged { drift, limit: LIFT_DRIFT_LIMIT });
            }
            if phase != 0.0 {
                next = (Quaternion::exp_i(phase) * next).normalized();
            }
        }
        states.push(next);
        arc_lengths.push(base_len);
        cur = next;
    }

    let first = states[0];
    let last = *states.last().expect("at least one state");
    let holonomy_delta =
        wrap_angle(last.dot(&(Quaternion::I * first)).atan2(last.dot(&first)));
    let lift_length = states
        .windows(2)
        .map(|w| 2.0 * (0.5 * (w[1] - w[0]).norm()).clamp(0.0, 1.0).asin())
        .sum();

    Ok(LiftResult { arc_lengths, states, holonomy_delta, lift_length, phase_drift: drift })
}

/// Fold an angle into `[-pi, pi)`; `pi` itself maps to `-pi`.
pub fn wrap_angle(x: f64) -> f64 {
    let mut w = x - TAU * ((x + PI) / TAU).floor();
    if w >= PI {
        w -= TAU;
    }
    if w < -PI {
        w += TAU;
    }
    w
}

/// Fold an area into the signed window `[-2 pi, 2 pi)`; the two
/// components of the sphere complement differ by a full `4 pi`.
pub fn normalize_area(a: f64) -> f64 {
    let mut w = a - 2.0 * TAU * ((a + TAU) / (2.0 * TAU)).floor();
    if w >= TAU {
        w -= 2.0 * TAU;
    }
    if w < -TAU {
        w += 2.0 * TAU;
    }
    w
}

/// Fold an area into `[0, 4 pi)`.
pub fn fold_area(a: f64) -> f64 {
    let mut w = a - 2.0 * TAU * (a / (2.0 * TAU)).floor();
    if w < 0.0 {
        w += 2.0 * TAU;
    }
    if w >= 2.0 * TAU {
        w -= 2.0 * TAU;
    }
    w
}

/// Modulus of the torus over a curve of length `length` enclosing the
/// signed area `area`: `(area + i length) / (4 pi)`.
///
/// The area enters only modulo `4 pi` as far as the conformal class is
/// concerned (shifting it by `4 pi` moves the modulus by a full unit),
/// so any representative of the enclosed area yields the same class.
pub fn tau_hopf(length: f64, area: f64) -> Result<Modulus> {
    if !area.is_finite() || !length.is_finite() {
        return Err(Error::domain(format!("area {area} and length {length} must be finite")));
    }
    if length <= 0.0 {
        return Err(Error::domain(format!("length must be positive, got {length}")));
    }
    Modulus::new(area / (2.0 * TAU), length / (2.0 * TAU))
}

/// Spherical isoperimetric defect `(A/2 - pi)^2 + (L/2)^2 - pi^2`.
///
/// Nonnegative for the length and enclosed area of any embedded closed
/// curve, and zero exactly on circles. The sharp case needs the
/// enclosed-area representative in `[0, 4 pi)` (see [`fold_area`]);
/// representatives from the signed window stay on the nonnegative side
/// regardless.
pub fn isoperimetric_defect(length: f64, area: f64) -> f64 {
    let half_area = 0.5 * area;
    let half_length = 0.5 * length;
    (half_area - PI) * (half_area - PI) + half_length * half_length - PI * PI
}

/// Certifies that sweeping the computed lift of a latitude circle
/// around the fiber parametrizes its torus isometrically over a flat
/// rectangle.
///
/// The lift `eta(u)` of the circle with parameter `t` is computed once
/// and extended to the map `chi(u, phi) = e^{i phi} eta(u)`, with `u`
/// the arc length along the lift. Centered differences on a
/// `grid x grid` set of sites sample the three metric coefficients of
/// `chi`, which must be `(1, 1, 0)`; the returned value is the largest
/// deviation. It stays below `1e-4` when the transport is horizontal
/// and the fiber action is by isometries.
pub fn hopf_cover_metric_check(t: f64, grid: usize) -> Result<f64> {
    if !(t.is_finite() && t > 0.0 && t < 1.0) {
        return Err(Error::domain(format!("parameter must lie in (0, 1), got {t}")));
    }
    if grid < 2 {
        return Err(Error::domain(format!("the check needs a grid of at least 2x2, got {grid}")));
    }
    let curve = SphereCurve::circle(t, COVER_LIFT_SAMPLES)?;
    let lift = horizontal_lift(&curve, &initial_lift(&curve.points()[0]))?;
    let states = lift.states;
    let sites: Vec<(usize, f64)> = (0..grid * grid)
        .map(|k| {
            let (i, j) = (k / grid, k % grid);
            // Interior sample indices, spread over the whole lift.
            let idx = 1 + i * (COVER_LIFT_SAMPLES - 2) / (grid - 1);
            (idx, TAU * j as f64 / grid as f64)
        })
        .collect();
    let arc3 = |a: &Quaternion, b: &Quaternion| 2.0 * (0.5 * (*b - *a).norm()).clamp(0.0, 1.0).asin();
    let deviations = par::try_map(&sites, |&(idx, phi)| {
        let prev = states[idx - 1];
        let here = states[idx];
        let next = states[idx + 1];
        let span = arc3(&prev, &here) + arc3(&here, &next);
        let du = (Quaternion::exp_i(phi) * (next - prev)).scale(1.0 / span);
        let dphi = ((Quaternion::exp_i(phi + COVER_PHI_STEP)
            - Quaternion::exp_i(phi - COVER_PHI_STEP))
            * here)
            .scale(0.5 / COVER_PHI_STEP);
        let e = du.dot(&du);
        let f = du.dot(&dphi);
        let g = dphi.dot(&dphi);
        Ok((e - 1.0).abs().max(f.abs()).max((g - 1.0).abs()))
    })?;
    Ok(deviations.into_iter().fold(0.0, f64::max))
}
