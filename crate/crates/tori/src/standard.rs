//! Tori of revolution in Euclidean 3-space.
//!
//! A torus with major radius `R` and minor radius `r < R` is swept by
//! the angles `(theta, phi)`. Arc length along the profile circle,
//! rescaled by the isothermal change of variable
//! `s = F(phi) = integral of 1/(a + cos x)` with `a = R/r`, turns the
//! induced metric into a conformal multiple of `d theta^2 + d s^2`, so
//! the conformal class is the lattice spanned by `2 pi` and
//! `i omega(a)`, i.e. the modulus `i / sqrt(a^2 - 1)`.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::modular::Tau;
use crate::numerics::integrate;
use crate::par;

/// Finite-difference step for metric sampling. Chosen so truncation
/// (`h^2`) and the inversion noise (`tol / h`) are both far below the
/// residual tolerances used by callers.
const METRIC_STEP: f64 = 1e-4;

/// Inversion tolerance used inside metric sampling, independent of the
/// caller's reporting tolerance.
const METRIC_INV_TOL: f64 = 1e-12;

/// Conformal period of the profile circle: `2 pi / sqrt(a^2 - 1)`,
/// the total integral of `1 / (a + cos x)` over one turn.
pub fn omega(aspect: f64) -> Result<f64> {
    if !(aspect.is_finite() && aspect > 1.0) {
        return Err(Error::domain(format!("aspect ratio must exceed 1, got {aspect}")));
    }
    Ok(TAU / (aspect * aspect - 1.0).sqrt())
}

/// First fundamental form of the covering map at a point, sampled by
/// central finite differences of the realized map itself.
#[derive(Debug, Clone, Copy)]
pub struct MetricSample {
    /// Coefficient of `d theta^2`.
    pub e: f64,
    /// Mixed coefficient.
    pub f: f64,
    /// Coefficient of `d s^2`.
    pub g: f64,
}

impl MetricSample {
    /// Deviation from a conformal metric, scale free:
    /// `max(|e - g| / e, |f| / e)`. Zero iff angles are preserved.
    pub fn conformality_residual(&self) -> f64 {
        ((self.e - self.g).abs() / self.e).max(self.f.abs() / self.e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardTorus {
    major: f64,
    minor: f64,
}

impl StandardTorus {
    pub fn new(major: f64, minor: f64) -> Result<Self> {
        if !major.is_finite() || !minor.is_finite() {
            return Err(Error::domain(format!("radii must be finite, got R = {major}, r = {minor}")));
        }
        if minor <= 0.0 {
            return Err(Error::domain(format!("minor radius must be positive, got {minor}")));
        }
        if major <= minor {
            return Err(Error::domain(format!(
                "major radius must exceed minor radius, got R = {major}, r = {minor}"
            )));
        }
        Ok(StandardTorus { major, minor })
    }

    pub fn major(&self) -> f64 {
        self.major
    }

    pub fn minor(&self) -> f64 {
        self.minor
    }

    /// Aspect ratio `a = R / r > 1`.
    pub fn aspect(&self) -> f64 {
        self.major / self.minor
    }

    /// Point of the surface at angles `(theta, phi)`.
    pub fn embed(&self, theta: f64, phi: f64) -> [f64; 3] {
        let ring = self.major + self.minor * phi.cos();
        [ring * theta.cos(), ring * theta.sin(), self.minor * phi.sin()]
    }

    /// First fundamental form in the angle coordinates, which depends
    /// on `phi` only: `(R + r cos phi)^2 d theta^2 + r^2 d phi^2`.
    pub fn pullback_metric(&self, phi: f64) -> MetricSample {
        let ring = self.major + self.minor * phi.cos();
        MetricSample { e: ring * ring, f: 0.0, g: self.minor * self.minor }
    }

    /// Isothermal coordinate `F(phi)`, the integral of
    /// `1 / (a + cos x)` from 0 to `phi`.
    ///
    /// Whole turns are peeled off through the quasi-period
    /// `F(phi + 2 pi m) = F(phi) + m omega(a)`, so only a remainder in
    /// `[-pi, pi]` is ever integrated.
    pub fn isothermal(&self, phi: f64, tol: f64) -> Result<f64> {
        if !phi.is_finite() {
            return Err(Error::domain(format!("angle must be finite, got {phi}")));
        }
        let a = self.aspect();
        let turns = (phi / TAU).round();
        let rem = phi - TAU * turns;
        let f = |x: f64| 1.0 / (a + x.cos());
        let local = if rem >= 0.0 {
            integrate(f, 0.0, rem, tol)?.value
        } else {
            -integrate(f, rem, 0.0, tol)?.value
        };
        Ok(local + turns * omega(a)?)
    }

    /// Inverse of [`Self::isothermal`]: the angle `phi` with
    /// `F(phi) = s`, to residual `tol` in `s`.
    pub fn isothermal_inverse(&self, s: f64, tol: f64) -> Result<f64> {
        if !s.is_finite() {
            return Err(Error::domain(format!("coordinate must be finite, got {s}")));
        }
        let period = omega(self.aspect())?;
        let turns = (s / period).floor();
        let rem = s - turns * period;
        // rem lies in [0, period); F maps [0, 2 pi] onto [0, period].
        let phi = crate::numerics::invert_monotone(
            |x| self.isothermal(x, (tol * 0.1).min(1e-13)),
            rem.min(period),
            0.0,
            TAU,
            tol,
        )?;
        Ok(phi + TAU * turns)
    }

    /// Conformal modulus `i / sqrt(a^2 - 1)` of the lattice
    /// `(2 pi, i omega(a))`.
    pub fn tau(&self) -> Result<Tau> {
        let a = self.aspect();
        Tau::new(0.0, 1.0 / (a * a - 1.0).sqrt())
    }

    /// Conformal covering of the plane by the surface: `theta` is used
    /// directly, `s` through the inverse isothermal coordinate.
    pub fn covering_map(&self, theta: f64, s: f64, tol: f64) -> Result<[f64; 3]> {
        Ok(self.embed(theta, self.isothermal_inverse(s, tol)?))
    }

    /// Metric of [`Self::covering_map`] at `(theta, s)`, measured by
    /// central differences with step [`METRIC_STEP`] so that no analytic
    /// cancellation can mask a wrong inverse.
    pub fn covering_metric(&self, theta: f64, s: f64) -> Result<MetricSample> {
        let h = METRIC_STEP;
        let tol = METRIC_INV_TOL;
        let pt = self.covering_map(theta + h, s, tol)?;
        let mt = self.covering_map(theta - h, s, tol)?;
        let ps = self.covering_map(theta, s + h, tol)?;
        let ms = self.covering_map(theta, s - h, tol)?;
        let mut dt = [0.0; 3];
        let mut ds = [0.0; 3];
        for i in 0..3 {
            dt[i] = (pt[i] - mt[i]) / (2.0 * h);
            ds[i] = (ps[i] - ms[i]) / (2.0 * h);
        }
        let dot = |u: &[f64; 3], v: &[f64; 3]| u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
        Ok(MetricSample { e: dot(&dt, &dt), f: dot(&dt, &ds), g: dot(&ds, &ds) })
    }

    /// Deviation of the covering from angle preservation at one point.
    pub fn conformality_residual(&self, theta: f64, s: f64) -> Result<f64> {
        Ok(self.covering_metric(theta, s)?.conformality_residual())
    }

    /// Largest conformality residual over an `n x n` grid spanning one
    /// fundamental cell `[0, 2 pi) x [0, omega)`.
    pub fn max_conformality_residual(&self, n: usize) -> Result<f64> {
        if n == 0 {
            return Err(Error::domain("grid size must be positive".to_string()));
        }
        let period = omega(self.aspect())?;
        let points: Vec<(f64, f64)> = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                (TAU * i as f64 / n as f64, period * j as f64 / n as f64)
            })
            .collect();
        let defects = par::try_map(&points, |&(theta, s)| self.conformality_residual(theta, s))?;
        Ok(defects.into_iter().fold(0.0, f64::max))
    }

    /// The companion torus `(R, sqrt(R^2 - r^2))`, whose modulus is the
    /// inversion `-1/tau` of this one; the two surfaces share a
    /// conformal class.
    pub fn dual(&self) -> Result<StandardTorus> {
        let minor = (self.major * self.major - self.minor * self.minor).sqrt();
        StandardTorus::new(self.major, minor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const QTOL: f64 = 1e-12;

    fn torus(r_major: f64, r_minor: f64) -> StandardTorus {
        StandardTorus::new(r_major, r_minor).unwrap()
    }

    #[test]
    fn constructor_validation() {
        assert!(StandardTorus::new(1.0, 1.0).is_err());
        assert!(StandardTorus::new(1.0, 2.0).is_err());
        assert!(StandardTorus::new(2.0, 0.0).is_err());
        assert!(StandardTorus::new(2.0, -1.0).is_err());
        assert!(StandardTorus::new(f64::NAN, 1.0).is_err());
        assert!(StandardTorus::new(2.0, 1.0).is_ok());
    }

    #[test]
    fn omega_matches_frozen_value_for_aspect_two() {
        // Same integral as the trapezoid-checked quadrature fixture.
        assert!((omega(2.0).unwrap() - 3.6275987284684357).abs() < 1e-15);
        assert!(omega(1.0).is_err());
        assert!(omega(0.5).is_err());
    }

    #[test]
    fn isothermal_matches_arctangent_antiderivative() {
        // For |phi| < pi the integral has the elementary form
        // 2 / sqrt(a^2 - 1) * atan( sqrt((a-1)/(a+1)) tan(phi/2) ).
        for &a in &[1.5, 2.0, 5.0] {
            let t = torus(a, 1.0);
            let root = (a * a - 1.0).sqrt();
            let k = ((a - 1.0) / (a + 1.0)).sqrt();
            for &phi in &[-2.9f64, -1.2, 0.0, 0.3, 1.0, 2.5] {
                let exact = 2.0 / root * (k * (phi / 2.0).tan()).atan();
                let got = t.isothermal(phi, QTOL).unwrap();
                assert!((got - exact).abs() < 1e-10, "a = {a}, phi = {phi}: {got} vs {exact}");
            }
        }
    }

    #[test]
    fn isothermal_is_quasi_periodic_and_odd() {
        let t = torus(2.0, 1.0);
        let w = omega(2.0).unwrap();
        for &phi in &[0.0, 0.7, 2.0, -1.3] {
            let base = t.isothermal(phi, QTOL).unwrap();
            for m in [-2i32, 1, 3] {
                let shifted = t.isothermal(phi + TAU * m as f64, QTOL).unwrap();
                assert!((shifted - base - m as f64 * w).abs() < 1e-10);
            }
            let neg = t.isothermal(-phi, QTOL).unwrap();
            assert!((neg + base).abs() < 1e-12);
        }
    }

    #[test]
    fn inverse_round_trips() {
        let t = torus(3.0, 1.2);
        let w = omega(t.aspect()).unwrap();
        for &s in &[0.0, 0.1, w * 0.49, w * 0.9, w * 2.3, -w * 0.7] {
            let phi = t.isothermal_inverse(s, 1e-11).unwrap();
            let back = t.isothermal(phi, QTOL).unwrap();
            assert!((back - s).abs() < 1e-10, "s = {s}: back = {back}");
        }
        for &phi in &[0.4, 3.0, 9.0] {
            let s = t.isothermal(phi, QTOL).unwrap();
            let back = t.isothermal_inverse(s, 1e-11).unwrap();
            assert!((back - phi).abs() < 1e-9, "phi = {phi}: back = {back}");
        }
    }

    #[test]
    fn modulus_on_imaginary_axis() {
        let t = torus(2.0, 1.0);
        let tau = t.tau().unwrap();
        assert_eq!(tau.re(), 0.0);
        assert!((tau.im() - 1.0 / 3.0f64.sqrt()).abs() < 1e-15);
        // im(tau) is the period ratio omega / (2 pi).
        let ratio = omega(2.0).unwrap() / TAU;
        assert!((tau.im() - ratio).abs() < 1e-15);
    }

    #[test]
    fn embedding_lies_at_expected_radii() {
        let t = torus(2.0, 0.5);
        let p = t.embed(0.0, 0.0);
        assert_eq!(p, [2.5, 0.0, 0.0]);
        let q = t.embed(PI / 2.0, PI);
        assert!((q[0]).abs() < 1e-15 && (q[1] - 1.5).abs() < 1e-15 && q[2].abs() < 1e-15);
    }

    #[test]
    fn pullback_metric_matches_the_embedding_jacobian() {
        let h = 1e-5;
        for (t, phi) in [(torus(2.0, 1.0), 0.0), (torus(2.0, 1.0), 2.2), (torus(5.0, 3.0), 1.3)] {
            let m = t.pullback_metric(phi);
            // Closed form at the cardinal angles.
            if phi == 0.0 {
                assert_eq!(m.e, (t.major() + t.minor()) * (t.major() + t.minor()));
                assert_eq!(m.g, t.minor() * t.minor());
            }
            // Central-difference Jacobian of the embedding at an
            // arbitrary theta (the form cannot depend on it).
            let theta = 1.234;
            let num = |f: &dyn Fn(f64) -> [f64; 3]| {
                let p = f(h);
                let m = f(-h);
                [(p[0] - m[0]) / (2.0 * h), (p[1] - m[1]) / (2.0 * h), (p[2] - m[2]) / (2.0 * h)]
            };
            let dt = num(&|d| t.embed(theta + d, phi));
            let dp = num(&|d| t.embed(theta, phi + d));
            let dot = |u: [f64; 3], v: [f64; 3]| u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
            assert!((dot(dt, dt) - m.e).abs() < 1e-6);
            assert!((dot(dt, dp) - m.f).abs() < 1e-6);
            assert!((dot(dp, dp) - m.g).abs() < 1e-6);
        }
    }

    #[test]
    fn covering_is_doubly_periodic() {
        let t = torus(2.0, 1.0);
        let w = omega(2.0).unwrap();
        let base = t.covering_map(0.8, 0.3, 1e-12).unwrap();
        let shift_theta = t.covering_map(0.8 + TAU, 0.3, 1e-12).unwrap();
        let shift_s = t.covering_map(0.8, 0.3 + w, 1e-12).unwrap();
        for i in 0..3 {
            assert!((base[i] - shift_theta[i]).abs() < 1e-12);
            assert!((base[i] - shift_s[i]).abs() < 1e-9);
        }
    }

    #[test]
    fn covering_metric_is_conformal() {
        let t = torus(2.0, 1.0);
        let w = omega(2.0).unwrap();
        for &(theta, s) in &[(0.0, 0.1), (1.1, w * 0.4), (4.0, w * 0.85)] {
            let m = t.covering_metric(theta, s).unwrap();
            assert!(m.e > 0.0 && m.g > 0.0);
            let defect = m.conformality_residual();
            assert!(defect < 1e-6, "at ({theta}, {s}): defect {defect}");
        }
    }

    #[test]
    fn grid_residual_is_small() {
        let t = torus(2.0, 1.0);
        let worst = t.max_conformality_residual(6).unwrap();
        assert!(worst < 1e-6, "worst defect {worst}");
        assert!(t.max_conformality_residual(0).is_err());
    }

    #[test]
    fn dual_of_pythagorean_triples_is_exact() {
        assert_eq!(torus(5.0, 4.0).dual().unwrap(), torus(5.0, 3.0));
        assert_eq!(torus(13.0, 5.0).dual().unwrap(), torus(13.0, 12.0));
        assert_eq!(torus(10.0, 6.0).dual().unwrap(), torus(10.0, 8.0));
        // The construction is an involution; exact triples return
        // bitwise.
        let t = torus(5.0, 3.0);
        assert_eq!(t.dual().unwrap().dual().unwrap(), t);
    }

    #[test]
    fn dual_modulus_is_the_inversion() {
        let t = torus(3.0, 1.0);
        let prod = t.tau().unwrap().im() * t.dual().unwrap().tau().unwrap().im();
        assert!((prod - 1.0).abs() < 1e-12);
    }
}
