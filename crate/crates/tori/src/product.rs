//! Flat product tori.
//!
//! The metric `c_theta d theta^2 + c_phi d phi^2` on the square torus
//! `[0, 2 pi)^2` is flat; its lattice is spanned by
//! `2 pi sqrt(c_theta)` and `2 pi i sqrt(c_phi)`, giving the modulus
//! `i sqrt(c_phi / c_theta)`. Scaling the metric leaves the class
//! untouched and swapping the factors inverts the modulus.

use crate::error::{Error, Result};
use crate::modular::Tau;
use crate::standard::StandardTorus;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductMetric {
    theta_coeff: f64,
    phi_coeff: f64,
}

impl ProductMetric {
    pub fn new(theta_coeff: f64, phi_coeff: f64) -> Result<Self> {
        for (name, v) in [("theta", theta_coeff), ("phi", phi_coeff)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain(format!(
                    "{name} coefficient must be positive and finite, got {v}"
                )));
            }
        }
        Ok(ProductMetric { theta_coeff, phi_coeff })
    }

    pub fn theta_coeff(&self) -> f64 {
        self.theta_coeff
    }

    pub fn phi_coeff(&self) -> f64 {
        self.phi_coeff
    }

    /// Modulus `i sqrt(c_phi / c_theta)` of the rectangular lattice.
    pub fn tau(&self) -> Result<Tau> {
        Tau::new(0.0, (self.phi_coeff / self.theta_coeff).sqrt())
    }

    /// The flat model conformally equivalent to a torus of revolution:
    /// coefficients `(a^2 - 1, 1)` for aspect ratio `a`, so the two
    /// moduli agree without any reduction step.
    pub fn from_standard(torus: &StandardTorus) -> Result<Self> {
        let a = torus.aspect();
        ProductMetric::new(a * a - 1.0, 1.0)
    }

    /// Exchange the two factors. The modulus maps to `-1/tau`, so the
    /// swap stays inside the conformal class.
    pub fn swapped(&self) -> ProductMetric {
        ProductMetric { theta_coeff: self.phi_coeff, phi_coeff: self.theta_coeff }
    }

    /// Multiply the whole metric by `lambda > 0`.
    pub fn scaled(&self, lambda: f64) -> Result<ProductMetric> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::domain(format!("scale must be positive and finite, got {lambda}")));
        }
        ProductMetric::new(self.theta_coeff * lambda, self.phi_coeff * lambda)
    }

    /// Relative drift of the modulus under scaling by `lambda`;
    /// identically zero in exact arithmetic.
    pub fn scale_drift(&self, lambda: f64) -> Result<f64> {
        let base = self.tau()?.im();
        let scaled = self.scaled(lambda)?.tau()?.im();
        Ok((scaled / base - 1.0).abs())
    }

    /// Whether scaling the whole metric by `lambda` stays inside the
    /// conformal class, decided through equivalence of the two moduli.
    /// True for every valid `lambda` since only the coefficient ratio
    /// enters the modulus.
    pub fn scale_invariance_check(&self, lambda: f64) -> Result<bool> {
        let witness =
            crate::modular::is_equivalent(self.tau()?, self.scaled(lambda)?.tau()?, 1e-9)?;
        Ok(witness.is_some())
    }
}
