//! Minimal quaternion arithmetic for the 3-sphere.
//!
//! Multiplication follows the Hamilton convention `i j = k`. The unit
//! sphere in this algebra carries the circle action `q -> e^{i s} q`,
//! and the projection in [`crate::hopf`] is built from the involution
//! [`Quaternion::tilde`] rather than plain conjugation.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    /// `e^{i t} = cos t + i sin t` inside the coefficient plane
    /// spanned by `1` and `i`.
    pub fn exp_i(t: f64) -> Self {
        Quaternion::new(t.cos(), t.sin(), 0.0, 0.0)
    }

    pub fn conjugate(&self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    /// The antiautomorphism negating only the `i` coefficient,
    /// equivalently `-i * conj(q) * i`. Satisfies
    /// `tilde(p q) = tilde(q) tilde(p)` and fixes `1`, `j`, `k`.
    pub fn tilde(&self) -> Self {
        Quaternion::new(self.w, -self.x, self.y, self.z)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// Euclidean inner product of the coefficient vectors.
    pub fn dot(&self, rhs: &Quaternion) -> f64 {
        self.w * rhs.w + self.x * rhs.x + self.y * rhs.y + self.z * rhs.z
    }

    pub fn normalized(&self) -> Self {
        self.scale(1.0 / self.norm())
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.w + rhs.w, self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.w - rhs.w, self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        self.scale(-1.0)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, r: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * r.w - self.x * r.x - self.y * r.y - self.z * r.z,
            self.w * r.x + self.x * r.w + self.y * r.z - self.z * r.y,
            self.w * r.y - self.x * r.z + self.y * r.w + self.z * r.x,
            self.w * r.z + self.x * r.y - self.y * r.x + self.z * r.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        self.scale(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Quaternion, b: Quaternion, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn basis_multiplication_table() {
        assert_eq!(Quaternion::I * Quaternion::J, Quaternion::K);
        assert_eq!(Quaternion::J * Quaternion::K, Quaternion::I);
        assert_eq!(Quaternion::K * Quaternion::I, Quaternion::J);
        assert_eq!(Quaternion::J * Quaternion::I, -Quaternion::K);
        assert_eq!(Quaternion::I * Quaternion::I, -Quaternion::ONE);
        assert_eq!(Quaternion::J * Quaternion::J, -Quaternion::ONE);
        assert_eq!(Quaternion::K * Quaternion::K, -Quaternion::ONE);
    }

    #[test]
    fn norm_is_multiplicative() {
        let p = Quaternion::new(1.0, -2.0, 3.0, 0.5);
        let q = Quaternion::new(-0.25, 4.0, 1.0, 2.0);
        let lhs = (p * q).norm();
        let rhs = p.norm() * q.norm();
        assert!((lhs - rhs).abs() < 1e-12 * rhs);
    }

    #[test]
    fn tilde_reverses_products() {
        let p = Quaternion::new(0.3, -1.1, 0.7, 2.0);
        let q = Quaternion::new(-0.5, 0.2, 1.4, -0.9);
        assert!(close((p * q).tilde(), q.tilde() * p.tilde(), 1e-12));
    }

    #[test]
    fn tilde_equals_sandwiched_conjugate() {
        let q = Quaternion::new(0.4, 1.2, -0.8, 0.1);
        let via_sandwich = -(Quaternion::I * q.conjugate() * Quaternion::I);
        assert!(close(q.tilde(), via_sandwich, 1e-15));
    }

    #[test]
    fn exp_i_is_a_homomorphism() {
        let a = 0.7;
        let b = -1.9;
        assert!(close(
            Quaternion::exp_i(a) * Quaternion::exp_i(b),
            Quaternion::exp_i(a + b),
            1e-15
        ));
        assert!(close(Quaternion::exp_i(0.0), Quaternion::ONE, 0.0));
    }
}
