//! Conformal classification of tori presented in three geometric
//! families.
//!
//! Every torus handled here is classified by a point `tau` of the
//! upper half plane, computed per family:
//!
//! - [`standard`]: tori of revolution with radii `R > r`, where the
//!   isothermal change of variable along the profile circle gives
//!   `tau = i / sqrt((R/r)^2 - 1)`.
//! - [`product`]: flat metrics `c_theta d theta^2 + c_phi d phi^2` on
//!   the square torus, with `tau = i sqrt(c_phi / c_theta)`.
//! - [`hopf`]: circle-bundle tori over closed spherical curves, with
//!   `tau = (A + i L) / (4 pi)` built from the signed area and length
//!   of the base curve.
//!
//! [`modular`] reduces any such point into the canonical fundamental
//! domain and hands back the exact integer matrix that certifies the
//! reduction; the j-invariant gives a second, coordinate-free
//! certificate when two classes are compared. [`report`] bundles the
//! classification of one object, [`sweep`] maps it over parameter
//! ranges.
//!
//! Grid and sweep evaluations run on a rayon pool when the default
//! `parallel` feature is enabled, and sequentially without it; results
//! are identical in both modes.

pub mod error;
pub mod hopf;
pub mod modular;
pub mod numerics;
mod par;
pub mod product;
pub mod quaternion;
pub mod report;
pub mod standard;
pub mod sweep;

pub use error::{Error, Result};
pub use hopf::{LiftResult, SphereCurve, SpherePoint};
pub use modular::{ReducedTau, Tau, Unimodular};
pub use product::ProductMetric;
pub use quaternion::Quaternion;
pub use report::{ClassReport, ComplexPair, EquivReport};
pub use standard::StandardTorus;
