//! Core of the `tori-cli` binary.
//!
//! The binary itself only parses arguments; everything it does lives
//! here so it can be tested directly: [`job`] describes and runs
//! requests, [`curve`] reads curve files, [`render`] produces
//! byte-deterministic JSON and CSV, [`svg`] draws reduced moduli in
//! the fundamental domain, and [`error`] sorts failures into the exit
//! codes 2 (validation), 3 (non-convergence) and 4 (I/O).

pub mod curve;
pub mod error;
pub mod job;
pub mod render;
pub mod svg;
