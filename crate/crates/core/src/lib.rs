//! Representation stability for configuration spaces of points.
//!
//! Symmetric-group characters, FB- and FI♯-modules, and the cohomology of
//! configuration spaces in ℝ² and ℝ³, as used to check equivariant
//! log-concavity of those cohomology algebras.

pub mod cache;
pub mod characters;
pub mod conf;
pub mod engine;
pub mod fb_modules;
pub mod fi_sharp;
pub mod partitions;
pub mod rep_algebra;
pub mod symfunc;
pub mod verifier;
