//! Fourier analysis, isoperimetry, and junta extraction for Boolean
//! functions on the hypercube, at exact truth-table scale.
//!
//! The crate computes sensitivity and boundary measures, Walsh-Hadamard
//! spectra and level weights, noise operators, random restrictions, and a
//! constructive junta-extraction pipeline, together with a harness that
//! numerically checks a registry of inequalities relating these quantities
//! over exhaustive, structured, and random function corpora.
//!
//! Conventions, fixed once for the whole crate:
//! - points and subsets are `u32` masks; bit `i` is coordinate `i` (0-based);
//! - `f` takes values in `{0, 1}`; derivatives along `i` take values in
//!   `{-1, 0, 1}` and satisfy `E[d_i f] = 2 f_hat({i})`;
//! - dimensions are capped at [`function::MAX_DIMENSION`] = 24.

pub mod analyze;
pub mod cli;
pub mod error;
pub mod families;
pub mod fourier;
pub mod function;
pub mod geometry;
pub mod harness;
pub mod junta;
pub mod restrictions;
pub mod rng;
pub mod spectral;

pub use error::{Error, Result};
pub use fourier::{wht_forward, wht_forward_real, wht_inverse, FourierSpectrum};
pub use function::{BooleanFunction, CoordSet, RealPointFunction, MAX_DIMENSION};
