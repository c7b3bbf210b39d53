//! Curvature analysis of Lorentzian metric Lie algebras and homogeneous pairs.
//!
//! Everything is generic over [`Scalar`]: exact rationals ([`Q`]) for the
//! catalog, `f64` with a context tolerance for irrational parameters.

pub mod error;
pub mod scalar;
pub mod matrix;
pub mod poly;
pub mod pseudo;
pub mod curvature;
pub mod lie;
pub mod petrov;
pub mod homogeneous;
pub mod report;
pub mod catalog;
pub mod io;

pub use error::{Error, Result};
pub use matrix::{Mat, Vector};
pub use scalar::{Cplx, Field, Mode, Scalar, Q};
