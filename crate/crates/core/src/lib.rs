//! Arbitrary-precision machinery for hard-edge random matrix asymptotics:
//! orthogonal polynomials for deformed Laguerre weights, partition-function
//! derivatives, Painleve-type hierarchy residuals, model Riemann-Hilbert
//! parametrices, and Monte Carlo cross-checks.

pub mod complex;
pub mod equilibrium;
pub mod error;
pub mod grid;
pub mod hierarchy;
pub mod matrix2;
pub mod ode;
pub mod orthopoly;
pub mod painleve_extract;
pub mod precision;
pub mod quad;
pub mod real;
pub mod specfun;

pub use complex::Complex;
pub use error::{Error, Result};
pub use grid::{Grid, GridFunction};
pub use matrix2::ComplexMatrix2;
pub use precision::Precision;
pub use real::Real;
