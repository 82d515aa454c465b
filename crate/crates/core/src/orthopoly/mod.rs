//! Orthogonal-polynomial machinery for the pole-perturbed Laguerre and
//! Gaussian unitary ensembles: weights and moments, Hankel elimination,
//! Christoffel-Darboux kernels, partition functions, and the exact
//! finite-size identities connecting the two ensembles.

pub mod partition;
pub mod system;
pub mod weight;

pub use partition::{diff_identity_residual, partition_log, partition_log_t0, pgue_plue_residual};
pub use system::{build_op_system, OPSystem};
pub use weight::{Ensemble, PerturbedWeight};
