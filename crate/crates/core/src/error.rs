//! Error taxonomy shared by every module.
//!
//! Numerical failure is never silent: a routine that cannot certify its
//! target accuracy returns [`Error::PrecisionExhausted`] instead of a value.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug)]
pub enum Error {
    /// Input outside the documented domain of an operation.
    #[error("domain error in {op}: {msg}")]
    Domain { op: &'static str, msg: String },

    /// The routine could not certify the requested accuracy even after
    /// raising its internal working precision.
    #[error("precision exhausted in {op}: requested {requested} digits, certified only {achieved} (hint: {hint})")]
    PrecisionExhausted {
        op: &'static str,
        requested: u32,
        achieved: i64,
        hint: &'static str,
    },

    /// A grid-to-grid operation received functions on different grids.
    #[error("grid mismatch in {op}: {msg}")]
    GridMismatch { op: &'static str, msg: String },

    /// Division by a grid function that vanishes inside the grid.
    #[error("singularity in {op}: |denominator| = {magnitude:.3e} at s = {location:.6}")]
    Singularity {
        op: &'static str,
        location: f64,
        magnitude: f64,
    },

    /// Evaluation exactly on (or too close to) a contour ray or branch cut.
    #[error("{op}: point lies on a contour ray or branch cut ({msg}); select a side with +/- i*eps")]
    OnContour { op: &'static str, msg: String },

    /// An iteration failed to converge within its budget.
    #[error("{op} failed to converge: {msg}")]
    NoConvergence { op: &'static str, msg: String },

    /// Monte Carlo chain produced no accepted moves (stuck chain).
    #[error("markov chain stuck in {op}: zero accepted proposals over {steps} steps")]
    ChainStuck { op: &'static str, steps: u64 },

    /// Malformed input data (empty tables, bad CSV, inconsistent lengths).
    #[error("invalid input for {op}: {msg}")]
    InvalidInput { op: &'static str, msg: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn domain(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain { op, msg: msg.into() }
    }

    pub fn invalid(op: &'static str, msg: impl Into<String>) -> Self {
        Error::InvalidInput { op, msg: msg.into() }
    }

    /// True when the failure is a certified-accuracy shortfall, which maps
    /// to its own process exit code in the CLI.
    pub fn is_precision_exhausted(&self) -> bool {
        matches!(self, Error::PrecisionExhausted { .. })
    }
}
