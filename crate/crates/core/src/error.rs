//! Error types shared across the crate.

use crate::plane::Mat2;
use alloc::string::String;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Errors produced by the map, circle, classification and solver operations.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An input vector or parameter contained NaN or an infinity.
    NonFinite,
    /// An argument lies outside the operation's domain.
    Domain(&'static str),
    /// A precondition on the dynamical state does not hold.
    Precondition(&'static str),
    /// The requested construction has no solution for these parameters.
    Infeasible(&'static str),
    /// An orbit modulus crossed the hard overflow threshold.
    Diverged { step: usize },
    /// Orbit samples cover the circle too sparsely to build a profile.
    SparseCoverage { closure_defect: f64 },
    /// The ν-solver could not bracket a sign change.
    NoBracket { lo: f64, hi: f64 },
    /// A numerical inconsistency that should be reported, not ignored.
    Inconsistent(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite => write!(f, "non-finite input"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Precondition(msg) => write!(f, "precondition not met: {msg}"),
            Error::Infeasible(msg) => write!(f, "infeasible: {msg}"),
            Error::Diverged { step } => write!(f, "orbit modulus overflow at step {step}"),
            Error::SparseCoverage { closure_defect } => {
                write!(f, "sparse angular coverage (max gap {closure_defect} rad)")
            }
            Error::NoBracket { lo, hi } => {
                write!(f, "no sign change bracketed in [{lo}, {hi}]")
            }
            Error::Inconsistent(msg) => write!(f, "inconsistent observation: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

/// Failure of a cocycle product; carries the partial product accumulated
/// before the orbit overflowed.
#[derive(Debug, Clone, PartialEq)]
pub struct CocycleError {
    pub step: usize,
    pub partial: Mat2,
}

impl fmt::Display for CocycleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "orbit diverged at step {} with partial cocycle product", self.step)
    }
}

impl core::error::Error for CocycleError {}

impl From<CocycleError> for Error {
    fn from(e: CocycleError) -> Self {
        Error::Diverged { step: e.step }
    }
}
