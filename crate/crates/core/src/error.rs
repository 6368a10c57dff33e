//! Error type shared by every operation in the crate.

use std::fmt;

use crate::ComplexValue;

/// Failure modes of the numeric operations.
///
/// Every public operation returns `Result<_, EvalError>`; the CLI maps the
/// variants onto process exit codes.
#[derive(Debug, Clone, PartialEq)]
pub enum EvalError {
    /// The requested point is a pole of the function.
    Pole { at: ComplexValue },
    /// An argument lies outside the operation's domain.
    Domain(String),
    /// An iteration or series failed to converge to the requested accuracy.
    Convergence(String),
    /// A character-level operation requires a primitive character.
    NotPrimitive { modulus: u64, conductor: u64 },
    /// A value that must round to an integer landed too far from one.
    Rounding { value: f64 },
    /// Adaptive quadrature could not meet its tolerance.
    Quadrature(String),
    /// Continuous argument tracking hit an unresolvable phase jump.
    ArgTracking(String),
    /// A quantity that must be real carried a non-negligible imaginary part.
    Reality { imag: f64 },
    /// A size/limit cap was exceeded (e.g. sieve bound).
    Limit(String),
    /// A computation produced NaN or infinity.
    NonFinite,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Pole { at } => write!(f, "pole at s = {at}"),
            EvalError::Domain(msg) => write!(f, "domain error: {msg}"),
            EvalError::Convergence(msg) => write!(f, "convergence failure: {msg}"),
            EvalError::NotPrimitive { modulus, conductor } => write!(
                f,
                "character mod {modulus} is not primitive (conductor {conductor})"
            ),
            EvalError::Rounding { value } => {
                write!(f, "value {value} is too far from an integer to round")
            }
            EvalError::Quadrature(msg) => write!(f, "quadrature error: {msg}"),
            EvalError::ArgTracking(msg) => write!(f, "argument tracking error: {msg}"),
            EvalError::Reality { imag } => {
                write!(f, "imaginary part {imag:e} exceeds reality tolerance")
            }
            EvalError::Limit(msg) => write!(f, "limit exceeded: {msg}"),
            EvalError::NonFinite => write!(f, "computation produced a non-finite value"),
        }
    }
}

impl std::error::Error for EvalError {}
