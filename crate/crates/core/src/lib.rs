//! Zeta- and L-function computation.
//!
//! The crate evaluates the classical zeta-like Dirichlet series — Hurwitz
//! zeta, Dirichlet L-series, Lerch zeta, Epstein zeta — on their full domain
//! of analytic continuation, provides exact (rational) special values at
//! nonpositive integers, verifies the associated functional equations
//! numerically, and scans the critical line for zeros of the Riemann zeta
//! function.
//!
//! Everything is `f64`-based except where exactness is the point
//! (Bernoulli numbers and polynomials, special values, class numbers),
//! which is done in arbitrary-precision rational arithmetic.

pub mod characters;
pub mod cli;
pub mod critical_line;
pub mod dirichlet;
pub mod epstein;
pub mod error;
pub mod hurwitz;
pub mod lerch;
pub mod primes;
pub mod quadrature;
pub mod special;

pub use error::EvalError;

use num_complex::Complex64;

/// Complex scalar used throughout the crate.
pub type ComplexValue = Complex64;

/// A computed value together with an a-posteriori error bound.
///
/// `err_estimate` is derived from the actual tail/remainder terms of the
/// algorithm that produced `value` (Euler-Maclaurin tail term, quadrature
/// error estimate, lattice-sum truncation bound), never a fixed guess.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: ComplexValue,
    pub err_estimate: f64,
}

impl EvalResult {
    /// Bundle a value with its error bound, refusing non-finite results.
    pub fn new(value: ComplexValue, err_estimate: f64) -> Result<Self, EvalError> {
        if !value.re.is_finite() || !value.im.is_finite() || !err_estimate.is_finite() {
            return Err(EvalError::NonFinite);
        }
        Ok(EvalResult {
            value,
            err_estimate,
        })
    }
}

/// r^s for real r > 0 and complex s, as exp(s ln r).
pub(crate) fn real_pow(r: f64, s: ComplexValue) -> ComplexValue {
    debug_assert!(r > 0.0);
    (s * r.ln()).exp()
}

/// e^{2 pi i x}.
pub(crate) fn unit_phase(x: f64) -> ComplexValue {
    let t = 2.0 * std::f64::consts::PI * x;
    Complex64::new(t.cos(), t.sin())
}
