//! Special functions used by the closed-form radial solutions.
//!
//! Spherical Bessel functions `j_l`, modified spherical Bessel functions `i_l`,
//! Kummer's confluent hypergeometric function `M(a, b, z)` and generalized
//! Laguerre functions of real degree built on top of it.
//!
//! Everything here is a pure function of its arguments.

mod bessel;
mod kummer;

use thiserror::Error;

pub use bessel::{sph_bessel_i, sph_bessel_j, MAX_ORDER};
pub use kummer::{kummer_m, laguerre_general, KUMMER_MAX_ARGUMENT};

pub(crate) use bessel::{i_ratio, i_reduced, j_reduced, j_value, ln_i};
pub(crate) use kummer::kummer_scaled;

/// Controls for series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalControl {
    /// Relative tolerance on the truncated tail.
    pub rel_tol: f64,
    /// Hard cap on the number of series terms.
    pub max_terms: usize,
}

impl EvalControl {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self, SpecFunError> {
        if !(rel_tol.is_finite() && rel_tol > 0.0) {
            return Err(SpecFunError::Domain {
                name: "rel_tol",
                value: rel_tol,
                reason: "must be finite and positive",
            });
        }
        if max_terms == 0 {
            return Err(SpecFunError::Domain {
                name: "max_terms",
                value: 0.0,
                reason: "must be at least 1",
            });
        }
        Ok(Self { rel_tol, max_terms })
    }
}

impl Default for EvalControl {
    fn default() -> Self {
        Self {
            rel_tol: 1e-14,
            max_terms: 10_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("{name} = {value} is outside the supported domain ({reason})")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("i_{order}({x}) overflows the double-precision range")]
    Overflow { order: u32, x: f64 },
    #[error("series did not converge within {terms} terms (last partial sum {partial_sum})")]
    NoConvergence { terms: usize, partial_sum: f64 },
}
