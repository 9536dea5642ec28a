//! Analyses on solved states: normalization, the generalized uncertainty
//! relation, Runge–Lenz boundary defects and accidental degeneracies.

mod degeneracy;
mod runge;
mod uncertainty;

use thiserror::Error;

use crate::eigensolver::SolveError;
use crate::models::{EigenState, ModelError, ModelKind, RadialModel};

pub use degeneracy::{
    degeneracy_radius, degeneracy_scan, partner_model, DegeneracyReport, DegeneratePair,
    QuantumNumbers,
};
pub use runge::{runge_defect, DefectKind, DefectReport};
pub use uncertainty::{uncertainty_check, UncertaintyReport};

/// Integrals below this cannot be normalized.
pub const MIN_NORM_INTEGRAL: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("{operation} is not available for {kind:?} states")]
    UnsupportedKind {
        operation: &'static str,
        kind: ModelKind,
    },
    #[error("norm integral {integral:e} is too small to normalize")]
    DegenerateNorm { integral: f64 },
    #[error("{family}: needed {needed} states, found {found}")]
    InsufficientStates {
        family: String,
        needed: usize,
        found: usize,
    },
    #[error("{0}")]
    NoPartner(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Rescales the samples and wall values so that `∫|ψ|² dμ = 1`.
pub fn normalize(state: &EigenState) -> Result<EigenState, AnalysisError> {
    let integral = state.expectation(|_| 1.0);
    if integral.is_nan() || integral < MIN_NORM_INTEGRAL || integral.is_infinite() {
        return Err(AnalysisError::DegenerateNorm { integral });
    }
    let a = integral.sqrt().recip();
    let mut out = state.clone();
    for s in out.samples.iter_mut() {
        s.psi *= a;
        s.dpsi *= a;
    }
    out.boundary_psi *= a;
    out.boundary_dpsi *= a;
    out.norm = 1.0;
    Ok(out)
}

/// Bound-state energy of the unconfined system with radial quantum number
/// `n_r`: `−M e⁴ / (2(n_r + λ + (d−1)/2)²)`. `None` for the free particle.
pub fn infinite_volume_reference(model: &RadialModel, n_r: usize) -> Option<f64> {
    if !model.kind().is_hydrogen() {
        return None;
    }
    let nu = n_r as f64 + model.lambda() + (model.dimension() as f64 - 1.0) / 2.0;
    Some(-model.constants().hartree() / (2.0 * nu * nu))
}
