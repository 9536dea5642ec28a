//! The generalized uncertainty relation on a sphere.

use serde::{Deserialize, Serialize};

use super::{normalize, AnalysisError};
use crate::models::{EigenState, ModelKind};

/// Terms of `⟨p²⟩ ≥ ((d − ⟨n·x⟩)/(2Δx))² + ⟨γ⟩ + ⟨n⟩²/4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UncertaintyReport {
    /// `⟨p²⟩ = 2M(E − ⟨V⟩)`.
    pub lhs: f64,
    /// `√⟨r²⟩` (⟨x⟩ = 0 by symmetry).
    pub delta_x: f64,
    /// `⟨n·x⟩ = R³ψ(R)²`.
    pub boundary_rx: f64,
    /// `⟨γ⟩ = γR²ψ(R)²`.
    pub boundary_gamma: f64,
    /// `⟨n⟩`, zero on the sphere.
    pub boundary_n: f64,
    pub rhs: f64,
    /// `lhs − rhs`.
    pub slack: f64,
}

/// Evaluates both sides of the uncertainty relation for a sphere state.
pub fn uncertainty_check(state: &EigenState) -> Result<UncertaintyReport, AnalysisError> {
    let model = &state.model;
    if model.kind() == ModelKind::HydrogenCone {
        return Err(AnalysisError::UnsupportedKind {
            operation: "uncertainty check",
            kind: model.kind(),
        });
    }
    let st = normalize(state)?;
    let radius = model.radius();
    let mass = model.constants().mass();
    let potential = st.expectation(|r| model.potential(r));
    let lhs = 2.0 * mass * (st.energy - potential);
    let delta_x = st.expectation(|r| r * r).sqrt();
    let psi = st.boundary_psi;
    let boundary_rx = radius.powi(3) * psi * psi;
    let (sin_u, cos_u) = st.bc.sin_cos();
    // γψ(R) = −ψ'(R) on an eigenstate; that form stays finite as γ → ±∞.
    let boundary_gamma = if cos_u.abs() >= sin_u.abs() {
        st.bc.gamma(radius) * radius * radius * psi * psi
    } else {
        -radius * radius * psi * st.boundary_dpsi
    };
    let boundary_n = 0.0;
    let d = model.dimension() as f64;
    let rhs = ((d - boundary_rx) / (2.0 * delta_x)).powi(2)
        + boundary_gamma
        + boundary_n * boundary_n / 4.0;
    Ok(UncertaintyReport {
        lhs,
        delta_x,
        boundary_rx,
        boundary_gamma,
        boundary_n,
        rhs,
        slack: lhs - rhs,
    })
}
