//! Boundary defects of states raised by the Runge–Lenz ladder operator.

use serde::{Deserialize, Serialize};

use super::{normalize, AnalysisError};
use crate::models::{EigenState, ModelKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DefectKind {
    /// One application of R₊ (l → l+1).
    RPlus,
    /// Two applications of R₊ (l → l+2).
    RPlusSquared,
}

/// Boundary condition applied to the raised function χ.
///
/// `value = sin(u)·χ(R) + cos(u)·R·χ'(R)`, which equals `R·cos(u)·(γχ(R) + χ'(R))`
/// and stays finite at γ = ±∞. It vanishes exactly when χ obeys the same
/// boundary condition as ψ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DefectReport {
    pub kind: DefectKind,
    pub value: f64,
    /// `γχ(R) + χ'(R)`; `None` at γ = ±∞.
    pub robin_value: Option<f64>,
    /// For `RPlus`, the closed form
    /// `(l+1)/M·[sin u·ψ'(R) + 2 sin u·ψ(R)/R + c·cos u·R·ψ(R)]` with
    /// `c = l(l+2)/R² − 2Me²/R − 2ME`, the same quantity as `value`.
    pub bracket: Option<f64>,
    /// Sum of the magnitudes of the terms making up `value`.
    pub scale: f64,
    pub chi: f64,
    pub dchi: f64,
}

/// Evaluates the boundary defect of `R₊ψ` or `R₊²ψ` for a hydrogen sphere
/// state. χ'(R) comes from substituting the radial equation for ψ''.
pub fn runge_defect(state: &EigenState, kind: DefectKind) -> Result<DefectReport, AnalysisError> {
    let model = &state.model;
    if model.kind() != ModelKind::HydrogenSphere {
        return Err(AnalysisError::UnsupportedKind {
            operation: "Runge-Lenz defect",
            kind: model.kind(),
        });
    }
    let st = normalize(state)?;
    let c = model.constants();
    let (mass, e2) = (c.mass(), c.charge_sq());
    let energy = st.energy;
    let r = model.radius();
    let l = model.l() as f64;
    let ll = l * (l + 1.0);
    let (psi, dpsi) = (st.boundary_psi, st.boundary_dpsi);
    // ψ'' = −(2/r)ψ' + Wψ.
    let w = ll / (r * r) - 2.0 * mass * (energy + e2 / r);
    let (a, b, a_prime, b_prime) = match kind {
        DefectKind::RPlus => {
            let a = (l + 1.0) / mass;
            let b = e2 - ll / (mass * r);
            (a, b, 0.0, ll / (mass * r * r))
        }
        DefectKind::RPlusSquared => {
            let k = (l + 1.0) * (l + 2.0);
            let p = (2.0 * l + 3.0) / mass * (e2 - k / (mass * r));
            let p_prime = (2.0 * l + 3.0) / mass * k / (mass * r * r);
            let q = k / mass * (l * (2.0 * l + 3.0) / (mass * r * r) - 3.0 * e2 / r - 2.0 * energy)
                + e2 * (e2 - ll / (mass * r));
            let q_prime = k / mass
                * (-2.0 * l * (2.0 * l + 3.0) / (mass * r.powi(3)) + 3.0 * e2 / (r * r))
                + e2 * ll / (mass * r * r);
            (p, q, p_prime, q_prime)
        }
    };
    // χ = aψ' + bψ, χ' = (a' − 2a/r + b)ψ' + (aW + b')ψ.
    let chi = a * dpsi + b * psi;
    let dchi_terms = [(a_prime - 2.0 * a / r + b) * dpsi, (a * w + b_prime) * psi];
    let dchi = dchi_terms[0] + dchi_terms[1];
    let (sin_u, cos_u) = st.bc.sin_cos();
    let value = sin_u * chi + cos_u * r * dchi;
    let scale = sin_u.abs() * ((a * dpsi).abs() + (b * psi).abs())
        + cos_u.abs() * r * (dchi_terms[0].abs() + dchi_terms[1].abs());
    let bracket = match kind {
        DefectKind::RPlus => {
            let cc = l * (l + 2.0) / (r * r) - 2.0 * mass * e2 / r - 2.0 * mass * energy;
            Some((l + 1.0) / mass * (sin_u * dpsi + 2.0 * sin_u * psi / r + cc * cos_u * r * psi))
        }
        DefectKind::RPlusSquared => None,
    };
    let gamma = st.bc.gamma(r);
    Ok(DefectReport {
        kind,
        value,
        robin_value: gamma.is_finite().then_some(gamma * chi + dchi),
        bracket,
        scale,
        chi,
        dchi,
    })
}
