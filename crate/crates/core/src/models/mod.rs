//! Confined radial systems, boundary residuals and regular solutions.
//!
//! Two interchangeable backends produce the regular-at-origin solution: closed
//! forms (spherical Bessel / Kummer functions) and adaptive ODE integration.

mod boundary;
mod closed_form;
mod ode;
mod state;
mod system;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::specfun::SpecFunError;

pub use boundary::BoundaryCondition;
pub use state::{radial_breaks, EigenState, Sample, DEFAULT_ORDER};
pub use system::{EnergyPoint, ModelKind, PhysicalConstants, RadialModel};

/// Closed-form results whose estimated cancellation error exceeds this are
/// replaced by ODE results under [`Backend::Auto`].
pub const CLOSED_FORM_TRUST: f64 = 1e-11;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid boundary condition: {0}")]
    InvalidBoundary(String),
    #[error("invalid energy {0}")]
    InvalidEnergy(f64),
    #[error("no closed form for {kind:?} at E = {energy}; use the ODE backend")]
    ClosedFormUnavailable { kind: ModelKind, energy: f64 },
    #[error("radius {r} outside [0, {radius}]")]
    RadiusOutOfRange { r: f64, radius: f64 },
    #[error("radial grid must be strictly increasing")]
    UnsortedGrid,
    #[error("ODE integration failed: {0}")]
    Integration(String),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}

/// Which representation of the regular solution to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    /// Closed form where valid and well conditioned, ODE otherwise.
    #[default]
    Auto,
    ClosedForm,
    Ode,
}

/// `ψ = value·e^{log_scale}`, `ψ' = slope·e^{log_scale}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaledPair {
    pub value: f64,
    pub slope: f64,
    pub log_scale: f64,
}

impl ScaledPair {
    pub fn psi(&self) -> f64 {
        self.value * self.log_scale.exp()
    }

    pub fn dpsi(&self) -> f64 {
        self.slope * self.log_scale.exp()
    }

    /// Logarithmic derivative ψ'/ψ.
    pub fn log_derivative(&self) -> f64 {
        self.slope / self.value
    }
}

/// Boundary data `(ψ(R), Rψ'(R))` scaled to unit length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPhase {
    pub psi: f64,
    pub r_dpsi: f64,
}

impl BoundaryPhase {
    fn from_pair(pair: &ScaledPair, radius: f64) -> Self {
        let q = radius * pair.slope;
        let h = pair.value.hypot(q);
        Self {
            psi: pair.value / h,
            r_dpsi: q / h,
        }
    }

    /// `sin(u)·ψ(R) + cos(u)·Rψ'(R)` in the unit-length normalization.
    pub fn residual(&self, bc: &BoundaryCondition) -> f64 {
        let (s, c) = bc.sin_cos();
        s * self.psi + c * self.r_dpsi
    }
}

fn check_radius(model: &RadialModel, r: f64) -> Result<(), ModelError> {
    let radius = model.radius();
    if r.is_finite() && r >= 0.0 && r <= radius * (1.0 + 1e-12) {
        Ok(())
    } else {
        Err(ModelError::RadiusOutOfRange { r, radius })
    }
}

fn check_energy(energy: f64) -> Result<(), ModelError> {
    if energy.is_finite() {
        Ok(())
    } else {
        Err(ModelError::InvalidEnergy(energy))
    }
}

/// Regular solution at the wall plus the concrete backend that produced it.
pub fn boundary_pair(
    model: &RadialModel,
    energy: f64,
    backend: Backend,
) -> Result<(ScaledPair, Backend), ModelError> {
    check_energy(energy)?;
    let radius = model.radius();
    match backend {
        Backend::ClosedForm => Ok((
            closed_form::evaluate(model, energy, radius)?.pair,
            Backend::ClosedForm,
        )),
        Backend::Ode => Ok((ode::integrate(model, energy, &[radius])?[0], Backend::Ode)),
        Backend::Auto => match closed_form::evaluate(model, energy, radius) {
            Ok(v) if v.rel_error <= CLOSED_FORM_TRUST => Ok((v.pair, Backend::ClosedForm)),
            Ok(_) | Err(ModelError::ClosedFormUnavailable { .. }) => {
                Ok((ode::integrate(model, energy, &[radius])?[0], Backend::Ode))
            }
            Err(e) => Err(e),
        },
    }
}

/// The concrete backend [`Backend::Auto`] would pick at this energy.
pub fn resolve_backend(
    model: &RadialModel,
    energy: f64,
    backend: Backend,
) -> Result<Backend, ModelError> {
    match backend {
        Backend::Auto => Ok(boundary_pair(model, energy, backend)?.1),
        other => Ok(other),
    }
}

/// Unit-length boundary data `(ψ(R), Rψ'(R))`.
pub fn boundary_phase(
    model: &RadialModel,
    energy: f64,
    backend: Backend,
) -> Result<BoundaryPhase, ModelError> {
    let (pair, _) = boundary_pair(model, energy, backend)?;
    Ok(BoundaryPhase::from_pair(&pair, model.radius()))
}

/// Boundary residual `sin(u)ψ(R)C + cos(u)Rψ'(R)C` with C chosen so that
/// `(ψ(R), Rψ'(R))C` has unit length. Zero exactly at eigenvalues.
pub fn residual(
    model: &RadialModel,
    bc: &BoundaryCondition,
    energy: f64,
) -> Result<f64, ModelError> {
    residual_with(model, bc, energy, Backend::Auto)
}

pub fn residual_with(
    model: &RadialModel,
    bc: &BoundaryCondition,
    energy: f64,
    backend: Backend,
) -> Result<f64, ModelError> {
    Ok(boundary_phase(model, energy, backend)?.residual(bc))
}

/// Un-normalized regular solution and its derivative at one radius.
///
/// The solution behaves as `r^λ` at the origin. For large arguments the
/// unscaled values can overflow; use [`wavefunction_scaled`] there.
pub fn wavefunction(model: &RadialModel, energy: f64, r: f64) -> Result<(f64, f64), ModelError> {
    let p = wavefunction_scaled(model, energy, r, Backend::Auto)?;
    Ok((p.psi(), p.dpsi()))
}

pub fn wavefunction_scaled(
    model: &RadialModel,
    energy: f64,
    r: f64,
    backend: Backend,
) -> Result<ScaledPair, ModelError> {
    check_radius(model, r)?;
    Ok(regular_solution(model, energy, &[r], backend)?[0])
}

/// Regular solution sampled at increasing radii in `[0, R]`.
pub fn regular_solution(
    model: &RadialModel,
    energy: f64,
    radii: &[f64],
    backend: Backend,
) -> Result<Vec<ScaledPair>, ModelError> {
    check_energy(energy)?;
    for &r in radii {
        check_radius(model, r)?;
    }
    if radii.windows(2).any(|w| w[1] <= w[0]) {
        return Err(ModelError::UnsortedGrid);
    }
    match resolve_backend(model, energy, backend)? {
        Backend::Ode => ode::integrate(model, energy, radii),
        _ => radii
            .iter()
            .map(|&r| closed_form::evaluate(model, energy, r).map(|v| v.pair))
            .collect(),
    }
}

/// Direct integration of the radial equation, sampled on `r_grid`.
///
/// The grid must be strictly increasing inside `(0, R]`. The solution starts
/// from the Frobenius series near the origin and is normalized so that
/// `ψ ~ r^λ` there.
pub fn ode_backend_integrate(
    model: &RadialModel,
    energy: f64,
    r_grid: &[f64],
) -> Result<Vec<ScaledPair>, ModelError> {
    if r_grid.first().is_some_and(|&r| r <= 0.0) {
        return Err(ModelError::RadiusOutOfRange {
            r: r_grid[0],
            radius: model.radius(),
        });
    }
    regular_solution(model, energy, r_grid, Backend::Ode)
}
