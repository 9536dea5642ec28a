use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use super::ModelError;

/// Robin condition `γψ + ∂_rψ = 0` at r = R, stored as `u = arctan(γR)`.
///
/// `u = ±π/2` are the Dirichlet limits and `u = 0` is Neumann.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCondition {
    u: f64,
}

impl BoundaryCondition {
    pub fn from_u(u: f64) -> Result<Self, ModelError> {
        if u.is_finite() && (-FRAC_PI_2..=FRAC_PI_2).contains(&u) {
            Ok(Self { u })
        } else {
            Err(ModelError::InvalidBoundary(format!(
                "u = {u} lies outside [-pi/2, pi/2]"
            )))
        }
    }

    /// From γ in absolute units (1/length); `±∞` maps to `u = ±π/2`.
    pub fn from_gamma(gamma: f64, radius: f64) -> Result<Self, ModelError> {
        if gamma.is_nan() || !(radius.is_finite() && radius > 0.0) {
            return Err(ModelError::InvalidBoundary(format!(
                "gamma = {gamma} with radius {radius}"
            )));
        }
        let u = if gamma == f64::INFINITY {
            FRAC_PI_2
        } else if gamma == f64::NEG_INFINITY {
            -FRAC_PI_2
        } else {
            (gamma * radius).atan()
        };
        Ok(Self { u })
    }

    pub fn dirichlet() -> Self {
        Self { u: FRAC_PI_2 }
    }

    pub fn neumann() -> Self {
        Self { u: 0.0 }
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    /// `γ = tan(u)/R`, infinite at the Dirichlet limits.
    pub fn gamma(&self, radius: f64) -> f64 {
        if self.u == FRAC_PI_2 {
            f64::INFINITY
        } else if self.u == -FRAC_PI_2 {
            f64::NEG_INFINITY
        } else {
            self.u.tan() / radius
        }
    }

    /// True exactly at u = ±π/2.
    pub fn is_dirichlet(&self) -> bool {
        self.u.abs() == FRAC_PI_2
    }

    /// True exactly at u = −π/2, the γ → −∞ limit.
    pub fn is_negative_dirichlet(&self) -> bool {
        self.u == -FRAC_PI_2
    }

    /// `(sin u, cos u)` with the Dirichlet limits exact.
    pub fn sin_cos(&self) -> (f64, f64) {
        if self.u == FRAC_PI_2 {
            (1.0, 0.0)
        } else if self.u == -FRAC_PI_2 {
            (-1.0, 0.0)
        } else {
            self.u.sin_cos()
        }
    }
}
