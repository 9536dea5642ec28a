//! Run descriptions: the JSON config object and its resolution into solver inputs.

use std::f64::consts::{FRAC_PI_2, PI};
use std::path::PathBuf;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::analysis::{degeneracy_radius, DefectKind};
use crate::eigensolver::SolveConfig;
use crate::models::{Backend, BoundaryCondition, ModelKind, RadialModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    #[default]
    Spectrum,
    Flow,
    Crossing,
    Degeneracy,
    Uncertainty,
    Defect,
    ConeDegeneracy,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SystemKind {
    #[default]
    Free,
    Hydrogen,
    Cone,
}

/// Unit of finite γ values: `1/a` or `1/R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum GammaUnits {
    /// Inverse Bohr radius (default for hydrogen and cone).
    Bohr,
    /// Inverse cavity radius (default for the free particle).
    Radius,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum DefectChoice {
    Rplus,
    RplusSquared,
}

impl From<DefectChoice> for DefectKind {
    fn from(c: DefectChoice) -> Self {
        match c {
            DefectChoice::Rplus => DefectKind::RPlus,
            DefectChoice::RplusSquared => DefectKind::RPlusSquared,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum BackendChoice {
    Auto,
    ClosedForm,
    Ode,
}

impl From<BackendChoice> for Backend {
    fn from(c: BackendChoice) -> Self {
        match c {
            BackendChoice::Auto => Backend::Auto,
            BackendChoice::ClosedForm => Backend::ClosedForm,
            BackendChoice::Ode => Backend::Ode,
        }
    }
}

/// A complete run description. The same object is read from `--config` files
/// and echoed as `spec` in JSON output.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunSpec {
    pub command: Command,
    pub system: SystemKind,
    pub l: u32,
    pub m: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    /// `inf`, `-inf` or a finite γ in `gamma_units`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_units: Option<GammaUnits>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub emin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub emax: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub states: Option<usize>,
    pub raw_units: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ugrid: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub urange: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radii: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gammas: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect: Option<DefectChoice>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub backend: Option<BackendChoice>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

impl RunSpec {
    pub fn model(&self) -> Result<RadialModel, CliError> {
        let radius = match self.radius {
            Some(r) => r,
            None => self.default_radius()?,
        };
        let model = match self.system {
            SystemKind::Free => RadialModel::free_sphere(self.l, radius)?,
            SystemKind::Hydrogen => RadialModel::hydrogen_sphere(self.l, radius)?,
            SystemKind::Cone => RadialModel::hydrogen_cone(self.m, self.s.unwrap_or(1.0), radius)?,
        };
        Ok(model)
    }

    fn default_radius(&self) -> Result<f64, CliError> {
        let needs_radius = || invalid("--radius is required for this command");
        if !matches!(self.command, Command::Degeneracy | Command::ConeDegeneracy) {
            return Err(needs_radius());
        }
        let probe = match self.system {
            SystemKind::Free => return Err(needs_radius()),
            SystemKind::Hydrogen => RadialModel::hydrogen_sphere(self.l, 1.0)?,
            SystemKind::Cone => RadialModel::hydrogen_cone(self.m, self.s.unwrap_or(1.0), 1.0)?,
        };
        degeneracy_radius(&probe).ok_or_else(needs_radius)
    }

    pub fn gamma_units(&self) -> GammaUnits {
        self.gamma_units.unwrap_or(match self.system {
            SystemKind::Free => GammaUnits::Radius,
            _ => GammaUnits::Bohr,
        })
    }

    /// Parses a boundary token into an absolute γ.
    pub fn parse_gamma(&self, token: &str, model: &RadialModel) -> Result<f64, CliError> {
        let t = token.trim().to_ascii_lowercase();
        match t.as_str() {
            "inf" | "+inf" | "infinity" | "+infinity" | "dirichlet" => return Ok(f64::INFINITY),
            "-inf" | "-infinity" => return Ok(f64::NEG_INFINITY),
            "neumann" => return Ok(0.0),
            _ => {}
        }
        let value: f64 = t
            .parse()
            .map_err(|_| invalid(format!("cannot parse boundary value '{token}'")))?;
        if !value.is_finite() {
            return Err(invalid(format!("boundary value '{token}' is not finite")));
        }
        Ok(match self.gamma_units() {
            GammaUnits::Radius => value / model.radius(),
            GammaUnits::Bohr => match model.constants().bohr_radius() {
                Some(a) => value / a,
                None => value,
            },
        })
    }

    pub fn boundary(&self, model: &RadialModel) -> Result<BoundaryCondition, CliError> {
        match (&self.boundary, self.u) {
            (Some(_), Some(_)) => Err(invalid("give either a boundary value or --u, not both")),
            (None, Some(u)) => Ok(BoundaryCondition::from_u(u)?),
            (Some(token), None) => Ok(BoundaryCondition::from_gamma(
                self.parse_gamma(token, model)?,
                model.radius(),
            )?),
            (None, None) => Ok(BoundaryCondition::dirichlet()),
        }
    }

    /// Energy unit for input windows and printed energies.
    pub fn energy_unit(&self, model: &RadialModel) -> f64 {
        if self.raw_units {
            1.0
        } else {
            model.display_unit()
        }
    }

    pub fn energy_units_label(&self, model: &RadialModel) -> &'static str {
        if self.raw_units {
            "internal"
        } else if model.kind() == ModelKind::FreeSphere {
            "pi^2/(2MR^2)"
        } else {
            "Me^4"
        }
    }

    pub fn solve_config(
        &self,
        model: &RadialModel,
        default_states: usize,
    ) -> Result<SolveConfig, CliError> {
        let unit = self.energy_unit(model);
        let states = self.states.unwrap_or(default_states);
        if states == 0 {
            return Err(invalid("--states must be positive"));
        }
        let mut cfg = SolveConfig::lowest(model, states);
        if self.states.is_none() && self.emax.is_some() {
            cfg.max_states = None;
        }
        if let Some(e) = self.emin {
            cfg.e_min = e * unit;
        }
        if let Some(e) = self.emax {
            cfg.e_max = e * unit;
        }
        if let Some(n) = self.grid_points {
            cfg.grid_points = n;
        }
        if let Some(t) = self.root_tol {
            cfg.root_tol = t;
        }
        if let Some(b) = self.backend {
            cfg.backend = b.into();
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// The u grid of a flow: `ugrid` points over `urange` (default `[−π/2, π/2]`).
    pub fn u_grid(&self, default_points: usize) -> Result<Vec<f64>, CliError> {
        let n = self.ugrid.unwrap_or(default_points);
        if n < 2 {
            return Err(invalid("--ugrid needs at least 2 points"));
        }
        let [a, b] = self.urange.unwrap_or([-FRAC_PI_2, FRAC_PI_2]);
        // Allow the endpoints to be typed with a few digits of π/2.
        let clamp = |x: f64| {
            if (x.abs() - FRAC_PI_2).abs() < 1e-3 * PI {
                x.signum() * FRAC_PI_2
            } else {
                x
            }
        };
        let (a, b) = (clamp(a), clamp(b));
        if !(a.is_finite() && b.is_finite() && a < b && a >= -FRAC_PI_2 && b <= FRAC_PI_2) {
            return Err(invalid(format!(
                "--urange must satisfy -π/2 ≤ a < b ≤ π/2, got [{a}, {b}]"
            )));
        }
        Ok((0..n)
            .map(|i| {
                if i + 1 == n {
                    b
                } else {
                    a + (b - a) * i as f64 / (n - 1) as f64
                }
            })
            .collect())
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or(match self.command {
            Command::Spectrum | Command::Flow => Format::Csv,
            _ => Format::Json,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn gamma_tokens_and_units() {
        let spec = RunSpec {
            system: SystemKind::Free,
            radius: Some(2.0),
            ..RunSpec::default()
        };
        let m = spec.model().unwrap();
        assert_eq!(spec.parse_gamma("inf", &m).unwrap(), f64::INFINITY);
        assert_eq!(spec.parse_gamma("-inf", &m).unwrap(), f64::NEG_INFINITY);
        assert_eq!(spec.parse_gamma("1", &m).unwrap(), 0.5);
        assert!(spec.parse_gamma("abc", &m).is_err());
        let h = RunSpec {
            system: SystemKind::Hydrogen,
            ..spec.clone()
        };
        let hm = h.model().unwrap();
        assert_eq!(h.parse_gamma("1", &hm).unwrap(), 1.0);
    }

    #[test]
    fn boundary_exclusive() {
        let spec = RunSpec {
            radius: Some(1.0),
            boundary: Some("inf".into()),
            u: Some(0.0),
            ..RunSpec::default()
        };
        let m = spec.model().unwrap();
        assert!(matches!(spec.boundary(&m), Err(CliError::Validation(_))));
    }

    #[test]
    #[allow(clippy::approx_constant)] // a user-typed rounding of π/2
    fn grid_endpoints_snap_to_dirichlet() {
        let spec = RunSpec {
            ugrid: Some(3),
            urange: Some([-1.5707, 0.0]),
            ..RunSpec::default()
        };
        let g = spec.u_grid(10).unwrap();
        assert_eq!(g, vec![-FRAC_PI_2, -FRAC_PI_4, 0.0]);
    }
}
