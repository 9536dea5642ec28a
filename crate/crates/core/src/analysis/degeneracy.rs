//! Scans for the accidental (λ, λ+2) degeneracies of confined hydrogen.

use serde::{Deserialize, Serialize};

use super::AnalysisError;
use crate::eigensolver::{find_levels, Level, SolveConfig};
use crate::models::{BoundaryCondition, ModelKind, RadialModel};

const SPECTROSCOPIC: &[u8] = b"spdfghiklmnoqrtuvwxyz";

/// Labels of one state in a degeneracy pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantumNumbers {
    /// l on the sphere, m on the cone.
    pub angular: i64,
    pub n_r: usize,
    /// `2s`, `3d`, … on the sphere; `m=0 n_r=1` on the cone.
    pub name: String,
}

impl QuantumNumbers {
    fn new(model: &RadialModel, n_r: usize) -> Self {
        let name = match model.kind() {
            ModelKind::HydrogenCone => format!("m={} n_r={n_r}", model.m()),
            _ => {
                let l = model.l() as usize;
                let letter = SPECTROSCOPIC
                    .get(l)
                    .map(|&c| (c as char).to_string())
                    .unwrap_or_else(|| format!("[l={l}]"));
                format!("{}{letter}", n_r + l + 1)
            }
        };
        Self {
            angular: model.angular_label(),
            n_r,
            name,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegeneratePair {
    pub lower: QuantumNumbers,
    pub partner: QuantumNumbers,
    pub energy_lower: f64,
    pub energy_partner: f64,
    pub gap: f64,
}

/// Pairs found at one `(R, γ)`. `pairs` holds those with gap below `tol`,
/// `split` the rest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegeneracyReport {
    pub system: String,
    pub radius: f64,
    pub gamma: f64,
    pub u: f64,
    pub tol: f64,
    pub pairs: Vec<DegeneratePair>,
    pub split: Vec<DegeneratePair>,
}

impl DegeneracyReport {
    pub fn is_degenerate(&self) -> bool {
        self.split.is_empty() && !self.pairs.is_empty()
    }

    pub fn max_gap(&self) -> f64 {
        self.pairs
            .iter()
            .chain(&self.split)
            .map(|p| p.gap)
            .fold(0.0, f64::max)
    }

    pub fn min_gap(&self) -> f64 {
        self.pairs
            .iter()
            .chain(&self.split)
            .map(|p| p.gap)
            .fold(f64::INFINITY, f64::min)
    }
}

/// The family whose effective exponent exceeds that of `model` by 2: l+2 on
/// the sphere, |m| + 2s on the cone (which must then be an integer).
pub fn partner_model(model: &RadialModel) -> Result<RadialModel, AnalysisError> {
    match model.kind() {
        ModelKind::FreeSphere => Err(AnalysisError::UnsupportedKind {
            operation: "degeneracy scan",
            kind: model.kind(),
        }),
        ModelKind::HydrogenSphere => {
            Ok(RadialModel::hydrogen_sphere(model.l() + 2, model.radius())?
                .with_constants(model.constants())?)
        }
        ModelKind::HydrogenCone => {
            let shift = 2.0 * model.s();
            if (shift - shift.round()).abs() > 1e-12 {
                return Err(AnalysisError::NoPartner(format!(
                    "2s = {shift} is not an integer, so |m| + 2s is not an allowed m"
                )));
            }
            let m = model.m();
            let m_abs = m.unsigned_abs() as i32 + shift.round() as i32;
            let partner = if m < 0 { -m_abs } else { m_abs };
            Ok(
                RadialModel::hydrogen_cone(partner, model.s(), model.radius())?
                    .with_constants(model.constants())?,
            )
        }
    }
}

/// Radius at which the degeneracy survives: `(l+1)(l+2)a` on the sphere and
/// `[(|m|/s + 1)² − 1/4]a` on the cone.
pub fn degeneracy_radius(model: &RadialModel) -> Option<f64> {
    let a = model.constants().bohr_radius()?;
    match model.kind() {
        ModelKind::FreeSphere => None,
        ModelKind::HydrogenSphere => {
            let l = model.l() as f64;
            Some((l + 1.0) * (l + 2.0) * a)
        }
        ModelKind::HydrogenCone => Some(((model.lambda() + 1.0).powi(2) - 0.25) * a),
    }
}

fn levels(
    model: &RadialModel,
    bc: &BoundaryCondition,
    count: usize,
) -> Result<Vec<Level>, AnalysisError> {
    let cfg = SolveConfig {
        max_states: None,
        ..SolveConfig::lowest(model, count)
    };
    Ok(find_levels(model, bc, &cfg)?.levels)
}

fn level_with(
    model: &RadialModel,
    levels: &[Level],
    nodes: usize,
    needed: usize,
) -> Result<f64, AnalysisError> {
    levels
        .iter()
        .find(|lv| lv.nodes == nodes)
        .map(|lv| lv.energy)
        .ok_or_else(|| AnalysisError::InsufficientStates {
            family: model.describe(),
            needed,
            found: levels.len(),
        })
}

/// Solves the families of `model` and its partner at each γ (absolute units,
/// ±∞ allowed) and pairs the lower family's state with `k + 1` nodes with the
/// partner's state with `k` nodes, `k = 0..n_pairs` (2s↔3d, 3s↔4d, …).
pub fn degeneracy_scan(
    model: &RadialModel,
    gammas: &[f64],
    n_pairs: usize,
    tol: f64,
) -> Result<Vec<DegeneracyReport>, AnalysisError> {
    if n_pairs == 0 {
        return Err(AnalysisError::InvalidArgument(
            "n_pairs must be positive".into(),
        ));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(AnalysisError::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let partner = partner_model(model)?;
    let radius = model.radius();
    let mut out = Vec::with_capacity(gammas.len());
    for &gamma in gammas {
        let bc = BoundaryCondition::from_gamma(gamma, radius)?;
        let lower_levels = levels(model, &bc, n_pairs + 1)?;
        let partner_levels = levels(&partner, &bc, n_pairs)?;
        let mut pairs = Vec::new();
        let mut split = Vec::new();
        for k in 0..n_pairs {
            let e_lower = level_with(model, &lower_levels, k + 1, n_pairs + 1)?;
            let e_partner = level_with(&partner, &partner_levels, k, n_pairs)?;
            let pair = DegeneratePair {
                lower: QuantumNumbers::new(model, k + 1),
                partner: QuantumNumbers::new(&partner, k),
                energy_lower: e_lower,
                energy_partner: e_partner,
                gap: (e_lower - e_partner).abs(),
            };
            if pair.gap < tol {
                pairs.push(pair);
            } else {
                split.push(pair);
            }
        }
        out.push(DegeneracyReport {
            system: model.describe(),
            radius,
            gamma,
            u: bc.u(),
            tol,
            pairs,
            split,
        });
    }
    Ok(out)
}
