//! Continuation of eigenvalue branches over boundary-angle or radius grids.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{
    energy_grid, find_levels, index_levels, nodes_at, refine_brackets, scan_window,
    window_reaches_bottom, Diagnostic, Level, PhaseTable, SolveConfig, SolveError,
};
use crate::models::{BoundaryCondition, RadialModel};

/// The flow parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "axis", rename_all = "snake_case")]
pub enum FlowAxis {
    /// `u = arctan(γR)` at fixed radius.
    BoundaryAngle,
    /// Cavity radius at fixed γ (absolute units; may be ±∞).
    Radius { gamma: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowPoint {
    pub parameter: f64,
    pub energy: f64,
    pub nodes: usize,
}

/// One continued level. `node_count` is the node count shared by every point
/// at finite γ; in the γ = −∞ column the same branch has one node fewer,
/// because the wall state that held the lowest slot has dived away.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Branch {
    pub id: usize,
    pub node_count: usize,
    pub points: Vec<FlowPoint>,
}

impl Branch {
    pub fn energy_at(&self, parameter: f64) -> Option<f64> {
        self.points
            .iter()
            .find(|p| p.parameter == parameter)
            .map(|p| p.energy)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralFlow {
    pub model: RadialModel,
    pub axis: FlowAxis,
    pub parameters: Vec<f64>,
    pub branches: Vec<Branch>,
    pub config: SolveConfig,
    pub diagnostics: Vec<(f64, Diagnostic)>,
}

fn sorted_grid(values: &[f64]) -> Result<Vec<f64>, SolveError> {
    if values.is_empty() {
        return Err(SolveError::InvalidConfig("parameter grid is empty".into()));
    }
    let mut v = values.to_vec();
    if v.iter().any(|x| x.is_nan()) {
        return Err(SolveError::InvalidConfig(
            "parameter grid contains NaN".into(),
        ));
    }
    v.sort_by(|a, b| a.total_cmp(b));
    v.dedup();
    Ok(v)
}

fn branch_id(level: &Level, bc: &BoundaryCondition) -> usize {
    if bc.is_negative_dirichlet() {
        level.nodes + 1
    } else {
        level.nodes
    }
}

struct Stitcher {
    branches: BTreeMap<usize, Branch>,
    limit: Option<usize>,
}

impl Stitcher {
    fn push(&mut self, parameter: f64, level: &Level, id: usize) {
        if self.limit.is_some_and(|max| id >= max) {
            return;
        }
        self.branches
            .entry(id)
            .or_insert_with(|| Branch {
                id,
                node_count: id,
                points: Vec::new(),
            })
            .points
            .push(FlowPoint {
                parameter,
                energy: level.energy,
                nodes: level.nodes,
            });
    }

    fn last_energy(&self, id: usize) -> Option<(f64, f64)> {
        self.branches
            .get(&id)
            .and_then(|b| b.points.last())
            .map(|p| (p.parameter, p.energy))
    }
}

/// Searches for the level with `nodes` nodes near `guess` by widening a
/// bracket around it.
fn warm_start(
    model: &RadialModel,
    bc: &BoundaryCondition,
    cfg: &SolveConfig,
    guess: f64,
    nodes: usize,
    lo: f64,
    hi: f64,
) -> Result<Option<Level>, SolveError> {
    let mut width = (hi - lo) / cfg.grid_points as f64;
    for _ in 0..16 {
        let a = (guess - width).max(lo);
        let b = (guess + width).min(hi);
        let table = PhaseTable::build(model, energy_grid(model, a, b, 128), cfg.backend)?;
        let roots = refine_brackets(model, bc, cfg, &table.brackets(bc, a, b))?;
        for e in roots {
            if nodes_at(model, e, cfg.backend)? == nodes {
                return Ok(Some(Level { energy: e, nodes }));
            }
        }
        if a <= lo && b >= hi {
            break;
        }
        width *= 2.0;
    }
    Ok(None)
}

/// Traces the levels of `model` over the boundary angles `u_grid`.
///
/// The tabulated boundary phases are shared by all columns; every column is
/// scanned for sign changes, refined, and labelled by node count. Branches
/// that vanish from a column while their continuation lies inside the window
/// are re-sought from the previous energy with widening brackets. The exact
/// `u = −π/2` column is the Dirichlet limit and carries branch `nodes + 1`.
pub fn spectral_flow(
    model: &RadialModel,
    u_grid: &[f64],
    cfg: &SolveConfig,
) -> Result<SpectralFlow, SolveError> {
    cfg.validate()?;
    let grid = sorted_grid(u_grid)?;
    let bcs = grid
        .iter()
        .map(|&u| BoundaryCondition::from_u(u))
        .collect::<Result<Vec<_>, _>>()?;
    let lo = bcs
        .iter()
        .map(|bc| scan_window(model, bc, cfg.e_min, cfg.e_max, cfg.capture_wall_states).0)
        .fold(f64::INFINITY, f64::min);
    let table = PhaseTable::build(
        model,
        energy_grid(model, lo, cfg.e_max, cfg.grid_points),
        cfg.backend,
    )?;
    let mut stitch = Stitcher {
        branches: BTreeMap::new(),
        limit: cfg.max_states,
    };
    let mut diagnostics = Vec::new();
    // Continue from the Dirichlet end downward: levels fall monotonically with u.
    for (&u, bc) in grid.iter().zip(&bcs).rev() {
        let (clo, chi) = scan_window(model, bc, cfg.e_min, cfg.e_max, cfg.capture_wall_states);
        let mut roots = refine_brackets(model, bc, cfg, &table.brackets(bc, clo, chi))?;
        roots.retain(|&e| e >= clo && e <= chi);
        let bottom = window_reaches_bottom(model, bc, clo);
        let uncapped = SolveConfig {
            max_states: None,
            ..*cfg
        };
        let set = index_levels(model, bc, &uncapped, roots, clo, bottom)?;
        diagnostics.extend(set.diagnostics.iter().cloned().map(|d| (u, d)));
        let mut levels = set.levels;
        let present: Vec<usize> = levels.iter().map(|lv| branch_id(lv, bc)).collect();
        let expected: Vec<usize> = stitch.branches.keys().copied().collect();
        let margin = 0.05 * (chi - clo);
        for id in expected {
            if present.contains(&id) || (bc.is_negative_dirichlet() && id == 0) {
                continue;
            }
            let Some((_, guess)) = stitch.last_energy(id) else {
                continue;
            };
            if guess > chi - margin || guess < clo + margin {
                continue;
            }
            let nodes = if bc.is_negative_dirichlet() {
                id - 1
            } else {
                id
            };
            match warm_start(model, bc, cfg, guess, nodes, clo, chi)? {
                Some(level) => levels.push(level),
                None => {
                    return Err(SolveError::BranchBreak {
                        branch: id,
                        parameter: u,
                    })
                }
            }
        }
        levels.sort_by(|a, b| a.energy.total_cmp(&b.energy));
        for lv in &levels {
            stitch.push(u, lv, branch_id(lv, bc));
        }
    }
    let mut branches: Vec<Branch> = stitch.branches.into_values().collect();
    for b in branches.iter_mut() {
        b.points.reverse();
    }
    Ok(SpectralFlow {
        model: *model,
        axis: FlowAxis::BoundaryAngle,
        parameters: grid,
        branches,
        config: *cfg,
        diagnostics,
    })
}

/// Traces the levels over cavity radii at fixed γ (absolute units, ±∞ allowed).
pub fn radius_flow(
    model: &RadialModel,
    gamma: f64,
    radii: &[f64],
    cfg: &SolveConfig,
) -> Result<SpectralFlow, SolveError> {
    cfg.validate()?;
    let grid = sorted_grid(radii)?;
    let mut stitch = Stitcher {
        branches: BTreeMap::new(),
        limit: cfg.max_states,
    };
    let mut diagnostics = Vec::new();
    let uncapped = SolveConfig {
        max_states: None,
        ..*cfg
    };
    for &radius in &grid {
        let m = model.with_radius(radius)?;
        let bc = BoundaryCondition::from_gamma(gamma, radius)?;
        let set = find_levels(&m, &bc, &uncapped)?;
        diagnostics.extend(set.diagnostics.iter().cloned().map(|d| (radius, d)));
        for lv in &set.levels {
            stitch.push(radius, lv, lv.nodes);
        }
    }
    Ok(SpectralFlow {
        model: *model,
        axis: FlowAxis::Radius { gamma },
        parameters: grid,
        branches: stitch.branches.into_values().collect(),
        config: *cfg,
        diagnostics,
    })
}

impl SpectralFlow {
    pub fn branch(&self, id: usize) -> Option<&Branch> {
        self.branches.iter().find(|b| b.id == id)
    }

    /// Boundary condition and model of one column.
    pub fn column(&self, parameter: f64) -> Result<(RadialModel, BoundaryCondition), SolveError> {
        match self.axis {
            FlowAxis::BoundaryAngle => Ok((self.model, BoundaryCondition::from_u(parameter)?)),
            FlowAxis::Radius { gamma } => {
                let m = self.model.with_radius(parameter)?;
                Ok((m, BoundaryCondition::from_gamma(gamma, parameter)?))
            }
        }
    }

    /// Refined energies of the levels with node counts `ids` at `parameter`,
    /// solved afresh.
    pub(crate) fn levels_at(&self, parameter: f64, ids: &[usize]) -> Result<Vec<f64>, SolveError> {
        let (model, bc) = self.column(parameter)?;
        let cfg = SolveConfig {
            max_states: None,
            ..self.config
        };
        let set = find_levels(&model, &bc, &cfg)?;
        ids.iter()
            .map(|&id| {
                let nodes = if bc.is_negative_dirichlet() {
                    id.checked_sub(1)
                } else {
                    Some(id)
                };
                set.levels
                    .iter()
                    .find(|lv| Some(lv.nodes) == nodes)
                    .map(|lv| lv.energy)
                    .ok_or(SolveError::BranchBreak {
                        branch: id,
                        parameter,
                    })
            })
            .collect()
    }
}
