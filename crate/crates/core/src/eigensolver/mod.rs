//! Eigenvalues as roots of the boundary residual.
//!
//! A grid scan brackets sign changes, Illinois/bisection refines them, and
//! node counts index the states. Flows continue levels over a parameter grid
//! and crossing detection locates the closest approach of adjacent levels.

mod crossing;
mod flow;
mod grid;
mod nodes;
mod refine;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::models::{
    boundary_phase, Backend, BoundaryCondition, EigenState, ModelError, ModelKind, RadialModel,
};

pub use crossing::{detect_crossings, CrossingReport};
pub use flow::{radius_flow, spectral_flow, Branch, FlowAxis, FlowPoint, SpectralFlow};
pub use nodes::{count_nodes, nodes_at};

pub(crate) use grid::{energy_grid, scan_window, Bracket, PhaseTable};
pub(crate) use refine::{golden_minimize, refine_root};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("node count is ambiguous near r = {r}")]
    AmbiguousNodes { r: f64 },
    #[error("branch {branch} could not be continued to parameter {parameter}")]
    BranchBreak { branch: usize, parameter: f64 },
}

/// Energy window and numerical controls for a spectrum solve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolveConfig {
    pub e_min: f64,
    pub e_max: f64,
    /// Points of the uniform part of the scan grid.
    pub grid_points: usize,
    /// Relative energy tolerance of refined roots.
    pub root_tol: f64,
    /// Keep at most this many of the lowest states.
    pub max_states: Option<usize>,
    pub backend: Backend,
    /// Extend the window below `e_min` when γ < 0 so that the wall state is found.
    pub capture_wall_states: bool,
    /// Gauss–Legendre order per panel for sampled states.
    pub quadrature_order: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            e_min: -1.0,
            e_max: 1.0,
            grid_points: 2000,
            root_tol: 1e-12,
            max_states: None,
            backend: Backend::Auto,
            capture_wall_states: true,
            quadrature_order: crate::models::DEFAULT_ORDER,
        }
    }
}

impl SolveConfig {
    pub fn new(e_min: f64, e_max: f64) -> Result<Self, SolveError> {
        let cfg = Self {
            e_min,
            e_max,
            ..Self::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Window holding at least the lowest `count` states of `model` for any
    /// boundary condition (the upper edge sits above the Dirichlet level).
    pub fn lowest(model: &RadialModel, count: usize) -> Self {
        let radius = model.radius();
        let k = (count as f64 + 0.5 * model.lambda() + 1.5) * std::f64::consts::PI / radius;
        let e_max = k * k / (2.0 * model.constants().mass());
        let e_min = match model.kind() {
            ModelKind::FreeSphere => -0.1 * e_max,
            _ => model.bulk_floor(),
        };
        Self {
            e_min,
            e_max,
            max_states: Some(count),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), SolveError> {
        if !(self.e_min.is_finite() && self.e_max.is_finite() && self.e_min < self.e_max) {
            return Err(SolveError::InvalidConfig(format!(
                "energy window [{}, {}] must be finite with e_min < e_max",
                self.e_min, self.e_max
            )));
        }
        if self.grid_points < 100 {
            return Err(SolveError::InvalidConfig(format!(
                "grid_points = {} is below the minimum of 100",
                self.grid_points
            )));
        }
        if !(self.root_tol.is_finite() && self.root_tol > 0.0 && self.root_tol < 1e-3) {
            return Err(SolveError::InvalidConfig(format!(
                "root_tol = {} must lie in (0, 1e-3)",
                self.root_tol
            )));
        }
        if self.max_states == Some(0) {
            return Err(SolveError::InvalidConfig(
                "max_states must be positive".into(),
            ));
        }
        if !(2..=256).contains(&self.quadrature_order) {
            return Err(SolveError::InvalidConfig(format!(
                "quadrature_order = {} must lie in [2, 256]",
                self.quadrature_order
            )));
        }
        Ok(())
    }

    pub(crate) fn abs_tol(&self, model: &RadialModel, energy: f64) -> f64 {
        self.root_tol * energy.abs().max(model.energy_scale())
    }
}

/// A refined eigenvalue with its radial node count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub energy: f64,
    pub nodes: usize,
}

/// Non-fatal findings of a solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Diagnostic {
    /// Node counts of neighbouring states jump by more than one.
    MissedRoot {
        below: f64,
        above: f64,
        nodes_below: usize,
        nodes_above: usize,
    },
    /// The lowest state found does not have the node count expected for the
    /// bottom of the spectrum.
    GroundStateMissing { energy: f64, nodes: usize },
    /// More states were found than `max_states`; the highest were dropped.
    Truncated { kept: usize, found: usize },
}

/// Eigenvalues (with node counts) in a window, without sampled wave functions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelSet {
    pub levels: Vec<Level>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Sampled eigenstates in a window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub model: RadialModel,
    pub bc: BoundaryCondition,
    pub states: Vec<EigenState>,
    pub diagnostics: Vec<Diagnostic>,
}

impl Spectrum {
    pub fn energies(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.energy).collect()
    }
}

/// Refines every bracket into a root.
pub(crate) fn refine_brackets(
    model: &RadialModel,
    bc: &BoundaryCondition,
    cfg: &SolveConfig,
    brackets: &[Bracket],
) -> Result<Vec<f64>, SolveError> {
    let f = |e: f64| boundary_phase(model, e, cfg.backend).map(|p| p.residual(bc));
    let mut roots = Vec::with_capacity(brackets.len());
    for b in brackets {
        let root = match *b {
            Bracket::Change { lo, hi, f_lo, f_hi } => {
                let tol = cfg.abs_tol(model, lo.abs().min(hi.abs()));
                refine_root(f, lo, hi, f_lo, f_hi, tol)?
            }
            Bracket::Zero { at, lo, hi } => {
                let (f_lo, f_hi) = (f(lo)?, f(hi)?);
                if lo < hi && (f_lo < 0.0) != (f_hi < 0.0) {
                    let tol = cfg.abs_tol(model, at);
                    refine_root(f, lo, hi, f_lo, f_hi, tol)?
                } else {
                    at
                }
            }
        };
        roots.push(root);
    }
    if model.kind().is_hydrogen() && cfg.backend != Backend::Ode {
        let ode = |e: f64| boundary_phase(model, e, Backend::Ode).map(|p| p.residual(bc));
        for root in roots.iter_mut() {
            let tol = cfg.abs_tol(model, 0.0);
            if root.abs() <= 10.0 * tol {
                let w = 100.0 * tol;
                let (f_lo, f_hi) = (ode(-w)?, ode(w)?);
                if (f_lo < 0.0) != (f_hi < 0.0) {
                    *root = refine_root(ode, -w, w, f_lo, f_hi, tol)?;
                }
            }
        }
    }
    Ok(roots)
}

/// Roots in `[lo, hi]` from a fresh scan with `points` uniform grid points.
fn scan_roots(
    model: &RadialModel,
    bc: &BoundaryCondition,
    cfg: &SolveConfig,
    lo: f64,
    hi: f64,
    points: usize,
) -> Result<Vec<f64>, SolveError> {
    let table = PhaseTable::build(model, energy_grid(model, lo, hi, points), cfg.backend)?;
    let brackets = table.brackets(bc, lo, hi);
    let mut roots = refine_brackets(model, bc, cfg, &brackets)?;
    roots.retain(|&e| e >= lo && e <= hi);
    Ok(roots)
}

fn dedup_roots(model: &RadialModel, cfg: &SolveConfig, roots: &mut Vec<f64>) {
    roots.sort_by(|a, b| a.total_cmp(b));
    roots.dedup_by(|b, a| (*b - *a).abs() <= 4.0 * cfg.abs_tol(model, *a));
}

/// Assigns node counts, rescans gaps where counts jump, and records diagnostics.
pub(crate) fn index_levels(
    model: &RadialModel,
    bc: &BoundaryCondition,
    cfg: &SolveConfig,
    mut roots: Vec<f64>,
    window_lo: f64,
    bottom_expected: bool,
) -> Result<LevelSet, SolveError> {
    dedup_roots(model, cfg, &mut roots);
    let mut levels = label(model, cfg, &roots)?;
    let mut extra = Vec::new();
    if bottom_expected {
        if let Some(first) = levels.first() {
            if first.nodes > 0 {
                extra.extend(scan_roots(
                    model,
                    bc,
                    cfg,
                    window_lo,
                    first.energy,
                    cfg.grid_points * 10,
                )?);
            }
        }
    }
    for w in levels.windows(2) {
        if w[1].nodes > w[0].nodes + 1 {
            extra.extend(scan_roots(
                model,
                bc,
                cfg,
                w[0].energy,
                w[1].energy,
                cfg.grid_points * 10,
            )?);
        }
    }
    if !extra.is_empty() {
        roots.extend(extra);
        dedup_roots(model, cfg, &mut roots);
        levels = label(model, cfg, &roots)?;
    }
    let mut diagnostics = Vec::new();
    if bottom_expected {
        if let Some(first) = levels.first() {
            if first.nodes > 0 {
                diagnostics.push(Diagnostic::GroundStateMissing {
                    energy: first.energy,
                    nodes: first.nodes,
                });
            }
        }
    }
    for w in levels.windows(2) {
        if w[1].nodes > w[0].nodes + 1 {
            diagnostics.push(Diagnostic::MissedRoot {
                below: w[0].energy,
                above: w[1].energy,
                nodes_below: w[0].nodes,
                nodes_above: w[1].nodes,
            });
        }
    }
    if let Some(max) = cfg.max_states {
        if levels.len() > max {
            diagnostics.push(Diagnostic::Truncated {
                kept: max,
                found: levels.len(),
            });
            levels.truncate(max);
        }
    }
    Ok(LevelSet {
        levels,
        diagnostics,
    })
}

fn label(model: &RadialModel, cfg: &SolveConfig, roots: &[f64]) -> Result<Vec<Level>, SolveError> {
    roots
        .iter()
        .map(|&energy| {
            Ok(Level {
                energy,
                nodes: nodes_at(model, energy, cfg.backend)?,
            })
        })
        .collect()
}

/// True when the window reaches below every state of the family, so the lowest
/// root found must be nodeless.
pub(crate) fn window_reaches_bottom(model: &RadialModel, bc: &BoundaryCondition, lo: f64) -> bool {
    let bottom = match grid::wall_floor(model, bc) {
        Some(floor) => floor.min(model.bulk_floor()),
        None => model.bulk_floor(),
    };
    lo <= bottom
}

/// Eigenvalues and node counts of `model` with boundary condition `bc` in the
/// configured window, sorted ascending.
pub fn find_levels(
    model: &RadialModel,
    bc: &BoundaryCondition,
    cfg: &SolveConfig,
) -> Result<LevelSet, SolveError> {
    cfg.validate()?;
    let (lo, hi) = scan_window(model, bc, cfg.e_min, cfg.e_max, cfg.capture_wall_states);
    let roots = scan_roots(model, bc, cfg, lo, hi, cfg.grid_points)?;
    index_levels(
        model,
        bc,
        cfg,
        roots,
        lo,
        window_reaches_bottom(model, bc, lo),
    )
}

/// All eigenstates in the window, each refined to `root_tol`, indexed by node
/// count and sampled on a normalized Gauss–Legendre grid.
pub fn solve_spectrum(
    model: &RadialModel,
    bc: &BoundaryCondition,
    cfg: &SolveConfig,
) -> Result<Spectrum, SolveError> {
    let set = find_levels(model, bc, cfg)?;
    let states = set
        .levels
        .iter()
        .map(|lv| build_state(model, bc, cfg, lv))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Spectrum {
        model: *model,
        bc: *bc,
        states,
        diagnostics: set.diagnostics,
    })
}

/// Samples and normalizes the eigenstate of one refined level.
pub fn build_state(
    model: &RadialModel,
    bc: &BoundaryCondition,
    cfg: &SolveConfig,
    level: &Level,
) -> Result<EigenState, SolveError> {
    let mut st = EigenState::sample(
        model,
        bc,
        level.energy,
        level.nodes,
        cfg.backend,
        cfg.quadrature_order,
    )?;
    let norm = st.norm;
    if norm > 0.0 && norm.is_finite() {
        for s in st.samples.iter_mut() {
            s.psi /= norm;
            s.dpsi /= norm;
        }
        st.boundary_psi /= norm;
        st.boundary_dpsi /= norm;
        st.norm = 1.0;
    }
    Ok(st)
}
