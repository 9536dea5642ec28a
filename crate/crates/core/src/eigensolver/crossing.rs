//! Avoided-crossing detection on spectral flows.

use serde::{Deserialize, Serialize};

use super::{
    energy_grid, golden_minimize, nodes_at, refine_brackets, FlowAxis, PhaseTable, SolveConfig,
    SolveError, SpectralFlow,
};

/// Closest approach of two adjacent branches.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossingReport {
    pub lower_branch: usize,
    pub upper_branch: usize,
    /// Flow parameter at the minimum (u or R).
    pub parameter: f64,
    pub u_star: f64,
    pub gamma_star: f64,
    pub gap: f64,
    /// Mean of the two energies at the minimum.
    pub e_star: f64,
}

const PARAMETER_TOL: f64 = 1e-6;

/// Energies of branches `ids` at `parameter`, searched in `[lo, hi]` first.
fn pair_at(
    flow: &SpectralFlow,
    parameter: f64,
    ids: [usize; 2],
    lo: f64,
    hi: f64,
) -> Result<[f64; 2], SolveError> {
    if flow.axis == FlowAxis::BoundaryAngle {
        let (model, bc) = flow.column(parameter)?;
        let cfg: &SolveConfig = &flow.config;
        let table = PhaseTable::build(&model, energy_grid(&model, lo, hi, 400), cfg.backend)?;
        let roots = refine_brackets(&model, &bc, cfg, &table.brackets(&bc, lo, hi))?;
        let mut found = [None, None];
        for e in roots {
            let n = nodes_at(&model, e, cfg.backend)?;
            for (slot, &id) in found.iter_mut().zip(&ids) {
                if n == id && slot.is_none() {
                    *slot = Some(e);
                }
            }
        }
        if let [Some(a), Some(b)] = found {
            return Ok([a, b]);
        }
    }
    let v = flow.levels_at(parameter, &ids)?;
    Ok([v[0], v[1]])
}

/// Interior local minima of the gaps between adjacent branches, each refined
/// by golden-section search to a parameter bracket of 1e-6.
///
/// Flows with fewer than two branches or five parameters give no reports.
pub fn detect_crossings(flow: &SpectralFlow) -> Result<Vec<CrossingReport>, SolveError> {
    let mut out = Vec::new();
    if flow.branches.len() < 2 || flow.parameters.len() < 5 {
        return Ok(out);
    }
    for pair in flow.branches.windows(2) {
        let (lower, upper) = (&pair[0], &pair[1]);
        if upper.id != lower.id + 1 {
            continue;
        }
        let common: Vec<(f64, f64, f64)> = flow
            .parameters
            .iter()
            .filter_map(|&p| Some((p, lower.energy_at(p)?, upper.energy_at(p)?)))
            .collect();
        for j in 1..common.len().saturating_sub(1) {
            let gap = |k: usize| common[k].2 - common[k].1;
            if !(gap(j) < gap(j - 1) && gap(j) <= gap(j + 1)) {
                continue;
            }
            let (a, b) = (common[j - 1].0, common[j + 1].0);
            let e_lo = common[j - 1..=j + 1]
                .iter()
                .map(|c| c.1)
                .fold(f64::INFINITY, f64::min);
            let e_hi = common[j - 1..=j + 1]
                .iter()
                .map(|c| c.2)
                .fold(f64::NEG_INFINITY, f64::max);
            let pad = 0.25 * (e_hi - e_lo);
            let (lo, hi) = (e_lo - pad, e_hi + pad);
            let ids = [lower.id, upper.id];
            let gap_at = |p: f64| pair_at(flow, p, ids, lo, hi).map(|[x, y]| y - x);
            let (p_star, gap_star) = golden_minimize(gap_at, a, b, PARAMETER_TOL)?;
            let [e1, e2] = pair_at(flow, p_star, ids, lo, hi)?;
            let (u_star, gamma_star) = match flow.axis {
                FlowAxis::BoundaryAngle => (p_star, p_star.tan() / flow.model.radius()),
                FlowAxis::Radius { gamma } => ((gamma * p_star).atan(), gamma),
            };
            out.push(CrossingReport {
                lower_branch: lower.id,
                upper_branch: upper.id,
                parameter: p_star,
                u_star,
                gamma_star,
                gap: gap_star,
                e_star: 0.5 * (e1 + e2),
            });
        }
    }
    Ok(out)
}
