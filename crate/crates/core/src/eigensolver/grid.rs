//! Energy grids and tabulated boundary phases for sign-change scanning.

use crate::models::{
    boundary_phase, Backend, BoundaryCondition, BoundaryPhase, ModelError, RadialModel,
};

/// Lowest energy a wall state can reach for this boundary condition, or `None`
/// when no wall state exists (γ ≥ 0 or the exact γ = −∞ limit).
pub(crate) fn wall_floor(model: &RadialModel, bc: &BoundaryCondition) -> Option<f64> {
    if bc.u() >= 0.0 || bc.is_negative_dirichlet() {
        return None;
    }
    let radius = model.radius();
    let c = model.constants();
    let reach = bc.gamma(radius).abs() + (model.lambda() + 1.0) / radius;
    Some(-1.2 * reach * reach / (2.0 * c.mass()) - 2.0 * c.charge_sq() / radius)
}

/// Scan window `[lo, hi]` for a solve, extended downward to capture a wall state.
pub(crate) fn scan_window(
    model: &RadialModel,
    bc: &BoundaryCondition,
    e_min: f64,
    e_max: f64,
    capture_wall: bool,
) -> (f64, f64) {
    let lo = match wall_floor(model, bc) {
        Some(floor) if capture_wall => e_min.min(floor).min(model.bulk_floor()),
        _ => e_min,
    };
    (lo, e_max)
}

/// Ascending energy grid on `[lo, hi]`: uniform above the model's bulk floor,
/// geometric in the distance below it, with E = 0 inserted when inside.
pub(crate) fn energy_grid(model: &RadialModel, lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let floor = model.bulk_floor();
    let mut grid = Vec::with_capacity(points + points / 2 + 2);
    let uniform_lo = lo.max(floor.min(hi));
    if lo < uniform_lo {
        let top = uniform_lo;
        let span = top - lo;
        let first = (span * 1e-7).max(model.energy_scale() * 1e-9).min(span);
        let count = (points / 2).max(50);
        let ratio = (span / first).powf(1.0 / count as f64);
        grid.push(lo);
        let mut dist = Vec::with_capacity(count);
        let mut d = first;
        for _ in 0..count {
            dist.push(d);
            d *= ratio;
        }
        for &d in dist.iter().rev() {
            let e = top - d;
            if e > lo {
                grid.push(e);
            }
        }
    }
    if hi > uniform_lo {
        let n = points.max(2);
        let step = (hi - uniform_lo) / (n - 1) as f64;
        for i in 0..n {
            grid.push(uniform_lo + step * i as f64);
        }
        *grid.last_mut().unwrap() = hi;
    } else {
        grid.push(hi);
    }
    if lo < 0.0 && hi > 0.0 {
        grid.push(0.0);
    }
    grid.sort_by(|a, b| a.total_cmp(b));
    grid.dedup();
    grid
}

/// A sign change (or exact zero) of the residual between two grid energies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Bracket {
    Change {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
    Zero {
        at: f64,
        lo: f64,
        hi: f64,
    },
}

/// Boundary phases tabulated on an energy grid. The phases do not depend on
/// the boundary condition, so one table serves a whole u-flow.
#[derive(Debug, Clone)]
pub(crate) struct PhaseTable {
    pub energies: Vec<f64>,
    pub phases: Vec<BoundaryPhase>,
}

impl PhaseTable {
    pub fn build(
        model: &RadialModel,
        energies: Vec<f64>,
        backend: Backend,
    ) -> Result<Self, ModelError> {
        let phases = energies
            .iter()
            .map(|&e| boundary_phase(model, e, backend))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { energies, phases })
    }

    /// Brackets of residual roots for `bc` restricted to `[lo, hi]`.
    pub fn brackets(&self, bc: &BoundaryCondition, lo: f64, hi: f64) -> Vec<Bracket> {
        let values: Vec<f64> = self.phases.iter().map(|p| p.residual(bc)).collect();
        let e = &self.energies;
        let mut out = Vec::new();
        let n = e.len();
        let mut i = 0;
        while i + 1 < n {
            if e[i + 1] < lo || e[i] > hi {
                i += 1;
                continue;
            }
            if values[i] == 0.0 {
                let left = if i > 0 { 0.5 * (e[i] + e[i - 1]) } else { e[i] };
                let right = 0.5 * (e[i] + e[i + 1]);
                out.push(Bracket::Zero {
                    at: e[i],
                    lo: left,
                    hi: right,
                });
                i += 1;
                continue;
            }
            if values[i + 1] == 0.0 {
                i += 1;
                if i + 1 == n {
                    out.push(Bracket::Zero {
                        at: e[i],
                        lo: 0.5 * (e[i] + e[i - 1]),
                        hi: e[i],
                    });
                }
                continue;
            }
            if (values[i] < 0.0) != (values[i + 1] < 0.0) {
                out.push(Bracket::Change {
                    lo: e[i],
                    hi: e[i + 1],
                    f_lo: values[i],
                    f_hi: values[i + 1],
                });
            }
            i += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_sorted_and_contains_endpoints() {
        let m = RadialModel::hydrogen_sphere(0, 4.0).unwrap();
        let g = energy_grid(&m, -1e4, 5.0, 200);
        assert_eq!(g[0], -1e4);
        assert_eq!(*g.last().unwrap(), 5.0);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        assert!(g.contains(&0.0));
    }

    #[test]
    fn wall_floor_only_for_negative_gamma() {
        let m = RadialModel::free_sphere(0, 1.0).unwrap();
        assert!(wall_floor(&m, &BoundaryCondition::neumann()).is_none());
        assert!(wall_floor(
            &m,
            &BoundaryCondition::from_u(-std::f64::consts::FRAC_PI_2).unwrap()
        )
        .is_none());
        let bc = BoundaryCondition::from_gamma(-100.0, 1.0).unwrap();
        let floor = wall_floor(&m, &bc).unwrap();
        assert!(floor < -(101.0f64.powi(2)) / 2.0);
    }
}
