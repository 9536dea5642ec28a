use serde::{Deserialize, Serialize};

use super::{
    regular_solution, resolve_backend, Backend, BoundaryCondition, EnergyPoint, ModelError,
    RadialModel,
};
use crate::quadrature::QuadratureRule;

/// Default Gauss–Legendre order per panel.
pub const DEFAULT_ORDER: usize = 32;

/// One quadrature sample of a radial wave function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub r: f64,
    /// Quadrature weight including the radial measure.
    pub weight: f64,
    pub psi: f64,
    pub dpsi: f64,
}

/// An eigenvalue with its node count and sampled radial wave function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenState {
    pub model: RadialModel,
    pub bc: BoundaryCondition,
    pub energy: f64,
    pub nodes: usize,
    pub samples: Vec<Sample>,
    /// ψ(R) in the same normalization as the samples.
    pub boundary_psi: f64,
    /// ψ'(R) in the same normalization as the samples.
    pub boundary_dpsi: f64,
    /// `sqrt(∫|ψ|² dμ)` of the stored samples (1 once normalized).
    pub norm: f64,
    pub backend: Backend,
}

/// Panel breakpoints for integrating a state at energy `energy`.
///
/// Bulk panels are uniform and sized to the oscillation and decay rates. The
/// first panel is graded geometrically toward the origin, and a geometric run
/// of panels hugs the wall when the solution is exponentially localized there.
pub fn radial_breaks(model: &RadialModel, energy: f64, min_panels: usize) -> Vec<f64> {
    let radius = model.radius();
    let c = model.constants();
    let two_m = 2.0 * c.mass();
    let kappa_wall_sq =
        model.centrifugal() / (radius * radius) - two_m * (energy - model.potential(radius));
    let kappa_wall = kappa_wall_sq.max(0.0).sqrt();
    let mut wall = Vec::new();
    let mut bulk_end = radius;
    if kappa_wall * radius > 20.0 {
        let mut width = 1.0 / kappa_wall;
        let mut edge = radius;
        while edge - width > 0.5 * radius {
            wall.push(edge);
            edge -= width;
            width *= 2.0;
        }
        wall.push(edge);
        bulk_end = edge;
    }
    let kappa_bulk = (two_m * energy.abs()).sqrt();
    let half_waves = model.wkb_half_waves(energy);
    let panels = min_panels
        .max(half_waves.ceil() as usize + 2)
        .max((kappa_bulk * bulk_end / 4.0).ceil() as usize);
    let width = bulk_end / panels as f64;
    let mut breaks = vec![0.0];
    for level in (1..=6).rev() {
        breaks.push(width / 4f64.powi(level));
    }
    for i in 1..panels {
        breaks.push(width * i as f64);
    }
    breaks.push(bulk_end);
    for &edge in wall.iter().rev().skip(1) {
        breaks.push(edge);
    }
    breaks
}

impl EigenState {
    /// Samples the regular solution at `energy` on a composite Gauss–Legendre
    /// grid. The result is not normalized; `norm` holds its L² norm.
    pub fn sample(
        model: &RadialModel,
        bc: &BoundaryCondition,
        energy: f64,
        nodes: usize,
        backend: Backend,
        order: usize,
    ) -> Result<Self, ModelError> {
        let backend = resolve_backend(model, energy, backend)?;
        let rule = QuadratureRule::composite(&radial_breaks(model, energy, 4), order);
        let mut radii = rule.nodes.clone();
        radii.push(model.radius());
        let pairs = regular_solution(model, energy, &radii, backend)?;
        let reference = pairs
            .iter()
            .zip(&radii)
            .map(|(p, r)| p.log_scale + (p.value.abs() + r * p.slope.abs()).ln())
            .fold(f64::NEG_INFINITY, f64::max);
        let mut samples = Vec::with_capacity(rule.len());
        let mut norm_sq = 0.0;
        for ((p, &r), &w) in pairs.iter().zip(&radii).zip(&rule.weights) {
            let f = (p.log_scale - reference).exp();
            let weight = w * model.measure(r);
            let psi = p.value * f;
            norm_sq += weight * psi * psi;
            samples.push(Sample {
                r,
                weight,
                psi,
                dpsi: p.slope * f,
            });
        }
        let wall = pairs[pairs.len() - 1];
        let f = (wall.log_scale - reference).exp();
        Ok(Self {
            model: *model,
            bc: *bc,
            energy,
            nodes,
            samples,
            boundary_psi: wall.value * f,
            boundary_dpsi: wall.slope * f,
            norm: norm_sq.sqrt(),
            backend,
        })
    }

    pub fn energy_point(&self) -> Result<EnergyPoint, ModelError> {
        EnergyPoint::new(&self.model, self.energy)
    }

    /// `∫ f(r) |ψ(r)|² dμ` over the stored samples.
    pub fn expectation<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.samples
            .iter()
            .map(|s| s.weight * s.psi * s.psi * f(s.r))
            .sum()
    }

    /// `(r, ψ(r))` pairs of the stored samples.
    pub fn profile(&self) -> Vec<(f64, f64)> {
        self.samples.iter().map(|s| (s.r, s.psi)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn breaks_are_increasing_and_cover_the_radius() {
        let m = RadialModel::hydrogen_sphere(0, 4.0).unwrap();
        for &e in &[-1500.0, -0.5, 0.0, 3.0] {
            let b = radial_breaks(&m, e, 4);
            assert_eq!(b[0], 0.0);
            assert_eq!(*b.last().unwrap(), 4.0);
            assert!(b.windows(2).all(|w| w[1] > w[0]), "e={e}: {b:?}");
        }
    }

    #[test]
    fn sampled_norm_of_hydrogen_ground_state() {
        let m = RadialModel::hydrogen_sphere(0, 30.0).unwrap();
        let bc = BoundaryCondition::from_gamma(1.0, 30.0).unwrap();
        let st = EigenState::sample(&m, &bc, -0.5, 0, Backend::Auto, DEFAULT_ORDER).unwrap();
        let expect = 0.25 * (1.0 - (-60.0f64).exp() * (1.0 + 60.0 + 1800.0));
        let scale = st.samples[0].psi / (-st.samples[0].r).exp();
        let got = st.norm * st.norm / (scale * scale);
        assert!((got / expect - 1.0).abs() < 1e-13);
    }
}
