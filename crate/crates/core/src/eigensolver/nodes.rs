//! Radial node counting.

use super::SolveError;
use crate::models::{regular_solution, Backend, RadialModel, ScaledPair};

/// Number of strict sign changes of ψ over the samples `(r, ψ(r))`.
///
/// Exact zeros are skipped, so a zero at the last sample (a Dirichlet wall)
/// is not counted. Three or more consecutive samples below `1e-13·max|ψ|`
/// make the count ambiguous.
pub fn count_nodes(samples: &[(f64, f64)]) -> Result<usize, SolveError> {
    let max = samples.iter().map(|s| s.1.abs()).fold(0.0, f64::max);
    if max == 0.0 || !max.is_finite() {
        return Err(SolveError::AmbiguousNodes { r: 0.0 });
    }
    let threshold = 1e-13 * max;
    let mut run = 0;
    for &(r, psi) in samples {
        if psi.abs() < threshold {
            run += 1;
            if run >= 3 {
                return Err(SolveError::AmbiguousNodes { r });
            }
        } else {
            run = 0;
        }
    }
    let mut count = 0;
    let mut last = 0.0;
    for &(_, psi) in samples {
        if psi == 0.0 {
            continue;
        }
        if last != 0.0 && (psi < 0.0) != (last < 0.0) {
            count += 1;
        }
        last = psi;
    }
    Ok(count)
}

const WALL_ZERO: f64 = 1e-9;

/// Phase-normalized sign signal `ψ/(|ψ| + r|ψ'|)`, independent of the scale.
fn signal(r: f64, p: &ScaledPair) -> f64 {
    let d = p.value.abs() + r * p.slope.abs();
    if d == 0.0 {
        0.0
    } else {
        p.value / d
    }
}

/// Interior node count of the regular solution at `energy`, including the
/// open interval between the last interior sample and the wall.
pub fn nodes_at(model: &RadialModel, energy: f64, backend: Backend) -> Result<usize, SolveError> {
    let radius = model.radius();
    let half_waves = model.wkb_half_waves(energy);
    let n = 400usize.max((20.0 * half_waves) as usize + 20);
    let mut radii: Vec<f64> = (1..=n)
        .map(|i| (i as f64 - 0.5) * radius / n as f64)
        .collect();
    radii.push(radius);
    let pairs = regular_solution(model, energy, &radii, backend)?;
    let mut samples: Vec<(f64, f64)> = radii
        .iter()
        .zip(&pairs)
        .map(|(&r, p)| (r, signal(r, p)))
        .collect();
    // A wall value at rounding level is a Dirichlet zero, not a sign.
    if let Some(last) = samples.last_mut() {
        if last.1.abs() < WALL_ZERO {
            last.1 = 0.0;
        }
    }
    // A dip of |ψ| between two same-sign samples may hide a pair of nodes.
    let mut extra = Vec::new();
    for i in 0..pairs.len() - 1 {
        let (a, b) = (&pairs[i], &pairs[i + 1]);
        let same_sign = (a.value < 0.0) == (b.value < 0.0);
        if same_sign && a.value * a.slope < 0.0 && b.value * b.slope > 0.0 {
            let (ra, rb) = (radii[i], radii[i + 1]);
            let sub: Vec<f64> = (1..32).map(|k| ra + (rb - ra) * k as f64 / 32.0).collect();
            let sub_pairs = regular_solution(model, energy, &sub, backend)?;
            extra.extend(sub.iter().zip(&sub_pairs).map(|(&r, p)| (r, signal(r, p))));
        }
    }
    if !extra.is_empty() {
        samples.extend(extra);
        samples.sort_by(|a, b| a.0.total_cmp(&b.0));
    }
    count_nodes(&samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn sine_samples(k: f64) -> Vec<(f64, f64)> {
        (1..1000)
            .map(|i| {
                let r = i as f64 / 1000.0;
                (r, (k * PI * r).sin())
            })
            .collect()
    }

    #[test]
    fn counts_sine_nodes() {
        assert_eq!(count_nodes(&sine_samples(1.0)).unwrap(), 0);
        assert_eq!(count_nodes(&sine_samples(3.0)).unwrap(), 2);
    }

    #[test]
    fn ambiguous_flat_region() {
        let s = vec![(0.1, 1.0), (0.2, 0.0), (0.3, 1e-20), (0.4, 0.0), (0.5, 1.0)];
        assert!(matches!(
            count_nodes(&s),
            Err(SolveError::AmbiguousNodes { .. })
        ));
    }

    #[test]
    fn hydrogen_three_s_has_two_nodes() {
        let m = RadialModel::hydrogen_sphere(0, 16.0).unwrap();
        // Near the infinite-volume 3s level the wall barely matters at R = 16.
        let n = nodes_at(&m, -1.0 / 18.0, Backend::Ode).unwrap();
        assert_eq!(n, 2);
    }
}
