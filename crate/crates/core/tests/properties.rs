//! Property tests over models, the eigensolver and the analysis layer.

use std::f64::consts::FRAC_PI_2;

use proptest::prelude::*;

use cavity_spectra::analysis::{
    degeneracy_scan, normalize, runge_defect, uncertainty_check, DefectKind,
};
use cavity_spectra::eigensolver::{build_state, find_levels, spectral_flow, Level, SolveConfig};
use cavity_spectra::models::{
    boundary_pair, boundary_phase, residual, Backend, BoundaryCondition, EigenState, ModelKind,
    RadialModel, DEFAULT_ORDER,
};
use cavity_spectra::specfun::{laguerre_general, EvalControl};

fn any_model() -> impl Strategy<Value = RadialModel> {
    prop_oneof![
        (0u32..=3, 0.5f64..8.0).prop_map(|(l, r)| RadialModel::free_sphere(l, r).unwrap()),
        (0u32..=3, 0.5f64..8.0).prop_map(|(l, r)| RadialModel::hydrogen_sphere(l, r).unwrap()),
        (
            -2i32..=2,
            prop::sample::select(vec![0.5, 0.75, 1.0]),
            0.5f64..8.0
        )
            .prop_map(|(m, s, r)| RadialModel::hydrogen_cone(m, s, r).unwrap()),
    ]
}

fn sphere_model() -> impl Strategy<Value = RadialModel> {
    prop_oneof![
        (0u32..=2, 0.5f64..4.0).prop_map(|(l, r)| RadialModel::free_sphere(l, r).unwrap()),
        (0u32..=2, 1.0f64..8.0).prop_map(|(l, r)| RadialModel::hydrogen_sphere(l, r).unwrap()),
    ]
}

fn lowest_levels(
    m: &RadialModel,
    bc: &BoundaryCondition,
    count: usize,
) -> (SolveConfig, Vec<Level>) {
    let cfg = SolveConfig::lowest(m, count);
    let set = find_levels(m, bc, &cfg).unwrap();
    (cfg, set.levels)
}

fn sample(m: &RadialModel, bc: &BoundaryCondition, lv: &Level, order: usize) -> EigenState {
    let st = EigenState::sample(m, bc, lv.energy, lv.nodes, Backend::Auto, order).unwrap();
    normalize(&st).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn backend_log_derivatives_agree(m in any_model(), t in 0.02f64..3.0) {
        let e = -t * m.display_unit();
        let (cf, _) = boundary_pair(&m, e, Backend::ClosedForm).unwrap();
        let (ode, _) = boundary_pair(&m, e, Backend::Ode).unwrap();
        let d = (cf.log_derivative() - ode.log_derivative()).abs();
        prop_assert!(d <= 1e-8, "{}: E={e}: Δ = {d}", m.describe());
    }

    #[test]
    fn residual_is_continuous_at_dirichlet(m in any_model(), t in -1.0f64..3.0, k in 3i32..=8) {
        let e = t * m.display_unit();
        prop_assume!(!(m.kind().is_hydrogen() && e.abs() < 1e-6));
        let eps = 10f64.powi(-k);
        let at = residual(&m, &BoundaryCondition::dirichlet(), e).unwrap();
        let near = residual(&m, &BoundaryCondition::from_u(FRAC_PI_2 - eps).unwrap(), e).unwrap();
        // The residual is a unit-vector projection, so it is 1-Lipschitz in u.
        prop_assert!((at - near).abs() <= eps * (1.0 + 1e-9), "{at} vs {near}");
    }

    #[test]
    fn roots_move_linearly_near_dirichlet(m in sphere_model()) {
        let count = 4;
        let (_, dirichlet) = lowest_levels(&m, &BoundaryCondition::dirichlet(), count);
        let shift = |eps: f64| -> Vec<f64> {
            let bc = BoundaryCondition::from_u(FRAC_PI_2 - eps).unwrap();
            let (_, lv) = lowest_levels(&m, &bc, count);
            lv.iter().zip(&dirichlet).map(|(a, b)| (a.energy - b.energy).abs()).collect()
        };
        let coarse = shift(1e-3);
        for eps in [1e-4, 1e-5, 1e-6] {
            for (n, (fine, c)) in shift(eps).iter().zip(&coarse).enumerate() {
                let slope = c / 1e-3;
                let floor = 1e-10 * dirichlet[n].energy.abs().max(m.energy_scale());
                prop_assert!(
                    *fine <= 2.0 * slope * eps + floor,
                    "{} n={n}: ΔE({eps}) = {fine}, slope {slope}", m.describe()
                );
            }
        }
    }

    #[test]
    fn kummer_residual_matches_laguerre_form(
        l in 0u32..=3,
        frac in 0.02f64..4.9,
        radius in 1.0f64..10.0,
        g1 in -3.0f64..3.0,
        g2 in -3.0f64..3.0,
    ) {
        let nu = l as f64 + 1.0 + frac;
        prop_assume!((g1 - g2).abs() > 0.1);
        let m = RadialModel::hydrogen_sphere(l, radius).unwrap();
        let e = -1.0 / (2.0 * nu * nu);
        let phase = boundary_phase(&m, e, Backend::ClosedForm).unwrap();
        let ctl = EvalControl::default();
        let x = 2.0 * radius / nu;
        let lower = laguerre_general(2.0 * l as f64 + 1.0, nu - l as f64 - 1.0, x, &ctl).unwrap();
        let upper = laguerre_general(2.0 * l as f64 + 2.0, nu - l as f64 - 2.0, x, &ctl).unwrap();
        let ratio = |g: f64| {
            let laguerre = (g * nu / 2.0 - 0.5 + l as f64 * nu / (2.0 * radius)) * lower - upper;
            let robin = g * radius * phase.psi + phase.r_dpsi;
            (laguerre / robin, robin.abs(), laguerre.abs())
        };
        let (r1, d1, n1) = ratio(g1);
        let (r2, d2, n2) = ratio(g2);
        prop_assume!(d1 > 1e-6 && d2 > 1e-6 && n1 > 0.0 && n2 > 0.0);
        prop_assert!((r1 - r2).abs() <= 1e-9 * r1.abs(), "{r1} vs {r2}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn eigenstates_are_normalized_and_indexed(m in any_model(), u in -FRAC_PI_2..=FRAC_PI_2) {
        let bc = BoundaryCondition::from_u(u).unwrap();
        let (cfg, levels) = lowest_levels(&m, &bc, 3);
        prop_assert!(!levels.is_empty());
        for w in levels.windows(2) {
            prop_assert!(w[0].energy < w[1].energy);
            prop_assert_eq!(w[0].nodes + 1, w[1].nodes);
        }
        for lv in &levels {
            let st = build_state(&m, &bc, &cfg, lv).unwrap();
            let norm = st.expectation(|_| 1.0);
            prop_assert!((norm - 1.0).abs() <= 1e-10, "norm {norm}");
            // Deep states make the residual steep, so test for a bracketed sign change.
            let delta = 1e-10 * lv.energy.abs().max(m.energy_scale());
            let below = residual(&m, &bc, lv.energy - delta).unwrap();
            let above = residual(&m, &bc, lv.energy + delta).unwrap();
            prop_assert!(below * above <= 0.0, "no sign change around {}", lv.energy);
        }
    }

    #[test]
    fn branches_do_not_decrease(m in sphere_model(), lo in -1.5f64..0.0, span in 0.2f64..1.5) {
        let hi = (lo + span).min(FRAC_PI_2);
        let grid: Vec<f64> = (0..9).map(|i| lo + (hi - lo) * i as f64 / 8.0).collect();
        let cfg = SolveConfig::lowest(&m, 3);
        let flow = spectral_flow(&m, &grid, &cfg).unwrap();
        for b in &flow.branches {
            prop_assert!(b.points.iter().all(|p| p.nodes == b.node_count));
            for w in b.points.windows(2) {
                let slack = cfg.root_tol * w[0].energy.abs().max(m.energy_scale());
                prop_assert!(w[1].energy >= w[0].energy - slack, "branch {}: {:?}", b.id, w);
            }
        }
    }

    #[test]
    fn quadrature_doubling_is_stable(m in any_model(), u in -FRAC_PI_2..=FRAC_PI_2, pick in 0usize..3) {
        let bc = BoundaryCondition::from_u(u).unwrap();
        let (_, levels) = lowest_levels(&m, &bc, 3);
        let lv = levels[pick.min(levels.len() - 1)];
        let a = sample(&m, &bc, &lv, DEFAULT_ORDER);
        let b = sample(&m, &bc, &lv, 2 * DEFAULT_ORDER);
        let moments: [fn(f64) -> f64; 3] = [|r| r, |r| r * r, |r| r.powi(4)];
        for f in moments {
            let (x, y) = (a.expectation(f), b.expectation(f));
            prop_assert!((x - y).abs() <= 1e-10 * y.abs(), "{x} vs {y}");
        }
        if m.kind() != ModelKind::HydrogenCone {
            let (x, y) = (uncertainty_check(&a).unwrap(), uncertainty_check(&b).unwrap());
            prop_assert!((x.lhs - y.lhs).abs() <= 1e-10 * y.lhs.abs().max(m.energy_scale()));
        }
    }

    #[test]
    fn uncertainty_slack_is_non_negative(m in sphere_model(), u in -FRAC_PI_2..=FRAC_PI_2) {
        let bc = BoundaryCondition::from_u(u).unwrap();
        let (cfg, levels) = lowest_levels(&m, &bc, 3);
        for lv in &levels {
            let r = uncertainty_check(&build_state(&m, &bc, &cfg, lv).unwrap()).unwrap();
            prop_assert!(r.slack >= -1e-9, "slack {} at E={}", r.slack, lv.energy);
            prop_assert_eq!(r.boundary_n, 0.0);
        }
    }

    #[test]
    fn runge_bracket_identity(l in 0u32..=3, radius in 1.0f64..10.0, u in -FRAC_PI_2..=FRAC_PI_2) {
        let m = RadialModel::hydrogen_sphere(l, radius).unwrap();
        let bc = BoundaryCondition::from_u(u).unwrap();
        let (cfg, levels) = lowest_levels(&m, &bc, 3);
        for lv in &levels {
            let d = runge_defect(&build_state(&m, &bc, &cfg, lv).unwrap(), DefectKind::RPlus).unwrap();
            let bracket = d.bracket.unwrap();
            prop_assert!((d.value - bracket).abs() <= 1e-7 * d.value.abs().max(1.0));
        }
    }

    #[test]
    fn degeneracy_lists_respect_tolerance(
        l in 0u32..=1,
        radius in 1.0f64..8.0,
        gamma in -2.0f64..2.0,
        tol in prop::sample::select(vec![1e-8, 1e-3, 1e-1]),
    ) {
        let m = RadialModel::hydrogen_sphere(l, radius).unwrap();
        let reports = degeneracy_scan(&m, &[gamma], 2, tol).unwrap();
        for rep in &reports {
            prop_assert!(rep.pairs.iter().all(|p| p.gap < tol));
            prop_assert!(rep.split.iter().all(|p| p.gap >= tol));
            for p in rep.pairs.iter().chain(&rep.split) {
                prop_assert_eq!(p.lower.n_r, p.partner.n_r + 1);
                prop_assert!((p.gap - (p.energy_lower - p.energy_partner).abs()).abs() == 0.0);
            }
        }
    }
}
