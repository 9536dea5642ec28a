//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cavity_spectra::analysis::{degeneracy_scan, runge_defect, uncertainty_check, DefectKind};
use cavity_spectra::eigensolver::{
    build_state, detect_crossings, find_levels, spectral_flow, Level, SolveConfig,
};
use cavity_spectra::models::{boundary_pair, Backend, BoundaryCondition, RadialModel};
use cavity_spectra::specfun::{sph_bessel_i, sph_bessel_j};

type Outcome = Result<(bool, String), Box<dyn std::error::Error>>;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn levels(
    model: &RadialModel,
    gamma: f64,
    count: usize,
) -> Result<Vec<Level>, Box<dyn std::error::Error>> {
    let bc = BoundaryCondition::from_gamma(gamma, model.radius())?;
    let cfg = SolveConfig::lowest(model, count);
    Ok(find_levels(model, &bc, &cfg)?.levels)
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// First `count` positive zeros of j_l, by sign scan and bisection.
fn bessel_zeros(l: u32, count: usize) -> Vec<f64> {
    let j = |x: f64| sph_bessel_j(l, x).unwrap();
    let mut out = Vec::new();
    let mut x = 0.5 + l as f64;
    let h = 0.01;
    while out.len() < count {
        if (j(x) < 0.0) != (j(x + h) < 0.0) {
            out.push(bisect(j, x, x + h));
        }
        x += h;
    }
    out
}

fn criterion_1() -> Outcome {
    let m = RadialModel::free_sphere(0, 1.0)?;
    let lv = levels(&m, f64::INFINITY, 5)?;
    let mut worst: f64 = 0.0;
    for n in 0..5 {
        let expect = ((n + 1) as f64 * PI).powi(2) / 2.0;
        worst = worst.max(lv.get(n).map_or(f64::INFINITY, |l| rel(l.energy, expect)));
    }
    Ok((
        worst <= 1e-10,
        format!("max rel err {worst:.2e} (tol 1e-10)"),
    ))
}

fn criterion_2() -> Outcome {
    let m = RadialModel::free_sphere(0, 1.0)?;
    let lv = levels(&m, 1.0, 5)?;
    let mut worst: f64 = 0.0;
    for n in 0..5 {
        let expect = ((n as f64 + 0.5) * PI).powi(2) / 2.0;
        worst = worst.max(lv.get(n).map_or(f64::INFINITY, |l| rel(l.energy, expect)));
    }
    Ok((
        worst <= 1e-10,
        format!("max rel err {worst:.2e} (tol 1e-10)"),
    ))
}

fn criterion_3() -> Outcome {
    let radius = 1.0;
    let mut worst: f64 = 0.0;
    // E_{n,l}(γ = (l+1)/R) = E_{n,l-1}(γ = ∞), Dirichlet side from zeros of j_{l-1}.
    for l in 1..=2u32 {
        let m = RadialModel::free_sphere(l, radius)?;
        let lv = levels(&m, (l + 1) as f64 / radius, 4)?;
        for (n, z) in bessel_zeros(l - 1, 4).iter().enumerate() {
            let expect = z * z / 2.0;
            worst = worst.max(lv.get(n).map_or(f64::INFINITY, |x| rel(x.energy, expect)));
        }
    }
    // E_{n+1,l}(γ = −l/R) = E_{n,l+1}(γ = ∞).
    for l in 0..=1u32 {
        let m = RadialModel::free_sphere(l, radius)?;
        let lv = levels(&m, -(l as f64) / radius, 5)?;
        for (n, z) in bessel_zeros(l + 1, 4).iter().enumerate() {
            let expect = z * z / 2.0;
            worst = worst.max(
                lv.get(n + 1)
                    .map_or(f64::INFINITY, |x| rel(x.energy, expect)),
            );
        }
    }
    Ok((worst <= 1e-9, format!("max rel err {worst:.2e} (tol 1e-9)")))
}

fn criterion_4() -> Outcome {
    let radius = 1.0;
    let mut worst_e: f64 = 0.0;
    let mut worst_psi: f64 = 0.0;
    for l in 0..=2u32 {
        let m = RadialModel::free_sphere(l, radius)?;
        let bc = BoundaryCondition::from_gamma(-(l as f64) / radius, radius)?;
        let cfg = SolveConfig::lowest(&m, 2);
        let set = find_levels(&m, &bc, &cfg)?;
        let ground = set.levels.first().ok_or("no states")?;
        worst_e = worst_e.max(ground.energy.abs());
        let st = build_state(&m, &bc, &cfg, ground)?;
        let sign = st.boundary_psi.signum();
        let amp = ((2 * l + 3) as f64 / radius.powi(3)).sqrt();
        for s in &st.samples {
            let expect = amp * (s.r / radius).powi(l as i32);
            worst_psi = worst_psi.max((sign * s.psi - expect).abs());
        }
    }
    Ok((
        worst_e < 1e-9 && worst_psi <= 1e-9,
        format!("max |E0| {worst_e:.2e} (tol 1e-9), max |Δψ| {worst_psi:.2e} (tol 1e-9)"),
    ))
}

fn criterion_5() -> Outcome {
    let radius = 1.0;
    let gamma = -100.0 / radius;
    let m = RadialModel::free_sphere(0, radius)?;
    let lv = levels(&m, gamma, 6)?;
    let negative: Vec<f64> = lv.iter().map(|l| l.energy).filter(|&e| e < 0.0).collect();
    let positive: Vec<f64> = lv.iter().map(|l| l.energy).filter(|&e| e > 0.0).collect();
    let asymptote = -gamma * gamma / 2.0;
    let wall = *negative.first().ok_or("no negative state")?;
    let off = rel(wall, asymptote);
    // Independent root of γ i_0(κR) + κ i_1(κR) = 0.
    let f = |kappa: f64| {
        gamma * sph_bessel_i(0, kappa * radius).unwrap()
            + kappa * sph_bessel_i(1, kappa * radius).unwrap()
    };
    let kappa = bisect(f, 90.0, 110.0);
    let oracle = -kappa * kappa / 2.0;
    let oracle_err = rel(wall, oracle);
    let mut dirichlet_err: f64 = 0.0;
    for (n, e) in positive.iter().take(5).enumerate() {
        let expect = ((n + 1) as f64 * PI).powi(2) / 2.0;
        dirichlet_err = dirichlet_err.max(rel(*e, expect));
    }
    let pass = negative.len() == 1 && off <= 0.01 && dirichlet_err <= 1e-5;
    Ok((
        pass,
        format!(
            "{} negative state(s); wall E {wall:.6} vs -γ²/2M {asymptote}: rel {off:.4} (tol 0.01); \
             vs modified-Bessel root: rel {oracle_err:.2e}; positive vs Dirichlet: rel {dirichlet_err:.2e} (tol 1e-5)",
            negative.len()
        ),
    ))
}

fn criterion_6() -> Outcome {
    let m = RadialModel::hydrogen_sphere(0, 64.0)?;
    let lv = levels(&m, f64::INFINITY, 2)?;
    let mut worst: f64 = 0.0;
    for n in 1..=2usize {
        let e = lv.get(n - 1).ok_or("missing state")?.energy;
        worst = worst.max((e + 1.0 / (2.0 * (n * n) as f64)).abs());
    }
    Ok((
        worst < 1e-6,
        format!("max |E_n + 1/2n²| {worst:.2e} (tol 1e-6)"),
    ))
}

fn criterion_7() -> Outcome {
    let mut worst: f64 = 0.0;
    for &radius in &[2.0, 4.0, 8.0] {
        let m = RadialModel::hydrogen_sphere(0, radius)?;
        let lv = levels(&m, 1.0, 1)?;
        worst = worst.max((lv.first().ok_or("no state")?.energy + 0.5).abs());
    }
    Ok((
        worst <= 1e-10,
        format!("max |E + 0.5| {worst:.2e} (tol 1e-10)"),
    ))
}

fn criterion_8() -> Outcome {
    let radius = 2.0;
    let m = RadialModel::hydrogen_sphere(0, radius)?;
    let special = degeneracy_scan(
        &m,
        &[2.0 / radius, f64::INFINITY, f64::NEG_INFINITY],
        2,
        1e-8,
    )?;
    let control = degeneracy_scan(&m, &[1.0 / radius], 2, 1e-8)?;
    let worst = special.iter().map(|r| r.max_gap()).fold(0.0, f64::max);
    let split = control[0].min_gap();
    let names: Vec<String> = special[0]
        .pairs
        .iter()
        .chain(&special[0].split)
        .map(|p| format!("{}/{}", p.lower.name, p.partner.name))
        .collect();
    Ok((
        special.iter().all(|r| r.is_degenerate()) && worst < 1e-8 && split > 1e-3,
        format!(
            "pairs {}: max gap {worst:.2e} at γ ∈ {{2/R, ±∞}} (tol 1e-8); control γ=1/R min gap {split:.2e} (> 1e-3)",
            names.join(",")
        ),
    ))
}

fn criterion_9() -> Outcome {
    let m = RadialModel::hydrogen_sphere(0, 4.0)?;
    let n = 81;
    let grid: Vec<f64> = (0..n)
        .map(|i| -FRAC_PI_2 * (1.0 - i as f64 / (n - 1) as f64))
        .collect();
    let cfg = SolveConfig::lowest(&m, 3);
    let flow = spectral_flow(&m, &grid, &cfg)?;
    let reports = detect_crossings(&flow)?;
    let lowest = reports
        .iter()
        .find(|c| c.lower_branch == 0)
        .ok_or("no crossing between the lowest branches")?;
    let target = -0.8248;
    let off = (lowest.gamma_star - target).abs();
    Ok((
        off <= 0.002 && lowest.gap > 0.0,
        format!(
            "γ* = {:.4}/a (target {target} ± 0.002), gap {:.4} Me⁴",
            lowest.gamma_star, lowest.gap
        ),
    ))
}

fn criterion_10() -> Outcome {
    let angles = [-FRAC_PI_2, -FRAC_PI_4, 0.0, FRAC_PI_4, FRAC_PI_2];
    let mut count = 0;
    let mut worst = f64::INFINITY;
    for hydrogen in [false, true] {
        for l in 0..=2u32 {
            let m = if hydrogen {
                RadialModel::hydrogen_sphere(l, 4.0)?
            } else {
                RadialModel::free_sphere(l, 1.0)?
            };
            for &u in &angles {
                let bc = BoundaryCondition::from_u(u)?;
                let cfg = SolveConfig::lowest(&m, 2);
                for lv in find_levels(&m, &bc, &cfg)?.levels {
                    let st = build_state(&m, &bc, &cfg, &lv)?;
                    worst = worst.min(uncertainty_check(&st)?.slack);
                    count += 1;
                }
            }
        }
    }
    let m = RadialModel::free_sphere(0, 1.0)?;
    let bc = BoundaryCondition::neumann();
    let cfg = SolveConfig::lowest(&m, 1);
    let zero = find_levels(&m, &bc, &cfg)?.levels[0];
    let saturation = uncertainty_check(&build_state(&m, &bc, &cfg, &zero)?)?.slack;
    Ok((
        count >= 50 && worst >= -1e-9 && saturation.abs() < 1e-9,
        format!(
            "{count} states, min slack {worst:.3e} (≥ -1e-9); l=0 γ=0 zero-energy slack {saturation:.2e} (|·| < 1e-9)"
        ),
    ))
}

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    let mut tested = 0;
    while tested < 30 {
        let l = rng.gen_range(0..=3u32);
        let radius = rng.gen_range(1.0..10.0);
        let u = rng.gen_range(-FRAC_PI_2..=FRAC_PI_2);
        let m = RadialModel::hydrogen_sphere(l, radius)?;
        let bc = BoundaryCondition::from_u(u)?;
        let cfg = SolveConfig::lowest(&m, 3);
        let set = find_levels(&m, &bc, &cfg)?;
        let lv = set.levels[rng.gen_range(0..set.levels.len())];
        let d = runge_defect(&build_state(&m, &bc, &cfg, &lv)?, DefectKind::RPlus)?;
        let bracket = d.bracket.ok_or("missing bracket")?;
        worst = worst.max((d.value - bracket).abs() / d.value.abs().max(1.0));
        tested += 1;
    }
    let radius = 2.0;
    let m = RadialModel::hydrogen_sphere(0, radius)?;
    let squared = |gamma: f64| -> Result<Vec<f64>, Box<dyn std::error::Error>> {
        let bc = BoundaryCondition::from_gamma(gamma, radius)?;
        let cfg = SolveConfig::lowest(&m, 3);
        let set = find_levels(&m, &bc, &cfg)?;
        set.levels
            .iter()
            .filter(|lv| lv.nodes >= 1)
            .map(|lv| {
                let d = runge_defect(&build_state(&m, &bc, &cfg, lv)?, DefectKind::RPlusSquared)?;
                Ok(d.value.abs() / d.scale)
            })
            .collect()
    };
    let special = squared(2.0 / radius)?;
    let control = squared(1.0 / radius)?;
    let special_max = special.iter().copied().fold(0.0, f64::max);
    let control_min = control.iter().copied().fold(f64::INFINITY, f64::min);
    Ok((
        worst <= 1e-7 && special_max < 1e-7 && control_min > 1e-3 && !special.is_empty(),
        format!(
            "R₊ value vs bracket max rel {worst:.2e} over {tested} states (tol 1e-7); \
             R₊² |defect|/scale at γ=2/R max {special_max:.2e} (< 1e-7), at γ=1/R min {control_min:.2e} (> 1e-3)"
        ),
    ))
}

fn criterion_12() -> Outcome {
    let radius = 0.75;
    let m = RadialModel::hydrogen_cone(0, 0.5, radius)?;
    let special = degeneracy_scan(
        &m,
        &[1.5 / radius, f64::INFINITY, f64::NEG_INFINITY],
        1,
        1e-7,
    )?;
    let control = degeneracy_scan(&m, &[1.0 / radius], 1, 1e-7)?;
    let worst = special.iter().map(|r| r.max_gap()).fold(0.0, f64::max);
    let split = control[0].min_gap();
    let big = RadialModel::hydrogen_cone(0, 1.0, 40.0)?;
    let ground = levels(&big, f64::INFINITY, 1)?
        .first()
        .ok_or("no state")?
        .energy;
    // Kummer termination at ν = n_r + |m|/s + 1/2 = 1/2.
    let reference = -1.0 / (2.0 * 0.5f64.powi(2));
    let large = (ground - reference).abs();
    Ok((
        worst < 1e-7 && split > 1e-3 && large < 1e-5,
        format!(
            "m=0/m=1 max gap {worst:.2e} at γ ∈ {{3/2R, ±∞}} (tol 1e-7); control γ=1/R gap {split:.2e} (> 1e-3); \
             s=1 R=40a ground {ground:.10} vs -2: {large:.2e} (tol 1e-5)"
        ),
    ))
}

fn random_model(rng: &mut ChaCha8Rng) -> Result<RadialModel, Box<dyn std::error::Error>> {
    let radius = rng.gen_range(0.5..8.0);
    Ok(match rng.gen_range(0..3) {
        0 => RadialModel::free_sphere(rng.gen_range(0..=4), radius)?,
        1 => RadialModel::hydrogen_sphere(rng.gen_range(0..=4), radius)?,
        _ => {
            let s = [0.5, 0.75, 1.0][rng.gen_range(0..3)];
            RadialModel::hydrogen_cone(rng.gen_range(-3..=3), s, radius)?
        }
    })
}

fn criterion_13() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut worst_log: f64 = 0.0;
    for _ in 0..200 {
        let m = random_model(&mut rng)?;
        let unit = m.display_unit();
        let energy = -rng.gen_range(0.02..3.0) * unit;
        let (cf, _) = boundary_pair(&m, energy, Backend::ClosedForm)?;
        let (ode, _) = boundary_pair(&m, energy, Backend::Ode)?;
        worst_log = worst_log.max((cf.log_derivative() - ode.log_derivative()).abs());
    }
    let mut worst_e: f64 = 0.0;
    let mut configs = 0;
    while configs < 20 {
        let m = random_model(&mut rng)?;
        let bc = BoundaryCondition::from_u(rng.gen_range(-FRAC_PI_2..=FRAC_PI_2))?;
        let mut cfg = SolveConfig::lowest(&m, 3);
        if m.kind().is_hydrogen() {
            cfg.e_max = cfg.e_max.min(-1e-3);
            if cfg.e_max <= cfg.e_min {
                continue;
            }
        }
        let closed = find_levels(
            &m,
            &bc,
            &SolveConfig {
                backend: Backend::ClosedForm,
                ..cfg
            },
        )?;
        let ode = find_levels(
            &m,
            &bc,
            &SolveConfig {
                backend: Backend::Ode,
                ..cfg
            },
        )?;
        if closed.levels.len() != ode.levels.len() {
            return Ok((false, format!("level counts differ for {}", m.describe())));
        }
        for (a, b) in closed.levels.iter().zip(&ode.levels) {
            worst_e = worst_e.max(rel(a.energy, b.energy));
        }
        configs += 1;
    }
    Ok((
        worst_log <= 1e-8 && worst_e <= 1e-8,
        format!(
            "log-derivative max |Δ| {worst_log:.2e} over 200 samples (tol 1e-8); eigenvalue max rel {worst_e:.2e} over {configs} configurations (tol 1e-8)"
        ),
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("free sphere l=0 Dirichlet levels", criterion_1),
        ("free sphere l=0 γ=1/R levels", criterion_2),
        ("shift identities", criterion_3),
        ("zero-energy states", criterion_4),
        ("wall state at γ=-100/R", criterion_5),
        ("hydrogen at R=64a matches the infinite system", criterion_6),
        ("1s R-independence at γ=1/a", criterion_7),
        ("sphere accidental degeneracy at R=2a", criterion_8),
        ("avoided crossing at R=4a", criterion_9),
        ("uncertainty relation", criterion_10),
        ("Runge-Lenz defects", criterion_11),
        ("cone degeneracy and large-R cone", criterion_12),
        ("backend equivalence", criterion_13),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (pass, detail) = match run() {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "{} criterion {:>2}: {name}: {detail} [{:.2}s]",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
