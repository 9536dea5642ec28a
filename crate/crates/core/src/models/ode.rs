//! Frobenius start and adaptive Dormand–Prince 8(5,3) integration of the radial equation.

use super::{ModelError, RadialModel, ScaledPair};

const RTOL: f64 = 1e-13;
const MAX_STEPS: usize = 5_000_000;
const RENORM_HIGH: f64 = 1e64;
const RENORM_LOW: f64 = 1e-64;

/// `ψ'' = −(d−1)/r ψ' + (λ(λ+d−2)/r² − 2M(E + e²/r)) ψ`
struct RadialOde {
    two_m_energy: f64,
    two_m_charge: f64,
    centrifugal: f64,
    friction: f64,
}

impl RadialOde {
    fn new(model: &RadialModel, energy: f64) -> Self {
        let c = model.constants();
        Self {
            two_m_energy: 2.0 * c.mass() * energy,
            two_m_charge: 2.0 * c.mass() * c.charge_sq(),
            centrifugal: model.centrifugal(),
            friction: model.dimension() as f64 - 1.0,
        }
    }

    #[inline]
    fn rhs(&self, r: f64, y: [f64; 2]) -> [f64; 2] {
        let w = self.centrifugal / (r * r) - self.two_m_energy - self.two_m_charge / r;
        [y[1], -self.friction / r * y[1] + w * y[0]]
    }
}

/// Length scale below which the Frobenius series converges quickly.
fn series_radius(model: &RadialModel, energy: f64) -> f64 {
    let c = model.constants();
    let scale = (2.0 * c.mass() * energy.abs())
        .sqrt()
        .max(2.0 * c.mass() * c.charge_sq())
        .max(1e-300);
    (1e-3 * model.radius()).min(0.5 / scale)
}

/// Regular solution `r^λ Σ c_k r^k` with `c_0 = 1`, summed to convergence.
pub(crate) fn frobenius(model: &RadialModel, energy: f64, r: f64) -> ScaledPair {
    let c = model.constants();
    let lam = model.lambda();
    let d = model.dimension() as f64;
    let a1 = 2.0 * c.mass() * c.charge_sq();
    let a2 = 2.0 * c.mass() * energy;
    let c1 = -a1 / (2.0 * lam + d - 1.0);
    if r == 0.0 {
        let slope = if lam == 0.0 {
            c1
        } else if lam == 1.0 {
            1.0
        } else if lam < 1.0 {
            f64::INFINITY
        } else {
            0.0
        };
        return ScaledPair {
            value: if lam == 0.0 { 1.0 } else { 0.0 },
            slope,
            log_scale: 0.0,
        };
    }
    let mut c_prev2 = 0.0;
    let mut c_prev = 1.0;
    let mut sum = 1.0;
    let mut dsum = 0.0;
    let mut rk_minus1 = 1.0;
    let mut small_run = 0;
    for k in 1..600 {
        let kf = k as f64;
        let ck = -(a1 * c_prev + a2 * c_prev2) / (kf * (2.0 * lam + kf + d - 2.0));
        let term = ck * rk_minus1 * r;
        dsum += kf * ck * rk_minus1;
        sum += term;
        rk_minus1 *= r;
        c_prev2 = c_prev;
        c_prev = ck;
        if term.abs() <= 1e-17 * sum.abs() {
            small_run += 1;
            if small_run >= 2 {
                break;
            }
        } else {
            small_run = 0;
        }
    }
    ScaledPair {
        value: sum,
        slope: lam * sum / r + dsum,
        log_scale: lam * r.ln(),
    }
}

// Dormand–Prince 8(5,3) tableau (DOP853).
const STAGES: usize = 12;
const C: [f64; 12] = [
    0.0,
    0.05260015195876773,
    0.0789002279381516,
    0.1183503419072274,
    0.2816496580927726,
    0.3333333333333333,
    0.25,
    0.3076923076923077,
    0.6512820512820513,
    0.6,
    0.8571428571428571,
    1.0,
];
const A: [[f64; 12]; 12] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [
        0.05260015195876773,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        0.0197250569845379,
        0.0591751709536137,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        0.02958758547680685,
        0.0,
        0.08876275643042054,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        0.2413651341592667,
        0.0,
        -0.8845494793282861,
        0.924834003261792,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        0.037037037037037035,
        0.0,
        0.0,
        0.17082860872947386,
        0.12546768756682242,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        0.037109375,
        0.0,
        0.0,
        0.17025221101954405,
        0.06021653898045596,
        -0.017578125,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        0.03709200011850479,
        0.0,
        0.0,
        0.17038392571223998,
        0.10726203044637328,
        -0.015319437748624402,
        0.008273789163814023,
        0.0,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        0.6241109587160757,
        0.0,
        0.0,
        -3.3608926294469414,
        -0.868219346841726,
        27.59209969944671,
        20.154067550477894,
        -43.48988418106996,
        0.0,
        0.0,
        0.0,
        0.0,
    ],
    [
        0.47766253643826434,
        0.0,
        0.0,
        -2.4881146199716677,
        -0.590290826836843,
        21.230051448181193,
        15.279233632882423,
        -33.28821096898486,
        -0.020331201708508627,
        0.0,
        0.0,
        0.0,
    ],
    [
        -0.9371424300859873,
        0.0,
        0.0,
        5.186372428844064,
        1.0914373489967295,
        -8.149787010746927,
        -18.52006565999696,
        22.739487099350505,
        2.4936055526796523,
        -3.0467644718982196,
        0.0,
        0.0,
    ],
    [
        2.273310147516538,
        0.0,
        0.0,
        -10.53449546673725,
        -2.0008720582248625,
        -17.9589318631188,
        27.94888452941996,
        -2.8589982771350235,
        -8.87285693353063,
        12.360567175794303,
        0.6433927460157636,
        0.0,
    ],
];
const B: [f64; 12] = [
    0.054293734116568765,
    0.0,
    0.0,
    0.0,
    0.0,
    4.450312892752409,
    1.8915178993145003,
    -5.801203960010585,
    0.3111643669578199,
    -0.1521609496625161,
    0.20136540080403034,
    0.04471061572777259,
];
const E3: [f64; 12] = [
    -0.18980075407240762,
    0.0,
    0.0,
    0.0,
    0.0,
    4.450312892752409,
    1.8915178993145003,
    -5.801203960010585,
    -0.4226823213237919,
    -0.1521609496625161,
    0.20136540080403034,
    0.02265179219836082,
];
const E5: [f64; 12] = [
    0.01312004499419488,
    0.0,
    0.0,
    0.0,
    0.0,
    -1.2251564463762044,
    -0.4957589496572502,
    1.6643771824549864,
    -0.35032884874997366,
    0.3341791187130175,
    0.08192320648511571,
    -0.022355307863886294,
];

/// Integrates the regular solution outward and samples it at `radii`.
///
/// Radii must be strictly increasing and lie in `[0, R]`. Points inside the
/// Frobenius radius are evaluated from the series directly.
pub(crate) fn integrate(
    model: &RadialModel,
    energy: f64,
    radii: &[f64],
) -> Result<Vec<ScaledPair>, ModelError> {
    let sys = RadialOde::new(model, energy);
    let r0 = series_radius(model, energy);
    let mut out = Vec::with_capacity(radii.len());
    let mut idx = 0;
    while idx < radii.len() && radii[idx] <= r0 {
        out.push(frobenius(model, energy, radii[idx]));
        idx += 1;
    }
    if idx == radii.len() {
        return Ok(out);
    }
    let start = frobenius(model, energy, r0);
    let mut r = r0;
    let mut y = [start.value, start.slope];
    let mut log_scale = start.log_scale;
    let mut h = 0.05 * r0;
    let mut k1 = sys.rhs(r, y);
    let mut steps = 0usize;
    for &target in &radii[idx..] {
        while r < target {
            steps += 1;
            if steps > MAX_STEPS {
                return Err(ModelError::Integration(format!(
                    "step limit exceeded at r = {r}"
                )));
            }
            let remaining = target - r;
            let clipped = h >= remaining;
            let step = if clipped { remaining } else { h };
            let mut k = [[0.0f64; 2]; STAGES + 1];
            k[0] = k1;
            for i in 1..STAGES {
                let mut yi = y;
                for (a, kj) in A[i][..i].iter().zip(&k[..i]) {
                    yi[0] += step * a * kj[0];
                    yi[1] += step * a * kj[1];
                }
                k[i] = sys.rhs(r + C[i] * step, yi);
            }
            let mut y_new = y;
            let mut e3 = [0.0f64; 2];
            let mut e5 = [0.0f64; 2];
            for i in 0..STAGES {
                for c in 0..2 {
                    y_new[c] += step * B[i] * k[i][c];
                    e3[c] += step * E3[i] * k[i][c];
                    e5[c] += step * E5[i] * k[i][c];
                }
            }
            let r_new = if clipped { target } else { r + step };
            k[STAGES] = sys.rhs(r_new, y_new);
            let size = (y[0].abs() + r * y[1].abs()).max(y_new[0].abs() + r_new * y_new[1].abs());
            let tol = (RTOL * size).max(f64::MIN_POSITIVE);
            let n5 = (e5[0] / tol).powi(2) + (r_new * e5[1] / tol).powi(2);
            let n3 = (e3[0] / tol).powi(2) + (r_new * e3[1] / tol).powi(2);
            let ratio = if n5 == 0.0 && n3 == 0.0 {
                0.0
            } else {
                n5 / (2.0 * (n5 + 0.01 * n3)).sqrt()
            };
            let factor = if ratio == 0.0 {
                10.0
            } else {
                (0.9 * ratio.powf(-1.0 / 8.0)).clamp(0.2, 10.0)
            };
            if ratio <= 1.0 {
                r = r_new;
                y = y_new;
                k1 = k[STAGES];
                let next = step * factor;
                h = if clipped { h.max(next) } else { next };
                let mag = y[0].abs() + r * y[1].abs();
                if !(RENORM_LOW..=RENORM_HIGH).contains(&mag) && mag > 0.0 {
                    y = [y[0] / mag, y[1] / mag];
                    k1 = [k1[0] / mag, k1[1] / mag];
                    log_scale += mag.ln();
                }
            } else {
                h = step * factor;
            }
            if h < 1e-14 * r {
                return Err(ModelError::Integration(format!(
                    "step size underflow at r = {r}"
                )));
            }
        }
        out.push(ScaledPair {
            value: y[0],
            slope: y[1],
            log_scale,
        });
    }
    Ok(out)
}
