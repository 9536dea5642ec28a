use super::{EvalControl, SpecFunError};

/// Largest |z| accepted by [`kummer_m`].
pub const KUMMER_MAX_ARGUMENT: f64 = 200.0;

const RESCALE: f64 = 1e250;

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }

    fn scale(&mut self, f: f64) {
        self.sum *= f;
        self.carry *= f;
    }
}

/// `M(a, b, z)` and `dM/dz` stored as mantissas times `exp(log_scale)`, together
/// with the sums of absolute term values (used to bound cancellation error).
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct ScaledKummer {
    pub value: f64,
    pub derivative: f64,
    pub log_scale: f64,
    pub abs_value: f64,
    pub abs_derivative: f64,
    pub terms: usize,
}

fn non_positive_integer(b: f64) -> bool {
    b <= 0.0 && b.fract() == 0.0
}

/// Ascending series for `M(a, b, z)` and `(a/b) M(a+1, b+1, z)`, log-scaled so
/// that large positive z cannot overflow.
pub(crate) fn kummer_scaled(
    a: f64,
    b: f64,
    z: f64,
    ctl: &EvalControl,
) -> Result<ScaledKummer, SpecFunError> {
    if !(a.is_finite() && b.is_finite() && z.is_finite()) {
        return Err(SpecFunError::Domain {
            name: "kummer argument",
            value: if !a.is_finite() {
                a
            } else if !b.is_finite() {
                b
            } else {
                z
            },
            reason: "arguments must be finite",
        });
    }
    if non_positive_integer(b) {
        return Err(SpecFunError::Domain {
            name: "b",
            value: b,
            reason: "b must not be a non-positive integer",
        });
    }
    let mut value = CompensatedSum::default();
    let mut deriv = CompensatedSum::default();
    let mut abs_value = 0.0;
    let mut abs_deriv = 0.0;
    let mut log_scale = 0.0_f64;
    let mut t = 1.0;
    let mut d = a / b;
    let mut k = 0usize;
    loop {
        if k >= ctl.max_terms {
            return Err(SpecFunError::NoConvergence {
                terms: k,
                partial_sum: value.value() * log_scale.exp(),
            });
        }
        value.add(t);
        deriv.add(d);
        abs_value += t.abs();
        abs_deriv += d.abs();
        let kf = k as f64;
        let rt = (a + kf) * z / ((b + kf) * (kf + 1.0));
        let rd = (a + 1.0 + kf) * z / ((b + 1.0 + kf) * (kf + 1.0));
        t *= rt;
        d *= rd;
        k += 1;
        if t == 0.0 && d == 0.0 {
            break;
        }
        if rt.abs() < 1.0 && rd.abs() < 1.0 {
            let tail_t = t.abs() / (1.0 - rt.abs());
            let tail_d = d.abs() / (1.0 - rd.abs());
            let ok_t = tail_t <= ctl.rel_tol * value.value().abs()
                || tail_t <= f64::EPSILON * f64::EPSILON * abs_value;
            let ok_d = tail_d <= ctl.rel_tol * deriv.value().abs()
                || tail_d <= f64::EPSILON * f64::EPSILON * abs_deriv;
            if ok_t && ok_d {
                break;
            }
        }
        if t.abs().max(d.abs()) > RESCALE {
            let f = 1.0 / RESCALE;
            t *= f;
            d *= f;
            value.scale(f);
            deriv.scale(f);
            abs_value *= f;
            abs_deriv *= f;
            log_scale += RESCALE.ln();
        }
    }
    Ok(ScaledKummer {
        value: value.value(),
        derivative: deriv.value(),
        log_scale,
        abs_value,
        abs_derivative: abs_deriv,
        terms: k,
    })
}

/// Kummer's function `M(a, b, z)` and its z-derivative `(a/b) M(a+1, b+1, z)`.
///
/// Uses the ascending series with compensated summation. Terminates exactly
/// when `a` is a non-positive integer.
pub fn kummer_m(a: f64, b: f64, z: f64, ctl: &EvalControl) -> Result<(f64, f64), SpecFunError> {
    if z.abs() > KUMMER_MAX_ARGUMENT {
        return Err(SpecFunError::Domain {
            name: "z",
            value: z,
            reason: "|z| must not exceed 200",
        });
    }
    let s = kummer_scaled(a, b, z, ctl)?;
    let f = s.log_scale.exp();
    Ok((s.value * f, s.derivative * f))
}

/// Generalized Laguerre function `L^alpha_degree(x)` for real degree.
///
/// Evaluated as `Γ(ν+α+1)/(Γ(ν+1)Γ(α+1)) · M(−ν, α+1, x)`. A degree within
/// 1e-12 of a negative integer returns exactly 0.
pub fn laguerre_general(
    alpha: f64,
    degree: f64,
    x: f64,
    ctl: &EvalControl,
) -> Result<f64, SpecFunError> {
    if !(alpha.is_finite() && alpha > -1.0) {
        return Err(SpecFunError::Domain {
            name: "alpha",
            value: alpha,
            reason: "alpha must exceed -1",
        });
    }
    if !(x.is_finite() && x >= 0.0) {
        return Err(SpecFunError::Domain {
            name: "x",
            value: x,
            reason: "argument must be finite and non-negative",
        });
    }
    if !degree.is_finite() {
        return Err(SpecFunError::Domain {
            name: "degree",
            value: degree,
            reason: "degree must be finite",
        });
    }
    let nearest = degree.round();
    if nearest < 0.0 && (degree - nearest).abs() <= 1e-12 {
        return Ok(0.0);
    }
    let top = degree + alpha + 1.0;
    if non_positive_integer(top) {
        return Err(SpecFunError::Domain {
            name: "degree",
            value: degree,
            reason: "Γ(degree + alpha + 1) has a pole",
        });
    }
    let (ln_top, sign_top) = libm::lgamma_r(top);
    let (ln_deg, sign_deg) = libm::lgamma_r(degree + 1.0);
    let (ln_alpha, _) = libm::lgamma_r(alpha + 1.0);
    let prefactor = (sign_top * sign_deg) as f64 * (ln_top - ln_deg - ln_alpha).exp();
    let (m, _) = kummer_m(-degree, alpha + 1.0, x, ctl)?;
    Ok(prefactor * m)
}
