//! Regular solutions from spherical Bessel and Kummer functions.

use super::ode::frobenius;
use super::{EnergyPoint, ModelError, ModelKind, RadialModel, ScaledPair};
use crate::specfun::{i_ratio, i_reduced, j_reduced, j_value, kummer_scaled, ln_i, EvalControl};

const SERIES_LIMIT: f64 = 2.0;
const KUMMER_SAFE_ARGUMENT: f64 = 200.0;

/// A closed-form sample together with an estimate of its relative rounding
/// error (from cancellation in the underlying series).
#[derive(Debug, Clone, Copy)]
pub(crate) struct ClosedFormValue {
    pub pair: ScaledPair,
    pub rel_error: f64,
}

fn ln_double_factorial_odd(l: u32) -> f64 {
    (1..=l).map(|k| ((2 * k + 1) as f64).ln()).sum()
}

/// Regular solution normalized like the Frobenius series (`ψ ~ r^λ` at the origin).
pub(crate) fn evaluate(
    model: &RadialModel,
    energy: f64,
    r: f64,
) -> Result<ClosedFormValue, ModelError> {
    if r == 0.0 {
        return Ok(ClosedFormValue {
            pair: frobenius(model, energy, 0.0),
            rel_error: 0.0,
        });
    }
    match model.kind() {
        ModelKind::FreeSphere => Ok(ClosedFormValue {
            pair: free(model, energy, r)?,
            rel_error: 4.0 * f64::EPSILON,
        }),
        _ => coulomb(model, energy, r),
    }
}

fn free(model: &RadialModel, energy: f64, r: f64) -> Result<ScaledPair, ModelError> {
    let l = model.l();
    let lf = l as f64;
    let norm = ln_double_factorial_odd(l);
    let pair = match EnergyPoint::new(model, energy)? {
        EnergyPoint::Threshold => ScaledPair {
            value: 1.0,
            slope: lf / r,
            log_scale: lf * r.ln(),
        },
        EnergyPoint::Oscillatory { k, .. } => {
            let x = k * r;
            if x < SERIES_LIMIT {
                let a = j_reduced(l, x);
                let b = j_reduced(l + 1, x);
                ScaledPair {
                    value: a,
                    slope: (lf * a - x * x * b) / r,
                    log_scale: lf * r.ln() + norm,
                }
            } else {
                let a = j_value(l, x);
                let b = j_value(l + 1, x);
                ScaledPair {
                    value: a,
                    slope: (lf * a - x * b) / r,
                    log_scale: -lf * k.ln() + norm,
                }
            }
        }
        EnergyPoint::Evanescent { kappa, .. } => {
            let x = kappa * r;
            if x < SERIES_LIMIT {
                let a = i_reduced(l, x);
                let b = i_reduced(l + 1, x);
                ScaledPair {
                    value: a,
                    slope: (lf * a + x * x * b) / r,
                    log_scale: lf * r.ln() + norm,
                }
            } else {
                ScaledPair {
                    value: 1.0,
                    slope: (lf + x * i_ratio(l, x)) / r,
                    log_scale: ln_i(l, x) - lf * kappa.ln() + norm,
                }
            }
        }
        EnergyPoint::Coulomb { .. } => unreachable!("free model has no Coulomb energies"),
    };
    Ok(pair)
}

fn coulomb(model: &RadialModel, energy: f64, r: f64) -> Result<ClosedFormValue, ModelError> {
    let nu = match EnergyPoint::new(model, energy)? {
        EnergyPoint::Coulomb { nu, .. } => nu,
        _ => {
            return Err(ModelError::ClosedFormUnavailable {
                kind: model.kind(),
                energy,
            })
        }
    };
    let c = model.constants();
    let kappa = (-2.0 * c.mass() * energy).sqrt();
    let lam = model.lambda();
    let d = model.dimension() as f64;
    let a = lam + (d - 1.0) / 2.0 - nu;
    let b = 2.0 * lam + d - 1.0;
    let z = 2.0 * kappa * r;
    if z > KUMMER_SAFE_ARGUMENT && a < 0.0 {
        return Err(ModelError::ClosedFormUnavailable {
            kind: model.kind(),
            energy,
        });
    }
    let ctl = EvalControl {
        rel_tol: 1e-16,
        max_terms: 20_000 + 4 * z as usize,
    };
    let m = kummer_scaled(a, b, z, &ctl)?;
    let log_factor = lam * r.ln() - kappa * r + m.log_scale;
    let front = lam / r - kappa;
    let value = m.value;
    let slope = front * m.value + 2.0 * kappa * m.derivative;
    let err_value = 4.0 * f64::EPSILON * m.abs_value;
    let err_slope =
        4.0 * f64::EPSILON * (front.abs() * m.abs_value + 2.0 * kappa * m.abs_derivative);
    let size = value.hypot(r * slope);
    let rel_error = if size > 0.0 {
        err_value.hypot(r * err_slope) / size
    } else {
        f64::INFINITY
    };
    Ok(ClosedFormValue {
        pair: ScaledPair {
            value,
            slope,
            log_scale: log_factor,
        },
        rel_error,
    })
}
