use super::SpecFunError;

/// Largest supported order for the spherical Bessel functions.
pub const MAX_ORDER: u32 = 50;

/// Below this argument the ascending series is used directly.
const SERIES_LIMIT: f64 = 2.0;
/// `i_l(x)` overflows a double near x = 710; anything above this is refused.
const I_OVERFLOW: f64 = 700.0;
const RESCALE: f64 = 1e100;

fn check_args(l: u32, x: f64) -> Result<(), SpecFunError> {
    if l > MAX_ORDER {
        return Err(SpecFunError::Domain {
            name: "l",
            value: l as f64,
            reason: "order above 50 is not supported",
        });
    }
    if !x.is_finite() || x < 0.0 {
        return Err(SpecFunError::Domain {
            name: "x",
            value: x,
            reason: "argument must be finite and non-negative",
        });
    }
    Ok(())
}

/// Spherical Bessel function of the first kind `j_l(x)`.
pub fn sph_bessel_j(l: u32, x: f64) -> Result<f64, SpecFunError> {
    check_args(l, x)?;
    Ok(j_value(l, x))
}

/// Modified spherical Bessel function of the first kind `i_l(x)`.
pub fn sph_bessel_i(l: u32, x: f64) -> Result<f64, SpecFunError> {
    check_args(l, x)?;
    if x > I_OVERFLOW {
        return Err(SpecFunError::Overflow { order: l, x });
    }
    Ok(i_value(l, x))
}

fn double_factorial_odd(l: u32) -> f64 {
    (1..=l).fold(1.0, |acc, k| acc * (2 * k + 1) as f64)
}

/// Ascending series for `j_l(x) / x^l` (sign = -1) or `i_l(x) / x^l` (sign = +1).
fn reduced_series(l: u32, x: f64, sign: f64) -> f64 {
    let y = sign * 0.5 * x * x;
    let mut term = 1.0 / double_factorial_odd(l);
    let mut sum = term;
    for k in 1..200u32 {
        term *= y / (k as f64 * (2 * l + 2 * k + 1) as f64);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

pub(crate) fn j_value(l: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if l == 0 { 1.0 } else { 0.0 };
    }
    if x < SERIES_LIMIT {
        return x.powi(l as i32) * reduced_series(l, x, -1.0);
    }
    let (s, c) = x.sin_cos();
    match l {
        0 => s / x,
        1 => (s / x - c) / x,
        2 => ((3.0 / (x * x) - 1.0) * s - 3.0 * c / x) / x,
        _ if x > l as f64 => j_upward(l, x, s, c),
        _ => j_miller(l, x, s, c),
    }
}

fn j_upward(l: u32, x: f64, s: f64, c: f64) -> f64 {
    let mut prev = s / x;
    let mut cur = (s / x - c) / x;
    for k in 1..l {
        let next = (2 * k + 1) as f64 / x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Miller's downward recurrence normalized by the sum rule `sum (2k+1) j_k^2 = 1`.
fn j_miller(l: u32, x: f64, s: f64, c: f64) -> f64 {
    let top = (l as f64).max(x);
    let n = (top + (160.0 * top).sqrt()).ceil() as usize + 10;
    let mut f = vec![0.0; n + 2];
    f[n] = 1.0;
    for k in (1..=n).rev() {
        f[k - 1] = (2 * k + 1) as f64 / x * f[k] - f[k + 1];
        if f[k - 1].abs() > RESCALE {
            for v in &mut f[k - 1..] {
                *v /= RESCALE;
            }
        }
    }
    let sum: f64 = f[..=n]
        .iter()
        .enumerate()
        .map(|(k, v)| (2 * k + 1) as f64 * v * v)
        .sum();
    let j0 = s / x;
    let j1 = (s / x - c) / x;
    let sign = if j0.abs() >= j1.abs() {
        (j0 * f[0]).signum()
    } else {
        (j1 * f[1]).signum()
    };
    sign * f[l as usize] / sum.sqrt()
}

fn i_value(l: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if l == 0 { 1.0 } else { 0.0 };
    }
    if x < SERIES_LIMIT {
        return x.powi(l as i32) * reduced_series(l, x, 1.0);
    }
    let (sh, ch) = (x.sinh(), x.cosh());
    match l {
        0 => sh / x,
        1 => (ch - sh / x) / x,
        2 => ((3.0 / (x * x) + 1.0) * sh - 3.0 * ch / x) / x,
        _ => ln_i(l, x).exp(),
    }
}

/// `j_l(x) / x^l`, finite and smooth through x = 0.
pub(crate) fn j_reduced(l: u32, x: f64) -> f64 {
    if x < SERIES_LIMIT {
        reduced_series(l, x, -1.0)
    } else {
        j_value(l, x) / x.powi(l as i32)
    }
}

/// `i_l(x) / x^l` for x below the series limit.
pub(crate) fn i_reduced(l: u32, x: f64) -> f64 {
    debug_assert!(x < SERIES_LIMIT);
    reduced_series(l, x, 1.0)
}

fn finite_form_valid(l: u32, x: f64) -> bool {
    x >= 50.0_f64.max((l as f64) * (l as f64))
}

/// `e^{-x} i_l(x)` from the terminating e^{±x} expansion; accurate when x ≥ max(50, l²).
fn i_scaled_finite(l: u32, x: f64) -> f64 {
    let mut a = 1.0;
    let mut alt = 0.0;
    let mut plain = 0.0;
    let mut pow = 1.0 / x;
    for k in 0..=l {
        let sgn = if k % 2 == 0 { 1.0 } else { -1.0 };
        alt += sgn * a * pow;
        plain += a * pow;
        let kf = k as f64;
        a *= (l as f64 + kf + 1.0) * (l as f64 - kf) / (2.0 * (kf + 1.0));
        pow /= x;
    }
    let tail_sign = if l.is_multiple_of(2) { -1.0 } else { 1.0 };
    0.5 * (alt + tail_sign * (-2.0 * x).exp() * plain)
}

/// Ratio `i_{l+1}(x) / i_l(x)` for x > 0.
pub(crate) fn i_ratio(l: u32, x: f64) -> f64 {
    if finite_form_valid(l + 1, x) {
        return i_scaled_finite(l + 1, x) / i_scaled_finite(l, x);
    }
    let start = l + x.ceil() as u32 + 40;
    let mut r = x / (2 * start + 3) as f64;
    for k in (l + 1..=start).rev() {
        r = 1.0 / ((2 * k + 1) as f64 / x + r);
    }
    r
}

/// `ln i_l(x)` for x > 0, finite far beyond the overflow point of `i_l` itself.
pub(crate) fn ln_i(l: u32, x: f64) -> f64 {
    if x < SERIES_LIMIT {
        return l as f64 * x.ln() + reduced_series(l, x, 1.0).ln();
    }
    if finite_form_valid(l, x) {
        return x + i_scaled_finite(l, x).ln();
    }
    ln_i_by_ratios(l, x)
}

fn ln_i_by_ratios(l: u32, x: f64) -> f64 {
    let mut acc = x - (2.0 * x).ln() + (-(-2.0 * x).exp()).ln_1p();
    if l == 0 {
        return acc;
    }
    let start = l + x.ceil() as u32 + 40;
    let mut r = x / (2 * start + 3) as f64;
    for k in (1..=start).rev() {
        r = 1.0 / ((2 * k + 1) as f64 / x + r);
        if k <= l {
            acc += r.ln();
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j0_zero_at_pi() {
        assert!(sph_bessel_j(0, std::f64::consts::PI).unwrap().abs() < 1e-14);
    }

    #[test]
    fn origin_values() {
        assert_eq!(sph_bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(sph_bessel_j(1, 0.0).unwrap(), 0.0);
        assert_eq!(sph_bessel_i(2, 0.0).unwrap(), 0.0);
        assert_eq!(sph_bessel_i(0, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn i0_is_sinh_over_x() {
        let v = sph_bessel_i(0, 1.0).unwrap();
        assert!((v - 1.0_f64.sinh()).abs() < 1e-15);
        assert!((v - 1.1752011936).abs() < 1e-10);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            sph_bessel_j(0, -1.0),
            Err(SpecFunError::Domain { .. })
        ));
        assert!(matches!(
            sph_bessel_j(51, 1.0),
            Err(SpecFunError::Domain { .. })
        ));
        assert!(matches!(
            sph_bessel_i(0, f64::NAN),
            Err(SpecFunError::Domain { .. })
        ));
        assert!(matches!(
            sph_bessel_i(3, 701.0),
            Err(SpecFunError::Overflow { .. })
        ));
    }

    #[test]
    fn miller_and_upward_agree_at_switch() {
        for l in 3..30u32 {
            let x = l as f64;
            let (s, c) = x.sin_cos();
            let a = j_upward(l, x, s, c);
            let b = j_miller(l, x, s, c);
            assert!((a - b).abs() <= 1e-11 * b.abs(), "l={l}: {a} vs {b}");
        }
    }

    #[test]
    fn ln_i_matches_value_paths() {
        for &(l, x) in &[
            (0u32, 3.0),
            (3, 2.5),
            (5, 10.0),
            (7, 60.0),
            (10, 120.0),
            (2, 400.0),
        ] {
            let direct = i_value(l, x).ln();
            assert!((ln_i(l, x) - direct).abs() < 1e-12 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn ln_i_continuous_across_finite_form_threshold() {
        for &(l, x) in &[(8u32, 64.0), (3, 50.0), (12, 144.0)] {
            let a = ln_i_by_ratios(l, x);
            let b = x + i_scaled_finite(l, x).ln();
            assert!((a - b).abs() < 1e-13 * b, "l={l}: {a} vs {b}");
        }
    }

    #[test]
    fn ratio_matches_values() {
        for &(l, x) in &[(0u32, 2.5), (4, 7.0), (12, 30.0), (3, 300.0)] {
            let r = i_ratio(l, x);
            let expect = (ln_i(l + 1, x) - ln_i(l, x)).exp();
            assert!((r - expect).abs() < 1e-12 * expect);
        }
    }

    #[test]
    fn reduced_forms_continuous() {
        for l in 0..6u32 {
            let a = j_reduced(l, SERIES_LIMIT - 1e-12);
            let b = j_reduced(l, SERIES_LIMIT + 1e-12);
            assert!((a - b).abs() < 1e-11 * a.abs().max(1e-3));
        }
    }
}
