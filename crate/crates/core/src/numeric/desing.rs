//! `zeta^des_1(s) = (1 - s) zeta(s)` and
//! `zeta^des_2(s1, s2) = (s1-1)(s2-1) zeta_2(s1, s2) + s2(s2+1-s1) zeta_2(s1-1, s2+1) - s2(s2+1) zeta_2(s1-2, s2+2)`.
//!
//! Both are entire. At points where a shifted term is singular the
//! combination is evaluated along a short line through the point and
//! extrapolated back to it.

use std::sync::OnceLock;

use num_complex::Complex64;

use super::double_zeta::{double_zeta, SINGULAR_PROXIMITY};
use super::{lagrange_weights_at_zero, neville_at_zero, riemann_zeta, singularity_distance, EvalResult, Method};
use crate::coeffs::{combination, ShiftedCombination};
use crate::error::{Error, Result};

/// Terms closer than this to a singular hyperplane trigger extrapolation.
pub const DESING2_PROXIMITY: f64 = 1e-6;

/// Euler's constant and the first Stieltjes constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const STIELTJES_1: f64 = -0.072_815_845_483_676_72;

/// Below this distance from `s = 1`, [`desing1`] uses the Laurent expansion.
const NEAR_ONE: f64 = 1e-4;

/// Working tolerance for the individual zeta evaluations.
const INNER_TOL: f64 = 1e-14;

pub fn desing1(s: Complex64) -> Result<EvalResult> {
    let h = s - 1.0;
    if h.norm() < NEAR_ONE {
        // (1 - s) zeta(s) = -1 - gamma_0 (s - 1) + gamma_1 (s - 1)^2 + ...
        let value = -1.0 - h * EULER_GAMMA + h * h * STIELTJES_1;
        return Ok(EvalResult::new(
            value,
            0.01 * h.norm().powi(3),
            Method::PolynomialReduction,
        ));
    }
    let z = riemann_zeta(s, INNER_TOL)?;
    Ok(EvalResult::new(-h * z.value, h.norm() * z.err_estimate, z.method))
}

/// Extrapolation grid for [`desing2_with`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtrapolationConfig {
    pub eps0: f64,
    pub levels: usize,
    pub direction: (f64, f64),
}

impl Default for ExtrapolationConfig {
    fn default() -> Self {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        ExtrapolationConfig {
            eps0: 1.0 / 64.0,
            levels: 7,
            direction: (1.0, 1.0 / phi),
        }
    }
}

fn r2_combination() -> &'static ShiftedCombination {
    static C: OnceLock<ShiftedCombination> = OnceLock::new();
    C.get_or_init(|| combination(2))
}

fn evaluate_combination(s1: Complex64, s2: Complex64, g1: Complex64, g2: Complex64) -> Result<(Complex64, f64)> {
    let center = [s1.re.round() as i64, s2.re.round() as i64];
    let delta = [s1 - center[0] as f64, s2 - center[1] as f64];
    evaluate_combination_at(&center, &delta, g1, g2)
}

fn evaluate_combination_at(
    center: &[i64; 2],
    delta: &[Complex64; 2],
    g1: Complex64,
    g2: Complex64,
) -> Result<(Complex64, f64)> {
    r2_combination().evaluate_at_offset(center, delta, |x| {
        let r = double_zeta(x[0], x[1], g1, g2, INNER_TOL)?;
        // The weights see the exact offset while the shifted arguments are
        // rounded; near a simple pole that costs about |value| / distance
        // per unit of argument error.
        let moved: f64 = x.iter().zip(delta).map(|(xi, d)| rounding_error(xi.re, d.re)).sum();
        let sensitivity = if moved == 0.0 {
            0.0
        } else {
            r.value.norm() * moved / singularity_distance(x[0], x[1]).distance
        };
        Ok((r.value, r.err_estimate + sensitivity))
    })
}

/// Rounds a grid offset to a multiple of 2^-44, so that adding it to an
/// integer of modest size is exact and every shifted argument of the
/// combination sits exactly where its weight assumes.
fn snap(x: f64) -> f64 {
    const Q: f64 = 1.0 / (1u64 << 44) as f64;
    (x / Q).round() * Q
}

/// Error of `x = fl(k + d)` for the integer `k` nearest `x - d`, by TwoSum.
fn rounding_error(x: f64, d: f64) -> f64 {
    let k = (x - d).round();
    let sum = k + d;
    let kv = sum - d;
    let dv = sum - kv;
    let exact_tail = (k - kv) + (d - dv);
    (sum - x).abs() + exact_tail.abs()
}

/// Distance of the nearest shifted argument to the singular locus.
fn nearest_singularity(s1: Complex64, s2: Complex64) -> (f64, String) {
    r2_combination()
        .groups()
        .iter()
        .map(|(m, _)| {
            let (a, b) = (s1 + m[0] as f64, s2 + m[1] as f64);
            let rep = singularity_distance(a, b);
            (rep.distance, format!("zeta_2({a}, {b}): {rep}"))
        })
        .min_by(|x, y| x.0.total_cmp(&y.0))
        .expect("three terms")
}

pub fn desing2(s1: Complex64, s2: Complex64, g1: Complex64, g2: Complex64, tol: f64) -> Result<EvalResult> {
    desing2_with(s1, s2, g1, g2, tol, &ExtrapolationConfig::default())
}

pub fn desing2_with(
    s1: Complex64,
    s2: Complex64,
    g1: Complex64,
    g2: Complex64,
    tol: f64,
    config: &ExtrapolationConfig,
) -> Result<EvalResult> {
    if g1.re <= 0.0 || g2.re <= 0.0 {
        return Err(Error::Domain(format!("need Re gamma > 0, got ({g1}, {g2})")));
    }
    let (dist, _) = nearest_singularity(s1, s2);
    if dist > DESING2_PROXIMITY {
        match evaluate_combination(s1, s2, g1, g2) {
            Ok((value, err)) => {
                let method = if err <= tol {
                    direct_method(s1, s2)
                } else {
                    Method::EulerMaclaurin
                };
                if err <= tol {
                    return Ok(EvalResult::new(value, err, method));
                }
            }
            Err(Error::Domain(e)) => return Err(Error::Domain(e)),
            Err(_) => {}
        }
    }
    extrapolate(s1, s2, g1, g2, tol, config)
}

/// The method tag of a direct evaluation: the polynomial path if every
/// shifted term takes it, otherwise the tail expansion.
fn direct_method(s1: Complex64, s2: Complex64) -> Method {
    let all_poly = r2_combination()
        .groups()
        .iter()
        .all(|(m, _)| super::non_positive_integer(s2 + m[1] as f64).is_some());
    let _ = s1;
    if all_poly {
        Method::PolynomialReduction
    } else {
        Method::EulerMaclaurin
    }
}

fn extrapolate(
    s1: Complex64,
    s2: Complex64,
    g1: Complex64,
    g2: Complex64,
    tol: f64,
    config: &ExtrapolationConfig,
) -> Result<EvalResult> {
    let (d1, d2) = config.direction;
    let center = [s1.re.round() as i64, s2.re.round() as i64];
    let base = [s1 - center[0] as f64, s2 - center[1] as f64];
    if config.levels == 0 {
        return Err(Error::Domain("extrapolation needs at least one level".into()));
    }
    // One level beyond the configured grid, used only to check stability.
    let all: Vec<f64> = (0..=config.levels)
        .map(|k| config.eps0 * 0.5f64.powi(k as i32))
        .collect();
    let mut ys = Vec::with_capacity(all.len());
    let mut errs = Vec::with_capacity(all.len());
    for &eps in &all {
        let (a, b) = (s1 + snap(eps * d1), s2 + snap(eps * d2));
        let (dist, worst) = nearest_singularity(a, b);
        if dist <= SINGULAR_PROXIMITY {
            return Err(Error::ToleranceNotMet(format!(
                "extrapolation grid hits a singularity, {worst}"
            )));
        }
        let delta = [base[0] + snap(eps * d1), base[1] + snap(eps * d2)];
        let (y, e) = evaluate_combination_at(&center, &delta, g1, g2)
            .map_err(|err| Error::ToleranceNotMet(format!("at eps = {eps:e}: {err}; nearest term {worst}")))?;
        ys.push(y);
        errs.push(e);
    }
    let n = config.levels;
    let (value, correction) = neville_at_zero(&all[..n], &ys[..n]);
    // The same scheme on the grid shifted one level finer; disagreement
    // exposes noise amplified by the weights of the finest points.
    let (shifted, _) = neville_at_zero(&all[1..], &ys[1..]);
    let correction = correction.max((shifted - value).norm());
    let propagate = |xs: &[f64], es: &[f64]| -> f64 {
        lagrange_weights_at_zero(xs)
            .iter()
            .zip(es)
            .map(|(w, e)| w.abs() * e)
            .sum()
    };
    let propagated = propagate(&all[..n], &errs[..n]).max(propagate(&all[1..], &errs[1..]));
    let err = correction + propagated;
    if err > tol {
        let (_, worst) = nearest_singularity(s1, s2);
        return Err(Error::ToleranceNotMet(format!(
            "extrapolated zeta^des_2({s1}, {s2}) has error estimate {err:e} > {tol:e} \
             (last correction {correction:e}, propagated {propagated:e}); nearest term {worst}"
        )));
    }
    Ok(EvalResult::new(value, err, Method::Extrapolated))
}
