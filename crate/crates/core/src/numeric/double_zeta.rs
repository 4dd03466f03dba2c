//! `zeta_2(s1, s2; gamma1, gamma2) = sum_{m1, m2 >= 1} (m1 gamma1)^-s1 (m1 gamma1 + m2 gamma2)^-s2`.
//!
//! With `beta = gamma1 / gamma2` the inner sum is a Hurwitz zeta-function:
//! `zeta_2 = gamma1^-s1 gamma2^-s2 sum_{m>=1} m^-s1 zeta(s2, 1 + m beta)`.
//! The outer sum is split at `M`; past it,
//! `zeta(s2, 1 + x) ~ x^{1-s2}/(s2-1) - x^{-s2}/2 + sum_k B_2k/(2k)! (s2)_{2k-1} x^{1-s2-2k}`
//! turns the tail into `sum_j C_j beta^{1-s2-j} zeta(s1 + s2 + j - 1, M + 1)`.
//! This continues `zeta_2` to `Re(s1 + s2) > 2 - J` for `J` tail terms.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::{hurwitz_zeta, non_positive_integer, singularity_distance, EvalResult, Method, ROUNDOFF};
use crate::error::{Error, Result};
use crate::exact::{bernoulli_number, binomial, factorial, BigRational};

/// Points closer than this to a singular hyperplane are rejected.
pub const SINGULAR_PROXIMITY: f64 = 1e-9;

/// Truncation limits of the tail expansion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DoubleZetaLimits {
    /// Largest number of tail terms `J`.
    pub j_max: usize,
    /// Smallest split point `M`; 0 picks it from `|s2|` and `beta`.
    pub m_min: usize,
    /// Largest split point `M`.
    pub m_max: usize,
}

impl Default for DoubleZetaLimits {
    fn default() -> Self {
        DoubleZetaLimits {
            j_max: 40,
            m_min: 0,
            m_max: 256,
        }
    }
}

fn check_gammas(g1: Complex64, g2: Complex64) -> Result<Complex64> {
    if g1.re <= 0.0 || g2.re <= 0.0 {
        return Err(Error::Domain(format!("need Re gamma > 0, got ({g1}, {g2})")));
    }
    let beta = g1 / g2;
    if beta.re <= 0.0 {
        return Err(Error::Domain(format!("need Re(gamma1 / gamma2) > 0, got {beta}")));
    }
    Ok(beta)
}

pub fn double_zeta(s1: Complex64, s2: Complex64, g1: Complex64, g2: Complex64, tol: f64) -> Result<EvalResult> {
    double_zeta_with(s1, s2, g1, g2, tol, DoubleZetaLimits::default())
}

pub fn double_zeta_with(
    s1: Complex64,
    s2: Complex64,
    g1: Complex64,
    g2: Complex64,
    tol: f64,
    limits: DoubleZetaLimits,
) -> Result<EvalResult> {
    let beta = check_gammas(g1, g2)?;
    let report = singularity_distance(s1, s2);
    if report.distance <= SINGULAR_PROXIMITY {
        return Err(Error::Singular(report));
    }
    let prefactor = g1.powc(-s1) * g2.powc(-s2);
    let r = match non_positive_integer(s2) {
        Some(n) => polynomial_reduction(s1, n, beta, tol)?,
        None => tail_expansion(s1, s2, beta, tol, limits)?,
    };
    Ok(EvalResult::new(
        r.value * prefactor,
        r.err_estimate * prefactor.norm(),
        r.method,
    ))
}

/// `s2 = -n`: `zeta(-n, 1 + m beta) = -B_{n+1}(1 + m beta)/(n+1)` is a polynomial
/// in `m`, so `zeta_2` is a finite combination of Riemann zeta values
/// `-1/(n+1) sum_i C(n+1, i) B_{n+1-i}(1) beta^i zeta(s1 - i)`.
fn polynomial_reduction(s1: Complex64, n: u32, beta: Complex64, tol: f64) -> Result<EvalResult> {
    let mut value = Complex64::zero();
    let mut err = 0.0;
    let mut magnitude = 0.0;
    for i in 0..=n + 1 {
        // B_k(1) = B_k except B_1(1) = +1/2
        let k = (n + 1 - i) as usize;
        let b = if k == 1 {
            BigRational::new(1.into(), 2.into())
        } else {
            bernoulli_number(k)
        };
        let coeff = (BigRational::from_integer(binomial(n as u64 + 1, i as i64)) * b)
            .to_f64()
            .expect("finite");
        if coeff == 0.0 {
            continue;
        }
        let z = hurwitz_zeta(s1 - i as f64, Complex64::new(1.0, 0.0), tol)?;
        let term = beta.powu(i) * coeff * z.value;
        value += term;
        magnitude += term.norm();
        err += (beta.powu(i) * coeff).norm() * z.err_estimate;
    }
    let scale = 1.0 / (n as f64 + 1.0);
    Ok(EvalResult::new(
        -value * scale,
        (err + 4.0 * ROUNDOFF * magnitude) * scale,
        Method::PolynomialReduction,
    ))
}

/// Coefficient `C_j(s)` of `x^{1-s-j}` in the expansion of `zeta(s, 1 + x)`.
fn tail_coefficient(j: usize, s: Complex64) -> Complex64 {
    match j {
        0 => (s - 1.0).inv(),
        1 => Complex64::new(-0.5, 0.0),
        j if j % 2 == 1 => Complex64::zero(),
        j => {
            let b = (bernoulli_number(j) / BigRational::from_integer(factorial(j as u64)))
                .to_f64()
                .expect("finite");
            crate::exact::pochhammer(s, j as u32 - 1) * b
        }
    }
}

fn tail_expansion(
    s1: Complex64,
    s2: Complex64,
    beta: Complex64,
    tol: f64,
    limits: DoubleZetaLimits,
) -> Result<EvalResult> {
    let inner_tol = (tol * 1e-2).max(ROUNDOFF);
    let one = Complex64::new(1.0, 0.0);
    let coeffs: Vec<Complex64> = (0..=limits.j_max).map(|j| tail_coefficient(j, s2)).collect();
    let mut m_split = ((s2.norm() + 8.0) / (2.0 * std::f64::consts::PI * beta.norm()))
        .ceil()
        .max(4.0) as usize;
    m_split = m_split.max(limits.m_min);
    let mut head = Complex64::zero();
    let mut head_err = 0.0;
    let mut head_mag = 0.0;
    let mut done = 0usize;
    let mut worst = f64::INFINITY;
    while m_split <= limits.m_max {
        for m in done + 1..=m_split {
            let mf = m as f64;
            let z = hurwitz_zeta(s2, one + beta * mf, inner_tol)?;
            let w = Complex64::new(mf, 0.0).powc(-s1);
            let term = w * z.value;
            head += term;
            head_mag += term.norm();
            head_err += w.norm() * z.err_estimate;
        }
        done = m_split;

        let mut tail = Complex64::zero();
        let mut tail_err = 0.0;
        let mut tail_mag = 0.0;
        let mut last = f64::INFINITY;
        let mut converged = false;
        for (j, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let arg = s1 + s2 + (j as f64 - 1.0);
            let z = hurwitz_zeta(arg, Complex64::new(m_split as f64 + 1.0, 0.0), inner_tol)?;
            let w = c * beta.powc(one - s2 - j as f64);
            let term = w * z.value;
            let total = (head + tail).norm().max(1.0);
            if j >= 2 && term.norm() < tol * total {
                last = term.norm();
                converged = true;
                break;
            }
            tail += term;
            tail_mag += term.norm();
            tail_err += w.norm() * z.err_estimate;
            last = term.norm();
        }
        worst = worst.min(last);
        if converged {
            let value = head + tail;
            let err = last + head_err + tail_err + 8.0 * ROUNDOFF * (head_mag + tail_mag);
            return Ok(EvalResult::new(value, err, Method::EulerMaclaurin));
        }
        m_split *= 2;
    }
    Err(Error::ContinuationReach(format!(
        "zeta_2({s1}, {s2}): tail expansion did not reach tol {tol:e} (smallest term {worst:e})"
    )))
}

/// Outer sum truncated at `M` with the bound
/// `|tail| <= e^{pi |Im s2| / 2} b^{1-Re s2} M^{2-Re(s1+s2)} / ((Re s2 - 1)(Re(s1+s2) - 2))`,
/// `b = Re beta`, valid for `Re s2 > 1`, `Re(s1 + s2) > 2`.
pub fn double_zeta_direct(s1: Complex64, s2: Complex64, g1: Complex64, g2: Complex64, tol: f64) -> Result<EvalResult> {
    let beta = check_gammas(g1, g2)?;
    let (sig2, sig) = (s2.re, s1.re + s2.re);
    if sig2 <= 1.0 || sig <= 2.0 {
        return Err(Error::ContinuationReach(format!(
            "direct summation needs Re s2 > 1 and Re(s1 + s2) > 2, got ({s1}, {s2})"
        )));
    }
    let b = beta.re;
    let bound_at = |m: f64| {
        (std::f64::consts::FRAC_PI_2 * s2.im.abs()).exp() * b.powf(1.0 - sig2) * m.powf(2.0 - sig)
            / ((sig2 - 1.0) * (sig - 2.0))
    };
    let target = tol * 0.5;
    let mut m_cut = 16.0f64;
    while bound_at(m_cut) > target {
        m_cut *= 2.0;
        if m_cut > 4e6 {
            return Err(Error::ToleranceNotMet(format!(
                "direct sum for zeta_2({s1}, {s2}) needs more than 4e6 terms"
            )));
        }
    }
    let one = Complex64::new(1.0, 0.0);
    let inner_tol = (tol * 1e-3).max(ROUNDOFF);
    let mut value = Complex64::zero();
    let mut err = 0.0;
    let mut mag = 0.0;
    // smallest terms first
    for m in (1..=m_cut as usize).rev() {
        let mf = m as f64;
        let z = hurwitz_zeta(s2, one + beta * mf, inner_tol)?;
        let w = Complex64::new(mf, 0.0).powc(-s1);
        value += w * z.value;
        mag += (w * z.value).norm();
        err += w.norm() * z.err_estimate;
    }
    let prefactor = g1.powc(-s1) * g2.powc(-s2);
    let total_err = (err + bound_at(m_cut) + 8.0 * ROUNDOFF * mag) * prefactor.norm();
    Ok(EvalResult::new(value * prefactor, total_err, Method::DirectSum))
}

/// `zeta_2(s1, s2; 1, 1)` for real `s1, s2` by summing `n^-s2 H_{n-1}(s1)`
/// over `n = m1 + m2 <= cutoff`, with `H_{n-1}(s1) = sum_{m<n} m^-s1`.
/// Returns the partial sum and a bound on the omitted part; needs
/// `s1 >= 1`, `s2 > 1`.
pub fn double_zeta_brute_force(s1: f64, s2: f64, cutoff: usize) -> Result<(f64, f64)> {
    if s1 < 1.0 || s2 <= 1.0 || cutoff < 2 {
        return Err(Error::Domain(format!(
            "brute force needs s1 >= 1, s2 > 1, got ({s1}, {s2})"
        )));
    }
    let mut harmonic = vec![0.0f64; cutoff];
    for m in 1..cutoff {
        harmonic[m] = harmonic[m - 1] + (m as f64).powf(-s1);
    }
    let mut total = 0.0;
    for n in (2..=cutoff).rev() {
        total += (n as f64).powf(-s2) * harmonic[n - 1];
    }
    // H_{n-1}(s1) <= 1 + ln n for s1 >= 1; sum_{n>N} n^-s2 (1 + ln n) <= integral
    let nf = cutoff as f64;
    let bound = nf.powf(1.0 - s2) / (s2 - 1.0) * (1.0 + nf.ln() + 1.0 / (s2 - 1.0));
    Ok((total, bound + 4.0 * ROUNDOFF * total * nf.log2()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::riemann_zeta;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn zeta(s: f64) -> f64 {
        riemann_zeta(c(s), 1e-15).unwrap().value.re
    }

    const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

    #[test]
    fn small_weight_values() {
        // sum_{a<b} a^-3 b^-2 and sum_{a<b} a^-2 b^-3
        let r = double_zeta(c(3.0), c(2.0), ONE, ONE, 1e-13).unwrap();
        assert_eq!(r.method, Method::EulerMaclaurin);
        assert!((r.value.re - 0.7115661975505724).abs() < 1e-12);
        let (bf, bound) = double_zeta_brute_force(3.0, 2.0, 1_000_000).unwrap();
        assert!(bound < 1e-4);
        assert!((r.value.re - bf).abs() <= bound);
        let r = double_zeta(c(2.0), c(3.0), ONE, ONE, 1e-13).unwrap();
        assert!((r.value.re - 0.2288103976033744).abs() < 1e-12);
        let (bf, bound) = double_zeta_brute_force(2.0, 3.0, 1_000_000).unwrap();
        assert!((r.value.re - bf).abs() <= bound);
    }

    #[test]
    fn zero_arguments() {
        // zeta_2(0, s) = sum_{N>=2} (N - 1) N^-s
        let r = double_zeta(c(0.0), c(4.0), ONE, ONE, 1e-13).unwrap();
        assert!((r.value.re - (zeta(3.0) - zeta(4.0))).abs() < 1e-13);
        // zeta_2(s, 0) = sum_m m^-s zeta(0, 1 + m) = -zeta(s)/2 - zeta(s - 1)
        let r = double_zeta(c(4.0), c(0.0), ONE, ONE, 1e-13).unwrap();
        assert_eq!(r.method, Method::PolynomialReduction);
        assert!((r.value.re - (-zeta(4.0) / 2.0 - zeta(3.0))).abs() < 1e-13);
        // the same through the tail expansion, just off the integer
        let near = double_zeta(c(4.0), c(1e-12), ONE, ONE, 1e-13).unwrap();
        assert_eq!(near.method, Method::EulerMaclaurin);
        assert!((near.value.re - r.value.re).abs() < 1e-10);
    }

    #[test]
    fn polynomial_reduction_at_6_minus_3() {
        let r = double_zeta(c(6.0), c(-3.0), ONE, ONE, 1e-13).unwrap();
        let expected = -0.25 * (zeta(2.0) + 2.0 * zeta(3.0) + zeta(4.0) - zeta(6.0) / 30.0);
        assert!((r.value.re - expected).abs() < 1e-13);
        let near = double_zeta(c(6.0), c(-3.0 + 1e-11), ONE, ONE, 1e-13).unwrap();
        assert!((near.value.re - expected).abs() < 1e-8);
    }

    #[test]
    fn singular_points_are_rejected() {
        for (a, b) in [(3.0, -3.0), (1.0, 1.0), (0.0, 1.0), (4.0, -2.0), (-1.0, -1.0)] {
            assert!(
                matches!(double_zeta(c(a), c(b), ONE, ONE, 1e-12), Err(Error::Singular(_))),
                "({a}, {b})"
            );
        }
        // s1 + s2 = -1 is not singular
        assert!(double_zeta(c(1.5), c(-2.5), ONE, ONE, 1e-12).is_ok());
    }

    #[test]
    fn direct_and_tail_paths_agree() {
        let points = [
            (c(3.0), c(2.0), ONE, ONE),
            (c(2.5), c(3.0), ONE, ONE),
            (c(1.0), c(3.5), c(0.5), c(1.5)),
            (Complex64::new(3.0, 1.0), Complex64::new(2.0, -0.5), c(2.0), ONE),
            (c(0.5), c(4.0), Complex64::new(1.0, 0.3), c(1.0)),
        ];
        for (s1, s2, g1, g2) in points {
            let a = double_zeta(s1, s2, g1, g2, 1e-13).unwrap();
            let b = double_zeta_direct(s1, s2, g1, g2, 1e-10).unwrap();
            assert!(
                (a.value - b.value).norm() < 1e-9,
                "{s1} {s2}: {} vs {}",
                a.value,
                b.value
            );
        }
    }

    #[test]
    fn homogeneity_in_gamma() {
        // zeta_2(s; l g) = l^{-s1-s2} zeta_2(s; g) for real l > 0
        let (s1, s2) = (c(-1.3), c(0.7));
        let a = double_zeta(s1, s2, c(1.0), c(2.0), 1e-13).unwrap().value;
        let b = double_zeta(s1, s2, c(3.0), c(6.0), 1e-13).unwrap().value;
        assert!((b - a * 3f64.powf(-(s1.re + s2.re))).norm() < 1e-10);
    }

    #[test]
    fn continuation_matches_functional_shift() {
        // zeta(a) zeta(b) = zeta_2(a, b) + zeta_2(b, a) + zeta(a + b), continued.
        for (a, b) in [(0.5, 2.5), (-1.5, 3.7), (2.2, -0.4)] {
            let l = double_zeta(c(a), c(b), ONE, ONE, 1e-13).unwrap().value.re
                + double_zeta(c(b), c(a), ONE, ONE, 1e-13).unwrap().value.re
                + zeta(a + b);
            assert!((l - zeta(a) * zeta(b)).abs() < 1e-9, "({a}, {b})");
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            double_zeta(c(3.0), c(2.0), c(-1.0), ONE, 1e-12),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            double_zeta_direct(c(0.5), c(1.2), ONE, ONE, 1e-12),
            Err(Error::ContinuationReach(_))
        ));
    }
}
