//! `zeta(s, a) = sum_{n>=0} (a + n)^-s`, continued to `s != 1` by
//! Euler–Maclaurin summation.

use std::sync::OnceLock;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::{non_positive_integer, EvalResult, Method, ROUNDOFF};
use crate::error::{Error, Result};
use crate::exact::bernoulli::bernoulli_polynomial_coeffs;
use crate::exact::{bernoulli_number, factorial, BigRational};

const MAX_K: usize = 60;
const MAX_SHIFT: usize = 1 << 14;

/// `B_{2k} / (2k)!` for `k = 0..=MAX_K`.
fn em_coefficients() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..=MAX_K)
            .map(|k| {
                let q = bernoulli_number(2 * k) / BigRational::from_integer(factorial(2 * k as u64));
                q.to_f64().expect("finite")
            })
            .collect()
    })
}

pub fn hurwitz_zeta(s: Complex64, a: Complex64, tol: f64) -> Result<EvalResult> {
    if a.re <= 0.0 {
        return Err(Error::Domain(format!("Hurwitz zeta needs Re a > 0, got a = {a}")));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole);
    }
    if let Some(n) = non_positive_integer(s) {
        return Ok(at_non_positive_integer(n, a));
    }
    let tol = tol.max(ROUNDOFF);
    // Smallest shift first: fewer explicit terms means less cancellation
    // when Re s < 0, and near a negative integer the correction series
    // terminates almost at once.
    let mut n_shift = 0usize;
    while n_shift <= MAX_SHIFT {
        if let Some(r) = euler_maclaurin(s, a, n_shift, tol) {
            return Ok(r);
        }
        n_shift = if n_shift == 0 { 4 } else { 2 * n_shift };
    }
    Err(Error::ToleranceNotMet(format!(
        "Hurwitz zeta at s = {s}, a = {a}, tol = {tol:e}"
    )))
}

pub fn riemann_zeta(s: Complex64, tol: f64) -> Result<EvalResult> {
    hurwitz_zeta(s, Complex64::new(1.0, 0.0), tol)
}

/// `zeta(-n, a) = -B_{n+1}(a) / (n + 1)`.
fn at_non_positive_integer(n: u32, a: Complex64) -> EvalResult {
    let coeffs = bernoulli_polynomial_coeffs(n as usize + 1);
    let mut value = Complex64::zero();
    let mut magnitude = 0.0;
    let mut power = Complex64::new(1.0, 0.0);
    for c in &coeffs {
        let c = c.to_f64().expect("finite");
        value += power * c;
        magnitude += (power * c).norm();
        power *= a;
    }
    let scale = -1.0 / (n as f64 + 1.0);
    EvalResult::new(
        value * scale,
        4.0 * ROUNDOFF * magnitude * scale.abs(),
        Method::PolynomialReduction,
    )
}

fn euler_maclaurin(s: Complex64, a: Complex64, n_shift: usize, tol: f64) -> Option<EvalResult> {
    // powc goes through exp(-s log x), so its relative error grows with |s log x|
    let power_error = |x: Complex64| 2.0 + s.norm() * x.ln().norm();
    let mut sum = Complex64::zero();
    let mut magnitude = 0.0;
    for n in 0..n_shift {
        let y = a + n as f64;
        let t = y.powc(-s);
        sum += t;
        magnitude += t.norm() * power_error(y);
    }
    let x = a + n_shift as f64;
    let x_pow = x.powc(-s);
    let head = x * x_pow / (s - 1.0) + x_pow * 0.5;
    sum += head;
    magnitude += head.norm() * power_error(x);

    let coeffs = em_coefficients();
    let inv_x2 = (x * x).inv();
    // (s)_{2k-1} x^{-s-2k+1}, starting at k = 1
    let mut poch_pow = s * x_pow / x;
    for k in 1..=MAX_K {
        let term = poch_pow * coeffs[k];
        if term.norm() < tol * sum.norm().max(1.0) {
            let err = term.norm() + 4.0 * ROUNDOFF * magnitude;
            return Some(EvalResult::new(sum, err, Method::EulerMaclaurin));
        }
        sum += term;
        magnitude += term.norm();
        let m = 2.0 * k as f64;
        poch_pow *= (s + (m - 1.0)) * (s + m) * inv_x2;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::bernoulli_polynomial;
    use crate::exact::rational::rat;
    use std::f64::consts::PI;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn basic_values() {
        let z2 = riemann_zeta(c(2.0), 1e-15).unwrap();
        assert!((z2.value.re - PI * PI / 6.0).abs() < 1e-14);
        assert_eq!(z2.method, Method::EulerMaclaurin);
        let z3 = riemann_zeta(c(3.0), 1e-15).unwrap();
        assert!((z3.value.re - 1.2020569031595942).abs() < 1e-14);
        assert!((riemann_zeta(c(0.0), 1e-15).unwrap().value.re + 0.5).abs() < 1e-15);
        let m3 = hurwitz_zeta(c(-3.0), c(1.0), 1e-15).unwrap();
        assert!((m3.value.re - 1.0 / 120.0).abs() < 1e-16);
        assert_eq!(m3.method, Method::PolynomialReduction);
    }

    #[test]
    fn trivial_zeros_and_bernoulli_values() {
        for (k, expected) in [(2, -1.0 / 12.0), (4, 1.0 / 120.0), (6, -1.0 / 252.0)] {
            let v = riemann_zeta(c(1.0 - k as f64), 1e-15).unwrap().value.re;
            assert!((v - expected).abs() < 1e-15);
        }
        // not through the polynomial path
        let near = riemann_zeta(Complex64::new(-2.0, 1e-30), 1e-15).unwrap();
        assert!(near.value.norm() < 1e-12);
        assert!(near.value.norm() <= near.err_estimate);
    }

    #[test]
    fn zero_argument() {
        for a in [c(0.3), Complex64::new(2.0, 0.5)] {
            let v = hurwitz_zeta(c(0.0), a, 1e-15).unwrap().value;
            assert!((v - (c(0.5) - a)).norm() < 1e-15);
        }
    }

    #[test]
    fn polynomial_reduction_matches_exact_values() {
        for (p, q) in [(1, 1), (1, 2), (3, 2), (7, 3)] {
            let a = rat(p, q);
            for n in 0..=8usize {
                let exact = -bernoulli_polynomial(n + 1, &a) / BigRational::from_integer((n as i64 + 1).into());
                let v = hurwitz_zeta(c(-(n as f64)), c(p as f64 / q as f64), 1e-15).unwrap();
                assert!((v.value.re - exact.to_f64().unwrap()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn euler_maclaurin_near_negative_integers_matches_polynomial() {
        let a = Complex64::new(2.0, 0.5);
        for n in 0..=8 {
            let exact = hurwitz_zeta(c(-(n as f64)), a, 1e-15).unwrap().value;
            let near = hurwitz_zeta(c(-(n as f64) + 1e-9), a, 1e-15).unwrap();
            assert_eq!(near.method, Method::EulerMaclaurin);
            assert!((near.value - exact).norm() < 1e-6 * exact.norm().max(1.0), "n = {n}");
        }
    }

    #[test]
    fn errors() {
        assert_eq!(riemann_zeta(c(1.0), 1e-12), Err(Error::Pole));
        assert!(matches!(hurwitz_zeta(c(2.0), c(0.0), 1e-12), Err(Error::Domain(_))));
        assert!(matches!(hurwitz_zeta(c(2.0), c(-1.0), 1e-12), Err(Error::Domain(_))));
    }

    #[test]
    fn error_estimate_is_nonnegative_and_small() {
        let r = hurwitz_zeta(Complex64::new(0.5, 14.134725), c(1.0), 1e-14).unwrap();
        assert!(r.err_estimate >= 0.0 && r.err_estimate < 1e-12);
        // first nontrivial zero
        assert!(r.value.norm() < 1e-5);
    }
}
