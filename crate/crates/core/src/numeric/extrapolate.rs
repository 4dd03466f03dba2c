//! Polynomial extrapolation to `x = 0`.

use num_complex::Complex64;

/// Neville's scheme evaluated at 0. Returns the extrapolated value and the
/// size of the last correction, `|P_{0..n} - P_{1..n}|`.
///
/// Panics if `xs` and `ys` differ in length or are empty.
pub fn neville_at_zero(xs: &[f64], ys: &[Complex64]) -> (Complex64, f64) {
    assert_eq!(xs.len(), ys.len());
    assert!(!xs.is_empty());
    let n = xs.len();
    let mut p = ys.to_vec();
    let mut correction = 0.0;
    for level in 1..n {
        for i in 0..n - level {
            let (xi, xj) = (xs[i], xs[i + level]);
            let next = (p[i + 1] * xi - p[i] * xj) / (xi - xj);
            if level == n - 1 {
                correction = (next - p[i + 1]).norm();
            }
            p[i] = next;
        }
    }
    (p[0], correction)
}

/// Lagrange weights `w_i` with `P(0) = sum w_i y_i`.
pub fn lagrange_weights_at_zero(xs: &[f64]) -> Vec<f64> {
    (0..xs.len())
        .map(|i| {
            xs.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &xj)| xj / (xj - xs[i]))
                .product()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_polynomials() {
        let xs: Vec<f64> = (0..5).map(|k| 0.5f64.powi(k)).collect();
        let f = |x: f64| Complex64::new(3.0 - 2.0 * x + x.powi(4), x * x);
        let ys: Vec<Complex64> = xs.iter().map(|&x| f(x)).collect();
        let (v, corr) = neville_at_zero(&xs, &ys);
        assert!((v - Complex64::new(3.0, 0.0)).norm() < 1e-12);
        assert!(corr < 5.0);
        let w = lagrange_weights_at_zero(&xs);
        let lw: Complex64 = w.iter().zip(&ys).map(|(w, y)| y * w).sum();
        assert!((lw - v).norm() < 1e-12);
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn converges_for_analytic_functions() {
        let xs: Vec<f64> = (0..7).map(|k| 2f64.powi(-k) / 64.0).collect();
        let ys: Vec<Complex64> = xs.iter().map(|&x| Complex64::new(x.exp_m1() / x, 0.0)).collect();
        let (v, corr) = neville_at_zero(&xs, &ys);
        assert!((v.re - 1.0).abs() < 1e-14);
        assert!(corr < 1e-12);
    }
}
