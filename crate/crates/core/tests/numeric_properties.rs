use desing_core::numeric::{desing1, desing2, double_zeta, double_zeta_direct, hurwitz_zeta, Method};
use desing_core::Error;
use num_complex::Complex64;
use proptest::prelude::*;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

fn complex(re: std::ops::Range<f64>, im: std::ops::Range<f64>) -> impl Strategy<Value = Complex64> {
    (re, im).prop_map(|(a, b)| Complex64::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn hurwitz_recurrence(s in complex(-2.0..6.0, -3.0..3.0), a in complex(0.5..3.0, -2.0..2.0)) {
        prop_assume!((s - 1.0).norm() > 0.1);
        let here = hurwitz_zeta(s, a, 1e-15).unwrap().value;
        let next = hurwitz_zeta(s, a + 1.0, 1e-15).unwrap().value;
        let term = a.powc(-s);
        let scale = here.norm().max(next.norm()).max(1.0);
        prop_assert!((here - next - term).norm() < 1e-12 * scale, "{} vs {}", here - next, term);
    }

    /// Further left the terms dwarf the result; the recurrence then holds
    /// to within the reported error estimates.
    #[test]
    fn hurwitz_error_estimates_cover_recurrence(s in complex(-8.0..8.0, -6.0..6.0), a in complex(0.5..3.0, -2.0..2.0)) {
        prop_assume!((s - 1.0).norm() > 0.1);
        let here = hurwitz_zeta(s, a, 1e-15).unwrap();
        let next = hurwitz_zeta(s, a + 1.0, 1e-15).unwrap();
        let term = a.powc(-s);
        let gap = (here.value - next.value - term).norm();
        let allowed = here.err_estimate + next.err_estimate + 4.0 * f64::EPSILON * term.norm();
        prop_assert!(gap <= allowed, "gap {gap:e}, estimates {:e} + {:e}", here.err_estimate, next.err_estimate);
    }

    #[test]
    fn direct_sum_and_tail_expansion_agree(
        s1 in complex(1.0..4.0, -1.0..1.0),
        s2 in complex(2.0..4.0, -1.0..1.0),
        g1 in 0.5f64..2.0,
        g2 in 0.5f64..2.0,
    ) {
        let (g1, g2) = (Complex64::new(g1, 0.0), Complex64::new(g2, 0.0));
        let tail = double_zeta(s1, s2, g1, g2, 1e-12).unwrap();
        match double_zeta_direct(s1, s2, g1, g2, 1e-11) {
            Ok(direct) => {
                prop_assert_eq!(direct.method, Method::DirectSum);
                prop_assert!((direct.value - tail.value).norm() < 1e-9);
            }
            Err(Error::ToleranceNotMet(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn desing2_is_homogeneous_in_gamma(s1 in -2.0f64..4.0, s2 in -2.0f64..4.0, lam in 0.5f64..2.0) {
        // zeta^des_2(s; lam g) = lam^{-(s1 + s2)} zeta^des_2(s; g)
        let (a, b) = (Complex64::new(s1, 0.0), Complex64::new(s2, 0.0));
        let base = desing2(a, b, ONE, ONE, 1e-6);
        let l = Complex64::new(lam, 0.0);
        let scaled = desing2(a, b, l, l, 1e-6);
        if let (Ok(base), Ok(scaled)) = (base, scaled) {
            let predicted = base.value * l.powc(-(a + b));
            let tol = 10.0 * (base.err_estimate * predicted.norm() / base.value.norm().max(1e-300) + scaled.err_estimate) + 1e-12;
            prop_assert!((scaled.value - predicted).norm() < tol.max(1e-9 * predicted.norm()));
        }
    }
}

#[test]
fn desing1_is_entire_across_one() {
    // the product (1 - s) zeta(s) is continuous through the pole
    let left = desing1(Complex64::new(1.0 - 1e-3, 0.0)).unwrap().value;
    let mid = desing1(ONE).unwrap().value;
    let right = desing1(Complex64::new(1.0 + 1e-3, 0.0)).unwrap().value;
    assert!((left - mid).norm() < 1e-3);
    assert!((right - mid).norm() < 1e-3);
    assert!(((left + right) / 2.0 - mid).norm() < 1e-6);
}

#[test]
fn desing2_off_the_real_axis() {
    // an extrapolated and a direct evaluation on either side of s2 = 1
    let s1 = Complex64::new(0.5, 0.25);
    let at = desing2(s1, ONE, ONE, ONE, 1e-6).unwrap();
    assert_eq!(at.method, Method::Extrapolated);
    let near = desing2(s1, Complex64::new(1.0, 1e-3), ONE, ONE, 1e-6).unwrap();
    assert!((at.value - near.value).norm() < 1e-2);
}

#[test]
fn bad_gamma_is_a_domain_error() {
    let r = desing2(ONE, ONE, Complex64::new(0.0, 1.0), ONE, 1e-6);
    assert!(matches!(r, Err(Error::Domain(_))));
}
