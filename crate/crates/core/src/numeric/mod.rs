//! Double-precision evaluation: the Hurwitz zeta-function, the analytically
//! continued double zeta-function `zeta_2(s1, s2; gamma1, gamma2)`, and the
//! desingularized functions `zeta^des_1` and `zeta^des_2`.

mod desing;
mod double_zeta;
mod extrapolate;
mod hurwitz;
mod singular;

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use desing::{desing1, desing2, desing2_with, ExtrapolationConfig, DESING2_PROXIMITY};
pub use double_zeta::{double_zeta, double_zeta_brute_force, double_zeta_direct, double_zeta_with, DoubleZetaLimits};
pub use extrapolate::{lagrange_weights_at_zero, neville_at_zero};
pub use hurwitz::{hurwitz_zeta, riemann_zeta};
pub use singular::{singularity_distance, singularity_distance_to_depth, Hyperplane, SingularityReport, DEFAULT_DEPTH};

/// Unit roundoff of `f64`, used for rounding-error estimates.
pub(crate) const ROUNDOFF: f64 = f64::EPSILON;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    DirectSum,
    EulerMaclaurin,
    PolynomialReduction,
    Extrapolated,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Method::DirectSum => "direct_sum",
            Method::EulerMaclaurin => "euler_maclaurin",
            Method::PolynomialReduction => "polynomial_reduction",
            Method::Extrapolated => "extrapolated",
        };
        f.write_str(name)
    }
}

/// A value with an error estimate and the method that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    #[serde(with = "complex_json")]
    pub value: Complex64,
    pub err_estimate: f64,
    pub method: Method,
}

impl EvalResult {
    pub fn new(value: Complex64, err_estimate: f64, method: Method) -> Self {
        EvalResult {
            value,
            err_estimate: err_estimate.abs(),
            method,
        }
    }
}

/// `{"re": .., "im": ..}`
pub mod complex_json {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Repr {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        Repr { re: z.re, im: z.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let r = Repr::deserialize(d)?;
        Ok(Complex64::new(r.re, r.im))
    }
}

/// `Some(n)` if `s` is exactly the non-positive integer `-n`.
pub(crate) fn non_positive_integer(s: Complex64) -> Option<u32> {
    (s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0 && s.re > -1e6).then(|| (-s.re) as u32)
}
