use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use super::rational::BigRational;

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `(sum parts)! / prod(parts!)`.
pub fn multinomial(parts: &[u32]) -> BigInt {
    let mut total = 0u64;
    let mut acc = BigInt::one();
    for &p in parts {
        for i in 1..=p as u64 {
            total += 1;
            acc *= total;
            acc /= i;
        }
    }
    acc
}

/// Rising factorial `(s)_k = s (s+1) ... (s+k-1)`, `(s)_0 = 1`.
pub fn pochhammer(s: Complex64, k: u32) -> Complex64 {
    (0..k).fold(Complex64::new(1.0, 0.0), |acc, i| acc * (s + i as f64))
}

pub fn pochhammer_rational(s: &BigRational, k: u32) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, i| {
        acc * (s + BigRational::from_integer(BigInt::from(i)))
    })
}
