//! Classical Bernoulli numbers and polynomials.
//!
//! Convention: `t / (e^t - 1) = sum B_n t^n / n!`, so `B_1 = -1/2`. Every
//! formula downstream (twisted numbers, desingularized values, the Hurwitz
//! kernel) assumes this sign of `B_1`.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::combinatorics::binomial;
use super::rational::BigRational;

/// Process-wide table `n -> B_n`, extended on demand by the defining
/// recurrence `sum_{k=0}^{n} C(n+1, k) B_k = 0`.
pub struct BernoulliCache {
    table: RwLock<Vec<BigRational>>,
}

impl BernoulliCache {
    fn new() -> Self {
        BernoulliCache {
            table: RwLock::new(vec![BigRational::one()]),
        }
    }

    pub fn global() -> &'static BernoulliCache {
        static CACHE: OnceLock<BernoulliCache> = OnceLock::new();
        CACHE.get_or_init(BernoulliCache::new)
    }

    pub fn get(&self, n: usize) -> BigRational {
        {
            let table = self.table.read().expect("bernoulli cache poisoned");
            if let Some(b) = table.get(n) {
                return b.clone();
            }
        }
        let mut table = self.table.write().expect("bernoulli cache poisoned");
        while table.len() <= n {
            let m = table.len();
            let b = if m > 1 && m % 2 == 1 {
                BigRational::zero()
            } else {
                let mut acc = BigRational::zero();
                for (k, bk) in table.iter().enumerate() {
                    if !bk.is_zero() {
                        acc += BigRational::from_integer(binomial(m as u64 + 1, k as i64)) * bk;
                    }
                }
                -acc / BigRational::from_integer(BigInt::from(m + 1))
            };
            table.push(b);
        }
        table[n].clone()
    }

    /// `B_0, ..., B_n`.
    pub fn prefix(&self, n: usize) -> Vec<BigRational> {
        self.get(n);
        let table = self.table.read().expect("bernoulli cache poisoned");
        table[..=n].to_vec()
    }

    pub fn len(&self) -> usize {
        self.table.read().expect("bernoulli cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

pub fn bernoulli_number(n: usize) -> BigRational {
    BernoulliCache::global().get(n)
}

pub fn bernoulli_f64(n: usize) -> f64 {
    bernoulli_number(n).to_f64().expect("bernoulli number fits in f64")
}

/// `B_n(x) = sum_k C(n, k) B_k x^(n-k)`.
pub fn bernoulli_polynomial(n: usize, x: &BigRational) -> BigRational {
    let bs = BernoulliCache::global().prefix(n);
    // Horner in x over the coefficients C(n, k) B_k of x^(n-k).
    let mut acc = BigRational::zero();
    for (k, bk) in bs.iter().enumerate() {
        acc = acc * x + BigRational::from_integer(binomial(n as u64, k as i64)) * bk;
    }
    acc
}

/// Coefficients of `B_n(x)` in ascending powers of `x`.
pub fn bernoulli_polynomial_coeffs(n: usize) -> Vec<BigRational> {
    let bs = BernoulliCache::global().prefix(n);
    (0..=n)
        .map(|i| BigRational::from_integer(binomial(n as u64, (n - i) as i64)) * &bs[n - i])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    /// Akiyama–Tanigawa triangle; yields the `B_1 = +1/2` convention.
    fn akiyama_tanigawa(n: usize) -> BigRational {
        let mut a: Vec<BigRational> = Vec::with_capacity(n + 1);
        for m in 0..=n {
            a.push(rat(1, m as i64 + 1));
            for j in (1..=m).rev() {
                a[j - 1] = int(j as i64) * (&a[j - 1] - &a[j]);
            }
        }
        a[0].clone()
    }

    #[test]
    fn first_values() {
        assert_eq!(bernoulli_number(0), int(1));
        assert_eq!(bernoulli_number(1), rat(-1, 2));
        assert_eq!(bernoulli_number(2), rat(1, 6));
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
    }

    #[test]
    fn agrees_with_akiyama_tanigawa() {
        for n in 0..=40 {
            let mut at = akiyama_tanigawa(n);
            if n == 1 {
                at = -at;
            }
            assert_eq!(bernoulli_number(n), at, "n = {n}");
        }
    }

    #[test]
    fn recurrence_holds() {
        for n in 1..=30u64 {
            let mut acc = BigRational::zero();
            for k in 0..=n {
                acc += BigRational::from_integer(binomial(n + 1, k as i64)) * bernoulli_number(k as usize);
            }
            assert!(acc.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn odd_values_vanish() {
        for k in 1..=15 {
            assert!(bernoulli_number(2 * k + 1).is_zero());
        }
    }

    #[test]
    fn polynomial_examples() {
        assert_eq!(bernoulli_polynomial(1, &int(0)), rat(-1, 2));
        assert_eq!(bernoulli_polynomial(2, &int(1)), rat(1, 6));
        assert_eq!(bernoulli_polynomial(4, &rat(1, 2)), rat(7, 240));
        assert_eq!(bernoulli_polynomial(0, &rat(5, 3)), int(1));
    }

    #[test]
    fn polynomial_difference_identity() {
        let xs = [rat(0, 1), rat(1, 3), rat(-2, 5), rat(7, 2), rat(-11, 4)];
        for n in 1..=10usize {
            for x in &xs {
                let lhs = bernoulli_polynomial(n, &(x + int(1))) - bernoulli_polynomial(n, x);
                let rhs = int(n as i64) * num_traits::pow(x.clone(), n - 1);
                assert_eq!(lhs, rhs, "n = {n}, x = {x}");
            }
        }
    }

    #[test]
    fn coefficient_form_matches_horner() {
        let x = rat(-3, 7);
        for n in 0..=9 {
            let c = bernoulli_polynomial_coeffs(n);
            let mut v = BigRational::zero();
            for ci in c.iter().rev() {
                v = v * &x + ci;
            }
            assert_eq!(v, bernoulli_polynomial(n, &x));
        }
    }

    #[test]
    fn concurrent_reads() {
        let handles: Vec<_> = (0..4)
            .map(|i| std::thread::spawn(move || bernoulli_number(20 + 10 * i)))
            .collect();
        let got: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert_eq!(got[0], bernoulli_number(20));
        assert_eq!(got[3], bernoulli_number(50));
    }
}
