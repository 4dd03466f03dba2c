//! Twisted Bernoulli numbers `B_n(xi)`, defined by
//! `1 / (1 - xi e^t) = sum_n B_n(xi) t^n / n!` for `xi != 1`, together with
//! Frobenius–Euler numbers and exact negative-order polylogarithms.

use num_bigint::BigInt;
use num_traits::One;

use super::field::{CycloElement, RootOfUnity};
use crate::error::{Error, Result};
use crate::exact::{bernoulli_number, binomial, BigRational};
use crate::poly::QPoly;

fn binom_q(n: usize, k: usize) -> BigRational {
    BigRational::from_integer(binomial(n as u64, k as i64))
}

/// `B_0(xi), ..., B_n(xi)` from `(1 - xi e^t) H(t; xi) = 1`:
/// `B_0 = 1/(1 - xi)`, `B_n = xi/(1 - xi) * sum_{k<n} C(n,k) B_k`.
pub fn twisted_bernoulli_table(n: usize, xi: &RootOfUnity) -> Result<Vec<CycloElement>> {
    xi.require_nontrivial()?;
    let c = xi.order();
    let z = xi.to_element();
    let inv = (&CycloElement::one(c) - &z).inv()?;
    let ratio = &z * &inv;
    let mut out = Vec::with_capacity(n + 1);
    out.push(inv);
    for m in 1..=n {
        let mut acc = CycloElement::zero(c);
        for (k, bk) in out.iter().enumerate() {
            acc = &acc + &bk.scale(&binom_q(m, k));
        }
        out.push(&ratio * &acc);
    }
    Ok(out)
}

pub fn twisted_bernoulli(n: usize, xi: &RootOfUnity) -> Result<CycloElement> {
    Ok(twisted_bernoulli_table(n, xi)?.pop().expect("table has n + 1 entries"))
}

/// Frobenius–Euler numbers: `(1 - l)/(e^t - l) = sum H_n(l) t^n / n!`,
/// `H_0 = 1`, `H_n = sum_{k<n} C(n,k) H_k / (l - 1)`.
pub fn frobenius_euler_table(n: usize, lambda: &CycloElement) -> Result<Vec<CycloElement>> {
    let c = lambda.order();
    let denom = lambda - &CycloElement::one(c);
    if denom.is_zero() {
        return Err(Error::Domain("Frobenius–Euler numbers need lambda != 1".into()));
    }
    let inv = denom.inv()?;
    let mut out = vec![CycloElement::one(c)];
    for m in 1..=n {
        let mut acc = CycloElement::zero(c);
        for (k, hk) in out.iter().enumerate() {
            acc = &acc + &hk.scale(&binom_q(m, k));
        }
        out.push(&acc * &inv);
    }
    Ok(out)
}

pub fn frobenius_euler(n: usize, lambda: &CycloElement) -> Result<CycloElement> {
    Ok(frobenius_euler_table(n, lambda)?
        .pop()
        .expect("table has n + 1 entries"))
}

/// `Li_{-k}(z) = (z d/dz)^k z/(1-z)`, as a numerator over `(1 - z)^(k+1)`.
pub fn negative_polylog_rational(k: usize) -> (QPoly, u32) {
    let z = QPoly::var();
    let one_minus_z = &QPoly::one() - &z;
    let mut num = z.clone();
    let mut e = 1u32;
    for _ in 0..k {
        // z d/dz [P/(1-z)^e] = z (P'(1-z) + e P) / (1-z)^(e+1)
        let e_q = BigRational::from_integer(BigInt::from(e));
        let inner = &(&num.derivative() * &one_minus_z) + &num.scale(&e_q);
        num = &z * &inner;
        e += 1;
    }
    (num, e)
}

/// `Li_{-k}(xi)`, the continued value of `sum_{m>=1} xi^m m^k`.
pub fn negative_polylog(k: usize, xi: &RootOfUnity) -> Result<CycloElement> {
    xi.require_nontrivial()?;
    let c = xi.order();
    let z = xi.to_element();
    let (num, e) = negative_polylog_rational(k);
    let top = num.eval_with(&z, |q| CycloElement::from_rational(c, q.clone()));
    let bottom = (&CycloElement::one(c) - &z).pow(e);
    top.div(&bottom)
}

/// `sum_{xi^c = 1, xi != 1} B_n(xi)`, which must be rational.
pub fn root_sum_twisted(n: usize, c: u32) -> Result<BigRational> {
    let mut acc = CycloElement::zero(c);
    for xi in RootOfUnity::nontrivial(c)? {
        acc = &acc + &twisted_bernoulli(n, &xi)?;
    }
    acc.as_rational()
        .ok_or_else(|| Error::NotRational(format!("n = {n}, c = {c}: {acc}")))
}

/// `(1 - c^(n+1)) B_{n+1} / (n+1)`.
pub fn root_sum_closed_form(n: usize, c: u32) -> BigRational {
    let cp = num_traits::pow(BigInt::from(c), n + 1);
    BigRational::from_integer(BigInt::one() - cp) * bernoulli_number(n + 1)
        / BigRational::from_integer(BigInt::from(n + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use num_traits::Zero;

    fn root(c: u32, a: i64) -> RootOfUnity {
        RootOfUnity::new(c, a).unwrap()
    }

    fn q(c: u32, x: BigRational) -> CycloElement {
        CycloElement::from_rational(c, x)
    }

    /// Closed forms `xi P_n(xi) / (1 - xi)^(n+1)` for n = 1..4, and n = 0.
    fn closed_form(n: usize, xi: &RootOfUnity) -> CycloElement {
        let c = xi.order();
        let z = xi.to_element();
        let one = CycloElement::one(c);
        let num = match n {
            0 => return (&one - &z).inv().unwrap(),
            1 => z.clone(),
            2 => &z * &(&z + &one),
            3 => &z * &(&(&z.pow(2) + &z.scale(&int(4))) + &one),
            4 => &z * &(&(&(&z.pow(3) + &z.pow(2).scale(&int(11))) + &z.scale(&int(11))) + &one),
            _ => unreachable!(),
        };
        num.div(&(&one - &z).pow(n as u32 + 1)).unwrap()
    }

    #[test]
    fn matches_closed_forms() {
        for c in [2u32, 3, 4, 6] {
            for xi in RootOfUnity::nontrivial(c).unwrap() {
                let table = twisted_bernoulli_table(4, &xi).unwrap();
                for (n, b) in table.iter().enumerate() {
                    assert_eq!(*b, closed_form(n, &xi), "c={c} xi={xi} n={n}");
                }
            }
        }
    }

    #[test]
    fn values_at_minus_one() {
        let m1 = root(2, 1);
        assert_eq!(twisted_bernoulli(0, &m1).unwrap(), q(2, rat(1, 2)));
        assert_eq!(twisted_bernoulli(2, &m1).unwrap(), q(2, int(0)));
        assert_eq!(twisted_bernoulli(1, &m1).unwrap(), q(2, rat(-1, 4)));
    }

    #[test]
    fn trivial_root_rejected() {
        assert_eq!(twisted_bernoulli(3, &root(5, 0)), Err(Error::TrivialRoot));
        assert_eq!(negative_polylog(3, &root(5, 5)), Err(Error::TrivialRoot));
        assert!(frobenius_euler(2, &CycloElement::one(3)).is_err());
    }

    #[test]
    fn frobenius_euler_examples() {
        let lam = q(3, int(7));
        assert_eq!(frobenius_euler(0, &lam).unwrap(), CycloElement::one(3));
        assert_eq!(frobenius_euler(1, &q(2, int(-1))).unwrap(), q(2, rat(-1, 2)));
    }

    /// Series oracle: coefficients of (1 - l)/(e^t - l) by power-series
    /// division over Q, for rational l.
    #[test]
    fn frobenius_euler_against_series_division() {
        let lam = rat(-3, 2);
        let n = 8;
        // e^t - l as a list of coefficients of t^k.
        let mut fact = vec![int(1)];
        for k in 1..=n {
            fact.push(&fact[k - 1] * int(k as i64));
        }
        let mut den: Vec<BigRational> = (0..=n).map(|k| int(1) / &fact[k]).collect();
        den[0] -= &lam;
        let mut quo = vec![BigRational::zero(); n + 1];
        let num0 = int(1) - &lam;
        for k in 0..=n {
            let mut acc = if k == 0 { num0.clone() } else { BigRational::zero() };
            for j in 0..k {
                acc -= &quo[j] * &den[k - j];
            }
            quo[k] = acc / &den[0];
        }
        let table = frobenius_euler_table(n, &q(2, lam)).unwrap();
        for k in 0..=n {
            assert_eq!(table[k], q(2, &quo[k] * &fact[k]), "k = {k}");
        }
    }

    #[test]
    fn twisted_is_frobenius_euler_of_inverse() {
        for c in [2u32, 3, 4] {
            for xi in RootOfUnity::nontrivial(c).unwrap() {
                let one = CycloElement::one(c);
                let z = xi.to_element();
                let h = frobenius_euler_table(8, &xi.inverse().to_element()).unwrap();
                let b = twisted_bernoulli_table(8, &xi).unwrap();
                let scale = (&one - &z).inv().unwrap();
                for n in 0..=8 {
                    assert_eq!(b[n], &scale * &h[n], "c={c} xi={xi} n={n}");
                }
            }
        }
    }

    #[test]
    fn negative_polylog_examples() {
        assert_eq!(negative_polylog(0, &root(2, 1)).unwrap(), q(2, rat(-1, 2)));
        let xi = root(5, 2);
        assert_eq!(negative_polylog(1, &xi).unwrap(), closed_form(1, &xi));
        // z(1+z)/(1-z)^3 at z = i.
        let i = root(4, 1);
        let z = i.to_element();
        let one = CycloElement::one(4);
        let expected = (&z * &(&one + &z)).div(&(&one - &z).pow(3)).unwrap();
        assert_eq!(negative_polylog(2, &i).unwrap(), expected);
    }

    #[test]
    fn negative_polylog_is_signed_twisted_bernoulli_of_inverse() {
        for c in [2u32, 3, 4] {
            for xi in RootOfUnity::nontrivial(c).unwrap() {
                let b = twisted_bernoulli_table(8, &xi.inverse()).unwrap();
                for k in 0..=8 {
                    let sign = if (1 + k) % 2 == 0 { int(1) } else { int(-1) };
                    assert_eq!(negative_polylog(k, &xi).unwrap(), b[k].scale(&sign));
                }
            }
        }
    }

    #[test]
    fn root_sums() {
        assert_eq!(root_sum_twisted(0, 2).unwrap(), rat(1, 2));
        assert_eq!(root_sum_twisted(1, 2).unwrap(), rat(-1, 4));
        for c in 2..=6 {
            for n in 0..=12 {
                assert_eq!(
                    root_sum_twisted(n, c).unwrap(),
                    root_sum_closed_form(n, c),
                    "n={n} c={c}"
                );
            }
        }
    }

    #[test]
    fn galois_orbits_permute_values() {
        for c in [5u32, 7, 8, 9, 12] {
            let xi = root(c, 1);
            let base = twisted_bernoulli_table(6, &xi).unwrap();
            let units: Vec<u32> = (1..c).filter(|k| num_integer::gcd(*k, c) == 1).collect();
            for &k in &units {
                let image = twisted_bernoulli_table(6, &root(c, k as i64)).unwrap();
                for n in 0..=6 {
                    assert_eq!(base[n].galois(k).unwrap(), image[n]);
                }
            }
            for n in 0..=6 {
                let trace = units.iter().fold(CycloElement::zero(c), |acc, &k| {
                    &acc + &twisted_bernoulli(n, &root(c, k as i64)).unwrap()
                });
                assert!(trace.is_rational());
            }
        }
    }
}
