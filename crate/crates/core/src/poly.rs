//! Dense univariate polynomials over `Q`.
//!
//! Used for the cyclotomic modulus `Phi_c` and its quotient ring, and as
//! [`PolyInC`], the symbolic parameter `c` of the difference generating
//! function so its `c -> 1` limit is an exact division.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, BigRational};

/// Coefficients in ascending order; never has a trailing zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

/// Polynomial in the symbol `c`.
pub type PolyInC = QPoly;

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn constant(q: BigRational) -> Self {
        QPoly::new(vec![q])
    }

    pub fn one() -> Self {
        QPoly::constant(BigRational::one())
    }

    /// `x`.
    pub fn var() -> Self {
        QPoly::new(vec![BigRational::zero(), BigRational::one()])
    }

    /// `q * x^k`.
    pub fn monomial(q: BigRational, k: usize) -> Self {
        let mut c = vec![BigRational::zero(); k + 1];
        c[k] = q;
        QPoly::new(c)
    }

    pub fn from_i64(cs: &[i64]) -> Self {
        QPoly::new(cs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return QPoly::zero();
        }
        QPoly::new(self.coeffs.iter().map(|c| c * q).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Generic evaluation, e.g. at a cyclotomic element.
    pub fn eval_with<T, F>(&self, x: &T, lift: F) -> T
    where
        T: Clone + Add<Output = T> + Mul<Output = T>,
        F: Fn(&BigRational) -> T,
    {
        let mut it = self.coeffs.iter().rev();
        let Some(first) = it.next() else {
            return lift(&BigRational::zero());
        };
        it.fold(lift(first), |acc, c| acc * x.clone() + lift(c))
    }

    pub fn derivative(&self) -> Self {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer((i as i64).into()))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(QPoly::one(), |acc, _| &acc * self)
    }

    /// Euclidean division, `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &QPoly) -> Result<(QPoly, QPoly)> {
        let dl = d.leading().ok_or(Error::DivisionByZero)?.clone();
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((QPoly::zero(), self.clone()));
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let f = &r[i + dd] / &dl;
            if !f.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &f * dc;
                }
            }
            q[i] = f;
        }
        r.truncate(dd);
        Ok((QPoly::new(q), QPoly::new(r)))
    }

    /// Division that must leave no remainder.
    pub fn div_exact(&self, d: &QPoly) -> Result<QPoly> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Domain(format!("{d} does not divide {self}")));
        }
        Ok(q)
    }

    /// `s` with `s * self = 1 mod m`, via the extended Euclidean algorithm.
    pub fn inverse_mod(&self, m: &QPoly) -> Result<QPoly> {
        let (mut r0, mut r1) = (m.clone(), self.div_rem(m)?.1);
        let (mut s0, mut s1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = &s0 - &(&q * &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 = gcd; invertible iff it is a nonzero constant.
        if r0.degree() != Some(0) {
            return Err(Error::DivisionByZero);
        }
        let inv = BigRational::one() / &r0.coeffs[0];
        Ok(s0.scale(&inv).div_rem(m)?.1)
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", format_rational(c))?,
                1 => write!(f, "({})x", format_rational(c))?,
                _ => write!(f, "({})x^{}", format_rational(c), i)?,
            }
        }
        Ok(())
    }
}
