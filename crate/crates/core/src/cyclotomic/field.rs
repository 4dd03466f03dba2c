//! `Q(zeta_c)` as `Q[x] / Phi_c(x)`.
//!
//! Every `c`-th root of unity, primitive or not, lives in the one field
//! `Q(zeta_c)`, so sums over `xi^c = 1` never leave it.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, serde_vec_str, BigRational};
use crate::poly::QPoly;

/// The `c`-th cyclotomic polynomial, cached per order.
pub fn cyclotomic_polynomial(c: u32) -> Arc<QPoly> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<QPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = cache.read().expect("phi cache poisoned").get(&c) {
        return p.clone();
    }
    // x^c - 1 divided by Phi_d for every proper divisor d.
    let mut p = &QPoly::monomial(BigRational::one(), c as usize) - &QPoly::one();
    for d in (1..c).filter(|d| c % d == 0) {
        p = p.div_exact(&cyclotomic_polynomial(d)).expect("Phi_d divides x^c - 1");
    }
    let p = Arc::new(p);
    cache.write().expect("phi cache poisoned").insert(c, p.clone());
    p
}

pub fn euler_phi(c: u32) -> usize {
    (1..=c).filter(|&k| num_integer::gcd(k, c) == 1).count()
}

/// `xi = exp(2 pi i a / c)`, with `0 <= a < c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootOfUnity {
    c: u32,
    a: u32,
}

impl RootOfUnity {
    pub fn new(c: u32, a: i64) -> Result<Self> {
        if c < 2 {
            return Err(Error::InvalidOrder(c));
        }
        Ok(RootOfUnity {
            c,
            a: a.rem_euclid(c as i64) as u32,
        })
    }

    pub fn order(&self) -> u32 {
        self.c
    }

    pub fn exponent(&self) -> u32 {
        self.a
    }

    pub fn is_trivial(&self) -> bool {
        self.a == 0
    }

    pub fn inverse(&self) -> Self {
        RootOfUnity {
            c: self.c,
            a: (self.c - self.a) % self.c,
        }
    }

    pub fn to_element(&self) -> CycloElement {
        CycloElement::from_poly(self.c, &QPoly::monomial(BigRational::one(), self.a as usize))
    }

    /// Errors unless `xi != 1`.
    pub fn require_nontrivial(&self) -> Result<()> {
        if self.is_trivial() {
            Err(Error::TrivialRoot)
        } else {
            Ok(())
        }
    }

    /// The nontrivial `c`-th roots, `a = 1..c-1`.
    pub fn nontrivial(c: u32) -> Result<Vec<RootOfUnity>> {
        (1..c as i64).map(|a| RootOfUnity::new(c, a)).collect()
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zeta_{}^{}", self.c, self.a)
    }
}

/// Element of `Q(zeta_c)` in the power basis `1, zeta_c, ..., zeta_c^(phi(c)-1)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "CycloRepr", into = "CycloRepr")]
pub struct CycloElement {
    c: u32,
    coeffs: Vec<BigRational>,
}

#[derive(Serialize, Deserialize)]
struct CycloRepr {
    c: u32,
    #[serde(with = "serde_vec_str")]
    coeffs: Vec<BigRational>,
}

impl TryFrom<CycloRepr> for CycloElement {
    type Error = Error;
    fn try_from(r: CycloRepr) -> Result<Self> {
        if r.c < 1 {
            return Err(Error::InvalidOrder(r.c));
        }
        if r.coeffs.len() != euler_phi(r.c) {
            return Err(Error::Parse(format!(
                "expected {} coefficients for c = {}, got {}",
                euler_phi(r.c),
                r.c,
                r.coeffs.len()
            )));
        }
        Ok(CycloElement {
            c: r.c,
            coeffs: r.coeffs,
        })
    }
}

impl From<CycloElement> for CycloRepr {
    fn from(e: CycloElement) -> Self {
        CycloRepr {
            c: e.c,
            coeffs: e.coeffs,
        }
    }
}

/// Arithmetic selector for [`cyclo_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycloOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn cyclo_arith(x: &CycloElement, y: &CycloElement, op: CycloOp) -> Result<CycloElement> {
    if x.c != y.c {
        return Err(Error::OrderMismatch(x.c, y.c));
    }
    match op {
        CycloOp::Add => Ok(x + y),
        CycloOp::Sub => Ok(x - y),
        CycloOp::Mul => Ok(x * y),
        CycloOp::Div => x.div(y),
    }
}

impl CycloElement {
    /// Reduces `p(zeta_c)` to the canonical representative.
    pub fn from_poly(c: u32, p: &QPoly) -> Self {
        let phi = cyclotomic_polynomial(c);
        let n = phi.degree().expect("Phi_c is nonzero");
        let (_, r) = p.div_rem(&phi).expect("Phi_c is nonzero");
        let mut coeffs = r.coeffs().to_vec();
        coeffs.resize(n, BigRational::zero());
        CycloElement { c, coeffs }
    }

    pub fn from_rational(c: u32, q: BigRational) -> Self {
        CycloElement::from_poly(c, &QPoly::constant(q))
    }

    pub fn zero(c: u32) -> Self {
        CycloElement::from_rational(c, BigRational::zero())
    }

    pub fn one(c: u32) -> Self {
        CycloElement::from_rational(c, BigRational::one())
    }

    pub fn order(&self) -> u32 {
        self.c
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn as_poly(&self) -> QPoly {
        QPoly::new(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| self.coeffs.first().cloned().unwrap_or_else(BigRational::zero))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycloElement {
            c: self.c,
            coeffs: self.coeffs.iter().map(|x| x * q).collect(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi = cyclotomic_polynomial(self.c);
        let inv = self.as_poly().inverse_mod(&phi)?;
        Ok(CycloElement::from_poly(self.c, &inv))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if self.c != o.c {
            return Err(Error::OrderMismatch(self.c, o.c));
        }
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(CycloElement::one(self.c), |acc, _| &acc * self)
    }

    /// Image under the automorphism `zeta_c -> zeta_c^k`, `gcd(k, c) = 1`.
    pub fn galois(&self, k: u32) -> Result<Self> {
        if num_integer::gcd(k, self.c) != 1 {
            return Err(Error::Domain(format!("{k} is not a unit modulo {}", self.c)));
        }
        let mut out = vec![BigRational::zero(); k as usize * self.coeffs.len().max(1)];
        for (i, q) in self.coeffs.iter().enumerate() {
            out[i * k as usize] += q;
        }
        Ok(CycloElement::from_poly(self.c, &QPoly::new(out)))
    }

    fn check(&self, o: &Self) {
        assert_eq!(
            self.c, o.c,
            "cyclotomic order mismatch; use cyclo_arith for a checked version"
        );
    }
}

impl Add for &CycloElement {
    type Output = CycloElement;
    fn add(self, o: &CycloElement) -> CycloElement {
        self.check(o);
        CycloElement {
            c: self.c,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CycloElement {
    type Output = CycloElement;
    fn sub(self, o: &CycloElement) -> CycloElement {
        self.check(o);
        CycloElement {
            c: self.c,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &CycloElement {
    type Output = CycloElement;
    fn mul(self, o: &CycloElement) -> CycloElement {
        self.check(o);
        CycloElement::from_poly(self.c, &(&self.as_poly() * &o.as_poly()))
    }
}

impl Neg for &CycloElement {
    type Output = CycloElement;
    fn neg(self) -> CycloElement {
        CycloElement {
            c: self.c,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Add for CycloElement {
    type Output = CycloElement;
    fn add(self, o: CycloElement) -> CycloElement {
        &self + &o
    }
}

impl Mul for CycloElement {
    type Output = CycloElement;
    fn mul(self, o: CycloElement) -> CycloElement {
        &self * &o
    }
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(i, q)| match i {
                0 => format_rational(q),
                1 => format!("({})z", format_rational(q)),
                _ => format!("({})z^{i}", format_rational(q)),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), QPoly::from_i64(&[-1, 1]));
        assert_eq!(*cyclotomic_polynomial(2), QPoly::from_i64(&[1, 1]));
        assert_eq!(*cyclotomic_polynomial(3), QPoly::from_i64(&[1, 1, 1]));
        assert_eq!(*cyclotomic_polynomial(4), QPoly::from_i64(&[1, 0, 1]));
        assert_eq!(*cyclotomic_polynomial(6), QPoly::from_i64(&[1, -1, 1]));
        assert_eq!(*cyclotomic_polynomial(12), QPoly::from_i64(&[1, 0, -1, 0, 1]));
        for c in 1..=30 {
            assert_eq!(cyclotomic_polynomial(c).degree(), Some(euler_phi(c)));
        }
    }

    #[test]
    fn i_squared() {
        let i = RootOfUnity::new(4, 1).unwrap().to_element();
        assert_eq!(&i * &i, CycloElement::from_rational(4, int(-1)));
    }

    #[test]
    fn inverse_of_one_minus_zeta3() {
        let z = RootOfUnity::new(3, 1).unwrap().to_element();
        let one_minus = &CycloElement::one(3) - &z;
        let inv = one_minus.inv().unwrap();
        let expected = (&CycloElement::from_rational(3, int(2)) + &z).scale(&rat(1, 3));
        assert_eq!(inv, expected);
        assert_eq!(&one_minus * &inv, CycloElement::one(3));
    }

    #[test]
    fn zeta2_is_minus_one() {
        let z = RootOfUnity::new(2, 1).unwrap().to_element();
        assert!((&CycloElement::one(2) + &z).is_zero());
    }

    #[test]
    fn errors() {
        let a = CycloElement::one(3);
        let b = CycloElement::one(4);
        assert_eq!(cyclo_arith(&a, &b, CycloOp::Add), Err(Error::OrderMismatch(3, 4)));
        assert_eq!(
            cyclo_arith(&a, &CycloElement::zero(3), CycloOp::Div),
            Err(Error::DivisionByZero)
        );
        assert!(RootOfUnity::new(1, 0).is_err());
    }

    #[test]
    fn non_primitive_roots_reduce() {
        // zeta_6^3 = -1, zeta_6^2 is a primitive cube root.
        let m1 = RootOfUnity::new(6, 3).unwrap().to_element();
        assert_eq!(m1, CycloElement::from_rational(6, int(-1)));
        let w = RootOfUnity::new(6, 2).unwrap().to_element();
        let s = &(&CycloElement::one(6) + &w) + &w.pow(2);
        assert!(s.is_zero());
    }

    #[test]
    fn json_shape() {
        let z = RootOfUnity::new(3, 2).unwrap().to_element();
        let j = serde_json::to_string(&z).unwrap();
        assert_eq!(j, r#"{"c":3,"coeffs":["-1","-1"]}"#);
        let back: CycloElement = serde_json::from_str(&j).unwrap();
        assert_eq!(back, z);
        assert!(serde_json::from_str::<CycloElement>(r#"{"c":3,"coeffs":["1"]}"#).is_err());
    }

    #[test]
    fn galois_conjugation() {
        let z = RootOfUnity::new(5, 1).unwrap().to_element();
        assert_eq!(z.galois(2).unwrap(), RootOfUnity::new(5, 2).unwrap().to_element());
        assert!(z.galois(5).is_err());
        let x = &z + &CycloElement::from_rational(5, rat(3, 7));
        let trace = (1..5u32).fold(CycloElement::zero(5), |acc, k| &acc + &x.galois(k).unwrap());
        assert_eq!(trace.as_rational(), Some(rat(-1, 1) + rat(12, 7)));
    }
}
