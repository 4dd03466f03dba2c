//! Truncated multivariate power series in `t_1, ..., t_r`.
//!
//! Truncation is by total degree. Coefficients are stored sparsely; an
//! absent exponent means a zero coefficient. The scalar ring is abstract
//! ([`Scalar`]) so the same engine carries rationals, cyclotomic elements
//! and polynomials in the symbol `c`.
//!
//! All the generating functions built here are products of factors of the
//! form `f(gamma_j (t_j + ... + t_r))`, which is what [`compose_linear`] and
//! the `build_*` functions assemble.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::cyclotomic::{twisted_bernoulli_table, CycloElement, RootOfUnity};
use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, pow as qpow};
use crate::exact::{bernoulli_number, factorial, multinomial, BigRational};
use crate::poly::{PolyInC, QPoly};

/// Coefficient ring of a [`TruncatedSeries`].
pub trait Scalar: Clone + PartialEq + Debug {
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, q: &BigRational) -> Self;
    fn is_zero(&self) -> bool;
    /// Whether `self` and `o` belong to the same concrete ring.
    fn same_ring(&self, _o: &Self) -> bool {
        true
    }
    fn to_json(&self) -> Value;
}

impl Scalar for BigRational {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, q: &BigRational) -> Self {
        self * q
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }
}

impl Scalar for CycloElement {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, q: &BigRational) -> Self {
        CycloElement::scale(self, q)
    }
    fn is_zero(&self) -> bool {
        CycloElement::is_zero(self)
    }
    fn same_ring(&self, o: &Self) -> bool {
        self.order() == o.order()
    }
    fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("cyclotomic element serializes")
    }
}

impl Scalar for QPoly {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, q: &BigRational) -> Self {
        QPoly::scale(self, q)
    }
    fn is_zero(&self) -> bool {
        QPoly::is_zero(self)
    }
    fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs()
                .iter()
                .map(|q| Value::String(format_rational(q)))
                .collect(),
        )
    }
}

pub type Exponent = Vec<u32>;

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<S> {
    nvars: usize,
    max_degree: u32,
    coeffs: BTreeMap<Exponent, S>,
}

impl<S: Scalar> TruncatedSeries<S> {
    pub fn zero(nvars: usize, max_degree: u32) -> Self {
        TruncatedSeries {
            nvars,
            max_degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, max_degree: u32, s: S) -> Self {
        let mut out = Self::zero(nvars, max_degree);
        out.insert(vec![0; nvars], s);
        out
    }

    /// Builds a series from `(exponent, coefficient)` pairs, summing repeats
    /// and dropping everything above the degree bound.
    pub fn from_terms<I>(nvars: usize, max_degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, S)>,
    {
        let mut out = Self::zero(nvars, max_degree);
        for (e, s) in terms {
            if e.len() != nvars {
                return Err(Error::ShapeMismatch(format!(
                    "exponent {e:?} has {} entries, series has {nvars} variables",
                    e.len()
                )));
            }
            out.accumulate(e, s);
        }
        Ok(out)
    }

    fn insert(&mut self, e: Exponent, s: S) {
        if e.iter().sum::<u32>() <= self.max_degree && !s.is_zero() {
            self.coeffs.insert(e, s);
        }
    }

    fn accumulate(&mut self, e: Exponent, s: S) {
        if e.iter().sum::<u32>() > self.max_degree {
            return;
        }
        match self.coeffs.remove(&e) {
            Some(old) => {
                let sum = old.add(&s);
                self.insert(e, sum);
            }
            None => self.insert(e, s),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn coeff(&self, e: &[u32]) -> Option<&S> {
        self.coeffs.get(e)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &S)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_shape(&self, o: &Self) -> Result<()> {
        if self.nvars != o.nvars || self.max_degree != o.max_degree {
            return Err(Error::ShapeMismatch(format!(
                "({} vars, degree {}) vs ({} vars, degree {})",
                self.nvars, self.max_degree, o.nvars, o.max_degree
            )));
        }
        let ring = self.coeffs.values().next();
        if let (Some(a), Some(b)) = (ring, o.coeffs.values().next()) {
            if !a.same_ring(b) {
                return Err(Error::ShapeMismatch("scalar rings differ".into()));
            }
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_shape(o)?;
        let mut out = self.clone();
        for (e, s) in &o.coeffs {
            out.accumulate(e.clone(), s.clone());
        }
        Ok(out)
    }

    /// Product truncated at the common degree bound.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_shape(o)?;
        let mut out = Self::zero(self.nvars, self.max_degree);
        for (ea, sa) in &self.coeffs {
            let da: u32 = ea.iter().sum();
            for (eb, sb) in &o.coeffs {
                if da + eb.iter().sum::<u32>() > self.max_degree {
                    continue;
                }
                let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.accumulate(e, sa.mul(sb));
            }
        }
        Ok(out)
    }

    /// Drops every term with some exponent above `cap`.
    pub fn restrict_box(mut self, cap: u32) -> Self {
        self.coeffs.retain(|e, _| e.iter().all(|&x| x <= cap));
        self
    }

    /// Product that also discards terms with any exponent above `cap`.
    /// Much cheaper than [`Self::mul`] when only a box of coefficients is needed.
    pub fn mul_boxed(&self, o: &Self, cap: u32) -> Result<Self> {
        self.check_shape(o)?;
        let mut out = Self::zero(self.nvars, self.max_degree);
        for (ea, sa) in &self.coeffs {
            let da: u32 = ea.iter().sum();
            for (eb, sb) in &o.coeffs {
                if da + eb.iter().sum::<u32>() > self.max_degree {
                    continue;
                }
                let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                if e.iter().any(|&x| x > cap) {
                    continue;
                }
                out.accumulate(e, sa.mul(sb));
            }
        }
        Ok(out)
    }

    pub fn map<T: Scalar, F: Fn(&S) -> T>(&self, f: F) -> TruncatedSeries<T> {
        let mut out = TruncatedSeries::zero(self.nvars, self.max_degree);
        for (e, s) in &self.coeffs {
            out.insert(e.clone(), f(s));
        }
        out
    }

    pub fn try_map<T: Scalar, F: Fn(&S) -> Result<T>>(&self, f: F) -> Result<TruncatedSeries<T>> {
        let mut out = TruncatedSeries::zero(self.nvars, self.max_degree);
        for (e, s) in &self.coeffs {
            out.insert(e.clone(), f(s)?);
        }
        Ok(out)
    }

    /// Debug dump: `[{"exponents": [..], "coeff": ..}, ...]`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|(e, s)| json!({ "exponents": e, "coeff": s.to_json() }))
                .collect(),
        )
    }
}

/// All exponent vectors of total degree `n` supported on `support`.
fn compositions_on(nvars: usize, support: &[usize], n: u32) -> Vec<Exponent> {
    fn rec(support: &[usize], left: u32, cur: &mut Exponent, out: &mut Vec<Exponent>) {
        match support {
            [] => {
                if left == 0 {
                    out.push(cur.clone());
                }
            }
            [last] => {
                cur[*last] = left;
                out.push(cur.clone());
                cur[*last] = 0;
            }
            [first, rest @ ..] => {
                for k in 0..=left {
                    cur[*first] = k;
                    rec(rest, left - k, cur, out);
                }
                cur[*first] = 0;
            }
        }
    }
    let mut out = Vec::new();
    rec(support, n, &mut vec![0; nvars], &mut out);
    out
}

/// `f(sum_k w_k t_k)` truncated at total degree `max_degree`, where
/// `f = sum_n f[n] y^n`. Terms beyond `f.len()` are treated as zero.
pub fn compose_linear<S: Scalar>(f: &[S], weights: &[BigRational], max_degree: u32) -> TruncatedSeries<S> {
    let nvars = weights.len();
    let support: Vec<usize> = (0..nvars).filter(|&k| !Zero::is_zero(&weights[k])).collect();
    let mut out = TruncatedSeries::zero(nvars, max_degree);
    for (n, fn_) in f.iter().enumerate().take(max_degree as usize + 1) {
        if fn_.is_zero() {
            continue;
        }
        for e in compositions_on(nvars, &support, n as u32) {
            let mut w = BigRational::from_integer(multinomial(&e));
            for (k, &ek) in e.iter().enumerate() {
                if ek > 0 {
                    w *= qpow(&weights[k], ek);
                }
            }
            out.accumulate(e, fn_.scale(&w));
        }
    }
    out
}

/// Weights of the linear form `gamma_j (t_j + ... + t_r)`, `j` 0-based.
fn tail_weights(r: usize, j: usize, gamma: &BigRational) -> Vec<BigRational> {
    (0..r)
        .map(|k| if k >= j { gamma.clone() } else { BigRational::zero() })
        .collect()
}

fn product_of_factors<S: Scalar>(factors: Vec<TruncatedSeries<S>>) -> Result<TruncatedSeries<S>> {
    let mut it = factors.into_iter();
    let first = it.next().ok_or_else(|| Error::ShapeMismatch("need r >= 1".into()))?;
    it.try_fold(first, |acc, f| acc.mul(&f))
}

fn inv_factorial(n: usize) -> BigRational {
    BigRational::new(BigInt::one(), factorial(n as u64))
}

/// `prod_j 1 / (1 - xi_j exp(gamma_j (t_j + ... + t_r)))`.
///
/// The coefficient of `prod t_j^{n_j}` times `prod n_j!` is the twisted
/// multiple Bernoulli number `B((n_j); (xi_j); (gamma_j))`.
pub fn build_h_r(
    xis: &[RootOfUnity],
    gammas: &[BigRational],
    max_degree: u32,
) -> Result<TruncatedSeries<CycloElement>> {
    let r = xis.len();
    if r == 0 || gammas.len() != r {
        return Err(Error::ShapeMismatch(format!(
            "{} roots vs {} weights",
            xis.len(),
            gammas.len()
        )));
    }
    let c = xis[0].order();
    if let Some(x) = xis.iter().find(|x| x.order() != c) {
        return Err(Error::OrderMismatch(c, x.order()));
    }
    let mut factors = Vec::with_capacity(r);
    for (j, (xi, gamma)) in xis.iter().zip(gammas).enumerate() {
        let table = twisted_bernoulli_table(max_degree as usize, xi)?;
        let f: Vec<CycloElement> = table
            .iter()
            .enumerate()
            .map(|(n, b)| b.scale(&inv_factorial(n)))
            .collect();
        factors.push(compose_linear(&f, &tail_weights(r, j, gamma), max_degree));
    }
    product_of_factors(factors)
}

/// `prod_j sum_{m>=1} (1 - c^m) B_m y_j^{m-1} / m!` with
/// `y_j = gamma_j (t_j + ... + t_r)` and `c` symbolic.
pub fn build_tilde_h(gammas: &[BigRational], max_degree: u32) -> Result<TruncatedSeries<PolyInC>> {
    let r = gammas.len();
    let f: Vec<PolyInC> = (0..=max_degree as usize)
        .map(|n| {
            let m = n + 1;
            let one_minus_cm = &QPoly::one() - &QPoly::monomial(BigRational::one(), m);
            one_minus_cm.scale(&(bernoulli_number(m) * inv_factorial(m)))
        })
        .collect();
    let factors = (0..r)
        .map(|j| compose_linear(&f, &tail_weights(r, j, &gammas[j]), max_degree))
        .collect();
    product_of_factors(factors)
}

/// `prod_j E(gamma_j (t_j + ... + t_r))`, `E(y) = sum_n B_{n+1} y^n / n!`.
pub fn build_e_product(gammas: &[BigRational], max_degree: u32) -> Result<TruncatedSeries<BigRational>> {
    let r = gammas.len();
    let f: Vec<BigRational> = (0..=max_degree as usize)
        .map(|n| bernoulli_number(n + 1) * inv_factorial(n))
        .collect();
    let factors = (0..r)
        .map(|j| compose_linear(&f, &tail_weights(r, j, &gammas[j]), max_degree))
        .collect();
    product_of_factors(factors)
}

/// `(-1)^r / (c - 1)^r * tilde_h` evaluated at `c = 1`, by exact division.
pub fn tilde_h_limit(tilde: &TruncatedSeries<PolyInC>) -> Result<TruncatedSeries<BigRational>> {
    let r = tilde.nvars() as u32;
    let divisor = QPoly::from_i64(&[-1, 1]).pow(r);
    let sign = if r % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    };
    tilde.try_map(|p| Ok(p.div_exact(&divisor)?.eval(&BigRational::one()) * &sign))
}

/// Substitutes an integer for the symbol `c`.
pub fn tilde_h_at(tilde: &TruncatedSeries<PolyInC>, c: i64) -> TruncatedSeries<BigRational> {
    let cq = BigRational::from_integer(BigInt::from(c));
    tilde.map(|p| p.eval(&cq))
}
