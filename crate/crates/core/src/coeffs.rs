//! The desingularizing coefficients.
//!
//! `G(u, v) = prod_j (1 - (u_j v_j + ... + u_r v_r)(v_j^-1 - v_{j-1}^-1))`
//! (the `j = 1` factor has no `v_0` term) expands into a finite sum
//! `sum a_{l,m} prod u_j^{l_j} v_j^{m_j}`, and
//!
//! `zeta^des_r(s) = sum a_{l,m} prod (s_j)_{l_j} zeta_r(s + m; gamma)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::combinatorics::pochhammer;

type Key = (Vec<u32>, Vec<i32>);

/// Laurent polynomial in `u_1..u_r` (non-negative powers) and `v_1..v_r`
/// (any integer powers) with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UVLaurentPoly {
    r: usize,
    terms: BTreeMap<Key, BigInt>,
}

impl UVLaurentPoly {
    pub fn zero(r: usize) -> Self {
        UVLaurentPoly {
            r,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(r: usize) -> Self {
        Self::monomial(r, BigInt::one(), vec![0; r], vec![0; r])
    }

    pub fn monomial(r: usize, a: BigInt, l: Vec<u32>, m: Vec<i32>) -> Self {
        let mut p = Self::zero(r);
        p.add_term(l, m, a);
        p
    }

    /// `u_k v_k`, 0-based `k`.
    fn uv(r: usize, k: usize) -> Self {
        let mut l = vec![0; r];
        let mut m = vec![0; r];
        l[k] = 1;
        m[k] = 1;
        Self::monomial(r, BigInt::one(), l, m)
    }

    /// `a * v_k^e`, 0-based `k`.
    fn v_pow(r: usize, k: usize, e: i32, a: i64) -> Self {
        let mut m = vec![0; r];
        m[k] = e;
        Self::monomial(r, BigInt::from(a), vec![0; r], m)
    }

    fn add_term(&mut self, l: Vec<u32>, m: Vec<i32>, a: BigInt) {
        let key = (l, m);
        let sum = self.terms.remove(&key).unwrap_or_default() + a;
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Vec<i32>, &BigInt)> {
        self.terms.iter().map(|((l, m), a)| (l, m, a))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for ((l, m), a) in &o.terms {
            out.add_term(l.clone(), m.clone(), a.clone());
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.r);
        for ((la, ma), a) in &self.terms {
            for ((lb, mb), b) in &o.terms {
                let l = la.iter().zip(lb).map(|(x, y)| x + y).collect();
                let m = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                out.add_term(l, m, a * b);
            }
        }
        out
    }

    pub fn to_table(&self) -> CoeffTable {
        let mut terms: Vec<CoeffTerm> = self
            .terms
            .iter()
            .map(|((l, m), a)| CoeffTerm {
                a: a.clone(),
                l: l.clone(),
                m: m.clone(),
            })
            .collect();
        terms.sort_by(|x, y| (&x.m, &x.l).cmp(&(&y.m, &y.l)));
        CoeffTable { r: self.r, terms }
    }
}

/// One `a_{l,m}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffTerm {
    #[serde(with = "int_number")]
    pub a: BigInt,
    pub l: Vec<u32>,
    pub m: Vec<i32>,
}

/// Nonzero `a_{l,m}`, one entry per monomial, sorted by `(m, l)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffTable {
    pub r: usize,
    pub terms: Vec<CoeffTerm>,
}

impl CoeffTable {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, l: &[u32], m: &[i32]) -> Option<&BigInt> {
        self.terms.iter().find(|t| t.l == l && t.m == m).map(|t| &t.a)
    }
}

/// JSON integers when they fit in `i64`, decimal strings otherwise.
mod int_number {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(a: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match a.to_i64() {
            Some(x) => s.serialize_i64(x),
            None => s.serialize_str(&a.to_string()),
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Int(i64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Int(x) => Ok(BigInt::from(x)),
            Repr::Str(s) => s.parse().map_err(D::Error::custom),
        }
    }
}

/// Multiplies out the `r` factors of `G`.
pub fn expand_g_poly(r: usize) -> UVLaurentPoly {
    let mut acc = UVLaurentPoly::one(r);
    for j in 0..r {
        let mut tail = UVLaurentPoly::zero(r);
        for k in j..r {
            tail = tail.add(&UVLaurentPoly::uv(r, k));
        }
        let mut diff = UVLaurentPoly::v_pow(r, j, -1, 1);
        if j > 0 {
            diff = diff.add(&UVLaurentPoly::v_pow(r, j - 1, -1, -1));
        }
        let factor = UVLaurentPoly::one(r).add(&tail.mul(&diff).mul(&UVLaurentPoly::monomial(
            r,
            -BigInt::one(),
            vec![0; r],
            vec![0; r],
        )));
        acc = acc.mul(&factor);
    }
    acc
}

pub fn expand_g(r: usize) -> CoeffTable {
    expand_g_poly(r).to_table()
}

/// `b_{J,l}`: coefficients of `prod_{j in J} (t_j + ... + t_r)`, 0-based `J`.
fn tail_product(r: usize, set: &[usize]) -> BTreeMap<Vec<u32>, BigInt> {
    let mut acc: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    acc.insert(vec![0; r], BigInt::one());
    for &j in set {
        let mut next = BTreeMap::new();
        for (e, a) in &acc {
            for k in j..r {
                let mut e2 = e.clone();
                e2[k] += 1;
                *next.entry(e2).or_insert_with(BigInt::zero) += a;
            }
        }
        acc = next;
    }
    acc
}

fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    (0u32..1 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

/// The same table assembled from the subset sum
/// `sum_{J} sum_{K subset J \ {1}} (-1)^{|J \ K|} sum_l b_{J,l}
///   prod u_j^{l_j} v_j^{l_j - [j in J \ K] - [j + 1 in K]}`.
pub fn expand_h(r: usize) -> CoeffTable {
    let all: Vec<usize> = (0..r).collect();
    let mut out = UVLaurentPoly::zero(r);
    for big_j in subsets(&all) {
        let b = tail_product(r, &big_j);
        let rest: Vec<usize> = big_j.iter().copied().filter(|&j| j != 0).collect();
        for big_k in subsets(&rest) {
            let j_minus_k: Vec<usize> = big_j.iter().copied().filter(|j| !big_k.contains(j)).collect();
            let sign = if j_minus_k.len() % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            for (l, coeff) in &b {
                let m: Vec<i32> = (0..r)
                    .map(|j| l[j] as i32 - j_minus_k.contains(&j) as i32 - big_k.contains(&(j + 1)) as i32)
                    .collect();
                out.add_term(l.clone(), m, &sign * coeff);
            }
        }
    }
    out.to_table()
}

/// True iff every term has `sum_j m_j = 0`.
pub fn weight_check(t: &CoeffTable) -> bool {
    t.terms.iter().all(|term| term.m.iter().sum::<i32>() == 0)
}

/// Integer polynomial in `s_1..s_r`, keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SPoly(BTreeMap<Vec<u32>, BigInt>);

impl SPoly {
    pub fn constant(r: usize, a: BigInt) -> Self {
        let mut p = SPoly::default();
        p.add_term(vec![0; r], a);
        p
    }

    /// `s_j + c`, 0-based `j`.
    pub fn linear(r: usize, j: usize, c: i64) -> Self {
        let mut e = vec![0; r];
        e[j] = 1;
        let mut p = SPoly::constant(r, BigInt::from(c));
        p.add_term(e, BigInt::one());
        p
    }

    /// `(s_j)_n`.
    pub fn pochhammer(r: usize, j: usize, n: u32) -> Self {
        (0..n).fold(SPoly::constant(r, BigInt::one()), |acc, i| {
            acc.mul(&SPoly::linear(r, j, i as i64))
        })
    }

    fn add_term(&mut self, e: Vec<u32>, a: BigInt) {
        let sum = self.0.remove(&e).unwrap_or_default() + a;
        if !sum.is_zero() {
            self.0.insert(e, sum);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, a) in &o.0 {
            out.add_term(e.clone(), a.clone());
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = SPoly::default();
        for (ea, a) in &self.0 {
            for (eb, b) in &o.0 {
                out.add_term(ea.iter().zip(eb).map(|(x, y)| x + y).collect(), a * b);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = SPoly::default();
        for (e, a) in &self.0 {
            out.add_term(e.clone(), a * k);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `q(d) = p(center + d)`, exactly. Evaluating `q` at a small `d` avoids
    /// the cancellation that `p` suffers near its integer roots.
    pub fn shift(&self, center: &[i64]) -> Self {
        let r = center.len();
        let mut out = SPoly::default();
        for (e, a) in &self.0 {
            // prod_j (d_j + c_j)^{e_j}
            let mut term = SPoly::constant(r, a.clone());
            for (j, (&k, &cj)) in e.iter().zip(center).enumerate() {
                for _ in 0..k {
                    term = term.mul(&SPoly::linear(r, j, cj));
                }
            }
            out = out.add(&term);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.0.iter()
    }

    pub fn eval(&self, s: &[Complex64]) -> Complex64 {
        self.0
            .iter()
            .map(|(e, a)| {
                let mono: Complex64 = e.iter().zip(s).map(|(&k, x)| x.powu(k)).product();
                mono * a.to_f64().unwrap_or(f64::NAN)
            })
            .sum()
    }

    /// Expanded TeX, highest total degree first.
    pub fn to_tex(&self) -> String {
        let mut terms: Vec<(&Vec<u32>, &BigInt)> = self.0.iter().collect();
        terms.sort_by(|(ea, _), (eb, _)| {
            let (da, db) = (ea.iter().sum::<u32>(), eb.iter().sum::<u32>());
            db.cmp(&da).then_with(|| eb.cmp(ea))
        });
        let mut out = String::new();
        for (i, (e, a)) in terms.iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(j, &k)| {
                    if k == 1 {
                        format!("s_{}", j + 1)
                    } else {
                        format!("s_{}^{}", j + 1, k)
                    }
                })
                .collect();
            let mag = a.abs();
            let neg = a.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                }
                out.push_str(&mono.join(" "));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// `sum a prod (s_j)_{l_j} zeta_r(s + m)`, grouped by the shift `m`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftedCombination {
    pub r: usize,
    pub table: CoeffTable,
    groups: Vec<(Vec<i32>, SPoly)>,
}

impl ShiftedCombination {
    pub fn from_table(table: CoeffTable) -> Self {
        let r = table.r;
        let mut grouped: BTreeMap<Vec<i32>, SPoly> = BTreeMap::new();
        for t in &table.terms {
            let poch = (0..r).fold(SPoly::constant(r, t.a.clone()), |acc, j| {
                acc.mul(&SPoly::pochhammer(r, j, t.l[j]))
            });
            let entry = grouped.entry(t.m.clone()).or_default();
            *entry = entry.add(&poch);
        }
        // the unshifted term first, then the remaining shifts in descending order
        let mut groups: Vec<(Vec<i32>, SPoly)> = grouped.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        groups.sort_by(|(a, _), (b, _)| {
            let za = a.iter().all(|&x| x == 0);
            let zb = b.iter().all(|&x| x == 0);
            zb.cmp(&za).then_with(|| b.cmp(a))
        });
        ShiftedCombination { r, table, groups }
    }

    /// Shift vectors `m` and their polynomial coefficients in `s`.
    pub fn groups(&self) -> &[(Vec<i32>, SPoly)] {
        &self.groups
    }

    pub fn coefficient(&self, m: &[i32]) -> Option<&SPoly> {
        self.groups.iter().find(|(g, _)| g == m).map(|(_, p)| p)
    }

    /// Evaluates the combination with a supplied `zeta_r`, which returns a
    /// value and an error estimate.
    pub fn evaluate<F>(&self, s: &[Complex64], zeta: F) -> Result<(Complex64, f64)>
    where
        F: FnMut(&[Complex64]) -> Result<(Complex64, f64)>,
    {
        let center: Vec<i64> = s.iter().map(|x| x.re.round() as i64).collect();
        let delta: Vec<Complex64> = s.iter().zip(&center).map(|(x, &c)| x - c as f64).collect();
        self.evaluate_at_offset(&center, &delta, zeta)
    }

    /// Evaluates at `s = center + delta`. The polynomial coefficients are
    /// expanded around `center`, so they stay accurate when they nearly
    /// vanish, which is where the zeta values are large.
    pub fn evaluate_at_offset<F>(&self, center: &[i64], delta: &[Complex64], mut zeta: F) -> Result<(Complex64, f64)>
    where
        F: FnMut(&[Complex64]) -> Result<(Complex64, f64)>,
    {
        if center.len() != self.r || delta.len() != self.r {
            return Err(Error::ShapeMismatch(format!(
                "expected {} arguments, got {} and {}",
                self.r,
                center.len(),
                delta.len()
            )));
        }
        let mut total = Complex64::zero();
        let mut err = 0.0;
        let mut magnitude = 0.0;
        for (m, p) in &self.groups {
            let w = p.shift(center).eval(delta);
            // One rounding per argument: integer part first, then the offset.
            let shifted: Vec<Complex64> = center
                .iter()
                .zip(m)
                .zip(delta)
                .map(|((&c, &d), x)| x + (c + d as i64) as f64)
                .collect();
            let (z, e) = zeta(&shifted)?;
            total += w * z;
            err += w.norm() * e;
            magnitude += (w * z).norm();
        }
        // Rounding in the weights and the sum, which may cancel heavily.
        err += 4.0 * f64::EPSILON * self.groups.len() as f64 * magnitude;
        Ok((total, err))
    }

    /// Same as [`Self::evaluate`] but with the coefficients evaluated as
    /// products of Pochhammer symbols term by term, without grouping.
    pub fn evaluate_ungrouped<F>(&self, s: &[Complex64], mut zeta: F) -> Result<Complex64>
    where
        F: FnMut(&[Complex64]) -> Result<Complex64>,
    {
        let mut total = Complex64::zero();
        for t in &self.table.terms {
            let w: Complex64 =
                t.l.iter()
                    .zip(s)
                    .map(|(&l, &x)| pochhammer(x, l))
                    .product::<Complex64>()
                    * t.a.to_f64().unwrap_or(f64::NAN);
            let shifted: Vec<Complex64> = s.iter().zip(&t.m).map(|(x, &d)| x + d as f64).collect();
            total += w * zeta(&shifted)?;
        }
        Ok(total)
    }

    /// Human-readable TeX, one line per shifted zeta-function.
    pub fn to_tex(&self) -> String {
        let mut out = format!("\\zeta^{{\\rm des}}_{}({}) =\n", self.r, self.args(&vec![0; self.r]));
        for (i, (m, p)) in self.groups.iter().enumerate() {
            let lead = if i == 0 { "  " } else { "  + " };
            let _ = writeln!(out, "{lead}({}) \\zeta_{}({})", p.to_tex(), self.r, self.args(m));
        }
        out
    }

    fn args(&self, m: &[i32]) -> String {
        m.iter()
            .enumerate()
            .map(|(j, &d)| match d {
                0 => format!("s_{}", j + 1),
                d if d > 0 => format!("s_{}+{}", j + 1, d),
                d => format!("s_{}{}", j + 1, d),
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

pub fn combination(r: usize) -> ShiftedCombination {
    ShiftedCombination::from_table(expand_g(r))
}
