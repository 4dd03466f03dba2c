//! Exact special values.
//!
//! * twisted multiple Bernoulli numbers `B((n_j); (xi_j); (gamma_j))`, read
//!   off the product generating function, and the `r = 2` convolution form;
//! * values of the twisted multiple zeta-function at non-positive integers,
//!   `zeta_r((-n_j); (xi_j); (gamma_j)) = (-1)^(r + sum n_j) B((n_j); (xi_j^-1); (gamma_j))`;
//! * desingularized values `zeta^des_r((-k_j); (gamma_j))` by three routes:
//!   the upper-triangular `nu` enumeration, the `r = 2` / `r = 3` closed
//!   forms, and coefficient extraction from the limit product `E`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{root_sum_closed_form, twisted_bernoulli_table, CycloElement, RootOfUnity};
use crate::error::{Error, Result};
use crate::exact::rational::{pow as qpow, serde_str, serde_vec_str};
use crate::exact::{bernoulli_number, binomial, factorial, BigRational};
use crate::series::{build_e_product, build_h_r, compose_linear, TruncatedSeries};

/// `(n_1, ..., n_r)` with `r >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::ShapeMismatch("multi-index needs r >= 1".into()));
        }
        Ok(MultiIndex(entries))
    }

    pub fn r(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    fn factorial_product(&self) -> BigRational {
        BigRational::from_integer(self.0.iter().map(|&n| factorial(n as u64)).product())
    }
}

impl From<&[u32]> for MultiIndex {
    fn from(v: &[u32]) -> Self {
        MultiIndex::new(v.to_vec()).expect("non-empty multi-index")
    }
}

/// Upper-triangular `nu[j][l]`, `j <= l` (0-based), with column sums
/// `sum_{d <= j} nu[d][j] = k_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuMatrix {
    r: usize,
    entries: Vec<Vec<u32>>,
}

impl NuMatrix {
    pub fn get(&self, j: usize, l: usize) -> u32 {
        if j <= l {
            self.entries[j][l]
        } else {
            0
        }
    }

    pub fn column_sum(&self, l: usize) -> u32 {
        (0..=l).map(|d| self.entries[d][l]).sum()
    }

    pub fn row_sum(&self, j: usize) -> u32 {
        (j..self.r).map(|l| self.entries[j][l]).sum()
    }

    /// Every matrix whose column sums are `k`, built column by column;
    /// column `l` runs over compositions of `k_l` into `l + 1` parts.
    pub fn enumerate(k: &MultiIndex) -> Vec<NuMatrix> {
        let r = k.r();
        let mut out = Vec::new();
        let mut cur = NuMatrix {
            r,
            entries: vec![vec![0; r]; r],
        };
        Self::fill_column(k.entries(), 0, &mut cur, &mut out);
        out
    }

    fn fill_column(k: &[u32], l: usize, cur: &mut NuMatrix, out: &mut Vec<NuMatrix>) {
        if l == k.len() {
            out.push(cur.clone());
            return;
        }
        Self::fill_cell(k, l, 0, k[l], cur, out);
    }

    fn fill_cell(k: &[u32], l: usize, d: usize, left: u32, cur: &mut NuMatrix, out: &mut Vec<NuMatrix>) {
        if d == l {
            cur.entries[d][l] = left;
            Self::fill_column(k, l + 1, cur, out);
            cur.entries[d][l] = 0;
            return;
        }
        for v in 0..=left {
            cur.entries[d][l] = v;
            Self::fill_cell(k, l, d + 1, left - v, cur, out);
        }
        cur.entries[d][l] = 0;
    }
}

fn check_lengths(what: &str, r: usize, got: usize) -> Result<()> {
    if r != got {
        return Err(Error::ShapeMismatch(format!("{what}: expected {r} entries, got {got}")));
    }
    Ok(())
}

fn sign(e: u32) -> BigRational {
    if e % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// `B((n_j); (xi_j); (gamma_j))` = `prod n_j!` times the coefficient of
/// `prod t_j^{n_j}` in `prod_j 1/(1 - xi_j exp(gamma_j (t_j + ... + t_r)))`.
pub fn twisted_multiple_bernoulli(n: &MultiIndex, xis: &[RootOfUnity], gammas: &[BigRational]) -> Result<CycloElement> {
    check_lengths("roots", n.r(), xis.len())?;
    check_lengths("gammas", n.r(), gammas.len())?;
    for xi in xis {
        xi.require_nontrivial()?;
    }
    let h = build_h_r(xis, gammas, n.weight())?;
    let c = xis[0].order();
    let coeff = h.coeff(n.entries()).cloned().unwrap_or_else(|| CycloElement::zero(c));
    Ok(coeff.scale(&n.factorial_product()))
}

/// `sum_{j=0}^{l} C(l, j) B_{k+j}(xi_1) B_{l-j}(xi_2) gamma_1^{k+j} gamma_2^{l-j}`.
pub fn double_twisted_closed(
    k: u32,
    l: u32,
    xi1: &RootOfUnity,
    xi2: &RootOfUnity,
    gamma1: &BigRational,
    gamma2: &BigRational,
) -> Result<CycloElement> {
    if xi1.order() != xi2.order() {
        return Err(Error::OrderMismatch(xi1.order(), xi2.order()));
    }
    let b1 = twisted_bernoulli_table((k + l) as usize, xi1)?;
    let b2 = twisted_bernoulli_table(l as usize, xi2)?;
    let mut acc = CycloElement::zero(xi1.order());
    for j in 0..=l {
        let w = BigRational::from_integer(binomial(l as u64, j as i64)) * qpow(gamma1, k + j) * qpow(gamma2, l - j);
        let term = &b1[(k + j) as usize] * &b2[(l - j) as usize];
        acc = &acc + &term.scale(&w);
    }
    Ok(acc)
}

/// `sum` of `B(k, l; xi_1, xi_2; gamma_1, gamma_2)` over all pairs of
/// nontrivial `c`-th roots of unity; always rational.
pub fn root_pair_sum(k: u32, l: u32, c: u32, gamma1: &BigRational, gamma2: &BigRational) -> Result<BigRational> {
    let roots = RootOfUnity::nontrivial(c)?;
    let mut acc = CycloElement::zero(c);
    for x1 in &roots {
        for x2 in &roots {
            acc = &acc + &double_twisted_closed(k, l, x1, x2, gamma1, gamma2)?;
        }
    }
    acc.as_rational()
        .ok_or_else(|| Error::NotRational(format!("k = {k}, l = {l}, c = {c}: {acc}")))
}

/// `sum_j C(l,j) (1 - c^{k+j+1}) (1 - c^{l-j+1}) B_{k+j+1}/(k+j+1) B_{l-j+1}/(l-j+1) gamma_1^{k+j} gamma_2^{l-j}`.
pub fn root_pair_closed(k: u32, l: u32, c: u32, gamma1: &BigRational, gamma2: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for j in 0..=l {
        acc += BigRational::from_integer(binomial(l as u64, j as i64))
            * root_sum_closed_form((k + j) as usize, c)
            * root_sum_closed_form((l - j) as usize, c)
            * qpow(gamma1, k + j)
            * qpow(gamma2, l - j);
    }
    acc
}

/// `zeta_r((-n_j); (xi_j); (gamma_j))`; note every root is inverted.
pub fn lerch_special_value(n: &MultiIndex, xis: &[RootOfUnity], gammas: &[BigRational]) -> Result<CycloElement> {
    let inverted: Vec<RootOfUnity> = xis.iter().map(RootOfUnity::inverse).collect();
    for xi in xis {
        xi.require_nontrivial()?;
    }
    let b = twisted_multiple_bernoulli(n, &inverted, gammas)?;
    Ok(b.scale(&sign(n.r() as u32 + n.weight())))
}

/// `zeta^des_r((-k_j); (gamma_j))` by summing over all [`NuMatrix`] with
/// column sums `k`:
/// `prod (-1)^{k_l} k_l! * sum prod_j B_{1+n_j} gamma_j^{n_j} / prod_{d<=j} nu_{dj}!`
/// with `n_j` the `j`-th row sum.
pub fn desing_value_exact(k: &MultiIndex, gammas: &[BigRational]) -> Result<BigRational> {
    check_lengths("gammas", k.r(), gammas.len())?;
    let r = k.r();
    let max_row = k.weight() as usize;
    let bs: Vec<BigRational> = (0..=max_row + 1).map(bernoulli_number).collect();
    let inv_fact: Vec<BigRational> = (0..=max_row)
        .map(|n| BigRational::new(BigInt::one(), factorial(n as u64)))
        .collect();
    let mut total = BigRational::zero();
    for nu in NuMatrix::enumerate(k) {
        let mut term = BigRational::one();
        for j in 0..r {
            let n = nu.row_sum(j) as usize;
            if bs[n + 1].is_zero() {
                term = BigRational::zero();
                break;
            }
            term *= &bs[n + 1] * qpow(&gammas[j], n as u32);
            for d in 0..=j {
                term *= &inv_fact[nu.get(d, j) as usize];
            }
        }
        total += term;
    }
    Ok(total * sign(k.weight()) * k.factorial_product())
}

/// `r = 2`: `(-1)^{k+l} sum_{v=0}^{l} C(l,v) B_{k+v+1} B_{l-v+1} gamma_1^{k+v} gamma_2^{l-v}`.
pub fn desing_value_r2_closed(k: u32, l: u32, gamma1: &BigRational, gamma2: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for v in 0..=l {
        acc += BigRational::from_integer(binomial(l as u64, v as i64))
            * bernoulli_number((k + v + 1) as usize)
            * bernoulli_number((l - v + 1) as usize)
            * qpow(gamma1, k + v)
            * qpow(gamma2, l - v);
    }
    acc * sign(k + l)
}

/// `r = 3` closed form:
/// `(-1)^{k+l+m} sum_{v, p, q} C(l, q) m!/(v! p! (m-v-p)!)
///   B_{k+v+q+1} B_{l-q+p+1} B_{m-v-p+1} gamma_1^{k+v+q} gamma_2^{l-q+p} gamma_3^{m-v-p}`.
///
/// The `gamma` exponents are the row sums of the `nu` matrix. Raising each
/// of them by one gives a different function (off by `gamma_1 gamma_2 gamma_3`),
/// which only agrees at `gamma_1 gamma_2 gamma_3 = 1`.
pub fn desing_value_r3_closed(k: u32, l: u32, m: u32, gammas: &[BigRational; 3]) -> BigRational {
    let mut acc = BigRational::zero();
    let m_fact = factorial(m as u64);
    for v in 0..=m {
        for p in 0..=(m - v) {
            let tri = BigRational::new(
                m_fact.clone(),
                factorial(v as u64) * factorial(p as u64) * factorial((m - v - p) as u64),
            );
            for q in 0..=l {
                let (n1, n2, n3) = (k + v + q, l - q + p, m - v - p);
                acc += BigRational::from_integer(binomial(l as u64, q as i64))
                    * &tri
                    * bernoulli_number((n1 + 1) as usize)
                    * bernoulli_number((n2 + 1) as usize)
                    * bernoulli_number((n3 + 1) as usize)
                    * qpow(&gammas[0], n1)
                    * qpow(&gammas[1], n2)
                    * qpow(&gammas[2], n3);
            }
        }
    }
    acc * sign(k + l + m)
}

/// Reads `zeta^des_r((-k_j))` off the limit product:
/// `(-1)^{sum k} prod k_j! [prod t_j^{k_j}] prod_j E(gamma_j (t_j + ... + t_r))`.
pub fn desing_value_oracle(k: &MultiIndex, gammas: &[BigRational]) -> Result<BigRational> {
    check_lengths("gammas", k.r(), gammas.len())?;
    let e = build_e_product(gammas, k.weight())?;
    let coeff = e.coeff(k.entries()).cloned().unwrap_or_else(BigRational::zero);
    Ok(coeff * sign(k.weight()) * k.factorial_product())
}

/// One row of an exact value table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValueRow {
    pub k: Vec<u32>,
    #[serde(with = "serde_vec_str")]
    pub gamma: Vec<BigRational>,
    #[serde(with = "serde_str")]
    pub value: BigRational,
}

/// `zeta^des_r((-k_j); (gamma_j))` for every `k` in `[0, kmax]^r`, in
/// lexicographic order of `k`.
///
/// Computed in one pass: the limit product is multiplied factor by factor
/// from `j = r` down to `1`, discarding any exponent above `kmax`.
pub fn desing_value_table(kmax: u32, gammas: &[BigRational]) -> Result<Vec<ValueRow>> {
    let r = gammas.len();
    if r == 0 {
        return Err(Error::ShapeMismatch("need r >= 1".into()));
    }
    let degree = kmax * r as u32;
    let f: Vec<BigRational> = (0..=degree as usize)
        .map(|n| bernoulli_number(n + 1) / BigRational::from_integer(factorial(n as u64)))
        .collect();
    let mut acc: Option<TruncatedSeries<BigRational>> = None;
    for j in (0..r).rev() {
        let weights: Vec<BigRational> = (0..r)
            .map(|i| if i >= j { gammas[j].clone() } else { BigRational::zero() })
            .collect();
        let factor = compose_linear(&f, &weights, degree).restrict_box(kmax);
        acc = Some(match acc {
            None => factor,
            Some(a) => a.mul_boxed(&factor, kmax)?,
        });
    }
    let product = acc.expect("r >= 1");
    let mut rows = Vec::new();
    let mut k = vec![0u32; r];
    loop {
        let idx = MultiIndex(k.clone());
        let coeff = product.coeff(&k).cloned().unwrap_or_else(BigRational::zero);
        rows.push(ValueRow {
            k: k.clone(),
            gamma: gammas.to_vec(),
            value: coeff * sign(idx.weight()) * idx.factorial_product(),
        });
        // odometer, last index fastest
        let mut pos = r;
        loop {
            if pos == 0 {
                return Ok(rows);
            }
            pos -= 1;
            if k[pos] < kmax {
                k[pos] += 1;
                for x in &mut k[pos + 1..] {
                    *x = 0;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{negative_polylog, twisted_bernoulli};
    use crate::exact::rational::{int, rat};

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::from(v)
    }

    fn root(c: u32, a: i64) -> RootOfUnity {
        RootOfUnity::new(c, a).unwrap()
    }

    #[test]
    fn nu_enumeration_counts() {
        // prod_j C(k_j + j - 1, j - 1) with 1-based j.
        let all = NuMatrix::enumerate(&mi(&[2, 3, 2]));
        assert_eq!(all.len(), 1 * 4 * 6);
        for nu in &all {
            assert_eq!(nu.column_sum(0), 2);
            assert_eq!(nu.column_sum(1), 3);
            assert_eq!(nu.column_sum(2), 2);
        }
    }

    #[test]
    fn r1_reduces_to_single_variable() {
        for c in [3u32, 4] {
            for xi in RootOfUnity::nontrivial(c).unwrap() {
                for n in 0..=5 {
                    assert_eq!(
                        twisted_multiple_bernoulli(&mi(&[n]), &[xi], &[int(1)]).unwrap(),
                        twisted_bernoulli(n as usize, &xi).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn r2_closed_examples() {
        let (x1, x2) = (root(5, 1), root(5, 2));
        let (g1, g2) = (rat(3, 2), rat(-2, 7));
        let (z1, z2) = (x1.to_element(), x2.to_element());
        let one = CycloElement::one(5);
        let d1 = &one - &z1;
        let d2 = &one - &z2;
        let b = |k, l| twisted_multiple_bernoulli(&mi(&[k, l]), &[x1, x2], &[g1.clone(), g2.clone()]).unwrap();

        assert_eq!(b(0, 0), (&d1 * &d2).inv().unwrap());
        let num01 = &(&z1.scale(&g1) + &z2.scale(&g2)) - &(&z1 * &z2).scale(&(&g1 + &g2));
        assert_eq!(b(0, 1), num01.div(&(&d1.pow(2) * &d2.pow(2))).unwrap());

        // xi1^2 g1 (g1 - xi2 (g1 + g2)) + xi1 g1 (g1 - xi2 (g1 - g2))
        let s = |x: &BigRational| CycloElement::from_rational(5, x.clone());
        let t1 = &z1.pow(2).scale(&g1) * &(&s(&g1) - &z2.scale(&(&g1 + &g2)));
        let t2 = &z1.scale(&g1) * &(&s(&g1) - &z2.scale(&(&g1 - &g2)));
        let num11 = &t1 + &t2;
        assert_eq!(b(1, 1), num11.div(&(&d1.pow(3) * &d2.pow(2))).unwrap());
    }

    #[test]
    fn closed_double_form_matches_series() {
        for c in [2u32, 3] {
            for x1 in RootOfUnity::nontrivial(c).unwrap() {
                for x2 in RootOfUnity::nontrivial(c).unwrap() {
                    let (g1, g2) = (rat(2, 1), rat(1, 3));
                    for k in 0..=4 {
                        for l in 0..=4 {
                            assert_eq!(
                                double_twisted_closed(k, l, &x1, &x2, &g1, &g2).unwrap(),
                                twisted_multiple_bernoulli(&mi(&[k, l]), &[x1, x2], &[g1.clone(), g2.clone()]).unwrap()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn root_pair_sums() {
        let gs = [(int(1), int(1)), (rat(1, 2), int(3))];
        for c in [2u32, 3] {
            for (g1, g2) in &gs {
                for k in 0..=4 {
                    for l in 0..=4 {
                        assert_eq!(
                            root_pair_sum(k, l, c, g1, g2).unwrap(),
                            root_pair_closed(k, l, c, g1, g2)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn lerch_values() {
        let m1 = root(2, 1);
        assert_eq!(
            lerch_special_value(&mi(&[0]), &[m1], &[int(1)]).unwrap().as_rational(),
            Some(rat(-1, 2))
        );
        for c in [3u32, 4, 5] {
            for xi in RootOfUnity::nontrivial(c).unwrap() {
                for k in 0..=8 {
                    assert_eq!(
                        lerch_special_value(&mi(&[k]), &[xi], &[int(1)]).unwrap(),
                        negative_polylog(k as usize, &xi).unwrap()
                    );
                }
            }
        }
        let (x1, x2) = (root(3, 1), root(3, 2));
        let g = [rat(1, 2), int(3)];
        assert_eq!(
            lerch_special_value(&mi(&[0, 0]), &[x1, x2], &g).unwrap(),
            twisted_multiple_bernoulli(&mi(&[0, 0]), &[x1.inverse(), x2.inverse()], &g).unwrap()
        );
        assert_eq!(
            lerch_special_value(&mi(&[1, 0]), &[root(3, 0), x2], &g),
            Err(Error::TrivialRoot)
        );
    }

    #[test]
    fn desing_examples() {
        for k in 0..=12u32 {
            let expected = bernoulli_number(k as usize + 1) * sign(k);
            assert_eq!(desing_value_exact(&mi(&[k]), &[int(1)]).unwrap(), expected);
        }
        assert_eq!(desing_value_exact(&mi(&[0, 2]), &[int(1), int(1)]).unwrap(), rat(1, 18));
        assert_eq!(desing_value_exact(&mi(&[0, 0]), &[int(1), int(1)]).unwrap(), rat(1, 4));
        assert_eq!(desing_value_r2_closed(0, 2, &int(1), &int(1)), rat(1, 18));
        assert_eq!(
            desing_value_oracle(&mi(&[0, 0, 0]), &[int(1), int(1), int(1)]).unwrap(),
            rat(-1, 8)
        );
    }

    #[test]
    fn r2_closed_and_enumeration_agree() {
        let samples = [(int(1), int(1)), (rat(1, 2), int(3)), (int(2), rat(1, 3))];
        for (g1, g2) in &samples {
            for k in 0..=6 {
                for l in 0..=6 {
                    assert_eq!(
                        desing_value_exact(&mi(&[k, l]), &[g1.clone(), g2.clone()]).unwrap(),
                        desing_value_r2_closed(k, l, g1, g2),
                        "k={k} l={l}"
                    );
                }
            }
        }
    }

    #[test]
    fn r3_closed_agrees_with_oracle() {
        let g = [rat(1, 2), int(3), rat(-2, 5)];
        for k in 0..=3 {
            for l in 0..=3 {
                for m in 0..=3 {
                    assert_eq!(
                        desing_value_r3_closed(k, l, m, &g),
                        desing_value_oracle(&mi(&[k, l, m]), &g).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn homogeneity() {
        let lam = rat(-3, 4);
        for k in 0..=5u32 {
            let base = desing_value_exact(&mi(&[k]), &[rat(2, 3)]).unwrap();
            let scaled = desing_value_exact(&mi(&[k]), &[rat(2, 3) * &lam]).unwrap();
            assert_eq!(scaled, base * qpow(&lam, k));
        }
        let (g1, g2) = (rat(1, 2), int(3));
        for k in 0..=4 {
            for l in 0..=4 {
                let base = desing_value_r2_closed(k, l, &g1, &g2);
                let scaled = desing_value_r2_closed(k, l, &(&g1 * &lam), &(&g2 * &lam));
                assert_eq!(scaled, base * qpow(&lam, k + l));
            }
        }
    }

    #[test]
    fn table_matches_pointwise_values() {
        let g = [rat(1, 2), int(3), int(1)];
        let rows = desing_value_table(2, &g).unwrap();
        assert_eq!(rows.len(), 27);
        for row in &rows {
            assert_eq!(row.value, desing_value_exact(&MultiIndex(row.k.clone()), &g).unwrap());
        }
        let rows = desing_value_table(2, &[int(1), int(1)]).unwrap();
        let r02 = rows.iter().find(|r| r.k == vec![0, 2]).unwrap();
        assert_eq!(r02.value, rat(1, 18));
        let json = serde_json::to_string(&r02).unwrap();
        assert_eq!(json, r#"{"k":[0,2],"gamma":["1","1"],"value":"1/18"}"#);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(desing_value_exact(&mi(&[1, 2]), &[int(1)]).is_err());
        assert!(MultiIndex::new(vec![]).is_err());
    }
}
