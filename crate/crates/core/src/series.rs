//! Rational Poincare series `p(t) / prod (1 - t^k)` and the assembly of
//! `H*(BK; Q)` from the lim tables.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gcm::{Gcm, Variant};
use crate::holim::{LimContext, LimTable, Method};
use crate::poset::{IndexSet, SubsetPoset};

/// A series `numerator(t) / prod_k (1 - t^k)^{m_k}` with integer numerator.
/// Kept unreduced; `canonical` cancels factors for display.
#[derive(Clone, Debug)]
pub struct PoincareSeries {
    numerator: Vec<BigInt>,
    denominator: BTreeMap<u32, u32>,
}

fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Multiply by `(1 - t^k)^m`.
fn mul_one_minus(mut p: Vec<BigInt>, k: u32, m: u32) -> Vec<BigInt> {
    let k = k as usize;
    for _ in 0..m {
        let mut out = p.clone();
        out.resize(p.len() + k, BigInt::zero());
        for (i, c) in p.iter().enumerate() {
            out[i + k] -= c;
        }
        p = trim(out);
    }
    p
}

/// Exact division by `(1 - t^k)`, if possible.
fn div_one_minus(p: &[BigInt], k: u32) -> Option<Vec<BigInt>> {
    let k = k as usize;
    if p.is_empty() {
        return Some(Vec::new());
    }
    if p.len() <= k {
        return None;
    }
    // p = (1 - t^k) q  <=>  q_i = p_i + q_{i-k}
    let qlen = p.len() - k;
    let mut q = vec![BigInt::zero(); qlen];
    for i in 0..qlen {
        q[i] = if i >= k { &p[i] + &q[i - k] } else { p[i].clone() };
    }
    (mul_one_minus(q.clone(), k as u32, 1) == trim(p.to_vec())).then_some(q)
}

impl PoincareSeries {
    pub fn new(numerator: Vec<BigInt>, factors: &[u32]) -> Self {
        let mut denominator = BTreeMap::new();
        for &k in factors {
            assert!(k > 0, "factor (1 - t^0) is not invertible");
            *denominator.entry(k).or_insert(0) += 1;
        }
        PoincareSeries {
            numerator: trim(numerator),
            denominator,
        }
    }

    pub fn from_i64(numerator: &[i64], factors: &[u32]) -> Self {
        Self::new(numerator.iter().map(|&c| BigInt::from(c)).collect(), factors)
    }

    pub fn zero() -> Self {
        Self::new(Vec::new(), &[])
    }

    pub fn one() -> Self {
        Self::from_i64(&[1], &[])
    }

    /// `1 / prod (1 - t^k)`.
    pub fn product_inverse(factors: &[u32]) -> Self {
        Self::from_i64(&[1], factors)
    }

    /// A polynomial from its coefficients.
    pub fn polynomial(coeffs: Vec<BigInt>) -> Self {
        Self::new(coeffs, &[])
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.numerator
    }

    /// Denominator factors `k`, repeated by multiplicity, ascending.
    pub fn denominator_factors(&self) -> Vec<u32> {
        self.denominator
            .iter()
            .flat_map(|(&k, &m)| std::iter::repeat_n(k, m as usize))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Numerator rewritten over the denominator `target`, which must contain
    /// this series' denominator.
    fn numerator_over(&self, target: &BTreeMap<u32, u32>) -> Vec<BigInt> {
        let mut p = self.numerator.clone();
        for (&k, &m) in target {
            let have = self.denominator.get(&k).copied().unwrap_or(0);
            p = mul_one_minus(p, k, m - have);
        }
        p
    }

    fn common_denominator(&self, other: &Self) -> BTreeMap<u32, u32> {
        let mut den = self.denominator.clone();
        for (&k, &m) in &other.denominator {
            let e = den.entry(k).or_insert(0);
            *e = (*e).max(m);
        }
        den
    }

    pub fn add(&self, other: &Self) -> Self {
        let den = self.common_denominator(other);
        let a = self.numerator_over(&den);
        let b = other.numerator_over(&den);
        let mut sum = vec![BigInt::zero(); a.len().max(b.len())];
        for (i, c) in a.into_iter().enumerate() {
            sum[i] += c;
        }
        for (i, c) in b.into_iter().enumerate() {
            sum[i] += c;
        }
        PoincareSeries {
            numerator: trim(sum),
            denominator: den,
        }
    }

    pub fn neg(&self) -> Self {
        PoincareSeries {
            numerator: self.numerator.iter().map(|c| -c).collect(),
            denominator: self.denominator.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        PoincareSeries {
            numerator: trim(self.numerator.iter().map(|x| x * c).collect()),
            denominator: self.denominator.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut denominator = self.denominator.clone();
        for (&k, &m) in &other.denominator {
            *denominator.entry(k).or_insert(0) += m;
        }
        PoincareSeries {
            numerator: poly_mul(&self.numerator, &other.numerator),
            denominator,
        }
    }

    pub fn scale_by_t_power(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut numerator = vec![BigInt::zero(); k];
        numerator.extend(self.numerator.iter().cloned());
        PoincareSeries {
            numerator,
            denominator: self.denominator.clone(),
        }
    }

    /// Coefficients of `t^0 .. t^n`.
    pub fn expand(&self, n: usize) -> Vec<BigInt> {
        let mut c = vec![BigInt::zero(); n + 1];
        for (i, x) in self.numerator.iter().enumerate().take(n + 1) {
            c[i] = x.clone();
        }
        for (&k, &m) in &self.denominator {
            let k = k as usize;
            for _ in 0..m {
                for i in k..=n {
                    let prev = c[i - k].clone();
                    c[i] += prev;
                }
            }
        }
        c
    }

    /// Coefficients as `i64`; panics on overflow.
    pub fn expand_i64(&self, n: usize) -> Vec<i64> {
        self.expand(n)
            .iter()
            .map(|c| c.to_i64().expect("coefficient fits in i64"))
            .collect()
    }

    /// Cancel every denominator factor that divides the numerator.
    pub fn canonical(&self) -> Self {
        let mut numerator = self.numerator.clone();
        let mut denominator = self.denominator.clone();
        let keys: Vec<u32> = denominator.keys().rev().copied().collect();
        for k in keys {
            while denominator[&k] > 0 {
                match div_one_minus(&numerator, k) {
                    Some(q) => {
                        numerator = q;
                        *denominator.get_mut(&k).expect("present") -= 1;
                    }
                    None => break,
                }
            }
        }
        denominator.retain(|_, m| *m > 0);
        if numerator.is_empty() {
            denominator.clear();
        }
        PoincareSeries {
            numerator,
            denominator,
        }
    }
}

impl PartialEq for PoincareSeries {
    fn eq(&self, other: &Self) -> bool {
        let den = self.common_denominator(other);
        self.numerator_over(&den) == other.numerator_over(&den)
    }
}

impl Eq for PoincareSeries {}

fn fmt_poly(p: &[BigInt]) -> String {
    let mut out = String::new();
    for (i, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = fmt_poly(&self.numerator);
        if self.denominator.is_empty() {
            return write!(f, "{num}");
        }
        let nterms = self.numerator.iter().filter(|c| !c.is_zero()).count();
        let num = if nterms > 1 { format!("({num})") } else { num };
        let den: String = self
            .denominator
            .iter()
            .map(|(&k, &m)| {
                let base = if k == 1 { "(1-t)".to_string() } else { format!("(1-t^{k})") };
                if m == 1 { base } else { format!("{base}^{m}") }
            })
            .collect();
        write!(f, "{num}/{den}")
    }
}

impl Serialize for PoincareSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PoincareSeries", 2)?;
        let num: Vec<serde_json::Value> = self
            .numerator
            .iter()
            .map(|c| match c.to_i64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(c.to_string()),
            })
            .collect();
        st.serialize_field("numerator", &num)?;
        st.serialize_field("denominator_factors", &self.denominator_factors())?;
        st.end()
    }
}

/// Largest cohomological degree accepted by [`bk_cohomology`].
pub const DEFAULT_DEGREE_CAP: usize = 40;

/// `sum_p (-1)^p sum over strict chains I_0 < .. < I_p of series(I_0)`.
pub fn euler_characteristic_series(
    poset: &SubsetPoset,
    per_element: impl Fn(IndexSet) -> PoincareSeries,
) -> PoincareSeries {
    let el = poset.elements();
    let series: Vec<PoincareSeries> = el.iter().map(|&e| per_element(e)).collect();
    let mut total = PoincareSeries::zero();
    for (p, chains) in poset.chains().iter().enumerate() {
        let mut count = vec![0i64; el.len()];
        for c in chains {
            count[c[0]] += 1;
        }
        for (k, &c) in count.iter().enumerate() {
            if c != 0 {
                let sign = if p % 2 == 0 { c } else { -c };
                total = total.add(&series[k].scale(&BigInt::from(sign)));
            }
        }
    }
    total
}

/// Fit `coeffs` (with `coeffs[0] = 1`) as `prod 1/(1 - t^k)` by peeling off
/// the lowest nonzero positive-degree coefficient.
pub fn greedy_product_fit(coeffs: &[i64]) -> Option<Vec<u32>> {
    if coeffs.first() != Some(&1) {
        return None;
    }
    let n = coeffs.len() - 1;
    let mut c = coeffs.to_vec();
    let mut factors = Vec::new();
    while let Some(k) = (1..=n).find(|&k| c[k] != 0) {
        if c[k] < 0 || factors.len() > n * n {
            return None;
        }
        // multiply by (1 - t^k)
        for i in (k..=n).rev() {
            c[i] -= c[i - k];
        }
        factors.push(k as u32);
    }
    Some(factors)
}

/// `H^*(BK; Q)` assembled from the lim tables: `H^m` is the sum of
/// `lim^i` in internal degree `m - i`.
#[derive(Clone, Debug)]
pub struct BkReport {
    pub variant: Variant,
    /// Requested cohomological degree; `h_dims` also covers `max_degree + 1`,
    /// which only involves `lim^1` in degree `max_degree`.
    pub max_degree: usize,
    pub table: LimTable,
    pub h_dims: Vec<usize>,
    /// Even `m`: `h_dims(m) - dim lim^0` in degree `m`.
    pub nilpotent_dims: BTreeMap<usize, usize>,
    pub euler_series: PoincareSeries,
    pub lim0_series: Option<PoincareSeries>,
    pub lim1_series: Option<PoincareSeries>,
    pub ring_note: Option<String>,
    /// Every rational-function expansion agrees with the degree-wise table.
    pub reconciled: bool,
}

impl BkReport {
    pub fn covered_degree(&self) -> usize {
        self.h_dims.len() - 1
    }

    pub fn lim2_vanishes(&self) -> bool {
        (0..=self.table.max_degree).all(|d| self.table.get(2, d) == 0)
            && (3..=self.table.max_i()).all(|i| (0..=self.table.max_degree).all(|d| self.table.get(i, d) == 0))
    }

    /// `lim^0 + t lim^1`, when both series are known.
    pub fn h_series(&self) -> Option<PoincareSeries> {
        Some(self.lim0_series.as_ref()?.add(&self.lim1_series.as_ref()?.scale_by_t_power(1)))
    }

    pub fn odd_dims(&self) -> BTreeMap<usize, usize> {
        self.h_dims
            .iter()
            .enumerate()
            .filter(|(m, &x)| m % 2 == 1 && x > 0)
            .map(|(m, &x)| (m, x))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coefficients: BTreeMap<usize, usize> = self.h_dims.iter().copied().enumerate().collect();
        let mut j = serde_json::json!({
            "variant": self.variant,
            "max_degree": self.max_degree,
            "coefficients": coefficients,
            "nilpotent_dims": self.nilpotent_dims,
            "euler_series": self.euler_series.canonical(),
            "reconciled": self.reconciled,
        });
        if let Some(s) = self.h_series() {
            j["series"] = serde_json::to_value(s.canonical()).expect("serializable");
        }
        if let Some(s) = &self.lim0_series {
            j["lim0_series"] = serde_json::to_value(s.canonical()).expect("serializable");
        }
        if let Some(s) = &self.lim1_series {
            j["lim1_series"] = serde_json::to_value(s.canonical()).expect("serializable");
        }
        if let Some(n) = &self.ring_note {
            j["ring_note"] = serde_json::Value::from(n.clone());
        }
        j
    }
}

pub fn bk_cohomology(gcm: &Gcm, variant: Variant, max_degree: usize) -> Result<BkReport> {
    bk_cohomology_with(gcm, variant, max_degree, Method::Reduced, DEFAULT_DEGREE_CAP)
}

pub fn bk_cohomology_with(
    gcm: &Gcm,
    variant: Variant,
    max_degree: usize,
    method: Method,
    cap: usize,
) -> Result<BkReport> {
    if max_degree > cap {
        return Err(Error::DegreeCapExceeded {
            requested: max_degree,
            cap,
        });
    }
    let ctx = LimContext::new(gcm, variant)?;
    let dmax = max_degree / 2;
    let table = ctx.table(dmax, method);
    let top = 2 * dmax + 1;
    let mut h_dims = vec![0usize; top + 1];
    for d in 0..=dmax {
        for (i, &x) in table.lim[d].iter().enumerate() {
            if 2 * d + i <= top {
                h_dims[2 * d + i] += x;
            }
        }
    }
    let nilpotent_dims = (0..=dmax)
        .map(|d| (2 * d, h_dims[2 * d] - table.get(0, d)))
        .collect();
    let euler_series = euler_characteristic_series(&ctx.reduced_poset(), |e| ctx.invariant_series(e));

    let lim0: Vec<i64> = (0..=2 * dmax)
        .map(|m| if m % 2 == 0 { table.get(0, m / 2) as i64 } else { 0 })
        .collect();
    let fit = greedy_product_fit(&lim0);
    let lim0_series = fit.as_ref().map(|f| PoincareSeries::product_inverse(f));
    let ring_note = fit.as_ref().map(|f| {
        let s = PoincareSeries::product_inverse(f);
        format!("lim^0 = {s} (additive, to degree {})", 2 * dmax)
    });

    let mut report = BkReport {
        variant,
        max_degree,
        table,
        h_dims,
        nilpotent_dims,
        euler_series,
        lim0_series,
        lim1_series: None,
        ring_note,
        reconciled: true,
    };
    // Euler characteristic, degree by degree
    let euler = report.euler_series.expand(2 * dmax);
    for d in 0..=dmax {
        let alt = crate::holim::alternating(&report.table.lim[d]);
        if euler[2 * d] != BigInt::from(alt) || !euler[2 * d + 1..(2 * d + 2).min(euler.len())].iter().all(Zero::is_zero) {
            report.reconciled = false;
        }
    }
    if report.lim2_vanishes() {
        if let Some(l0) = &report.lim0_series {
            // euler = lim0 - lim1
            let l1 = l0.sub(&report.euler_series);
            let ex = l1.expand(2 * dmax);
            for d in 0..=dmax {
                if ex[2 * d] != BigInt::from(report.table.get(1, d)) {
                    report.reconciled = false;
                }
            }
            report.lim1_series = Some(l1);
        }
    }
    Ok(report)
}
