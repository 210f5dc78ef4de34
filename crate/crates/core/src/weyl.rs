//! Reflection representation of the Weyl group on the degree-2 cohomology of
//! the maximal torus, and finite Coxeter type recognition.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gcm::{Gcm, Variant};
use crate::linalg::{self, format_q, q, Matrix, Q};
use crate::poset::IndexSet;
use crate::series::PoincareSeries;

/// Generators `s_i` acting on the span of `t_1 .. t_r`.
#[derive(Clone, Debug, PartialEq)]
pub struct Realization {
    pub r: usize,
    pub variant: Variant,
    pub generators: Vec<Matrix>,
    /// Coordinates of the roots `alpha_i` in the basis `t_1 .. t_r`.
    pub roots: Vec<Vec<Q>>,
}

/// Indices (0-based) of the completion columns: the lexicographically first
/// `J` with `|J| = n - rank` making the roots linearly independent.
pub fn completion_indices(gcm: &Gcm) -> Vec<usize> {
    let n = gcm.n();
    let k = n - gcm.rank();
    let mut best = None;
    // lexicographic order on k-subsets
    let mut comb: Vec<usize> = (0..k).collect();
    loop {
        let rows: Vec<Vec<Q>> = (0..n)
            .map(|j| {
                let mut row: Vec<Q> = (0..n).map(|i| q(gcm.entry(i, j))).collect();
                row.extend(comb.iter().map(|&c| q(i64::from(c == j))));
                row
            })
            .collect();
        if linalg::rank(&Matrix::from_dense(n + k, rows)) == n {
            best = Some(comb.clone());
            break;
        }
        let Some(pos) = (0..k).rev().find(|&p| comb[p] < n - k + p) else {
            break;
        };
        comb[pos] += 1;
        for p in pos + 1..k {
            comb[p] = comb[p - 1] + 1;
        }
    }
    best.expect("a completion always exists")
}

pub fn realization(gcm: &Gcm, variant: Variant) -> Realization {
    let n = gcm.n();
    let extra = match variant {
        Variant::Full => completion_indices(gcm),
        Variant::Derived => Vec::new(),
    };
    let r = n + extra.len();
    let roots: Vec<Vec<Q>> = (0..n)
        .map(|j| {
            let mut a: Vec<Q> = (0..n).map(|i| q(gcm.entry(i, j))).collect();
            a.extend(extra.iter().map(|&c| q(i64::from(c == j))));
            a
        })
        .collect();
    // s_i(lambda) = lambda - lambda(alpha_i^vee) alpha_i, and lambda(alpha_i^vee)
    // is the i-th coordinate
    let generators = roots
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let mut m = Matrix::identity(r).to_dense();
            for (k, row) in m.iter_mut().enumerate() {
                row[i] -= &a[k];
            }
            Matrix::from_dense(r, m)
        })
        .collect();
    Realization {
        r,
        variant,
        generators,
        roots,
    }
}

impl Realization {
    pub fn generators_for(&self, subset: IndexSet) -> Vec<Matrix> {
        subset.iter().map(|i| self.generators[i].clone()).collect()
    }

    /// Generator matrices as nested arrays of `"p/q"` strings.
    pub fn generators_json(&self) -> serde_json::Value {
        serde_json::Value::from(
            self.generators
                .iter()
                .map(|g| {
                    serde_json::Value::from(
                        g.to_dense()
                            .iter()
                            .map(|row| row.iter().map(format_q).collect::<Vec<_>>())
                            .collect::<Vec<_>>(),
                    )
                })
                .collect::<Vec<_>>(),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CoxeterType {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    I2(u32),
}

impl CoxeterType {
    pub fn degrees(self) -> Vec<u32> {
        match self {
            CoxeterType::A(k) => (2..=k as u32 + 1).collect(),
            CoxeterType::B(k) => (1..=k as u32).map(|i| 2 * i).collect(),
            CoxeterType::D(k) => {
                let mut d: Vec<u32> = (1..k as u32).map(|i| 2 * i).collect();
                d.push(k as u32);
                d.sort();
                d
            }
            CoxeterType::E(6) => vec![2, 5, 6, 8, 9, 12],
            CoxeterType::E(7) => vec![2, 6, 8, 10, 12, 14, 18],
            CoxeterType::E(8) => vec![2, 8, 12, 14, 18, 20, 24, 30],
            CoxeterType::E(k) => unreachable!("no E{k}"),
            CoxeterType::F4 => vec![2, 6, 8, 12],
            CoxeterType::I2(m) => vec![2, m],
        }
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterType::A(k) => write!(f, "A_{k}"),
            CoxeterType::B(k) => write!(f, "B_{k}"),
            CoxeterType::D(k) => write!(f, "D_{k}"),
            CoxeterType::E(k) => write!(f, "E{k}"),
            CoxeterType::F4 => write!(f, "F4"),
            CoxeterType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

impl Serialize for CoxeterType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxeterComponent {
    #[serde(rename = "type")]
    pub kind: CoxeterType,
    pub vertices: IndexSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxeterTypeReport {
    pub components: Vec<CoxeterComponent>,
    pub degrees: Vec<u32>,
    pub order: u64,
}

/// Recognize one connected Coxeter diagram given its labels.
fn recognize(vertices: &[usize], label: impl Fn(usize, usize) -> u32) -> Option<CoxeterType> {
    let k = vertices.len();
    if k == 1 {
        return Some(CoxeterType::A(1));
    }
    let mut edges = Vec::new();
    for (a, &i) in vertices.iter().enumerate() {
        for (b, &j) in vertices.iter().enumerate().skip(a + 1) {
            let m = label(i, j);
            if m >= 3 {
                edges.push((a, b, m));
            }
        }
    }
    if edges.len() != k - 1 {
        return None;
    }
    let mut deg = vec![0usize; k];
    for &(a, b, _) in &edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    let heavy: Vec<&(usize, usize, u32)> = edges.iter().filter(|e| e.2 > 3).collect();
    if k == 2 {
        let m = edges[0].2;
        return Some(if m == 3 { CoxeterType::A(2) } else if m == 4 { CoxeterType::B(2) } else { CoxeterType::I2(m) });
    }
    let branch: Vec<usize> = (0..k).filter(|&v| deg[v] >= 3).collect();
    match (heavy.len(), branch.len()) {
        (0, 0) => Some(CoxeterType::A(k)),
        (1, 0) if heavy[0].2 == 4 => {
            let (a, b, _) = *heavy[0];
            if deg[a] == 1 || deg[b] == 1 {
                Some(CoxeterType::B(k))
            } else if k == 4 {
                Some(CoxeterType::F4)
            } else {
                None
            }
        }
        (0, 1) => {
            let c = branch[0];
            if deg[c] != 3 {
                return None;
            }
            // arm lengths from the branch vertex
            let mut arms: Vec<usize> = Vec::new();
            for &(a, b, _) in edges.iter().filter(|e| e.0 == c || e.1 == c) {
                let (mut prev, mut cur) = (c, if a == c { b } else { a });
                let mut len = 1;
                loop {
                    let next = edges.iter().find_map(|&(x, y, _)| {
                        if x == cur && y != prev {
                            Some(y)
                        } else if y == cur && x != prev {
                            Some(x)
                        } else {
                            None
                        }
                    });
                    match next {
                        Some(nx) => {
                            prev = cur;
                            cur = nx;
                            len += 1;
                        }
                        None => break,
                    }
                }
                arms.push(len);
            }
            arms.sort();
            match arms.as_slice() {
                [1, 1, _] => Some(CoxeterType::D(k)),
                [1, 2, 2] => Some(CoxeterType::E(6)),
                [1, 2, 3] => Some(CoxeterType::E(7)),
                [1, 2, 4] => Some(CoxeterType::E(8)),
                _ => None,
            }
        }
        _ => None,
    }
}

pub fn coxeter_components(gcm: &Gcm, subset: IndexSet) -> Result<CoxeterTypeReport> {
    if !gcm.is_spherical(subset) {
        return Err(Error::NotSpherical(subset.to_string()));
    }
    let labels = gcm.coxeter_labels();
    let mut components = Vec::new();
    let mut degrees = Vec::new();
    for comp in gcm.components(subset) {
        let verts: Vec<usize> = comp.iter().collect();
        let kind = recognize(&verts, |i, j| labels[i][j].unwrap_or(u32::MAX))
            .ok_or_else(|| Error::NotSpherical(comp.to_string()))?;
        degrees.extend(kind.degrees());
        components.push(CoxeterComponent {
            kind,
            vertices: comp,
        });
    }
    degrees.sort();
    let order = degrees.iter().map(|&d| u64::from(d)).product();
    Ok(CoxeterTypeReport {
        components,
        degrees,
        order,
    })
}

/// `prod_d 1/(1 - t^{2d}) * 1/(1 - t^2)^{r - |I|}` in cohomological grading.
pub fn invariant_series(report: &CoxeterTypeReport, r: usize) -> PoincareSeries {
    let mut factors: Vec<u32> = report.degrees.iter().map(|d| 2 * d).collect();
    factors.extend(std::iter::repeat_n(2, r - report.degrees.len()));
    PoincareSeries::product_inverse(&factors)
}
