//! Generalized Cartan matrices: parsing, validation and the finite / affine /
//! indefinite trichotomy for principal submatrices.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, bareiss_determinant, Matrix};
use crate::poset::IndexSet;

/// Which torus the Weyl group acts on: the full realization of rank
/// `2n - rank(A)` or the derived one of rank `n`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    #[default]
    Full,
    Derived,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Full => write!(f, "full"),
            Variant::Derived => write!(f, "derived"),
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Variant::Full),
            "derived" => Ok(Variant::Derived),
            other => Err(Error::Parse(format!("unknown variant {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SubsetKind {
    Finite,
    Affine,
    Indefinite,
}

impl fmt::Display for SubsetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentClass {
    /// 1-based indices of the component.
    pub vertices: Vec<usize>,
    pub kind: SubsetKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetClass {
    pub kind: SubsetKind,
    pub components: Vec<ComponentClass>,
}

/// Coxeter label `m_ij`; `None` stands for infinity.
pub type CoxeterLabel = Option<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gcm {
    entries: Vec<Vec<i64>>,
    symmetric: bool,
    indecomposable: bool,
    corank: usize,
    variant: Variant,
}

#[derive(Deserialize)]
struct GcmDocument {
    matrix: Vec<Vec<i64>>,
    #[serde(default)]
    variant: Variant,
}

/// Parses a JSON document `{"matrix": [[...]], "variant": "full"|"derived"}`.
pub fn parse_gcm(text: &str) -> Result<Gcm> {
    let doc: GcmDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(Gcm::new(doc.matrix)?.with_variant(doc.variant))
}

impl Gcm {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        for i in 0..n {
            if entries[i][i] != 2 {
                return Err(Error::DiagonalNotTwo(i + 1));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                if entries[i][j] > 0 {
                    return Err(Error::PositiveOffDiagonal(i + 1, j + 1));
                }
                if entries[i][j] == 0 && entries[j][i] != 0 {
                    return Err(Error::ZeroAsymmetry(i + 1, j + 1));
                }
            }
        }
        let symmetric = (0..n).all(|i| (0..n).all(|j| entries[i][j] == entries[j][i]));
        let rank = linalg::rank(&Matrix::from_i64(&entries));
        let mut gcm = Gcm {
            entries,
            symmetric,
            indecomposable: false,
            corank: n - rank,
            variant: Variant::Full,
        };
        gcm.indecomposable = gcm.components(IndexSet::full(n)).len() == 1;
        Ok(gcm)
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn indecomposable(&self) -> bool {
        self.indecomposable
    }

    pub fn corank(&self) -> usize {
        self.corank
    }

    pub fn rank(&self) -> usize {
        self.n() - self.corank
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Connected components of the Dynkin graph restricted to `subset`, each
    /// sorted, ordered by smallest element.
    pub fn components(&self, subset: IndexSet) -> Vec<IndexSet> {
        let mut remaining = subset;
        let mut out = Vec::new();
        while let Some(start) = remaining.first() {
            let mut comp = IndexSet::singleton(start);
            let mut frontier = vec![start];
            while let Some(v) = frontier.pop() {
                for w in remaining.iter() {
                    if !comp.contains(w) && self.entries[v][w] != 0 {
                        comp = comp.with(w);
                        frontier.push(w);
                    }
                }
            }
            remaining = remaining.difference(comp);
            out.push(comp);
        }
        out
    }

    /// Exact determinant of the principal submatrix on `subset`.
    pub fn principal_minor(&self, subset: IndexSet) -> BigInt {
        let idx: Vec<usize> = subset.iter().collect();
        let dense = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| BigInt::from(self.entries[i][j])).collect())
            .collect();
        bareiss_determinant(dense)
    }

    fn classify_component(&self, comp: IndexSet) -> SubsetKind {
        let members: Vec<usize> = comp.iter().collect();
        let k = members.len();
        let mut proper_positive = true;
        for mask in 1u32..(1u32 << k) - 1 {
            let sub = IndexSet::from_indices(
                (0..k).filter(|b| mask >> b & 1 == 1).map(|b| members[b]),
            );
            if !self.principal_minor(sub).is_positive() {
                proper_positive = false;
                break;
            }
        }
        let det = self.principal_minor(comp);
        match (proper_positive, det.is_positive(), det.is_zero()) {
            (true, true, _) => SubsetKind::Finite,
            (true, _, true) => SubsetKind::Affine,
            _ => SubsetKind::Indefinite,
        }
    }

    /// Classifies the principal submatrix on `subset` component by component.
    pub fn classify_subset(&self, subset: IndexSet) -> SubsetClass {
        let components: Vec<ComponentClass> = self
            .components(subset)
            .into_iter()
            .map(|c| ComponentClass {
                vertices: c.iter().map(|i| i + 1).collect(),
                kind: self.classify_component(c),
            })
            .collect();
        let kind = components
            .iter()
            .map(|c| c.kind)
            .max()
            .unwrap_or(SubsetKind::Finite);
        SubsetClass { kind, components }
    }

    pub fn is_spherical(&self, subset: IndexSet) -> bool {
        self.classify_subset(subset).kind == SubsetKind::Finite
    }

    /// Coxeter matrix read off from the products `a_ij a_ji`.
    pub fn coxeter_labels(&self) -> Vec<Vec<CoxeterLabel>> {
        let n = self.n();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Some(1)
                        } else {
                            label_from_product(self.entries[i][j] * self.entries[j][i])
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn classification(&self) -> SubsetClass {
        self.classify_subset(IndexSet::full(self.n()))
    }
}

pub fn label_from_product(p: i64) -> CoxeterLabel {
    match p {
        0 => Some(2),
        1 => Some(3),
        2 => Some(4),
        3 => Some(6),
        _ => None,
    }
}

pub fn format_label(l: CoxeterLabel) -> String {
    l.map_or_else(|| "inf".to_string(), |m| m.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::*;

    fn set(ix: &[usize]) -> IndexSet {
        IndexSet::from_indices(ix.iter().map(|i| i - 1))
    }

    #[test]
    fn parses_example_matrices() {
        let g = parse_gcm(r#"{"matrix": [[2,-1,-1],[-1,2,-1],[-2,-3,2]]}"#).unwrap();
        assert_eq!(g.n(), 3);
        assert!(!g.symmetric());
        assert!(g.indecomposable());
        assert_eq!(g.corank(), 0);
        assert_eq!(g.variant(), Variant::Full);

        let one = parse_gcm(r#"{"matrix": [[2]], "variant": "derived"}"#).unwrap();
        assert!(one.symmetric());
        assert_eq!(one.corank(), 0);
        assert_eq!(one.variant(), Variant::Derived);
    }

    #[test]
    fn rejects_invalid_matrices() {
        assert_eq!(Gcm::new(vec![vec![2, -1], vec![0, 2]]), Err(Error::ZeroAsymmetry(2, 1)));
        assert_eq!(Gcm::new(vec![vec![2, -1]]), Err(Error::NotSquare));
        assert_eq!(Gcm::new(vec![vec![2, 1], vec![1, 2]]), Err(Error::PositiveOffDiagonal(1, 2)));
        assert_eq!(Gcm::new(vec![vec![3]]), Err(Error::DiagonalNotTwo(1)));
        assert!(matches!(parse_gcm("{\"matrix\": 3}"), Err(Error::Parse(_))));
    }

    #[test]
    fn example_classifications() {
        let affine = affine_a2();
        assert_eq!(affine.classify_subset(set(&[1, 2, 3])).kind, SubsetKind::Affine);
        assert_eq!(affine.corank(), 1);
        assert_eq!(two_spherical().classify_subset(set(&[1, 2])).kind, SubsetKind::Finite);
        assert_eq!(one_spherical().classify_subset(set(&[1, 2])).kind, SubsetKind::Indefinite);
        assert_eq!(one_spherical().corank(), 0);
        assert_eq!(two_spherical().corank(), 0);
        assert_eq!(affine.classify_subset(IndexSet::empty()).kind, SubsetKind::Finite);
    }

    #[test]
    fn disconnected_subsets_take_the_worst_component() {
        let g = Gcm::new(vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, 0, 0],
            vec![0, 0, 2, -3],
            vec![0, 0, -2, 2],
        ])
        .unwrap();
        let c = g.classify_subset(IndexSet::full(4));
        assert_eq!(c.kind, SubsetKind::Indefinite);
        assert_eq!(c.components.len(), 2);
        assert_eq!(c.components[0].kind, SubsetKind::Finite);
        assert!(!g.indecomposable());
        let aff = Gcm::new(vec![
            vec![2, -2, 0],
            vec![-2, 2, 0],
            vec![0, 0, 2],
        ])
        .unwrap();
        assert_eq!(aff.classification().kind, SubsetKind::Affine);
    }

    #[test]
    fn coxeter_labels_of_examples() {
        let m = two_spherical().coxeter_labels();
        assert_eq!((m[0][1], m[0][2], m[1][2]), (Some(3), Some(4), Some(6)));
        let m = one_spherical().coxeter_labels();
        assert_eq!((m[0][1], m[0][2], m[1][2]), (None, None, None));
        let m = Gcm::new(vec![vec![2, 0], vec![0, 2]]).unwrap().coxeter_labels();
        assert_eq!(m[0][1], Some(2));
        assert_eq!(m[0][0], Some(1));
    }

    #[test]
    fn rank_two_finite_iff_product_at_most_three() {
        for a in 0..=6i64 {
            for b in 0..=6i64 {
                if (a == 0) != (b == 0) {
                    continue;
                }
                let g = Gcm::new(vec![vec![2, -a], vec![-b, 2]]).unwrap();
                let finite = g.is_spherical(IndexSet::full(2));
                assert_eq!(finite, a * b <= 3, "a={a} b={b}");
                assert_eq!(finite, g.coxeter_labels()[0][1].is_some());
            }
        }
    }
}
