//! Ranks of the obstruction groups for maps out of `BK` whose restriction to
//! the torus is null. Each group is a power of `Q^/Q`; only the exponent is
//! computed.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gcm::{Gcm, SubsetKind, Variant};
use crate::series::BkReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// `SU(n + 1)` for the stored `n`.
    SpecialUnitary(usize),
    UserList,
    /// Odd degrees read off the indefinite indecomposable table.
    Table,
}

/// Degrees `n_j` of the Eilenberg-MacLane factors of the target, as a
/// sorted multiset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TargetDegrees {
    degrees: Vec<usize>,
    provenance: Provenance,
}

impl TargetDegrees {
    /// `SU(n + 1)`: degrees `3, 5, ..., 2n + 1`.
    pub fn special_unitary(n: usize) -> Self {
        TargetDegrees { degrees: (1..=n).map(|k| 2 * k + 1).collect(), provenance: Provenance::SpecialUnitary(n) }
    }

    pub fn from_list(degrees: &[usize]) -> Result<Self> {
        if let Some(&bad) = degrees.iter().find(|&&d| d == 0) {
            return Err(Error::Parse(format!("target degree {bad} is not positive")));
        }
        let mut degrees = degrees.to_vec();
        degrees.sort_unstable();
        Ok(TargetDegrees { degrees, provenance: Provenance::UserList })
    }

    /// Odd part `J_odd` for an indefinite indecomposable target: `{3}` when
    /// symmetric, plus one degree-1 factor per central circle in the full
    /// variant.
    pub fn from_table(gcm: &Gcm, variant: Variant) -> Result<Self> {
        if gcm.classification().kind != SubsetKind::Indefinite || !gcm.indecomposable() {
            return Err(Error::TableInapplicable);
        }
        let mut degrees = match variant {
            Variant::Full => vec![1; gcm.corank()],
            Variant::Derived => Vec::new(),
        };
        if gcm.symmetric() {
            degrees.push(3);
        }
        Ok(TargetDegrees { degrees, provenance: Provenance::Table })
    }

    /// Parses `su:<n>`, `degrees:<d1>,<d2>,...` or `table`. The table form
    /// reads the target matrix from `gcm`.
    pub fn parse(target: &str, gcm: &Gcm, variant: Variant) -> Result<Self> {
        let target = target.trim();
        if target == "table" {
            return Self::from_table(gcm, variant);
        }
        if let Some(n) = target.strip_prefix("su:") {
            let n = n.trim().parse().map_err(|_| Error::Parse(format!("bad SU rank {n:?}")))?;
            return Ok(Self::special_unitary(n));
        }
        if let Some(list) = target.strip_prefix("degrees:") {
            let degrees = list
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().map_err(|_| Error::Parse(format!("bad degree {s:?}"))))
                .collect::<Result<Vec<usize>>>()?;
            return Self::from_list(&degrees);
        }
        Err(Error::Parse(format!("unknown target {target:?}; expected su:<n>, degrees:<list> or table")))
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn odd(&self) -> impl Iterator<Item = usize> + '_ {
        self.degrees.iter().copied().filter(|d| d % 2 == 1)
    }

    pub fn even(&self) -> impl Iterator<Item = usize> + '_ {
        self.degrees.iter().copied().filter(|d| d % 2 == 0)
    }
}

impl fmt::Display for TargetDegrees {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Contribution {
    pub degree: usize,
    /// `dim H^{n_j}(BK)`.
    pub h_dim: usize,
    /// Rank contributed to the kernel: all of `H^{n_j}` for odd `n_j`, only
    /// the nilpotent part for even `n_j`.
    pub kernel: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub contributions: Vec<Contribution>,
    /// Rank of the full obstruction group, `sum_j dim H^{n_j}`.
    pub total_rank: usize,
    pub kernel_total: usize,
}

impl ObstructionReport {
    /// Kernel contribution per degree; repeated degrees are summed.
    pub fn per_degree(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for c in &self.contributions {
            *out.entry(c.degree).or_insert(0) += c.kernel;
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let per_degree: BTreeMap<String, usize> =
            self.per_degree().into_iter().map(|(d, k)| (d.to_string(), k)).collect();
        serde_json::json!({
            "per_degree": per_degree,
            "total_rank": self.total_rank,
            "kernel_total": self.kernel_total,
        })
    }
}

pub fn obstruction_rank(src: &BkReport, tgt: &TargetDegrees) -> Result<ObstructionReport> {
    let covered = src.covered_degree();
    let contributions = tgt
        .degrees()
        .iter()
        .map(|&degree| {
            if degree > covered {
                return Err(Error::DegreeNotCovered(degree));
            }
            let h_dim = src.h_dims[degree];
            let kernel = if degree % 2 == 1 { h_dim } else { src.nilpotent_dims.get(&degree).copied().unwrap_or(0) };
            Ok(Contribution { degree, h_dim, kernel })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ObstructionReport {
        total_rank: contributions.iter().map(|c| c.h_dim).sum(),
        kernel_total: contributions.iter().map(|c| c.kernel).sum(),
        contributions,
    })
}
