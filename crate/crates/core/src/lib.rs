//! Exact computations around Kac-Moody classifying spaces: spherical-subset
//! posets, Weyl-invariant polynomial slices, higher limits over posets,
//! Poincare series of `H*(BK; Q)` and obstruction ranks.
//!
//! Everything is exact: rationals are arbitrary precision and ranks are
//! certified over `Q`.

pub mod cli;
pub mod error;
pub mod examples;
pub mod gcm;
pub mod holim;
pub mod invariants;
pub mod linalg;
pub mod obstructions;
pub mod par;
pub mod poset;
pub mod series;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use gcm::{Gcm, SubsetClass, SubsetKind, Variant};
pub use linalg::{Matrix, Q};
pub use poset::{IndexSet, SubsetPoset};
pub use series::PoincareSeries;
