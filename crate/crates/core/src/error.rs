use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("diagonal entry ({0},{0}) is not 2")]
    DiagonalNotTwo(usize),
    #[error("off-diagonal entry ({0},{1}) is positive")]
    PositiveOffDiagonal(usize, usize),
    #[error("entry ({0},{1}) is zero but ({1},{0}) is not")]
    ZeroAsymmetry(usize, usize),
    #[error("matrix size {size} exceeds the subset enumeration cap {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
    #[error("subset {0} is not spherical")]
    NotSpherical(String),
    #[error("poset is not essentially 2-spherical: {0}")]
    NotEssentially2Spherical(String),
    #[error("poset is not a cycle poset C_n with n >= 3")]
    NotCnPoset,
    #[error("generator {0} is not a reflection")]
    NotAReflection(usize),
    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,
    #[error("requested degree {requested} exceeds cap {cap}")]
    DegreeCapExceeded { requested: usize, cap: usize },
    #[error("degree {0} is not covered by the source report")]
    DegreeNotCovered(usize),
    #[error("target table only applies to indefinite indecomposable matrices")]
    TableInapplicable,
}

pub type Result<T> = std::result::Result<T, Error>;
