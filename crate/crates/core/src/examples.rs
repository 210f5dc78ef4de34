//! The worked example matrices.

use crate::gcm::Gcm;

/// Every rank-2 principal submatrix is of infinite type.
pub fn one_spherical() -> Gcm {
    Gcm::new(vec![vec![2, -1, -1], vec![-7, 2, -1], vec![-8, -9, 2]]).expect("valid")
}

/// Coxeter labels 3, 4, 6 on the three pairs.
pub fn two_spherical() -> Gcm {
    Gcm::new(vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-2, -3, 2]]).expect("valid")
}

/// The affine matrix of type `A_2^(1)`.
pub fn affine_a2() -> Gcm {
    Gcm::new(vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]).expect("valid")
}

/// One finite pair `{1,2}` and an isolated spherical vertex `{3}`.
pub fn single_pair() -> Gcm {
    Gcm::new(vec![vec![2, -1, -4], vec![-1, 2, -4], vec![-4, -4, 2]]).expect("valid")
}
