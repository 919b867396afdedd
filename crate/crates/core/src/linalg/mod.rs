//! Exact linear algebra over Q and Q(i).

pub mod eigen;
pub mod matrix;
pub mod modular;
pub mod rank;
pub mod solve;
pub mod sparse;

pub use eigen::{joint_eigenspace_dims, joint_eigenspaces, JointEigenspace};
pub use matrix::Matrix;
pub use rank::{rank, rank_bareiss, rank_certified, rank_certified_sparse, RankCertificate};
pub use solve::{nullspace, orthogonal_project, rank_exact, solve_least_structured, Solution};
pub use sparse::SparseMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("basis columns are linearly dependent")]
    DependentBasis,
    #[error("operators {0} and {1} do not commute")]
    NonCommuting(usize, usize),
    #[error("operator shapes do not match")]
    ShapeMismatch,
    #[error("no operators supplied")]
    Empty,
    #[error("spectrum is not contained in the Gaussian rationals")]
    NotSplit,
    #[error("operator is not diagonalizable over the Gaussian rationals")]
    NotDiagonalizable,
    #[error("no usable prime found")]
    BadPrime,
}
