//! Decomposition of spin(9)-representations into irreducibles.

pub mod action;
pub mod decompose;
pub mod weights;

pub use action::{cartan_basis, rep_action, Representation, Space};
pub use decompose::{decompose, isotypic_apply, isotypic_projector, Component, DecompositionReport};
pub use weights::{freudenthal_multiplicities, weyl_dimension, Weight};

use crate::linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("weight {0:?} is not dominant")]
    NotDominant(Weight),
    #[error("Freudenthal recursion produced a non-integral multiplicity at {0:?}")]
    Freudenthal(Weight),
    #[error("negative multiplicity at weight {0:?} while peeling; input is not a representation")]
    NegativeMultiplicity(Weight),
    #[error("Cartan eigenvalue {0} is not an imaginary half-integer")]
    NonWeight(String),
    #[error("unknown space {0:?}")]
    UnknownSpace(String),
    #[error("the span of the {0} basis is not preserved")]
    NotClosed(String),
    #[error("highest weights {0:?} and {1:?} share a Casimir eigenvalue; use weight-space projection instead")]
    CasimirCollision(Weight, Weight),
    #[error("highest weight {0:?} does not occur")]
    Absent(Weight),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
