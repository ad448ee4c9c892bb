//! Permutation calculus and the monodromy model of branched covers of the line.

mod cover;
mod iso;
mod nodal;
mod perm;

pub use cover::{points_over, BranchPoint, BranchedCover, Component, CoverPoint};
pub use iso::{are_isomorphic, find_isomorphism};
pub use nodal::{NodalCoverModel, Node};
pub use perm::{orbits, Permutation};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("duplicate branch label {0}")]
    DuplicateLabel(String),
    #[error("identity monodromy at label {0}")]
    IdentityMonodromy(String),
    #[error("ordered product of the monodromy is not the identity")]
    ProductNotIdentity,
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("cover is disconnected")]
    Disconnected,
    #[error("total ramification degree {0} is odd")]
    OddRamification(usize),
    #[error("branch labels differ: {0}")]
    LabelMismatch(String),
    #[error("invalid node: {0}")]
    InvalidNode(String),
}
