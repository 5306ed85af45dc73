//! Exact computations in the basis-conjugating automorphism groups of a
//! free group: the McCool groups and their upper-triangular subgroups, the
//! split tower of projections between ranks, the associated graded Lie
//! algebras, the cohomology ring of the upper-triangular groups, and the
//! braid–permutation group.
//!
//! Everything is computed in exact integer arithmetic.  Automorphisms are
//! represented faithfully by their generator images in the free group, so
//! equality of group elements is decided by comparing reduced words.

pub mod aut;
pub mod braid;
pub mod cohomology;
pub mod graded;
pub mod lie;
pub mod linalg;
pub mod par;
pub mod relations;
pub mod series;
pub mod suites;
pub mod tower;
pub mod word;

pub use aut::{AutGenerator, Endomorphism, Factor, GroupExpression};
pub use par::{parallel_enabled, set_parallel_enabled};
pub use word::{Letter, Word};

use thiserror::Error as ThisError;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum Error {
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: u32, rank: u32 },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: u32, right: u32 },
    #[error("parse error at position {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("rank {rank} out of range: {message}")]
    RankOutOfRange { rank: u32, message: String },
    #[error("expression is not in the basis-conjugating generator set: {0}")]
    ForeignGenerator(String),
    #[error("endomorphism is not in the upper-triangular kernel: {0}")]
    NotKernelElement(String),
    #[error("automorphism is not of permutation-conjugacy type: {0}")]
    NotPermutationConjugacy(String),
    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: u32, right: u32 },
    #[error("degree {0} out of range")]
    DegreeOutOfRange(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
