use thiserror::Error;

use crate::algebra::Basis;
use crate::diagram::Cell;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("basis mismatch: expected {expected}, found {found}")]
    BasisMismatch { expected: Basis, found: Basis },

    #[error("length mismatch: shape has {mu} entries but skew has {nu}")]
    LengthMismatch { mu: usize, nu: usize },

    #[error("skew entries must be nonnegative, found {0}")]
    NegativeSkew(i64),

    #[error("skew entries {0:?} are not weakly decreasing from row {1}")]
    TailNotPartition(Vec<i64>, usize),

    #[error("row offset {offset} out of range for {rows} rows")]
    OffsetOutOfRange { offset: usize, rows: usize },

    #[error("cell ({}, {}) is not a tunnel cell of the diagram", .0.row, .0.col)]
    NotATunnelCell(Cell),

    #[error("length {k} exceeds the enumeration bound {max}")]
    BoundExceeded { k: usize, max: usize },

    #[error("bound {0} exceeds the hard ceiling of {ceiling}", ceiling = crate::HARD_MAX_K)]
    BoundTooLarge(usize),

    #[error("coarsening position {position} out of range for a sequence of length {len}")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("sequence has a negative entry {0}")]
    NegativeEntry(i64),

    #[error("composition parts must be positive, found {0}")]
    NonPositivePart(i64),

    #[error("{0:?} is not a permutation of 1..={len}", len = .0.len())]
    NotAPermutation(Vec<usize>),

    #[error("permutation length {sigma} does not match shape length {mu}")]
    PermutationLength { sigma: usize, mu: usize },

    #[error("the permutation labelling is only defined for coverings of unskewed shapes")]
    SkewCovering,

    #[error("transposition index {index} out of range for length {k}")]
    IndexOutOfRange { index: usize, k: usize },

    #[error("prefix length {m} out of range for a shape of length {k}")]
    PrefixOutOfRange { m: usize, k: usize },

    #[error("{0:?} is outside the class where the direct ribbon formula is proven")]
    ClassViolation(Vec<u32>),

    #[error("ribbon product factors must be nonempty")]
    EmptyFactor,

    #[error("linear permutation needs m <= k, got m = {m}, k = {k}")]
    InvalidArrangement { m: usize, k: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
