//! Sequences, compositions, permutations and formal linear combinations.

mod expr;
mod perm;
mod seq;

pub use expr::{expr_add, h_multiply, Basis, BasisExpr};
pub use perm::{linear_permutations, parity_sign, LinearPermutation, Permutation};
pub use seq::{allowable_flat_subsets, coarsen, coarsenings, flatten, normalize_h_index, Composition, IntSeq};
