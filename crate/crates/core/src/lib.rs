//! Exact expansions in the algebra of noncommutative symmetric functions.
//!
//! Immaculate functions are expanded in the H basis by enumerating tunnel
//! hook coverings of grey-blue-purple-red diagrams. Everything else (skew
//! shapes, the dual immaculate expansion of monomials, ribbon expansions)
//! is built on that enumeration. The [`oracles`] module holds independent
//! determinant computations used to check the results.

pub mod algebra;
pub mod diagram;
pub mod error;
pub mod expansions;
pub mod oracles;
pub mod ribbon;
pub mod thc;
pub mod verify;

pub use algebra::{Basis, BasisExpr, Composition, IntSeq, LinearPermutation, Permutation};
pub use error::{Error, Result};

/// Default bound on the number of rows enumerated.
pub const DEFAULT_MAX_K: usize = 10;

/// No bound above this is accepted; 12! coverings is already ~479M.
pub const HARD_MAX_K: usize = 12;

/// Knobs shared by the enumeration-heavy operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub max_k: usize,
    /// Worker threads for covering folds; `1` keeps everything on the
    /// calling thread.
    pub jobs: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { max_k: DEFAULT_MAX_K, jobs: 1 }
    }
}

impl Options {
    pub fn with_max_k(max_k: usize) -> Result<Self> {
        if max_k > HARD_MAX_K {
            return Err(Error::BoundTooLarge(max_k));
        }
        Ok(Options { max_k, ..Options::default() })
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    pub(crate) fn check(&self, k: usize) -> Result<()> {
        if self.max_k > HARD_MAX_K {
            return Err(Error::BoundTooLarge(self.max_k));
        }
        if k > self.max_k {
            return Err(Error::BoundExceeded { k, max: self.max_k });
        }
        Ok(())
    }
}
