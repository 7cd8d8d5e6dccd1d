use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// A permutation of `1..=k` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let k = one_line.len();
        let mut seen = vec![false; k + 1];
        for &v in &one_line {
            if v == 0 || v > k || seen[v] {
                return Err(Error::NotAPermutation(one_line));
            }
            seen[v] = true;
        }
        Ok(Permutation(one_line))
    }

    pub fn identity(k: usize) -> Self {
        Permutation((1..=k).collect())
    }

    /// All of `S_k` in lexicographic order.
    pub fn all(k: usize) -> impl Iterator<Item = Permutation> {
        (1..=k).permutations(k).map(Permutation)
    }

    pub fn one_line(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `L_i = #{j > i : sigma_j < sigma_i}`.
    pub fn lehmer_code(&self) -> Vec<usize> {
        lehmer_code(&self.0)
    }

    pub fn inversions(&self) -> usize {
        self.lehmer_code().iter().sum()
    }

    pub fn sign(&self) -> i8 {
        parity_sign(self.inversions())
    }

    /// `s_i(sigma)`: swaps the entries in positions `i` and `i+1` (1-based).
    pub fn swap_adjacent(&self, i: usize) -> Result<Permutation> {
        let k = self.0.len();
        if i == 0 || i >= k {
            return Err(Error::IndexOutOfRange { index: i, k });
        }
        let mut v = self.0.clone();
        v.swap(i - 1, i);
        Ok(Permutation(v))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

fn lehmer_code(v: &[usize]) -> Vec<usize> {
    v.iter().enumerate().map(|(i, &a)| v[i + 1..].iter().filter(|&&b| b < a).count()).collect()
}

pub fn parity_sign(count: usize) -> i8 {
    if count % 2 == 0 {
        1
    } else {
        -1
    }
}

/// An ordered arrangement of `m` distinct values from `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearPermutation {
    chosen: Vec<usize>,
    universe: usize,
}

impl LinearPermutation {
    pub fn new(chosen: Vec<usize>, universe: usize) -> Result<Self> {
        if chosen.len() > universe {
            return Err(Error::InvalidArrangement { m: chosen.len(), k: universe });
        }
        let mut seen = vec![false; universe + 1];
        for &v in &chosen {
            if v == 0 || v > universe || seen[v] {
                return Err(Error::NotAPermutation(chosen));
            }
            seen[v] = true;
        }
        Ok(LinearPermutation { chosen, universe })
    }

    pub fn chosen(&self) -> &[usize] {
        &self.chosen
    }

    pub fn universe_size(&self) -> usize {
        self.universe
    }

    /// Inversions among the chosen entries plus pairs `(pi_i, q)` with `q`
    /// unused and `q < pi_i`.
    pub fn inversions(&self) -> usize {
        let internal: usize = lehmer_code(&self.chosen).iter().sum();
        let unused: Vec<usize> = (1..=self.universe).filter(|v| !self.chosen.contains(v)).collect();
        let external: usize = self.chosen.iter().map(|&a| unused.iter().filter(|&&q| q < a).count()).sum();
        internal + external
    }

    pub fn sign(&self) -> i8 {
        parity_sign(self.inversions())
    }
}

/// All `k!/(k-m)!` linear permutations, lexicographically.
pub fn linear_permutations(k: usize, m: usize) -> Result<impl Iterator<Item = LinearPermutation>> {
    if m > k {
        return Err(Error::InvalidArrangement { m, k });
    }
    Ok((1..=k).permutations(m).map(move |chosen| LinearPermutation { chosen, universe: k }))
}
