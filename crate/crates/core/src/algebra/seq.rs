use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite sequence of signed integers.
///
/// Shapes, skew shapes and raw H-subscripts all live here before they are
/// normalized into compositions.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntSeq(Vec<i64>);

impl IntSeq {
    pub fn new(entries: Vec<i64>) -> Self {
        IntSeq(entries)
    }

    pub fn zeros(len: usize) -> Self {
        IntSeq(vec![0; len])
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// Right-pads with zeros up to `len`.
    pub fn padded(&self, len: usize) -> IntSeq {
        let mut v = self.0.clone();
        if v.len() < len {
            v.resize(len, 0);
        }
        IntSeq(v)
    }

    pub fn is_all_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_weakly_decreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }
}

impl Deref for IntSeq {
    type Target = [i64];

    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for IntSeq {
    fn from(v: Vec<i64>) -> Self {
        IntSeq(v)
    }
}

impl From<&[i64]> for IntSeq {
    fn from(v: &[i64]) -> Self {
        IntSeq(v.to_vec())
    }
}

impl<const N: usize> From<[i64; N]> for IntSeq {
    fn from(v: [i64; N]) -> Self {
        IntSeq(v.to_vec())
    }
}

impl FromIterator<i64> for IntSeq {
    fn from_iter<I: IntoIterator<Item = i64>>(iter: I) -> Self {
        IntSeq(iter.into_iter().collect())
    }
}

/// Parses a comma-separated list such as `3,-1,3`. Surrounding parentheses
/// and whitespace are accepted; the empty string is the empty sequence.
impl FromStr for IntSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if body.is_empty() {
            return Ok(IntSeq::default());
        }
        body.split(',')
            .map(|tok| {
                tok.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {:?} in {:?}", tok.trim(), s)))
            })
            .collect()
    }
}

impl fmt::Display for IntSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.0.iter())
    }
}

/// A strong composition: every part is at least one. The empty composition
/// indexes the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::NonPositivePart(0));
        }
        Ok(Composition(parts))
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn from_ints(parts: &[i64]) -> Result<Self> {
        parts
            .iter()
            .map(|&p| if p >= 1 && p <= u32::MAX as i64 { Ok(p as u32) } else { Err(Error::NonPositivePart(p)) })
            .collect::<Result<Vec<_>>>()
            .map(Composition)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the parts.
    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    pub fn is_partition(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn to_int_seq(&self) -> IntSeq {
        self.0.iter().map(|&p| p as i64).collect()
    }

    /// Parts sorted weakly decreasing.
    pub fn sorted_partition(&self) -> Composition {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Composition(v)
    }

    pub fn concat(&self, other: &Composition) -> Composition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Composition(v)
    }

    /// Concatenation that merges the last part of `self` with the first part
    /// of `other`.
    pub fn near_concat(&self, other: &Composition) -> Composition {
        match (self.0.split_last(), other.0.split_first()) {
            (Some((&last, init)), Some((&first, rest))) => {
                let mut v = init.to_vec();
                v.push(last + first);
                v.extend_from_slice(rest);
                Composition(v)
            }
            _ => self.concat(other),
        }
    }

    /// All compositions of `n`, in lexicographic order.
    pub fn all_of(n: u32) -> Vec<Composition> {
        fn rec(rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
            if rem == 0 {
                out.push(Composition(cur.clone()));
                return;
            }
            for p in 1..=rem {
                cur.push(p);
                rec(rem - p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions of `n`, in lexicographic order.
    pub fn partitions_of(n: u32) -> Vec<Composition> {
        fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
            if rem == 0 {
                out.push(Composition(cur.clone()));
                return;
            }
            for p in 1..=rem.min(max) {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let seq: IntSeq = s.parse()?;
        Composition::from_ints(&seq)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.0.iter())
    }
}

fn write_tuple<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: impl Iterator<Item = T>) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in items.enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{}", x)?;
    }
    f.write_str(")")
}

/// Normalizes a raw H-subscript sequence: `H_0 = 1` drops zero entries and a
/// negative entry kills the whole monomial (`None`).
pub fn normalize_h_index(raw: &[i64]) -> Option<Composition> {
    if raw.iter().any(|&a| a < 0) {
        return None;
    }
    Some(Composition(raw.iter().filter(|&&a| a != 0).map(|&a| a as u32).collect()))
}

/// Deletes zero entries. Negative entries are rejected.
pub fn flatten(delta: &[i64]) -> Result<Composition> {
    if let Some(&neg) = delta.iter().find(|&&a| a < 0) {
        return Err(Error::NegativeEntry(neg));
    }
    Ok(normalize_h_index(delta).expect("no negative entries"))
}

/// Joins adjacent entries with `+` at each position of `positions` (1-based
/// gaps between entries `i` and `i+1`) and keeps them separate elsewhere.
pub fn coarsen(alpha: &[i64], positions: &BTreeSet<usize>) -> Result<IntSeq> {
    let len = alpha.len();
    if let Some(&bad) = positions.iter().find(|&&p| p == 0 || p >= len) {
        return Err(Error::PositionOutOfRange { position: bad, len });
    }
    Ok(coarsen_unchecked(alpha, |gap| positions.contains(&gap)))
}

fn coarsen_unchecked(alpha: &[i64], merged: impl Fn(usize) -> bool) -> IntSeq {
    let mut out: Vec<i64> = Vec::with_capacity(alpha.len());
    for (i, &a) in alpha.iter().enumerate() {
        // gap i sits between entries i and i+1 (1-based)
        if i > 0 && merged(i) {
            *out.last_mut().expect("gap follows an entry") += a;
        } else {
            out.push(a);
        }
    }
    IntSeq(out)
}

/// Every coarsening of a strong composition; `2^(len-1)` distinct results.
pub fn coarsenings(alpha: &Composition) -> BTreeSet<Composition> {
    let gaps = alpha.len().saturating_sub(1);
    let ints: Vec<i64> = alpha.parts().iter().map(|&p| p as i64).collect();
    (0u64..1 << gaps)
        .map(|mask| {
            let seq = coarsen_unchecked(&ints, |gap| mask >> (gap - 1) & 1 == 1);
            Composition::from_ints(&seq).expect("coarsening of a strong composition is strong")
        })
        .collect()
}

/// Coarsening sets `S` containing every forced gap `i-1` with `delta_i = 0`
/// whose coarsening of `delta` equals `target`.
///
/// Requires `delta_1 > 0` and no negative entries; otherwise no subset is
/// allowable and the result is empty.
pub fn allowable_flat_subsets(delta: &[i64], target: &Composition) -> Vec<BTreeSet<usize>> {
    if delta.first().is_none_or(|&d| d <= 0) || delta.iter().any(|&d| d < 0) {
        return Vec::new();
    }
    let gaps = delta.len() - 1;
    let forced: u64 = delta.iter().enumerate().filter(|&(_, &d)| d == 0).fold(0, |m, (i, _)| m | 1 << (i - 1));
    let target = target.to_int_seq();
    (0u64..1 << gaps)
        .filter(|mask| mask & forced == forced)
        .filter(|&mask| coarsen_unchecked(delta, |gap| mask >> (gap - 1) & 1 == 1) == target)
        .map(|mask| (1..=gaps).filter(|g| mask >> (g - 1) & 1 == 1).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    fn comp(v: &[u32]) -> Composition {
        Composition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_h_index(&[3, 0, 3]), Some(comp(&[3, 3])));
        assert_eq!(normalize_h_index(&[1, -1, 2]), None);
        assert_eq!(normalize_h_index(&[2, 5, 3]), Some(comp(&[2, 5, 3])));
        assert_eq!(normalize_h_index(&[0, 0]), Some(Composition::empty()));
    }

    #[test]
    fn coarsen_examples() {
        let alpha = [5, 2, 1, 4, 3, 3, 2, 6, 2, 3];
        assert_eq!(coarsen(&alpha, &set(&[2, 3, 5, 8])).unwrap(), IntSeq::from([5, 7, 6, 2, 8, 3]));
        assert_eq!(coarsen(&alpha, &set(&[])).unwrap(), IntSeq::from(&alpha[..]));
        assert_eq!(coarsen(&[1, 1], &set(&[1])).unwrap(), IntSeq::from([2]));
    }

    #[test]
    fn coarsen_rejects_bad_positions() {
        assert!(matches!(coarsen(&[1, 2, 3], &set(&[3])), Err(Error::PositionOutOfRange { position: 3, len: 3 })));
        assert!(coarsen(&[1, 2], &set(&[0])).is_err());
        assert!(coarsen(&[], &set(&[1])).is_err());
    }

    #[test]
    fn coarsenings_examples() {
        let got: Vec<_> = coarsenings(&comp(&[1, 2])).into_iter().collect();
        assert_eq!(got, vec![comp(&[1, 2]), comp(&[3])]);
        let got = coarsenings(&comp(&[1, 1, 1]));
        let want: BTreeSet<_> = [comp(&[1, 1, 1]), comp(&[2, 1]), comp(&[1, 2]), comp(&[3])].into_iter().collect();
        assert_eq!(got, want);
        assert_eq!(coarsenings(&comp(&[7])).len(), 1);
        assert_eq!(coarsenings(&Composition::empty()).len(), 1);
    }

    #[test]
    fn flatten_examples() {
        assert_eq!(flatten(&[5, 0, 3, 0, 1, 5, 0, 4]).unwrap(), comp(&[5, 3, 1, 5, 4]));
        assert_eq!(flatten(&[2, 1, 2]).unwrap(), comp(&[2, 1, 2]));
        assert_eq!(flatten(&[0, 0, 0]).unwrap(), Composition::empty());
        assert_eq!(flatten(&[1, -2]), Err(Error::NegativeEntry(-2)));
    }

    #[test]
    fn allowable_subsets_examples() {
        let delta = [5, 0, 3, 0, 1, 5, 0, 4];
        assert_eq!(allowable_flat_subsets(&delta, &comp(&[5, 3, 1, 9])), vec![set(&[1, 3, 6, 7])]);
        assert_eq!(allowable_flat_subsets(&[2, 1, 2], &comp(&[2, 1, 2])), vec![set(&[])]);
        assert_eq!(allowable_flat_subsets(&delta, &comp(&[5, 3, 1, 5, 4])), vec![set(&[1, 3, 6])]);
        // {2,3,6,7} also reaches (5,3,1,9) but skips the forced gap 1
        assert_eq!(coarsen(&delta, &set(&[2, 3, 6, 7])).unwrap(), IntSeq::from([5, 3, 1, 9]));
    }

    #[test]
    fn allowable_subsets_degenerate_inputs() {
        assert!(allowable_flat_subsets(&[0, 1], &comp(&[1])).is_empty());
        assert!(allowable_flat_subsets(&[2, -1], &comp(&[1])).is_empty());
        assert!(allowable_flat_subsets(&[2, 1], &comp(&[2, 2])).is_empty());
    }

    #[test]
    fn parse_int_seq() {
        assert_eq!("3,-1,3".parse::<IntSeq>().unwrap(), IntSeq::from([3, -1, 3]));
        assert_eq!(" (2, 5,3) ".parse::<IntSeq>().unwrap(), IntSeq::from([2, 5, 3]));
        assert_eq!("".parse::<IntSeq>().unwrap(), IntSeq::default());
        assert!("3,,1".parse::<IntSeq>().is_err());
        assert!("0,1".parse::<Composition>().is_err());
    }

    #[test]
    fn composition_enumeration_counts() {
        for n in 1..=8u32 {
            assert_eq!(Composition::all_of(n).len(), 1 << (n - 1));
        }
        let p: Vec<usize> = (1..=7).map(|n| Composition::partitions_of(n).len()).collect();
        assert_eq!(p, vec![1, 2, 3, 5, 7, 11, 15]);
    }

    #[test]
    fn near_concat() {
        assert_eq!(comp(&[1, 2]).near_concat(&comp(&[3, 1])), comp(&[1, 5, 1]));
        assert_eq!(comp(&[1, 2]).concat(&comp(&[3, 1])), comp(&[1, 2, 3, 1]));
    }
}
