//! Gap sequences and their canonical integer index.
//!
//! Every finite set of increments containing 1 has a unique index `i >= 1`:
//! increment `k >= 2` is present exactly when bit `k - 2` of `i - 1` is set.
//! Enumerating `i = 1 ..= 2^(n-2)` therefore visits every sequence whose
//! largest increment is at most `n - 1`, in an order that does not depend on
//! `n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest increment that still has an index representable in a `u64`.
pub const MAX_INDEXABLE_INCREMENT: u32 = 64;

/// Canonical integer index of a gap sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct SequenceIndex(u64);

impl SequenceIndex {
    pub fn new(i: u64) -> Result<Self> {
        if i == 0 {
            return Err(Error::ZeroIndex);
        }
        Ok(SequenceIndex(i))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// Number of indices whose sequences are valid for `n`, i.e. `2^(n-2)`.
    /// Zero for `n = 1`, where only the empty sequence exists.
    pub fn count_for_n(n: usize) -> u64 {
        match n {
            0 | 1 => 0,
            _ => 1u64 << (n - 2),
        }
    }
}

impl TryFrom<u64> for SequenceIndex {
    type Error = Error;

    fn try_from(i: u64) -> Result<Self> {
        SequenceIndex::new(i)
    }
}

impl From<SequenceIndex> for u64 {
    fn from(i: SequenceIndex) -> u64 {
        i.0
    }
}

impl fmt::Display for SequenceIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A finite set of increments containing 1, stored largest first.
///
/// The empty sequence is the degenerate sequence for `n = 1`; it has no
/// index and sorts nothing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GapSequence {
    descending: Vec<u32>,
}

impl GapSequence {
    pub fn new<I: IntoIterator<Item = u32>>(increments: I) -> Result<Self> {
        let mut descending: Vec<u32> = increments.into_iter().collect();
        if descending.iter().any(|&h| h == 0) {
            return Err(Error::InvalidIncrement);
        }
        descending.sort_unstable_by(|a, b| b.cmp(a));
        let len = descending.len();
        descending.dedup();
        if descending.len() != len {
            return Err(Error::InvalidIncrement);
        }
        if descending.last() != Some(&1) {
            return Err(Error::MissingUnitIncrement);
        }
        Ok(GapSequence { descending })
    }

    pub fn empty() -> Self {
        GapSequence::default()
    }

    /// Plain insertion sort.
    pub fn unit() -> Self {
        GapSequence { descending: vec![1] }
    }

    pub fn from_index(i: SequenceIndex) -> Self {
        let bits = i.get() - 1;
        let mut descending: Vec<u32> = (0..64)
            .filter(|b| bits >> b & 1 == 1)
            .map(|b| b + 2)
            .rev()
            .collect();
        descending.push(1);
        GapSequence { descending }
    }

    /// `None` for the empty sequence.
    pub fn index(&self) -> Option<SequenceIndex> {
        self.try_index().ok()
    }

    pub fn try_index(&self) -> Result<SequenceIndex> {
        if self.is_empty() {
            return Err(Error::MissingUnitIncrement);
        }
        let mut bits = 0u64;
        for &h in self.descending.iter().filter(|&&h| h >= 2) {
            if h > MAX_INDEXABLE_INCREMENT {
                return Err(Error::IndexOverflow(h));
            }
            bits |= 1u64 << (h - 2);
        }
        // bits <= 2^63 - 1, so the increment cannot overflow
        SequenceIndex::new(bits + 1)
    }

    pub fn is_empty(&self) -> bool {
        self.descending.is_empty()
    }

    pub fn len(&self) -> usize {
        self.descending.len()
    }

    /// The `k`-th largest increment, 1-based: `nth_largest(1)` is the maximum.
    pub fn nth_largest(&self, k: usize) -> Option<u32> {
        k.checked_sub(1).and_then(|k| self.descending.get(k).copied())
    }

    pub fn largest(&self) -> Option<u32> {
        self.nth_largest(1)
    }

    /// Increments in pass order (largest first).
    pub fn descending(&self) -> &[u32] {
        &self.descending
    }

    pub fn ascending(&self) -> impl Iterator<Item = u32> + '_ {
        self.descending.iter().rev().copied()
    }

    pub fn contains(&self, h: u32) -> bool {
        self.descending.contains(&h)
    }

    /// Whether the sequence may be used to sort `n` elements: it contains 1
    /// and no increment exceeds `n - 1`. The empty sequence is accepted only
    /// for `n = 1`.
    pub fn is_valid_for_n(&self, n: usize) -> bool {
        match self.largest() {
            None => n == 1,
            Some(max) => self.contains(1) && (max as usize) < n,
        }
    }

    pub fn check_valid_for_n(&self, n: usize) -> Result<()> {
        if self.is_valid_for_n(n) {
            Ok(())
        } else {
            Err(Error::SequenceNotValidForN {
                sequence: self.to_string(),
                n,
            })
        }
    }
}

/// `s_i` for the given index.
pub fn sequence_from_index(i: u64) -> Result<GapSequence> {
    Ok(GapSequence::from_index(SequenceIndex::new(i)?))
}

/// Inverse of [`sequence_from_index`].
pub fn index_of_sequence(s: &GapSequence) -> Result<SequenceIndex> {
    s.try_index()
}

pub fn is_valid_for_n(s: &GapSequence, n: usize) -> bool {
    s.is_valid_for_n(n)
}

/// Renders increments ascending, comma separated: `1, 3, 7, 11`.
impl fmt::Display for GapSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, h) in self.ascending().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{h}")?;
        }
        Ok(())
    }
}

impl FromStr for GapSequence {
    type Err = Error;

    /// Accepts comma separated increments in any order; an empty or blank
    /// string is the empty sequence.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(GapSequence::empty());
        }
        let increments = s
            .split(',')
            .map(|tok| tok.trim().parse::<u32>().map_err(|_| Error::InvalidIncrement))
            .collect::<Result<Vec<_>>>()?;
        GapSequence::new(increments)
    }
}

impl Serialize for GapSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.ascending())
    }
}

impl<'de> Deserialize<'de> for GapSequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let increments = Vec::<u32>::deserialize(deserializer)?;
        if increments.is_empty() {
            return Ok(GapSequence::empty());
        }
        GapSequence::new(increments).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[u32]) -> GapSequence {
        GapSequence::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn listed_indices() {
        // first eighteen indices as tabulated alongside the search results
        let table: [(u64, &[u32]); 18] = [
            (1, &[1]),
            (2, &[1, 2]),
            (3, &[1, 3]),
            (4, &[1, 2, 3]),
            (5, &[1, 4]),
            (6, &[1, 2, 4]),
            (7, &[1, 3, 4]),
            (8, &[1, 2, 3, 4]),
            (9, &[1, 5]),
            (10, &[1, 2, 5]),
            (11, &[1, 3, 5]),
            (12, &[1, 2, 3, 5]),
            (13, &[1, 4, 5]),
            (14, &[1, 2, 4, 5]),
            (15, &[1, 3, 4, 5]),
            (16, &[1, 2, 3, 4, 5]),
            (17, &[1, 6]),
            (18, &[1, 2, 6]),
        ];
        for (i, incs) in table {
            assert_eq!(sequence_from_index(i).unwrap(), seq(incs), "i = {i}");
            assert_eq!(index_of_sequence(&seq(incs)).unwrap().get(), i);
        }
    }

    #[test]
    fn index_examples() {
        assert_eq!(index_of_sequence(&seq(&[1])).unwrap().get(), 1);
        assert_eq!(index_of_sequence(&seq(&[1, 5, 7])).unwrap().get(), 41);
        assert_eq!(index_of_sequence(&seq(&[1, 3, 7, 11])).unwrap().get(), 547);
        assert_eq!(index_of_sequence(&seq(&[1, 4, 7, 9])).unwrap().get(), 165);
    }

    #[test]
    fn zero_index_rejected() {
        assert!(matches!(sequence_from_index(0), Err(Error::ZeroIndex)));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            GapSequence::new([2, 4]),
            Err(Error::MissingUnitIncrement)
        ));
        assert!(matches!(GapSequence::new([1, 0]), Err(Error::InvalidIncrement)));
        assert!(matches!(
            GapSequence::new([1, 4, 4]),
            Err(Error::InvalidIncrement)
        ));
        assert!(matches!(seq(&[1, 65]).try_index(), Err(Error::IndexOverflow(65))));
        assert!(GapSequence::empty().index().is_none());
    }

    #[test]
    fn validity_for_n() {
        assert!(seq(&[1, 4]).is_valid_for_n(6));
        assert!(!seq(&[1, 4]).is_valid_for_n(4));
        // a sequence without 1 cannot be constructed, the empty one stands in
        assert!(!GapSequence::empty().is_valid_for_n(8));
        assert!(GapSequence::empty().is_valid_for_n(1));
        assert!(!GapSequence::unit().is_valid_for_n(1));
    }

    #[test]
    fn accessors() {
        let s = seq(&[11, 1, 7, 3]);
        assert_eq!(s.descending(), &[11, 7, 3, 1]);
        assert_eq!(s.nth_largest(1), Some(11));
        assert_eq!(s.nth_largest(2), Some(7));
        assert_eq!(s.nth_largest(0), None);
        assert_eq!(s.nth_largest(5), None);
        assert_eq!(s.to_string(), "1, 3, 7, 11");
    }

    #[test]
    fn parse_and_serde() {
        let s: GapSequence = " 4,1 ".parse().unwrap();
        assert_eq!(s, seq(&[1, 4]));
        assert!("".parse::<GapSequence>().unwrap().is_empty());
        assert!("1,x".parse::<GapSequence>().is_err());
        let json = serde_json::to_string(&seq(&[1, 3, 7, 11])).unwrap();
        assert_eq!(json, "[1,3,7,11]");
        let back: GapSequence = serde_json::from_str(&json).unwrap();
        assert_eq!(back, seq(&[1, 3, 7, 11]));
        assert!(serde_json::from_str::<SequenceIndex>("0").is_err());
    }

    #[test]
    fn indices_cover_exactly_the_valid_sequences() {
        for n in 2..=12usize {
            let mut from_index: Vec<Vec<u32>> = (1..=SequenceIndex::count_for_n(n))
                .map(|i| sequence_from_index(i).unwrap().ascending().collect())
                .collect();
            from_index.sort();
            // every subset of 2..=n-1, plus 1
            let mut subsets: Vec<Vec<u32>> = (0u64..1 << (n - 2))
                .map(|mask| {
                    std::iter::once(1)
                        .chain((2..n as u32).filter(|k| mask >> (k - 2) & 1 == 1))
                        .collect()
                })
                .collect();
            subsets.sort();
            assert_eq!(from_index, subsets, "n = {n}");
            assert!(from_index
                .iter()
                .all(|v| GapSequence::new(v.clone()).unwrap().is_valid_for_n(n)));
        }
    }

    #[test]
    fn roundtrip_first_million_indices() {
        for i in 1..=(1u64 << 20) {
            let s = sequence_from_index(i).unwrap();
            assert_eq!(index_of_sequence(&s).unwrap().get(), i);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn sequence_roundtrip(extra in proptest::collection::btree_set(2u32..=22, 0..12)) {
                let s = GapSequence::new(std::iter::once(1).chain(extra)).unwrap();
                let i = index_of_sequence(&s).unwrap();
                prop_assert_eq!(GapSequence::from_index(i), s);
            }

            #[test]
            fn display_parse_roundtrip(i in 1u64..1 << 30) {
                let s = GapSequence::from_index(SequenceIndex::new(i).unwrap());
                prop_assert_eq!(s.to_string().parse::<GapSequence>().unwrap(), s);
            }
        }
    }
}
