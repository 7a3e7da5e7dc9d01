//! Comparison-counting Shellsort.
//!
//! A pass with increment `h` runs linear insertion sort on every residue
//! class of positions mod `h`. Inserting an element into its sorted gapped
//! prefix costs one comparison per larger prefix element, plus one more when
//! it stops before reaching the front of its class.

use serde::{Deserialize, Serialize};

use crate::combin::factorial;
use crate::error::{Error, Result};
use crate::exec::{self, Buf, Cursor, ExecConfig, Space, BUF, MAX_N};
use crate::gapseq::GapSequence;

/// An arrangement of `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            let slot = (v as usize)
                .checked_sub(1)
                .and_then(|k| seen.get_mut(k))
                .ok_or_else(|| Error::MalformedPermutation(format!("value {v} outside 1..={n}")))?;
            if std::mem::replace(slot, true) {
                return Err(Error::MalformedPermutation(format!("value {v} repeated")));
            }
        }
        Ok(Permutation { values })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n as u32).collect(),
        }
    }

    pub fn reversed(n: usize) -> Self {
        Permutation {
            values: (1..=n as u32).rev().collect(),
        }
    }

    /// Builds from zero-based values; the caller guarantees a bijection.
    pub(crate) fn from_zero_based(buf: &[u8]) -> Self {
        Permutation {
            values: buf.iter().map(|&v| v as u32 + 1).collect(),
        }
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().enumerate().all(|(k, &v)| v as usize == k + 1)
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(values: Vec<u32>) -> Result<Self> {
        Permutation::new(values)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Vec<u32> {
        p.values
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PassCount {
    pub increment: u32,
    pub comparisons: u64,
}

/// Full record of one Shellsort run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SortTrace {
    pub total_comparisons: u64,
    pub per_pass: Vec<PassCount>,
    pub result: Permutation,
    /// State after the largest increment's pass; the input itself when the
    /// sequence is empty.
    pub intermediate_after_first_pass: Permutation,
}

/// One gapped insertion-sort pass over `values`, returning its comparisons.
pub fn gapped_insertion_pass<T: Ord + Copy>(values: &mut [T], gap: usize) -> u64 {
    let mut comparisons = 0;
    for i in gap..values.len() {
        let x = values[i];
        let mut j = i;
        while j >= gap {
            comparisons += 1;
            let y = values[j - gap];
            if y > x {
                values[j] = y;
                j -= gap;
            } else {
                break;
            }
        }
        values[j] = x;
    }
    comparisons
}

/// Hot-path variant of the passes over the first `n` slots of a buffer.
///
/// Instead of simulating each insertion, every class is swept once with a
/// bitmask of the values already seen: inserting `x` costs the number of
/// larger values seen, plus one if some smaller value was seen. The class is
/// then rewritten in ascending order straight from the mask. The final pass
/// only needs the count.
#[inline(always)]
pub(crate) fn sort_count(buf: &mut Buf, n: usize, gaps: &[u32]) -> u32 {
    const MASK: usize = BUF - 1;
    let mut comparisons = 0u32;
    let last = gaps.len().wrapping_sub(1);
    for (pass, &gap) in gaps.iter().enumerate() {
        let gap = gap as usize;
        for class in 0..gap.min(n) {
            let mut seen = 0u32;
            let mut pos = class;
            while pos < n {
                let x = buf[pos & MASK] as u32;
                comparisons += (seen >> x).count_ones() + ((seen & ((1u32 << x) - 1)) != 0) as u32;
                seen |= 1 << x;
                pos += gap;
            }
            if pass != last {
                let mut pos = class;
                while seen != 0 {
                    buf[pos & MASK] = seen.trailing_zeros() as u8;
                    seen &= seen - 1;
                    pos += gap;
                }
            }
        }
    }
    comparisons
}

/// Sorts `p` with `s`, counting comparisons pass by pass.
pub fn shellsort_count(p: &Permutation, s: &GapSequence) -> Result<SortTrace> {
    s.check_valid_for_n(p.len())?;
    let mut values = p.values.clone();
    let mut per_pass = Vec::with_capacity(s.len());
    let mut after_first = None;
    for &h in s.descending() {
        let comparisons = gapped_insertion_pass(&mut values, h as usize);
        per_pass.push(PassCount {
            increment: h,
            comparisons,
        });
        if after_first.is_none() {
            after_first = Some(values.clone());
        }
    }
    Ok(SortTrace {
        total_comparisons: per_pass.iter().map(|p| p.comparisons).sum(),
        per_pass,
        intermediate_after_first_pass: Permutation {
            values: after_first.unwrap_or_else(|| p.values.clone()),
        },
        result: Permutation { values },
    })
}

/// All `n!` permutations of `0..n` in lexicographic order.
#[derive(Clone, Copy, Debug)]
pub(crate) struct FullSpace {
    n: usize,
    len: u128,
}

impl FullSpace {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_N);
        FullSpace {
            n,
            len: factorial(n as u32),
        }
    }
}

pub(crate) struct FullCursor {
    perm: Buf,
    n: usize,
}

impl Space for FullSpace {
    type Cursor = FullCursor;

    fn n(&self) -> usize {
        self.n
    }

    fn len(&self) -> u128 {
        self.len
    }

    fn cursor_at(&self, mut rank: u128) -> FullCursor {
        let n = self.n;
        let mut pool: Vec<u8> = (0..n as u8).collect();
        let mut perm: Buf = [0; BUF];
        for (k, slot) in perm.iter_mut().enumerate().take(n) {
            let block = factorial((n - 1 - k) as u32);
            let pick = (rank / block) as usize;
            rank %= block;
            *slot = pool.remove(pick);
        }
        FullCursor { perm, n }
    }
}

impl Cursor for FullCursor {
    #[inline(always)]
    fn load(&self, buf: &mut Buf) {
        *buf = self.perm;
    }

    fn advance(&mut self) -> bool {
        next_permutation(&mut self.perm[..self.n])
    }
}

/// Lexicographic successor in place; false (and unchanged) at the last one.
pub(crate) fn next_permutation(w: &mut [u8]) -> bool {
    let n = w.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && w[i - 1] >= w[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while w[j] <= w[i - 1] {
        j -= 1;
    }
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

pub(crate) fn check_full_space(n: usize, cfg: &ExecConfig) -> Result<()> {
    if n > cfg.full_space_max_n || n > MAX_N {
        return Err(Error::Capacity {
            what: format!("the full permutation space for n = {n}"),
            cardinality: crate::combin::big_factorial(n as u32),
            limit: format!("n <= {}", cfg.full_space_max_n.min(MAX_N)),
        });
    }
    Ok(())
}

/// Worst-case comparisons of `s` over every permutation of `n` elements.
pub fn max_comparisons_full(n: usize, s: &GapSequence, cfg: &ExecConfig) -> Result<u64> {
    if n == 0 {
        return Err(Error::UnsupportedN {
            n,
            min: 1,
            max: MAX_N,
        });
    }
    s.check_valid_for_n(n)?;
    check_full_space(n, cfg)?;
    let space = FullSpace::new(n);
    let scan = exec::scan_max(&space, space.len(), s.descending(), 0, None, cfg.jobs);
    Ok(scan.max as u64)
}
