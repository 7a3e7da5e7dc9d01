//! The reduced permutation space for a gap sequence with largest increment `h`.
//!
//! A permutation is *Bad (s,1)-sorted* when every residue class of positions
//! mod `h` holds a strictly decreasing subsequence: the unique input on which
//! the first pass does the most work. Such a permutation is fixed by which
//! values land in which class, so the space is counted by the multinomial
//! `n! / Π m_j!` with class sizes `m_j = ceil((n - j) / h)`.
//!
//! Elements are addressed by the *label word* `w`, where `w[v]` is the class
//! holding value `v`. Rank 0 is the lexicographically largest word and ranks
//! increase in decreasing lexicographic order. Starting from the words that
//! put small values in high classes reaches near-reversed arrangements first,
//! which is what makes bounded evaluation stop early.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::combin::{big_multinomial, multinomial};
use crate::engine::Permutation;
use crate::error::{Error, Result};
use crate::exec::{self, Buf, Cursor, ExecConfig, MaxScan, Space, BUF, MAX_N};
use crate::gapseq::GapSequence;

/// Shape and size of the reduced space for `(n, h)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedSpaceSpec {
    pub n: usize,
    pub h: usize,
    pub class_sizes: Vec<usize>,
    pub cardinality: BigUint,
}

impl ReducedSpaceSpec {
    pub fn new(n: usize, h: usize) -> Result<Self> {
        let in_range = (h >= 1 && h < n) || (h == 1 && n == 1);
        if !in_range {
            return Err(Error::IncrementOutOfRange { h, n });
        }
        let class_sizes: Vec<usize> = (0..h).map(|j| (n - j).div_ceil(h)).collect();
        let cardinality = big_multinomial(&class_sizes);
        Ok(ReducedSpaceSpec {
            n,
            h,
            class_sizes,
            cardinality,
        })
    }

    /// Comparisons spent by the first pass on every member of the space.
    pub fn first_pass_comparisons(&self) -> u64 {
        self.class_sizes
            .iter()
            .map(|&m| (m * m.saturating_sub(1) / 2) as u64)
            .sum()
    }

    fn check_budget(&self, budget: u128) -> Result<()> {
        if self.cardinality > BigUint::from(budget) {
            return Err(Error::Capacity {
                what: format!(
                    "the reduced space for n = {}, largest increment {}",
                    self.n, self.h
                ),
                cardinality: self.cardinality.clone(),
                limit: budget.to_string(),
            });
        }
        Ok(())
    }
}

/// `|P_{n,(s,1)}|` for any sequence whose largest increment is `h`.
pub fn bad1_count(n: usize, h: usize) -> Result<BigUint> {
    Ok(ReducedSpaceSpec::new(n, h)?.cardinality)
}

fn classes_strictly_decreasing<T: Ord>(values: &[T], h: usize) -> bool {
    (h..values.len()).all(|j| values[j - h] > values[j])
}

/// Whether every residue class of positions mod `h` is strictly decreasing.
pub fn is_bad1(p: &Permutation, h: usize) -> bool {
    h >= 1 && h <= p.len() && classes_strictly_decreasing(p.values(), h)
}

#[derive(Clone, Debug)]
pub(crate) struct ReducedSpace {
    n: usize,
    h: usize,
    sizes: [u8; MAX_N],
    len: u128,
}

impl ReducedSpace {
    pub fn new(spec: &ReducedSpaceSpec) -> Result<Self> {
        if spec.n > MAX_N {
            return Err(Error::UnsupportedN {
                n: spec.n,
                min: 1,
                max: MAX_N,
            });
        }
        let mut sizes = [0u8; MAX_N];
        for (slot, &m) in sizes.iter_mut().zip(&spec.class_sizes) {
            *slot = m as u8;
        }
        Ok(ReducedSpace {
            n: spec.n,
            h: spec.h,
            sizes,
            len: multinomial(&spec.class_sizes).expect("n <= 30 fits u128"),
        })
    }
}

#[derive(Clone, Debug)]
pub(crate) struct ReducedCursor {
    word: Buf,
    /// Highest slot of each class.
    top_slot: Buf,
    /// State after the first pass: every class ascending.
    after_first: Buf,
    n: usize,
    h: usize,
}

const MASK: usize = BUF - 1;

impl ReducedCursor {
    fn new(word: Buf, n: usize, h: usize) -> Self {
        let mut top_slot: Buf = [0; BUF];
        for (c, slot) in top_slot.iter_mut().enumerate().take(h) {
            *slot = (c + h * ((n - c).div_ceil(h) - 1)) as u8;
        }
        let mut cursor = ReducedCursor {
            word,
            top_slot,
            after_first: [0; BUF],
            n,
            h,
        };
        cursor.place_from(0);
        cursor
    }

    /// Re-places values `from..n`. Smaller values keep their class and
    /// their rank within it, so the larger ones fill each class from the top.
    #[inline(always)]
    fn place_from(&mut self, from: usize) {
        let mut top = self.top_slot;
        for v in (from..self.n).rev() {
            let c = self.word[v & MASK] as usize & MASK;
            self.after_first[top[c] as usize & MASK] = v as u8;
            top[c] = top[c].wrapping_sub(self.h as u8);
        }
    }

    /// The Bad permutation itself: each class descending.
    fn load_original(&self, buf: &mut Buf) {
        let mut next: Buf = [0; BUF];
        for (c, slot) in next.iter_mut().enumerate().take(self.h) {
            *slot = c as u8;
        }
        for v in (0..self.n).rev() {
            let c = self.word[v] as usize;
            buf[next[c] as usize] = v as u8;
            next[c] += self.h as u8;
        }
    }
}

impl Space for ReducedSpace {
    type Cursor = ReducedCursor;

    fn n(&self) -> usize {
        self.n
    }

    fn len(&self) -> u128 {
        self.len
    }

    fn cursor_at(&self, mut rank: u128) -> ReducedCursor {
        let mut remaining = self.sizes;
        let mut total = self.n as u128;
        let mut count = self.len;
        let mut word: Buf = [0; BUF];
        for slot in word.iter_mut().take(self.n) {
            for c in (0..self.h).rev() {
                let m = remaining[c] as u128;
                if m == 0 {
                    continue;
                }
                let with_c = count * m / total;
                if rank < with_c {
                    *slot = c as u8;
                    count = with_c;
                    remaining[c] -= 1;
                    total -= 1;
                    break;
                }
                rank -= with_c;
            }
        }
        ReducedCursor::new(word, self.n, self.h)
    }
}

impl Cursor for ReducedCursor {
    #[inline(always)]
    fn load(&self, buf: &mut Buf) {
        *buf = self.after_first;
    }

    #[inline(always)]
    fn advance(&mut self) -> bool {
        let n = self.n;
        let Some(pivot) = predecessor_pivot(&self.word[..n]) else {
            return false;
        };
        step_to_predecessor(&mut self.word[..n], pivot);
        self.place_from(pivot);
        true
    }
}

/// First position changed by the lexicographic predecessor, if any.
#[inline(always)]
fn predecessor_pivot(w: &[u8]) -> Option<usize> {
    let mut i = w.len();
    while i > 1 && w[i - 2] <= w[i - 1] {
        i -= 1;
    }
    (i > 1).then(|| i - 2)
}

#[inline(always)]
fn step_to_predecessor(w: &mut [u8], pivot: usize) {
    let mut j = w.len() - 1;
    while w[j] >= w[pivot] {
        j -= 1;
    }
    w.swap(pivot, j);
    w[pivot + 1..].reverse();
}

/// Stream over a contiguous rank range of the reduced space.
#[derive(Clone, Debug)]
pub struct Bad1Stream {
    space: ReducedSpace,
    cursor: ReducedCursor,
    start: u128,
    end: u128,
    next: u128,
}

impl Bad1Stream {
    fn over(space: ReducedSpace, start: u128, end: u128) -> Self {
        let cursor = space.cursor_at(start);
        Bad1Stream {
            space,
            cursor,
            start,
            end,
            next: start,
        }
    }

    /// Total number of elements in this stream's range.
    pub fn range_len(&self) -> u128 {
        self.end - self.start
    }

    pub fn rank_range(&self) -> std::ops::Range<u128> {
        self.start..self.end
    }

    /// Cuts the remaining range into `k` contiguous sub-streams whose
    /// concatenation is this stream.
    pub fn split(self, k: usize) -> Vec<Bad1Stream> {
        let k = k.max(1) as u128;
        let len = self.end - self.next;
        (0..k)
            .map(|part| {
                let lo = self.next + len * part / k;
                let hi = self.next + len * (part + 1) / k;
                Bad1Stream::over(self.space.clone(), lo, hi)
            })
            .collect()
    }
}

impl Iterator for Bad1Stream {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.next >= self.end {
            return None;
        }
        let mut buf: Buf = [0; BUF];
        self.cursor.load_original(&mut buf);
        self.next += 1;
        if self.next < self.end {
            self.cursor.advance();
        }
        Some(Permutation::from_zero_based(&buf[..self.space.n]))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = usize::try_from(self.end - self.next).ok();
        (left.unwrap_or(usize::MAX), left)
    }
}

/// Every Bad (s,1)-sorted permutation for largest increment `h`, provided
/// the space has at most `budget` elements.
pub fn enumerate_bad1(n: usize, h: usize, budget: u128) -> Result<Bad1Stream> {
    let spec = ReducedSpaceSpec::new(n, h)?;
    spec.check_budget(budget)?;
    let space = ReducedSpace::new(&spec)?;
    let len = space.len;
    Ok(Bad1Stream::over(space, 0, len))
}

/// Result of a bounded worst-case evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedMax {
    /// The exact maximum, or the bound itself once it has been reached.
    pub max: u64,
    pub exceeded: bool,
}

pub(crate) struct PreparedSequence {
    pub space: ReducedSpace,
    pub spec: ReducedSpaceSpec,
    pub tail: Vec<u32>,
    pub offset: u32,
}

pub(crate) fn prepare(n: usize, s: &GapSequence) -> Result<Option<PreparedSequence>> {
    if n == 0 || n > MAX_N {
        return Err(Error::UnsupportedN {
            n,
            min: 1,
            max: MAX_N,
        });
    }
    s.check_valid_for_n(n)?;
    let Some(h) = s.largest() else {
        return Ok(None);
    };
    let spec = ReducedSpaceSpec::new(n, h as usize)?;
    let space = ReducedSpace::new(&spec)?;
    Ok(Some(PreparedSequence {
        space,
        offset: spec.first_pass_comparisons() as u32,
        spec,
        tail: s.descending()[1..].to_vec(),
    }))
}

impl PreparedSequence {
    pub fn len(&self) -> u128 {
        self.space.len
    }

    pub fn scan(&self, end: u128, bound: Option<u32>, jobs: usize) -> MaxScan {
        exec::scan_max(&self.space, end, &self.tail, self.offset, bound, jobs)
    }
}

/// Worst case of `s` over its reduced space. With `stop_at_bound`, returns
/// as soon as any element reaches the bound, reporting `exceeded`.
pub fn max_comparisons_reduced(
    n: usize,
    s: &GapSequence,
    stop_at_bound: Option<u64>,
    cfg: &ExecConfig,
) -> Result<ReducedMax> {
    let Some(prepared) = prepare(n, s)? else {
        return Ok(ReducedMax {
            max: 0,
            exceeded: stop_at_bound == Some(0),
        });
    };
    prepared.spec.check_budget(cfg.enumeration_budget)?;
    let bound = stop_at_bound.map(|b| b.min(u32::MAX as u64) as u32);
    let scan = prepared.scan(prepared.len(), bound, cfg.jobs);
    Ok(match (scan.first_hit, bound) {
        (Some(_), Some(b)) => ReducedMax {
            max: b as u64,
            exceeded: true,
        },
        _ => ReducedMax {
            max: scan.max as u64,
            exceeded: false,
        },
    })
}

/// Members of the reduced space whose state after the first pass is itself
/// Bad (s(2),1)-sorted.
#[derive(Clone, Debug)]
pub struct Bad2Stream {
    inner: Bad1Stream,
    second: usize,
}

impl Iterator for Bad2Stream {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let n = self.inner.space.n;
        let mut after: Buf = [0; BUF];
        while self.inner.next < self.inner.end {
            self.inner.cursor.load(&mut after);
            let keep = classes_strictly_decreasing(&after[..n], self.second);
            let p = self.inner.next();
            if keep {
                return p;
            }
        }
        None
    }
}

fn second_increment(s: &GapSequence) -> Result<usize> {
    s.nth_largest(2)
        .map(|h| h as usize)
        .ok_or(Error::NeedTwoIncrements)
}

pub fn bad2_members(n: usize, s: &GapSequence, budget: u128) -> Result<Bad2Stream> {
    let second = second_increment(s)?;
    s.check_valid_for_n(n)?;
    let h = s.largest().expect("non-empty") as usize;
    Ok(Bad2Stream {
        inner: enumerate_bad1(n, h, budget)?,
        second,
    })
}

/// Size of the Bad (s,2) space, counted in parallel.
pub fn bad2_count(n: usize, s: &GapSequence, cfg: &ExecConfig) -> Result<u128> {
    let second = second_increment(s)?;
    let prepared = prepare(n, s)?.expect("two increments");
    prepared.spec.check_budget(cfg.enumeration_budget)?;
    let counts = exec::fold_chunks(&prepared.space, prepared.len(), cfg.jobs, |cursor, len| {
        let mut hits = 0u128;
        exec::for_each_in_chunk(cursor, len, n, |after| {
            if classes_strictly_decreasing(after, second) {
                hits += 1;
            }
        });
        hits
    });
    Ok(counts.into_iter().sum())
}
