//! Rank-addressed permutation spaces and the chunked parallel drivers that
//! walk them.
//!
//! A space assigns every element a rank in `0..len`. Work is cut into
//! contiguous rank chunks that workers claim in increasing order, so the
//! results below never depend on the number of workers.

use std::sync::atomic::{AtomicU32, AtomicU64, Ordering};
use std::sync::Mutex;

use crate::engine::sort_count;

/// Largest `n` handled by the enumeration machinery.
pub const MAX_N: usize = 30;

const CHUNK: u128 = 1 << 14;

/// Scratch arrangement; indices are masked with `BUF - 1` in hot loops.
pub(crate) const BUF: usize = 32;
pub(crate) type Buf = [u8; BUF];

/// Execution limits shared by every exhaustive operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExecConfig {
    /// Worker threads. Results are identical for every value.
    pub jobs: usize,
    /// Largest `n` for which all `n!` permutations may be walked.
    pub full_space_max_n: usize,
    /// Largest reduced space a single bounded evaluation may walk.
    pub enumeration_budget: u128,
}

impl Default for ExecConfig {
    fn default() -> Self {
        ExecConfig {
            jobs: 1,
            full_space_max_n: 9,
            enumeration_budget: 100_000_000,
        }
    }
}

impl ExecConfig {
    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }
}

pub(crate) trait Space: Sync {
    type Cursor: Cursor;

    fn n(&self) -> usize;
    fn len(&self) -> u128;
    fn cursor_at(&self, rank: u128) -> Self::Cursor;
}

pub(crate) trait Cursor: Send {
    /// Writes the arrangement that the remaining passes will sort.
    fn load(&self, buf: &mut Buf);
    /// Steps to the next rank; false once the space is exhausted.
    fn advance(&mut self) -> bool;

    #[cfg(test)]
    fn load_vec(&self, n: usize) -> Vec<u8> {
        let mut buf: Buf = [0; BUF];
        self.load(&mut buf);
        buf[..n].to_vec()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct MaxScan {
    /// Maximum over the scanned prefix; meaningful only without a hit.
    pub max: u32,
    /// Lowest rank whose count reached the bound.
    pub first_hit: Option<u128>,
}

impl MaxScan {
    /// Number of elements a sequential scan would have evaluated.
    pub fn evaluated(&self, end: u128) -> u128 {
        self.first_hit.map_or(end, |r| r + 1)
    }
}

fn chunk_count(end: u128) -> u64 {
    end.div_ceil(CHUNK) as u64
}

fn run_workers<F: Fn() + Sync>(jobs: usize, worker: F) {
    if jobs <= 1 {
        worker();
    } else {
        std::thread::scope(|scope| {
            for _ in 0..jobs {
                scope.spawn(&worker);
            }
        });
    }
}

/// Maximum of `offset + comparisons(gaps)` over ranks `0..end`, stopping at
/// the first element whose count reaches `bound`.
pub(crate) fn scan_max<S: Space>(
    space: &S,
    end: u128,
    gaps: &[u32],
    offset: u32,
    bound: Option<u32>,
    jobs: usize,
) -> MaxScan {
    let end = end.min(space.len());
    let chunks = chunk_count(end);
    let n = space.n();
    let next = AtomicU64::new(0);
    let hit_chunk = AtomicU64::new(u64::MAX);
    let hit_rank: Mutex<Option<u128>> = Mutex::new(None);
    let max = AtomicU32::new(0);
    let bound = bound.unwrap_or(u32::MAX);

    run_workers(jobs, || {
        let mut local_max = 0u32;
        loop {
            let c = next.fetch_add(1, Ordering::Relaxed);
            if c >= chunks || c > hit_chunk.load(Ordering::Acquire) {
                break;
            }
            let start = c as u128 * CHUNK;
            let stop = (start + CHUNK).min(end);
            let mut cursor = space.cursor_at(start);
            let (chunk_max, hit) = max_over_chunk(&mut cursor, stop - start, n, gaps, offset, bound);
            local_max = local_max.max(chunk_max);
            if let Some(k) = hit {
                hit_chunk.fetch_min(c, Ordering::AcqRel);
                let rank = start + k;
                let mut h = hit_rank.lock().unwrap();
                if h.map_or(true, |r| rank < r) {
                    *h = Some(rank);
                }
            }
        }
        max.fetch_max(local_max, Ordering::Relaxed);
    });

    MaxScan {
        max: max.into_inner(),
        first_hit: hit_rank.into_inner().unwrap(),
    }
}

type ChunkMax = (u32, Option<u128>);

/// Maximum over `len` elements from the cursor, with the offset of the first
/// one reaching `bound`.
#[inline(always)]
fn max_over_chunk_impl<C: Cursor>(
    cursor: &mut C,
    len: u128,
    n: usize,
    gaps: &[u32],
    offset: u32,
    bound: u32,
) -> ChunkMax {
    let mut buf: Buf = [0; BUF];
    let mut max = 0u32;
    let mut k = 0u128;
    loop {
        cursor.load(&mut buf);
        let count = offset + sort_count(&mut buf, n, gaps);
        max = max.max(count);
        if count >= bound {
            return (max, Some(k));
        }
        k += 1;
        if k >= len || !cursor.advance() {
            return (max, None);
        }
    }
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "popcnt")]
unsafe fn max_over_chunk_popcnt<C: Cursor>(
    cursor: &mut C,
    len: u128,
    n: usize,
    gaps: &[u32],
    offset: u32,
    bound: u32,
) -> ChunkMax {
    max_over_chunk_impl(cursor, len, n, gaps, offset, bound)
}

fn max_over_chunk<C: Cursor>(
    cursor: &mut C,
    len: u128,
    n: usize,
    gaps: &[u32],
    offset: u32,
    bound: u32,
) -> ChunkMax {
    #[cfg(target_arch = "x86_64")]
    if std::arch::is_x86_feature_detected!("popcnt") {
        // SAFETY: the feature was detected at runtime
        return unsafe { max_over_chunk_popcnt(cursor, len, n, gaps, offset, bound) };
    }
    max_over_chunk_impl(cursor, len, n, gaps, offset, bound)
}

/// Runs `visit` over every chunk of `0..end` and returns the per-chunk
/// results in rank order.
pub(crate) fn fold_chunks<S, T, F>(space: &S, end: u128, jobs: usize, visit: F) -> Vec<T>
where
    S: Space,
    T: Send,
    F: Fn(&mut S::Cursor, u128) -> T + Sync,
{
    let end = end.min(space.len());
    let chunks = chunk_count(end);
    let next = AtomicU64::new(0);
    let results: Mutex<Vec<(u64, T)>> = Mutex::new(Vec::new());

    run_workers(jobs, || loop {
        let c = next.fetch_add(1, Ordering::Relaxed);
        if c >= chunks {
            break;
        }
        let start = c as u128 * CHUNK;
        let len = CHUNK.min(end - start);
        let mut cursor = space.cursor_at(start);
        let out = visit(&mut cursor, len);
        results.lock().unwrap().push((c, out));
    });

    let mut results = results.into_inner().unwrap();
    results.sort_unstable_by_key(|(c, _)| *c);
    results.into_iter().map(|(_, t)| t).collect()
}

/// Walks `len` consecutive elements starting at the cursor's position.
pub(crate) fn for_each_in_chunk<C: Cursor>(
    cursor: &mut C,
    len: u128,
    n: usize,
    mut f: impl FnMut(&mut [u8]),
) {
    let mut buf: Buf = [0; BUF];
    let mut left = len;
    while left > 0 {
        cursor.load(&mut buf);
        f(&mut buf[..n]);
        left -= 1;
        if left == 0 || !cursor.advance() {
            break;
        }
    }
}
