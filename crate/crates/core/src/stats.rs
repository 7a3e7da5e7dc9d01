//! Brute-force statistics over the full permutation space: comparison-count
//! histograms, exact means, and the sequence with the smallest mean.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::engine::{check_full_space, sort_count, FullSpace};
use crate::error::{Error, Result};
use crate::exec::{fold_chunks, Buf, Cursor, ExecConfig, Space, BUF, MAX_N};
use crate::gapseq::{GapSequence, SequenceIndex};

/// Frequency of each comparison count over all `n!` inputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Histogram {
    pub n: usize,
    pub sequence: GapSequence,
    pub bins: BTreeMap<u64, u64>,
}

impl Histogram {
    pub fn total_mass(&self) -> u64 {
        self.bins.values().sum()
    }

    /// Sum of comparison counts over all inputs.
    pub fn total_comparisons(&self) -> u64 {
        self.bins.iter().map(|(k, f)| k * f).sum()
    }

    pub fn min(&self) -> Option<u64> {
        self.bins.keys().next().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.bins.keys().next_back().copied()
    }

    pub fn mean(&self) -> Ratio<u64> {
        Ratio::new(self.total_comparisons(), self.total_mass().max(1))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("count,frequency\n");
        for (k, f) in &self.bins {
            let _ = writeln!(out, "{k},{f}");
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

fn check(n: usize, s: &GapSequence, cfg: &ExecConfig) -> Result<()> {
    if n == 0 {
        return Err(Error::UnsupportedN {
            n,
            min: 1,
            max: MAX_N,
        });
    }
    s.check_valid_for_n(n)?;
    check_full_space(n, cfg)
}

/// Exact histogram of comparison counts of `s` over every permutation of
/// `n` elements.
pub fn distribution(n: usize, s: &GapSequence, cfg: &ExecConfig) -> Result<Histogram> {
    check(n, s, cfg)?;
    let space = FullSpace::new(n);
    let gaps = s.descending();
    let partial = fold_chunks(&space, space.len(), cfg.jobs, |cursor, len| {
        let mut counts = vec![0u64; n * n];
        let mut buf: Buf = [0; BUF];
        let mut left = len;
        loop {
            cursor.load(&mut buf);
            counts[sort_count(&mut buf, n, gaps) as usize] += 1;
            left -= 1;
            if left == 0 || !cursor.advance() {
                break;
            }
        }
        counts
    });
    let mut bins = BTreeMap::new();
    for counts in partial {
        for (k, f) in counts.into_iter().enumerate().filter(|(_, f)| *f > 0) {
            *bins.entry(k as u64).or_insert(0) += f;
        }
    }
    Ok(Histogram {
        n,
        sequence: s.clone(),
        bins,
    })
}

pub fn mean_comparisons(n: usize, s: &GapSequence, cfg: &ExecConfig) -> Result<Ratio<u64>> {
    Ok(distribution(n, s, cfg)?.mean())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AverageOptimum {
    pub n: usize,
    pub index: Option<SequenceIndex>,
    pub sequence: GapSequence,
    /// Sum of comparison counts over all `n!` inputs; the mean is this over `n!`.
    pub total_comparisons: u64,
    pub permutations: u64,
}

impl AverageOptimum {
    pub fn mean(&self) -> Ratio<u64> {
        Ratio::new(self.total_comparisons, self.permutations)
    }
}

/// The sequence with the smallest mean comparison count over all inputs,
/// ties going to the smallest index.
pub fn search_min_average(n: usize, cfg: &ExecConfig) -> Result<AverageOptimum> {
    if n == 1 {
        check(n, &GapSequence::empty(), cfg)?;
        return Ok(AverageOptimum {
            n,
            index: None,
            sequence: GapSequence::empty(),
            total_comparisons: 0,
            permutations: 1,
        });
    }
    check(n, &GapSequence::unit(), cfg)?;
    let mut best: Option<AverageOptimum> = None;
    for i in 1..=SequenceIndex::count_for_n(n) {
        let index = SequenceIndex::new(i)?;
        let sequence = GapSequence::from_index(index);
        let h = distribution(n, &sequence, cfg)?;
        // every candidate shares the denominator n!
        let total = h.total_comparisons();
        if best.as_ref().is_none_or(|b| total < b.total_comparisons) {
            best = Some(AverageOptimum {
                n,
                index: Some(index),
                sequence,
                total_comparisons: total,
                permutations: h.total_mass(),
            });
        }
    }
    Ok(best.expect("at least one sequence for n >= 2"))
}
