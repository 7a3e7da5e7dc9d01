//! Pruned minimax search over sequence indices.
//!
//! Indices are visited in increasing order. Each sequence is evaluated over
//! its reduced space with the best worst case found so far as a stopping
//! bound, and every strict improvement is logged. Because only strict
//! improvements replace the incumbent, the final sequence is the optimal one
//! of smallest index.
//!
//! The working bound starts one above the insertion-sort worst case
//! `n(n-1)/2`, so index 1 is always evaluated in full and logged.

use std::fmt::{self, Write as _};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bad_space::prepare;
use crate::error::{Error, Result};
use crate::exec::MAX_N;
use crate::gapseq::{GapSequence, SequenceIndex};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordStatus {
    Exact,
    /// The search stopped part way through this sequence's space; the
    /// value is the largest count seen so far.
    LowerBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub index: SequenceIndex,
    pub sequence: GapSequence,
    pub worst_case: u64,
    pub status: RecordStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchHistory {
    pub n: usize,
    pub records: Vec<SearchRecord>,
    /// Best exact worst case found; `c_n` when the search is complete.
    pub final_c: Option<u64>,
    pub final_sequence: Option<GapSequence>,
    pub final_index: Option<SequenceIndex>,
    pub complete: bool,
    /// Last index whose evaluation finished.
    pub evaluated_through: u64,
    pub engine_version: String,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Stop after this index even if more sequences are valid.
    pub index_limit: Option<u64>,
    /// Maximum number of permutations to evaluate in this run.
    pub budget: Option<u128>,
    pub jobs: usize,
    /// Stop each evaluation once it reaches the incumbent. Turning this off
    /// evaluates every space in full; the history is the same.
    pub prune: bool,
    pub checkpoint: Option<PathBuf>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            index_limit: None,
            budget: None,
            jobs: 1,
            prune: true,
            checkpoint: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryStatus {
    /// Header line written when a search begins; carries the initial bound.
    Started,
    Exact,
    /// Evaluation reached the bound; the value is that bound.
    Pruned,
    LowerBound,
}

/// One line of a checkpoint file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckpointEntry {
    pub n: usize,
    pub i: u64,
    pub worst_case_or_bound: u64,
    pub status: EntryStatus,
    pub engine_version: String,
}

struct CheckpointWriter {
    out: BufWriter<File>,
    n: usize,
}

impl CheckpointWriter {
    fn create(path: &Path, n: usize, initial_bound: u64) -> Result<Self> {
        let mut w = CheckpointWriter {
            out: BufWriter::new(File::create(path)?),
            n,
        };
        w.write(0, initial_bound, EntryStatus::Started)?;
        Ok(w)
    }

    fn append(path: &Path, n: usize) -> Result<Self> {
        let file = OpenOptions::new().append(true).open(path)?;
        Ok(CheckpointWriter {
            out: BufWriter::new(file),
            n,
        })
    }

    fn write(&mut self, i: u64, value: u64, status: EntryStatus) -> Result<()> {
        let entry = CheckpointEntry {
            n: self.n,
            i,
            worst_case_or_bound: value,
            status,
            engine_version: ENGINE_VERSION.to_string(),
        };
        serde_json::to_writer(&mut self.out, &entry)?;
        self.out.write_all(b"\n")?;
        self.out.flush()?;
        Ok(())
    }
}

fn linear_worst_case(n: usize) -> u64 {
    (n * n.saturating_sub(1) / 2) as u64
}

/// Mutable search position, rebuilt from a checkpoint on resume.
#[derive(Clone, Debug)]
struct SearchState {
    n: usize,
    bound: u64,
    records: Vec<SearchRecord>,
    evaluated_through: u64,
}

impl SearchState {
    fn fresh(n: usize) -> Self {
        SearchState {
            n,
            bound: linear_worst_case(n) + 1,
            records: Vec::new(),
            evaluated_through: 0,
        }
    }

    fn finish(mut self, complete: bool, lower_bound: Option<SearchRecord>) -> SearchHistory {
        let best = self
            .records
            .iter()
            .rev()
            .find(|r| r.status == RecordStatus::Exact)
            .cloned();
        self.records.extend(lower_bound);
        let (final_c, final_sequence, final_index) = if self.n == 1 {
            (Some(0), Some(GapSequence::empty()), None)
        } else {
            match best {
                Some(r) => (Some(r.worst_case), Some(r.sequence), Some(r.index)),
                None => (None, None, None),
            }
        };
        SearchHistory {
            n: self.n,
            records: self.records,
            final_c,
            final_sequence,
            final_index,
            complete,
            evaluated_through: self.evaluated_through,
            engine_version: ENGINE_VERSION.to_string(),
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::UnsupportedN {
            n,
            min: 1,
            max: MAX_N,
        });
    }
    Ok(())
}

/// Runs the minimax search for `n` elements from index 1.
pub fn minimax_search(n: usize, options: &SearchOptions) -> Result<SearchHistory> {
    check_n(n)?;
    let state = SearchState::fresh(n);
    let writer = match &options.checkpoint {
        Some(path) => Some(CheckpointWriter::create(path, n, state.bound)?),
        None => None,
    };
    run(state, writer, options)
}

fn run(
    mut state: SearchState,
    mut writer: Option<CheckpointWriter>,
    options: &SearchOptions,
) -> Result<SearchHistory> {
    let n = state.n;
    let total = SequenceIndex::count_for_n(n);
    let last = options.index_limit.map_or(total, |l| l.min(total));
    let mut budget_left = options.budget;

    for i in state.evaluated_through + 1..=last {
        if budget_left == Some(0) {
            return Ok(state.finish(false, None));
        }
        let index = SequenceIndex::new(i)?;
        let sequence = GapSequence::from_index(index);
        let prepared = prepare(n, &sequence)?.expect("indexed sequences are non-empty");
        let len = prepared.len();
        let end = budget_left.map_or(len, |b| b.min(len));
        let bound = options.prune.then_some(state.bound as u32);
        let scan = prepared.scan(end, bound, options.jobs.max(1));
        if let Some(b) = budget_left.as_mut() {
            *b -= scan.evaluated(end);
        }

        if scan.first_hit.is_some() {
            if let Some(w) = writer.as_mut() {
                w.write(i, state.bound, EntryStatus::Pruned)?;
            }
        } else if end < len {
            // out of budget part way through this space
            let partial = scan.max as u64;
            let record = (partial < state.bound).then(|| SearchRecord {
                index,
                sequence,
                worst_case: partial,
                status: RecordStatus::LowerBound,
            });
            if let Some(w) = writer.as_mut() {
                w.write(i, partial, EntryStatus::LowerBound)?;
            }
            return Ok(state.finish(false, record));
        } else {
            let worst = scan.max as u64;
            if let Some(w) = writer.as_mut() {
                w.write(i, worst, EntryStatus::Exact)?;
            }
            if worst < state.bound {
                state.bound = worst;
                state.records.push(SearchRecord {
                    index,
                    sequence,
                    worst_case: worst,
                    status: RecordStatus::Exact,
                });
            }
        }
        state.evaluated_through = i;
    }

    let complete = state.evaluated_through == total;
    Ok(state.finish(complete, None))
}

pub fn read_checkpoint(path: &Path) -> Result<Vec<CheckpointEntry>> {
    let reader = BufReader::new(File::open(path)?);
    let mut entries = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let entry: CheckpointEntry = serde_json::from_str(&line)
            .map_err(|e| Error::Checkpoint(format!("line {}: {e}", lineno + 1)))?;
        entries.push(entry);
    }
    Ok(entries)
}

fn rebuild(n: usize, entries: &[CheckpointEntry]) -> Result<SearchState> {
    let corrupt = |msg: String| Err(Error::Checkpoint(msg));
    let Some(header) = entries.first() else {
        return corrupt("empty checkpoint".into());
    };
    if header.status != EntryStatus::Started {
        return corrupt("missing header line".into());
    }
    for e in entries {
        if e.engine_version != ENGINE_VERSION {
            return corrupt(format!(
                "written by engine {}, this is {ENGINE_VERSION}",
                e.engine_version
            ));
        }
        if e.n != n {
            return corrupt(format!("checkpoint is for n = {}, requested n = {n}", e.n));
        }
    }
    let mut state = SearchState::fresh(n);
    if header.worst_case_or_bound != state.bound {
        return corrupt("unexpected initial bound".into());
    }
    for e in &entries[1..] {
        match e.status {
            EntryStatus::Started => return corrupt("repeated header".into()),
            // partial evaluations are redone
            EntryStatus::LowerBound => continue,
            EntryStatus::Exact | EntryStatus::Pruned => {}
        }
        if e.i != state.evaluated_through + 1 {
            return corrupt(format!("index {} follows {}", e.i, state.evaluated_through));
        }
        if e.status == EntryStatus::Exact && e.worst_case_or_bound < state.bound {
            state.bound = e.worst_case_or_bound;
            let index = SequenceIndex::new(e.i)?;
            state.records.push(SearchRecord {
                index,
                sequence: GapSequence::from_index(index),
                worst_case: e.worst_case_or_bound,
                status: RecordStatus::Exact,
            });
        }
        state.evaluated_through = e.i;
    }
    if state.evaluated_through > SequenceIndex::count_for_n(n) {
        return corrupt("index beyond the search range".into());
    }
    Ok(state)
}

/// Continues a search from its checkpoint file, appending to it. A finished
/// search is returned as stored without touching the file.
pub fn resume(path: &Path, n: usize, options: &SearchOptions) -> Result<SearchHistory> {
    check_n(n)?;
    let state = rebuild(n, &read_checkpoint(path)?)?;
    if state.evaluated_through == SequenceIndex::count_for_n(n) {
        return Ok(state.finish(true, None));
    }
    let writer = CheckpointWriter::append(path, n)?;
    run(state, Some(writer), options)
}

impl SearchHistory {
    /// Plain-text log: one `i / s_i / n_i` row per improvement, closed by
    /// `terminated.` when the search covered every index.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = self.write_table(&mut out);
        out
    }

    fn write_table(&self, out: &mut String) -> fmt::Result {
        writeln!(out, "n={}", self.n)?;
        writeln!(out, "{}", "-".repeat(36))?;
        for r in &self.records {
            let value = match r.status {
                RecordStatus::Exact => format!("n_i={}", r.worst_case),
                RecordStatus::LowerBound => format!("n_i>={}", r.worst_case),
            };
            writeln!(
                out,
                "{:<8} {:<18} {}",
                format!("i={}", r.index),
                format!("s_i= {}", r.sequence),
                value
            )?;
        }
        if self.complete {
            writeln!(out, "terminated.")?;
        } else {
            writeln!(out, "incomplete (evaluated through i={})", self.evaluated_through)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn history(n: usize) -> SearchHistory {
        minimax_search(n, &SearchOptions::default()).unwrap()
    }

    fn rows(h: &SearchHistory) -> Vec<(u64, u64)> {
        h.records.iter().map(|r| (r.index.get(), r.worst_case)).collect()
    }

    #[test]
    fn tiny_n() {
        let h = history(1);
        assert!(h.complete);
        assert_eq!(h.final_c, Some(0));
        assert_eq!(h.final_sequence, Some(GapSequence::empty()));
        assert!(h.records.is_empty());
        assert_eq!(
            h.render_table(),
            format!("n=1\n{}\nterminated.\n", "-".repeat(36))
        );

        let h = history(2);
        assert_eq!(rows(&h), vec![(1, 1)]);
        assert_eq!(h.final_sequence, Some(GapSequence::unit()));
    }

    #[test]
    fn six_and_nine() {
        let h = history(6);
        assert_eq!(rows(&h), vec![(1, 15), (5, 14)]);
        assert_eq!(h.final_c, Some(14));
        assert_eq!(h.final_sequence.unwrap().to_string(), "1, 4");

        let h = history(9);
        assert_eq!(rows(&h), vec![(1, 36), (2, 34), (3, 33), (4, 32), (7, 29)]);
        assert_eq!(h.final_sequence.unwrap().to_string(), "1, 3, 4");
    }

    #[test]
    fn pruning_does_not_change_history() {
        for n in 2..=8 {
            let pruned = history(n);
            let full = minimax_search(
                n,
                &SearchOptions {
                    prune: false,
                    ..SearchOptions::default()
                },
            )
            .unwrap();
            assert_eq!(pruned, full, "n = {n}");
        }
    }

    #[test]
    fn budget_truncation_marks_lower_bounds() {
        let h = minimax_search(
            9,
            &SearchOptions {
                budget: Some(20),
                ..SearchOptions::default()
            },
        )
        .unwrap();
        assert!(!h.complete);
        // i=1 costs one permutation, i=2 has 126 so it is cut short
        assert_eq!(h.records[0].worst_case, 36);
        let last = h.records.last().unwrap();
        assert_eq!(last.index.get(), 2);
        assert_eq!(last.status, RecordStatus::LowerBound);
        assert!(last.worst_case <= 34);
        assert_eq!(h.final_c, Some(36));
        assert!(h.render_table().contains("n_i>="));
    }

    #[test]
    fn index_limit_truncates() {
        let h = minimax_search(
            8,
            &SearchOptions {
                index_limit: Some(7),
                ..SearchOptions::default()
            },
        )
        .unwrap();
        assert!(!h.complete);
        assert_eq!(rows(&h), vec![(1, 28), (3, 25), (7, 24)]);
    }

    #[test]
    fn table_layout() {
        let text = history(7).render_table();
        let expected = "\
n=7
------------------------------------
i=1      s_i= 1             n_i=21
i=3      s_i= 1, 3          n_i=20
i=5      s_i= 1, 4          n_i=19
i=21     s_i= 1, 4, 6       n_i=18
terminated.
";
        assert_eq!(text, expected);
    }

    #[test]
    fn checkpoint_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ckpt.jsonl");
        let one_shot = history(8);

        let partial = minimax_search(
            8,
            &SearchOptions {
                index_limit: Some(20),
                checkpoint: Some(path.clone()),
                ..SearchOptions::default()
            },
        )
        .unwrap();
        assert!(!partial.complete);
        let entries = read_checkpoint(&path).unwrap();
        assert_eq!(entries.len(), 21);
        assert_eq!(entries[0].status, EntryStatus::Started);

        let resumed = resume(&path, 8, &SearchOptions::default()).unwrap();
        assert_eq!(resumed, one_shot);
        let again = resume(&path, 8, &SearchOptions::default()).unwrap();
        assert_eq!(again, one_shot);

        assert!(matches!(
            resume(&path, 9, &SearchOptions::default()),
            Err(Error::Checkpoint(_))
        ));
    }

    #[test]
    fn resume_after_budget_stop() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ckpt.jsonl");
        let opts = SearchOptions {
            budget: Some(50_000),
            checkpoint: Some(path.clone()),
            ..SearchOptions::default()
        };
        // enough for the longest unpruned index at n = 9, short of a full run
        let mut h = minimax_search(9, &opts).unwrap();
        let mut rounds = 0;
        while !h.complete {
            h = resume(&path, 9, &opts).unwrap();
            rounds += 1;
            assert!(rounds < 1_000);
        }
        assert!(rounds > 0);
        assert_eq!(h, history(9));
    }

    #[test]
    fn corrupt_checkpoints() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.jsonl");
        std::fs::write(&path, "").unwrap();
        assert!(resume(&path, 5, &SearchOptions::default()).is_err());
        std::fs::write(&path, "{not json}\n").unwrap();
        assert!(resume(&path, 5, &SearchOptions::default()).is_err());
        let header = CheckpointEntry {
            n: 5,
            i: 0,
            worst_case_or_bound: 11,
            status: EntryStatus::Started,
            engine_version: "0.0.0-other".into(),
        };
        std::fs::write(&path, serde_json::to_string(&header).unwrap() + "\n").unwrap();
        let err = resume(&path, 5, &SearchOptions::default()).unwrap_err();
        assert!(err.to_string().contains("engine"));
    }

    #[test]
    fn history_serializes() {
        let h = history(6);
        let json = serde_json::to_string(&h).unwrap();
        assert!(json.contains("\"sequence\":[1,4]"));
        let back: SearchHistory = serde_json::from_str(&json).unwrap();
        assert_eq!(back, h);
    }
}
