//! Exhaustive search for worst-case optimal Shellsort gap sequences.

pub mod bad_space;
pub mod closed_forms;
pub mod combin;
pub mod engine;
pub mod error;
pub mod exec;
pub mod gapseq;
pub mod known;
pub mod search;
pub mod stats;

pub use bad_space::{
    bad1_count, bad2_count, bad2_members, enumerate_bad1, is_bad1, max_comparisons_reduced, ReducedMax,
    ReducedSpaceSpec,
};
pub use closed_forms::{
    chi, gamma_increment, n2_closed, n3_closed, n4_closed, verify_chain, ChainReport, ChainVerdict,
    GammaSequence, WorstCaseFormula,
};
pub use engine::{max_comparisons_full, shellsort_count, PassCount, Permutation, SortTrace};
pub use error::{Error, Result};
pub use exec::{ExecConfig, MAX_N};
pub use gapseq::{index_of_sequence, sequence_from_index, GapSequence, SequenceIndex};
pub use search::{
    minimax_search, resume, RecordStatus, SearchHistory, SearchOptions, SearchRecord, ENGINE_VERSION,
};
pub use stats::{distribution, mean_comparisons, search_min_average, AverageOptimum, Histogram};
