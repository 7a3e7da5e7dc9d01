//! Published reference values, kept exactly as printed so that computed
//! results can be compared against them. Known misprints are listed in
//! [`ERRATA`]; the values themselves are never corrected here.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrintedOptimum {
    pub n: usize,
    /// Ascending increments; empty for `n = 1`.
    pub sequence: &'static [u32],
    /// Index as printed, `None` for `n = 1`.
    pub index: Option<u64>,
    pub c: u64,
}

const fn opt(n: usize, sequence: &'static [u32], index: u64, c: u64) -> PrintedOptimum {
    PrintedOptimum {
        n,
        sequence,
        index: Some(index),
        c,
    }
}

/// Optimal sequences and minimax counts for `n <= 16`.
pub const OPTIMAL: [PrintedOptimum; 16] = [
    PrintedOptimum {
        n: 1,
        sequence: &[],
        index: None,
        c: 0,
    },
    opt(2, &[1], 1, 1),
    opt(3, &[1], 1, 3),
    opt(4, &[1], 1, 6),
    opt(5, &[1], 1, 10),
    opt(6, &[1, 4], 5, 14),
    opt(7, &[1, 4, 6], 21, 18),
    opt(8, &[1, 5, 7], 41, 23),
    opt(9, &[1, 3, 4], 7, 29),
    opt(10, &[1, 6, 9], 145, 35),
    opt(11, &[1, 4, 5], 13, 41),
    opt(12, &[1, 3, 7, 11], 543, 48),
    opt(13, &[1, 3, 4], 7, 56),
    opt(14, &[1, 3, 4], 7, 64),
    opt(15, &[1, 3, 7], 35, 71),
    opt(16, &[1, 4, 7, 9], 165, 78),
];

/// Best known sequences and upper bounds on `c_n` for `17 <= n <= 30`.
pub const BEST_KNOWN: [PrintedOptimum; 14] = [
    opt(17, &[1, 3, 4], 7, 87),
    opt(18, &[1, 2, 5], 10, 98),
    opt(19, &[1, 3, 5], 11, 105),
    opt(20, &[1, 3, 4], 7, 117),
    opt(21, &[1, 3, 4], 7, 126),
    opt(22, &[1, 2, 3], 4, 157),
    opt(23, &[1, 2, 3], 4, 173),
    opt(24, &[1, 2, 3], 4, 183),
    opt(25, &[1, 2, 3], 4, 195),
    opt(26, &[1, 2, 3], 4, 219),
    opt(27, &[1, 2, 3], 4, 230),
    opt(28, &[1, 2, 3], 4, 243),
    opt(29, &[1, 2, 3], 4, 263),
    opt(30, &[1, 2, 3], 4, 275),
];

/// `|P_{16,(s,1)}|` for `s(1) = 1..=15`.
pub const BAD1_COUNTS_16: [(usize, u128); 15] = [
    (1, 1),
    (2, 12_870),
    (3, 2_018_016),
    (4, 63_063_000),
    (5, 672_672_000),
    (6, 4_036_032_000),
    (7, 18_162_144_000),
    (8, 81_729_648_000),
    (9, 163_459_296_000),
    (10, 326_918_592_000),
    (11, 653_837_184_000),
    (12, 1_307_674_368_000),
    (13, 2_615_348_736_000),
    (14, 5_230_697_472_000),
    (15, 10_461_394_944_000),
];

/// Improvement of the minimax count over insertion sort, `n = 1..=16`.
pub const IMPROVEMENT: [u64; 16] = [0, 0, 0, 0, 0, 1, 3, 5, 7, 10, 14, 18, 22, 27, 34, 42];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrintedRow {
    pub index: u64,
    pub sequence: &'static [u32],
    pub value: u64,
    /// Printed as `n_i >= value`.
    pub lower_bound: bool,
}

const fn row(index: u64, sequence: &'static [u32], value: u64, lower_bound: bool) -> PrintedRow {
    PrintedRow {
        index,
        sequence,
        value,
        lower_bound,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrintedLog {
    pub n: usize,
    /// Whether the printed search ran to termination.
    pub complete: bool,
    pub rows: &'static [PrintedRow],
}

pub const SEARCH_LOGS: &[PrintedLog] = &[
    PrintedLog {
        n: 1,
        complete: true,
        rows: &[],
    },
    PrintedLog {
        n: 2,
        complete: true,
        rows: &[row(1, &[1], 1, false)],
    },
    PrintedLog {
        n: 3,
        complete: true,
        rows: &[row(1, &[1], 3, false)],
    },
    PrintedLog {
        n: 4,
        complete: true,
        rows: &[row(1, &[1], 6, false)],
    },
    PrintedLog {
        n: 5,
        complete: true,
        rows: &[row(1, &[1], 10, false)],
    },
    PrintedLog {
        n: 6,
        complete: true,
        rows: &[row(1, &[1], 15, false), row(5, &[1, 4], 14, false)],
    },
    PrintedLog {
        n: 7,
        complete: true,
        rows: &[
            row(1, &[1], 21, false),
            row(3, &[1, 3], 20, false),
            row(5, &[1, 4], 19, false),
            row(21, &[1, 4, 6], 18, false),
        ],
    },
    PrintedLog {
        n: 8,
        complete: true,
        rows: &[
            row(1, &[1], 28, false),
            row(3, &[1, 3], 25, false),
            row(7, &[1, 3, 4], 24, false),
            row(41, &[1, 5, 7], 23, false),
        ],
    },
    PrintedLog {
        n: 9,
        complete: true,
        rows: &[
            row(1, &[1], 36, false),
            row(2, &[1, 2], 34, false),
            row(3, &[1, 3], 33, false),
            row(4, &[1, 2, 3], 32, false),
            row(7, &[1, 3, 4], 29, false),
        ],
    },
    PrintedLog {
        n: 10,
        complete: true,
        rows: &[
            row(1, &[1], 45, false),
            row(2, &[1, 2], 43, false),
            row(3, &[1, 3], 39, false),
            row(5, &[1, 4], 37, false),
            row(7, &[1, 3, 4], 36, false),
            row(145, &[1, 6, 9], 35, false),
        ],
    },
    PrintedLog {
        n: 11,
        complete: true,
        rows: &[
            row(1, &[1], 55, false),
            row(2, &[1, 2], 50, false),
            row(3, &[1, 3], 46, false),
            row(5, &[1, 4], 45, false),
            row(7, &[1, 3, 4], 43, false),
            row(13, &[1, 4, 5], 41, false),
        ],
    },
    PrintedLog {
        n: 12,
        complete: true,
        rows: &[
            row(1, &[1], 66, false),
            row(2, &[1, 2], 61, false),
            row(3, &[1, 3], 57, false),
            row(4, &[1, 2, 3], 53, false),
            row(7, &[1, 3, 4], 49, false),
            row(547, &[1, 3, 7, 11], 48, false),
        ],
    },
    PrintedLog {
        n: 13,
        complete: true,
        rows: &[
            row(1, &[1], 78, false),
            row(2, &[1, 2], 69, false),
            row(3, &[1, 3], 64, false),
            row(4, &[1, 2, 3], 61, false),
            row(7, &[1, 3, 4], 56, false),
        ],
    },
    PrintedLog {
        n: 14,
        complete: true,
        rows: &[
            row(1, &[1], 91, false),
            row(2, &[1, 2], 82, false),
            row(3, &[1, 3], 73, false),
            row(4, &[1, 2, 3], 70, false),
            row(7, &[1, 3, 4], 64, false),
        ],
    },
    PrintedLog {
        n: 15,
        complete: true,
        rows: &[
            row(1, &[1], 105, false),
            row(2, &[1, 2], 91, false),
            row(3, &[1, 3], 87, false),
            row(4, &[1, 2, 3], 80, false),
            row(7, &[1, 3, 4], 72, false),
            row(35, &[1, 3, 7], 71, false),
        ],
    },
    PrintedLog {
        n: 16,
        complete: true,
        rows: &[
            row(1, &[1], 120, false),
            row(2, &[1, 2], 106, false),
            row(3, &[1, 3], 95, false),
            row(4, &[1, 2, 3], 89, false),
            row(7, &[1, 3, 4], 79, false),
            row(165, &[1, 4, 7, 9], 78, false),
        ],
    },
    PrintedLog {
        n: 17,
        complete: false,
        rows: &[
            row(1, &[1], 136, false),
            row(2, &[1, 2], 116, false),
            row(3, &[1, 3], 106, false),
            row(4, &[1, 2, 3], 101, false),
            row(7, &[1, 3, 4], 87, false),
            row(45, &[1, 4, 5, 7], 86, true),
        ],
    },
    PrintedLog {
        n: 18,
        complete: false,
        rows: &[
            row(1, &[1], 153, false),
            row(2, &[1, 2], 133, false),
            row(3, &[1, 3], 123, false),
            row(4, &[1, 2, 3], 109, false),
            row(7, &[1, 3, 4], 100, false),
            row(10, &[1, 2, 5], 98, false),
            row(34, &[1, 2, 7], 97, true),
        ],
    },
    PrintedLog {
        n: 19,
        complete: false,
        rows: &[
            row(1, &[1], 171, false),
            row(2, &[1, 2], 144, false),
            row(3, &[1, 3], 132, false),
            row(4, &[1, 2, 3], 119, false),
            row(7, &[1, 3, 4], 109, false),
            row(11, &[1, 3, 5], 105, false),
            row(45, &[1, 4, 5, 7], 104, true),
        ],
    },
    PrintedLog {
        n: 20,
        complete: false,
        rows: &[
            row(1, &[1], 190, false),
            row(2, &[1, 2], 163, false),
            row(3, &[1, 3], 145, false),
            row(4, &[1, 2, 3], 137, false),
            row(7, &[1, 3, 4], 117, false),
            row(11, &[1, 3, 5], 113, true),
        ],
    },
    PrintedLog {
        n: 21,
        complete: false,
        rows: &[
            row(1, &[1], 210, false),
            row(2, &[1, 2], 175, false),
            row(3, &[1, 3], 165, false),
            row(4, &[1, 2, 3], 146, false),
            row(7, &[1, 3, 4], 126, false),
            row(11, &[1, 3, 5], 122, true),
        ],
    },
    PrintedLog {
        n: 22,
        complete: false,
        rows: &[
            row(1, &[1], 231, false),
            row(2, &[1, 2], 196, false),
            row(3, &[1, 3], 175, false),
            row(4, &[1, 2, 3], 157, false),
            row(7, &[1, 3, 4], 140, true),
        ],
    },
    PrintedLog {
        n: 23,
        complete: false,
        rows: &[
            row(1, &[1], 253, false),
            row(2, &[1, 2], 209, false),
            row(3, &[1, 3], 190, false),
            row(4, &[1, 2, 3], 173, false),
            row(7, &[1, 3, 4], 145, true),
        ],
    },
    PrintedLog {
        n: 24,
        complete: false,
        rows: &[
            row(1, &[1], 276, false),
            row(2, &[1, 2], 232, false),
            row(3, &[1, 3], 213, false),
            row(4, &[1, 2, 3], 183, false),
            row(7, &[1, 3, 4], 153, true),
        ],
    },
    PrintedLog {
        n: 25,
        complete: false,
        rows: &[
            row(1, &[1], 300, false),
            row(2, &[1, 2], 246, false),
            row(3, &[1, 3], 224, false),
            row(4, &[1, 2, 3], 195, false),
            row(7, &[1, 3, 4], 161, true),
        ],
    },
    PrintedLog {
        n: 26,
        complete: false,
        rows: &[
            row(1, &[1], 325, false),
            row(2, &[1, 2], 271, false),
            row(3, &[1, 3], 241, false),
            row(4, &[1, 2, 3], 219, false),
            row(7, &[1, 3, 4], 174, true),
        ],
    },
    PrintedLog {
        n: 27,
        complete: false,
        rows: &[
            row(1, &[1], 351, false),
            row(2, &[1, 2], 286, false),
            row(3, &[1, 3], 267, false),
            row(4, &[1, 2, 3], 230, false),
            row(7, &[1, 3, 4], 188, true),
        ],
    },
    PrintedLog {
        n: 28,
        complete: false,
        rows: &[
            row(1, &[1], 378, false),
            row(2, &[1, 2], 313, false),
            row(3, &[1, 3], 279, false),
            row(4, &[1, 2, 3], 243, false),
            row(7, &[1, 3, 4], 193, true),
        ],
    },
    PrintedLog {
        n: 29,
        complete: false,
        rows: &[
            row(1, &[1], 406, false),
            row(2, &[1, 2], 329, false),
            row(3, &[1, 3], 298, false),
            row(4, &[1, 2, 3], 263, false),
            row(7, &[1, 3, 4], 212, true),
        ],
    },
    PrintedLog {
        n: 30,
        complete: false,
        rows: &[
            row(1, &[1], 435, false),
            row(2, &[1, 2], 358, false),
            row(3, &[1, 3], 327, false),
            row(4, &[1, 2, 3], 275, false),
            row(7, &[1, 3, 4], 224, true),
        ],
    },
];

/// Bin frequencies of the two `n = 6` comparison-count distributions.
pub const DIST_6_UNIT: [(u64, u64); 11] = [
    (5, 2),
    (6, 10),
    (7, 26),
    (8, 52),
    (9, 82),
    (10, 110),
    (11, 126),
    (12, 120),
    (13, 96),
    (14, 64),
    (15, 32),
];
pub const DIST_6_1_4: [(u64, u64); 8] = [
    (7, 8),
    (8, 40),
    (9, 104),
    (10, 180),
    (11, 192),
    (12, 128),
    (13, 56),
    (14, 12),
];

/// The first increments of the γ-sequence as published.
pub const GAMMA_INCREMENTS: [u128; 17] = [
    1, 4, 9, 20, 45, 102, 230, 516, 1158, 2599, 5831, 13082, 29351, 65853, 147748, 331490, 743735,
];

/// A printed value known to disagree with computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Erratum {
    pub table: &'static str,
    pub n: usize,
    pub printed: u64,
    pub computed: u64,
    pub note: &'static str,
}

pub const ERRATA: [Erratum; 2] = [
    Erratum {
        table: "optimal",
        n: 12,
        printed: 543,
        computed: 547,
        note: "index of {1, 3, 7, 11} is 547; the search log prints 547",
    },
    Erratum {
        table: "search-log",
        n: 14,
        printed: 70,
        computed: 73,
        note: "worst case of {1, 2, 3} (i=4) is 73, attained inside the reduced space",
    },
];

pub fn optimal(n: usize) -> Option<&'static PrintedOptimum> {
    OPTIMAL.iter().chain(BEST_KNOWN.iter()).find(|o| o.n == n)
}

pub fn search_log(n: usize) -> Option<&'static PrintedLog> {
    SEARCH_LOGS.iter().find(|l| l.n == n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gapseq::{GapSequence, SequenceIndex};

    #[test]
    fn printed_sequences_match_printed_indices() {
        for log in SEARCH_LOGS {
            for r in log.rows {
                let s = GapSequence::from_index(SequenceIndex::new(r.index).unwrap());
                assert_eq!(
                    s.ascending().collect::<Vec<_>>(),
                    r.sequence,
                    "n={} i={}",
                    log.n,
                    r.index
                );
            }
        }
        let mismatched: Vec<usize> = OPTIMAL
            .iter()
            .chain(BEST_KNOWN.iter())
            .filter(|o| {
                o.index.is_some_and(|i| {
                    GapSequence::from_index(SequenceIndex::new(i).unwrap())
                        .ascending()
                        .collect::<Vec<_>>()
                        != o.sequence
                })
            })
            .map(|o| o.n)
            .collect();
        assert_eq!(mismatched, [12]);
    }

    #[test]
    fn logs_end_at_the_optimum() {
        for o in &OPTIMAL[1..] {
            let last = search_log(o.n).unwrap().rows.last().unwrap();
            assert_eq!((last.sequence, last.value), (o.sequence, o.c));
        }
        assert_eq!(SEARCH_LOGS.len(), 30);
        for (o, imp) in OPTIMAL.iter().zip(IMPROVEMENT) {
            assert_eq!(o.n as u64 * (o.n as u64 - 1) / 2 - o.c, imp);
        }
    }
}
