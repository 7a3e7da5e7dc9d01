//! Closed-form worst cases for the first few gap sequences, the γ-sequence
//! generator, and verification of strict inequality chains between indices.
//!
//! Every formula is evaluated in exact rational arithmetic and only then
//! converted to an integer; a fractional result is reported as an error.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::bad_space::{max_comparisons_reduced, ReducedSpaceSpec};
use crate::error::{Error, Result};
use crate::exec::ExecConfig;
use crate::gapseq::{GapSequence, SequenceIndex};

type Q = Ratio<i64>;

/// 1 iff `k` divides `n`.
pub fn chi(k: u64, n: u64) -> Result<u8> {
    if k == 0 {
        return Err(Error::ZeroArgument);
    }
    Ok(u8::from(n % k == 0))
}

fn chi_q(k: u64, n: u64) -> Q {
    Q::from_integer(i64::from(n % k == 0))
}

fn q(num: i64, den: i64) -> Q {
    Q::new(num, den)
}

fn ceil_div(a: u64, b: u64) -> i64 {
    a.div_ceil(b) as i64
}

fn integral(value: Q, what: &'static str, n: u64) -> Result<u64> {
    if !value.is_integer() || value.is_negative() {
        return Err(Error::NonIntegral {
            what,
            n,
            value: value.to_string(),
        });
    }
    Ok(value.to_integer() as u64)
}

/// Upper limit on `n` for the closed forms; keeps every intermediate in `i64`.
pub const CLOSED_FORM_MAX_N: u64 = 1 << 24;

/// The three sequences with a known closed-form worst case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WorstCaseFormula {
    /// `{1, 2}`
    N2,
    /// `{1, 3}`
    N3,
    /// `{1, 2, 3}`
    N4,
}

impl WorstCaseFormula {
    pub const ALL: [WorstCaseFormula; 3] = [Self::N2, Self::N3, Self::N4];

    pub fn for_index(i: u64) -> Option<Self> {
        match i {
            2 => Some(Self::N2),
            3 => Some(Self::N3),
            4 => Some(Self::N4),
            _ => None,
        }
    }

    pub fn sequence_index(self) -> SequenceIndex {
        let i = match self {
            Self::N2 => 2,
            Self::N3 => 3,
            Self::N4 => 4,
        };
        SequenceIndex::new(i).expect("nonzero")
    }

    pub fn sequence(self) -> GapSequence {
        GapSequence::from_index(self.sequence_index())
    }

    /// Smallest `n` the formula is stated for.
    pub fn domain_start(self) -> u64 {
        match self {
            Self::N2 => 3,
            Self::N3 | Self::N4 => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::N2 => "n2",
            Self::N3 => "n3",
            Self::N4 => "n4",
        }
    }

    fn check(self, n: u64) -> Result<()> {
        if n < self.domain_start() || n > CLOSED_FORM_MAX_N {
            return Err(Error::OutOfDomain {
                what: self.name(),
                n,
                min: self.domain_start(),
            });
        }
        Ok(())
    }

    /// Worst-case comparisons, from the polynomial form with divisibility
    /// corrections.
    pub fn eval(self, n: u64) -> Result<u64> {
        self.check(n)?;
        let value = match self {
            Self::N2 => n2_poly(n),
            Self::N3 => n3_poly(n),
            Self::N4 => n4_poly(n),
        };
        integral(value, self.name(), n)
    }

    /// The equivalent form written with ceilings, where one exists.
    pub fn eval_ceiling_form(self, n: u64) -> Result<Option<u64>> {
        self.check(n)?;
        let value = match self {
            Self::N2 => n2_ceil(n),
            Self::N3 => n3_ceil(n),
            Self::N4 => return Ok(None),
        };
        integral(value, self.name(), n).map(Some)
    }
}

impl fmt::Display for WorstCaseFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn n2_poly(n: u64) -> Q {
    let m = n as i64;
    let c2 = chi_q(2, n);
    q(-7, 8) + q(m, 2) + q(3 * m * m, 8) - q(9, 8) * c2 + q(m, 4) * c2
}

fn n2_ceil(n: u64) -> Q {
    let m = n as i64;
    let h = ceil_div(n, 2);
    // constant term -2; with +2 this form exceeds the polynomial one by 4
    q(m * (m - 1), 2) - q(h * h, 2) + q(5 * h, 2) - Q::from_integer(2)
}

fn n3_poly(n: u64) -> Q {
    let m = n as i64;
    Q::from_integer(-1) + q(2 * m, 3) + q(m * m, 3)
        - (Q::from_integer(2) - q(m, 3)) * chi_q(3, n)
        - q(2, 3) * chi_q(3, n + 1)
}

fn n3_ceil(n: u64) -> Q {
    let m = n as i64;
    let h = ceil_div(n, 3);
    let h1 = ceil_div(n - 1, 3);
    q(m * (m - 1), 2) - q(3 * h * h, 2) + q(9 * h, 2) - Q::from_integer(3)
        + q(m - 1, 3) * Q::from_integer(h - h1)
}

fn n4_poly(n: u64) -> Q {
    let m = n as i64;
    q(-35, 12) + q(5 * m, 3) + q(m * m, 4)
        - (q(25, 12) - q(m, 6)) * chi_q(6, n)
        - (q(7, 3) - q(m, 3)) * chi_q(6, n + 1)
        - (q(17, 12) - q(m, 6)) * chi_q(6, n + 2)
        - (q(10, 3) - q(m, 3)) * chi_q(6, n + 3)
        - (q(41, 12) - q(m, 2)) * chi_q(6, n + 4)
}

pub fn n2_closed(n: u64) -> Result<u64> {
    WorstCaseFormula::N2.eval(n)
}

pub fn n3_closed(n: u64) -> Result<u64> {
    WorstCaseFormula::N3.eval(n)
}

pub fn n4_closed(n: u64) -> Result<u64> {
    WorstCaseFormula::N4.eval(n)
}

/// Worst case of plain insertion sort, `n(n-1)/2`.
pub fn linear_worst_case(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Digits of γ as published; increments up to [`GAMMA_CERTIFIED_K`] are
/// checked against the published list.
pub const GAMMA_DIGITS: &str = "2.243609061420001";
pub const GAMMA_CERTIFIED_K: u32 = 17;
/// Largest `k` whose increment fits in `u128`.
pub const GAMMA_MAX_K: u32 = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaIncrement {
    pub k: u32,
    pub value: u128,
    /// False when `k` lies beyond the published list, so the truncated γ
    /// may no longer determine the ceiling.
    pub certified: bool,
}

/// `h_k = ceil((γ^k - 1) / (γ - 1))`, with γ taken as the exact decimal
/// [`GAMMA_DIGITS`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaSequence {
    gamma: BigRational,
}

impl Default for GammaSequence {
    fn default() -> Self {
        Self::with_gamma(GAMMA_DIGITS).expect("valid literal")
    }
}

impl GammaSequence {
    /// Parses a decimal literal such as `"2.2436"` exactly.
    pub fn with_gamma(digits: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("not a decimal number above 1: {digits:?}"));
        let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
        if int.is_empty() || !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let numer = BigInt::from_str(&format!("{int}{frac}")).map_err(|_| bad())?;
        let denom = BigInt::from(10u32).pow(frac.len() as u32);
        let gamma = BigRational::new(numer, denom);
        if gamma <= BigRational::one() {
            return Err(bad());
        }
        Ok(GammaSequence { gamma })
    }

    pub fn gamma(&self) -> &BigRational {
        &self.gamma
    }

    pub fn gamma_f64(&self) -> f64 {
        self.gamma.to_f64().unwrap_or(f64::NAN)
    }

    pub fn increment(&self, k: u32) -> Result<GammaIncrement> {
        if k == 0 {
            return Err(Error::ZeroArgument);
        }
        if k > GAMMA_MAX_K {
            return Err(Error::InvalidArgument(format!(
                "gamma increment index {k} exceeds {GAMMA_MAX_K}"
            )));
        }
        let one = BigRational::one();
        let geometric = (num_traits::pow(self.gamma.clone(), k as usize) - &one) / (&self.gamma - &one);
        let value = geometric.ceil().to_integer();
        let value = value
            .to_biguint()
            .and_then(|v: BigUint| v.to_u128())
            .ok_or_else(|| Error::InvalidArgument(format!("gamma increment {k} overflows")))?;
        Ok(GammaIncrement {
            k,
            value,
            certified: k <= GAMMA_CERTIFIED_K,
        })
    }

    /// The first `count` increments.
    pub fn increments(&self, count: u32) -> Result<Vec<GammaIncrement>> {
        (1..=count).map(|k| self.increment(k)).collect()
    }
}

pub fn gamma_increment(k: u32) -> Result<GammaIncrement> {
    GammaSequence::default().increment(k)
}

/// How a chain value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueSource {
    ClosedForm,
    ReducedSpace,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCell {
    pub index: SequenceIndex,
    pub sequence: GapSequence,
    /// `None` when the reduced space is larger than the enumeration budget.
    pub value: Option<u64>,
    pub source: Option<ValueSource>,
    /// Size of the space that would have to be walked, as a decimal string.
    pub space_size: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ChainVerdict {
    Holds,
    /// Two computed values violate strict decrease; indices of the first pair.
    Fails {
        left: SequenceIndex,
        right: SequenceIndex,
    },
    /// Some values could not be computed and none of the rest conflict.
    Unverifiable {
        missing: Vec<SequenceIndex>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRow {
    pub n: u64,
    pub cells: Vec<ChainCell>,
    pub verdict: ChainVerdict,
}

/// Result of checking `n_{c1}(n) < n_{c2}(n) < ...` over a range of `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub chain: Vec<SequenceIndex>,
    pub rows: Vec<ChainRow>,
}

impl ChainReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.verdict == ChainVerdict::Holds)
    }

    pub fn any_fail(&self) -> bool {
        self.rows
            .iter()
            .any(|r| matches!(r.verdict, ChainVerdict::Fails { .. }))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn render_text(&self) -> String {
        let header: Vec<String> = self.chain.iter().map(|i| format!("n_{i}")).collect();
        let mut out = format!("chain {}\n", header.join(" < "));
        for row in &self.rows {
            let values: Vec<String> = row
                .cells
                .iter()
                .map(|c| c.value.map_or("?".to_string(), |v| v.to_string()))
                .collect();
            let verdict = match &row.verdict {
                ChainVerdict::Holds => "holds".to_string(),
                ChainVerdict::Fails { left, right } => {
                    format!("FAILS (n_{left} >= n_{right})")
                }
                ChainVerdict::Unverifiable { missing } => {
                    let m: Vec<String> = missing.iter().map(|i| format!("n_{i}")).collect();
                    format!("unverifiable ({} beyond budget)", m.join(", "))
                }
            };
            let _ = writeln!(out, "n={:<4} {:<28} {}", row.n, values.join(" "), verdict);
        }
        out
    }
}

fn chain_cell(n: u64, index: SequenceIndex, cfg: &ExecConfig) -> Result<ChainCell> {
    let sequence = GapSequence::from_index(index);
    let nn = n as usize;
    let space_size = match sequence.largest() {
        Some(h) if (h as u64) < n => ReducedSpaceSpec::new(nn, h as usize)?.cardinality.to_string(),
        _ => "1".to_string(),
    };
    let mut cell = ChainCell {
        index,
        sequence: sequence.clone(),
        value: None,
        source: None,
        space_size,
    };
    if let Some(f) = WorstCaseFormula::for_index(index.get()) {
        if n >= f.domain_start() {
            cell.value = Some(f.eval(n)?);
            cell.source = Some(ValueSource::ClosedForm);
            return Ok(cell);
        }
    }
    match max_comparisons_reduced(nn, &sequence, None, cfg) {
        Ok(r) => {
            cell.value = Some(r.max);
            cell.source = Some(ValueSource::ReducedSpace);
        }
        Err(e) if e.is_capacity() => {}
        Err(e) => return Err(e),
    }
    Ok(cell)
}

fn verdict(cells: &[ChainCell]) -> ChainVerdict {
    for (a, left) in cells.iter().enumerate() {
        for right in &cells[a + 1..] {
            if let (Some(x), Some(y)) = (left.value, right.value) {
                if x >= y {
                    return ChainVerdict::Fails {
                        left: left.index,
                        right: right.index,
                    };
                }
            }
        }
    }
    let missing: Vec<_> = cells
        .iter()
        .filter(|c| c.value.is_none())
        .map(|c| c.index)
        .collect();
    if missing.is_empty() {
        ChainVerdict::Holds
    } else {
        ChainVerdict::Unverifiable { missing }
    }
}

/// Checks the strict chain `n_{chain[0]}(n) < n_{chain[1]}(n) < ...` for
/// every `n` in the range. Each value comes from a closed form when one
/// applies and from the reduced-space maximum otherwise; values whose space
/// exceeds `cfg.enumeration_budget` are left unknown.
pub fn verify_chain(
    n_range: std::ops::RangeInclusive<u64>,
    chain: &[SequenceIndex],
    cfg: &ExecConfig,
) -> Result<ChainReport> {
    let ns: Vec<u64> = n_range.collect();
    for &n in &ns {
        if n < 2 || n as usize > crate::exec::MAX_N {
            return Err(Error::UnsupportedN {
                n: n as usize,
                min: 2,
                max: crate::exec::MAX_N,
            });
        }
        for &i in chain {
            GapSequence::from_index(i).check_valid_for_n(n as usize)?;
        }
    }

    let per_n = ExecConfig { jobs: 1, ..*cfg };
    let next = AtomicUsize::new(0);
    let rows: Mutex<Vec<Result<ChainRow>>> = Mutex::new(Vec::new());
    let work = || loop {
        let k = next.fetch_add(1, Ordering::Relaxed);
        let Some(&n) = ns.get(k) else { break };
        let row = chain
            .iter()
            .map(|&i| chain_cell(n, i, &per_n))
            .collect::<Result<Vec<_>>>()
            .map(|cells| ChainRow {
                n,
                verdict: verdict(&cells),
                cells,
            });
        rows.lock().unwrap().push(row);
    };
    let jobs = cfg.jobs.clamp(1, ns.len().max(1));
    if jobs == 1 {
        work();
    } else {
        std::thread::scope(|s| {
            for _ in 0..jobs {
                s.spawn(work);
            }
        });
    }

    let mut rows = rows
        .into_inner()
        .unwrap()
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| r.n);
    Ok(ChainReport {
        chain: chain.to_vec(),
        rows,
    })
}

/// Outcome of checking an "iff n >= threshold" claim over a range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdCheck {
    pub claim: String,
    pub threshold: u64,
    pub checked_through: u64,
    /// Values of `n` where the predicate disagrees with `n >= threshold`.
    pub counterexamples: Vec<u64>,
}

impl ThresholdCheck {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn threshold(
    claim: &str,
    threshold: u64,
    range: std::ops::RangeInclusive<u64>,
    pred: impl Fn(u64) -> Result<bool>,
) -> Result<ThresholdCheck> {
    let checked_through = *range.end();
    let mut counterexamples = Vec::new();
    for n in range {
        if pred(n)? != (n >= threshold) {
            counterexamples.push(n);
        }
    }
    Ok(ThresholdCheck {
        claim: claim.to_string(),
        threshold,
        checked_through,
        counterexamples,
    })
}

/// The three threshold claims about `n2`, `n3` and insertion sort, checked
/// for every `n` in each formula's domain up to `max_n`.
pub fn threshold_checks(max_n: u64) -> Result<Vec<ThresholdCheck>> {
    Ok(vec![
        threshold("n2(n) < n(n-1)/2", 9, 3..=max_n, |n| {
            Ok(n2_closed(n)? < linear_worst_case(n))
        })?,
        threshold("n3(n) < n(n-1)/2", 7, 4..=max_n, |n| {
            Ok(n3_closed(n)? < linear_worst_case(n))
        })?,
        threshold("n3(n) < n2(n)", 9, 4..=max_n, |n| {
            Ok(n3_closed(n)? < n2_closed(n)?)
        })?,
    ])
}
