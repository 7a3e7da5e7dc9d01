use std::fmt::Write as _;

use anyhow::Result;
use clap::ValueEnum;
use shellgap_core::closed_forms::{threshold_checks, WorstCaseFormula};
use shellgap_core::known;
use shellgap_core::{
    index_of_sequence, max_comparisons_full, max_comparisons_reduced, sequence_from_index, verify_chain,
    ChainVerdict, GammaSequence, GapSequence, SequenceIndex,
};

use crate::Ctx;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Index/sequence bijection
    Codec,
    /// Full-space and reduced-space maxima agree for n <= 8
    Reduction,
    /// Closed forms against reduced-space maxima
    Formulas,
    /// Strict inequality chains between small indices
    Chains,
    /// Published γ-sequence increments
    Gamma,
    /// "iff n >= k" claims about the closed forms, n <= 10000
    Thresholds,
}

pub struct Report {
    pub passed: bool,
    pub text: String,
}

#[derive(Default)]
struct Checks {
    text: String,
    total: usize,
    failed: usize,
}

impl Checks {
    fn check(&mut self, ok: bool, line: impl AsRef<str>) {
        self.total += 1;
        if !ok {
            self.failed += 1;
        }
        let _ = writeln!(
            self.text,
            "{} {}",
            if ok { "PASS" } else { "FAIL" },
            line.as_ref()
        );
    }

    fn finish(mut self) -> Report {
        let _ = writeln!(
            self.text,
            "{}/{} checks passed",
            self.total - self.failed,
            self.total
        );
        Report {
            passed: self.failed == 0,
            text: self.text,
        }
    }
}

pub fn run(ctx: &Ctx, suite: Suite) -> Result<Report> {
    let mut c = Checks::default();
    match suite {
        Suite::Codec => codec(&mut c)?,
        Suite::Reduction => reduction(ctx, &mut c)?,
        Suite::Formulas => formulas(ctx, &mut c)?,
        Suite::Chains => chains(ctx, &mut c)?,
        Suite::Gamma => gamma(&mut c)?,
        Suite::Thresholds => thresholds(&mut c)?,
    }
    Ok(c.finish())
}

fn codec(c: &mut Checks) -> Result<()> {
    let listed: [(u64, &[u32]); 8] = [
        (1, &[1]),
        (4, &[1, 2, 3]),
        (7, &[1, 3, 4]),
        (13, &[1, 4, 5]),
        (18, &[1, 2, 6]),
        (41, &[1, 5, 7]),
        (165, &[1, 4, 7, 9]),
        (547, &[1, 3, 7, 11]),
    ];
    for (i, s) in listed {
        let want = GapSequence::new(s.iter().copied())?;
        c.check(sequence_from_index(i)? == want, format!("s_{i} = {{{want}}}"));
    }
    let limit = 1u64 << 20;
    let bad = (1..=limit).find(|&i| {
        sequence_from_index(i)
            .and_then(|s| index_of_sequence(&s))
            .map(|j| j.get())
            .ok()
            != Some(i)
    });
    c.check(
        bad.is_none(),
        format!("index -> sequence -> index roundtrip for i <= {limit}"),
    );
    Ok(())
}

fn sequences(n: usize) -> Vec<GapSequence> {
    if n == 1 {
        return vec![GapSequence::empty()];
    }
    (1..=SequenceIndex::count_for_n(n))
        .map(|i| GapSequence::from_index(SequenceIndex::new(i).expect("nonzero")))
        .collect()
}

fn reduction(ctx: &Ctx, c: &mut Checks) -> Result<()> {
    for n in 1..=8 {
        let mut bad = Vec::new();
        let seqs = sequences(n);
        for s in &seqs {
            let full = max_comparisons_full(n, s, &ctx.cfg)?;
            let reduced = max_comparisons_reduced(n, s, None, &ctx.cfg)?.max;
            if full != reduced {
                bad.push(format!("{{{s}}}: {full} vs {reduced}"));
            }
        }
        c.check(
            bad.is_empty(),
            format!(
                "n={n}: full = reduced for {} sequences {}",
                seqs.len(),
                bad.join("; ")
            )
            .trim_end(),
        );
    }
    Ok(())
}

fn formulas(ctx: &Ctx, c: &mut Checks) -> Result<()> {
    let ranges = [
        (WorstCaseFormula::N2, 18u64),
        (WorstCaseFormula::N3, 18),
        (WorstCaseFormula::N4, 16),
    ];
    for (f, last) in ranges {
        let mut bad = Vec::new();
        for n in f.domain_start()..=last {
            let closed = f.eval(n)?;
            let brute = max_comparisons_reduced(n as usize, &f.sequence(), None, &ctx.cfg)?.max;
            if closed != brute {
                bad.push(format!("n={n}: {closed} vs {brute}"));
            }
        }
        c.check(
            bad.is_empty(),
            format!(
                "{f} {{{}}} closed form = reduced-space max for n={}..{last} {}",
                f.sequence(),
                f.domain_start(),
                bad.join("; ")
            )
            .trim_end(),
        );
    }
    for f in [WorstCaseFormula::N2, WorstCaseFormula::N3] {
        let mut bad = None;
        for n in f.domain_start()..=10_000 {
            if f.eval_ceiling_form(n)? != Some(f.eval(n)?) {
                bad = Some(n);
                break;
            }
        }
        c.check(
            bad.is_none(),
            format!("{f}: ceiling form = polynomial form for n<=10000"),
        );
    }
    Ok(())
}

fn chains(ctx: &Ctx, c: &mut Checks) -> Result<()> {
    let idx =
        |v: &[u64]| -> Result<Vec<SequenceIndex>> { v.iter().map(|&i| Ok(SequenceIndex::new(i)?)).collect() };
    let short = verify_chain(9..=13, &idx(&[7, 4, 3, 2, 1])?, &ctx.cfg)?;
    for row in &short.rows {
        let values: Vec<String> = row
            .cells
            .iter()
            .map(|x| x.value.map_or("?".into(), |v| v.to_string()))
            .collect();
        let detail = match &row.verdict {
            ChainVerdict::Holds => String::new(),
            ChainVerdict::Fails { left, right } => format!(" (n_{left} >= n_{right})"),
            ChainVerdict::Unverifiable { .. } => " (unverifiable)".to_string(),
        };
        c.check(
            row.verdict == ChainVerdict::Holds,
            format!("n={}: n7<n4<n3<n2<n1 with [{}]{detail}", row.n, values.join(", ")),
        );
    }
    let long = verify_chain(19..=30, &idx(&[11, 7, 4, 3, 2, 1])?, &ctx.cfg)?;
    for row in &long.rows {
        let ok = matches!(row.verdict, ChainVerdict::Unverifiable { .. });
        let state = match &row.verdict {
            ChainVerdict::Holds => "holds".to_string(),
            ChainVerdict::Fails { left, right } => format!("fails (n_{left} >= n_{right})"),
            ChainVerdict::Unverifiable { missing } => format!(
                "unverifiable, {} beyond the enumeration budget",
                missing
                    .iter()
                    .map(|i| format!("n_{i}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        };
        c.check(ok, format!("n={}: n11<n7<n4<n3<n2<n1 {state}", row.n));
    }
    Ok(())
}

fn gamma(c: &mut Checks) -> Result<()> {
    let got = GammaSequence::default().increments(17)?;
    let matched = got
        .iter()
        .zip(known::GAMMA_INCREMENTS)
        .filter(|(g, want)| g.value == *want)
        .count();
    let values: Vec<String> = got.iter().map(|g| g.value.to_string()).collect();
    c.check(
        matched == 17,
        format!("{matched}/17 increments match: {}", values.join(", ")),
    );
    Ok(())
}

fn thresholds(c: &mut Checks) -> Result<()> {
    for t in threshold_checks(10_000)? {
        let detail = if t.holds() {
            String::new()
        } else {
            format!(" (disagrees at n={:?})", t.counterexamples)
        };
        c.check(
            t.holds(),
            format!(
                "{} iff n >= {}, n <= {}{detail}",
                t.claim, t.threshold, t.checked_through
            ),
        );
    }
    Ok(())
}
