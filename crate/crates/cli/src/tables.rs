use std::fmt::Write as _;

use anyhow::Result;
use clap::ValueEnum;
use shellgap_core::closed_forms::{linear_worst_case, WorstCaseFormula};
use shellgap_core::known::{self, ERRATA};
use shellgap_core::{bad1_count, SearchHistory, SearchOptions};

use crate::{cmd_search, search_key, Ctx};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    /// Optimal sequence, index and minimax count per n
    Optimal,
    /// Sizes of the reduced spaces for one n
    Counts,
    /// Minimax count against plain insertion sort
    ShellVsLinear,
    /// Closed-form worst cases of {1,2}, {1,3} and {1,2,3}
    Formulas,
}

/// Searches up to this n run on demand; larger ones are read from the store.
const COMPUTE_THROUGH: usize = 12;
const MISSING: &str = "\u{2014}";

#[derive(Default)]
struct Footnotes {
    notes: Vec<String>,
}

impl Footnotes {
    /// Renders `computed`, marked with a footnote when it differs from `printed`.
    fn cell(&mut self, what: &str, n: usize, computed: String, printed: Option<String>) -> String {
        match printed {
            Some(p) if p != computed => {
                let erratum = ERRATA
                    .iter()
                    .find(|e| e.n == n && e.printed.to_string() == p && e.computed.to_string() == computed);
                let mut note = format!("n={n} {what}: published value {p}, computed {computed}");
                if let Some(e) = erratum {
                    note.push_str(&format!(" ({})", e.note));
                }
                self.notes.push(note);
                format!("{computed} [{}]", self.notes.len())
            }
            _ => computed,
        }
    }

    fn write(&self, out: &mut String) {
        if !self.notes.is_empty() {
            out.push('\n');
        }
        for (k, note) in self.notes.iter().enumerate() {
            let _ = writeln!(out, "[{}] {note}", k + 1);
        }
    }
}

fn history(ctx: &Ctx, n: usize) -> Result<Option<SearchHistory>> {
    let opts = SearchOptions {
        jobs: ctx.cfg.jobs,
        ..SearchOptions::default()
    };
    if n <= COMPUTE_THROUGH {
        return cmd_search(ctx, n, &opts, false).map(Some);
    }
    let stored: Option<SearchHistory> = ctx.store.peek(&search_key(n, &opts))?;
    Ok(stored.filter(|h| h.complete))
}

pub fn render(ctx: &Ctx, which: Which, n: usize, max_n: Option<usize>) -> Result<String> {
    match which {
        Which::Optimal => optimal(ctx, max_n.unwrap_or(16)),
        Which::Counts => counts(n),
        Which::ShellVsLinear => shell_vs_linear(ctx, max_n.unwrap_or(16)),
        Which::Formulas => formulas(max_n.unwrap_or(30)),
    }
}

fn optimal(ctx: &Ctx, max_n: usize) -> Result<String> {
    let mut notes = Footnotes::default();
    let mut out = format!(
        "{:<4} {:<22} {:<10} {}\n",
        "n", "optimal sequence", "index", "c_n"
    );
    for n in 1..=max_n {
        let printed = known::optimal(n).filter(|_| n <= 16);
        let (seq, index, c) = match history(ctx, n)? {
            Some(h) => {
                let seq = h.final_sequence.as_ref().map_or(String::new(), |s| s.to_string());
                let index = h.final_index.map_or("-".to_string(), |i| i.to_string());
                let c = h.final_c.map_or(MISSING.to_string(), |c| c.to_string());
                (
                    notes.cell("sequence", n, seq, printed.map(|p| join(p.sequence))),
                    notes.cell(
                        "index",
                        n,
                        index,
                        printed.map(|p| p.index.map_or("-".to_string(), |i| i.to_string())),
                    ),
                    notes.cell("c_n", n, c, printed.map(|p| p.c.to_string())),
                )
            }
            None => (MISSING.to_string(), MISSING.to_string(), MISSING.to_string()),
        };
        let _ = writeln!(out, "{n:<4} {seq:<22} {index:<10} {c}");
    }
    notes.write(&mut out);
    Ok(out)
}

fn join(seq: &[u32]) -> String {
    seq.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(", ")
}

fn counts(n: usize) -> Result<String> {
    let mut notes = Footnotes::default();
    let mut out = format!("n={n}\n{:<6} {}\n", "s(1)", "|P_n,(s,1)|");
    for h in 1..n.max(2) {
        let count = bad1_count(n, h)?;
        let printed = (n == 16)
            .then(|| known::BAD1_COUNTS_16.iter().find(|(k, _)| *k == h))
            .flatten()
            .map(|(_, c)| c.to_string());
        let cell = notes.cell("count", n, count.to_string(), printed);
        let _ = writeln!(out, "{h:<6} {cell}");
    }
    notes.write(&mut out);
    Ok(out)
}

fn shell_vs_linear(ctx: &Ctx, max_n: usize) -> Result<String> {
    let mut notes = Footnotes::default();
    let mut rows: [Vec<String>; 4] = Default::default();
    for n in 1..=max_n {
        let linear = linear_worst_case(n as u64);
        rows[0].push(n.to_string());
        rows[1].push(linear.to_string());
        match history(ctx, n)?.and_then(|h| h.final_c) {
            Some(c) => {
                let printed = known::OPTIMAL.get(n - 1);
                rows[2].push(notes.cell("c_n", n, c.to_string(), printed.map(|p| p.c.to_string())));
                let improvement = known::IMPROVEMENT.get(n - 1).map(|v| v.to_string());
                rows[3].push(notes.cell("improvement", n, (linear - c).to_string(), improvement));
            }
            None => {
                rows[2].push(MISSING.to_string());
                rows[3].push(MISSING.to_string());
            }
        }
    }
    let labels = ["n", "Linear", "Shellsort", "Improvement"];
    let width = rows
        .iter()
        .flatten()
        .map(|c| c.chars().count())
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for (label, row) in labels.iter().zip(&rows) {
        let _ = write!(out, "{label:<12}");
        for cell in row {
            let _ = write!(out, " {cell:>width$}");
        }
        out.push('\n');
    }
    notes.write(&mut out);
    Ok(out)
}

/// Exact printed value of `n_i(n)` from the search logs, if logged.
fn printed_value(n: usize, i: u64) -> Option<String> {
    known::search_log(n)?
        .rows
        .iter()
        .find(|r| r.index == i && !r.lower_bound)
        .map(|r| r.value.to_string())
}

fn formulas(max_n: usize) -> Result<String> {
    let mut notes = Footnotes::default();
    let mut out = format!(
        "{:<4} {:<10} {:<10} {:<10} {}\n",
        "n", "n(n-1)/2", "n2 {1,2}", "n3 {1,3}", "n4 {1,2,3}"
    );
    for n in 3..=max_n as u64 {
        let mut cells = Vec::new();
        for f in WorstCaseFormula::ALL {
            let cell = if n >= f.domain_start() {
                let v = f.eval(n)?.to_string();
                notes.cell(
                    f.name(),
                    n as usize,
                    v,
                    printed_value(n as usize, f.sequence_index().get()),
                )
            } else {
                "-".to_string()
            };
            cells.push(cell);
        }
        let _ = writeln!(
            out,
            "{n:<4} {:<10} {:<10} {:<10} {}",
            linear_worst_case(n),
            cells[0],
            cells[1],
            cells[2]
        );
    }
    notes.write(&mut out);
    Ok(out)
}
