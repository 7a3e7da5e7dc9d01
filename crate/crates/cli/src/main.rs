use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use shellgap_core::{
    distribution, max_comparisons_full, max_comparisons_reduced, minimax_search, resume, ExecConfig,
    GapSequence, ReducedSpaceSpec, SearchHistory, SearchOptions, SequenceIndex,
};

mod store;
mod tables;
mod verify;

use store::{Key, ResultStore};

#[derive(Parser)]
#[command(name = "shellgap", version)]
#[command(about = "Exhaustive search for worst-case optimal Shellsort gap sequences")]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Worker threads; results do not depend on this
    #[arg(long, global = true, default_value_t = default_jobs())]
    jobs: usize,

    /// Result store directory
    #[arg(
        long,
        global = true,
        env = "SHELLGAP_STORE",
        default_value = "shellgap-results"
    )]
    store: PathBuf,

    /// Do not read or write the result store
    #[arg(long, global = true)]
    no_store: bool,

    /// Recompute even when a stored result exists
    #[arg(long, global = true)]
    force: bool,

    /// Largest reduced space a single evaluation may walk
    #[arg(long, global = true, default_value_t = ExecConfig::default().enumeration_budget)]
    enumeration_budget: u128,

    /// Largest n for which all n! permutations may be walked
    #[arg(long, global = true, default_value_t = ExecConfig::default().full_space_max_n)]
    full_max_n: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Minimax search for the optimal gap sequence of n elements
    Search {
        n: usize,
        /// Stop after this sequence index
        #[arg(long)]
        limit: Option<u64>,
        /// Stop after evaluating this many permutations
        #[arg(long)]
        budget: Option<u128>,
        /// Append progress to this JSONL file
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Continue the search recorded in --checkpoint
        #[arg(long, requires = "checkpoint")]
        resume: bool,
        /// Skip the early exit once an index reaches the current bound
        #[arg(long)]
        no_prune: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Worst-case comparison count of one gap sequence
    Eval {
        n: usize,
        #[command(flatten)]
        sequence: SequenceArg,
        /// Walk the reduced space (default)
        #[arg(long, conflicts_with = "full")]
        reduced: bool,
        /// Walk all n! permutations
        #[arg(long)]
        full: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Render result tables, marking cells that disagree with published values
    Tables {
        #[arg(value_enum)]
        which: tables::Which,
        /// n for the counts table
        #[arg(long, default_value_t = 16)]
        n: usize,
        /// Largest n to compute; larger columns come from the store or show as missing
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Histogram of comparison counts over all n! permutations
    Dist {
        n: usize,
        /// Comma-separated increments
        #[arg(long)]
        seq: String,
        #[arg(long, value_enum, default_value_t = DistFormat::Csv)]
        format: DistFormat,
        /// Write to this file instead of stdout
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run an invariant suite; exits 3 on any failure
    Verify {
        #[arg(value_enum)]
        suite: verify::Suite,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SequenceArg {
    /// Comma-separated increments, e.g. 1,3,7
    #[arg(long)]
    seq: Option<String>,
    /// Sequence index
    #[arg(long)]
    index: Option<u64>,
}

impl SequenceArg {
    fn resolve(&self) -> Result<GapSequence> {
        match (&self.seq, self.index) {
            (Some(s), _) => Ok(s.parse().with_context(|| format!("invalid sequence {s:?}"))?),
            (None, Some(i)) => Ok(GapSequence::from_index(SequenceIndex::new(i)?)),
            (None, None) => bail!("give --seq or --index"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DistFormat {
    Csv,
    Json,
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |p| p.get())
}

pub struct Ctx {
    pub cfg: ExecConfig,
    pub store: ResultStore,
}

/// Distinguishes outcomes that map to dedicated exit codes.
#[derive(Debug)]
pub struct VerificationFailed;

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("verification failed")
    }
}

impl std::error::Error for VerificationFailed {}

const EXIT_USAGE: u8 = 1;
const EXIT_CAPACITY: u8 = 2;
const EXIT_VERIFY: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if e.downcast_ref::<VerificationFailed>().is_some() {
                return ExitCode::from(EXIT_VERIFY);
            }
            eprintln!("error: {e:#}");
            let capacity = e.chain().any(|c| {
                c.downcast_ref::<shellgap_core::Error>()
                    .is_some_and(|e| e.is_capacity())
            });
            ExitCode::from(if capacity { EXIT_CAPACITY } else { EXIT_USAGE })
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let g = cli.global;
    let ctx = Ctx {
        cfg: ExecConfig {
            jobs: g.jobs.max(1),
            full_space_max_n: g.full_max_n,
            enumeration_budget: g.enumeration_budget,
        },
        store: ResultStore::new((!g.no_store).then_some(g.store), g.force),
    };
    match cli.command {
        Command::Search {
            n,
            limit,
            budget,
            checkpoint,
            resume,
            no_prune,
            format,
        } => {
            let opts = SearchOptions {
                index_limit: limit,
                budget,
                jobs: ctx.cfg.jobs,
                prune: !no_prune,
                checkpoint,
            };
            let h = cmd_search(&ctx, n, &opts, resume)?;
            match format {
                Format::Text => print!("{}", search_text(&h)),
                Format::Json => println!("{}", serde_json::to_string_pretty(&h)?),
            }
            Ok(())
        }
        Command::Eval {
            n,
            sequence,
            reduced: _,
            full,
            format,
        } => cmd_eval(&ctx, n, &sequence.resolve()?, full, format),
        Command::Tables { which, n, max_n } => {
            print!("{}", tables::render(&ctx, which, n, max_n)?);
            Ok(())
        }
        Command::Dist {
            n,
            seq,
            format,
            output,
        } => cmd_dist(&ctx, n, &seq, format, output),
        Command::Verify { suite } => {
            let report = verify::run(&ctx, suite)?;
            print!("{}", report.text);
            if report.passed {
                Ok(())
            } else {
                Err(VerificationFailed.into())
            }
        }
    }
}

pub fn search_key(n: usize, opts: &SearchOptions) -> Key {
    let mut variant = String::new();
    if let Some(l) = opts.index_limit {
        variant.push_str(&format!("limit{l}"));
    }
    if let Some(b) = opts.budget {
        variant.push_str(&format!("budget{b}"));
    }
    if !opts.prune {
        variant.push_str("noprune");
    }
    Key::new("search", n).variant(variant)
}

pub fn cmd_search(ctx: &Ctx, n: usize, opts: &SearchOptions, resume_run: bool) -> Result<SearchHistory> {
    let key = search_key(n, opts);
    let h = if resume_run {
        let path = opts.checkpoint.as_deref().expect("clap requires --checkpoint");
        resume(path, n, opts)?
    } else if opts.checkpoint.is_some() {
        minimax_search(n, opts)?
    } else {
        return ctx.store.get_or_compute(&key, || Ok(minimax_search(n, opts)?));
    };
    ctx.store.put(&key, &h)?;
    Ok(h)
}

fn search_text(h: &SearchHistory) -> String {
    let mut out = h.render_table();
    let seq = h.final_sequence.as_ref().map_or(String::new(), |s| s.to_string());
    let index = h.final_index.map_or("-".to_string(), |i| i.to_string());
    let c = h.final_c.map_or("-".to_string(), |c| c.to_string());
    if h.complete {
        out.push_str(&format!("c_{}={c} s={{{seq}}} i={index}\n", h.n));
    } else {
        out.push_str(&format!("c_{}<={c} s={{{seq}}} i={index} complete=false\n", h.n));
    }
    out
}

#[derive(serde::Serialize, serde::Deserialize)]
struct EvalResult {
    n: usize,
    sequence: GapSequence,
    index: Option<SequenceIndex>,
    space: String,
    space_size: String,
    worst_case: u64,
}

fn cmd_eval(ctx: &Ctx, n: usize, s: &GapSequence, full: bool, format: Format) -> Result<()> {
    let index = s.index();
    let space = if full { "full" } else { "reduced" };
    let mut key = Key::new("eval", n).variant(space);
    match index {
        Some(i) => key = key.index(i.get()),
        None => {
            key = key.variant(format!(
                "{space}-{}",
                s.ascending().map(|h| h.to_string()).collect::<Vec<_>>().join("_")
            ))
        }
    }
    let result = ctx.store.get_or_compute(&key, || {
        s.check_valid_for_n(n)?;
        let (worst_case, space_size) = if full {
            let v = max_comparisons_full(n, s, &ctx.cfg)?;
            (v, shellgap_core::combin::big_factorial(n as u32).to_string())
        } else {
            let size = match s.largest() {
                Some(h) if (h as usize) < n => ReducedSpaceSpec::new(n, h as usize)?.cardinality.to_string(),
                _ => "1".to_string(),
            };
            (max_comparisons_reduced(n, s, None, &ctx.cfg)?.max, size)
        };
        Ok(EvalResult {
            n,
            sequence: s.clone(),
            index,
            space: space.to_string(),
            space_size,
            worst_case,
        })
    })?;
    match format {
        Format::Text => {
            let i = result.index.map_or("-".to_string(), |i| i.to_string());
            println!("n={} s={{{}}} i={i}", result.n, result.sequence);
            println!("space: {} ({} permutations)", result.space, result.space_size);
            println!("worst case: {}", result.worst_case);
        }
        Format::Json => println!("{}", serde_json::to_string_pretty(&result)?),
    }
    Ok(())
}

fn cmd_dist(ctx: &Ctx, n: usize, seq: &str, format: DistFormat, output: Option<PathBuf>) -> Result<()> {
    let s: GapSequence = seq.parse().with_context(|| format!("invalid sequence {seq:?}"))?;
    let key = match s.index() {
        Some(i) => Key::new("dist", n).index(i.get()),
        None => Key::new("dist", n).variant("empty"),
    };
    let h = ctx
        .store
        .get_or_compute(&key, || Ok(distribution(n, &s, &ctx.cfg)?))?;
    let text = match format {
        DistFormat::Csv => h.to_csv(),
        DistFormat::Json => h.to_json() + "\n",
    };
    match output {
        Some(path) => std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}
