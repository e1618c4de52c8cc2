use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fsblocks::group::DEFAULT_BOUND;
use fsblocks::groupspec::BuildContext;
use fsblocks::cache::TableCache;
use fsblocks::harness::{self, RunOptions};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Character tables, 2-blocks and Frobenius-Schur indicator checks for
/// finite permutation groups.
#[derive(Parser, Debug)]
#[command(name = "fsblocks", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Directory for cached character tables.
    #[arg(long, global = true, env = "FSBLOCKS_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Worker threads; parallelism is across groups only.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Selects the prime used by the character table algorithm. Results do
    /// not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Refuse to enumerate groups with more elements than this.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    max_order: usize,

    /// Directory of fixture groups for `fixture(name)` atoms.
    #[arg(long, global = true, env = "FSBLOCKS_FIXTURES")]
    fixtures: Option<PathBuf>,

    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Include wall-clock times in reports.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Reproduce one of the expected-value tables.
    Table {
        /// main-d3, main-d4, q8, q8-h0 or homocyclic
        id: String,
    },
    /// Run block invariants, lemma checks and conjecture checks.
    Scan {
        /// Corpus file: one groupspec per line, `#` comments.
        #[arg(long, conflicts_with = "groups")]
        corpus: Option<PathBuf>,
        /// all, properties, lemmas, conjectures, or check names (comma separated).
        #[arg(long, default_value = "all")]
        checks: String,
        /// Groupspecs to scan; the default corpus when none are given.
        groups: Vec<String>,
    },
    /// Print the character table with indicators.
    Chartab { groupspec: String },
    /// Print the 2-blocks with defect pairs and indicators.
    Blockreport { groupspec: String },
    /// List the default scan corpus.
    Corpus,
}

fn emit<T: Serialize>(cli: &Cli, report: &T, text: impl FnOnce() -> String) -> Result<(), String> {
    let json = serde_json::to_string_pretty(report).map_err(|e| e.to_string())?;
    if let Some(path) = &cli.out {
        std::fs::write(path, format!("{json}\n")).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    match cli.format {
        Format::Json => println!("{json}"),
        Format::Text => print!("{}", text()),
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<i32, String> {
    let cache = match &cli.cache_dir {
        Some(d) => Some(TableCache::new(d).map_err(|e| e.to_string())?),
        None => None,
    };
    let opts = RunOptions {
        ctx: BuildContext { fixtures: cli.fixtures.clone(), max_order: cli.max_order },
        seed: cli.seed,
        cache,
        timings: cli.timings,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build()
        .map_err(|e| e.to_string())?;
    match &cli.cmd {
        Cmd::Table { id } => {
            let rows = harness::rows_for(id).map_err(|e| e.to_string())?;
            let reports = pool.install(|| rows.par_iter().map(|r| harness::run_row(r, &opts)).collect());
            let rep = harness::table_report(id, reports, opts.seed);
            emit(cli, &rep, || rep.to_text())?;
            Ok(rep.summary.exit_code())
        }
        Cmd::Scan { corpus, checks, groups } => {
            let list = match corpus {
                Some(p) => harness::parse_corpus(
                    &std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?,
                ),
                None if groups.is_empty() => harness::default_corpus(),
                None => groups.clone(),
            };
            let scans = pool.install(|| {
                list.par_iter()
                    .map(|g| {
                        log::info!("scanning {g}");
                        harness::scan_group(g, checks, &opts)
                    })
                    .collect()
            });
            let rep = harness::scan_report(scans, opts.seed);
            emit(cli, &rep, || rep.to_text())?;
            Ok(rep.summary.exit_code())
        }
        Cmd::Chartab { groupspec } => {
            let rep = harness::chartab_report(groupspec, &opts).map_err(|e| e.to_string())?;
            emit(cli, &rep, || rep.to_text())?;
            Ok(0)
        }
        Cmd::Blockreport { groupspec } => {
            let rep = harness::block_report(groupspec, &opts).map_err(|e| e.to_string())?;
            emit(cli, &rep, || rep.to_text())?;
            Ok(0)
        }
        Cmd::Corpus => {
            let list = harness::default_corpus();
            emit(cli, &list, || list.iter().map(|g| format!("{g}\n")).collect())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(msg) => {
            eprintln!("fsblocks: {msg}");
            ExitCode::from(2)
        }
    }
}
