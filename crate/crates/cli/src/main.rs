mod cache;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hwcb::canonical::CanonicalBasis;
use hwcb::cartan::{QuiverFile, Vertex};
use hwcb::crystal::{build_left_graph, to_dot};
use hwcb::hwmodule::{HighestWeightModule, DEFAULT_WORD_CAP};
use hwcb::report::{self, render, ARTIFACT_VERSION};
use hwcb::verify::{Verifier, SUITES};
use hwcb::Error;

use cache::{sha256_hex, Cache, Entry};

const EXIT_VERIFY: i32 = 1;
const EXIT_INPUT: i32 = 2;
const EXIT_CAP: i32 = 3;

#[derive(Parser)]
#[command(name = "hwcb", version, about = "Canonical bases and crystal graphs of highest weight modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum CommandKind {
    Dims,
    Basis,
    Graph,
    Verify,
}

#[derive(Subcommand)]
enum Command {
    /// Weight-space dimensions against Freudenthal multiplicities.
    Dims(RunConfig),
    /// Canonical basis, transition matrices and self-pairings.
    Basis(RunConfig),
    /// Left graph, admissible paths and their order.
    Graph(RunConfig),
    /// Invariant suites.
    Verify(RunConfig),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Dot,
    Table,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Dot => "dot",
            Format::Table => "table",
        }
    }
}

#[derive(clap::Args, Clone)]
struct RunConfig {
    /// Quiver description (JSON).
    #[arg(long)]
    quiver: PathBuf,
    #[arg(long, default_value_t = 6)]
    max_height: u32,
    /// Vertex order used for paths, e.g. `2,1`.
    #[arg(long, value_delimiter = ',')]
    order: Option<Vec<String>>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Directory holding cached results.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    threads: Option<usize>,
    /// Comma-separated suites for `verify` (default: all; empty: none).
    #[arg(long, value_delimiter = ',')]
    suite: Option<Vec<String>>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Largest number of spanning words allowed in one weight space.
    #[arg(long, default_value_t = DEFAULT_WORD_CAP)]
    word_cap: usize,
}

struct Failure {
    code: i32,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded(_) => EXIT_CAP,
            Error::Consistency(_) => EXIT_VERIFY,
            _ => EXIT_INPUT,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn input_error(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, msg: msg.into() }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, cfg) = match cli.command {
        Command::Dims(c) => (CommandKind::Dims, c),
        Command::Basis(c) => (CommandKind::Basis, c),
        Command::Graph(c) => (CommandKind::Graph, c),
        Command::Verify(c) => (CommandKind::Verify, c),
    };
    match run(kind, &cfg) {
        Ok(status) => ExitCode::from(status as u8),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code as u8)
        }
    }
}

fn run(kind: CommandKind, cfg: &RunConfig) -> Result<i32, Failure> {
    if let Some(n) = cfg.threads {
        if n == 0 {
            return Err(input_error("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| input_error(format!("thread pool: {e}")))?;
    }
    let text = fs::read_to_string(&cfg.quiver)
        .map_err(|e| input_error(format!("{}: {e}", cfg.quiver.display())))?;
    let format = cfg.format.unwrap_or(match kind {
        CommandKind::Dims | CommandKind::Verify => Format::Table,
        CommandKind::Basis | CommandKind::Graph => Format::Json,
    });
    if format == Format::Dot && kind != CommandKind::Graph {
        return Err(input_error("--format dot is only available for graph"));
    }
    let suites: Vec<String> = match &cfg.suite {
        None => SUITES.iter().map(|s| s.to_string()).collect(),
        Some(list) => list.iter().filter(|s| !s.is_empty()).cloned().collect(),
    };
    if let Some(bad) = suites.iter().find(|s| !SUITES.contains(&s.as_str())) {
        return Err(input_error(format!("unknown suite {bad:?}; known: {}", SUITES.join(", "))));
    }

    let key = json!({
        "command": command_name(kind),
        "quiver_sha256": sha256_hex(text.as_bytes()),
        "max_height": cfg.max_height,
        "order": cfg.order,
        "format": format.name(),
        "suites": if kind == CommandKind::Verify { json!(suites) } else { json!(null) },
        "word_cap": cfg.word_cap,
        "version": ARTIFACT_VERSION,
    });
    let cache = match &cfg.cache {
        Some(dir) => Some(Cache::open(dir).map_err(|e| input_error(format!("cache {}: {e}", dir.display())))?),
        None => None,
    };
    let entry = match cache.as_ref().and_then(|c| c.get(&key)) {
        Some(hit) => hit,
        None => {
            let fresh = compute(kind, cfg, &text, format, &suites)?;
            if let Some(c) = &cache {
                c.put(&key, &fresh).map_err(|e| input_error(format!("writing cache: {e}")))?;
            }
            fresh
        }
    };
    match &cfg.out {
        Some(path) => fs::write(path, &entry.output).map_err(|e| input_error(format!("{}: {e}", path.display())))?,
        None => print!("{}", entry.output),
    }
    Ok(entry.status)
}

fn command_name(kind: CommandKind) -> &'static str {
    match kind {
        CommandKind::Dims => "dims",
        CommandKind::Basis => "basis",
        CommandKind::Graph => "graph",
        CommandKind::Verify => "verify",
    }
}

fn compute(kind: CommandKind, cfg: &RunConfig, text: &str, format: Format, suites: &[String]) -> Result<Entry, Failure> {
    let (q, lambda) = QuiverFile::parse(text)?.build()?;
    let order: Vec<Vertex> = match &cfg.order {
        None => q.vertices().collect(),
        Some(names) => {
            let order = names.iter().map(|n| q.vertex(n)).collect::<hwcb::Result<Vec<_>>>()?;
            let mut sorted = order.clone();
            sorted.sort_unstable();
            if sorted != q.vertices().collect::<Vec<_>>() {
                return Err(input_error("--order must list every vertex exactly once"));
            }
            order
        }
    };
    let module = Arc::new(HighestWeightModule::new(q, lambda).with_word_cap(cfg.word_cap));
    let h = cfg.max_height;
    let ok = |output: String| Entry { output, status: 0 };
    Ok(match kind {
        CommandKind::Dims => {
            let rows = report::dims_rows(&module, h)?;
            let status = if rows.iter().all(report::DimsRow::agrees) { 0 } else { EXIT_VERIFY };
            let output = match format {
                Format::Json => render(&report::dims_json(&module, h, &rows)),
                _ => report::dims_table(&rows),
            };
            Entry { output, status }
        }
        CommandKind::Basis => {
            let cb = CanonicalBasis::compute(module.clone(), h)?;
            let graph = build_left_graph(&cb)?;
            ok(match format {
                Format::Json => render(&report::basis_json(&cb, &graph, &order)?),
                _ => report::basis_table(&cb),
            })
        }
        CommandKind::Graph => {
            let cb = CanonicalBasis::compute(module.clone(), h)?;
            let graph = build_left_graph(&cb)?;
            ok(match format {
                Format::Json => render(&report::graph_json(&cb, &graph, &order)?),
                Format::Dot => to_dot(&graph, module.quiver()),
                Format::Table => report::graph_table(&cb, &graph, &order)?,
            })
        }
        CommandKind::Verify => {
            let names: Vec<&str> = suites.iter().map(String::as_str).collect();
            let reports = Verifier::new(module.clone(), h, order).run(&names)?;
            let status = if reports.iter().all(|r| r.passed()) { 0 } else { EXIT_VERIFY };
            let output = match format {
                Format::Json => render(&report::verify_json(&module, h, &reports)),
                _ => report::verify_table(&reports),
            };
            Entry { output, status }
        }
    })
}
