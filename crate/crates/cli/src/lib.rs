//! Command-line front end: argument parsing, engine selection, and output
//! formatting. [`run`] is the whole program over explicit streams.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;
use transversals::analysis::{bounds_table, verify_weights, AnalysisError, Weights, WeightsError};
use transversals::compression::{CompressionConfig, DEFAULT_ALPHA};
use transversals::format::{parse_hypergraph, write_hypergraph, write_vertex_line, ParseError};
use transversals::instances::{brute_force_enumerate, generate, GeneratorKind, GeneratorSpec, InstanceError};
use transversals::{
    Compression, EngineError, Enumerator, Hypergraph, Rank3, RankK, SearchStats, TransversalSink, Vertex,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "transversals", version, about = "Enumerate minimal transversals of hypergraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print every minimal transversal, one per line.
    Enumerate(RunArgs),
    /// Print the number of minimal transversals.
    Count(RunArgs),
    /// Print one minimum-cardinality transversal.
    Minimum(RunArgs),
    /// Print the number of minimum-cardinality transversals.
    CountMinimum(RunArgs),
    /// Write a generated hypergraph in the text format.
    Generate(GenerateArgs),
    /// Check the rank-3 measure constraints for a weight table.
    VerifyMeasure(VerifyArgs),
    /// Print lower and upper growth bases for ranks 2..=k-max.
    BoundsTable(TableArgs),
    /// Run every applicable engine on one input and report search statistics.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Auto,
    Rank3,
    Rankk,
    Compression,
    Oracle,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Input file; standard input when omitted.
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Algorithm::Auto)]
    pub algorithm: Algorithm,
    /// Size fraction of the compression witness, in [0.5, 1].
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,
    /// Sort the output instead of streaming it in search order.
    #[arg(long)]
    pub canonical: bool,
    /// Print search statistics to standard error.
    #[arg(long)]
    pub stats: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Lb,
    Triangles,
    Random,
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Rank; ignored for triangles.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Weight file of `omega_<i> <value>` and `psi_<i> <value>` lines;
    /// the built-in rank-3 table when omitted.
    #[arg(long)]
    pub weights: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[arg(long, default_value_t = 20)]
    pub k_max: usize,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Input file; standard input when omitted.
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read input: {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Mismatch(String),
    #[error("{0}")]
    Invariant(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Mismatch(_) => EXIT_MISMATCH,
            CliError::Invariant(_) => EXIT_INVARIANT,
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::RankTooHigh { .. } | EngineError::TooLarge { .. } => CliError::Mismatch(e.to_string()),
            EngineError::Config(_) => CliError::Usage(e.to_string()),
            EngineError::Invariant(_) => CliError::Invariant(e.to_string()),
        }
    }
}

/// Which enumeration-based question to answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Query {
    Enumerate,
    Count,
    Minimum,
    CountMinimum,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub query: Query,
    pub algorithm: Algorithm,
    pub alpha: f64,
    pub canonical: bool,
    pub stats: bool,
}

impl RunConfig {
    fn from_args(query: Query, a: &RunArgs) -> Self {
        RunConfig { query, algorithm: a.algorithm, alpha: a.alpha, canonical: a.canonical, stats: a.stats }
    }
}

/// The brute-force oracle behind the engine interface.
#[derive(Debug, Clone, Copy, Default)]
pub struct Oracle;

impl Enumerator for Oracle {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn max_rank(&self) -> Option<usize> {
        None
    }

    fn enumerate(&self, h: &Hypergraph, sink: &mut dyn TransversalSink) -> Result<SearchStats, EngineError> {
        let all = brute_force_enumerate(h).map_err(|e| match e {
            InstanceError::TooLarge { vertices, limit } => EngineError::TooLarge { vertices, limit },
            other => EngineError::Invariant(other.to_string()),
        })?;
        for t in &all {
            sink.emit(t);
        }
        let subsets = 1u64 << h.vertex_count();
        Ok(SearchStats { nodes: subsets, leaves: subsets, max_depth: 0, outputs: all.len() as u64 })
    }
}

fn compression(alpha: f64) -> Result<Compression, CliError> {
    Ok(Compression::new(CompressionConfig::new(alpha, Box::new(Rank3::default()))?))
}

/// The engine `algorithm` stands for on `h`; `auto` picks by rank.
pub fn select_engine(algorithm: Algorithm, alpha: f64, h: &Hypergraph) -> Result<Box<dyn Enumerator>, CliError> {
    if !(0.5..=1.0).contains(&alpha) {
        return Err(CliError::Usage(format!("--alpha must lie in [0.5, 1], got {alpha}")));
    }
    let engine: Box<dyn Enumerator> = match algorithm {
        Algorithm::Auto => match h.rank() {
            0..=3 => Box::new(Rank3::default()),
            4 => Box::new(compression(alpha)?),
            _ => Box::new(RankK::default()),
        },
        Algorithm::Rank3 => Box::new(Rank3::default()),
        Algorithm::Rankk => Box::new(RankK::default()),
        Algorithm::Compression => Box::new(compression(alpha)?),
        Algorithm::Oracle => Box::new(Oracle),
    };
    engine.check_rank(h)?;
    Ok(engine)
}

fn write_stats(err: &mut dyn Write, engine: &str, s: &SearchStats) -> io::Result<()> {
    writeln!(
        err,
        "engine {engine} nodes {} leaves {} max_depth {} outputs {}",
        s.nodes, s.leaves, s.max_depth, s.outputs
    )
}

/// Answers `cfg.query` on `h`, writing results to `out`.
pub fn dispatch(cfg: &RunConfig, h: &Hypergraph, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let engine = select_engine(cfg.algorithm, cfg.alpha, h)?;
    let mut write_error: Option<io::Error> = None;
    let mut count = 0u64;
    let mut buffered: Vec<Vec<Vertex>> = Vec::new();
    let mut best: Option<Vec<Vertex>> = None;
    let mut best_count = 0u64;
    let stats = {
        let mut sink = |t: &[Vertex]| {
            count += 1;
            match cfg.query {
                Query::Enumerate if cfg.canonical => buffered.push(t.to_vec()),
                Query::Enumerate => {
                    if write_error.is_none() {
                        write_error = write_vertex_line(&mut *out, t).err();
                    }
                }
                Query::Count => {}
                Query::Minimum | Query::CountMinimum => match &best {
                    Some(b) if b.len() < t.len() => {}
                    Some(b) if b.len() == t.len() => best_count += 1,
                    _ => {
                        best = Some(t.to_vec());
                        best_count = 1;
                    }
                },
            }
        };
        engine.enumerate(h, &mut sink)?
    };
    if let Some(e) = write_error {
        return Err(e.into());
    }
    match cfg.query {
        Query::Enumerate => {
            buffered.sort_unstable();
            for t in &buffered {
                write_vertex_line(&mut *out, t)?;
            }
        }
        Query::Count => writeln!(out, "{count}")?,
        Query::Minimum => {
            if let Some(b) = &best {
                write_vertex_line(&mut *out, b)?;
            }
        }
        Query::CountMinimum => writeln!(out, "{best_count}")?,
    }
    if cfg.stats {
        write_stats(err, engine.name(), &stats)?;
    }
    Ok(())
}

fn read_input(path: Option<&PathBuf>, stdin: &mut dyn BufRead) -> Result<Hypergraph, CliError> {
    Ok(match path {
        Some(p) => parse_hypergraph(BufReader::new(File::open(p)?))?,
        None => parse_hypergraph(stdin)?,
    })
}

fn run_generate(a: &GenerateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let kind = match a.kind {
        Kind::Lb => GeneratorKind::LowerBound,
        Kind::Triangles => GeneratorKind::Triangles,
        Kind::Random => GeneratorKind::Random,
    };
    let h = generate(&GeneratorSpec { kind, k: a.k, n: a.n, m: a.m, seed: a.seed })
        .map_err(|e| CliError::Usage(e.to_string()))?;
    write_hypergraph(&h, out)?;
    Ok(())
}

fn run_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    let weights = match &a.weights {
        Some(p) => {
            Weights::parse(&std::fs::read_to_string(p)?).map_err(|e: WeightsError| CliError::Usage(e.to_string()))?
        }
        None => Weights::rank3(),
    };
    let report = verify_weights(&weights, a.tolerance);
    writeln!(out, "{:<10} {:>6} {:>8} {:>12} {:>12}", "family", "tuples", "failures", "max_lhs", "min_slack")?;
    for s in report.summaries() {
        writeln!(
            out,
            "{:<10} {:>6} {:>8} {:>12.9} {:>12.9}",
            s.family.id(),
            s.tuples,
            s.failures,
            s.max_lhs + 0.0,
            s.min_slack + 0.0
        )?;
    }
    writeln!(out, "growth base 2^omega_5 = {:.6}", weights.growth_base())?;
    writeln!(out, "tight constraints (slack <= {:e}):", a.tolerance)?;
    for r in report.tight(a.tolerance) {
        writeln!(out, "  {:<8} {:<40} slack {:.3e}", r.family.id(), r.describe_params(), r.slack)?;
    }
    for r in report.records.iter().filter(|r| !r.pass) {
        writeln!(out, "  violated {:<8} {:<40} lhs {:.9}", r.family.id(), r.describe_params(), r.lhs)?;
    }
    let pass = report.pass();
    writeln!(out, "result {}", if pass { "PASS" } else { "FAIL" })?;
    Ok(pass)
}

fn run_table(a: &TableArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let rows = bounds_table(a.k_max).map_err(|e: AnalysisError| CliError::Usage(e.to_string()))?;
    writeln!(out, "  k  lower   upper")?;
    for r in rows {
        writeln!(out, "{}", r.format())?;
    }
    Ok(())
}

fn run_bench(a: &BenchArgs, h: &Hypergraph, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    writeln!(out, "n {} m {} rank {}", h.vertex_count(), h.edge_count(), h.rank())?;
    for algorithm in [Algorithm::Rank3, Algorithm::Compression, Algorithm::Rankk, Algorithm::Oracle] {
        let engine = match select_engine(algorithm, a.alpha, h) {
            Ok(e) => e,
            Err(CliError::Mismatch(_)) => continue,
            Err(e) => return Err(e),
        };
        if algorithm == Algorithm::Oracle && h.vertex_count() > 20 {
            continue;
        }
        let start = Instant::now();
        let stats = engine.enumerate(h, &mut |_: &[Vertex]| {})?;
        let elapsed = start.elapsed();
        writeln!(
            out,
            "{:<12} outputs {} nodes {} leaves {} max_depth {}",
            engine.name(),
            stats.outputs,
            stats.nodes,
            stats.leaves,
            stats.max_depth
        )?;
        writeln!(err, "{:<12} {:.3} ms", engine.name(), elapsed.as_secs_f64() * 1e3)?;
    }
    Ok(())
}

fn execute(cli: &Cli, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let query = |q: Query, a: &RunArgs, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write| {
        let h = read_input(a.input.as_ref(), stdin)?;
        dispatch(&RunConfig::from_args(q, a), &h, out, err).map(|()| EXIT_OK)
    };
    match &cli.command {
        Command::Enumerate(a) => query(Query::Enumerate, a, stdin, out, err),
        Command::Count(a) => query(Query::Count, a, stdin, out, err),
        Command::Minimum(a) => query(Query::Minimum, a, stdin, out, err),
        Command::CountMinimum(a) => query(Query::CountMinimum, a, stdin, out, err),
        Command::Generate(a) => run_generate(a, out).map(|()| EXIT_OK),
        Command::VerifyMeasure(a) => run_verify(a, out).map(|pass| if pass { EXIT_OK } else { EXIT_FAILED }),
        Command::BoundsTable(a) => run_table(a, out).map(|()| EXIT_OK),
        Command::Bench(a) => {
            let h = read_input(a.input.as_ref(), stdin)?;
            run_bench(a, &h, out, err).map(|()| EXIT_OK)
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
                EXIT_USAGE
            } else {
                let _ = out.write_all(rendered.as_bytes());
                EXIT_OK
            };
        }
    };
    let code = match execute(&cli, stdin, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    };
    if let Err(e) = out.flush() {
        let _ = writeln!(err, "error: {e}");
        return EXIT_USAGE;
    }
    code
}
