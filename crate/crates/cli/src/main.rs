mod bench;
mod format;
mod query;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use format::{Index, InputFormat, Kind};

#[derive(Parser)]
#[command(name = "wst", version, about = "Build and query wavelet trees, range indexes and wavelet suffix trees")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index from an input file and write it to disk.
    Build {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Defaults to `text` for wst/scaled and `dec` otherwise.
        #[arg(long, value_enum)]
        input_format: Option<InputFormat>,
        /// Bytes per little-endian integer for `--input-format bin`.
        #[arg(long, default_value_t = 4)]
        bin_width: usize,
        /// Degree of the range index digit tree.
        #[arg(long, default_value_t = 8)]
        d: usize,
        /// Big-node stride used during construction; defaults to floor(sqrt(log2 n)).
        #[arg(long)]
        tau: Option<u32>,
    },
    /// Answer a file of queries, one per line.
    Query {
        index: PathBuf,
        queries: PathBuf,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Cross-check every structure against brute-force oracles.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_value = "10,100,1000")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Run suites in parallel with this many threads.
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Test hook: corrupt the answers of one suite.
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
    /// Time construction and queries; prints TSV.
    Bench {
        #[arg(long, value_enum)]
        kind: BenchKind,
        #[arg(long, value_delimiter = ',', default_value = "100000")]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "1000")]
        q: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BenchKind {
    Wavelet,
    Range,
    Successor,
    Wst,
    Scaled,
}

pub enum Failure {
    Usage(anyhow::Error),
    Data(anyhow::Error),
    Verification,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Data(e)
    }
}

fn threads(n: usize) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::Usage(anyhow!("--threads must be at least 1")));
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Data(e.into()))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Command::Build { input, output, kind, input_format, bin_width, d, tau } => {
            let format = input_format.unwrap_or(match kind {
                Kind::Wst | Kind::Scaled => InputFormat::Text,
                Kind::Wavelet | Kind::Range => InputFormat::Dec,
            });
            if format == InputFormat::Bin && ![1, 2, 4, 8].contains(&bin_width) {
                return Err(Failure::Usage(anyhow!("--bin-width must be 1, 2, 4 or 8")));
            }
            let bytes = std::fs::read(&input).with_context(|| format!("cannot read {}", input.display()))?;
            let values = format::parse_input(&bytes, format, bin_width)?;
            let t0 = Instant::now();
            let index = Index::build(kind, &values, format == InputFormat::Text, d, tau)?;
            let written = index.save(&output)?;
            println!("kind={}", kind.name());
            println!("n={}", index.len());
            println!("sigma={}", index.sigma());
            println!("bytes={written}");
            println!("build_ms={:.3}", t0.elapsed().as_secs_f64() * 1e3);
            Ok(())
        }
        Command::Query { index, queries, threads: t } => {
            threads(t)?;
            let idx = Index::load(&index)?;
            let text = std::fs::read_to_string(&queries).with_context(|| format!("cannot read {}", queries.display()))?;
            let out = query::run(&idx, &text)?;
            print!("{out}");
            Ok(())
        }
        Command::Verify { seed, sizes, trials, threads: t, inject_fault } => {
            threads(t)?;
            if let Some(f) = &inject_fault {
                if !verify::SUITES.contains(&f.as_str()) {
                    return Err(Failure::Usage(anyhow!("unknown suite {f}; expected one of {:?}", verify::SUITES)));
                }
            }
            let ok = verify::run(seed, &sizes, trials, t > 1, inject_fault.as_deref());
            if ok {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Bench { kind, n, q, seed } => {
            threads(1)?;
            bench::run(kind, &n, &q, seed)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Verification) => ExitCode::from(3),
    }
}
