use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qcm_cli::commands::{self, ExampleKind};
use qcm_cli::{Failure, Options, Outcome, Selector, Status};
use qcm_core::{Direction, PointId, Rational};

#[derive(Debug, Parser)]
#[command(name = "qcm", version, about = "Best approximations in finite quasi-cone metric spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for sampled checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads; reports do not depend on this
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,

    /// Human-readable report instead of JSON
    #[arg(long, global = true)]
    pretty: bool,

    /// forward or backward; overrides the file
    #[arg(long, global = true)]
    direction: Option<Direction>,

    /// Include wall time in the report (breaks byte-identical reruns)
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, clap::Args)]
struct Select {
    /// Query point label (repeatable); default: the file's queries, else every point
    #[arg(short = 'q', long = "query", allow_hyphen_values = true)]
    queries: Vec<String>,

    /// Comma-separated candidate labels; default: the file's candidates
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    candidates: Vec<String>,
}

impl Select {
    fn selector(&self) -> Selector {
        Selector {
            points: self.queries.iter().map(PointId::new).collect(),
            candidates: self.candidates.iter().map(PointId::new).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Emit,
    Check,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Example {
    Example3,
    Example4,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the cone and quasi-cone metric axioms
    Verify {
        file: PathBuf,
        /// Sample count for the sampled cone axiom
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Best-approximation sets and minimal fronts
    Approx {
        file: PathBuf,
        #[command(flatten)]
        select: Select,
    },
    /// Uniqueness-style classification of the candidate set
    Classify {
        file: PathBuf,
        #[command(flatten)]
        select: Select,
        /// Also run the span-rank check (needs `embedding` in the file)
        #[arg(long)]
        pseudo: bool,
    },
    /// Emit canonical witness tables, or check tables from a file
    Witness {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Witness file to check
        #[arg(long, required_if_eq("mode", "check"))]
        witness: Option<PathBuf>,
        #[command(flatten)]
        select: Select,
    },
    /// Write an instance file for one of the closed-form metrics
    Example {
        #[arg(value_enum)]
        name: Example,
        /// Candidate grid start:end:step
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        /// Parameter of example4 (default 1)
        #[arg(long)]
        alpha: Option<Rational>,
        /// Query parameter (repeatable); the query point is β² for example3, β for example4
        #[arg(long, allow_hyphen_values = true)]
        beta: Vec<Rational>,
    },
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let opts = Options { seed: cli.seed, pretty: cli.pretty, direction: cli.direction, timing: cli.timing };
    match &cli.command {
        Command::Verify { file, samples } => commands::verify(file, *samples, &opts),
        Command::Approx { file, select } => commands::approx(file, &select.selector(), &opts),
        Command::Classify { file, select, pseudo } => commands::classify_cmd(file, &select.selector(), *pseudo, &opts),
        Command::Witness { file, mode: Mode::Emit, select, .. } => commands::witness_emit(file, &select.selector(), &opts),
        Command::Witness { file, mode: Mode::Check, witness, select } => {
            let witness = witness.as_ref().expect("clap requires --witness for check");
            commands::witness_check(file, witness, &select.selector(), &opts)
        }
        Command::Example { name, grid, alpha, beta } => {
            let kind = match name {
                Example::Example3 => ExampleKind::Example3,
                Example::Example4 => ExampleKind::Example4,
            };
            commands::example(kind, grid, alpha.as_ref(), beta, &opts)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs as usize).build().expect("thread pool");
    let outcome = match pool.install(|| run(&cli)) {
        Ok(o) => o,
        Err(f) => {
            eprintln!("{f}");
            return ExitCode::from(f.code() as u8);
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &outcome.text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(3);
            }
        }
        None => print!("{}", outcome.text),
    }
    match &outcome.status {
        Status::Ok => {}
        Status::AxiomFailure(m) | Status::VerdictFailure(m) => eprintln!("{m}"),
    }
    ExitCode::from(outcome.code() as u8)
}
