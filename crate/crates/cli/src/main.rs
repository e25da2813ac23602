//! `glab`: compute the sequences and run the identity checks from the command
//! line.
//!
//! Exit status: 0 on success, 1 when a verification fails or an internal
//! consistency check trips, 2 on usage errors.

mod commands;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::Outcome;

#[derive(Parser, Debug)]
#[command(name = "glab", version, about = "Exact Genocchi/Stirling sequences and identity checks")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Plain)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Jsonl,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a_n, Genocchi or Bernoulli numbers for n = 0..=N_MAX.
    Seq {
        #[arg(value_enum)]
        name: SeqName,
        #[command(flatten)]
        range: NRange,
        /// Genocchi route; all three routes are printed when omitted.
        #[arg(long)]
        route: Option<String>,
    },
    /// Print rows 0..=N_MAX of a Stirling triangle.
    Stirling {
        #[arg(value_enum)]
        kind: Kind,
        #[command(flatten)]
        range: NRange,
    },
    /// Check one identity over a range and stream the per-n report.
    ///
    /// IDENTITY is one of: rockett, eqq5, theorem1, theorem2, lcm,
    /// orthogonality, inversion, legendre, digit-bound.
    Verify {
        identity: String,
        #[arg(long = "n-max")]
        n_max: Option<u64>,
        #[arg(long = "m-max")]
        m_max: Option<u64>,
        /// Seed for the random sequence used by `inversion`.
        #[arg(long)]
        seed: Option<u64>,
        /// Prime for `legendre` and `digit-bound` (default 2).
        #[arg(long)]
        p: Option<u64>,
    },
    /// List n <= N_MAX where v_p(sum p^k/k) < s_p(n) for an odd prime p.
    #[command(name = "search-open1")]
    SearchOpen1 {
        #[arg(value_name = "P")]
        p_pos: Option<u64>,
        #[arg(value_name = "N_MAX")]
        n_max_pos: Option<u64>,
        #[arg(long, conflicts_with = "p_pos")]
        p: Option<u64>,
        #[arg(long = "n-max", conflicts_with = "n_max_pos")]
        n_max: Option<u64>,
    },
}

#[derive(Args, Debug)]
struct NRange {
    #[arg(value_name = "N_MAX")]
    n_max_pos: Option<u64>,
    #[arg(long = "n-max", conflicts_with = "n_max_pos")]
    n_max: Option<u64>,
}

impl NRange {
    fn get(&self) -> Result<u64, String> {
        self.n_max_pos
            .or(self.n_max)
            .ok_or_else(|| "missing N_MAX (positional or --n-max)".to_string())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeqName {
    A,
    Genocchi,
    Bernoulli,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    First,
    Second,
}

fn run(cli: Cli, out: &mut dyn Write) -> Outcome {
    let mut session = commands::Session::open();
    let outcome = match cli.command {
        Command::Seq { name, range, route } => match range.get() {
            Ok(n_max) => session.seq(name, n_max, route.as_deref(), cli.format, out),
            Err(e) => Outcome::Usage(e),
        },
        Command::Stirling { kind, range } => match range.get() {
            Ok(n_max) => session.stirling(kind, n_max, cli.format, out),
            Err(e) => Outcome::Usage(e),
        },
        Command::Verify {
            identity,
            n_max,
            m_max,
            seed,
            p,
        } => session.verify(&identity, n_max, m_max, seed, p, cli.format, out),
        Command::SearchOpen1 {
            p_pos,
            n_max_pos,
            p,
            n_max,
        } => match (p_pos.or(p), n_max_pos.or(n_max)) {
            (Some(p), Some(n_max)) => session.search_open1(p, n_max, cli.format, out),
            _ => Outcome::Usage("search-open1 needs P and N_MAX".to_string()),
        },
    };
    session.close();
    outcome
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let outcome = run(cli, &mut out);
    if let Err(e) = out.flush() {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    match outcome {
        Outcome::Success => ExitCode::SUCCESS,
        Outcome::Failed(msg) => {
            if let Some(msg) = msg {
                eprintln!("error: {msg}");
            }
            ExitCode::from(1)
        }
        Outcome::Usage(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
