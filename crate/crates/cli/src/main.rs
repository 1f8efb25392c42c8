use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use epir_cli::commands::{self, FailureTableArgs, RunArgs, Suite, TableFormat, TranscriptFormat};
use epir_cli::parallel::default_workers;
use epir_cli::{CliError, Outcome};

#[derive(Parser)]
#[command(
    name = "epir",
    version,
    about = "Correctness auditor for the EPIR protocol over GF(p^n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFmt {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TextFmt {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    LemmasSmall,
    Bounds,
    Cosets,
    Elgamal,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Replays the failing execution over GF(8).
    DemoCounterexample {
        /// Evaluate at this block instead, e.g. "g^2+1".
        #[arg(long)]
        block: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFmt,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact average failure probability for each degree.
    FailureTable {
        /// A degree or a range such as 2..9.
        #[arg(long, default_value = "2..9")]
        n: String,
        #[arg(long = "F", default_value = "g")]
        f: String,
        #[arg(long, default_value_t = 2)]
        p: u32,
        /// A polynomial in t, or "auto".
        #[arg(long)]
        modulus: Option<String>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFmt,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Prefix cutoff and lower bound on the failure probability.
    BoundsTable {
        /// Comma-separated degrees; defaults to the reference list.
        #[arg(long, value_delimiter = ',')]
        n: Vec<u32>,
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFmt,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs a check suite; exits with the code of the first failed check.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFmt,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One protocol execution with a printed transcript.
    Run {
        #[arg(long, conflicts_with = "full")]
        restricted: bool,
        #[arg(long)]
        full: bool,
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long)]
        modulus: Option<String>,
        /// Secret key; drawn when absent.
        #[arg(long)]
        x: Option<u32>,
        #[arg(long = "F", default_value = "g")]
        f: String,
        /// Encryption exponents, one per block.
        #[arg(long)]
        s: Vec<u32>,
        /// Blinding constant in GF(p).
        #[arg(long)]
        r: Option<u32>,
        /// Database blocks; drawn from the valid set when absent.
        #[arg(long = "R")]
        blocks: Vec<String>,
        #[arg(long = "N")]
        big_n: Option<usize>,
        /// 1-based index of the wanted block.
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long)]
        rprime: Option<u32>,
        #[arg(long, default_value_t = commands::DEFAULT_SEED)]
        seed: u64,
        /// Reject blocks outside the valid set.
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFmt,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn table(f: TableFmt) -> TableFormat {
    match f {
        TableFmt::Csv => TableFormat::Csv,
        TableFmt::Json => TableFormat::Json,
    }
}

fn text(f: TextFmt) -> TranscriptFormat {
    match f {
        TextFmt::Text => TranscriptFormat::Text,
        TextFmt::Json => TranscriptFormat::Json,
    }
}

fn dispatch(cmd: Command) -> Result<(Outcome, Option<PathBuf>), CliError> {
    Ok(match cmd {
        Command::DemoCounterexample { block, format, out } => (
            commands::demo_counterexample(block.as_deref(), text(format))?,
            out,
        ),
        Command::FailureTable {
            n,
            f,
            p,
            modulus,
            workers,
            format,
            out,
        } => {
            let args = FailureTableArgs {
                degrees: commands::parse_range(&n)?,
                f: &f,
                p,
                modulus: modulus.as_deref(),
                workers: workers.unwrap_or_else(default_workers),
                format: table(format),
            };
            (commands::failure_table(&args)?, out)
        }
        Command::BoundsTable { n, p, format, out } => {
            let ns = if n.is_empty() {
                commands::default_bound_degrees()
            } else {
                n
            };
            (commands::bounds_table(&ns, p, table(format))?, out)
        }
        Command::Verify {
            suite,
            workers,
            format,
            out,
        } => {
            let suite = match suite {
                SuiteArg::LemmasSmall => Suite::LemmasSmall,
                SuiteArg::Bounds => Suite::Bounds,
                SuiteArg::Cosets => Suite::Cosets,
                SuiteArg::Elgamal => Suite::ElGamal,
                SuiteArg::All => Suite::All,
            };
            (
                commands::verify_cmd(
                    suite,
                    workers.unwrap_or_else(default_workers),
                    table(format),
                )?,
                out,
            )
        }
        Command::Run {
            restricted: _,
            full,
            p,
            n,
            modulus,
            x,
            f,
            s,
            r,
            blocks,
            big_n,
            i,
            rprime,
            seed,
            strict,
            format,
            out,
        } => {
            let args = RunArgs {
                full,
                p,
                n,
                modulus: modulus.as_deref(),
                x,
                f: &f,
                s: &s,
                r,
                blocks: &blocks,
                big_n,
                index: i,
                r_prime: rprime,
                seed,
                strict,
                format: text(format),
            };
            (commands::run_cmd(&args)?, out)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok((outcome, out)) => {
            for note in &outcome.notes {
                eprintln!("{note}");
            }
            let written = match out {
                Some(path) => std::fs::write(&path, &outcome.output)
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => std::io::stdout()
                    .write_all(outcome.output.as_bytes())
                    .map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
