//! `dlog2k` command-line tool.
//!
//! Exit codes: 0 success, 1 runtime or I/O failure (including verification
//! mismatches), 2 usage or validation error.

mod commands;

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use dlog2k::Width;

#[derive(Debug, Parser)]
#[command(name = "dlog2k", version, about = "Discrete logarithms modulo 2^k")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Plain,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Factor x as (-1)^s * 2^p * h^e mod 2^k.
    Factor {
        #[arg(long, value_parser = parse_width)]
        k: Width,
        #[arg(long, default_value = "0x3")]
        base: String,
        #[arg(long)]
        x: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Decode a triple back into a residue.
    Decode {
        #[arg(long, value_parser = parse_width)]
        k: Width,
        #[arg(long, default_value = "0x3")]
        base: String,
        #[arg(long)]
        s: u8,
        #[arg(long)]
        p: u32,
        /// Decimal exponent.
        #[arg(long)]
        e: String,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// List the semi-primitive roots modulo 2^k (k <= 16).
    Roots {
        #[arg(long, value_parser = parse_width)]
        k: Width,
        #[arg(long)]
        count_only: bool,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Check the digit-serial algorithm against independent references.
    Verify {
        /// A width or an inclusive range such as `3..10`.
        #[arg(long, value_parser = parse_width_range)]
        k: RangeInclusive<u32>,
        /// Restrict to one base (exhaustive mode defaults to every base, sampled mode to 0x3).
        #[arg(long)]
        base: Option<String>,
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Write conformance vectors as JSON Lines.
    Vectors {
        #[arg(long, value_parser = parse_width)]
        k: Width,
        #[arg(long, default_value = "0x3")]
        base: String,
        #[command(flatten)]
        mode: ModeArgs,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time repeated discrete-log calls at one width.
    Bench {
        #[arg(long, value_parser = parse_width)]
        k: Width,
        #[arg(long, default_value = "0x3")]
        base: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
}

#[derive(Debug, Args)]
struct ModeArgs {
    /// Every input at the given width.
    #[arg(long, conflicts_with = "samples", required_unless_present = "samples")]
    exhaustive: bool,
    /// Number of SplitMix64-drawn inputs.
    #[arg(long)]
    samples: Option<usize>,
    /// Generator seed for `--samples` (default 0).
    #[arg(long)]
    seed: Option<u64>,
}

impl ModeArgs {
    fn mode(&self) -> commands::Mode {
        if self.seed.is_some() && self.samples.is_none() {
            Cli::command()
                .error(
                    ErrorKind::MissingRequiredArgument,
                    "--seed requires --samples",
                )
                .exit();
        }
        match self.samples {
            Some(count) if !self.exhaustive => commands::Mode::Sampled {
                count,
                seed: self.seed.unwrap_or(0),
            },
            _ => commands::Mode::Exhaustive,
        }
    }
}

fn parse_width(s: &str) -> Result<Width, String> {
    s.parse::<Width>().map_err(|e| e.to_string())
}

fn parse_width_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
        None => (s, s),
    };
    let lo = parse_width(lo)?.get();
    let hi = parse_width(hi)?.get();
    if lo > hi {
        return Err(format!("empty width range {s:?}"));
    }
    Ok(lo..=hi)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let result = match cli.command {
        Command::Factor { k, base, x, format } => {
            commands::factor(&mut stdout, k, &base, &x, format)
        }
        Command::Decode {
            k,
            base,
            s,
            p,
            e,
            format,
        } => commands::decode(&mut stdout, k, &base, s, p, &e, format),
        Command::Roots {
            k,
            count_only,
            format,
        } => commands::roots(&mut stdout, k, count_only, format),
        Command::Verify {
            k,
            base,
            mode,
            format,
        } => commands::verify(&mut stdout, k, base.as_deref(), mode.mode(), format),
        Command::Vectors { k, base, mode, out } => {
            commands::vectors(&mut stdout, k, &base, mode.mode(), out.as_deref())
        }
        Command::Bench {
            k,
            base,
            samples,
            seed,
            format,
        } => commands::bench(&mut stdout, k, &base, samples, seed, format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
