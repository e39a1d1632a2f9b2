//! `bridgegenus`: Seifert surface and fibredness reports for doubled
//! two-bridge links and their satellites.

mod batch;
mod commands;
mod text;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bridgegenus::sutured::derive_wr;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use commands::{CliError, CompanionArgs, PatternSource};

#[derive(Parser)]
#[command(name = "bridgegenus", version, about)]
struct Cli {
    /// Corrupts the sutured translation table to exercise the cross-checks.
    #[arg(long, global = true, hide = true)]
    inject_fault: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Validate,
    Taut,
    ReduceTrace,
    Product,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Continued fraction coefficients, e.g. `1,2,1`.
    #[arg(long)]
    cf: Option<String>,
    /// Passage word, e.g. `"*E:0 A E:2 A"`.
    #[arg(long)]
    word: Option<String>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SatelliteSource {
    #[arg(long)]
    cf: Option<String>,
    #[arg(long)]
    word: Option<String>,
    /// Sign counts `N+,N-`.
    #[arg(long)]
    counts: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Surface, fibredness and pattern data for one link.
    Analyze {
        #[command(flatten)]
        source: Source,
        /// Twists on the infinity separator (defaults to 0 for `--cf`).
        #[arg(long)]
        framing: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Genus, fibredness and Alexander polynomial of the satellite knot.
    Satellite {
        #[command(flatten)]
        source: SatelliteSource,
        #[arg(long)]
        framing: Option<u32>,
        /// Whether the pattern is fibred, for `--counts` input.
        #[arg(long)]
        pattern_fibred: Option<bool>,
        /// Companion as JSON, a path to a JSON file, or `trefoil`.
        #[arg(long, conflicts_with_all = ["companion_genus", "companion_fibred", "companion_alex"])]
        companion: Option<String>,
        #[arg(long)]
        companion_genus: Option<u32>,
        #[arg(long)]
        companion_fibred: Option<bool>,
        /// Alexander polynomial as `min_exp:c0,c1,...`.
        #[arg(long, allow_hyphen_values = true)]
        companion_alex: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Grammar, tautness and product checks on a sutured word.
    Sutured {
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value = "taut")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Runs every cross-validation family up to a coefficient-sum bound.
    Check {
        #[arg(long, default_value_t = 10)]
        sum_bound: u32,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Analyses every row of a CSV file with a `cf` column.
    Batch {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce(&T) -> String) {
    let body = match format {
        Format::Json => serde_json::to_string_pretty(value).expect("reports serialise") + "\n",
        Format::Text => text(value),
    };
    let mut out = io::stdout().lock();
    if let Err(e) = out.write_all(body.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing output: {e}");
        std::process::exit(2);
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let translate = if cli.inject_fault {
        commands::faulty_translation
    } else {
        derive_wr
    };
    match cli.command {
        Command::Analyze {
            source,
            framing,
            format,
        } => {
            let report = commands::analyze(
                source.cf.as_deref(),
                source.word.as_deref(),
                framing,
                translate,
            )?;
            emit(format, &report, text::analysis);
        }
        Command::Satellite {
            source,
            framing,
            pattern_fibred,
            companion,
            companion_genus,
            companion_fibred,
            companion_alex,
            format,
        } => {
            let pattern = match (source.cf, source.word, source.counts) {
                (Some(cf), _, _) => PatternSource::Cf(cf, framing.unwrap_or(0)),
                (_, Some(word), _) => PatternSource::Word(word, framing),
                (_, _, Some(counts)) => PatternSource::Counts(counts, pattern_fibred),
                _ => unreachable!("clap requires one source"),
            };
            let companion = CompanionArgs {
                json: companion,
                genus: companion_genus,
                fibred: companion_fibred,
                alexander: companion_alex,
            };
            let report = commands::satellite(pattern, &companion, translate)?;
            emit(format, &report, text::satellite);
        }
        Command::Sutured { word, mode, format } => {
            let report = commands::sutured(&word, mode)?;
            emit(format, &report, text::sutured);
            if !report.valid {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Check {
            sum_bound,
            samples,
            seed,
            format,
        } => {
            let report = commands::check(sum_bound, samples, seed, translate)?;
            emit(format, &report, text::check);
            if !report.passed() {
                return Ok(ExitCode::from(3));
            }
        }
        Command::Batch { path, format } => {
            let report = batch::run(&path, translate)?;
            emit(format, &report, text::batch);
            if report.summary.cross_check_failures > 0 {
                return Ok(ExitCode::from(3));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
