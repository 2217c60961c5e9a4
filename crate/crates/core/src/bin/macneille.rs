use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use macneille::commands::{self, CompleteOptions, ExtendOptions, RenderOptions};
use macneille::completion::{CompletionConfig, Strategy};
use macneille::verify::{MapKind, VerifyConfig};
use macneille::{Error, Operator};

#[derive(Parser)]
#[command(
    name = "macneille",
    version,
    about = "Dedekind-MacNeille completions and map extensions on finite posets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the completion of a poset as JSON (and optionally DOT).
    Complete {
        input: PathBuf,
        #[arg(long)]
        poset: Option<String>,
        /// Write the Hasse diagram of the completion here.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[command(flatten)]
        common: CompletionArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply one extension operator to a subset.
    Extend {
        input: PathBuf,
        #[arg(long)]
        operator: Operator,
        #[arg(long)]
        map: Option<String>,
        #[arg(long)]
        subset: String,
        /// Required for `--operator L`.
        #[arg(long)]
        selector: Option<String>,
        /// Compute `bar` by enumerating cofinal subsets, for |A| up to this size.
        #[arg(long, value_name = "MAX", num_args = 0..=1, default_missing_value = "16")]
        literal_bar: Option<usize>,
        #[arg(long)]
        allow_extrema: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification checks ("all" or a list of ids) and write a JSON report.
    Verify {
        #[arg(default_value = "all")]
        checks: Vec<String>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        exhaustive_max: usize,
        #[arg(long, default_value_t = 100)]
        instances: usize,
        #[arg(long)]
        x_size: Option<usize>,
        #[arg(long)]
        y_size: Option<usize>,
        #[arg(long)]
        edge_probability: Option<f64>,
        #[arg(long)]
        map_kind: Option<CliMapKind>,
        /// Mix instances whose posets have a minimum or maximum into the corpus.
        #[arg(long)]
        allow_extrema: bool,
        /// Include wall-clock times (reports are then no longer reproducible).
        #[arg(long)]
        timings: bool,
        /// Replay the witnesses in a report or witness file instead.
        #[arg(long, conflicts_with = "checks")]
        replay: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the Hasse diagram of a poset, or of its completion, as DOT.
    Render {
        input: PathBuf,
        #[arg(long)]
        poset: Option<String>,
        #[arg(long)]
        completion: bool,
        #[command(flatten)]
        common: CompletionArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CompletionArgs {
    /// Skip the check that the poset has no minimum and no maximum.
    #[arg(long)]
    allow_extrema: bool,
    /// Largest poset completed by the naive strategy (default: $POSET_SIZE_CAP or 20).
    #[arg(long)]
    size_cap: Option<usize>,
    #[arg(long, value_enum, default_value_t = CliStrategy::Auto)]
    strategy: CliStrategy,
}

impl CompletionArgs {
    fn config(&self) -> CompletionConfig {
        let mut c = CompletionConfig::from_env();
        if let Some(cap) = self.size_cap {
            c.size_cap = cap;
        }
        c.with_strategy(match self.strategy {
            CliStrategy::Naive => Strategy::Naive,
            CliStrategy::Generated => Strategy::Generated,
            CliStrategy::Auto => Strategy::Auto,
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CliStrategy {
    Naive,
    Generated,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliMapKind {
    Arbitrary,
    Increasing,
    Oie,
}

fn read(path: &Path) -> Result<String, Error> {
    Ok(std::fs::read_to_string(path)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => Ok(std::fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Complete {
            input,
            poset,
            dot,
            common,
            out,
        } => {
            let opts = CompleteOptions {
                poset,
                allow_extrema: common.allow_extrema,
                completion: common.config(),
                dot: dot.is_some(),
            };
            let (json, diagram) = commands::complete(&read(&input)?, &opts)?;
            if let (Some(path), Some(text)) = (dot, diagram) {
                std::fs::write(path, text)?;
            }
            emit(out.as_deref(), &json)?;
        }
        Command::Extend {
            input,
            operator,
            map,
            subset,
            selector,
            literal_bar,
            allow_extrema,
            out,
        } => {
            let opts = ExtendOptions {
                operator,
                map,
                subset,
                selector,
                allow_extrema,
                literal_bar,
            };
            emit(out.as_deref(), &commands::extend(&read(&input)?, &opts)?)?;
        }
        Command::Verify {
            checks,
            seed,
            exhaustive_max,
            instances,
            x_size,
            y_size,
            edge_probability,
            map_kind,
            allow_extrema,
            timings,
            replay,
            out,
        } => {
            if let Some(path) = replay {
                let (text, code) = commands::replay(&read(&path)?)?;
                emit(out.as_deref(), &text)?;
                return Ok(code);
            }
            let config = VerifyConfig {
                seed,
                exhaustive_max,
                instances,
                x_size,
                y_size,
                edge_probability,
                allow_extrema,
                map_kind: map_kind.map(|k| match k {
                    CliMapKind::Arbitrary => MapKind::Arbitrary,
                    CliMapKind::Increasing => MapKind::Increasing,
                    CliMapKind::Oie => MapKind::Oie,
                }),
                timings,
                ..VerifyConfig::default()
            };
            let ids: Vec<&str> = checks.iter().map(String::as_str).collect();
            let (json, code) = commands::verify(&ids, &config)?;
            emit(out.as_deref(), &json)?;
            return Ok(code);
        }
        Command::Render {
            input,
            poset,
            completion,
            common,
            out,
        } => {
            let opts = RenderOptions {
                poset,
                completion,
                allow_extrema: common.allow_extrema,
                completion_config: common.config(),
            };
            emit(out.as_deref(), &commands::render(&read(&input)?, &opts)?)?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
