//! `disentangle`: parse chat logs, train and run reply-structure models,
//! and score the results.

mod commands;
mod config;
mod files;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "disentangle", version, about = "Conversation disentanglement for chat logs")]
struct Cli {
    /// More log output (repeat for more).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

/// How many leading messages are context: a number, or `auto` to take it
/// from the annotation file next to each log (zero when there is none).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContextArg {
    Auto,
    Fixed(usize),
}

impl std::str::FromStr for ContextArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            return Ok(Self::Auto);
        }
        s.parse()
            .map(Self::Fixed)
            .map_err(|_| format!("expected a number or \"auto\", got {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Linear,
    Ff,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaselineMethod {
    Previous,
    Lowe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnsembleMode {
    Union,
    Vote,
    Intersect,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse logs into one JSON message per line.
    Parse {
        /// Log file, or directory of `.ascii.txt` logs.
        #[arg(long)]
        log: PathBuf,
        /// Output file (directory in batch mode); stdout if omitted.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Train a linear or feedforward ranker on annotated data.
    Train {
        /// Directory of paired logs and annotations.
        #[arg(long)]
        train: PathBuf,
        /// Held-out directory; link scores are logged after training.
        #[arg(long)]
        dev: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "ff")]
        kind: KindArg,
        /// Word vectors: one word and its values per line.
        #[arg(long)]
        embeddings: Option<PathBuf>,
        /// JSON file overriding training defaults.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Random seeds; several seeds train several models in parallel.
        #[arg(long, value_delimiter = ',')]
        seed: Vec<u64>,
        #[arg(long)]
        epochs: Option<usize>,
        /// Model file, or a directory for several seeds.
        #[arg(long, short)]
        output: PathBuf,
    },
    /// Link every message of a log to its predicted antecedent.
    Disentangle {
        #[arg(long)]
        model: PathBuf,
        /// Log file, or directory of logs.
        #[arg(long)]
        log: PathBuf,
        /// Word vectors the model was trained with.
        #[arg(long)]
        embeddings: Option<PathBuf>,
        #[arg(long, default_value = "auto")]
        context: ContextArg,
        /// Candidate window in messages; overrides the config.
        #[arg(long)]
        window: Option<usize>,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Annotation file (directory in batch mode); stdout if omitted.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Score predicted annotations against gold ones.
    Evaluate {
        /// Gold annotation file, or directory of paired logs and annotations.
        #[arg(long)]
        gold: PathBuf,
        /// Predicted annotation file, or directory of annotation files.
        #[arg(long)]
        pred: PathBuf,
        /// Log for the gold file (single-file mode).
        #[arg(long)]
        log: Option<PathBuf>,
        /// Context size; inferred from the gold annotation by default.
        #[arg(long)]
        context: Option<usize>,
        /// Score only conversations (for systems without meaningful links).
        #[arg(long)]
        conversations_only: bool,
        /// Leave self-links out of link precision and recall.
        #[arg(long)]
        no_self_links: bool,
        /// Leave channel events out of conversation scores.
        #[arg(long)]
        exclude_system: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Combine the predictions of several models.
    Ensemble {
        #[arg(long, value_enum)]
        mode: EnsembleMode,
        /// Annotation files, or directories of them with matching names.
        #[arg(long, num_args = 1.., required = true)]
        inputs: Vec<PathBuf>,
        /// Log the inputs annotate (single-file mode), to fix the message count.
        #[arg(long)]
        log: Option<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Corpus statistics over annotated data, as JSON.
    Stats {
        /// Directories of paired logs and annotations.
        #[arg(long, num_args = 1.., required = true)]
        data: Vec<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Check heuristic premises on gold data and compare predicted
    /// conversations with gold ones.
    Audit {
        /// Directory of paired logs and annotations.
        #[arg(long)]
        gold: PathBuf,
        /// Directory of predicted annotation files.
        #[arg(long)]
        pred: Option<PathBuf>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        response_window: Option<i64>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run a reference system.
    Baseline {
        #[arg(long, value_enum)]
        method: BaselineMethod,
        /// Log file, or directory of logs.
        #[arg(long)]
        log: PathBuf,
        #[arg(long, default_value = "auto")]
        context: ContextArg,
        /// JSON file overriding heuristic defaults.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        response_window: Option<i64>,
        #[arg(long)]
        undirected_window: Option<usize>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).format_timestamp(None).init();

    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> anyhow::Result<()> {
    use commands::*;
    match command {
        Command::Parse { log, output } => parse(&log, output.as_deref()),
        Command::Train {
            train: dir,
            dev,
            kind,
            embeddings,
            config,
            seed,
            epochs,
            output,
        } => train(TrainArgs {
            train: dir,
            dev,
            kind,
            embeddings,
            config,
            seeds: seed,
            epochs,
            output,
        }),
        Command::Disentangle {
            model,
            log,
            embeddings,
            context,
            window,
            config,
            output,
        } => disentangle(DisentangleArgs {
            model,
            log,
            embeddings,
            context,
            window,
            config,
            output,
        }),
        Command::Evaluate {
            gold,
            pred,
            log,
            context,
            conversations_only,
            no_self_links,
            exclude_system,
            output,
        } => evaluate(EvaluateArgs {
            gold,
            pred,
            log,
            context,
            conversations_only,
            no_self_links,
            exclude_system,
            output,
        }),
        Command::Ensemble {
            mode,
            inputs,
            log,
            output,
        } => ensemble(mode, &inputs, log.as_deref(), output.as_deref()),
        Command::Stats { data, output } => stats(&data, output.as_deref()),
        Command::Audit {
            gold,
            pred,
            config,
            response_window,
            output,
        } => audit(&gold, pred.as_deref(), config.as_deref(), response_window, output.as_deref()),
        Command::Baseline {
            method,
            log,
            context,
            config,
            response_window,
            undirected_window,
            output,
        } => baseline(BaselineArgs {
            method,
            log,
            context,
            config,
            response_window,
            undirected_window,
            output,
        }),
    }
}
