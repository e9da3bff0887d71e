//! Command-line front end: `build`, `sim`, `bench`, `export-ic`.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 unknown word,
//! 4 degenerate statistics.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::evaluation::{
    self, BenchmarkFixture, EvalError, EvalReport, HumanColumn, Transforms, UnknownWords,
};
use crate::frequency::{IcConfig, IcMode};
use crate::index::{BuildConfig, IndexBundle, IndexError};
use crate::metrics::{MetricError, MetricKind, Scorer};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNKNOWN_WORD: i32 = 3;
pub const EXIT_DEGENERATE: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "taxosim",
    version,
    about = "Semantic similarity over a thesaurus taxonomy"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Logarithm base for information content
    #[arg(long, global = true, default_value_t = 2.0)]
    pub log_base: f64,
    /// Count assumed for words with a smaller or missing frequency
    #[arg(long, global = true, default_value_t = 1.0)]
    pub freq_floor: f64,
    /// Corpus size; defaults to the sum of all counts
    #[arg(long, global = true)]
    pub total_n: Option<f64>,
    /// How internal nodes get their probability
    #[arg(long, global = true, value_enum, default_value_t = IcModeArg::Min)]
    pub ic_mode: IcModeArg,
    /// Constant for the `max_edges - edges` transform
    #[arg(long, global = true, default_value_t = evaluation::DEFAULT_MAX_EDGES)]
    pub max_edges: f64,
    /// Constant for the `lexicon_size - words` transform
    #[arg(long, global = true, default_value_t = evaluation::DEFAULT_LEXICON_SIZE)]
    pub lexicon_size: f64,
    /// Human ratings to correlate against
    #[arg(long, global = true, value_enum, default_value_t = HumanArg::Mc)]
    pub human: HumanArg,
    /// Output format
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum IcModeArg {
    Min,
    Sum,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum HumanArg {
    Mc,
    Repl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a taxonomy and frequency file and write an index
    Build {
        #[arg(long)]
        taxonomy: String,
        #[arg(long)]
        freq: String,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Score one word pair
    Sim {
        #[arg(long)]
        index: PathBuf,
        word1: String,
        word2: String,
        /// edge, intervening, wpe, resnik or jcn
        #[arg(long, default_value = "edge")]
        metric: String,
    },
    /// Correlate metrics with human ratings
    Bench {
        /// CSV file or `builtin:table1`
        #[arg(long)]
        pairs: String,
        /// Use the metric columns stored in the pairs file
        #[arg(long, conflicts_with = "index", required_unless_present = "index")]
        precomputed: bool,
        /// Score pairs live against this index
        #[arg(long)]
        index: Option<PathBuf>,
        /// Metrics for a live run, comma separated
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "edge,intervening,wpe,resnik,jcn"
        )]
        metrics: Vec<String>,
        /// Drop pairs with a word missing from the taxonomy
        #[arg(long)]
        skip_unknown: bool,
        /// Report file; stdout when omitted
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Per-pair CSV (csv format only); defaults to `<out>.pairs.csv`
        #[arg(long)]
        per_pair_out: Option<PathBuf>,
    },
    /// Write `concept-path\tprobability\tic` for every node
    ExportIc {
        #[arg(long)]
        index: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("{0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Metric(MetricError::UnknownWord(_)) => EXIT_UNKNOWN_WORD,
            CliError::Eval(EvalError::Metric {
                source: MetricError::UnknownWord(_),
                ..
            }) => EXIT_UNKNOWN_WORD,
            CliError::Eval(e) if e.is_degenerate() => EXIT_DEGENERATE,
            _ => EXIT_USAGE,
        }
    }
}

impl GlobalOpts {
    fn ic_config(&self) -> IcConfig {
        IcConfig {
            log_base: self.log_base,
            freq_floor: self.freq_floor,
            mode: match self.ic_mode {
                IcModeArg::Min => IcMode::Min,
                IcModeArg::Sum => IcMode::Sum,
            },
        }
    }

    fn human(&self) -> HumanColumn {
        match self.human {
            HumanArg::Mc => HumanColumn::Mc,
            HumanArg::Repl => HumanColumn::Repl,
        }
    }

    fn transforms(&self) -> Transforms {
        Transforms::standard(self.max_edges, self.lexicon_size)
    }
}

fn create(path: &PathBuf) -> Result<File, CliError> {
    File::create(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn stdout_err(source: io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        source,
    }
}

/// Run one command, writing normal output to `out`.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let g = &cli.global;
    match cli.command {
        Command::Build {
            taxonomy,
            freq,
            out: index_path,
        } => {
            let bundle = IndexBundle::build(BuildConfig {
                taxonomy_path: taxonomy,
                freq_path: freq,
                ic: g.ic_config(),
                total_n: g.total_n,
            })?;
            bundle.save(&index_path)?;
            let t = &bundle.taxonomy;
            writeln!(
                out,
                "words: {}\nnodes: {}\nroot_ic: {}",
                t.word_count(),
                t.len(),
                bundle.ic.ic(t.root())
            )
            .map_err(stdout_err)?;
        }
        Command::Sim {
            index,
            word1,
            word2,
            metric,
        } => {
            let metric: MetricKind = metric.parse()?;
            let bundle = IndexBundle::load(&index)?;
            let scorer = Scorer::new(&bundle.taxonomy, &bundle.ic);
            let score = scorer.score(metric, &word1, &word2)?;
            let (a, b) = score.chosen_senses;
            let (pa, pb) = (bundle.taxonomy.path(a), bundle.taxonomy.path(b));
            match g.format {
                Some(Format::Json) => {
                    let v = serde_json::json!({
                        "metric": metric.name(),
                        "value": score.value,
                        "polarity": score.polarity,
                        "chosen_senses": [pa, pb],
                    });
                    writeln!(out, "{v}").map_err(stdout_err)?;
                }
                Some(Format::Csv) => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    w.write_record(["metric", "value", "polarity", "sense1", "sense2"])?;
                    w.write_record([
                        metric.name(),
                        &score.value.to_string(),
                        &score.polarity.to_string(),
                        &pa,
                        &pb,
                    ])?;
                    w.flush().map_err(stdout_err)?;
                }
                None => writeln!(
                    out,
                    "{}\t{}\t{}\t{pa}\t{pb}",
                    metric.name(),
                    score.value,
                    score.polarity
                )
                .map_err(stdout_err)?,
            }
        }
        Command::Bench {
            pairs,
            precomputed,
            index,
            metrics,
            skip_unknown,
            out: report_path,
            per_pair_out,
        } => {
            let fixture = BenchmarkFixture::open(&pairs).map_err(|e| match e {
                EvalError::Io(source) => CliError::Io {
                    path: pairs.clone(),
                    source,
                },
                other => other.into(),
            })?;
            let report = if precomputed {
                evaluation::run_precomputed(&fixture, g.human(), &g.transforms())?
            } else {
                let index = index.ok_or_else(|| {
                    CliError::Usage("bench needs --precomputed or --index".into())
                })?;
                let metrics = metrics
                    .iter()
                    .map(|m| m.parse())
                    .collect::<Result<Vec<MetricKind>, _>>()?;
                let bundle = IndexBundle::load(&index)?;
                let policy = if skip_unknown {
                    UnknownWords::Skip
                } else {
                    UnknownWords::Fail
                };
                evaluation::run_live(
                    &Scorer::new(&bundle.taxonomy, &bundle.ic),
                    &fixture,
                    &metrics,
                    &g.transforms(),
                    g.human(),
                    policy,
                )?
            };
            write_report(
                &report,
                g.format.unwrap_or(Format::Json),
                report_path,
                per_pair_out,
                out,
            )?;
        }
        Command::ExportIc { index, out: path } => {
            let bundle = IndexBundle::load(&index)?;
            match path {
                Some(p) => bundle
                    .write_ic_tsv(io::BufWriter::new(create(&p)?))
                    .map_err(|source| CliError::Io {
                        path: p.display().to_string(),
                        source,
                    })?,
                None => bundle.write_ic_tsv(&mut *out).map_err(stdout_err)?,
            }
        }
    }
    Ok(())
}

fn write_report(
    report: &EvalReport,
    format: Format,
    path: Option<PathBuf>,
    per_pair: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let io_err = |p: &PathBuf| {
        let path = p.display().to_string();
        move |source| CliError::Io { path, source }
    };
    match (format, path) {
        (Format::Json, Some(p)) => report.write_json(create(&p)?).map_err(io_err(&p))?,
        (Format::Json, None) => report.write_json(&mut *out).map_err(stdout_err)?,
        (Format::Csv, path) => {
            match &path {
                Some(p) => report.write_correlations_csv(create(p)?)?,
                None => report.write_correlations_csv(&mut *out)?,
            }
            let pairs_path = per_pair.or_else(|| {
                path.map(|p| {
                    let mut s = p.into_os_string();
                    s.push(".pairs.csv");
                    PathBuf::from(s)
                })
            });
            if let Some(p) = pairs_path {
                report.write_pairs_csv(create(&p)?)?;
            }
        }
    }
    Ok(())
}

/// Parse `args` and run, printing errors to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn main() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
