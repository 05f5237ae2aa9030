mod commands;
mod config;
mod error;
mod svg;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use ar_iet::gasket::{DirectingPrefix, MultRule, PartialQuotients, Triple};
use ar_iet::iet::{OrderTag, Partition};
use ar_iet::rational::{parse_rational, Rational};
use ar_iet::words::Alphabet;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::RunConfig;
use crate::error::CliError;

/// Exact Arnoux-Rauzy interval exchanges from the command line.
#[derive(Debug, Parser)]
#[command(name = "ar-iet", version)]
struct Cli {
    /// Plain-text `key = value` configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the result here instead of standard output. Relative paths are
    /// placed under the configured `output_dir`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

fn triple_arg(s: &str) -> Result<Triple, String> {
    s.parse()
}

fn prefix_arg(s: &str) -> Result<DirectingPrefix, String> {
    s.parse()
}

fn order_arg(s: &str) -> Result<OrderTag, String> {
    s.parse()
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn gaps_arg(s: &str) -> Result<Gaps, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [g1, g2] = parts.as_slice() else {
        return Err("expected two gaps, e.g. 0,1/2".into());
    };
    Ok(Gaps([rational_arg(g1)?, rational_arg(g2)?]))
}

fn rule_arg(s: &str) -> Result<MultRule, String> {
    match s.trim() {
        "I" | "1" => Ok(MultRule::I),
        "II" | "2" => Ok(MultRule::II),
        other => Err(format!("bad rule {other:?} (expected I or II)")),
    }
}

#[derive(Debug, Clone)]
pub struct Gaps(pub [Rational; 2]);

/// Which nine-interval map to build.
#[derive(Debug, Args)]
pub struct MapArgs {
    /// Length triple `a,b,c`, each `p/q` or an integer.
    #[arg(long, value_parser = triple_arg, conflicts_with = "prefix")]
    pub triple: Option<Triple>,
    /// Directing prefix over `1,2,3`; the triple is rebuilt from the seed.
    #[arg(long, value_parser = prefix_arg)]
    pub prefix: Option<DirectingPrefix>,
    /// Arrangement of the supports, e.g. `first` or `reversed-second`.
    #[arg(long, value_parser = order_arg, default_value = "first")]
    pub order: OrderTag,
    /// The two gaps between consecutive supports.
    #[arg(long, value_parser = gaps_arg, default_value = "0,0")]
    pub gaps: Gaps,
}

/// A partial-quotient sequence, given directly or through a directing word.
#[derive(Debug, Args)]
pub struct PqArgs {
    /// Complete directing word (ends with 1 or 2).
    #[arg(long, value_parser = prefix_arg, conflicts_with_all = ["ks", "tribonacci"])]
    pub prefix: Option<DirectingPrefix>,
    /// Partial quotients `k_1,k_2,...`.
    #[arg(long, value_delimiter = ',')]
    pub ks: Option<Vec<u64>>,
    /// Multiplicative rules `I,II,...`; all `I` when omitted.
    #[arg(long, value_parser = rule_arg, value_delimiter = ',', requires = "ks")]
    pub rules: Option<Vec<MultRule>>,
    /// The first `N` blocks of the all-`I` sequence.
    #[arg(long, conflicts_with = "ks")]
    pub tribonacci: Option<usize>,
}

impl PqArgs {
    pub fn resolve(&self) -> Result<PartialQuotients, CliError> {
        if let Some(p) = &self.prefix {
            return Ok(ar_iet::gasket::partial_quotients(p)?);
        }
        if let Some(n) = self.tribonacci {
            return Ok(PartialQuotients::tribonacci(n));
        }
        let Some(ks) = &self.ks else {
            return Err(CliError::usage("one of --prefix, --ks or --tribonacci is required"));
        };
        let rules = match &self.rules {
            Some(r) if r.len() != ks.len() => {
                return Err(CliError::usage("--rules must have one entry per partial quotient"))
            }
            Some(r) => r.clone(),
            None => vec![MultRule::I; ks.len()],
        };
        Ok(PartialQuotients::new(ks.clone(), rules)?)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AlphabetArg {
    A3,
    A9,
}

impl From<AlphabetArg> for Alphabet {
    fn from(a: AlphabetArg) -> Self {
        match a {
            AlphabetArg::A3 => Alphabet::A3,
            AlphabetArg::A9 => Alphabet::A9,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PartitionArg {
    Nine,
    Six,
    Three,
}

impl From<PartitionArg> for Partition {
    fn from(p: PartitionArg) -> Self {
        match p {
            PartitionArg::Nine => Partition::Nine,
            PartitionArg::Six => Partition::Six,
            PartitionArg::Three => Partition::Three,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Renormalize a triple, or rebuild one from a directing prefix.
    Gasket {
        #[arg(long, value_parser = triple_arg, conflicts_with = "prefix")]
        triple: Option<Triple>,
        #[arg(long, value_parser = prefix_arg)]
        prefix: Option<DirectingPrefix>,
        /// Maximum number of renormalization steps.
        #[arg(long, default_value_t = ar_iet::gasket::DEFAULT_MAX_STEPS)]
        steps: usize,
    },
    /// Stage words and heights for a directing prefix.
    Words {
        #[arg(long, value_parser = prefix_arg)]
        prefix: DirectingPrefix,
        #[arg(long, value_enum, default_value = "a3")]
        alphabet: AlphabetArg,
        /// Stop at this stage instead of the full prefix.
        #[arg(long)]
        stage: Option<usize>,
    },
    /// Exact orbit of a point and its coding.
    Orbit {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, value_parser = rational_arg)]
        x: Rational,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long, value_enum, default_value = "nine")]
        partition: PartitionArg,
        /// `csv` prints the nine-letter frequency table.
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Induce on `J_a` repeatedly and report each stage with its checks.
    Induct {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Rokhlin towers at one stage.
    Towers {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, default_value_t = 0)]
        stage: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Structural checks over one prefix or a file of prefixes.
    Check(commands::CheckArgs),
    /// Finite-data probes of the ergodic behaviour.
    Experiment {
        #[command(subcommand)]
        kind: commands::Experiment,
    },
    /// SVG drawing of a map.
    Render {
        /// Draw the domain and image rows (the only drawing for now).
        #[arg(long, default_value_t = true)]
        layout: bool,
        #[command(flatten)]
        map: MapArgs,
        /// Outline the supports of the first induced map with dashed boxes.
        #[arg(long)]
        induction: bool,
    },
}

/// The rendered output, and an error to report once it has been written.
fn run(cli: Cli) -> Result<(String, Option<CliError>), CliError> {
    let cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let mut failure = None;
    let output = match cli.command {
        Command::Gasket { triple, prefix, steps } => commands::gasket(&cfg, triple, prefix, steps),
        Command::Words {
            prefix,
            alphabet,
            stage,
        } => commands::words(&cfg, &prefix, alphabet.into(), stage),
        Command::Orbit {
            map,
            x,
            steps,
            partition,
            format,
        } => commands::orbit(&cfg, &map, &x, steps, partition.into(), format),
        Command::Induct { map, steps } => commands::induct(&cfg, &map, steps),
        Command::Towers { map, stage, format } => commands::towers(&cfg, &map, stage, format),
        Command::Check(args) => commands::check(&cfg, &args).map(|(text, failed)| {
            if failed > 0 {
                failure = Some(CliError::ChecksFailed(failed));
            }
            text
        }),
        Command::Experiment { kind } => commands::experiment(&cfg, kind),
        Command::Render {
            layout: _,
            map,
            induction,
        } => commands::render(&cfg, &map, induction),
    }?;
    if let Some(out) = &cli.out {
        let path = cfg.resolve(out);
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(&path, &output)?;
        return Ok((String::new(), failure));
    }
    Ok((output, failure))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::usage(e.render().to_string().trim_end());
            eprintln!("{}", err.to_json());
            return ExitCode::from(err.exit_code());
        }
    };
    match run(cli) {
        Ok((output, failure)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(output.as_bytes());
            match failure {
                None => ExitCode::SUCCESS,
                Some(err) => {
                    eprintln!("{}", err.to_json());
                    ExitCode::from(err.exit_code())
                }
            }
        }
        Err(err) => {
            eprintln!("{}", err.to_json());
            ExitCode::from(err.exit_code())
        }
    }
}
