use std::path::PathBuf;
use std::str::FromStr;

use clap::builder::BoolishValueParser;
use clap::{Args, Parser, Subcommand, ValueEnum};
use commvar::groebner::Budget;
use commvar::FieldTag;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Prefix of the environment variables that override flags.
pub const ENV_PREFIX: &str = "COMMVAR_";

#[derive(Debug, Parser)]
#[command(
    name = "commvar",
    version,
    about = "Exact computations on the ideal of commuting generic matrices",
    arg_required_else_help = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// List the commutator entries f_1..f_{n^2}.
    Commutator,
    /// List trace-syzygy word candidates up to --max-degree.
    Candidates,
    /// Minimal first syzygies up to --degree-bound, plus the word candidates.
    Syzygies,
    /// Test whether the matrix in --matrix is a trace syzygy.
    SyzygyCheck,
    /// Groebner basis of I or J (--ideal).
    Groebner,
    /// The colon ideal (J:I) and its generators beyond J.
    Colon,
    /// Hilbert series of S/I or S/J (--ideal).
    Hilbert,
    /// Splice the canonical module into the resolution tail and apply the
    /// Euler relations.
    CheckSplice,
    /// Closed-form predictions (labelled CONJECTURE).
    Predict {
        #[arg(value_enum)]
        what: Prediction,
    },
    /// Run every check available for -n.
    Verify,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Commutator => "commutator",
            Command::Candidates => "candidates",
            Command::Syzygies => "syzygies",
            Command::SyzygyCheck => "syzygy-check",
            Command::Groebner => "groebner",
            Command::Colon => "colon",
            Command::Hilbert => "hilbert",
            Command::CheckSplice => "check-splice",
            Command::Predict { what } => match what {
                Prediction::Betti => "predict betti",
                Prediction::ColonDegrees => "predict colon-degrees",
                Prediction::Shape => "predict shape",
                Prediction::Knutson => "predict knutson",
            },
            Command::Verify => "verify",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Prediction {
    Betti,
    ColonDegrees,
    Shape,
    Knutson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderName {
    Grevlex,
    Lex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum IdealName {
    /// All n^2 commutator entries.
    #[value(name = "I", alias = "i")]
    I,
    /// The off-diagonal entries.
    #[value(name = "J", alias = "j")]
    J,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Text,
    Json,
}

/// Flags shared by every subcommand. Each one can also be set through the
/// environment variable `COMMVAR_<FLAG>` (upper case, `-` as `_`).
#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Matrix size.
    #[arg(short = 'n', global = true, env = "COMMVAR_N")]
    pub n: Option<usize>,
    /// Coefficient field: q or gf:<prime>.
    #[arg(long, global = true, env = "COMMVAR_FIELD", default_value = "gf:32003", value_parser = parse_field)]
    pub field: FieldTag,
    #[arg(long, global = true, env = "COMMVAR_ORDER", value_enum, default_value_t = OrderName::Grevlex)]
    pub order: OrderName,
    /// Wall-clock limit per Groebner run.
    #[arg(long, global = true, env = "COMMVAR_BUDGET_SECONDS")]
    pub budget_seconds: Option<f64>,
    /// S-pair limit per Groebner run.
    #[arg(long, global = true, env = "COMMVAR_BUDGET_SPAIRS")]
    pub budget_spairs: Option<u64>,
    /// Degree bound for syzygies (default 4) and truncated Groebner runs.
    #[arg(long, global = true, env = "COMMVAR_DEGREE_BOUND")]
    pub degree_bound: Option<u32>,
    /// Directory holding the printed tables.
    #[arg(long, global = true, env = "COMMVAR_FIXTURES")]
    pub fixtures: Option<PathBuf>,
    /// Emit the report as JSON.
    #[arg(long, global = true, env = "COMMVAR_JSON", value_parser = BoolishValueParser::new())]
    pub json: bool,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "COMMVAR_THREADS", default_value_t = 0)]
    pub threads: usize,
    /// Word degree bound for `candidates`.
    #[arg(long, global = true, env = "COMMVAR_MAX_DEGREE", default_value_t = 5)]
    pub max_degree: usize,
    /// Which ideal `groebner` and `hilbert` work on.
    #[arg(long, global = true, env = "COMMVAR_IDEAL", value_enum, default_value_t = IdealName::I)]
    pub ideal: IdealName,
    /// Matrix file for `syzygy-check`: one row per line, entries separated
    /// by commas.
    #[arg(long, global = true, env = "COMMVAR_MATRIX")]
    pub matrix: Option<PathBuf>,
}

fn parse_field(s: &str) -> Result<FieldTag, String> {
    FieldTag::from_str(s).map_err(|e| e.to_string())
}

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("-n is required for `{0}`")]
    MissingN(&'static str),
    #[error("-n must be at least {min} for `{command}`")]
    SmallN { command: &'static str, min: usize },
    #[error("--{0} must be positive")]
    NonPositive(&'static str),
    #[error("--matrix is required for `syzygy-check`")]
    MissingMatrix,
}

/// Validated run configuration, echoed in every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub n: Option<usize>,
    #[serde(with = "field_text")]
    pub field: FieldTag,
    pub order: OrderName,
    pub budget_seconds: Option<f64>,
    pub budget_spairs: Option<u64>,
    pub degree_bound: Option<u32>,
    pub fixtures: PathBuf,
    pub format: OutputFormat,
    pub threads: usize,
    pub max_degree: usize,
    pub ideal: IdealName,
    pub matrix: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_options(o: &Options) -> Result<Self, ConfigError> {
        if o.budget_seconds.is_some_and(|s| s.is_nan() || s <= 0.0) {
            return Err(ConfigError::NonPositive("budget-seconds"));
        }
        if o.budget_spairs == Some(0) {
            return Err(ConfigError::NonPositive("budget-spairs"));
        }
        if o.degree_bound == Some(0) {
            return Err(ConfigError::NonPositive("degree-bound"));
        }
        Ok(RunConfig {
            n: o.n,
            field: o.field,
            order: o.order,
            budget_seconds: o.budget_seconds,
            budget_spairs: o.budget_spairs,
            degree_bound: o.degree_bound,
            fixtures: o
                .fixtures
                .clone()
                .unwrap_or_else(commvar::fixtures::default_dir),
            format: if o.json {
                OutputFormat::Json
            } else {
                OutputFormat::Text
            },
            threads: o.threads,
            max_degree: o.max_degree,
            ideal: o.ideal,
            matrix: o.matrix.clone(),
        })
    }

    /// A default configuration for `n`, as the CLI would build it with no
    /// flags besides `-n`.
    pub fn for_n(n: usize) -> Self {
        let cli = Cli::parse_from(["commvar", "verify", "-n", &n.to_string()]);
        RunConfig::from_options(&cli.options).expect("defaults are valid")
    }

    /// Budget in fail mode.
    pub fn budget(&self) -> Budget {
        Budget {
            max_seconds: self.budget_seconds,
            max_spairs: self.budget_spairs,
            ..Budget::default()
        }
    }

    pub fn require_n(&self, command: &'static str, min: usize) -> Result<usize, ConfigError> {
        let n = self.n.ok_or(ConfigError::MissingN(command))?;
        if n < min {
            return Err(ConfigError::SmallN { command, min });
        }
        Ok(n)
    }
}

mod field_text {
    use std::str::FromStr;

    use commvar::FieldTag;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(f: &FieldTag, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(f)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<FieldTag, D::Error> {
        let s = String::deserialize(d)?;
        FieldTag::from_str(&s).map_err(D::Error::custom)
    }
}
