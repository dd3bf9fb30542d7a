mod commands;
mod input;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use input::GraphSource;

#[derive(Parser, Debug)]
#[command(
    name = "leavitt",
    version,
    about = "Exact computations in Leavitt path algebras of finite graphs"
)]
struct Cli {
    #[command(flatten)]
    graph: GraphSource,

    /// Output format. `dot` is available for `validate` and `erg`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Describe the graph, or validate a representation graph over it.
    Validate {
        /// Representation graph file to validate.
        #[arg(long)]
        erg: Option<String>,
    },
    /// List the normal-form basis paths.
    Basis {
        #[arg(long, default_value_t = 2)]
        max_len: usize,
        /// Only paths starting at this vertex.
        #[arg(long)]
        at: Option<String>,
    },
    /// Multiply two algebra elements, e.g. `d.d* + 2*e` and `e*`.
    Mul { left: String, right: String },
    /// Build a canonical representation graph up to a depth.
    Erg {
        /// `source:v`, `cycle:d.e*` or `inf:(d*)^inf` (a suffix follows the period).
        descriptor: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Classify a finite exact connected representation graph.
    Classify {
        #[arg(long)]
        erg: String,
    },
    /// Act on a vertex of a representation graph by an algebra element.
    Act {
        /// Representation graph file; alternatively use `--descriptor`.
        #[arg(long, conflicts_with = "descriptor")]
        erg: Option<String>,
        #[arg(long)]
        descriptor: Option<String>,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Vertex name, e.g. `w_{1,d*}`.
        #[arg(long)]
        vertex: String,
        /// Algebra element, applied on the right.
        #[arg(long)]
        element: String,
    },
    /// Nonsimplicity and endomorphism checks for the module of a real cycle.
    CheckSchur {
        /// The cycle, e.g. `e` or `c.f`.
        cycle: String,
        #[arg(long, value_delimiter = ',', default_values_t = [4, 5, 6])]
        depths: Vec<usize>,
    },
    /// Dimensions of hom spaces between two canonical modules.
    CheckHom {
        from: String,
        to: String,
        #[arg(long, value_delimiter = ',', default_values_t = [4, 5, 6])]
        depths: Vec<usize>,
    },
    /// One descriptor per isomorphism class within the given bounds.
    Representatives {
        #[arg(long, default_value_t = 2)]
        max_cycle: usize,
        #[arg(long, default_value_t = 2)]
        max_period: usize,
        /// Keep only ghostly classes.
        #[arg(long)]
        ghostly: bool,
    },
}

/// Failures mapped to exit codes: 1 for domain errors, 2 for misuse.
#[derive(Debug)]
pub enum CliError {
    Domain(String),
    Usage(String),
}

impl From<leavitt::Error> for CliError {
    fn from(e: leavitt::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.graph, cli.format, &cli.verb) {
        Ok(out) => {
            print!("{}", out.text);
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
