//! Command-line front end: argument parsing, input loading and report
//! rendering around the `selfsim` library.

mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use selfsim::{Caps, Error};

pub use input::Input;
use input::OptionalInput;
pub use report::Report;

pub const CAPS_ENV: &str = "SELFSIM_CAPS";

#[derive(Debug, Parser)]
#[command(
    name = "selfsim",
    version,
    about = "Self-similar groups of graph automata"
)]
pub struct Cli {
    /// Report layout
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Append elapsed wall time to the report
    #[arg(long, global = true)]
    pub timing: bool,
    /// Worker threads for enumeration sweeps
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Write the command's primary artifact (JSON, DOT) to this file
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closure,
    Fragile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Oracle {
    Trace,
    Action,
    Projection,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Automaton of an oriented graph
    BuildGraphAutomaton {
        #[command(flatten)]
        input: Input,
    },
    /// Dual automaton
    Dual {
        #[command(flatten)]
        input: Input,
    },
    /// Dual of the automaton joined with its inverse
    EnrichedDual {
        #[command(flatten)]
        input: Input,
    },
    /// n-th power automaton
    Power {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'n')]
        n: usize,
    },
    /// Graphviz rendering
    ExportDot {
        #[command(flatten)]
        input: Input,
    },
    /// Word problem
    Wp {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'w', long = "word")]
        word: String,
        #[arg(long, value_enum, default_value_t = Method::Closure)]
        method: Method,
        #[arg(long, default_value_t = 8)]
        kmax: usize,
    },
    /// Nucleus of a contracting automaton
    Nucleus {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 64)]
        depth_cap: usize,
        #[arg(long, default_value_t = 10_000)]
        size_cap: usize,
    },
    /// Membership in the k-th fragile set
    Fragile {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'w', long = "word")]
        word: String,
        #[arg(short = 'k')]
        k: usize,
    },
    /// Restrictions at every word of length k
    Embed {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'w', long = "word")]
        word: String,
        #[arg(short = 'k')]
        k: usize,
    },
    /// Triviality in the k-th fragile group
    GkIdentity {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'w', long = "word")]
        word: String,
        #[arg(short = 'k')]
        k: usize,
    },
    /// Exponent sum of every generator
    ExponentSums {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'w', long = "word")]
        word: String,
    },
    /// Bounded reducibility check
    CheckReducible {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        max_depth: usize,
    },
    /// Order of the group induced on the first level
    SymQuotient {
        #[command(flatten)]
        input: Input,
    },
    /// Abelian or free pair among tuples of words
    Dichotomy {
        #[command(flatten)]
        input: OptionalInput,
        /// One tuple per line, components separated by `|`
        #[arg(long)]
        tuples: PathBuf,
    },
    /// Trace normal form of a positive edge word
    TraceNf {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'u')]
        u: String,
    },
    /// Equality of positive edge words
    TraceEq {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'u')]
        u: String,
        #[arg(short = 'v')]
        v: String,
        #[arg(long, value_enum, default_value_t = Oracle::Trace)]
        oracle: Oracle,
    },
    /// Walk of a positive word through the dual automaton
    DualPath {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'x')]
        x: String,
        #[arg(short = 'u')]
        u: String,
    },
    /// Search for a positive word acting trivially on an acyclic orientation
    CheckAcyclic {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        max_len: usize,
    },
    /// Whether an oriented cycle word has order dividing k-1
    CycleTorsion {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'w', long = "word")]
        word: String,
        #[arg(short = 'k')]
        k: usize,
    },
    /// Automaton generated from a Schreier graph
    SchreierGen {
        #[arg(long)]
        action: PathBuf,
        #[arg(long)]
        assignment: Option<PathBuf>,
    },
    /// Loop shortening in the decorated Schreier graph
    VerifyLoops {
        #[arg(long)]
        action: PathBuf,
        #[arg(long)]
        assignment: Option<PathBuf>,
        #[arg(long)]
        max_len: usize,
    },
}

/// A failed command: the error name and a message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub name: &'static str,
    pub message: String,
}

impl Failure {
    pub fn new(name: &'static str, message: impl Into<String>) -> Self {
        Failure {
            name,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new(e.name(), e.to_string())
    }
}

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

fn echo(args: &[String]) -> String {
    args.iter()
        .skip(1)
        .map(|a| {
            if a.is_empty() || a.contains(char::is_whitespace) {
                format!("\"{a}\"")
            } else {
                a.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if status == 0 {
                Outcome {
                    status,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    status,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let caps = match std::env::var(CAPS_ENV) {
        Ok(overrides) => match Caps::default().raised_by(&overrides) {
            Ok(c) => c,
            Err(e) => return failure_outcome(&args, cli.format, e.into()),
        },
        Err(_) => Caps::default(),
    };
    let mut report = Report::default();
    report
        .text("command", echo(&args))
        .text("tool", concat!("selfsim ", env!("CARGO_PKG_VERSION")));
    let started = Instant::now();
    let result = match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
        {
            Ok(pool) => pool.install(|| commands::dispatch(&cli, &caps, &mut report)),
            Err(e) => Err(Failure::new("Io", format!("cannot start thread pool: {e}"))),
        },
        None => commands::dispatch(&cli, &caps, &mut report),
    };
    match result {
        Ok(()) => {
            if cli.timing {
                report.text("elapsed-ms", started.elapsed().as_millis());
            }
            Outcome {
                status: 0,
                stdout: render(&report, cli.format),
                stderr: String::new(),
            }
        }
        Err(f) => failure_outcome(&args, cli.format, f),
    }
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => report.render_text(),
        Format::Structured => report.render_json(),
    }
}

fn failure_outcome(args: &[String], format: Format, f: Failure) -> Outcome {
    let mut report = Report::default();
    report
        .text("command", echo(args))
        .text("tool", concat!("selfsim ", env!("CARGO_PKG_VERSION")))
        .text("error", f.name)
        .text("message", &f.message);
    Outcome {
        status: 1,
        stdout: render(&report, format),
        stderr: format!("error: {}: {}\n", f.name, f.message),
    }
}
