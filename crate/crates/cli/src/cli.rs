//! Command-line dispatch.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::api::{execute, Operation};
use crate::config::{Config, Limits, CONFIG_ENV, DEFAULT_PORT, PORT_ENV};

#[derive(Debug, Parser)]
#[command(
    name = "ebwtlab",
    version,
    about = "eBWT runs under string decompositions"
)]
pub struct Cli {
    /// Print the JSON payload instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Declared alphabet (string of distinct symbols); defaults to the
    /// symbols of the input.
    #[arg(long, global = true)]
    pub alphabet: Option<String>,

    /// key=value file with guards and caps.
    #[arg(long, global = true, env = CONFIG_ENV)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// eBWT of comma-separated parts, e.g. `baa,bab`.
    Ebwt { parts: String },
    /// BWT of a word over its circular rotations.
    Bwt { word: String },
    /// Multiset of primitive words whose eBWT is L.
    Invert { l: String },
    /// Number of adjacent unequal symbol pairs.
    Runs { word: String },
    /// Split a word by part lengths (`3+3`) and report its eBWT.
    Apply {
        #[arg(long)]
        word: String,
        #[arg(long)]
        parts: String,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Number of k-restricted decompositions of a length-n word.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// List the compositions of n into parts > k.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Exhaustive min/max of eBWT runs over k-restricted decompositions.
    Search {
        #[arg(long)]
        word: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        limit: Option<String>,
    },
    /// Blocks of length p, the last one absorbing the remainder.
    Block {
        #[arg(long)]
        word: String,
        #[arg(long)]
        p: usize,
    },
    /// Check the block decomposition against the sigma^(k+1)+4k+2 bound.
    Bound {
        #[arg(long)]
        word: String,
        #[arg(long)]
        k: usize,
    },
    /// Lyndon factorization (its eBWT is the bijective BWT).
    Lyndon { word: String },
    /// Worst-case binary family for k at the given ratio.
    Family {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ratio: u64,
    },
    /// Solve the length-k cycle systems of (ba)^n.
    Cycles {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// n <= max with n+1 prime and 2 of order n modulo n+1.
    Artin {
        #[arg(long)]
        max: u64,
    },
    /// Check (2S-I)·C(1,2,...,2^(k-1)) = (2^k-1)·I.
    Circulant {
        #[arg(long)]
        k: usize,
    },
    /// Run a property suite (or `all`).
    Verify {
        #[arg(long)]
        suite: String,
    },
    /// Start the HTTP/JSON service.
    Serve {
        #[arg(long, env = PORT_ENV, default_value_t = DEFAULT_PORT)]
        port: u16,
    },
}

impl Command {
    fn operation(&self, alphabet: &Option<String>) -> Result<Operation, String> {
        let alphabet = alphabet.clone();
        Ok(match self {
            Command::Ebwt { parts } => Operation::Ebwt {
                parts: parts.split(',').map(str::to_string).collect(),
                alphabet,
            },
            Command::Bwt { word } => Operation::Bwt {
                word: word.clone(),
                alphabet,
            },
            Command::Invert { l } => Operation::Invert {
                l: l.clone(),
                alphabet,
            },
            Command::Runs { word } => Operation::Runs {
                word: word.clone(),
                alphabet,
            },
            Command::Apply { word, parts, k } => Operation::Apply {
                word: word.clone(),
                parts_lengths: parts
                    .split(['+', ','])
                    .map(|p| {
                        p.trim()
                            .parse()
                            .map_err(|_| format!("bad part length '{p}'"))
                    })
                    .collect::<Result<_, _>>()?,
                k: *k,
                alphabet,
            },
            Command::Count { n, k } => Operation::Count { n: *n, k: *k },
            Command::Enumerate { n, k } => Operation::Enumerate { n: *n, k: *k },
            Command::Search { word, k, limit } => Operation::Search {
                word: word.clone(),
                k: *k,
                limit: limit.clone(),
                alphabet,
            },
            Command::Block { word, p } => Operation::Block {
                word: word.clone(),
                p: *p,
                alphabet,
            },
            Command::Bound { word, k } => Operation::Bound {
                word: word.clone(),
                k: *k,
                alphabet,
            },
            Command::Lyndon { word } => Operation::Lyndon {
                word: word.clone(),
                alphabet,
            },
            Command::Family { k, ratio } => Operation::Family {
                k: *k,
                ratio: *ratio,
            },
            Command::Cycles { n, k } => Operation::Cycles { n: *n, k: *k },
            Command::Artin { max } => Operation::Artin { limit: *max },
            Command::Circulant { k } => Operation::Circulant { k: *k },
            Command::Verify { suite } => Operation::Verify {
                suite: suite.clone(),
            },
            Command::Serve { .. } => return Err("serve is not an operation".into()),
        })
    }
}

/// Parses `argv` and runs the command; output goes to stdout, diagnostics
/// to stderr.
pub fn run<I, T>(argv: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };

    if let Command::Serve { port } = cli.command {
        let base = Config {
            port,
            limits: Limits::service(),
        };
        let config = match &cli.config {
            Some(path) => match Config::load(path, base) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            },
            None => base,
        };
        let rt = match tokio::runtime::Runtime::new() {
            Ok(rt) => rt,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::FAILURE;
            }
        };
        return match rt.block_on(crate::server::serve(config)) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::FAILURE
            }
        };
    }

    let limits = match &cli.config {
        Some(path) => match Config::load(
            path,
            Config {
                port: DEFAULT_PORT,
                limits: Limits::cli(),
            },
        ) {
            Ok(c) => c.limits,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        None => Limits::cli(),
    };
    let op = match cli.command.operation(&cli.alphabet) {
        Ok(op) => op,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match execute(&op, &limits, None) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json_string());
            } else {
                println!("{}", out.text);
            }
            // a failing property suite is a failing command
            if out.json.get("passed") == Some(&serde_json::Value::Bool(false)) {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            if cli.json {
                eprintln!("{}", serde_json::to_string(&e).unwrap_or_default());
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::FAILURE
        }
    }
}
