//! Command line and JSON service for ideal flow network signatures.
//!
//! [`run`] is the whole command line: it parses arguments, writes to the
//! given streams and returns the process exit code (0 success, 1 usage or
//! parse error, 2 domain error).

pub mod document;
pub mod error;
pub mod ops;
pub mod service;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{ArgGroup, Parser, Subcommand};
use ifn_core::render_signature;

use crate::document::{canonical_json, MatrixDocument};
use crate::error::{AppError, AppResult};
use crate::ops::Method;

#[derive(Debug, Parser)]
#[command(
    name = "ifn",
    version,
    about = "Compose, decompose and analyze ideal flow network signatures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compose a signature into a flow matrix document.
    Compose {
        #[arg(long)]
        sig: String,
        /// Reject signatures whose terms do not form a connected network.
        #[arg(long)]
        strict: bool,
        /// Write the document to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decompose a flow matrix document into a signature.
    Decompose {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Greedy)]
        method: Method,
    },
    /// Report every quantity derived from a signature.
    Analyze {
        #[arg(long)]
        sig: String,
    },
    /// Check a matrix for premagic, irreducible and ideal flow.
    Check {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Print the normalized form of a signature.
    Canon {
        #[arg(long)]
        sig: String,
    },
    /// Classify two signatures as identical, equivalent or distinct.
    Relate {
        #[arg(long)]
        sig1: String,
        #[arg(long)]
        sig2: String,
    },
    /// Generate a seeded random irreducible signature.
    Random {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        kappa: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Assign every cycle of a support graph once.
    #[command(group(ArgGroup::new("support").required(true).args(["complete", "graph"])))]
    Premier {
        /// Complete graph on this many nodes.
        #[arg(long)]
        complete: Option<usize>,
        /// Include a self-loop at every node of the complete graph.
        #[arg(long)]
        self_loops: bool,
        /// Matrix document whose positive entries are the support links.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Turn a row-stochastic matrix into the smallest integer ideal flow.
    Markov {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Run the JSON service.
    Serve {
        #[arg(long)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let informational =
                matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let stream: &mut dyn Write = if informational { out } else { err };
            let _ = write!(stream, "{}", e.render());
            return if informational { 0 } else { 1 };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let AppError::NonIntegral(w) = &e {
                let _ = write!(err, "{}", canonical_json(&ops::witness_json(w)));
            }
            e.exit_code()
        }
    }
}

fn read_document(path: &Path) -> AppResult<MatrixDocument> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        AppError::input(
            "UnreadableFile",
            format!("cannot read {}: {e}", path.display()),
        )
    })?;
    MatrixDocument::parse(&text)
}

fn emit(out: &mut dyn Write, text: &str) -> AppResult<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| AppError::input("OutputError", format!("cannot write output: {e}")))
}

fn execute(command: Command, out: &mut dyn Write) -> AppResult<()> {
    match command {
        Command::Compose {
            sig,
            strict,
            out: file,
        } => {
            let net = ops::compose_text(&sig, strict)?;
            let text = canonical_json(&MatrixDocument::from_network(&net).to_json());
            match file {
                Some(path) => std::fs::write(&path, text).map_err(|e| {
                    AppError::input(
                        "OutputError",
                        format!("cannot write {}: {e}", path.display()),
                    )
                }),
                None => emit(out, &text),
            }
        }
        Command::Decompose { matrix, method } => {
            let net = read_document(&matrix)?.to_network()?;
            let sig = ops::decompose(&net, method)?;
            emit(out, &format!("{}\n", render_signature(&sig)))
        }
        Command::Analyze { sig } => emit(out, &canonical_json(&ops::analysis_report(&sig)?)),
        Command::Check { matrix } => {
            let net = read_document(&matrix)?.to_network()?;
            emit(out, &canonical_json(&ops::check_report(&net)))
        }
        Command::Canon { sig } => emit(out, &format!("{}\n", render_signature(&ops::parse(&sig)?))),
        Command::Relate { sig1, sig2 } => emit(out, &format!("{}\n", ops::relate(&sig1, &sig2)?)),
        Command::Random { nodes, kappa, seed } => {
            let sig = ops::random(nodes, kappa, seed)?;
            emit(out, &format!("{}\n", render_signature(&sig)))
        }
        Command::Premier {
            complete,
            self_loops,
            graph,
        } => {
            let (sig, net) = match (complete, graph) {
                (Some(n), _) => ops::premier_complete(n, self_loops)?,
                (None, Some(_)) if self_loops => {
                    return Err(AppError::input(
                        "InvalidArgument",
                        "--self-loops only applies together with --complete",
                    ))
                }
                (None, Some(path)) => ops::premier_graph(&read_document(&path)?)?,
                (None, None) => unreachable!("clap requires one support argument"),
            };
            emit(out, &format!("{}\n", render_signature(&sig)))?;
            emit(
                out,
                &canonical_json(&MatrixDocument::from_network(&net).to_json()),
            )
        }
        Command::Markov { matrix } => {
            let net = ops::markov(&read_document(&matrix)?)?;
            emit(
                out,
                &canonical_json(&MatrixDocument::from_network(&net).to_json()),
            )
        }
        Command::Serve { port, host } => {
            let runtime = tokio::runtime::Runtime::new().map_err(|e| {
                AppError::input("ServiceError", format!("cannot start runtime: {e}"))
            })?;
            runtime.block_on(service::serve(&host, port)).map_err(|e| {
                AppError::input(
                    "ServiceError",
                    format!("cannot serve on {host}:{port}: {e}"),
                )
            })
        }
    }
}
