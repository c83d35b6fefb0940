//! `gp`: a command-line calculator for graph products of finite monoids.
//!
//! Results go to stdout, diagnostics to stderr. Exit codes: 0 success or a
//! true answer, 1 a false answer, 2 certificate verification failure, 3
//! input error, 4 a state or search budget exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use gp_core::action::{enumerate_fk, ActionError, DEFAULT_STATE_LIMIT};
use gp_core::gp::GraphProductSpec;
use gp_core::instance::{
    certificate_from_doc, certificate_to_doc, format_normal_form, normal_form_blocks,
    parse_instance, parse_quotients, parse_word, CertificateDoc,
};
use gp_core::oracle::{closure_equal, ClosureConfig, OracleError};
use gp_core::separation::{
    separate_finite_with_limit, separate_pipeline_with_limit, verify_certificate, SeparationError,
};
use gp_core::Word;

#[derive(Parser)]
#[command(
    name = "gp",
    about = "Exact computation in graph products of finite monoids",
    version
)]
struct Cli {
    /// Output style: human-readable text or stable single-line JSON.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an instance file and report its shape.
    Check { instance: PathBuf },
    /// Print the canonical normal form of a word.
    Normalize { instance: PathBuf, word: String },
    /// Decide whether two words present the same element (exit 0/1).
    Equal {
        instance: PathBuf,
        left: String,
        right: String,
    },
    /// Print the block length of a word.
    Blocklen { instance: PathBuf, word: String },
    /// Print the normal form of the product of two words.
    Mul {
        instance: PathBuf,
        left: String,
        right: String,
    },
    /// List all elements of block length at most k, in canonical order.
    Enumerate {
        instance: PathBuf,
        #[arg(long)]
        k: usize,
        /// Abort cleanly if more states than this would be enumerated.
        #[arg(long, default_value_t = DEFAULT_STATE_LIMIT)]
        limit: usize,
    },
    /// Produce a separation certificate for two distinct elements.
    Separate {
        instance: PathBuf,
        left: String,
        right: String,
        /// Quotient document: per-vertex finite quotients to apply first.
        #[arg(long)]
        quotients: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_STATE_LIMIT)]
        limit: usize,
        /// Also write the certificate document to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a certificate from scratch (exit 0 valid, 2 invalid).
    Verify {
        instance: PathBuf,
        certificate: PathBuf,
    },
    /// Decide word equality with the brute-force closure oracle.
    #[command(name = "oracle-equal")]
    OracleEqual {
        instance: PathBuf,
        left: String,
        right: String,
        /// Longest intermediate word the closure may visit.
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long, default_value_t = 4_000_000)]
        max_visited: usize,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }

    fn budget(message: impl Into<String>) -> Self {
        Failure {
            code: 4,
            message: message.into(),
        }
    }
}

impl From<gp_core::instance::InstanceError> for Failure {
    fn from(err: gp_core::instance::InstanceError) -> Self {
        Failure::input(err.to_string())
    }
}

impl From<gp_core::gp::GpError> for Failure {
    fn from(err: gp_core::gp::GpError) -> Self {
        Failure::input(err.to_string())
    }
}

impl From<ActionError> for Failure {
    fn from(err: ActionError) -> Self {
        match err {
            ActionError::StateLimitExceeded { .. } => Failure::budget(err.to_string()),
            _ => Failure::input(err.to_string()),
        }
    }
}

impl From<SeparationError> for Failure {
    fn from(err: SeparationError) -> Self {
        match err {
            SeparationError::Action(ActionError::StateLimitExceeded { .. }) => {
                Failure::budget(err.to_string())
            }
            _ => Failure::input(err.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(err: OracleError) -> Self {
        match err {
            OracleError::BudgetExceeded { .. } => Failure::budget(err.to_string()),
            _ => Failure::input(err.to_string()),
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|err| Failure::input(format!("cannot read {}: {err}", path.display())))
}

fn load_instance(path: &Path) -> Result<GraphProductSpec, Failure> {
    Ok(parse_instance(&read_file(path)?)?)
}

// A word argument is either the token string itself or `@path` naming a
// file that holds it.
fn word_arg(spec: &GraphProductSpec, arg: &str) -> Result<Word, Failure> {
    let text = match arg.strip_prefix('@') {
        Some(path) => read_file(Path::new(path))?,
        None => arg.to_string(),
    };
    Ok(parse_word(spec, &text)?)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help and version are successful outputs, not input errors
            let code = if err.use_stderr() { 3 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let machine = cli.format == Format::Machine;
    match &cli.command {
        Command::Check { instance } => {
            let spec = load_instance(instance)?;
            let sizes: Vec<usize> = spec.monoids().iter().map(|m| m.size()).collect();
            let edges = spec.graph().edges().len();
            if machine {
                println!(
                    "{}",
                    json!({
                        "ok": true,
                        "vertices": spec.vertex_count(),
                        "edges": edges,
                        "monoid_sizes": sizes,
                        "spec_hash": spec.content_hash(),
                    })
                );
            } else {
                println!(
                    "ok: {} vertices, {} edges; monoid sizes {:?}; hash {}",
                    spec.vertex_count(),
                    edges,
                    sizes,
                    spec.content_hash()
                );
            }
            Ok(0)
        }
        Command::Normalize { instance, word } => {
            let spec = load_instance(instance)?;
            let element = spec.element_of(&word_arg(&spec, word)?)?;
            print_normal_form(&spec, element.normal_form(), machine);
            Ok(0)
        }
        Command::Equal {
            instance,
            left,
            right,
        } => {
            let spec = load_instance(instance)?;
            let u = spec.element_of(&word_arg(&spec, left)?)?;
            let v = spec.element_of(&word_arg(&spec, right)?)?;
            print_bool("equal", u == v, machine);
            Ok(if u == v { 0 } else { 1 })
        }
        Command::Blocklen { instance, word } => {
            let spec = load_instance(instance)?;
            let element = spec.element_of(&word_arg(&spec, word)?)?;
            if machine {
                println!("{}", json!({ "block_length": element.block_length() }));
            } else {
                println!("{}", element.block_length());
            }
            Ok(0)
        }
        Command::Mul {
            instance,
            left,
            right,
        } => {
            let spec = load_instance(instance)?;
            let u = spec.element_of(&word_arg(&spec, left)?)?;
            let v = spec.element_of(&word_arg(&spec, right)?)?;
            let product = u.multiply(&v)?;
            print_normal_form(&spec, product.normal_form(), machine);
            Ok(0)
        }
        Command::Enumerate { instance, k, limit } => {
            if *k == 0 {
                return Err(Failure::input("--k must be at least 1"));
            }
            if *limit == 0 {
                return Err(Failure::input("--limit must be at least 1"));
            }
            let spec = load_instance(instance)?;
            let table = enumerate_fk(&spec, *k, *limit)?;
            if machine {
                let states: Vec<_> = table
                    .states()
                    .iter()
                    .map(|nf| normal_form_blocks(&spec, nf))
                    .collect();
                println!(
                    "{}",
                    json!({ "k": k, "count": table.len(), "states": states })
                );
            } else {
                for nf in table.states() {
                    println!("{}", format_normal_form(&spec, nf));
                }
            }
            Ok(0)
        }
        Command::Separate {
            instance,
            left,
            right,
            quotients,
            limit,
            out,
        } => {
            if *limit == 0 {
                return Err(Failure::input("--limit must be at least 1"));
            }
            let spec = load_instance(instance)?;
            let u = spec.element_of(&word_arg(&spec, left)?)?;
            let v = spec.element_of(&word_arg(&spec, right)?)?;
            let cert = match quotients {
                None => separate_finite_with_limit(&spec, &u, &v, *limit)?,
                Some(path) => {
                    let maps = parse_quotients(&spec, &read_file(path)?)?;
                    separate_pipeline_with_limit(&spec, &u, &v, maps, *limit)?
                }
            };
            let doc = certificate_to_doc(&cert);
            let pretty = serde_json::to_string_pretty(&doc).expect("documents serialize");
            if let Some(path) = out {
                fs::write(path, format!("{pretty}\n")).map_err(|err| {
                    Failure::input(format!("cannot write {}: {err}", path.display()))
                })?;
            }
            if machine {
                println!(
                    "{}",
                    serde_json::to_string(&doc).expect("documents serialize")
                );
            } else {
                println!("{pretty}");
            }
            Ok(0)
        }
        Command::Verify {
            instance,
            certificate,
        } => {
            let spec = load_instance(instance)?;
            let doc: CertificateDoc = serde_json::from_str(&read_file(certificate)?)
                .map_err(|err| Failure::input(format!("bad certificate document: {err}")))?;
            // a document that does not resolve against this instance is an
            // invalid certificate, not an input error
            let valid = match certificate_from_doc(&spec, &doc) {
                Ok(cert) => verify_certificate(&spec, &cert),
                Err(_) => false,
            };
            print_bool("valid", valid, machine);
            if !machine && !valid {
                eprintln!("certificate does not verify against this instance");
            }
            Ok(if valid { 0 } else { 2 })
        }
        Command::OracleEqual {
            instance,
            left,
            right,
            max_len,
            max_visited,
        } => {
            if *max_len == 0 || *max_visited == 0 {
                return Err(Failure::input(
                    "--max-len and --max-visited must be positive",
                ));
            }
            let spec = load_instance(instance)?;
            let u = word_arg(&spec, left)?;
            let v = word_arg(&spec, right)?;
            let config = ClosureConfig::new(*max_len, *max_visited);
            let equal = closure_equal(&spec, &u, &v, &config)?;
            print_bool("equal", equal, machine);
            Ok(if equal { 0 } else { 1 })
        }
    }
}

fn print_normal_form(spec: &GraphProductSpec, nf: &gp_core::NormalForm, machine: bool) {
    if machine {
        println!("{}", json!({ "blocks": normal_form_blocks(spec, nf) }));
    } else {
        println!("{}", format_normal_form(spec, nf));
    }
}

fn print_bool(key: &str, value: bool, machine: bool) {
    if machine {
        println!("{}", json!({ key: value }));
    } else {
        println!("{value}");
    }
}
