use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nilform_cli::commands::{self, failed_echo, max_dim_from_env};
use nilform_cli::{AuditTarget, CliError, Report, Settings};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "nilform",
    version,
    about = "Exact analysis of nil-invariant forms on Lie algebras"
)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
    /// Seed for the randomized gallery entries.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(clap::Args)]
struct Input {
    /// Document path, `-` for stdin, or `gallery://NAME`.
    #[arg(value_name = "INPUT", conflicts_with = "input")]
    positional: Option<String>,
    #[arg(long)]
    input: Option<String>,
}

impl Input {
    fn resolve(self) -> Result<String, CliError> {
        self.input.or(self.positional).ok_or_else(|| {
            CliError::Invalid("no input given; pass --input FILE|gallery://NAME".into())
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Signature, kernel, invariance grades and structural certificates.
    Analyze(Input),
    /// Orthogonal three-factor decomposition for an abelian radical.
    Decompose(Input),
    /// Audit a subalgebra against the graph-of-a-homomorphism shape.
    AuditStabilizer {
        #[command(flatten)]
        input: Input,
        /// Subspace to audit.
        #[arg(long, value_enum, default_value_t = Target::Annotation)]
        subalgebra: Target,
    },
    /// Exhaustive verification experiments.
    #[command(subcommand)]
    Verify(Verify),
    /// Emit a gallery document, or `list` the entries.
    Gallery { name: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Annotation,
    Radical,
    Levi,
}

#[derive(Subcommand)]
enum Verify {
    /// Nil-invariant forms on so(n) ⋉ R^n.
    Euclidean {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Include the solution bases.
        #[arg(long)]
        include_basis: bool,
    },
    /// Skew pairings of so(3) with its irreducible modules.
    SkewPairing {
        #[arg(long, value_delimiter = ',', default_values_t = [0usize, 1, 2, 3])]
        l: Vec<usize>,
        #[arg(long)]
        include_basis: bool,
    },
}

fn emit(output: Output, report: &Report) {
    match output {
        Output::Json => println!("{}", report.to_json()),
        Output::Text => print!("{}", report.to_text()),
    }
}

fn run(cli: Cli) -> Result<i32, (String, BTreeMap<String, Value>, CliError)> {
    let max_dim = max_dim_from_env(std::env::var("NILFORM_MAX_DIM").ok().as_deref())
        .map_err(|e| ("nilform".to_string(), BTreeMap::new(), e))?;
    let settings = Settings {
        seed: cli.seed,
        max_dim,
    };
    let fail = |name: &str, args: Value| {
        let name = name.to_string();
        let args = args
            .as_object()
            .map(|o| o.clone().into_iter().collect())
            .unwrap_or_default();
        move |e: CliError| (name, args, e)
    };
    let report = match cli.command {
        Command::Analyze(input) => {
            let input = input.resolve().map_err(fail("analyze", json!({})))?;
            commands::analyze(&input, settings).map_err(fail("analyze", json!({"input": input})))?
        }
        Command::Decompose(input) => {
            let input = input.resolve().map_err(fail("decompose", json!({})))?;
            commands::decompose(&input, settings)
                .map_err(fail("decompose", json!({"input": input})))?
        }
        Command::AuditStabilizer { input, subalgebra } => {
            let target = match subalgebra {
                Target::Annotation => AuditTarget::Annotation,
                Target::Radical => AuditTarget::Radical,
                Target::Levi => AuditTarget::Levi,
            };
            let input = input
                .resolve()
                .map_err(fail("audit-stabilizer", json!({})))?;
            commands::audit_stabilizer(&input, target, settings)
                .map_err(fail("audit-stabilizer", json!({"input": input})))?
        }
        Command::Verify(Verify::Euclidean { n, include_basis }) => {
            commands::verify_euclidean(&n, include_basis)
                .map_err(fail("verify euclidean", json!({"n": n})))?
        }
        Command::Verify(Verify::SkewPairing { l, include_basis }) => {
            commands::verify_skew_pairing(&l, include_basis)
                .map_err(fail("verify skew-pairing", json!({"l": l})))?
        }
        Command::Gallery { name } => {
            let fail = fail("gallery", json!({"name": name}));
            if name == "list" {
                let listing = commands::gallery_list();
                match cli.output {
                    Output::Json => {
                        println!("{}", serde_json::to_string_pretty(&listing).expect("json"))
                    }
                    Output::Text => {
                        for e in listing["entries"].as_array().into_iter().flatten() {
                            println!(
                                "{:<20} {} [{}]",
                                e["name"].as_str().unwrap_or_default(),
                                e["description"].as_str().unwrap_or_default(),
                                e["highlights"].as_str().unwrap_or_default()
                            );
                        }
                    }
                }
            } else {
                let doc = commands::gallery_document(&name, settings.seed).map_err(fail)?;
                println!("{}", doc.to_canonical_json());
            }
            return Ok(0);
        }
    };
    emit(cli.output, &report);
    Ok(report.exit_code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let output = cli.output;
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err((name, args, err)) => {
            eprintln!("error: {err}");
            let report = commands::error_report(failed_echo(&name, args), &err);
            emit(output, &report);
            ExitCode::from(report.exit_code as u8)
        }
    }
}
