use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use zariski_core::lattice::DEFAULT_ISOTROPIC_BOUND;
use zariski_core::Execution;

mod commands;

use commands::{CensusArgs, CommandResult, Status};

/// Zariski chambers, Weyl chambers and Enriques fibration arithmetic.
///
/// Models are builtin catalog names (see `zariski catalog`) or JSON files.
#[derive(Parser)]
#[command(name = "zariski", version)]
struct Cli {
    /// Print only the JSON payload.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List builtin models.
    Catalog,
    /// Print a model with its signature and invariant violations.
    Show { model: String },
    /// Zariski decomposition of a class given as comma-separated rationals.
    Decompose {
        model: String,
        #[arg(allow_hyphen_values = true)]
        coefficients: String,
    },
    /// Whether Zariski chambers are determined by the Weyl chambers.
    Criterion { model: String },
    /// Build D1, D2 in one Zariski chamber but different Weyl chambers.
    Counterexample {
        model: String,
        c1: String,
        c2: String,
    },
    /// Seeded sample of big classes grouped by Zariski and Weyl chamber.
    Census {
        model: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Evaluate the counterexample divisors of `C1,C2` first.
        #[arg(long, value_name = "C1,C2")]
        inject: Option<String>,
        /// Include every sample in the payload.
        #[arg(long)]
        samples: bool,
        #[arg(long)]
        sequential: bool,
    },
    /// Component and Picard-number arithmetic of one declared fibration.
    EnriquesCheck {
        file: String,
        /// Require the Euler numbers to sum to 12.
        #[arg(long)]
        strict: bool,
    },
    /// Lattice utilities; the default form is E8(-1) + U.
    Lattice {
        #[command(subcommand)]
        op: LatticeOp,
        /// Gram matrix as JSON, e.g. [[0,1],[1,0]].
        #[arg(long, global = true)]
        gram: Option<String>,
        /// Use the form of this model.
        #[arg(long, global = true, conflicts_with = "gram")]
        model: Option<String>,
    },
}

#[derive(Subcommand)]
enum LatticeOp {
    Signature,
    /// Saturated basis of the orthogonal complement.
    Complement {
        /// Vectors as a JSON array of arrays.
        #[arg(long)]
        vectors: String,
    },
    /// First primitive isotropic vector in a coordinate box.
    Isotropic {
        #[arg(long, default_value_t = DEFAULT_ISOTROPIC_BOUND)]
        bound: u32,
    },
}

fn run(cli: &Cli) -> CommandResult {
    match &cli.command {
        Command::Catalog => commands::cmd_catalog(),
        Command::Show { model } => commands::cmd_show(model),
        Command::Decompose {
            model,
            coefficients,
        } => commands::cmd_decompose(model, coefficients),
        Command::Criterion { model } => commands::cmd_criterion(model),
        Command::Counterexample { model, c1, c2 } => commands::cmd_counterexample(model, c1, c2),
        Command::Census {
            model,
            n,
            seed,
            inject,
            samples,
            sequential,
        } => {
            let inject = match inject.as_deref().map(|s| s.split_once(',')) {
                None => None,
                Some(Some((a, b))) => Some((a.trim(), b.trim())),
                Some(None) => {
                    return usage("--inject expects two curve names separated by a comma");
                }
            };
            commands::cmd_census(&CensusArgs {
                model,
                n: *n,
                seed: *seed,
                inject,
                include_samples: *samples,
                execution: if *sequential {
                    Execution::Sequential
                } else {
                    Execution::Parallel
                },
            })
        }
        Command::EnriquesCheck { file, strict } => commands::cmd_enriques_check(file, *strict),
        Command::Lattice { op, gram, model } => {
            let form = match commands::resolve_form(gram.as_deref(), model.as_deref()) {
                Ok(f) => f,
                Err(e) => return e,
            };
            match op {
                LatticeOp::Signature => commands::cmd_lattice_signature(&form),
                LatticeOp::Complement { vectors } => {
                    commands::cmd_lattice_complement(&form, vectors)
                }
                LatticeOp::Isotropic { bound } => commands::cmd_lattice_isotropic(&form, *bound),
            }
        }
    }
}

fn usage(message: &str) -> CommandResult {
    CommandResult {
        status: Status::UsageError,
        payload: serde_json::json!({ "status": "error", "error": { "kind": "usage", "message": message } }),
        human_text: format!("error: {message}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli);
    let payload = serde_json::to_string_pretty(&result.payload).expect("json");
    let ok = result.status == Status::Ok;
    if !ok {
        eprintln!("{}", result.human_text);
    }
    let mut out = io::stdout().lock();
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = if cli.json || !ok {
        writeln!(out, "{payload}")
    } else {
        write!(out, "{}", result.human_text).and_then(|_| writeln!(out, "{payload}"))
    };
    ExitCode::from(result.status.exit_code() as u8)
}
