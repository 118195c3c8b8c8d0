use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use ellfm_cli::commands::{self, FmOptions, ModuliInput, Output};
use ellfm_cli::{ChargeDocument, EXIT_IDENTITY, EXIT_INPUT};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ellfm", version, about = "Exact Fourier-Mukai calculus on elliptic Calabi-Yau charge lattices")]
struct Cli {
    /// Model registry to use instead of the built-in one.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect the registered models.
    Model {
        #[command(subcommand)]
        action: ModelAction,
    },
    /// Apply the fibrewise transform to a charge document.
    Fm {
        /// Registered model or geometry providing the base surface.
        #[arg(long)]
        model: Option<String>,
        #[arg(long, value_enum)]
        direction: FmDirection,
        /// A JSON document: a file path, `-` for standard input, or inline JSON.
        #[arg(long)]
        charge: String,
        /// Also report twisted charges of input and output.
        #[arg(long)]
        twisted_charge: bool,
        /// Recompute through the kernel on the fibre square and compare.
        #[arg(long)]
        oracle: bool,
        /// Check the M relations for the input (requires x = 0).
        #[arg(long)]
        verify_m: bool,
    },
    /// Run verification suites.
    Verify {
        /// `all` or a suite name.
        suite: String,
    },
    /// Moduli dimension of a charge.
    #[command(group(ArgGroup::new("input").required(true).args(["bps", "fmw"])))]
    Moduli {
        #[arg(long, default_value = "deg18")]
        model: String,
        /// BPS vector `n6,n4^1,n4^2,n0,n2^1,n2^2`.
        #[arg(long, allow_hyphen_values = true)]
        bps: Option<String>,
        /// Rank-n spectral bundle with η = a·c1, as `n,a`.
        #[arg(long, allow_hyphen_values = true)]
        fmw: Option<String>,
    },
}

#[derive(Subcommand)]
enum ModelAction {
    /// List model names.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Print a model's intersection numbers, matrices and dictionary.
    Show {
        name: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FmDirection {
    Forward,
    Inverse,
}

fn read_document(arg: &str) -> ellfm::Result<ChargeDocument> {
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| ellfm::Error::Parse(format!("reading standard input: {e}")))?;
        s
    } else if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(Path::new(arg)).map_err(|e| ellfm::Error::Parse(format!("reading {arg}: {e}")))?
    };
    ChargeDocument::parse(&text)
}

fn run(cli: Cli) -> ellfm::Result<Output> {
    let reg = commands::load_registry(cli.config.as_deref())?;
    match cli.command {
        Command::Model { action: ModelAction::List { json } } => Ok(commands::model_list(&reg, json)),
        Command::Model { action: ModelAction::Show { name, json } } => commands::model_show(&reg, &name, json),
        Command::Fm { model, direction, charge, twisted_charge, oracle, verify_m } => {
            let doc = read_document(&charge)?;
            let opts = FmOptions {
                model,
                forward: matches!(direction, FmDirection::Forward),
                twisted_charge,
                oracle,
                verify_m,
            };
            commands::fm(&reg, &doc, &opts)
        }
        Command::Verify { suite } => commands::verify(&reg, &suite),
        Command::Moduli { model, bps, fmw } => {
            let input = match (bps, fmw) {
                (Some(b), _) => ModuliInput::Bps(b),
                (None, Some(f)) => ModuliInput::Fmw(f),
                (None, None) => unreachable!("clap requires one of --bps and --fmw"),
            };
            commands::moduli(&reg, &model, &input)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout(), "{}", out.stdout);
            match out.failure {
                Some(message) => {
                    eprintln!("error: {message}");
                    ExitCode::from(EXIT_IDENTITY)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
