use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mulquad::schema::ErrorDoc;
use mulquad::CheckConfig;

mod commands;

use commands::{Failure, Outcome};

#[derive(Parser, Debug)]
#[command(name = "mulquad", version, about = "Verify, classify and decompose multiplicative quadratic maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Where to write the report (stdout when omitted).
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest number of tuples scanned exhaustively before sampling.
    #[arg(long, global = true, default_value_t = 1 << 24)]
    exhaustive_bound: u64,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of samples drawn when a scan exceeds the exhaustive bound.
    #[arg(long, global = true, default_value_t = 100_000)]
    samples: u64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct InputArg {
    /// A path, inline JSON, or "-" for stdin.
    #[arg(long)]
    pub input: String,
}

#[derive(Args, Debug, Clone)]
pub struct FieldPair {
    /// Domain field, e.g. F4 or GF9.
    #[arg(long = "K")]
    pub k: String,
    /// Codomain field.
    #[arg(long = "L")]
    pub l: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the axioms and the form identities of a map document.
    Verify(InputArg),
    /// Run the classification pipeline on a map between finite fields.
    Classify(InputArg),
    /// Decompose a map into two homomorphisms, or check a supplied decomposition.
    Decompose(InputArg),
    /// List every multiplicative quadratic map K -> L with its classification.
    Enumerate(FieldPair),
    /// Linear independence of a list of homomorphisms.
    Artin(InputArg),
    /// Symmetrized sum of a list of homomorphisms: value at given arguments and vanishing.
    Symsum(InputArg),
    /// Compare two products of homomorphisms and certify the dichotomy.
    Thm14(InputArg),
    /// Certify the dichotomy for every pair of homomorphism tuples up to the given lengths.
    Scan {
        #[command(flatten)]
        fields: FieldPair,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long, default_value_t = 3)]
        m_max: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Verify(_) => "verify",
            Command::Classify(_) => "classify",
            Command::Decompose(_) => "decompose",
            Command::Enumerate(_) => "enumerate",
            Command::Artin(_) => "artin",
            Command::Symsum(_) => "symsum",
            Command::Thm14(_) => "thm14",
            Command::Scan { .. } => "scan",
        }
    }
}

fn read_input(arg: &str) -> Result<String, Failure> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    let mut s = String::new();
    if arg == "-" {
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::io(format!("stdin: {e}")))?;
    } else {
        s = std::fs::read_to_string(arg).map_err(|e| Failure::io(format!("{arg}: {e}")))?;
    }
    Ok(s)
}

fn dispatch(cmd: &Command, cfg: &CheckConfig) -> Result<Outcome, Failure> {
    match cmd {
        Command::Verify(a) => commands::verify(&read_input(&a.input)?, cfg),
        Command::Classify(a) => commands::classify(&read_input(&a.input)?, cfg),
        Command::Decompose(a) => commands::decompose(&read_input(&a.input)?, cfg),
        Command::Enumerate(f) => commands::enumerate(&f.k, &f.l, cfg),
        Command::Artin(a) => commands::artin(&read_input(&a.input)?),
        Command::Symsum(a) => commands::symsum(&read_input(&a.input)?),
        Command::Thm14(a) => commands::thm14(&read_input(&a.input)?),
        Command::Scan { fields, n_max, m_max } => commands::scan(&fields.k, &fields.l, *n_max, *m_max),
    }
}

fn emit(common: &Common, text: &str) -> std::io::Result<()> {
    match &common.output {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = &cli.common;
    let cfg = CheckConfig {
        exhaustive_bound: common.exhaustive_bound,
        samples: common.samples,
        seed: common.seed,
        allow_sampling: true,
    };
    let name = cli.command.name();
    let (text, code) = match dispatch(&cli.command, &cfg) {
        Ok(outcome) => {
            let code = if outcome.ok { 0 } else { 1 };
            let text = match common.format {
                Format::Json => outcome.json(name),
                Format::Text => outcome.text(name),
            };
            (text, code)
        }
        Err(f) => {
            eprintln!("mulquad {name}: {}", f.message);
            let doc = ErrorDoc::new(name, &f.kind, f.message.clone());
            let text = match common.format {
                Format::Json => serde_json::to_string_pretty(&doc).expect("serializable") + "\n",
                Format::Text => format!("{name}: error ({}): {}\n", f.kind, f.message),
            };
            (text, 2)
        }
    };
    if let Err(e) = emit(common, &text) {
        eprintln!("mulquad {name}: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
