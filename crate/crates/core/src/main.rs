use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use ringext::error::{Error, Result};
use ringext::{io, report};

#[derive(Parser)]
#[command(name = "ringext", version, about = "Exact analysis of finite-dimensional ring extensions")]
struct Cli {
    /// Emit the machine-readable JSON report.
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit the plain-text report (the default).
    #[arg(long, global = true)]
    text: bool,
    /// Seed for random modules and naturality samples; overrides the input file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions, verdicts, certificates, equivalences and normality.
    Analyze { input: PathBuf },
    /// Decide one property and print its certificate.
    Certify {
        #[arg(value_parser = report::KINDS)]
        kind: String,
        input: PathBuf,
    },
    /// Check the module isomorphisms on one module.
    Equivalence {
        input: PathBuf,
        #[arg(long)]
        module: String,
    },
    /// Normality of the centralizer, double centralizer, pre-braided commutativity.
    Normality { input: PathBuf },
    /// Hopf normality tests on the subgroups of a group.
    Hopf { group: PathBuf },
    /// Re-verify the certificates in a JSON report.
    Verify { report: PathBuf },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<io::Input> {
    io::parse_input(&read(path)?).map_err(|e| match e {
        Error::Input(m) => Error::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn seed_for(cli_seed: Option<u64>, input: &io::Input) -> u64 {
    cli_seed.or(input.spec.seed).unwrap_or(0)
}

fn run(cli: &Cli) -> Result<(Value, bool)> {
    let out = match &cli.command {
        Command::Analyze { input } => {
            let i = load(input)?;
            report::analyze(&i, seed_for(cli.seed, &i))?
        }
        Command::Certify { kind, input } => {
            let i = load(input)?;
            report::certify(&i, kind, seed_for(cli.seed, &i))?
        }
        Command::Equivalence { input, module } => {
            let i = load(input)?;
            report::equivalence(&i, module, seed_for(cli.seed, &i))?
        }
        Command::Normality { input } => {
            let i = load(input)?;
            report::normality(&i, seed_for(cli.seed, &i))?
        }
        Command::Hopf { group } => report::hopf(&io::parse_json(&read(group)?)?)?,
        Command::Verify { report: path } => {
            let v = report::verify(&io::parse_json(&read(path)?)?)?;
            let ok = v["all_verified"] == Value::Bool(true);
            return Ok((v, ok));
        }
    };
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((v, ok)) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            } else {
                print!("{}", report::render_text(&v));
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 1 } else { 2 })
        }
    }
}
