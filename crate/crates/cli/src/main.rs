//! `doublet`: modular data, algebras and invariants of Drinfeld doubles of finite groups.

mod commands;
mod render;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use doublet_core::Error;

use render::{Format, OutputDocument, SCHEMA_VERSION};

#[derive(Debug, Parser)]
#[command(name = "doublet", version, about = "Modular data of Drinfeld doubles of finite groups")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Run the property checks on the produced objects and exit 1 on violation.
    #[arg(long, global = true)]
    verify: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simple objects (g, ψ) of Z(G).
    Simples { group: String },
    /// The S-matrix of Z(G).
    Smatrix { group: String },
    /// The T-matrix of Z(G).
    Tmatrix { group: String },
    /// Simple characters on commuting pairs.
    Characters { group: String },
    /// Isomorphism classes of indecomposable commutative separable algebras.
    Algebras { group: String },
    /// Modular invariants of Z(G)⊠Z(Q); Q defaults to G.
    Invariants { group: String, other: Option<String> },
    /// Left and right parents of every maximal algebra.
    Parents { group: String, other: String },
    /// Ribbon equivalences Z(G) ≃ Z(Q).
    Equivalences { group: String, other: String },
    /// The parent graph.
    Graph { group: String, other: String },
    /// Dijkgraaf-Witten invariant of a catalog manifold or `<n; words>` presentation.
    Dw { group: String, manifold: String },
    /// Run the property suite on Z(G).
    Verify { group: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Simples { .. } => "simples",
            Command::Smatrix { .. } => "smatrix",
            Command::Tmatrix { .. } => "tmatrix",
            Command::Characters { .. } => "characters",
            Command::Algebras { .. } => "algebras",
            Command::Invariants { .. } => "invariants",
            Command::Parents { .. } => "parents",
            Command::Equivalences { .. } => "equivalences",
            Command::Graph { .. } => "graph",
            Command::Dw { .. } => "dw",
            Command::Verify { .. } => "verify",
        }
    }
}

fn run(cmd: &Command, verify: bool) -> doublet_core::Result<commands::Outcome> {
    use commands::*;
    match cmd {
        Command::Simples { group: g } => simples(&group(g)?, verify),
        Command::Smatrix { group: g } => smatrix(&group(g)?, verify),
        Command::Tmatrix { group: g } => tmatrix(&group(g)?, verify),
        Command::Characters { group: g } => characters(&group(g)?, verify),
        Command::Algebras { group: g } => algebras(&group(g)?, verify),
        Command::Invariants { group: g, other } => {
            let left = group(g)?;
            let right = match other {
                Some(q) => group(q)?,
                None => left.clone(),
            };
            invariants(&left, &right, verify)
        }
        Command::Parents { group: g, other } => parents(&group(g)?, &group(other)?, verify),
        Command::Equivalences { group: g, other } => equivalences(&group(g)?, &group(other)?, verify),
        Command::Graph { group: g, other } => graph(&group(g)?, &group(other)?, verify),
        Command::Dw { group: g, manifold } => dw(&group(g)?, manifold, verify),
        Command::Verify { group: g } => verify_group(&group(g)?),
    }
}

/// Bad input is a usage error (2); anything else is an internal failure (1).
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::UnknownGroup(_) | Error::MalformedCycles(_) | Error::MalformedPresentation(_) | Error::CapExceeded { .. } => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = match run(&cli.command, cli.verify) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let text = match cli.format {
        Format::Json => {
            let doc = OutputDocument { schema_version: SCHEMA_VERSION, command: cli.command.name().into(), payload: outcome.rendered.payload };
            serde_json::to_string_pretty(&doc).expect("json values serialize") + "\n"
        }
        Format::Md => render::to_markdown(&outcome.rendered.tables),
        Format::Csv => match render::to_csv(&outcome.rendered.tables) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        },
    };
    print!("{text}");
    if outcome.violations.is_empty() {
        ExitCode::SUCCESS
    } else {
        for v in &outcome.violations {
            eprintln!("violation: {v}");
        }
        ExitCode::from(1)
    }
}
