use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand};
use hlspec_cli::{
    cmd_analyze, cmd_enumerate, cmd_payne, cmd_simplex, exit_code, Filter, PolytopeDocument,
    SpectrumMethod,
};
use hlspec_core::{Error, WeightSystem};

#[derive(Parser)]
#[command(
    name = "hlspec",
    version,
    about = "Newton spectra and hard Lefschetz criteria for simplicial lattice polytopes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a polytope given as a JSON document {"dim": n, "vertices": [[...], ...]}.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = SpectrumMethod::Auto)]
        method: SpectrumMethod,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Analyze the simplex of a reduced weight system, e.g. --weights 1,2,2,3.
    Simplex {
        #[arg(long)]
        weights: String,
        #[arg(long, value_enum, default_value_t = SpectrumMethod::Auto)]
        method: SpectrumMethod,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify the reduced reflexive weight systems of a dimension.
    Enumerate {
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = Filter::All)]
        filter: Filter,
        /// Write the semicolon-separated table here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, action = ArgAction::Set, default_value_t = false)]
        parallel: bool,
    },
    /// The weight system (1, ..., 1, s) with s*k ones.
    Payne {
        #[arg(long)]
        s: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value_t = SpectrumMethod::Auto)]
        method: SpectrumMethod,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn io_error(path: &std::path::Path, e: std::io::Error) -> Error {
    Error::Validation(format!("{}: {e}", path.display()))
}

fn emit(text: String, file: Option<(PathBuf, String)>) -> Result<(), Error> {
    print!("{text}");
    if let Some((path, body)) = file {
        std::fs::write(&path, body).map_err(|e| io_error(&path, e))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Analyze { input, method, out } => {
            let text = std::fs::read_to_string(&input).map_err(|e| io_error(&input, e))?;
            let report = cmd_analyze(&PolytopeDocument::parse(&text)?, method)?;
            emit(report.to_text(), out.map(|p| (p, report.to_json())))
        }
        Command::Simplex {
            weights,
            method,
            out,
        } => {
            let w: WeightSystem = weights.parse()?;
            let report = cmd_simplex(&w, method)?;
            emit(report.to_text(), out.map(|p| (p, report.to_json())))
        }
        Command::Enumerate {
            dim,
            filter,
            out,
            parallel,
        } => {
            let table = cmd_enumerate(dim, filter, parallel)?;
            emit(table.to_text(), out.map(|p| (p, table.to_csv())))
        }
        Command::Payne { s, k, method, out } => {
            let report = cmd_payne(s, k, method)?;
            emit(report.to_text(), out.map(|p| (p, report.to_json())))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
