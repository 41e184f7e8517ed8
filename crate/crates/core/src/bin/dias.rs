use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dias::cli::{run_path, Command};

/// Exact computations with dialgebras, crossed modules and their actors.
#[derive(Parser)]
#[command(name = "dias", version)]
struct Args {
    #[command(subcommand)]
    command: Cmd,

    /// Write the JSON report to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Scalar field: "rational" or "mod-P"; overrides the file and DIAS_SCALARS.
    #[arg(long, global = true)]
    scalars: Option<String>,

    /// Format of the report printed on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Axiom, action, crossed-module and action-data checks.
    Check {
        file: PathBuf,
        #[arg(long)]
        object: Option<String>,
    },
    /// A basis of Tetra(L), Tetra(D,L) or Tetra(L,D,mu).
    Tetra {
        file: PathBuf,
        #[arg(long, value_parser = ["L", "DL", "XMOD"])]
        space: String,
        #[arg(long)]
        object: String,
    },
    /// The candidate actor and the canonical morphism into it.
    Actor {
        file: PathBuf,
        #[arg(long)]
        xmod: String,
    },
    /// The center of a crossed module.
    Center {
        file: PathBuf,
        #[arg(long)]
        xmod: String,
    },
    /// The semidirect product crossed module of action data.
    Semidirect {
        file: PathBuf,
        #[arg(long)]
        data: String,
    },
    /// Compares the center with the kernel of the canonical morphism.
    VerifyCenter {
        file: PathBuf,
        #[arg(long)]
        xmod: String,
    },
    /// Which of CON1 to CON4 hold.
    Conditions {
        file: PathBuf,
        #[arg(long)]
        xmod: String,
    },
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (command, file) = match args.command {
        Cmd::Check { file, object } => (Command::Check { object }, file),
        Cmd::Tetra { file, space, object } => (Command::Tetra { space, object }, file),
        Cmd::Actor { file, xmod } => (Command::Actor { xmod }, file),
        Cmd::Center { file, xmod } => (Command::Center { xmod }, file),
        Cmd::Semidirect { file, data } => (Command::Semidirect { data }, file),
        Cmd::VerifyCenter { file, xmod } => (Command::VerifyCenter { xmod }, file),
        Cmd::Conditions { file, xmod } => (Command::Conditions { xmod }, file),
    };
    let report = run_path(&command, &file, args.scalars.as_deref());
    if let Some(path) = &args.out {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("{}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    match args.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => print!("{}", report.to_json()),
    }
    ExitCode::from(report.exit_code() as u8)
}
