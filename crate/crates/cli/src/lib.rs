//! Front end for `.gman` models.
//!
//! [`run`] takes the full argument vector (program name first) and returns
//! the rendered output with a status; `main` only prints and exits.

mod commands;
mod emit;

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use gman_core::parse::{parse_source, Model};
use gman_core::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violated,
    Indeterminate,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violated => 1,
            Status::Error => 2,
            Status::Indeterminate => 3,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ok => "ok",
            Status::Violated => "violated",
            Status::Indeterminate => "indeterminate",
            Status::Error => "error",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutcome {
    pub status: Status,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    fn error(message: impl fmt::Display) -> Self {
        CommandOutcome {
            status: Status::Error,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Accumulates report lines; the final status line is appended by [`Report::finish`].
#[derive(Default)]
struct Report {
    out: String,
}

impl Report {
    fn line(&mut self, s: impl AsRef<str>) {
        self.out.push_str(s.as_ref());
        self.out.push('\n');
    }

    fn finish(mut self, status: Status) -> CommandOutcome {
        self.line(format!("status: {status}"));
        CommandOutcome {
            status,
            stdout: self.out,
            stderr: String::new(),
        }
    }

    /// Raw output without a status line (LaTeX and JSON emission).
    fn finish_raw(self, status: Status) -> CommandOutcome {
        CommandOutcome {
            status,
            stdout: self.out,
            stderr: String::new(),
        }
    }
}

/// Maps kernel errors onto statuses: unverifiable certificates are
/// indeterminate, a failing master equation is a violation, the rest are
/// input errors.
fn from_error(e: Error) -> CommandOutcome {
    let status = match e {
        Error::NondegeneracyUnverified(_) => Status::Indeterminate,
        Error::MasterEquationFails(_) => Status::Violated,
        _ => Status::Error,
    };
    CommandOutcome {
        status,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

#[derive(Parser, Debug)]
#[command(name = "gman", version, about = "Checks graded-geometry models written in the .gman format")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Structure {
    Lie,
    Algebroid,
    Linfty,
    Poisson,
    Courant,
    Gcs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Text,
    Latex,
    JsonTerms,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Checks {S, S} = 0 for a function S and a symplectic form.
    CheckMaster {
        file: PathBuf,
        #[arg(long, default_value = "S")]
        s: String,
        #[arg(long, default_value = "omega")]
        omega: String,
    },
    /// Verifies the structure declared in the file through its Q-manifold encoding.
    Verify {
        structure: Structure,
        file: PathBuf,
        /// Vector field binding used by `linfty`.
        #[arg(long, default_value = "Q")]
        field: String,
        /// Degree-2 function used by `gcs`.
        #[arg(long, default_value = "J")]
        j: String,
    },
    /// Reduces a Poisson structure, or a symplectic form, along coordinate constraints.
    Reduce {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        constrain: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        distribution: Vec<String>,
        #[arg(long, default_value_t = 3)]
        degree_bound: u32,
        #[arg(long, default_value = "omega")]
        omega: String,
    },
    /// Expands the AKSZ action for the source T[1]Σ.
    Aksz {
        file: PathBuf,
        #[arg(long)]
        source_dim: usize,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
        #[arg(long, default_value = "S")]
        s: String,
        #[arg(long, default_value = "omega")]
        omega: String,
    },
    /// Computes {f, g}.
    Bracket {
        file: PathBuf,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "omega")]
        omega: String,
    },
}

fn load(path: &Path) -> Result<Model, CommandOutcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CommandOutcome::error(format!("{}: {e}", path.display())))?;
    parse_source(&text).map_err(|d| CommandOutcome {
        status: Status::Error,
        stdout: String::new(),
        stderr: format!("{}:{d}\n", path.display()),
    })
}

pub fn run<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => CommandOutcome {
                    status: Status::Ok,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => CommandOutcome {
                    status: Status::Error,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let result = match cli.command {
        Command::CheckMaster { file, s, omega } => {
            load(&file).and_then(|m| commands::check_master(&m, &s, &omega))
        }
        Command::Verify { structure, file, field, j } => load(&file).and_then(|m| match structure {
            Structure::Lie => commands::verify_lie(&m),
            Structure::Algebroid => commands::verify_algebroid(&m),
            Structure::Linfty => commands::verify_linfty(&m, &field),
            Structure::Poisson => commands::verify_poisson(&m),
            Structure::Courant => commands::verify_courant(&m),
            Structure::Gcs => commands::verify_gcs(&m, &j),
        }),
        Command::Reduce { file, constrain, distribution, degree_bound, omega } => {
            load(&file).and_then(|m| commands::reduce(&m, &constrain, &distribution, degree_bound, &omega))
        }
        Command::Aksz { file, source_dim, emit, s, omega } => {
            load(&file).and_then(|m| commands::aksz(&m, source_dim, emit, &s, &omega))
        }
        Command::Bracket { file, f, g, omega } => load(&file).and_then(|m| commands::bracket(&m, &f, &g, &omega)),
    };
    result.unwrap_or_else(|e| e)
}
