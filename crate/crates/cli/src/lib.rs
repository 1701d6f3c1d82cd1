//! Command-line front end: argument parsing, configuration and output for
//! the `sigbkg` binary. [`run`] is the whole program minus process exit.

pub mod args;
pub mod commands;
pub mod format;
pub mod settings;
pub mod table;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command, Format};
use table::Table;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Numeric(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Numeric(_) => EXIT_NUMERIC,
            Failure::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Numeric(m) | Failure::Io(m) => m,
        }
    }
}

impl From<sigbkg::Error> for Failure {
    fn from(e: sigbkg::Error) -> Self {
        match e {
            sigbkg::Error::Domain(_) | sigbkg::Error::Config(_) => Failure::Usage(e.to_string()),
            sigbkg::Error::Convergence(_) | sigbkg::Error::Internal(_) => Failure::Numeric(e.to_string()),
        }
    }
}

/// Parse `argv` (including the program name), run the command, and return
/// the exit status. Results go to `stdout` unless `--out` is given.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(stderr, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "sigbkg: {}", f.message());
            f.code()
        }
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), Failure> {
    let cfg = settings::resolve(cli.output.config.as_deref(), &cli.numeric)?;
    let table = dispatch(&cli.command, &cfg)?;
    match &cli.output.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| Failure::Io(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            emit(&table, cli.output.format, &mut w).and_then(|_| w.flush())
        }
        None => emit(&table, cli.output.format, stdout),
    }
    .map_err(|e| Failure::Io(e.to_string()))
}

fn emit(table: &Table, format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Text => table.write_text(out),
        Format::Csv => table.write_csv(out),
    }
}

fn dispatch(command: &Command, cfg: &sigbkg::NumericConfig) -> Result<Table, Failure> {
    let table = match command {
        Command::Estimate { b, n, alpha } => commands::estimate(*b, *n, *alpha)?,
        Command::Interval { method, b, n, level } => commands::interval(method, *b, n, *level, cfg)?,
        Command::Coverage { method, b, theta, level } => commands::coverage(method, *b, theta, *level, cfg)?,
        Command::Mse { estimator, b, theta, alpha } => commands::mse(estimator, *b, theta, *alpha, cfg)?,
        Command::RiskCond { b, n } => commands::risk_cond(*b, n)?,
        Command::Type1 { b, n0, theta } => commands::type1(*b, n0, *theta, cfg)?,
        Command::Table1 { level, rows } => commands::table1(*level, rows, cfg)?,
        Command::Table2 { level, b } => commands::table2(*level, b, cfg)?,
        Command::FigData { which, b, method, level } => commands::fig_data(*which, *b, method, *level, cfg)?,
    };
    Ok(table)
}
