use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use opcalc_cli::commands::{self, Grid, SeriesKind};
use opcalc_cli::error::{CliError, EXIT_OK, EXIT_USAGE};

/// Operational calculus: realize, verify and solve with s, l and h.
#[derive(Parser)]
#[command(name = "opcalc", version)]
struct Cli {
    /// Sampling grid `T,N`: N intervals on [0, T].
    #[arg(long, global = true, default_value = "10,1000")]
    grid: Grid,
    /// Pass threshold for `verify`.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Output file for CSV data (standard output when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Realize an expression and write its samples as CSV.
    Invert {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Check that two expressions denote the same element.
    Verify {
        #[arg(allow_hyphen_values = true)]
        lhs: String,
        #[arg(allow_hyphen_values = true)]
        rhs: String,
    },
    /// Solve a linear ODE or a delay equation.
    Solve {
        #[command(subcommand)]
        problem: SolveCommand,
    },
    /// Print the known coefficients of an expression as a series in l or h.
    Series {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Highest power kept before operators are applied.
        #[arg(long, default_value_t = 16)]
        order: usize,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

#[derive(Subcommand)]
enum SolveCommand {
    /// Σ a_k f^(k) = rhs with given initial values.
    Ode {
        /// a_0,...,a_n
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        /// f(0),...,f^(n-1)(0)
        #[arg(long, allow_hyphen_values = true)]
        init: String,
        /// Right-hand side as an expression in s.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        rhs: String,
    },
    /// x = forcing + c·h·x on [0, T].
    Delay {
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        /// Forcing as an expression in s.
        #[arg(long, allow_hyphen_values = true)]
        forcing: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    L,
    H,
}

fn write_output(
    out: Option<&Path>,
    f: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            f(&mut w)?;
            w.flush()?;
        }
        None => {
            let mut w = io::stdout().lock();
            f(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let out = cli.out.as_deref();
    match cli.command {
        Command::Invert { expr } => {
            let samples = commands::invert(&expr, cli.grid)?;
            write_output(out, |w| samples.write_csv(w))
        }
        Command::Verify { lhs, rhs } => {
            let report = commands::verify(&lhs, &rhs, cli.grid)?;
            let pass = report.deviation <= cli.tol;
            println!(
                "{} comparison: max deviation {:e}, tolerance {:e}: {}",
                report.method,
                report.deviation,
                cli.tol,
                if pass { "PASS" } else { "FAIL" }
            );
            if pass {
                Ok(())
            } else {
                Err(CliError::Mismatch {
                    deviation: report.deviation,
                    tol: cli.tol,
                })
            }
        }
        Command::Solve {
            problem: SolveCommand::Ode { coeffs, init, rhs },
        } => {
            let f = commands::solve_ode(&coeffs, &init, &rhs)?;
            println!("{}", f.real_form());
            if out.is_some() {
                let samples = commands::sample_fn(|t| f.eval(t), cli.grid)?;
                write_output(out, |w| samples.write_csv(w))?;
            }
            Ok(())
        }
        Command::Solve {
            problem: SolveCommand::Delay { c, forcing },
        } => {
            let x = commands::solve_delay(&c, &forcing, cli.grid.horizon)?;
            print!("{}", commands::piecewise_form(&x));
            if out.is_some() {
                let samples = commands::sample_fn(|t| x.eval(t), cli.grid)?;
                write_output(out, |w| samples.write_csv(w))?;
            }
            Ok(())
        }
        Command::Series { kind, order, expr } => {
            let kind = match kind {
                KindArg::L => SeriesKind::L,
                KindArg::H => SeriesKind::H,
            };
            let coeffs = commands::series(&expr, kind, order)?;
            write_output(out, |w| commands::write_series_table(&coeffs, w))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_USAGE as u8
            } else {
                EXIT_OK as u8
            });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("opcalc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
