//! `qutrit-kak` command-line front end.
//!
//! Exit codes: 0 ok, 1 row failure or no feasible point, 2 I/O, 3 invalid
//! input or range, 4 non-unitary input.

mod commands;
mod exit;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qutrit_kak::gates::{GateFamily, GateName};
use qutrit_kak::solver::DEFAULT_SEED;

use exit::CliError;

/// Parses an angle given in units of π: `0.5`, `2/3`, `-1/4`.
fn pi_units(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let v = match s.split_once('/') {
        Some((n, d)) => {
            let n: f64 = n
                .trim()
                .parse()
                .map_err(|e| format!("bad numerator in {s:?}: {e}"))?;
            let d: f64 = d
                .trim()
                .parse()
                .map_err(|e| format!("bad denominator in {s:?}: {e}"))?;
            if d == 0.0 {
                return Err(format!("zero denominator in {s:?}"));
            }
            n / d
        }
        None => s.parse().map_err(|e| format!("bad number {s:?}: {e}"))?,
    };
    if !v.is_finite() {
        return Err(format!("{s:?} is not finite"));
    }
    Ok(v * std::f64::consts::PI)
}

#[derive(Parser, Debug)]
#[command(
    name = "qutrit-kak",
    version,
    about = "Minimum-time hard-pulse sequences for spin-1 qutrit gates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate every tabulated solution on the θ = kπ/12 grid and write them as CSV.
    Tables {
        #[arg(long, default_value = "tables.csv")]
        out: PathBuf,
        /// Validate rows from a JSON file instead of the built-in table.
        #[arg(long)]
        rows_file: Option<PathBuf>,
    },
    /// Write the closed-form minimum-time curve of a rotation family.
    Curve {
        #[arg(long)]
        family: GateFamily,
        /// Global phase, in units of π.
        #[arg(long, value_parser = pi_units)]
        phi: f64,
        /// In units of π.
        #[arg(long, value_parser = pi_units, default_value = "0")]
        theta_min: f64,
        /// In units of π.
        #[arg(long, value_parser = pi_units, default_value = "1")]
        theta_max: f64,
        #[arg(long, default_value_t = 101)]
        points: usize,
        #[arg(long, default_value = "curve.csv")]
        out: PathBuf,
    },
    /// Search numerically for the minimum time of a gate.
    Solve(SolveArgs),
    /// Compile a gate into a pulse program and sweep the pulse amplitude.
    Compile(CompileArgs),
}

#[derive(Args, Debug)]
struct SolverFlags {
    /// Step of the (t1, t2) scan, in units of π.
    #[arg(long, value_parser = pi_units, default_value = "1/60")]
    grid_step: f64,
    /// Random restarts of the angle fit.
    #[arg(long, default_value_t = 12)]
    restarts: usize,
    #[arg(long, env = "QUTRIT_KAK_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    residual_tol: f64,
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Named gate (Rx12, Ry12, Rx23, Ry23, Rx13, Ry13, QFT).
    #[arg(long, required_unless_present = "matrix", conflicts_with = "matrix")]
    gate: Option<GateName>,
    /// Rotation angle, in units of π.
    #[arg(long, value_parser = pi_units, default_value = "0")]
    theta: f64,
    /// 3×3 unitary as JSON `{"real": [[..]], "imag": [[..]]}`.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Global phase, in units of π. Without it every admissible phase is tried.
    #[arg(long, value_parser = pi_units, conflicts_with = "all_phases")]
    phi: Option<f64>,
    #[arg(long)]
    all_phases: bool,
    #[command(flatten)]
    solver: SolverFlags,
    #[arg(long, default_value = "solve.json")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct CompileArgs {
    #[arg(long)]
    gate: GateName,
    /// Rotation angle, in units of π.
    #[arg(long, value_parser = pi_units, default_value = "0")]
    theta: f64,
    /// Global phase, in units of π. Defaults to the smallest admissible phase.
    #[arg(long, value_parser = pi_units)]
    phi: Option<f64>,
    /// Pulse amplitudes in units of q, ascending.
    #[arg(long, value_delimiter = ',', default_values_t = qutrit_kak::pulse::DEFAULT_OMEGAS)]
    omega: Vec<f64>,
    #[command(flatten)]
    solver: SolverFlags,
    #[arg(long, default_value = "program.json")]
    out: PathBuf,
    #[arg(long, default_value = "sweep.csv")]
    sweep_out: PathBuf,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Tables { out, rows_file } => commands::tables(&out, rows_file.as_deref()),
        Command::Curve {
            family,
            phi,
            theta_min,
            theta_max,
            points,
            out,
        } => commands::curve(family, phi, theta_min, theta_max, points, &out),
        Command::Solve(a) => commands::solve(a),
        Command::Compile(a) => commands::compile(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(exit::INVALID)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn parses_pi_units() {
        assert_eq!(pi_units("0.5").unwrap(), PI / 2.0);
        assert!((pi_units("2/3").unwrap() - 2.0 * PI / 3.0).abs() < 1e-15);
        assert!((pi_units(" -1/4 ").unwrap() + PI / 4.0).abs() < 1e-15);
        assert!(pi_units("1/0").is_err());
        assert!(pi_units("abc").is_err());
        assert!(pi_units("inf").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
