mod commands;
mod grid;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use subfrac::green::GreenMethod;
use subfrac::Representation;

use crate::grid::GridSpec;

/// Evaluate subordination kernels, special functions and Green functions
/// of space-time fractional diffusion on grids, as CSV.
#[derive(Parser, Debug)]
#[command(name = "subfrac", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a function on a scalar point or a grid.
    Eval {
        target: EvalTarget,
        #[command(flatten)]
        params: Params,
    },
    /// Run one of the solvers.
    Solve {
        target: SolveTarget,
        #[command(flatten)]
        params: Params,
    },
    /// Run the invariant checks.
    Verify { target: VerifyTarget },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalTarget {
    /// E_{α,β}(-x)
    Ml,
    /// L_α(x)
    Levy,
    /// M_β(x)
    Mainardi,
    /// K_{α,β}(x)
    K,
    /// ψ_{α,β}(t, τ)
    Psi,
    /// G_{α,β,n}(ρ, t)
    Green,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveTarget {
    /// Modal amplitudes E_β(-λ^α t^β) of unit coefficients
    Spectral,
    /// u(x, t) of the fractional advection equation
    Advection,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyTarget {
    AllChecks,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Profile {
    /// v ≡ 1
    #[default]
    One,
    /// v(x) = e^{-x}
    Exp,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Params {
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub rho: Option<f64>,
    /// Spatial dimension.
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub x: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long, value_name = "GRID")]
    pub t_grid: Option<GridSpec>,
    #[arg(long, value_name = "GRID")]
    pub tau_grid: Option<GridSpec>,
    #[arg(long, value_name = "GRID")]
    pub rho_grid: Option<GridSpec>,
    #[arg(long, value_name = "GRID")]
    pub x_grid: Option<GridSpec>,
    #[arg(long, value_name = "GRID")]
    pub lambda_grid: Option<GridSpec>,
    /// auto, closed, rep1, rep2, rep3, rep4 or talbot.
    #[arg(long)]
    pub rep: Option<Representation>,
    /// subordination, 2d, half-half, 1d-half, 3d-half, neutral or poisson.
    #[arg(long)]
    pub method: Option<GreenMethod>,
    /// Relative quadrature tolerance.
    #[arg(long, env = "SUBFRAC_TOL")]
    pub rel_tol: Option<f64>,
    /// Talbot contour nodes.
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Initial profile for advection.
    #[arg(long, value_enum)]
    pub profile: Option<Profile>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            };
        }
    };
    let mut out = std::io::stdout().lock();
    let result = match cli.command {
        Command::Eval { target, params } => commands::eval(target, &params, &mut out),
        Command::Solve { target, params } => commands::solve(target, &params, &mut out),
        Command::Verify { target: VerifyTarget::AllChecks } => commands::verify(&mut out),
    };
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(commands::CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("subfrac: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
