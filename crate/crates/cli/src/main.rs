//! Command-line front end.
//!
//! Exit codes: 0 success, 1 parse or I/O error, 2 scheme or audit failure,
//! 3 non-commutative input where commutativity is required, 4 parameter error.

mod commands;
mod config;
mod family;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{CliError, RunConfig};

#[derive(Parser)]
#[command(
    name = "hyperscheme",
    version,
    about = "Association schemes, hypergroups and their duals"
)]
struct Cli {
    /// Tolerance override for floating-point checks.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for randomized steps.
    #[arg(long, global = true, default_value_t = hyperscheme::DEFAULT_SEED)]
    seed: u64,
    /// Directory that receives all reports.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a scheme and audit the intersection-number identities.
    Verify { scheme: PathBuf },
    /// Emit the hypergroup of a scheme and its axiom check.
    Hypergroup { scheme: PathBuf },
    /// Emit the character table of a commutative scheme.
    Chartable { scheme: PathBuf },
    /// Emit the dual convolution table of a commutative scheme.
    Dualtable { scheme: PathBuf },
    /// Build the coset scheme of a group and subgroup given as a Cayley table.
    Quotient { cayley: PathBuf },
    /// Audit a generalized scheme file.
    Generalized { file: PathBuf },
    /// Reports for the parameterized families.
    Family(FamilyArgs),
    /// Write the built-in fixtures as input files.
    Fixtures,
    /// Run every report on the built-in fixtures.
    Suite(FamilyOptions),
}

#[derive(Args)]
struct FamilyArgs {
    #[command(subcommand)]
    family: FamilyCommand,
}

#[derive(Subcommand)]
enum FamilyCommand {
    /// Γ(a, b) polynomial hypergroups.
    Gab {
        /// Number of cliques at each vertex, `a ≥ 2`
        #[arg(long)]
        a: f64,
        /// Clique size, `b ≥ 2`
        #[arg(long)]
        b: f64,
        #[command(subcommand)]
        report: GabReport,
    },
    /// The discrete cosh-hypergroup.
    Cosh {
        /// Deformation parameter, `r > 0`
        #[arg(long)]
        r: f64,
        #[command(flatten)]
        options: FamilyOptions,
    },
}

#[derive(Subcommand)]
enum GabReport {
    /// CSV of coefficients `m,n,k,g`.
    Linearization {
        #[arg(long, default_value_t = 6)]
        max: usize,
    },
    /// Smallest eigenvalue of the distance kernel over a range of `x`.
    PsdSweep {
        #[arg(long, default_value_t = -1.5, allow_hyphen_values = true)]
        x_min: f64,
        #[arg(long, default_value_t = 1.5, allow_hyphen_values = true)]
        x_max: f64,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        #[arg(long, default_value_t = 3)]
        radius: usize,
        #[command(flatten)]
        options: FamilyOptions,
    },
    /// Moment LP feasibility on a grid of `(x, y)` in `[s0, s1]²`.
    LpSweep {
        #[arg(long, default_value_t = 5)]
        points: usize,
        #[command(flatten)]
        options: FamilyOptions,
    },
}

#[derive(Args, Clone, Copy)]
struct FamilyOptions {
    /// Window half-width for windowed schemes.
    #[arg(long, default_value_t = 8)]
    window: usize,
    /// Number of LP grid nodes.
    #[arg(long, default_value_t = 400)]
    grid_nodes: usize,
    /// Highest moment matched by the LP.
    #[arg(long, default_value_t = 8)]
    moment_order: usize,
    /// Largest graph ball built.
    #[arg(long, default_value_t = hyperscheme::families::DEFAULT_VERTEX_BUDGET)]
    vertex_budget: usize,
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let mut config = RunConfig::new(cli.tol, cli.seed, cli.out)?;
    match cli.command {
        Command::Verify { scheme } => commands::verify(&config, &scheme),
        Command::Hypergroup { scheme } => commands::hypergroup(&config, &scheme),
        Command::Chartable { scheme } => commands::chartable(&config, &scheme),
        Command::Dualtable { scheme } => commands::dualtable(&config, &scheme),
        Command::Quotient { cayley } => commands::quotient(&config, &cayley),
        Command::Generalized { file } => commands::generalized(&config, &file),
        Command::Fixtures => commands::fixtures(&config),
        Command::Suite(o) => {
            config.set_family_options(o.window, o.grid_nodes, o.moment_order, o.vertex_budget)?;
            commands::suite(&config)
        }
        Command::Family(FamilyArgs { family }) => match family {
            FamilyCommand::Gab { a, b, report } => {
                let fam = hyperscheme::families::GabFamily::new(a, b)?;
                match report {
                    GabReport::Linearization { max } => family::gab_linearization(&config, &fam, max),
                    GabReport::PsdSweep {
                        x_min,
                        x_max,
                        step,
                        radius,
                        options: o,
                    } => {
                        config.set_family_options(o.window, o.grid_nodes, o.moment_order, o.vertex_budget)?;
                        family::gab_psd_sweep(&config, &fam, x_min, x_max, step, radius)
                    }
                    GabReport::LpSweep { points, options: o } => {
                        config.set_family_options(o.window, o.grid_nodes, o.moment_order, o.vertex_budget)?;
                        family::gab_lp_sweep(&config, &fam, points)
                    }
                }
            }
            FamilyCommand::Cosh { r, options: o } => {
                config.set_family_options(o.window, o.grid_nodes, o.moment_order, o.vertex_budget)?;
                let fam = hyperscheme::families::CoshFamily::new(r)?;
                family::cosh_window(&config, &fam)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}
