use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::rational::parse_real;

#[derive(Debug, Parser)]
#[command(
    name = "qes",
    version,
    about = "Quasi-exact states of CLH and sextic radial problems in D dimensions",
    args_override_self = true
)]
pub struct Cli {
    /// File of `key = value` lines mirroring the flags (flags win).
    /// Defaults to $QES_CONFIG.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the quantization conditions and print the states.
    Solve(SolveArgs),
    /// Map a CLH problem to its sextic image, or a sextic problem back.
    Transform(TransformArgs),
    /// Check analytic states against the finite-difference oracle.
    Verify(VerifyArgs),
    /// Reproduce one of the three reference tables.
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Clh,
    Sextic,
    Harmonic,
    Coulomb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,

    /// CLH Coulomb strength; decimals or ratios such as 1/32.
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// CLH linear strength.
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    pub b: Option<f64>,
    /// CLH harmonic strength.
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    pub c: Option<f64>,
    /// Quadratic strength (sextic, harmonic).
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    /// Quartic strength (sextic).
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// Sextic strength.
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    pub eta: Option<f64>,
    /// Oscillator frequency, mu = omega^2 / 2 (harmonic).
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    pub omega: Option<f64>,
    /// Coulomb charge.
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    pub z: Option<f64>,

    /// Dimension.
    #[arg(long = "D", value_name = "D", allow_hyphen_values = true)]
    pub dim: Option<i64>,
    /// Angular momentum (default 0).
    #[arg(long, allow_hyphen_values = true)]
    pub ell: Option<i64>,
    /// k = D + 2 ell; taken as D = k, ell = 0.
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<i64>,
    /// Polynomial degree (default 0).
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<i64>,
    /// Level index for harmonic and Coulomb; same as --p.
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i64>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub output: Option<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Relative tolerance of the coupling constraint (default 1e-9).
    #[arg(long, value_parser = parse_real)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct TransformArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Relative tolerance of the image termination check (default 1e-9).
    #[arg(long, value_parser = parse_real)]
    pub tolerance: Option<f64>,
    /// CLH energy to map instead of the solved level.
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    pub energy: Option<f64>,
    /// Sextic eigenvalue to map back (with --family sextic).
    #[arg(long = "e-hat", value_parser = parse_real, allow_hyphen_values = true)]
    pub e_hat: Option<f64>,
    /// Negative CLH energy fixing the scale of the inverse map.
    #[arg(long = "gauge-energy", value_parser = parse_real, allow_hyphen_values = true)]
    pub gauge_energy: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Relative tolerance of analytic vs oracle energies (default 1e-4).
    #[arg(long, value_parser = parse_real)]
    pub tolerance: Option<f64>,
    /// Oracle grid points.
    #[arg(long = "grid-points")]
    pub grid_points: Option<usize>,
    /// Oracle box size.
    #[arg(long = "r-max", value_parser = parse_real)]
    pub r_max: Option<f64>,
    /// Energy that must match an oracle level.
    #[arg(long = "assert-energy", value_parser = parse_real, allow_hyphen_values = true)]
    pub assert_energy: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    /// Table number.
    #[arg(value_parser = clap::value_parser!(u32).range(1..=3))]
    pub id: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}
