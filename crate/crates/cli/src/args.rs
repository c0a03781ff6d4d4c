use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "su11pol", version, about = "su(1,1) Stokes-like parameters, polarization ellipse and Poincaré hyperboloid")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stokes-like parameters and polarization class of a wave.
    Stokes(StokesArgs),
    /// Numerical check of the su(1,1) commutators, Casimir and Hermiticity.
    VerifyAlgebra(AlgebraArgs),
    /// Field samples over one period and the polarization quadratic.
    Ellipse(EllipseArgs),
    /// Poincaré-hyperboloid surface mesh.
    Surface(SurfaceArgs),
    /// Coherent-state expectations against their classical closed forms.
    Crosscheck(CrosscheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PhaseArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi1: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi2: f64,
    /// Read --phi1/--phi2 in degrees.
    #[arg(long)]
    pub degrees: bool,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// Wavenumber.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub k: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub t: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub z: f64,
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub amp1: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub amp2: f64,
    #[command(flatten)]
    pub phases: PhaseArgs,
}

#[derive(Debug, Args)]
pub struct StokesArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Absolute tolerance on δ21 for region boundaries.
    #[arg(long, default_value_t = 1e-9)]
    pub region_tol: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct AlgebraArgs {
    #[arg(long, default_value_t = 12)]
    pub n_max: usize,
    #[arg(long, default_value_t = 2)]
    pub margin: usize,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EllipseArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Samples over one period.
    #[arg(long, default_value_t = 64)]
    pub samples: usize,
    /// Also write the quadratic coefficients as JSON to this file.
    #[arg(long)]
    pub quadratic: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    /// |K0|, the apex distance of the sheet.
    #[arg(long, default_value_t = 1.5)]
    pub k0_abs: f64,
    #[arg(long, default_value_t = -0.4, allow_negative_numbers = true)]
    pub chi2_min: f64,
    #[arg(long, default_value_t = 0.4, allow_negative_numbers = true)]
    pub chi2_max: f64,
    #[arg(long, default_value_t = -0.4, allow_negative_numbers = true)]
    pub psi2_min: f64,
    #[arg(long, default_value_t = 0.4, allow_negative_numbers = true)]
    pub psi2_max: f64,
    /// Grid points along 2χ and 2ψ, unless overridden per axis.
    #[arg(long, default_value_t = 41)]
    pub steps: usize,
    #[arg(long)]
    pub chi_steps: Option<usize>,
    #[arg(long)]
    pub psi_steps: Option<usize>,
    /// Signs of the K1 and K2 components, e.g. "+-".
    #[arg(long, default_value = "++", allow_hyphen_values = true)]
    pub signs: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CrosscheckArgs {
    #[arg(long, required_unless_present = "grid", allow_negative_numbers = true)]
    pub amp1: Option<f64>,
    #[arg(long, required_unless_present = "grid", allow_negative_numbers = true)]
    pub amp2: Option<f64>,
    #[command(flatten)]
    pub phases: PhaseArgs,
    #[arg(long, default_value_t = 40)]
    pub n_max: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Sweep a 5x5 amplitude grid with varied phases instead of one point.
    #[arg(long)]
    pub grid: bool,
    /// Largest amplitude on the sweep grid.
    #[arg(long, default_value_t = 1.0)]
    pub grid_amp_max: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}
