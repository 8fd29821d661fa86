//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "ptmorse",
    version,
    about = "Spectra, wavefunctions and shooting checks for the PT-symmetric Morse oscillator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lowest Morse levels with their family labels.
    Spectrum(SpectrumArgs),
    /// Family split D/4ω = M + σ − 1/2 and the first members of each family.
    Families(SpectrumArgs),
    /// Pairs of labels sharing one energy.
    Crossings(CrossingsArgs),
    /// Label ordering by ascending energy over a range of D/4ω.
    Table(TableArgs),
    /// Oscillator levels E = ω(4n + 2 − 2qα).
    HoSpectrum(HoSpectrumArgs),
    /// Bound-state wavefunction sampled along a path.
    Wavefunction(WavefunctionArgs),
    /// Path samples and their image in r.
    Contour(ContourArgs),
    /// Shooting eigenvalues compared with the closed form.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Coupling D.
    #[arg(long, allow_hyphen_values = true)]
    pub coupling: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[arg(long, default_value_t = 10)]
    pub levels: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CrossingsArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub coupling: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// Largest Morse index m searched.
    #[arg(long, default_value_t = 20)]
    pub max_m: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// First D/4ω.
    #[arg(long, allow_hyphen_values = true)]
    pub from: f64,
    /// Last D/4ω (inclusive).
    #[arg(long, allow_hyphen_values = true)]
    pub to: f64,
    #[arg(long, default_value_t = 0.25)]
    pub step: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[arg(long, default_value_t = 10)]
    pub levels: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct HoSpectrumArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[arg(long, default_value_t = 10)]
    pub levels: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ContourChoice {
    /// The bent curve C(c).
    Bent,
    /// C(−k, l) at depth c.
    Generalized,
    /// The oscillator line r = s − ic.
    Line,
}

#[derive(Debug, Args)]
pub struct PathArgs {
    #[arg(long, value_enum, default_value = "bent")]
    pub contour: ContourChoice,
    /// Depth c of the path.
    #[arg(long, default_value_t = 1.0)]
    pub depth: f64,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, default_value_t = 1)]
    pub l: u32,
    /// Half-width of the sampled s-range on the line.
    #[arg(long, default_value_t = 5.0)]
    pub extent: f64,
    #[arg(long, default_value_t = 201)]
    pub points: usize,
    /// Distance kept from the singular ends of the curves.
    #[arg(long, default_value_t = 1e-3)]
    pub clip: f64,
}

#[derive(Debug, Args)]
pub struct ContourArgs {
    #[command(flatten)]
    pub path: PathArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct WavefunctionArgs {
    /// Morse coupling D; selects the plus level `--m` of that problem.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["alpha", "n", "q"])]
    pub coupling: Option<f64>,
    #[arg(long, requires = "coupling")]
    pub m: Option<usize>,
    /// Oscillator state given directly by α, n and q.
    #[arg(long, requires_all = ["n", "q"])]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Quasi-parity, +1 or −1.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<i32>,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[command(flatten)]
    pub path: PathArgs,
    /// Scale the state so that ψ(−ic) = 1.
    #[arg(long)]
    pub normalize: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EquationChoice {
    Ho,
    Morse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveChoice {
    Bent,
    Generalized,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub equation: EquationChoice,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub coupling: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[arg(long, default_value_t = 1.0)]
    pub depth: f64,
    /// Trial-energy window lo:hi.
    #[arg(long, allow_hyphen_values = true, default_value = "0:20")]
    pub window: String,
    /// Number of scan points (default ten per unit of the window).
    #[arg(long)]
    pub grid: Option<usize>,
    /// Curve for the Morse problem.
    #[arg(long, value_enum, default_value = "bent")]
    pub contour: CurveChoice,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, default_value_t = 1)]
    pub l: u32,
    /// Relative tolerance for matching found and closed-form values.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Integrator tolerance for refinement.
    #[arg(long, default_value_t = 1e-10)]
    pub step_tol: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}
