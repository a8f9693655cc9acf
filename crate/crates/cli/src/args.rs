use std::path::PathBuf;

use clap::{Parser, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CommandName {
    Spectrum,
    Scan,
    Optimize,
    Superpose,
    Universality,
    Qfi,
    Validate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveName {
    P15,
    P16,
    Sum,
}

/// Chiral quantum walk router toolkit. All numeric output is CSV.
#[derive(Debug, Parser)]
#[command(name = "chiral-router", version)]
pub struct Args {
    #[arg(long, value_enum)]
    pub command: CommandName,

    /// Graph document (JSON). Without it the six-site router is used.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Output file; standard output when omitted or `-`.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Loop phase. Fixes the θ axis to a single value where a sweep is the default.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,

    /// Number of θ points on [0, 2π).
    #[arg(long)]
    pub theta_steps: Option<usize>,

    /// Self-energy on the loop sites; a comma-separated list for `scan` and `qfi`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub gamma: Vec<f64>,

    /// Upper end of the γ search window for `optimize` (lower end is `--gamma`).
    #[arg(long, allow_hyphen_values = true)]
    pub gamma_max: Option<f64>,

    #[arg(long, allow_hyphen_values = true)]
    pub t_min: Option<f64>,

    #[arg(long, allow_hyphen_values = true)]
    pub t_max: Option<f64>,

    #[arg(long)]
    pub t_steps: Option<usize>,

    /// Evaluation time for `qfi`.
    #[arg(long = "t", allow_hyphen_values = true)]
    pub time: Option<f64>,

    /// Superposition phase. Fixes the φ axis to a single value.
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<f64>,

    /// Number of φ points on [0, 2π).
    #[arg(long)]
    pub phi_steps: Option<usize>,

    /// QFI probe: `site:k` or `uniform`; repeat or comma-separate for several.
    #[arg(long, value_delimiter = ',')]
    pub probe: Vec<String>,

    /// Site pairs `j:k` for `scan`, comma-separated.
    #[arg(long, value_delimiter = ',')]
    pub pairs: Vec<String>,

    #[arg(long, value_enum)]
    pub objective: Option<ObjectiveName>,

    /// Seed for the randomized `validate` suite.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Random cases per `validate` check.
    #[arg(long)]
    pub cases: Option<usize>,
}
