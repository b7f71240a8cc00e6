use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "bspec",
    version,
    about = "Spectra and stability of leader-follower chains with a perturbed boundary",
    after_help = "Exit status: 0 on success, 1 on a domain error (JSON {error, message} on stderr), 2 on a usage error."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues from the closed form.
    ///
    /// CSV columns: re,im,label with label in {leader, bulk, special, direct}.
    Spectrum {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = Kind::Full)]
        kind: Kind,
    },
    /// Boundary regime and case; `b` defaults to a+c and `n` to 100.
    ///
    /// CSV columns: regime,case,predicted (predicted eigenvalues of the
    /// decentralized table separated by ';').
    Classify {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Stability verdict; second order when --alpha and --beta are given.
    ///
    /// CSV columns: stable,rule,zero_multiplicity,spectral_abscissa,witness_re,witness_im.
    Stability {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// RK4 simulation; second order when --alpha and --beta are given.
    ///
    /// CSV columns: t,x_0..x_n[,v_0..v_n],coherence_error.
    Simulate {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        sim: SimArgs,
    },
    /// Distance of the refined special root from its limit as n grows.
    ///
    /// CSV columns: n,deviation.
    Convergence {
        #[command(flatten)]
        common: CommonArgs,
        /// Dimensions to track.
        #[arg(long, value_delimiter = ',', default_value = "20,40,80,160")]
        n_values: Vec<usize>,
    },
    /// Closed form against QR and polynomial roots.
    ///
    /// CSV columns: n,max_pairing_error,method_agreement,regime,case.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = Kind::Full)]
        kind: Kind,
    },
    /// Sampled monotonicity of the branch function on every branch.
    ///
    /// CSV columns: branch,sample_count,violations,slope_coefficient.
    Monotonicity {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Full,
    Reduced,
    Laplacian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Parameters and output options shared by every subcommand. Flags take
/// precedence over the config file.
#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Coupling to the predecessor.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// Coupling to the successor.
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    /// Leader's diagonal entry; defaults to a + c.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    /// Last agent's diagonal entry.
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<f64>,
    /// Last agent's extra weight on its predecessor.
    #[arg(long, allow_hyphen_values = true)]
    pub e: Option<f64>,
    /// Number of followers.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// JSON file whose keys mirror the flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimArgs {
    #[arg(long)]
    pub t_end: Option<f64>,
    /// Step size; defaults to 0.5 / spectral radius.
    #[arg(long)]
    pub dt: Option<f64>,
    /// Record every this many steps.
    #[arg(long, default_value_t = 1)]
    pub save_every: usize,
    /// CSV with columns h,x0 and optionally v0, one row per agent.
    #[arg(long)]
    pub init: Option<PathBuf>,
    /// Default offsets are h_k = -k * spacing.
    #[arg(long, default_value_t = 1.0)]
    pub spacing: f64,
    /// Default start is x0 = h + uniform noise of this half-width.
    #[arg(long, default_value_t = 0.5)]
    pub noise: f64,
    /// Seed for the default start.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
