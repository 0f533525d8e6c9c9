use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "grassdeg", version, about = "Exact degrees of real Grassmannians in the involution model")]
pub struct Cli {
    /// Print the JSON envelope instead of the human-readable report.
    #[arg(long, global = true)]
    pub json: bool,

    /// Largest p = k(n-k) accepted by the finite-difference oracle.
    #[arg(long, global = true, default_value_t = 12)]
    pub budget: u32,

    /// Largest (reduced) rank k for which Jack coefficients are computed.
    #[arg(long, global = true, default_value_t = 6)]
    pub jack_budget: u32,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree of Gr(k, R^n), with its per-partition breakdown.
    Degree {
        k: u32,
        n: u32,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
    /// Degrees for 1 <= k <= kmax and 2k <= n <= nmax.
    Table {
        kmax: u32,
        nmax: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Exact value of the Selberg-type integral, optionally with a Monte-Carlo estimate.
    Selberg {
        m: u32,
        p: u32,
        d: u32,
        /// Number of Monte-Carlo samples.
        #[arg(long)]
        mc: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Fit the polynomial part P_k(n) of the degree.
    Interpolate {
        k: u32,
        /// Also predict the degree at this n from the fit.
        #[arg(long)]
        predict: Option<u32>,
    },
    /// Membership, boundary strata and degenerations for the projective closure.
    #[command(subcommand)]
    Closure(ClosureCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Formula,
    ClosedForm,
    Oracle,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum ClosureCommand {
    /// Test whether [X : t] lies in the closure of the rank-k variety.
    Check(CheckArgs),
    /// The boundary generator of the stratum Z_d.
    Boundary {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
    },
    /// Dimension of the stratum Z_d, from the rank of the tangent map.
    OrbitDim {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
    },
    /// Symbolic identities of the degeneration family X_d(eps).
    Epsilon {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        d: u32,
        /// Positive rational, e.g. 1/3.
        #[arg(long)]
        eps: String,
    },
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub k: u32,
    /// Homogenizing coordinate, a Gaussian rational.
    #[arg(long, default_value = "1")]
    pub t: String,
    /// Matrix as JSON rows of entry strings, or diag(...).
    #[arg(long, conflicts_with = "matrix_file", required_unless_present = "matrix_file")]
    pub matrix: Option<String>,
    #[arg(long)]
    pub matrix_file: Option<PathBuf>,
}
