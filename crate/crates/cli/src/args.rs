use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "toricq", version, about = "Toric-geometry analysis of multi-qubit pure states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: GlobalOpts,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Separability tolerance on the unit-normalised state.
    #[arg(long, global = true, default_value_t = toric_qubits::DEFAULT_TOLERANCE)]
    pub tol: f64,

    /// Named fixture instead of a file: bell, ghzN, w3, or a bitstring such as 01.
    #[arg(long, global = true)]
    pub state: Option<String>,

    /// Write output to this file instead of stdout.
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Separability verdict, factors, moment image and entanglement measures.
    Analyze {
        /// State JSON file, or a directory of them.
        input: Option<PathBuf>,
        /// Worker threads for directory input.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Segre binomial relations and their residuals.
    Segre {
        input: Option<PathBuf>,
        /// Number of qubits (for --list without a state).
        #[arg(short = 'm')]
        m: Option<usize>,
        /// Print the canonical relation list.
        #[arg(long)]
        list: bool,
    },
    /// Moment-map image of a product state or a projective point.
    ///
    /// Coordinates use the Fubini–Study normalisation, one factor per axis in
    /// [-1/2, 0]. `--convention height` prints 4t + 1 instead, the
    /// height-function normalisation in [-1, 1].
    Moment {
        input: Option<PathBuf>,
        /// Projective point JSON file `{"coords": [[re, im], ...]}`.
        #[arg(long)]
        projective: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Convention::Fs)]
        convention: Convention,
    },
    /// Concurrence, three-tangle or m-tangle, whichever applies.
    Tangle { input: Option<PathBuf> },
    /// Four-qubit invariants H, I1 and the τ4 identity table.
    Invariants { input: Option<PathBuf> },
    /// Lattice polytope summary.
    Polytope {
        #[command(subcommand)]
        source: PolytopeSource,
    },
    /// Embed factor JSON into a product state JSON.
    Embed { factors: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    /// Fubini–Study, [-1/2, 0] per factor.
    Fs,
    /// Height function on S^2, [-1, 1] per factor.
    Height,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Centered,
    Unit,
}

#[derive(Debug, Args)]
pub struct PolytopeSections {
    /// Delzant verdict.
    #[arg(long)]
    pub delzant: bool,
    /// Integral points (boxes only).
    #[arg(long = "lattice-points")]
    pub lattice_points: bool,
    /// Normal-fan cone count (boxes only).
    #[arg(long)]
    pub fan: bool,
}

impl PolytopeSections {
    pub fn none_selected(&self) -> bool {
        !(self.delzant || self.lattice_points || self.fan)
    }
}

#[derive(Debug, Subcommand)]
pub enum PolytopeSource {
    /// The m-cube.
    Cube {
        #[arg(short = 'm')]
        m: usize,
        #[arg(long, value_enum, default_value_t = Variant::Centered)]
        variant: Variant,
        #[command(flatten)]
        sections: PolytopeSections,
    },
    /// Polytope JSON file `{"vertices": [[int, ...], ...]}`.
    File {
        path: PathBuf,
        #[command(flatten)]
        sections: PolytopeSections,
    },
}
