use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "lazard", version, about = "p-adic Lie lattices, Lazard groups and 2x2 similarity classes")]
pub struct Cli {
    /// The prime
    #[arg(long, global = true, default_value_t = 5)]
    pub p: u64,

    /// Precision: work modulo p^N (defaults depend on the command)
    #[arg(long = "N", global = true, value_name = "N")]
    pub precision: Option<u32>,

    /// Non-residue mod p used by the families that need one
    #[arg(long, global = true)]
    pub rho: Option<u64>,

    /// Seed for the randomized checks
    #[arg(long, global = true, default_value_t = 20240601)]
    pub seed: u64,

    /// Write the JSON result to this file
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,

    /// Print JSON on stdout instead of text
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multiplicative-similarity class of a 2x2 matrix
    Classify {
        /// `a,b,c,d` row-major, or a JSON matrix file
        matrix: String,
        /// Treat the entries as exact residues instead of refusing short precision
        #[arg(long)]
        exact: bool,
    },
    /// Run a named verification fixture
    Verify {
        /// one of the names printed by `lazard fixtures`
        fixture: String,
    },
    /// List the verification fixtures
    Fixtures,
    /// Isomorphism test for two soluble 3-dimensional lattices
    Iso { a: PathBuf, b: PathBuf },
    /// Build a catalog lattice and group
    Construct {
        /// a name from `lazard manifest`
        name: String,
        /// `s`, or `inf` where allowed
        #[arg(long)]
        s: Option<String>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i128>,
        /// Levi example parameter
        #[arg(long, default_value_t = 2)]
        k: u32,
        /// Action of the generator on the fiber
        #[arg(long, value_enum, default_value_t = Kind::Linear)]
        kind: Kind,
    },
    /// The Hausdorff series and the group law on a lattice
    Bch {
        #[command(subcommand)]
        op: BchOp,
    },
    /// Every constructor with its parameters
    Manifest,
    /// All fixtures plus seeded invariance checks
    Acceptance,
}

#[derive(Debug, Subcommand)]
pub enum BchOp {
    /// Coefficients up to a weight
    Table {
        #[arg(long, default_value_t = 4)]
        weight: usize,
    },
    /// `u * v` in a lattice file; vectors are labels or `a,b,c`
    Mul { lattice: PathBuf, u: String, v: String },
    /// `u^-1 v^-1 u v`
    Commutator { lattice: PathBuf, u: String, v: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// 1 + A
    Linear,
    /// exp(A)
    Exp,
}
