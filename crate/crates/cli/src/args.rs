use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use knotcert::{KnotExpr, Rational};

#[derive(Debug, Parser)]
#[command(
    name = "knotcert",
    version,
    about = "Exact knot concordance invariants and obstruction certificates"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Alexander polynomial, up to units.
    Alexander { expr: KnotExpr },
    /// The τ invariant.
    Tau { expr: KnotExpr },
    /// Seifert genus, exact or as an upper bound.
    Genus { expr: KnotExpr },
    /// Υ, after the ν⁺ rewrite.
    Upsilon(UpsilonArgs),
    /// Signature jump spectrum of T(r,s).
    Jumps { r: i64, s: i64 },
    /// σ of T(r,s) at exp(2πit) from the jump spectrum.
    Sigma {
        r: i64,
        s: i64,
        #[arg(long)]
        t: Rational,
    },
    /// σ of T(r,s) at exp(2πit) from a braid Seifert matrix, with certified signs.
    SigmaOracle {
        r: i64,
        s: i64,
        #[arg(long)]
        t: Rational,
        #[arg(long, default_value_t = knotcert::signature::DEFAULT_MAX_BITS)]
        max_bits: u32,
    },
    /// Covering link of a pattern knot in L(p,q).
    Cover(CoverArgs),
    /// Run an obstruction engine.
    #[command(subcommand)]
    Obstruct(Engine),
    /// Batch certificates.
    #[command(subcommand)]
    Sweep(SweepKind),
    /// Re-derive a certificate from its JSON (a path, or `-` for stdin).
    Replay { file: PathBuf },
}

#[derive(Debug, Args)]
pub struct UpsilonArgs {
    pub expr: KnotExpr,
    #[arg(long)]
    pub at: Option<Rational>,
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    pub slope_on: Option<Vec<Rational>>,
    /// Emit the breakpoint table only.
    #[arg(long)]
    pub dump_plf: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyTag {
    Torus,
    Generic,
    Order2,
    Rp3Null,
    Rp3Order2,
}

#[derive(Debug, Args)]
pub struct CoverArgs {
    #[arg(long, value_enum)]
    pub family: FamilyTag,
    /// Defaults to 2 for the ℝP³ families.
    #[arg(long)]
    pub p: Option<i64>,
    /// Defaults to 1 for the ℝP³ families.
    #[arg(long)]
    pub q: Option<i64>,
    /// Strand count: ℓ for the torus family, a for the generic family.
    #[arg(long)]
    pub l: Option<i64>,
    #[arg(long)]
    pub n: Option<i64>,
    #[arg(long, default_value = "U")]
    pub companion: KnotExpr,
    /// Local knot J; every component K̃ becomes K̃ # d(K̃)·J.
    #[arg(long)]
    pub sum: Option<KnotExpr>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Engine {
    /// Bing-double pair, compared by τ.
    Bing {
        #[arg(long)]
        j1: KnotExpr,
        #[arg(long)]
        j2: KnotExpr,
    },
    /// Null-homotopic pair in ℝP³.
    Rp3Null {
        #[arg(long)]
        j1: KnotExpr,
        #[arg(long)]
        j2: KnotExpr,
    },
    /// Van Cott congruence in L(p,q).
    LensGeneric {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        #[arg(long)]
        l: i64,
    },
    /// Order-2 class of L(2n,q).
    LensOrder2 {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        q: i64,
        #[arg(long)]
        j: KnotExpr,
    },
    /// Order-2 class of ℝP³, by Υ slope parity.
    Rp3Order2 {
        #[arg(long)]
        j: KnotExpr,
    },
    /// Torus family K_{n,ℓ}, by signature jumps.
    Topological {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        #[arg(long)]
        l: i64,
        #[arg(long)]
        n1: i64,
        #[arg(long)]
        n2: i64,
    },
}

#[derive(Debug, Subcommand)]
pub enum SweepKind {
    /// Every pair n1 < n2 ≤ n-max with gcd(ℓ, n) = 1.
    Topological {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        #[arg(long)]
        l: i64,
        #[arg(long)]
        n_max: i64,
        #[arg(long)]
        sequential: bool,
    },
}
