use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "superschur",
    version,
    about = "Exact checks for GL(m|n): weights, tableaux, bideterminants, distribution actions"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Size of the even block.
    #[arg(long, global = true)]
    pub m: Option<usize>,
    /// Size of the odd block.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Field characteristic (an odd prime).
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Frobenius exponent, q = p^r.
    #[arg(long, global = true, default_value_t = 1)]
    pub r: u32,
    /// Work over the rationals.
    #[arg(long, global = true, conflicts_with = "p")]
    pub rational: bool,
    #[arg(long, global = true, default_value_t = 1)]
    pub lmax: u64,
    #[arg(long, global = true, default_value_t = 2)]
    pub kmax: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Record wall-clock times in reports (makes them non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
    /// Refuse modules with more basis words than this.
    #[arg(long, global = true, default_value_t = 1 << 20)]
    pub max_basis: u128,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dominance orders, weight ideals and congruent predecessors.
    #[command(subcommand)]
    Weights(WeightsCmd),
    /// Semistandard tableaux.
    #[command(subcommand)]
    Tableaux(TableauxCmd),
    /// Binomials and torus idempotents.
    #[command(subcommand)]
    Arith(ArithCmd),
    /// Bideterminants, straightening and factor bases.
    #[command(subcommand)]
    Bidet(BidetCmd),
    /// Coordinate-ring computations.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Distribution-algebra actions on mixed tensor powers.
    #[command(subcommand)]
    Dist(DistCmd),
}

#[derive(Subcommand, Debug)]
pub enum WeightsCmd {
    Dominant {
        weight: String,
    },
    /// Dominance order μ ⊴ λ.
    Leq {
        mu: String,
        lambda: String,
    },
    /// Blockwise dominance μ ⊴_s λ.
    Sleq {
        mu: String,
        lambda: String,
    },
    /// Admissible decomposition of the ideal generated by the given weights.
    Decompose {
        #[arg(long, num_args = 1.., required = true)]
        gens: Vec<String>,
    },
    /// Orders a downward-closed set by removing maximal elements.
    Filtration {
        #[arg(required = true)]
        weights: Vec<String>,
    },
    /// Dominant μ ⊴ λ with μ ≡ α (mod q).
    Pred {
        #[arg(long, required_unless_present = "samples")]
        lambda: Option<String>,
        #[arg(long, required_unless_present = "samples")]
        alpha: Option<String>,
        #[arg(long)]
        q: u64,
        /// Check this many seeded random instances instead.
        #[arg(long)]
        samples: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum TableauxCmd {
    List {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        bound: u32,
    },
    /// Enumeration against the hook-content formula.
    Count {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        bound: u32,
    },
    /// Shape data (a, b, μ, ν±) of a dominant weight.
    Shape {
        #[arg(long)]
        lambda: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum ArithCmd {
    /// binom(top, bottom) in the chosen field.
    Binom {
        #[arg(long, allow_hyphen_values = true)]
        top: i64,
        #[arg(long)]
        bottom: u64,
    },
    /// h_t^(q)(x) by the defining sum and by the closed form.
    H {
        #[arg(long)]
        t: u64,
        #[arg(long)]
        q: u64,
        #[arg(long, allow_hyphen_values = true)]
        x: i64,
    },
    /// Both forms for all t < q and |x| ≤ 3q.
    Check {
        #[arg(long)]
        q: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum BidetCmd {
    /// Factor basis of a weight and the rank of its images.
    Basis {
        #[arg(long)]
        lambda: String,
        /// Also list the basis elements.
        #[arg(long)]
        elements: bool,
    },
    /// Expresses a bideterminant in standard ones of the same or smaller shape.
    Straighten {
        #[arg(long)]
        mu: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        b: i64,
        /// Tableaux `I+ J+ I- J-`, rows separated by `/`, `-` for empty.
        #[arg(long, num_args = 4, value_names = ["I+", "J+", "I-", "J-"], conflicts_with = "all")]
        index: Option<Vec<String>>,
        /// Straighten every non-standard index of the shape.
        #[arg(long)]
        all: bool,
    },
    /// Exterior-algebra expansion against the determinant of a minor.
    Trace {
        #[arg(long, value_enum)]
        block: Block,
        #[arg(long)]
        rows: String,
        #[arg(long)]
        cols: String,
    },
    Minor {
        #[arg(long, value_enum)]
        block: Block,
        #[arg(long)]
        rows: String,
        #[arg(long)]
        cols: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Block {
    #[value(name = "11")]
    B11,
    #[value(name = "22")]
    B22,
}

#[derive(Subcommand, Debug)]
pub enum PolyCmd {
    /// Δ(z_ij) - z_ij ⊗ 1 ∈ L ⊗ K[P^-] for one or all odd positions.
    Zcheck {
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
    /// Image of a generator `yij` or `D1^-1`, `D2^-1` under φ*.
    Phi { generator: String },
}

#[derive(Subcommand, Debug)]
pub enum DistCmd {
    /// Commutation of idempotents with divided powers.
    Commute {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "V2W1")]
        module: String,
    },
    /// Idempotency, orthogonality and partition of unity.
    Idempotent {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "V2W1")]
        module: String,
    },
    /// Idempotents of the wrong degree act as zero.
    Kernel {
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        #[arg(long)]
        q: u64,
        /// A single α instead of all of them.
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Word z with h_α z = z and u z ≠ 0.
    Witness {
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        #[arg(long)]
        q: u64,
        #[arg(long, required_unless_present = "samples")]
        u: Option<String>,
        #[arg(long, required_unless_present = "samples")]
        alpha: Option<String>,
        /// Check this many seeded random (u, α) instead.
        #[arg(long, conflicts_with_all = ["u", "alpha"])]
        samples: Option<usize>,
    },
    /// Characteristic zero: annihilation by Σ e_i - l, or a witness.
    Char0 {
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        #[arg(long, value_enum, default_value_t = Char0Mode::Annihilate)]
        mode: Char0Mode,
        #[arg(long)]
        u: Option<String>,
        /// N_1 > … > N_{m+n-1} > 0; searched for when omitted.
        #[arg(long = "big-n")]
        big_n: Option<String>,
        #[arg(long, default_value_t = 16)]
        nmax: u64,
        #[arg(long)]
        samples: Option<usize>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Char0Mode {
    Annihilate,
    Witness,
}
