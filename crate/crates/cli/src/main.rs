use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use superw_core::cohomology::DEFAULT_ENTRY_CAP;
use superw_core::kac::{KacFlavor, DEFAULT_KAC_CAP};
use superw_core::Weight;

mod cache;
mod commands;

/// Exact computations for the Lie superalgebra W(n).
#[derive(Parser, Debug)]
#[command(name = "superw", version)]
pub struct Cli {
    /// Emit pretty-printed JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Bypass the result cache (see SUPERW_CACHE).
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Structure of W(n), sl(1,n) or gl(n), with optional checks.
    Algebra(AlgebraArgs),
    /// Decompose gl(n) characters into irreducibles.
    Decompose(DecomposeArgs),
    /// Build a Kac module.
    Kac(KacArgs),
    /// Ext dimension formula, its cohomological check, or a quiver fragment.
    Ext(ExtArgs),
    /// H⁰ and H¹ of W(n) with coefficients in Hom(K_λ, K_μ) or the trivial module.
    Cohomology(CohomologyArgs),
    /// Block of a weight, a linking path, or the parity splitting of K_λ.
    Block(BlockArgs),
    /// Representation type of a quiver.
    Quiver(QuiverArgs),
    /// Run the acceptance checks.
    Verify(VerifyArgs),
}

fn weight(s: &str) -> Result<Weight, String> {
    s.parse::<Weight>().map_err(|e| e.to_string())
}

fn parity_bit(s: &str) -> Result<u8, String> {
    match s {
        "0" => Ok(0),
        "1" => Ok(1),
        _ => Err(format!("parity must be 0 or 1, got {s:?}")),
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum KindArg {
    W,
    Sl,
    Gl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgebraCheck {
    Jacobi,
    Simplicity,
    Grading,
    Roots,
}

#[derive(Args, Debug)]
pub struct AlgebraArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "w")]
    pub kind: KindArg,
    #[arg(long, value_enum)]
    pub check: Option<AlgebraCheck>,
    /// List the weights of the complement of sl(1,n) in W(n).
    #[arg(long)]
    pub roots: bool,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    /// Highest weight of the first factor, or of the irreducible to describe.
    #[arg(long, value_parser = weight, conflicts_with = "degree")]
    pub lambda: Option<Weight>,
    /// Highest weight of the second tensor factor.
    #[arg(long, value_parser = weight, requires = "lambda")]
    pub mu: Option<Weight>,
    /// Decompose the graded component W_k instead.
    #[arg(long, allow_hyphen_values = true, requires = "n")]
    pub degree: Option<i32>,
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Args, Debug)]
pub struct KacArgs {
    #[arg(long, value_parser = weight)]
    pub lambda: Weight,
    /// Rank; must match the length of λ when given.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value = "w")]
    pub flavor: KacFlavor,
    #[arg(long, default_value_t = DEFAULT_KAC_CAP)]
    pub cap: usize,
    /// Also test irreducibility (and typicality for sl flavors).
    #[arg(long)]
    pub irreducible: bool,
    /// Include basis labels, weights and parities.
    #[arg(long)]
    pub basis: bool,
}

#[derive(Args, Debug)]
pub struct ExtArgs {
    #[arg(long, value_parser = weight)]
    pub lambda: Weight,
    #[arg(long)]
    pub n: Option<usize>,
    /// Degree-1 complement root; omit with --fragment.
    #[arg(long, value_parser = weight, required_unless_present = "fragment")]
    pub alpha: Option<Weight>,
    /// Compare with dim H¹(W, Hom(K_λ, K_{λ+α})).
    #[arg(long, conflicts_with = "fragment")]
    pub oracle: bool,
    /// Star of all arrows out of λ.
    #[arg(long)]
    pub fragment: bool,
    /// Emit the fragment as Graphviz DOT.
    #[arg(long, requires = "fragment")]
    pub dot: bool,
}

#[derive(Args, Debug)]
pub struct CohomologyArgs {
    #[arg(long, value_parser = weight, required_unless_present = "trivial", requires = "mu")]
    pub lambda: Option<Weight>,
    #[arg(long, value_parser = weight)]
    pub mu: Option<Weight>,
    /// Trivial coefficients; needs --n.
    #[arg(long, conflicts_with = "lambda", requires = "n")]
    pub trivial: bool,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value = "w")]
    pub kind: KindArg,
    /// Use every row of d¹ instead of rows through a generating set.
    #[arg(long)]
    pub full_rows: bool,
    #[arg(long, default_value_t = DEFAULT_ENTRY_CAP)]
    pub cap: usize,
    /// Also check d¹∘d⁰ = 0.
    #[arg(long)]
    pub check_d2: bool,
    #[arg(long)]
    pub dump_d0: Option<PathBuf>,
    #[arg(long)]
    pub dump_d1: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BlockArgs {
    #[arg(long, value_parser = weight)]
    pub lambda: Weight,
    /// Second weight: report a linking path.
    #[arg(long, value_parser = weight)]
    pub mu: Option<Weight>,
    #[arg(long, value_parser = parity_bit, default_value = "0")]
    pub parity_base: u8,
    /// Split K_λ into its two parity halves.
    #[arg(long, conflicts_with = "mu")]
    pub split: bool,
}

#[derive(Args, Debug)]
pub struct QuiverArgs {
    /// Quiver in JSON (.json) or DOT (anything else).
    #[arg(long, conflicts_with_all = ["star", "path"])]
    pub file: Option<PathBuf>,
    /// Star with this many arrows out of the center.
    #[arg(long, conflicts_with = "path")]
    pub star: Option<usize>,
    /// Linearly oriented path on this many vertices.
    #[arg(long)]
    pub path: Option<usize>,
    /// Emit the quiver as DOT.
    #[arg(long)]
    pub dot: bool,
    /// Evaluate the Tits form at this dimension vector.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub tits: Option<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum LevelArg {
    Quick,
    Full,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "quick")]
    pub level: LevelArg,
    /// Run only these criteria.
    #[arg(long, value_delimiter = ',')]
    pub only: Option<Vec<u8>>,
    /// Include wall-clock times.
    #[arg(long)]
    pub timings: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if e.is::<commands::Usage>() { 2 } else { 1 })
        }
    }
}
