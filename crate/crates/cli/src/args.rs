use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "dualinv",
    version,
    about = "Generalized inverses of dual matrices A + εB"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Relative singular-value threshold for numerical rank.
    #[arg(long, global = true, default_value_t = dualinv_core::Tolerances::DEFAULT_RANK_REL)]
    pub tol_rank: f64,
    /// Residual threshold for existence and equation checks.
    #[arg(long, global = true, default_value_t = dualinv_core::Tolerances::DEFAULT_RESID_REL)]
    pub tol_resid: f64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for `gen`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Run a single-input command over every `.json` file in a directory.
    #[arg(long, global = true)]
    pub batch: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Matrix document: `{"real": [[...]], "dual": [[...]]}`.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Numerical rank of the real part.
    Rank(Input),
    /// Index of the real part.
    Index(Input),
    /// Moore-Penrose inverse of the real part.
    Pinv(Input),
    /// Group inverse of the real part.
    Ginv(Input),
    /// Drazin inverse of the real part.
    Dinv(Input),
    /// Core inverse of the real part.
    Coreinv(Input),
    /// A^† - εA^†BA^†.
    Mpdgi(Input),
    /// Dual Moore-Penrose inverse.
    Dmpgi(Input),
    /// Dual group inverse.
    Dggi(Input),
    /// Dual core inverse.
    Dcgi(Input),
    /// Dual Drazin inverse.
    Ddgi(Input),
    /// Â^D Â Â^†.
    Ddmpgi(Input),
    /// Solve Âx̂ = b̂ through the dual Drazin inverse.
    Solve(SolveArgs),
    /// Check a candidate against the defining equations of an inverse.
    Verify(VerifyArgs),
    /// Reverse- and forward-order laws for two matrices.
    Law(LawArgs),
    /// D-group or D-core order between two matrices.
    Order(OrderArgs),
    /// Generate a seeded fixture.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub input: Input,
    /// Right-hand side as a single-column matrix document.
    #[arg(long)]
    pub rhs: PathBuf,
    /// Parameter of the general solution.
    #[arg(long)]
    pub z: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KindArg {
    Mpdgi,
    Dmpgi,
    Dggi,
    Dcgi,
    Ddgi,
    Ddmpgi,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub kind: KindArg,
    #[command(flatten)]
    pub input: Input,
    #[arg(long)]
    pub candidate: PathBuf,
    /// Index used by the Drazin kinds; defaults to the index of the real part.
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum LawArg {
    Group,
    Drazin,
    Mp,
    Core,
    /// `Â^D (Â + Ĉ) Ĉ^D = Â^D + Ĉ^D`.
    Absorption,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormArg {
    Particular,
    General,
}

#[derive(Debug, Args)]
pub struct LawArgs {
    pub kind: LawArg,
    /// Exactly two matrix documents, Â then Ĉ.
    #[arg(long = "input", num_args = 1, required = true)]
    pub inputs: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormArg::Particular)]
    pub form: FormArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OrderArg {
    Group,
    Core,
}

#[derive(Debug, Args)]
pub struct OrderArgs {
    pub kind: OrderArg,
    /// Exactly two matrix documents, X̂ then Ŷ.
    #[arg(long = "input", num_args = 1, required = true)]
    pub inputs: Vec<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Family {
    Ddgi,
    Group,
    OrderedPair,
    Chain,
    Commuting,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub family: Family,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    /// Middle rank for `chain`.
    #[arg(long)]
    pub r2: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Emit the negative control of the family.
    #[arg(long)]
    pub negative: bool,
    /// Law kind for `commuting`.
    #[arg(long, value_enum, default_value_t = LawArg::Group)]
    pub kind: LawArg,
}
