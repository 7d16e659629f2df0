use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "cosimplex", version, about = "Exact verification suites for cosimplicial and braid structures")]
#[command(arg_required_else_help = true)]
pub struct Cli {
    /// List every suite and example, then exit.
    #[arg(long, global = true)]
    pub list: bool,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for sampled carriers.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Include wall-clock timings in the report. Off by default so that
    /// identical runs give identical output.
    #[arg(long, global = true)]
    pub timings: bool,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cosimplicial identities or the shift correspondence on an example.
    Verify(VerifyArgs),
    /// Spreadability of a moment family, and agreement with coface invariance.
    Spreadability(SpreadArgs),
    /// Cochain complex of a module action: d d = 0 and the cohomology table.
    Cohomology(CohomologyArgs),
    /// Shift power formula and two-word identity for a braid action.
    BraidCheck(BraidArgs),
    /// Set-theoretic Yang-Baxter check for a pair rule.
    Ybe(YbeArgs),
    /// Temperley-Lieb relations and Markov trace at a parameter q.
    Tl(TlArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    Sco,
    Shifts,
}

/// `--q RE IM`, each an exact fraction such as `1/2`.
#[derive(Args, Debug, Clone)]
pub struct QArg {
    #[arg(long, num_args = 2, value_names = ["RE", "IM"], default_values = ["2", "0"], allow_hyphen_values = true)]
    pub q: Vec<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub target: VerifyTarget,
    #[arg(long)]
    pub example: String,
    #[arg(long, default_value_t = 4)]
    pub n_max: usize,
    /// Largest k and N in the shift power formula.
    #[arg(long, default_value_t = 6)]
    pub k_max: usize,
    #[command(flatten)]
    pub q: QArg,
    /// Strand count for the Temperley-Lieb example.
    #[arg(long)]
    pub m: Option<usize>,
}

#[derive(Args, Debug)]
pub struct SpreadArgs {
    #[arg(long)]
    pub example: String,
    #[arg(long, default_value_t = 3)]
    pub degree: usize,
    #[arg(long, default_value_t = 3)]
    pub pos_bound: usize,
    /// Include starred letters.
    #[arg(long)]
    pub star: bool,
    #[command(flatten)]
    pub q: QArg,
    #[arg(long, default_value_t = 8)]
    pub m: usize,
    /// First projection index for the Temperley-Lieb model.
    #[arg(long, default_value_t = 1)]
    pub m0: usize,
    /// State weights of the tensor model.
    #[arg(long, num_args = 1.., default_values = ["1/2", "1/2"])]
    pub weights: Vec<String>,
}

#[derive(Args, Debug)]
pub struct CohomologyArgs {
    #[arg(long)]
    pub action: String,
    #[arg(long, default_value_t = 6)]
    pub dim: usize,
    #[arg(long, default_value_t = 4)]
    pub n_max: usize,
}

#[derive(Args, Debug)]
pub struct BraidArgs {
    #[arg(long)]
    pub example: String,
    #[arg(long, default_value_t = 3)]
    pub n_max: usize,
    #[arg(long, default_value_t = 4)]
    pub big_n: usize,
    #[command(flatten)]
    pub q: QArg,
    #[arg(long)]
    pub m: Option<usize>,
}

#[derive(Args, Debug)]
pub struct YbeArgs {
    #[arg(long)]
    pub rule: String,
    /// Levels of the induced action to verify when the rule is a solution.
    #[arg(long, default_value_t = 3)]
    pub n_max: usize,
}

#[derive(Args, Debug)]
pub struct TlArgs {
    #[command(flatten)]
    pub q: QArg,
    #[arg(long, default_value_t = 6)]
    pub m: usize,
}
