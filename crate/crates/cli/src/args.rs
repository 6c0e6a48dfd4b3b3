use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "nambu-forge",
    version,
    about = "Exact Nambu brackets, star, Zariski and sun products"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Emit one JSON document instead of canonical text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, env = "NAMBU_FORGE_SEED")]
    pub seed: Option<u64>,
    /// Worker threads for randomized checks.
    #[arg(long, global = true, env = "NAMBU_FORGE_JOBS")]
    pub jobs: Option<usize>,
    /// Variable names, comma separated; `q:p` declares a symplectic pair.
    #[arg(long, global = true, env = "NAMBU_FORGE_VARS")]
    pub vars: Option<String>,
    /// Highest power of nu kept in truncated results.
    #[arg(long, global = true, env = "NAMBU_FORGE_NU_ORDER")]
    pub nu_order: Option<u32>,
    /// Highest power of t kept in exponentials.
    #[arg(long, global = true, env = "NAMBU_FORGE_T_ORDER")]
    pub t_order: Option<usize>,
    /// TOML file with `nu-order`, `t-order`, `seed` and `jobs` keys.
    #[arg(long, global = true, env = "NAMBU_FORGE_CONFIG")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factor a polynomial over the rationals.
    Factor { expr: String },
    /// Star products, commutators, powers and exponentials.
    Star {
        #[arg(long, default_value = "moyal")]
        product: String,
        /// Active pair indices for partial-moyal, e.g. `0,2`.
        #[arg(long)]
        pairs: Option<String>,
        #[arg(long, value_enum, default_value_t = StarOp::Mul)]
        op: StarOp,
        /// Exponent for `--op power`.
        #[arg(long, default_value_t = 2)]
        power: u32,
        exprs: Vec<String>,
    },
    /// Evaluate a Nambu bracket.
    Nambu {
        #[arg(long, default_value = "canonical3")]
        bracket: String,
        exprs: Vec<String>,
    },
    /// Randomized Fundamental Identity check.
    CheckFi {
        #[arg(long, default_value = "canonical3")]
        bracket: String,
        #[arg(long, default_value_t = 2)]
        degree: u32,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Zariski products, the map J and the Frobenius search.
    Zariski {
        #[arg(long, value_enum, default_value_t = ZariskiOp::Mul)]
        op: ZariskiOp,
        /// Number of variables x1..xn.
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        power: u32,
        /// 1-based variable index for `--op delta`.
        #[arg(long, default_value_t = 1)]
        var: usize,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        exprs: Vec<String>,
    },
    /// Sun products and the operations built on them.
    Sun {
        #[arg(long, default_value = "coordinate")]
        rule: String,
        /// Underlying star product; defaults to su2, or moyal for moyal-standard.
        #[arg(long)]
        product: Option<String>,
        #[arg(long, value_enum, default_value_t = SunOp::Mul)]
        op: SunOp,
        #[arg(long, default_value_t = nambu_core::sun::DEFAULT_MAX_FACTORS)]
        max_factors: u32,
        exprs: Vec<String>,
    },
    /// Residual of an A- or B-equivalence between two products.
    Equiv {
        #[arg(long, value_enum, default_value_t = Mode::B)]
        mode: Mode,
        #[arg(long, default_value = "usual")]
        p1: String,
        #[arg(long, default_value = "coordinate")]
        p2: String,
        #[arg(long, default_value = "su2")]
        product: String,
        #[arg(long, value_enum, default_value_t = Trivializer::Eta)]
        trivializer: Trivializer,
        exprs: Vec<String>,
    },
    /// Harmonic-oscillator spectrum from the Weyl-quantized Hamiltonian.
    Spectrum {
        #[arg(long, default_value_t = 40)]
        dim: usize,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        #[arg(long, default_value_t = 5)]
        k: usize,
        /// Block used for the projector residuals; defaults to dim/2.
        #[arg(long)]
        band: Option<usize>,
    },
    /// Integrate Nambu dynamics with RK4.
    Evolve {
        #[arg(long, value_enum, default_value_t = System::EulerTop)]
        system: System,
        #[arg(long, default_value = "1,2,3")]
        inertia: String,
        #[arg(long, default_value = "1,0.5,0.25")]
        x0: String,
        #[arg(long, default_value_t = 1.0)]
        horizon: f64,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        /// Write the trajectory as CSV; `-` prints it instead of the report.
        #[arg(long)]
        csv: Option<String>,
    },
    /// Sun coefficient tables.
    Coeffs {
        /// Print `a(n, r)` from both the recursion and the closed form.
        #[arg(long, num_args = 2, value_names = ["N", "R"])]
        a: Option<Vec<usize>>,
        /// Print the whole table up to `(N, R)`.
        #[arg(long, num_args = 2, value_names = ["N", "R"])]
        table: Option<Vec<usize>>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StarOp {
    Mul,
    Commutator,
    Power,
    Exp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ZariskiOp {
    Zeta,
    Mul,
    Classical,
    Power,
    Delta,
    J,
    Nambu,
    Frobenius,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SunOp {
    Mul,
    ClosedForm,
    Nambu,
    Exp,
    Obstruction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Trivializer {
    Identity,
    Eta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum System {
    EulerTop,
    Nahm,
}
