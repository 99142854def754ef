use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "auk",
    version,
    about = "Universal Koszulity checks for quadratic algebras over prime fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Exterior,
    Cd1,
    Polynomial,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Exhaustive,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Model degree cap (raised to fit the other caps when needed).
    #[arg(long, default_value_t = 4)]
    pub cap: usize,
    /// Highest colon-ideal degree compared.
    #[arg(long, default_value_t = 3)]
    pub colon_cap: usize,
    /// Highest degree of the union-equality check.
    #[arg(long, default_value_t = 4)]
    pub union_cap: usize,
    #[arg(long, value_enum, default_value_t = StrategyArg::Exhaustive)]
    pub strategy: StrategyArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = auk_core::koszul::DEFAULT_SAMPLES)]
    pub samples: usize,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a presentation file.
    Gen {
        #[arg(value_enum)]
        kind: Kind,
        n: usize,
        p: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Hilbert dimensions through the cap.
    Dims {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Universal Koszulity.
    CheckUk {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Asymptotic universal Koszulity of a filtered system.
    CheckAuk {
        algebra: PathBuf,
        system: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Whether a map `Q -> A` identifies Q with the subalgebra its degree-1 image generates.
    CheckCapture {
        algebra: PathBuf,
        quotient: PathBuf,
        map: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Local-global criterion from a TOML manifest.
    CheckLocalGlobal {
        algebra: PathBuf,
        manifest: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Low-degree colimit and Galois criterion for an inflation system manifest.
    CheckGalois {
        manifest: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Split-relation descent of universal Koszulity to a subalgebra.
    CheckDescent {
        algebra: PathBuf,
        split: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Re-check the witness in a machine report from check-uk.
    Verify {
        algebra: PathBuf,
        report: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
}
