use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use heckoid_core::Slope;

mod commands;

#[derive(Parser, Debug)]
#[command(name = "heckoid", version, about = "Slopes, relator words and Farey reduction for even Heckoid groups")]
pub struct Cli {
    /// Output format; `decide` defaults to json, everything else to text.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Worker threads for scans (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Group {
    /// Slope of the 2-bridge link, non-integral
    #[arg(long, allow_hyphen_values = true)]
    pub r: Slope,
    /// Index of the Heckoid group, at least 2
    #[arg(long, default_value_t = 2)]
    pub n: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Relator word u_r with its S-, CS- and T-sequences and S1/S2
    Relator {
        #[arg(allow_hyphen_values = true)]
        r: Slope,
    },
    /// S-sequence and cyclic S-sequence of a word such as "abaBAB"
    Seq { word: String },
    /// Canonical representative of the orbit of s, with witness
    Reduce {
        #[arg(allow_hyphen_values = true)]
        s: Slope,
        #[command(flatten)]
        group: Group,
    },
    /// Null-homotopy of the loop of slope s and existence of an epimorphism
    Decide {
        #[arg(allow_hyphen_values = true)]
        s: Slope,
        #[command(flatten)]
        group: Group,
    },
    /// Slopes in [0, 1) admitting an epimorphism
    Epis {
        #[command(flatten)]
        group: Group,
        #[arg(long, default_value_t = 50)]
        max_denom: u64,
    },
    /// Exhaustive checks; exit status 1 on any violation
    Verify {
        #[command(subcommand)]
        selector: Verify,
    },
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// Shape of S(r), the r~ identity, S1/S2 decomposition and forced runs
    Lemmas {
        #[arg(long, default_value_t = 60)]
        max_p: u64,
    },
    /// C(4n) and T(4) for the symmetrized relator
    Smallcancel {
        #[arg(long, default_value_t = 12)]
        max_p: u64,
        #[arg(long = "n", value_delimiter = ',', default_values_t = [2, 3])]
        indices: Vec<u32>,
    },
    /// Interval slopes never contain a forbidden pattern
    #[command(alias = "prop51")]
    Patterns {
        #[command(flatten)]
        group: Group,
        #[arg(long, default_value_t = 50)]
        max_denom: u64,
    },
    /// Orbit points versus interval slopes, against both tests
    Crosscheck {
        #[command(flatten)]
        group: Group,
        /// Denominator bound for interval slopes
        #[arg(long, default_value_t = 40)]
        max_denom: u64,
        /// Denominator bound for orbit points
        #[arg(long, default_value_t = 200)]
        orbit_max_denom: u64,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(commands::Status::Clean) => ExitCode::SUCCESS,
        Ok(commands::Status::Violations) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
