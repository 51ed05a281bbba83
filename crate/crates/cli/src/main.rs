//! Batch verification front end: germ checks, normal forms, divisibility,
//! ball construction, weak-modularity audits, dictionary conversions, and
//! building runs, with file-first JSON/DOT/text output.
//!
//! Exit codes: 0 success, 2 bad configuration, 3 parse error, 4 cap exceeded,
//! 5 verification failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod instance;
mod report;
mod run;

use run::Outcome;

#[derive(Parser)]
#[command(name = "wmlat", version, about = "lattice / Garside / weak-modularity verification runs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct OutputOpts {
    /// Base path for report files; stdout summary always printed
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format for graph exports
    #[arg(long, default_value = "text", value_parser = ["json", "dot", "text"])]
    format: String,
}

#[derive(Args, Clone)]
struct CapOpts {
    /// Hard cap on enumerated points per construction
    #[arg(long, default_value_t = 200_000)]
    caps: usize,
    /// Seed for every randomized sequence in this run
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the axioms of a germ
    Germ {
        #[command(subcommand)]
        action: GermAction,
    },
    /// Left-greedy normal form of a signed word
    Nf {
        /// Built-in germ, e.g. braid:3 or free-abelian:2
        #[arg(long)]
        germ: Option<String>,
        /// Germ file path
        #[arg(long)]
        file: Option<PathBuf>,
        /// Space-separated simples, inverses as name^-1
        #[arg(long)]
        word: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Greatest common left divisor of two positive words
    Gcd {
        #[arg(long)]
        germ: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Least common right multiple of two positive words
    Lcm {
        #[arg(long)]
        germ: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Ball of the weak Cayley graph of a germ
    CayleyBall {
        #[arg(long)]
        germ: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        radius: u32,
        #[command(flatten)]
        caps: CapOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Ball of the Δ-quotient of the weak Cayley graph
    QuotientBall {
        #[arg(long)]
        germ: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        radius: u32,
        #[command(flatten)]
        caps: CapOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Weak-modularity audit of an instance ball
    Wm {
        /// Instance: zn:N, free-abelian:N, braid:N, or building:N:Q
        #[arg(long)]
        instance: String,
        /// Audit the ℤ-quotient graph instead of the lattice graph
        #[arg(long)]
        quotient: bool,
        #[arg(long)]
        radius: u32,
        /// Also check the strengthened clique conditions (quotient balls)
        #[arg(long)]
        strong: bool,
        /// Clique size cap for the strengthened conditions
        #[arg(long, default_value_t = wmlat::wmcheck::DEFAULT_CLIQUE_CAP)]
        clique_cap: usize,
        #[command(flatten)]
        caps: CapOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Dictionary conversions between lattices, flag complexes, weak orders
    Dict {
        #[command(subcommand)]
        action: DictAction,
    },
    /// Affine building constructions
    Building {
        #[command(subcommand)]
        action: BuildingAction,
    },
    /// Re-check the counterexamples embedded in a report
    Replay {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum GermAction {
    /// Run every germ axiom check
    Check {
        #[arg(long)]
        germ: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Word-length bound for the cancellativity closure
        #[arg(long, default_value_t = 6)]
        bound: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
}

#[derive(Subcommand)]
enum DictAction {
    /// Lattice window → flag complex
    ToFlag {
        #[arg(long)]
        instance: String,
        #[arg(long)]
        radius: u32,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Flag complex file → weak order + hypothesis report
    ToOrder {
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// lattice → flag → weak order → generated order, compared on the interior
    Roundtrip {
        #[arg(long)]
        instance: String,
        #[arg(long)]
        radius: u32,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Typed triangle complex → extended flag complex
    TypedA2 {
        /// coxeter:RADIUS or building:N:Q:RADIUS
        #[arg(long)]
        instance: String,
        /// Level window lo:hi (default -6:6)
        #[arg(long, default_value = "-6:6")]
        levels: String,
        #[command(flatten)]
        output: OutputOpts,
    },
}

#[derive(Subcommand)]
enum BuildingAction {
    /// Enumerate a building ball directly
    Ball {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u8,
        #[arg(long)]
        radius: u32,
        #[command(flatten)]
        caps: CapOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Emit and check the subspace germ
    Germ {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u8,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Weak-modularity audit of a building ball
    Wm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u8,
        #[arg(long)]
        radius: u32,
        #[command(flatten)]
        caps: CapOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run::dispatch(cli.command) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(5),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
