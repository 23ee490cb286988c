//! `kuznetsov`: command-line front end of `kuznetsov-core`.
//!
//! Output is JSON on stdout (CSV for `families --report csv`). Exit codes:
//! 0 success, 2 rejected input (the violated precondition is named on
//! stderr), 1 numeric-precision failure or a failed check suite.

mod checks;
mod commands;
mod config;
mod region_spec;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kuznetsov_core::Error;

use crate::config::{OutputFormat, ParamSpec, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "kuznetsov", version, about = "Computable ingredients of Kuznetsov-type sum formulas over Q and real quadratic fields")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// `Q` or `Q(sqrt m)`.
    #[arg(long, global = true, default_value = "Q(sqrt 5)")]
    field: String,
    /// Level ideal by generators, e.g. `(2)` or `(2, 1+w)`.
    #[arg(long, global = true, default_value = "(1)")]
    level: String,
    /// `trivial`, or `g1=v1;g2=v2` (turns in Q/Z on unit generators mod the level).
    #[arg(long, global = true, default_value = "trivial")]
    chi: String,
    /// Analysis constants `tau=…,a=…,delta=…,gamma=…`.
    #[arg(long, global = true, default_value = "tau=0.3,a=3,delta=0.01,gamma=0.45")]
    params: String,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Seed of every random stream.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (the flag wins over the environment variable).
    #[arg(long, global = true, env = "KUZNETSOV_THREADS")]
    threads: Option<usize>,
    /// Print the resolved run configuration (JSON) on stderr.
    #[arg(long, global = true)]
    print_config: bool,
    /// A configuration printed by `--print-config`; replaces the flags above.
    #[arg(long, global = true)]
    config: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Twisted Kloosterman sum `S_χ(r, r′; c)` with trivial and Weil-shape bounds.
    Kloosterman(commands::KloostermanArgs),
    /// Truncated Kloosterman series with a tail estimate.
    Ksum(commands::KsumArgs),
    /// Plancherel (`npl`) or reference (`nv`) measure of a region.
    Measure(commands::MeasureArgs),
    /// `ν̃_1` of a region family: closed form, published form, quadrature or Monte Carlo.
    RegionVolume(commands::RegionVolumeArgs),
    /// Bessel transform of a test function.
    Bessel(commands::BesselArgs),
    /// Error budget of a set family along a grid of `t`.
    Budget(commands::BudgetArgs),
    /// Main-term tables and power-law fits of the special families.
    Families(commands::FamiliesArgs),
    /// Weighted count of a synthetic spectrum against the main term.
    SynthCount(commands::SynthArgs),
    /// Run a named invariant suite.
    Check(checks::CheckArgs),
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidInput(_) => 2,
        Error::Precision(_) | Error::Unavailable(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = cli.global;
    let cfg = match &g.config {
        Some(text) => RunConfig::parse(text),
        None => g.params.parse::<ParamSpec>().map(|params| RunConfig {
            field: g.field,
            level: g.level,
            chi: g.chi,
            params,
            format: g.format,
            seed: g.seed,
            threads: g.threads,
        }),
    };
    let cfg = match cfg {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if g.print_config {
        eprintln!("{}", cfg.print());
    }
    if let Some(n) = cfg.threads {
        if n == 0 {
            eprintln!("error: invalid input: thread count must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot start the thread pool: {e}");
            return ExitCode::from(1);
        }
    }
    let result = match &cli.command {
        Command::Kloosterman(a) => commands::kloosterman(&cfg, a),
        Command::Ksum(a) => commands::ksum(&cfg, a),
        Command::Measure(a) => commands::measure(&cfg, a),
        Command::RegionVolume(a) => commands::region_volume(&cfg, a),
        Command::Bessel(a) => commands::bessel(&cfg, a),
        Command::Budget(a) => commands::budget(&cfg, a),
        Command::Families(a) => commands::families(&cfg, a),
        Command::SynthCount(a) => commands::synth_count(&cfg, a),
        Command::Check(a) => checks::run(&cfg, a),
    };
    match result {
        Ok(out) => {
            // A closed pipe (`kuznetsov … | head`) is not an error of the computation.
            if let Err(e) = writeln!(std::io::stdout().lock(), "{}", out.text) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: cannot write output: {e}");
                    return ExitCode::from(1);
                }
            }
            ExitCode::from(if out.success { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
