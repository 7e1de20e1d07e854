use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pretzel_cli::commands::{
    cmd_check, cmd_invariants, cmd_slopes, cmd_sweep, emit, SweepArgs,
};
use pretzel_cli::{exit, CliError, Outcome};
use pretzel_core::pcsc::CheckOptions;

/// Invariants of pretzel knots and the cosmetic surgery check.
#[derive(Parser)]
#[command(name = "pretzel", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Crossing cap for the state-sum Jones oracle (overrides PRETZEL_BRACKET_CAP).
    #[arg(long, global = true)]
    bracket_cap: Option<u64>,
    /// Do not settle knots with at most 16 crossings by the census citation.
    #[arg(long, global = true)]
    no_census: bool,
    /// Record per-phase wall-clock seconds in the report.
    #[arg(long, global = true)]
    timings: bool,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Every invariant of one pretzel knot or link, by every available method.
    Invariants {
        /// Parameters such as "(-2,3,7)".
        #[arg(allow_hyphen_values = true)]
        params: String,
    },
    /// Decide the cosmetic surgery question for one pretzel knot.
    Check {
        #[arg(allow_hyphen_values = true)]
        params: String,
    },
    /// Check every canonical pretzel knot with bounded parameters.
    Sweep {
        #[arg(long)]
        max_abs: i64,
        #[arg(long)]
        max_n: usize,
        /// One CSV row per knot.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Only search the five-strand residual locus.
        #[arg(long)]
        only_residual_locus: bool,
        /// Append-only cache of finished rows, reused on later runs.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Slopes p/q allowed by the q^2 = -1 (mod p) condition.
    Slopes {
        p: u64,
        /// Largest q to list.
        #[arg(long, default_value_t = 100)]
        cap: u64,
    },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let mut opts = CheckOptions::default();
    if let Some(cap) = cli.global.bracket_cap {
        opts.bracket_cap = cap;
    }
    opts.use_census = !cli.global.no_census;
    let timings = cli.global.timings;
    let outcome = match cli.command {
        Command::Invariants { params } => cmd_invariants(&params, &opts, timings)?,
        Command::Check { params } => cmd_check(&params, &opts, timings)?,
        Command::Sweep {
            max_abs,
            max_n,
            csv,
            jobs,
            only_residual_locus,
            cache,
        } => {
            if let Some(j) = jobs {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(j.max(1))
                    .build_global()
                    .map_err(|e| CliError::Usage(e.to_string()))?;
            }
            let args = SweepArgs {
                max_abs,
                max_n,
                csv,
                cache,
                only_residual_locus,
                timings,
            };
            cmd_sweep(&args, &opts)?
        }
        Command::Slopes { p, cap } => cmd_slopes(p, cap)?,
    };
    emit(&outcome.doc, cli.global.out.as_ref())?;
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::PARSE } else { exit::SUCCESS };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(o) => ExitCode::from(o.exit_code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
