use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ifsw::commands::{self, StaircaseArgs, SymbolicArgs, W1Args};
use ifsw::ExamplesArgs;

/// Wasserstein-1 distances between stationary measures of interval IFS:
/// validation, staircase export, cross-checked W1 reports, and order
/// diagnostics.
#[derive(Parser)]
#[command(name = "ifsw", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a system spec: ordering, image disjointness, positivity, and
    /// (given two weights lines) the weight-dominance classification.
    Validate {
        /// System spec file (`affine a b` / `qsine a b` lines + `weights ...`).
        spec: PathBuf,
    },
    /// Build a staircase and emit it as CSV (or JSON).
    Staircase {
        spec: PathBuf,
        /// Mass ceiling per cell.
        #[arg(long, default_value_t = 1e-6)]
        resolution: f64,
        /// Which weights line of the spec to use (0-based).
        #[arg(long, default_value_t = 0)]
        weights_index: usize,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also emit the power-law envelope table (two-map families only).
        #[arg(long)]
        envelope: bool,
        /// Output format.
        #[arg(long, default_value = "csv", value_parser = ["csv", "json"])]
        format: String,
    },
    /// Cross-checked W1 report between two measures.
    ///
    /// With one spec file, its first two weights lines are compared on the
    /// shared system; with two files, each contributes its system and first
    /// weights line. Exit code 1 when an applicable closed form disagrees
    /// with the numeric enclosure.
    W1 {
        spec_a: PathBuf,
        spec_b: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-6)]
        resolution: f64,
        /// Chaos-game sample count; the Monte Carlo cross-check is off
        /// when omitted.
        #[arg(long)]
        mc: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Prefix for chaos-game sample CSVs (requires --mc).
        #[arg(long)]
        samples_out: Option<PathBuf>,
        /// Run only these closed-form strategies (repeatable).
        #[arg(long = "strategy")]
        strategies: Vec<String>,
    },
    /// Run the registry of worked configurations and assert each
    /// expectation; writes per-example staircase CSVs and reports.
    Examples {
        /// Run everything (default when --id is absent).
        #[arg(long)]
        all: bool,
        /// Run a single example, e.g. `eg9`.
        #[arg(long, conflicts_with = "all")]
        id: Option<String>,
        /// Artifact directory.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-5)]
        resolution: f64,
        #[arg(long)]
        mc: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Word-order diagnostics: ordered levels, exact prefix sums, the
    /// crossing-equation search, and plateau tables.
    Symbolic {
        /// Print level n in order (with --p: exact prefix sums).
        #[arg(long)]
        level: Option<u32>,
        /// Weight for prefix sums, e.g. `1/3`.
        #[arg(long)]
        p: Option<String>,
        /// `--search k n_max`: exact crossing search for p = 1/(2k+1).
        #[arg(long, num_args = 2, value_names = ["K", "N_MAX"])]
        search: Option<Vec<u32>>,
        /// `--plateaus r m k_max`: plateau table for p = 1/(2m+1).
        #[arg(long, num_args = 3, value_names = ["R", "M", "K_MAX"])]
        plateaus: Option<Vec<String>>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { spec } => commands::run_validate(&spec),
        Command::Staircase { spec, resolution, weights_index, out, envelope, format } => {
            commands::run_staircase(&StaircaseArgs {
                spec,
                resolution,
                weights_index,
                out,
                envelope,
                json: format == "json",
            })
        }
        Command::W1 { spec_a, spec_b, resolution, mc, seed, out, samples_out, strategies } => {
            commands::run_w1(&W1Args {
                spec_a,
                spec_b,
                resolution,
                mc,
                seed,
                out,
                samples_out,
                strategies,
            })
        }
        Command::Examples { all: _, id, out, resolution, mc, seed } => {
            commands::run_examples(&ExamplesArgs { id, out, resolution, mc, seed })
        }
        Command::Symbolic { level, p, search, plateaus } => {
            let args = match (level, search, plateaus) {
                (Some(n), None, None) => SymbolicArgs::Level { n, p },
                (None, Some(s), None) => SymbolicArgs::Search { k: s[0], n_max: s[1] },
                (None, None, Some(t)) => {
                    let m: u32 = match t[1].parse() {
                        Ok(m) => m,
                        Err(_) => {
                            eprintln!("error: M must be a positive integer");
                            return ExitCode::from(commands::EXIT_PARSE);
                        }
                    };
                    let k_max: usize = match t[2].parse() {
                        Ok(k) => k,
                        Err(_) => {
                            eprintln!("error: K_MAX must be a nonnegative integer");
                            return ExitCode::from(commands::EXIT_PARSE);
                        }
                    };
                    SymbolicArgs::Plateaus { r: t[0].clone(), m, k_max }
                }
                _ => {
                    eprintln!("error: pick exactly one of --level, --search, --plateaus");
                    return ExitCode::from(commands::EXIT_PARSE);
                }
            };
            commands::run_symbolic(&args)
        }
    };

    match result {
        Ok((stdout, code)) => {
            print!("{stdout}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
