//! Thin CLI over the library: parses arguments, calls one experiment and
//! prints its report.  Exit codes: 0 success, 1 validation error,
//! 2 resource cap, 3 property failure.

use abels::cli::{
    cmd_building_ball_with_budget, cmd_finiteness, cmd_fixed_points_with_budget,
    cmd_slice_homology_with_budget, cmd_verify, render_human, CliError, DEFAULT_CAP,
    DEFAULT_TIME_BUDGET,
};
use abels::lattice::Model;
use abels::verify::Suite;
use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "abels",
    about = "Finiteness lengths of generalized Abels groups and p-adic building experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format for the report on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Human,
}

#[derive(Subcommand)]
enum Command {
    /// Classical and Bredon finiteness lengths from the defining vectors.
    Finiteness {
        /// First defining vector, e.g. 1,0,0
        #[arg(long, allow_hyphen_values = true)]
        w1: String,
        /// Second defining vector, e.g. 0,0,-1
        #[arg(long, allow_hyphen_values = true)]
        w2: String,
        /// Cross-check the search engine against the subgroup oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Experiments on finite truncations of the (extended) building.
    Building {
        #[command(subcommand)]
        experiment: Building,
        /// Per-experiment wall-clock budget in seconds.
        #[arg(long, global = true, default_value_t = DEFAULT_TIME_BUDGET)]
        time_budget: u64,
    },
    /// Run the randomized property suites.
    Verify {
        /// invariants | lattice | complex | homology | all
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum Building {
    /// Vertex and simplex counts of a ball.
    Ball {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        radius: usize,
        /// extended | quotient
        #[arg(long, default_value = "quotient")]
        model: Model,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Height vector for a height histogram, e.g. 1,0,-1
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
        /// Write the 1-skeleton as a DOT file.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the full complex as JSON.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Reduced homology of a height-interval full subcomplex.
    SliceHomology {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        radius: usize,
        #[arg(long, default_value = "quotient")]
        model: Model,
        /// Height vector, e.g. 1,-1
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        /// Closed height interval a:b with exact rational endpoints.
        #[arg(long, allow_hyphen_values = true)]
        interval: String,
        /// Restrict to vertices whose full link lies in the ball.
        #[arg(long)]
        deep: bool,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Fixed vertices of diagonal involutions and their product structure.
    FixedPoints {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        radius: usize,
        /// Whitespace-separated sign vectors, e.g. "+-" or "++-- +-+-"
        #[arg(long, allow_hyphen_values = true)]
        signs: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        deep: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = match &cli.command {
        Command::Finiteness { w1, w2, oracle } => cmd_finiteness(w1, w2, *oracle),
        Command::Building {
            experiment,
            time_budget,
        } => match experiment {
            Building::Ball {
                p,
                dim,
                radius,
                model,
                cap,
                w,
                dot,
                dump,
            } => cmd_building_ball_with_budget(
                *p,
                *dim,
                *radius,
                *model,
                *cap,
                w.as_deref(),
                dot.as_ref(),
                dump.as_ref(),
                *time_budget,
            ),
            Building::SliceHomology {
                p,
                dim,
                radius,
                model,
                w,
                interval,
                deep,
                cap,
            } => cmd_slice_homology_with_budget(
                *p,
                *dim,
                *radius,
                *model,
                w,
                interval,
                *deep,
                *cap,
                *time_budget,
            ),
            Building::FixedPoints {
                p,
                dim,
                radius,
                signs,
                cap,
                deep,
            } => cmd_fixed_points_with_budget(*p, *dim, *radius, signs, *cap, *deep, *time_budget),
        },
        Command::Verify { suite, seed } => match suite.parse::<Suite>() {
            Ok(s) => cmd_verify(s, *seed),
            Err(e) => Err(CliError::Validation(e)),
        },
    };
    let elapsed = start.elapsed();
    match result {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string(&report).expect("valid json")),
                Format::Human => print!("{}", render_human(&report)),
            }
            eprintln!("# elapsed: {elapsed:?}");
        }
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("# elapsed: {elapsed:?}");
            let code = match e {
                CliError::Validation(_) => 1,
                CliError::Cap(_) => 2,
                CliError::Property(_) => 3,
            };
            std::process::exit(code);
        }
    }
}
