//! Command-line surface: `gen`, `run`, and `bench` subcommands.
//!
//! Exit codes: 0 on success, 2 when the instance is infeasible, 3 on
//! input errors, 4 when a benchmark had to skip exhaustive rows because
//! the instance exceeded the enumeration guard.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{run_suite, to_csv, BenchSuite, RowStatus};
use crate::error::SolveError;
use crate::fairness::FairnessSpec;
use crate::io::{
    load_constraints, load_csv, write_points_csv, ColorMap, ConfigEcho, InfeasibleDoc, ResultDoc,
};
use crate::prune::PruneMode;
use crate::solver::{solve_timed, BreachConfig, RepeatSchedule, Variant};
use crate::synth::gen_synthetic;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_INPUT_ERROR: i32 = 3;
pub const EXIT_ORACLE_GUARD: i32 = 4;

#[derive(Parser)]
#[command(
    name = "breach",
    about = "Fair max-min diversification: pick k spread-out points under per-color bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic Gaussian-cloud instance as CSV.
    Gen(GenArgs),
    /// Solve an instance from CSV and write a JSON result.
    Run(RunArgs),
    /// Run a benchmark suite over synthetic instances, emitting CSV.
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Number of points.
    #[arg(long)]
    n: usize,
    /// Number of colors.
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Slow,
    Fast,
}

#[derive(Clone, Copy, ValueEnum)]
enum PruneModeArg {
    Arbitrary,
    Furthest,
}

#[derive(Args)]
struct RunArgs {
    /// Input CSV with a header row.
    #[arg(long)]
    input: PathBuf,
    /// Name of the categorical color column.
    #[arg(long, default_value = "color")]
    color_column: String,
    /// Feature columns (default: all except the color column).
    #[arg(long, value_delimiter = ',')]
    feature_columns: Option<Vec<String>>,
    /// Selection size.
    #[arg(long)]
    k: usize,
    /// Slack for proportional bounds (ignored with --constraints).
    #[arg(long, default_value_t = 0.2)]
    alpha: f64,
    /// Explicit bounds file with one `color_id,lower,upper` line per color.
    #[arg(long)]
    constraints: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = VariantArg::Fast)]
    variant: VariantArg,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Decomposition attempts per grid candidate.
    #[arg(long, default_value_t = 3, conflicts_with = "theory_t")]
    dec_repeats: usize,
    /// Use the theoretical budget of T * m attempts instead.
    #[arg(long)]
    theory_t: Option<usize>,
    /// Disable the gamma2 sweep and use the variant's base threshold only.
    #[arg(long)]
    no_gamma2_sweep: bool,
    #[arg(long, value_enum, default_value_t = PruneModeArg::Furthest)]
    prune_mode: PruneModeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; the result is identical for any count.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Output JSON path (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    n_values: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    m_values: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    k_values: Vec<usize>,
    #[arg(long, default_value_t = 5)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Output CSV path (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses arguments and runs the requested command, returning the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are successes, bad arguments are input errors
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT_ERROR } else { EXIT_OK };
        }
    };
    match cli.command {
        Command::Gen(args) => run_gen(args),
        Command::Run(args) => run_solve(args),
        Command::Bench(args) => run_bench(args),
    }
}

fn run_gen(args: GenArgs) -> i32 {
    if args.m < 1 || args.n < args.m {
        eprintln!("error: need n >= m >= 1");
        return EXIT_INPUT_ERROR;
    }
    let dataset = gen_synthetic(args.n, args.m, args.seed);
    match write_points_csv(&args.out, &dataset, &ColorMap::numeric(args.m)) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT_ERROR
        }
    }
}

fn run_solve(args: RunArgs) -> i32 {
    let (dataset, colors) = match load_csv(
        &args.input,
        &args.color_column,
        args.feature_columns.as_deref(),
    ) {
        Ok(loaded) => loaded,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };

    let config = BreachConfig {
        variant: match args.variant {
            VariantArg::Slow => Variant::Slow,
            VariantArg::Fast => Variant::Fast,
        },
        epsilon: args.epsilon,
        repeats: match args.theory_t {
            Some(t) => RepeatSchedule::TheoryTimesM(t),
            None => RepeatSchedule::Practical(args.dec_repeats),
        },
        gamma2_sweep: !args.no_gamma2_sweep,
        prune_mode: match args.prune_mode {
            PruneModeArg::Arbitrary => PruneMode::ArbitraryOrder,
            PruneModeArg::Furthest => PruneMode::FurthestPoint,
        },
        master_seed: args.seed,
        threads: args.threads.max(1),
    };

    let (fairness_desc, spec) = if let Some(path) = &args.constraints {
        let (lower, upper) = match load_constraints(path, dataset.m()) {
            Ok(bounds) => bounds,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_INPUT_ERROR;
            }
        };
        (
            format!("explicit:{}", path.display()),
            FairnessSpec::new(args.k, lower, upper),
        )
    } else {
        (
            format!("proportional:{}", args.alpha),
            FairnessSpec::proportional(&dataset, args.k, args.alpha),
        )
    };
    let echo = ConfigEcho::new(
        &args.input.display().to_string(),
        args.k,
        fairness_desc,
        &config,
    );
    let spec = match spec {
        Ok(spec) => spec,
        Err(e) => {
            // the bounds themselves admit no set of size k
            return emit_infeasible(&args.out, &e.to_string(), echo);
        }
    };
    if let Err(reason) = spec.feasibility_precheck(&dataset) {
        return emit_infeasible(&args.out, &reason.to_string(), echo);
    }

    let (result, timings) = solve_timed(&dataset, &spec, &config);
    match result {
        Ok(solution) => {
            assert!(
                spec.validate(&dataset, &solution.indices)
                    && solution.score == dataset.diversity(&solution.indices),
                "emitted solutions must revalidate"
            );
            let doc = ResultDoc::new(&solution, &dataset, &spec, &colors, timings, echo);
            emit(&args.out, &doc.to_json())
        }
        Err(SolveError::Infeasible(reason)) => {
            emit_infeasible(&args.out, &reason.to_string(), echo)
        }
    }
}

fn emit_infeasible(out: &Option<PathBuf>, reason: &str, config: ConfigEcho) -> i32 {
    let doc = InfeasibleDoc {
        infeasible: reason.to_string(),
        config,
    };
    let json = serde_json::to_string_pretty(&doc).expect("document serializes");
    let code = emit(out, &json);
    if code == EXIT_OK {
        EXIT_INFEASIBLE
    } else {
        code
    }
}

fn emit(out: &Option<PathBuf>, payload: &str) -> i32 {
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, format!("{payload}\n")) {
                eprintln!("error: {e}");
                return EXIT_INPUT_ERROR;
            }
            EXIT_OK
        }
        None => {
            println!("{payload}");
            EXIT_OK
        }
    }
}

fn run_bench(args: BenchArgs) -> i32 {
    let suite = BenchSuite {
        n_values: args.n_values,
        m_values: args.m_values,
        k_values: args.k_values,
        repetitions: args.reps.max(1),
        seed: args.seed,
        threads: args.threads.max(1),
    };
    let rows = run_suite(&suite);
    let skipped = rows.iter().any(|r| r.status == RowStatus::SkippedGuard);
    let csv = to_csv(&rows);
    let code = emit(&args.out, csv.trim_end());
    if code != EXIT_OK {
        code
    } else if skipped {
        EXIT_ORACLE_GUARD
    } else {
        EXIT_OK
    }
}
