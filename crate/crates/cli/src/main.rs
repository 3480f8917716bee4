use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::anyhow;
use clap::{Args, Parser, Subcommand};
use dkibo::benchmark::Benchmark;
use dkibo::optimizer::SearchOptions;
use dkibo::{AcquisitionConfig, AcquisitionKind, CampaignConfig, RegressorKind, RegressorSpec, SearchSpace, Variant};
use dkibo_cli::asktell::{self, SurfaceSpec};
use dkibo_cli::exit::{Code, Failure, OrExit};
use dkibo_cli::{output, run_experiments, ExperimentFile};

#[derive(Parser)]
#[command(
    name = "dkibo",
    version,
    about = "Bayesian optimization with an injected corrective model"
)]
struct Cli {
    /// Log progress to stderr (RUST_LOG overrides).
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every experiment of a JSON experiment file and write CSVs.
    Run {
        config: PathBuf,
        /// Output directory [env: DKIBO_OUTPUT_DIR] [default: from the file, else ./results]
        #[arg(short, long)]
        output_dir: Option<PathBuf>,
        /// Parallel trials [env: DKIBO_JOBS] [default: from the file, else all cores]
        #[arg(short, long)]
        jobs: Option<usize>,
    },
    /// Create a state file for an ask/tell campaign.
    Init(InitArgs),
    /// Print the next point to evaluate (12 significant digits, comma-separated).
    Suggest {
        #[arg(short, long)]
        state: PathBuf,
    },
    /// Record an evaluation. y is maximized.
    Observe {
        #[arg(short, long)]
        state: PathBuf,
        /// Comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: f64,
    },
    /// Dump the GP mean and deviation, the corrective model and the augmented
    /// acquisition on a grid, as CSV.
    Surface {
        #[arg(short, long)]
        state: PathBuf,
        /// Points per varied dimension.
        #[arg(short, long, default_value_t = 50)]
        resolution: usize,
        /// Two dimensions to vary, `I,J`; required when the space has more than two.
        #[arg(long)]
        slice: Option<String>,
        /// Values of the fixed dimensions (a full point) [default: best observed point]
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        /// Write here instead of stdout.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Summarize trajectory CSVs into tables of median±std.
    Report {
        #[arg(required = true)]
        trajectories: Vec<PathBuf>,
        /// Also write the summary CSVs into this directory.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InitArgs {
    #[arg(short, long)]
    state: PathBuf,
    /// Take the search space from a built-in benchmark.
    #[arg(long, conflicts_with_all = ["lower", "upper"])]
    benchmark: Option<String>,
    /// Lower bounds, comma-separated.
    #[arg(long, allow_hyphen_values = true, requires = "upper")]
    lower: Option<String>,
    /// Upper bounds, comma-separated.
    #[arg(long, allow_hyphen_values = true, requires = "lower")]
    upper: Option<String>,
    #[arg(long, default_value = "dkibo")]
    variant: Variant,
    #[arg(long, default_value = "ucb")]
    acquisition: AcquisitionKind,
    #[arg(long, default_value_t = 2.6)]
    kappa: f64,
    #[arg(long, default_value_t = 0.0)]
    xi_offset: f64,
    /// Stall threshold for switching the corrective term off.
    #[arg(long, default_value_t = 0.05)]
    epsilon: f64,
    /// random_forest, gradient_boosting, linear or none.
    #[arg(long, default_value = "random_forest")]
    regressor: String,
    #[arg(long, default_value_t = 5)]
    n_init: usize,
    #[arg(long, default_value_t = 100)]
    i_max: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Replace an existing state file.
    #[arg(long)]
    force: bool,
}

fn regressor(name: &str) -> Result<RegressorSpec, Failure> {
    let kind: RegressorKind = serde_json::from_value(serde_json::Value::String(name.to_string()))
        .map_err(|_| Failure::new(Code::Usage, anyhow!("unknown regressor `{name}`")))?;
    Ok(RegressorSpec::of_kind(kind))
}

fn init(a: InitArgs) -> Result<(), Failure> {
    let space = match (&a.benchmark, &a.lower, &a.upper) {
        (Some(b), _, _) => Benchmark::by_name(b)
            .map_err(|e| Failure::from_core(e, Code::Config))?
            .space()
            .clone(),
        (None, Some(l), Some(u)) => {
            let lower = asktell::parse_point(l).or_exit(Code::Usage)?;
            let upper = asktell::parse_point(u).or_exit(Code::Usage)?;
            SearchSpace::new(lower, upper).map_err(|e| Failure::from_core(e, Code::Config))?
        }
        _ => {
            return Err(Failure::new(
                Code::Usage,
                anyhow!("give --benchmark or both --lower and --upper"),
            ))
        }
    };
    let config = CampaignConfig {
        space,
        variant: a.variant,
        acquisition: AcquisitionConfig {
            kind: a.acquisition,
            kappa: a.kappa,
            xi_offset: a.xi_offset,
            epsilon: a.epsilon,
            i_max: a.i_max.max(1),
            schedule_enabled: true,
        },
        regressor: regressor(&a.regressor)?,
        n_init: a.n_init,
        i_max: a.i_max,
        seed: a.seed,
        search: SearchOptions::default(),
    };
    asktell::init(&a.state, config, a.force)?;
    Ok(())
}

fn run(config: PathBuf, output_dir: Option<PathBuf>, jobs: Option<usize>) -> Result<(), Failure> {
    let file = ExperimentFile::load(&config).or_exit(Code::Config)?;
    let dir = match output_dir {
        Some(d) => d,
        None => file.resolved_output_dir(&PathBuf::from("results")),
    };
    let jobs = match jobs {
        Some(0) => return Err(Failure::new(Code::Usage, anyhow!("--jobs must be at least 1"))),
        Some(n) => n,
        None => file.resolved_jobs().or_exit(Code::Config)?,
    };
    let report = run_experiments(&file, &dir, jobs).or_exit(Code::Internal)?;
    if let Some(e) = report.failure {
        return Err(Failure::new(
            Code::Objective,
            anyhow!("{e}; partial results kept in {} (see manifest.json)", dir.display()),
        ));
    }
    let groups =
        output::group_rows(&output::read_trajectories(&dir.join(output::TRAJECTORIES)).or_exit(Code::Internal)?);
    print!("{}", output::Table::final_simple_regret(&groups).render());
    Ok(())
}

fn report(paths: Vec<PathBuf>, out: Option<PathBuf>) -> Result<(), Failure> {
    let mut rows = Vec::new();
    for p in &paths {
        rows.extend(output::read_trajectories(p).or_exit(Code::Config)?);
    }
    let groups = match &out {
        Some(dir) => {
            std::fs::create_dir_all(dir).or_exit(Code::Internal)?;
            output::write_summaries(&rows, dir).or_exit(Code::Internal)?
        }
        None => output::group_rows(&rows),
    };
    println!("simple regret (median±std)");
    print!("{}", output::Table::final_simple_regret(&groups).render());
    println!("\ncumulative mean regret (median±std)");
    print!("{}", output::Table::final_cmr(&groups).render());
    Ok(())
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Run {
            config,
            output_dir,
            jobs,
        } => run(config, output_dir, jobs),
        Command::Init(a) => init(a),
        Command::Suggest { state } => {
            let x = asktell::suggest(&state)?;
            println!("{}", asktell::format_point(&x));
            Ok(())
        }
        Command::Observe { state, x, y } => {
            let x = asktell::parse_point(&x).or_exit(Code::Usage)?;
            asktell::observe(&state, x, y)?;
            Ok(())
        }
        Command::Surface {
            state,
            resolution,
            slice,
            at,
            out,
        } => {
            let spec = SurfaceSpec {
                resolution,
                slice: slice
                    .as_deref()
                    .map(asktell::parse_slice)
                    .transpose()
                    .or_exit(Code::Usage)?,
                at: at
                    .as_deref()
                    .map(asktell::parse_point)
                    .transpose()
                    .or_exit(Code::Usage)?,
            };
            let mut sink: Box<dyn Write> = match out {
                Some(p) => Box::new(std::fs::File::create(p).or_exit(Code::Internal)?),
                None => Box::new(std::io::stdout().lock()),
            };
            asktell::surface(&state, &spec, &mut sink)?;
            Ok(())
        }
        Command::Report { trajectories, out } => report(trajectories, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.verbose { "info" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code as u8)
        }
    }
}
