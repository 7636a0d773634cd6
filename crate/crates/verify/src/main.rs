use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use yangian_verify::params::parse_point_sets;
use yangian_verify::{
    batch_exit_code, compute, run_jobs, run_suite, Bounds, ComputeRequest, Guards, Params, RunConfig, Status, Suite, Target, VerifyError,
};

#[derive(Parser)]
#[command(name = "yangian-verify", version, about = "Exact verification suites and computations for the Yangian of gl(M|N)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the suites with their default bounds.
    List,
    /// Run one named suite and print its report.
    Check {
        /// Suite name; see `list`.
        suite: String,
        #[command(flatten)]
        dims: DimArgs,
        #[command(flatten)]
        bounds: BoundArgs,
        #[arg(long, default_value_t = Guards::default().abstract_max)]
        guard_abstract: usize,
        #[arg(long, default_value_t = Guards::default().tensor_max)]
        guard_tensor: usize,
        /// Print the JSON report instead of the one-line summary.
        #[arg(long)]
        json: bool,
    },
    /// Print a series or element.
    Compute {
        /// One of z, berezinian, qdet, c-series, normal-form, apply-map.
        target: String,
        /// Input element for normal-form and apply-map.
        input: Option<String>,
        #[command(flatten)]
        dims: DimArgs,
        #[arg(long, default_value_t = 4)]
        order: usize,
        /// Map for apply-map: eta_M, antipode_S, transpose_T or omega.
        #[arg(long)]
        map: Option<String>,
    },
    /// Run the suite matrix of a configuration file.
    RunAll {
        #[arg(long)]
        config: PathBuf,
        /// Only suites whose name contains this substring.
        #[arg(long)]
        filter: Option<String>,
        /// Overrides the configured output path.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct DimArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    r_max: Option<usize>,
    #[arg(long)]
    s_max: Option<usize>,
    #[arg(long)]
    legs: Option<usize>,
    /// Comma-separated rationals; `;` separates point sets.
    #[arg(long, allow_hyphen_values = true)]
    points: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
}

impl From<BoundArgs> for Bounds {
    fn from(b: BoundArgs) -> Self {
        Bounds { order: b.order, r_max: b.r_max, s_max: b.s_max, legs: b.legs, points: b.points, seed: b.seed }
    }
}

fn list_suites() {
    let mut out = std::io::stdout().lock();
    for s in Suite::ALL {
        let defaults = serde_json::to_string(&s.defaults()).expect("bounds serialize");
        // a closed pipe ends the listing quietly
        if writeln!(out, "{:<20} {}\n{:<20} defaults {defaults}; {}", s.name(), s.anchor(), "", s.bound_help()).is_err() {
            return;
        }
    }
}

fn run(cli: Cli) -> Result<i32, VerifyError> {
    match cli.command {
        Command::List => {
            list_suites();
            Ok(0)
        }
        Command::Check { suite, dims, bounds, guard_abstract, guard_tensor, json } => {
            let suite: Suite = suite.parse()?;
            if let Some(p) = &bounds.points {
                parse_point_sets(p).map_err(VerifyError::Usage)?;
            }
            let guards = Guards { abstract_max: guard_abstract, tensor_max: guard_tensor };
            let report = run_suite(suite, &Params::with(dims.m, dims.n, bounds.into()), &guards);
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
            } else {
                println!("{}", report.summary());
            }
            Ok(match report.status {
                Status::Pass => 0,
                Status::Fail | Status::Error => 1,
                Status::Skipped => 2,
            })
        }
        Command::Compute { target, input, dims, order, map } => {
            let target: Target = target.parse()?;
            let req = ComputeRequest { m: dims.m, n: dims.n, order, input, map };
            println!("{}", compute(target, &req)?);
            Ok(0)
        }
        Command::RunAll { config, filter, output } => {
            let cfg = RunConfig::load(&config)?;
            let jobs = cfg.jobs(filter.as_deref())?;
            let reports = run_jobs(&jobs, &cfg.guards, cfg.parallelism)?;
            let mut err = std::io::stderr().lock();
            for r in &reports {
                let _ = writeln!(err, "{}", r.summary());
            }
            let json = serde_json::to_string_pretty(&reports).expect("reports serialize");
            match output.or(cfg.output) {
                Some(path) => {
                    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                        std::fs::create_dir_all(dir).map_err(|e| VerifyError::Config(format!("{}: {e}", dir.display())))?;
                    }
                    std::fs::write(&path, json + "\n").map_err(|e| VerifyError::Config(format!("{}: {e}", path.display())))?;
                }
                None => println!("{json}"),
            }
            Ok(batch_exit_code(&reports))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
