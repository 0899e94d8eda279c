//! Command-line front end: argument parsing, validation, dispatch to the
//! experiment runners, and report output.
//!
//! Exit codes: 0 when every embedded check passes, 1 when a check fails or
//! an experiment aborts, 2 for configuration errors.

use clap::{Parser, Subcommand};
use diffpoly::{parse_rational, rational_to_f64, Rat};
use fputlab::report::{emit_report, Format, Report};
use fputlab::runners::{
    parse_field, run_compare_lattice, run_evolve, run_residual_scan, run_solve, run_toda_scan,
    run_verify_hierarchy, run_verify_tables, FieldSel,
};
use std::path::PathBuf;
use std::process::ExitCode;

/// Environment variable supplying the default output root.
const OUT_ENV: &str = "FPUTLAB_OUT";

#[derive(Parser)]
#[command(
    name = "fputlab",
    version,
    about = "Long-wave analysis toolkit for nonlinear mass-spring chains",
    propagate_version = true
)]
struct Cli {
    /// Output directory for report files (default: $FPUTLAB_OUT, then ".").
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Companion file format written next to the JSON report.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized initial data (subcommands without randomness
    /// ignore it); omitted means deterministic built-in data.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute all frozen bracket tables and compare them exactly.
    VerifyTables,
    /// Check commutation and conservation across the integrable hierarchy.
    VerifyHierarchy,
    /// Run the two-stage normal-form solve for one chain.
    Solve {
        /// Cubic coupling (exact rational, e.g. `1` or `3/2`).
        #[arg(long, default_value = "1")]
        alpha: String,
        /// Quartic coupling (exact rational); incompatible with --toda.
        #[arg(long)]
        beta: Option<String>,
        /// Quintic coupling (exact rational); incompatible with --toda.
        #[arg(long)]
        gamma: Option<String>,
        /// Use the exponential-potential couplings derived from alpha.
        #[arg(long)]
        toda: bool,
        /// Free gauge coefficient of the second-stage solve.
        #[arg(long, default_value = "0")]
        lambda4: String,
    },
    /// Scan the obstruction over a coupling grid and its zero-level curve.
    TodaScan {
        /// Cubic coupling (exact rational).
        #[arg(long, default_value = "1")]
        alpha: String,
    },
    /// Measure convergence rates of the slaving defect, the two-wave
    /// expansion ladder, and the half-shift expansion.
    ResidualScan {
        /// Spacing for the defect sweep (exact rational; repeatable).
        #[arg(long = "h", value_name = "SPACING")]
        h: Vec<String>,
        /// Number of grid points.
        #[arg(long, default_value_t = 256)]
        grid: usize,
        /// Cubic coupling (exact rational, nonzero).
        #[arg(long, default_value = "1")]
        alpha: String,
        /// Quartic coupling (exact rational).
        #[arg(long, default_value = "1/2")]
        beta: String,
        /// Quintic coupling (exact rational).
        #[arg(long, default_value = "-1/4")]
        gamma: String,
    },
    /// Integrate one continuum field and check its conservation laws.
    Evolve {
        /// Field to integrate: exact, expanded{0,2,4,6}, reduced{0,2,4,6},
        /// kdv{1,3,5,7}, or normalized.
        #[arg(long, default_value = "kdv3")]
        field: String,
        /// Number of grid points.
        #[arg(long, default_value_t = 256)]
        grid: usize,
        /// Spacing parameter of the long-wave scaling (exact rational).
        #[arg(long, default_value = "1/10")]
        h: String,
        /// Time step.
        #[arg(long, default_value_t = 1e-4)]
        dt: f64,
        /// Final time.
        #[arg(long, default_value_t = 1.0)]
        tfinal: f64,
        /// Cubic coupling (exact rational).
        #[arg(long, default_value = "1")]
        alpha: String,
        /// Quartic coupling (exact rational).
        #[arg(long, default_value = "0")]
        beta: String,
        /// Quintic coupling (exact rational).
        #[arg(long, default_value = "0")]
        gamma: String,
    },
    /// Evolve the chain and the displacement field side by side and compare
    /// them through the sampling map.
    CompareLattice {
        /// Chain size and grid size (the spacing is its reciprocal).
        #[arg(long, default_value_t = 64)]
        grid: usize,
        /// Chain time step for the comparison run.
        #[arg(long, default_value_t = 5e-5)]
        dt: f64,
        /// Continuum horizon of the comparison run.
        #[arg(long, default_value_t = 0.1)]
        tfinal: f64,
        /// Cubic coupling (exact rational).
        #[arg(long, default_value = "1")]
        alpha: String,
        /// Quartic coupling (exact rational).
        #[arg(long, default_value = "1/2")]
        beta: String,
        /// Quintic coupling (exact rational).
        #[arg(long, default_value = "-1/4")]
        gamma: String,
    },
}

enum AppError {
    Config(String),
    Internal(anyhow::Error),
}

fn config(msg: impl Into<String>) -> AppError {
    AppError::Config(msg.into())
}

fn rat_flag(name: &str, value: &str) -> Result<Rat, AppError> {
    parse_rational(value)
        .map_err(|_| config(format!("--{name} expects an exact rational, got `{value}`")))
}

fn nonzero(name: &str, value: &Rat) -> Result<(), AppError> {
    if value == &parse_rational("0").expect("literal") {
        Err(config(format!("--{name} must be nonzero")))
    } else {
        Ok(())
    }
}

fn positive(name: &str, value: f64) -> Result<(), AppError> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(config(format!("--{name} must be positive and finite")))
    }
}

fn grid_size(n: usize) -> Result<(), AppError> {
    if n >= 8 && n % 2 == 0 {
        Ok(())
    } else {
        Err(config("--grid must be an even number of at least 8"))
    }
}

fn spacing(name: &str, value: &str) -> Result<f64, AppError> {
    let r = rat_flag(name, value)?;
    let h = rational_to_f64(&r);
    if h.is_finite() && h > 0.0 && h <= 0.5 {
        Ok(h)
    } else {
        Err(config(format!("--{name} must lie in (0, 1/2], got `{value}`")))
    }
}

fn dispatch(command: &Command, seed: Option<u64>) -> Result<Report, AppError> {
    match command {
        Command::VerifyTables => run_verify_tables().map_err(AppError::Internal),
        Command::VerifyHierarchy => run_verify_hierarchy().map_err(AppError::Internal),
        Command::Solve {
            alpha,
            beta,
            gamma,
            toda,
            lambda4,
        } => {
            if *toda && (beta.is_some() || gamma.is_some()) {
                return Err(config(
                    "--toda derives the quartic and quintic couplings; \
                     do not pass --beta or --gamma with it",
                ));
            }
            let alpha = rat_flag("alpha", alpha)?;
            nonzero("alpha", &alpha)?;
            let beta = rat_flag("beta", beta.as_deref().unwrap_or("0"))?;
            let gamma = rat_flag("gamma", gamma.as_deref().unwrap_or("0"))?;
            let lambda4 = rat_flag("lambda4", lambda4)?;
            run_solve(&alpha, &beta, &gamma, *toda, &lambda4).map_err(AppError::Internal)
        }
        Command::TodaScan { alpha } => {
            let alpha = rat_flag("alpha", alpha)?;
            nonzero("alpha", &alpha)?;
            run_toda_scan(&alpha).map_err(AppError::Internal)
        }
        Command::ResidualScan {
            h,
            grid,
            alpha,
            beta,
            gamma,
        } => {
            grid_size(*grid)?;
            let defaults = ["1/32", "1/64", "1/128", "1/256"];
            let texts: Vec<&str> = if h.is_empty() {
                defaults.to_vec()
            } else {
                h.iter().map(String::as_str).collect()
            };
            let hs = texts
                .iter()
                .map(|t| spacing("h", t))
                .collect::<Result<Vec<f64>, AppError>>()?;
            if hs.len() < 2 || hs.windows(2).all(|w| w[0] == w[1]) {
                return Err(config("--h needs at least two distinct spacings"));
            }
            let alpha = rat_flag("alpha", alpha)?;
            nonzero("alpha", &alpha)?;
            let beta = rat_flag("beta", beta)?;
            let gamma = rat_flag("gamma", gamma)?;
            run_residual_scan(&hs, *grid, &alpha, &beta, &gamma).map_err(AppError::Internal)
        }
        Command::Evolve {
            field,
            grid,
            h,
            dt,
            tfinal,
            alpha,
            beta,
            gamma,
        } => {
            let sel = parse_field(field).ok_or_else(|| {
                config(format!(
                    "unknown --field `{field}`; valid: exact, expanded{{0,2,4,6}}, \
                     reduced{{0,2,4,6}}, kdv{{1,3,5,7}}, normalized"
                ))
            })?;
            grid_size(*grid)?;
            let h = spacing("h", h)?;
            positive("dt", *dt)?;
            positive("tfinal", *tfinal)?;
            if *tfinal < *dt {
                return Err(config("--tfinal must be at least --dt"));
            }
            let alpha = rat_flag("alpha", alpha)?;
            if !matches!(sel, FieldSel::Kdv(_)) {
                nonzero("alpha", &alpha)?;
            }
            let beta = rat_flag("beta", beta)?;
            let gamma = rat_flag("gamma", gamma)?;
            run_evolve(&sel, *grid, h, *dt, *tfinal, seed, &alpha, &beta, &gamma)
                .map_err(AppError::Internal)
        }
        Command::CompareLattice {
            grid,
            dt,
            tfinal,
            alpha,
            beta,
            gamma,
        } => {
            grid_size(*grid)?;
            positive("dt", *dt)?;
            positive("tfinal", *tfinal)?;
            let alpha = rat_flag("alpha", alpha)?;
            let beta = rat_flag("beta", beta)?;
            let gamma = rat_flag("gamma", gamma)?;
            run_compare_lattice(*grid, *dt, *tfinal, &alpha, &beta, &gamma)
                .map_err(AppError::Internal)
        }
    }
}

fn execute(cli: Cli) -> Result<ExitCode, AppError> {
    let report = dispatch(&cli.command, cli.seed)?;
    let out_dir = cli
        .out
        .clone()
        .or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    let files = emit_report(&report, &out_dir, cli.format).map_err(AppError::Internal)?;
    print!("{}", report.text_summary());
    for path in &files {
        println!("wrote {}", path.display());
    }
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(AppError::Config(msg)) => {
            eprintln!("fputlab: configuration error: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Internal(err)) => {
            eprintln!("fputlab: error: {err:#}");
            ExitCode::from(1)
        }
    }
}
