//! `verify` - batch front-end for the identity suite.
//!
//! Exit codes: 0 all checks pass, 1 at least one check fails, 2 invalid
//! configuration. JSON or text reports go to stdout, diagnostics to stderr.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ssnmc::catalog::MANIFOLD_NAMES;
use ssnmc::{
    list_checks, run_suite, JetMode, ManifoldConfig, Parallelism, PhiMode, SigmaMode, SuiteConfig,
};

#[derive(Parser)]
#[command(
    name = "verify",
    version,
    about = "Residual verification of semi-symmetric non-metric connection identities over chart manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run identity checks on one catalog manifold, or on the default grid
    /// (all manifolds, dims 2-4, all phi modes) when --manifold is omitted
    Run(RunArgs),
    /// List every check with its anchor and applicability gates
    ListChecks,
    /// List catalog manifolds and their parameters
    ListManifolds,
}

#[derive(Args)]
struct RunArgs {
    /// Catalog manifold: flat | sphere | hyperbolic | random
    #[arg(long)]
    manifold: Option<String>,
    /// Chart dimension (2..=6)
    #[arg(long)]
    dim: Option<usize>,
    /// Radius parameter for the sphere and hyperbolic charts
    #[arg(long)]
    radius: Option<f64>,
    /// One-form mode: zero | constant | closed | generic
    #[arg(long)]
    phi_mode: Option<String>,
    /// Conformal factor mode: zero | constant | polynomial
    #[arg(long)]
    sigma_mode: Option<String>,
    /// Sample points per manifold
    #[arg(long, default_value_t = 25)]
    points: usize,
    /// Tolerance for identities evaluated through analytic jets
    #[arg(long, default_value_t = 1e-9)]
    tol_analytic: f64,
    /// Tolerance for identities evaluated through finite-difference jets
    #[arg(long, default_value_t = 1e-5)]
    tol_fd: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Report format: text | json
    #[arg(long, default_value = "text")]
    format: String,
    /// Jet source: analytic | fd
    #[arg(long, default_value = "analytic")]
    jet_mode: String,
    /// Restrict to the named checks (repeatable)
    #[arg(long = "check")]
    checks: Vec<String>,
    /// Run on the current thread instead of the rayon pool
    #[arg(long)]
    sequential: bool,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run(args) => match execute(args) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
        },
        Command::ListChecks => {
            for def in list_checks() {
                let mut gates = format!("n >= {}", def.min_dim);
                if def.closed_only {
                    gates.push_str(", closed phi");
                }
                println!(
                    "{:<28} {:<24} [{}]  {}",
                    def.name, def.anchor, gates, def.description
                );
            }
            ExitCode::SUCCESS
        }
        Command::ListManifolds => {
            println!("flat        g = I on [-1, 1]^n");
            println!("sphere      round metric of radius r (--radius) on the hyperspherical chart, poles excluded");
            println!("hyperbolic  half-space metric r^2/x_n^2 with constant curvature -1/r^2");
            println!("random      seeded SPD polynomial perturbation of the flat metric");
            ExitCode::SUCCESS
        }
    }
}

fn execute(args: RunArgs) -> Result<bool, String> {
    let mut cfg = match &args.manifold {
        Some(name) => {
            if !MANIFOLD_NAMES.contains(&name.as_str()) {
                return Err(format!(
                    "unknown manifold '{name}' (expected one of {})",
                    MANIFOLD_NAMES.join(", ")
                ));
            }
            let phi_mode = PhiMode::parse(args.phi_mode.as_deref().unwrap_or("generic"))
                .map_err(|e| e.to_string())?;
            let sigma_mode = SigmaMode::parse(args.sigma_mode.as_deref().unwrap_or("polynomial"))
                .map_err(|e| e.to_string())?;
            SuiteConfig::single(ManifoldConfig {
                name: name.clone(),
                dim: args.dim.unwrap_or(3),
                radius: args.radius.unwrap_or(1.0),
                phi_mode,
                sigma_mode,
            })
        }
        None => {
            if args.dim.is_some()
                || args.radius.is_some()
                || args.phi_mode.is_some()
                || args.sigma_mode.is_some()
            {
                return Err(
                    "--dim, --radius, --phi-mode and --sigma-mode require --manifold".to_string(),
                );
            }
            SuiteConfig::default_suite(args.seed)
        }
    };

    cfg.points = args.points;
    cfg.seed = args.seed;
    cfg.tol_analytic = args.tol_analytic;
    cfg.tol_fd = args.tol_fd;
    cfg.jet_mode = match args.jet_mode.as_str() {
        "analytic" => JetMode::Analytic,
        "fd" | "finite-difference" => JetMode::FiniteDifference,
        other => return Err(format!("unknown jet mode '{other}' (expected analytic|fd)")),
    };
    if !args.checks.is_empty() {
        cfg.checks = Some(args.checks.clone());
    }
    if args.sequential {
        cfg.parallelism = Parallelism::Sequential;
    }

    let report = run_suite(&cfg).map_err(|e| e.to_string())?;

    match args.format.as_str() {
        "json" => println!("{}", report.to_json()),
        "text" => print!("{}", report.to_text()),
        other => return Err(format!("unknown format '{other}' (expected text|json)")),
    }

    if !report.overall_pass {
        eprintln!(
            "{} check(s) failed; see the report for residuals",
            report.failed().len()
        );
    }
    Ok(report.overall_pass)
}
