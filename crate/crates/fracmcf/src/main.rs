//! Command-line front end: `run <config>`, `suite <name>`,
//! `scan-asymptotics <config>`. Exit codes: 0 success, 2 invalid
//! configuration or usage, 3 runtime failure.

use clap::{Args, Parser, Subcommand};
use fracmcf::config::{load_config, Overrides};
use fracmcf::diagnostics::asymptotic_scan;
use fracmcf::error::Error;
use fracmcf::run::{run_experiment, run_suite, SuiteName, SuiteOptions};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fracmcf", about = "fractional mean curvature flow experiments", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct OverrideArgs {
    /// Fractional order override
    #[arg(long)]
    s: Option<f64>,
    /// Grid size override
    #[arg(long = "N")]
    n: Option<usize>,
    /// Fixed time step override
    #[arg(long)]
    dt: Option<f64>,
    /// Horizon override
    #[arg(long = "T")]
    t_end: Option<f64>,
    /// Seed override
    #[arg(long)]
    seed: Option<u64>,
    /// Output stem: writes <out>.csv and <out>.json
    #[arg(long)]
    out: Option<PathBuf>,
}

impl From<&OverrideArgs> for Overrides {
    fn from(a: &OverrideArgs) -> Self {
        Overrides {
            s: a.s,
            n: a.n,
            dt: a.dt,
            t_end: a.t_end,
            seed: a.seed,
            out: a.out.clone(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run a flow experiment from a config file
    Run {
        config: PathBuf,
        #[command(flatten)]
        overrides: OverrideArgs,
    },
    /// Run a named check suite (identities | inequalities | asymptotics | convergence)
    Suite {
        name: String,
        /// Write the machine-readable report here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate the s -> 0 and s -> 1 asymptotics for the configured field
    ScanAsymptotics {
        config: PathBuf,
        #[command(flatten)]
        overrides: OverrideArgs,
    },
}

fn exit_code_for(err: &Error) -> ExitCode {
    match err {
        Error::ConfigInvalid(_) | Error::InvalidOrder(_) | Error::GridTooCoarse(_) => {
            ExitCode::from(2)
        }
        _ => ExitCode::from(3),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { config, overrides } => {
            let cfg = match load_config(&config, &(&overrides).into()) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return exit_code_for(&e);
                }
            };
            match run_experiment(&cfg) {
                Ok(out) => {
                    println!(
                        "ran {} steps (dt = {:.6e}), {} records",
                        out.steps,
                        out.dt_resolved,
                        out.records.len()
                    );
                    for (name, fit) in &out.rate_fits {
                        println!(
                            "  rate[{name}] = {:.6} (r^2 = {:.6})",
                            fit.rate, fit.r_squared
                        );
                    }
                    if let Some(h) = &out.halted {
                        eprintln!("run halted early: {h}");
                        return ExitCode::from(3);
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    exit_code_for(&e)
                }
            }
        }
        Command::Suite { name, out } => {
            let suite: SuiteName = match name.parse() {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            match run_suite(suite, &SuiteOptions::default()) {
                Ok(report) => {
                    print!("{}", report.render_table());
                    if let Some(path) = out {
                        if let Err(e) = std::fs::write(
                            &path,
                            serde_json::to_string_pretty(&report).expect("serializable"),
                        ) {
                            eprintln!("error writing report: {e}");
                            return ExitCode::from(3);
                        }
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    exit_code_for(&e)
                }
            }
        }
        Command::ScanAsymptotics { config, overrides } => {
            let cfg = match load_config(&config, &(&overrides).into()) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return exit_code_for(&e);
                }
            };
            // the scan instruments a circle field regardless of flow kind
            let u = match fracmcf::run::preset_or_circle_field(&cfg) {
                Ok(u) => u,
                Err(e) => {
                    eprintln!("error: {e}");
                    return exit_code_for(&e);
                }
            };
            let grid = [
                1e-3, 0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99, 0.999,
            ];
            match asymptotic_scan(&u, &grid) {
                Ok(rows) => {
                    println!(
                        "{:>7} {:>14} {:>14} {:>14} {:>14} {:>9}",
                        "s", "s*H_B", "(1-s)*H_B", "s*[u]^2/L2", "(1-s)*[u]^2/D", "flag"
                    );
                    let mut csv = String::from(
                        "s,s_ball_curvature,one_minus_s_ball_curvature,s_seminorm_over_l2,one_minus_s_seminorm_over_grad,flag\n",
                    );
                    for r in &rows {
                        let flag = if r.s <= 0.01 || r.s >= 0.99 { "endpoint" } else { "" };
                        println!(
                            "{:>7.3} {:>14.6} {:>14.6} {:>14.6} {:>14.6} {:>9}",
                            r.s,
                            r.s_ball_curvature,
                            r.one_minus_s_ball_curvature,
                            r.s_seminorm_over_l2,
                            r.one_minus_s_seminorm_over_grad,
                            flag
                        );
                        csv.push_str(&format!(
                            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}\n",
                            r.s,
                            r.s_ball_curvature,
                            r.one_minus_s_ball_curvature,
                            r.s_seminorm_over_l2,
                            r.one_minus_s_seminorm_over_grad,
                            flag
                        ));
                    }
                    if let Some(path) = &cfg.out_csv {
                        if let Err(e) = std::fs::write(path, csv) {
                            eprintln!("error writing scan: {e}");
                            return ExitCode::from(3);
                        }
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    exit_code_for(&e)
                }
            }
        }
    }
}
