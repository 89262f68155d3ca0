// Copyright 2026 The cavent Authors
// SPDX-License-Identifier: Apache-2.0

use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cavent::commands::{
    cmd_compare, cmd_evolve, cmd_optima, cmd_scan, exit_code, write_scan, EXIT_OK,
    EXIT_VALIDATION,
};
use cavent::config::RunConfig;
use cavent::trajectory::format_value;
use cavent::validate::run_all;
use cavent::Result;

#[derive(Parser)]
#[command(name = "cavent", version, about = "Two-atom entanglement in a detuned cavity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one scenario and emit a trajectory CSV
    Evolve(Flags),
    /// Compare the full cavity model with the reduced model
    Compare(Flags),
    /// Concurrence against atom separation for a list of scaled times
    Scan(Flags),
    /// Separations of maximal entanglement for a list of scaled times
    Optima(Flags),
    /// Run the built-in invariant checks
    Validate(Flags),
}

#[derive(Args, Default)]
struct Flags {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    g0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    kappa: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    /// Displacement of atom 2 from the antinode, in wavelengths
    #[arg(long, conflicts_with_all = ["r12", "g1", "g2"])]
    dr_a: Option<f64>,
    /// Atom separation, in wavelengths
    #[arg(long, conflicts_with_all = ["g1", "g2"])]
    r12: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    g1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    g2: Option<f64>,
    /// caseA, caseB, caseC or custom(u,v,w)
    #[arg(long)]
    init: Option<String>,
    /// full, reduced or analytic
    #[arg(long)]
    tier: Option<String>,
    /// Final scaled time, e.g. 4pi
    #[arg(long)]
    tau_max: Option<String>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    nmax: Option<usize>,
    /// canonical or literal
    #[arg(long)]
    variant: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated scaled times, e.g. pi/2,9pi/2
    #[arg(long)]
    taus: Option<String>,
    /// Rows in a trajectory
    #[arg(long)]
    samples: Option<usize>,
    /// Separations in a scan
    #[arg(long)]
    r_points: Option<usize>,
}

impl Flags {
    fn config(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::from_file(p)?,
            None => RunConfig::default(),
        };
        let f = |x: Option<f64>| x.map(|v| v.to_string());
        let u = |x: Option<usize>| x.map(|v| v.to_string());
        let pairs = [
            ("g0", f(self.g0)),
            ("delta", f(self.delta)),
            ("gamma", f(self.gamma)),
            ("kappa", f(self.kappa)),
            ("lambda", f(self.lambda)),
            ("dr_a", f(self.dr_a)),
            ("r12", f(self.r12)),
            ("g1", f(self.g1)),
            ("g2", f(self.g2)),
            ("init", self.init.clone()),
            ("tier", self.tier.clone()),
            ("tau_max", self.tau_max.clone()),
            ("steps", u(self.steps)),
            ("nmax", u(self.nmax)),
            ("variant", self.variant.clone()),
            ("seed", self.seed.map(|s| s.to_string())),
            ("taus", self.taus.clone()),
            ("samples", u(self.samples)),
            ("r_points", u(self.r_points)),
        ];
        if self.g1.is_some() != self.g2.is_some()
            && !matches!(cfg.placement, Some(cavent::config::Placement::Couplings(..)))
        {
            return Err(cavent::Error::Config("--g1 and --g2 must be given together".into()));
        }
        for (k, v) in pairs {
            if let Some(v) = v {
                cfg.set(k, &v)?;
            }
        }
        if let Some(out) = &self.out {
            cfg.out = Some(out.clone());
        }
        Ok(cfg)
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Evolve(flags) => {
            let cfg = flags.config()?;
            let traj = cmd_evolve(&cfg)?;
            if cfg.out.is_none() {
                traj.write_csv(io::stdout().lock())?;
            }
            Ok(EXIT_OK)
        }
        Command::Compare(flags) => {
            let report = cmd_compare(&flags.config()?)?;
            print!("{}", report.render());
            Ok(if report.passed { EXIT_OK } else { EXIT_VALIDATION })
        }
        Command::Scan(flags) => {
            let cfg = flags.config()?;
            let s = cmd_scan(&cfg)?;
            if cfg.out.is_none() {
                write_scan(&s, io::stdout().lock())?;
            }
            Ok(EXIT_OK)
        }
        Command::Optima(flags) => {
            let rows = cmd_optima(&flags.config()?)?;
            println!("tau,r12_over_lambda,concurrence");
            for r in rows {
                println!(
                    "{},{},{}",
                    format_value(r.tau),
                    format_value(r.r12),
                    format_value(r.concurrence)
                );
            }
            Ok(EXIT_OK)
        }
        Command::Validate(flags) => {
            let cfg = flags.config()?;
            let results = run_all(cfg.seed);
            let mut failed = 0;
            for r in &results {
                if r.passed {
                    println!("ok   {}: {}", r.name, r.detail);
                } else {
                    failed += 1;
                    println!("FAIL {}: {}", r.name, r.detail);
                }
            }
            println!("{} checks, {} failed", results.len(), failed);
            Ok(if failed == 0 { EXIT_OK } else { EXIT_VALIDATION })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
