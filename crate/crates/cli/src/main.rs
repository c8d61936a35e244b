use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use qocinfo::harness::{load_pulse, run_experiment, write_outputs, ExperimentConfig, Problem, ProblemConfig};
use qocinfo::pulse::ControlPulse;
use serde::Serialize;

/// Bandwidth-limited quantum optimal control and information bound checks.
#[derive(Debug, Parser)]
#[command(name = "qocinfo", version)]
struct Cli {
    /// JSON config: a problem for propagate/lie-rank/optimize/bounds, an experiment for sweep.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for output files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for goal, basis and optimizer streams; for sweep it replaces the config seeds.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evolve the initial object under a pulse and report the goal distance.
    Propagate {
        /// Pulse document; defaults to the config `pulse` entry or the zero pulse.
        #[arg(long)]
        pulse: Option<PathBuf>,
    },
    /// Dynamical Lie algebra dimension and reachable-set dimension.
    LieRank,
    /// Optimize CRAB coefficients for the configured goal.
    Optimize {
        #[arg(long)]
        restarts: Option<usize>,
        /// Evaluation budget per restart.
        #[arg(long)]
        budget: Option<usize>,
        /// Also write the optimized pulse sampled on the propagation grid.
        #[arg(long)]
        pulse_csv: bool,
    },
    /// Information, time and noise bounds for a pulse.
    Bounds {
        #[arg(long)]
        pulse: Option<PathBuf>,
        /// Signal-to-noise power ratio for the noise bounds.
        #[arg(long)]
        snr: Option<f64>,
    },
    /// Run the experiment sweep and write its CSV and manifest.
    Sweep,
}

fn config_path(cli: &Cli) -> Result<&Path> {
    cli.config.as_deref().context("--config <path.json> is required")
}

fn problem_config(cli: &Cli) -> Result<ProblemConfig> {
    let path = config_path(cli)?;
    ProblemConfig::load(path).with_context(|| format!("loading {}", path.display()))
}

fn pick_pulse(problem: &Problem, flag: &Option<PathBuf>, cfg: &ProblemConfig) -> Result<ControlPulse> {
    match flag.as_ref().or(cfg.pulse.as_ref()) {
        Some(p) => Ok(load_pulse(p)?),
        None => Ok(problem.zero_pulse()?),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// Prints `value` and, with `--out`, stores it as `name`.
fn emit<T: Serialize>(cli: &Cli, name: &str, value: &T) -> Result<()> {
    let text = to_json(value)?;
    if let Some(dir) = &cli.out {
        fs::create_dir_all(dir)?;
        fs::write(dir.join(name), &text)?;
    }
    print!("{text}");
    Ok(())
}

fn pulse_times(pulse: &ControlPulse, segments_per_sample: usize) -> Vec<f64> {
    let steps = pulse.basis().sample_count().max(1) * segments_per_sample;
    let dt = pulse.basis().horizon() / steps as f64;
    (0..steps).map(|k| (k as f64 + 0.5) * dt).collect()
}

fn run(cli: &Cli) -> Result<()> {
    let seed = cli.seed.unwrap_or(0);
    match &cli.command {
        Command::Propagate { pulse } => {
            let cfg = problem_config(cli)?;
            let problem = Problem::new(&cfg, seed)?;
            let pulse = pick_pulse(&problem, pulse, &cfg)?;
            emit(cli, "propagate.json", &problem.propagate(&pulse)?)
        }
        Command::LieRank => {
            let cfg = problem_config(cli)?;
            emit(cli, "lie_rank.json", &Problem::new(&cfg, seed)?.lie_rank())
        }
        Command::Optimize {
            restarts,
            budget,
            pulse_csv,
        } => {
            let mut cfg = problem_config(cli)?;
            if let Some(r) = restarts {
                cfg.fixed.restarts = *r;
            }
            if let Some(b) = budget {
                cfg.budget = *b;
            }
            cfg.as_experiment(seed).validate()?;
            let run = Problem::new(&cfg, seed)?.optimize()?;
            if let Some(dir) = &cli.out {
                fs::create_dir_all(dir)?;
                fs::write(dir.join("pulse.json"), to_json(&run.pulse)?)?;
                if *pulse_csv {
                    let pulse = ControlPulse::from_document(&run.pulse)?;
                    let file = fs::File::create(dir.join("pulse.csv"))?;
                    pulse.write_samples_csv(file, &pulse_times(&pulse, cfg.fixed.segments_per_sample))?;
                }
            } else if *pulse_csv {
                bail!("--pulse-csv needs --out <dir>");
            }
            emit(cli, "optimize.json", &run)
        }
        Command::Bounds { pulse, snr } => {
            let cfg = problem_config(cli)?;
            let problem = Problem::new(&cfg, seed)?;
            let p = pick_pulse(&problem, pulse, &cfg)?;
            let snr = snr.or(cfg.snr);
            if snr.is_some_and(|s| !(s > 0.0 && s.is_finite())) {
                bail!("--snr must be positive and finite");
            }
            emit(cli, "bounds.json", &problem.bounds(&p, snr)?)
        }
        Command::Sweep => {
            let path = config_path(cli)?;
            let mut cfg = ExperimentConfig::load(path).with_context(|| format!("loading {}", path.display()))?;
            if let Some(s) = cli.seed {
                cfg.seeds = vec![s];
            }
            let out = run_experiment(&cfg)?;
            let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
            let artifacts = write_outputs(&cfg, &out, &dir)?;
            println!("{}", artifacts.csv.display());
            println!("{}", artifacts.manifest.display());
            for v in &out.violations {
                eprintln!("violation: {}", serde_json::to_string(v)?);
            }
            Ok(())
        }
    }
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.workers {
        if w == 0 {
            bail!("--workers must be at least 1");
        }
        pool = pool.num_threads(w);
    }
    pool.build()?.install(|| run(&cli))
}
