//! `coopdyn` — experiments on the evolutionary dynamics of cooperation in
//! threshold public-goods games, as CSV.
//!
//! Each subcommand runs one experiment on a configured population and prints
//! a small CSV table: a single `#`-prefixed metadata line echoing every
//! parameter, a header row, and the data. Output is deterministic — identical
//! invocations (including seeds) produce byte-identical CSV — so the tables
//! can be committed, diffed, and plotted externally.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use coopdyn::{
    build_fitness_table, build_kernel, cooperation_index, gradient, stationary_distribution,
    GameSpec, PopulationConfig, UpdateMode,
};

#[derive(Parser)]
#[command(
    name = "coopdyn",
    version,
    about = "Cooperation dynamics in threshold public-goods games",
    long_about = "Analytic and Monte Carlo experiments on a finite population whose agents \
                  revise strategies by imitation, by counterfactual reasoning, or by a mixture \
                  of the two. All results are emitted as deterministic CSV."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Selection gradient T+ - T- across every population state
    Gradient(AnalyticArgs),
    /// Stationary distribution of the revision chain (requires --mu > 0)
    Stationary(AnalyticArgs),
    /// Long-run expected cooperator count and its normalized index
    CoopIndex(AnalyticArgs),
    /// Cooperation index across a grid of imitation weights chi in [0, 1]
    SweepChi(SweepArgs),
    /// Monte Carlo run of the revision process, reported as a state histogram
    Simulate(SimulateArgs),
}

#[derive(Args, Clone)]
struct PopulationArgs {
    /// Population size Z
    #[arg(long, default_value_t = 50)]
    z: usize,
    /// Group size N
    #[arg(long, default_value_t = 6)]
    n: usize,
    /// Enhancement factor F applied to the pooled contributions
    #[arg(long, default_value_t = 5.5)]
    f: f64,
    /// Coordination threshold M: cooperators needed before anything is paid out
    #[arg(long, default_value_t = 3)]
    m: usize,
    /// Cost of cooperation c
    #[arg(long, default_value_t = 1.0)]
    cost: f64,
    /// Mutation probability mu: chance a revising agent flips blindly
    #[arg(long, default_value_t = 0.01)]
    mu: f64,
    /// Selection intensity for imitation
    #[arg(long, default_value_t = 5.0)]
    beta_sl: f64,
    /// Selection intensity for counterfactual revision
    #[arg(long, default_value_t = 5.0)]
    beta_ct: f64,
    /// Probability of revising by imitation when --mode mixed
    #[arg(long, default_value_t = 0.5)]
    chi: f64,
    /// Strategy-revision rule
    #[arg(long, value_enum, default_value_t = Mode::Sl)]
    mode: Mode,
    /// Draw imitation models from the other Z-1 agents instead of the whole
    /// population (self-encounters are no-ops either way)
    #[arg(long)]
    exact_pairing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Imitation of a sampled peer (social learning)
    Sl,
    /// Counterfactual revision
    Ct,
    /// Imitation with probability chi, counterfactual otherwise
    Mixed,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Sl => "sl",
            Mode::Ct => "ct",
            Mode::Mixed => "mixed",
        }
    }

    fn update_mode(self) -> UpdateMode {
        match self {
            Mode::Sl => UpdateMode::SocialLearning,
            Mode::Ct => UpdateMode::Counterfactual,
            Mode::Mixed => UpdateMode::Mixed,
        }
    }
}

#[derive(Args, Clone)]
struct AnalyticArgs {
    #[command(flatten)]
    population: PopulationArgs,
    /// Write the CSV to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct SweepArgs {
    #[command(flatten)]
    population: PopulationArgs,
    /// Number of evenly spaced chi grid points over [0, 1]
    #[arg(long, default_value_t = 21)]
    points: usize,
    /// Write the CSV to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct SimulateArgs {
    #[command(flatten)]
    population: PopulationArgs,
    /// RNG seed; equal seeds replay equal trajectories
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Number of revision events to play
    #[arg(long, default_value_t = 1_000_000)]
    steps: u64,
    /// Events discarded before recording begins [default: 10*Z]
    #[arg(long)]
    burn_in: Option<u64>,
    /// Write the CSV to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

impl PopulationArgs {
    fn config(&self) -> Result<PopulationConfig, coopdyn::Error> {
        let cfg = PopulationConfig {
            population_size: self.z,
            game: GameSpec {
                group_size: self.n,
                threshold: self.m,
                enhancement: self.f,
                cost: self.cost,
            },
            mutation: self.mu,
            beta_sl: self.beta_sl,
            beta_ct: self.beta_ct,
            chi: self.chi,
            update_mode: self.mode.update_mode(),
            exact_pairing: self.exact_pairing,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// The `key=value` parameter echo shared by every metadata line.
    fn echo(&self) -> String {
        format!(
            "z={} n={} m={} f={} cost={} mu={} beta_sl={} beta_ct={} chi={} mode={} exact_pairing={}",
            self.z,
            self.n,
            self.m,
            self.f,
            self.cost,
            self.mu,
            self.beta_sl,
            self.beta_ct,
            self.chi,
            self.mode.name(),
            self.exact_pairing
        )
    }
}

enum Failure {
    /// Parameter or domain violation: exit status 2, like a usage error.
    Domain(coopdyn::Error),
    /// Filesystem trouble while writing results: exit status 1.
    Io(std::io::Error),
}

impl From<coopdyn::Error> for Failure {
    fn from(err: coopdyn::Error) -> Self {
        Failure::Domain(err)
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Self {
        Failure::Io(err)
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
        Err(Failure::Io(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn execute(cli: Cli) -> Result<(), Failure> {
    let (csv, out) = match &cli.command {
        Command::Gradient(args) => (gradient_csv(args)?, args.out.clone()),
        Command::Stationary(args) => (stationary_csv(args)?, args.out.clone()),
        Command::CoopIndex(args) => (coop_index_csv(args)?, args.out.clone()),
        Command::SweepChi(args) => (sweep_chi_csv(args)?, args.out.clone()),
        Command::Simulate(args) => (simulate_csv(args)?, args.out.clone()),
    };
    match out {
        Some(path) => std::fs::write(path, csv)?,
        None => std::io::stdout().write_all(csv.as_bytes())?,
    }
    Ok(())
}

fn gradient_csv(args: &AnalyticArgs) -> Result<String, coopdyn::Error> {
    let cfg = args.population.config()?;
    let table = build_fitness_table(&cfg)?;
    let kernel = build_kernel(&cfg, &table)?;
    let profile = gradient(&kernel);
    let mut csv = format!("# command=gradient {}\n", args.population.echo());
    csv.push_str("k,k_over_Z,t_plus,t_minus,G\n");
    let z = cfg.population_size;
    for k in 0..=z {
        let _ = writeln!(
            csv,
            "{k},{},{},{},{}",
            k as f64 / z as f64,
            kernel.t_plus()[k],
            kernel.t_minus()[k],
            profile.values()[k]
        );
    }
    Ok(csv)
}

fn stationary_csv(args: &AnalyticArgs) -> Result<String, coopdyn::Error> {
    let cfg = args.population.config()?;
    let table = build_fitness_table(&cfg)?;
    let kernel = build_kernel(&cfg, &table)?;
    let stationary = stationary_distribution(&kernel)?;
    let mut csv = format!("# command=stationary {}\n", args.population.echo());
    csv.push_str("k,k_over_Z,s_k\n");
    let z = cfg.population_size;
    for (k, s) in stationary.probabilities().iter().enumerate() {
        let _ = writeln!(csv, "{k},{},{s}", k as f64 / z as f64);
    }
    Ok(csv)
}

fn coop_index_csv(args: &AnalyticArgs) -> Result<String, coopdyn::Error> {
    let cfg = args.population.config()?;
    let table = build_fitness_table(&cfg)?;
    let kernel = build_kernel(&cfg, &table)?;
    let summary = cooperation_index(&stationary_distribution(&kernel)?);
    let mut csv = format!("# command=coop-index {}\n", args.population.echo());
    csv.push_str("expected_cooperators,normalized_index\n");
    let _ = writeln!(
        csv,
        "{},{}",
        summary.expected_cooperators, summary.normalized_index
    );
    Ok(csv)
}

fn sweep_chi_csv(args: &SweepArgs) -> Result<String, coopdyn::Error> {
    if args.points < 2 {
        return Err(coopdyn::Error::InvalidParameter(format!(
            "chi sweep needs at least 2 grid points to span [0, 1] (got {})",
            args.points
        )));
    }
    // the sweep varies chi, so the mixture rule is in force whatever --mode
    // says; chi = 1 and chi = 0 recover the pure rules exactly
    let base = PopulationConfig {
        update_mode: UpdateMode::Mixed,
        ..args.population.config()?
    };
    let table = build_fitness_table(&base)?;
    let rows = (0..args.points)
        .into_par_iter()
        .map(|i| {
            let chi = i as f64 / (args.points - 1) as f64;
            let cfg = PopulationConfig { chi, ..base };
            let kernel = build_kernel(&cfg, &table)?;
            let summary = cooperation_index(&stationary_distribution(&kernel)?);
            Ok((chi, summary))
        })
        .collect::<Result<Vec<_>, coopdyn::Error>>()?;
    let mut csv = format!(
        "# command=sweep-chi {} points={}\n",
        args.population.echo(),
        args.points
    );
    csv.push_str("chi,expected_cooperators,normalized_index\n");
    for (chi, summary) in rows {
        let _ = writeln!(
            csv,
            "{chi},{},{}",
            summary.expected_cooperators, summary.normalized_index
        );
    }
    Ok(csv)
}

fn simulate_csv(args: &SimulateArgs) -> Result<String, coopdyn::Error> {
    let cfg = args.population.config()?;
    let burn_in = args.burn_in.unwrap_or(10 * cfg.population_size as u64);
    let initial_k = cfg.population_size / 2;
    let report = coopdyn::run(&cfg, initial_k, args.steps, burn_in, args.seed)?;
    let mut csv = format!(
        "# command=simulate {} seed={} steps={} burn_in={} initial_k={}\n",
        args.population.echo(),
        report.seed,
        report.steps,
        report.burn_in,
        initial_k
    );
    csv.push_str("k,empirical_frequency\n");
    for (k, freq) in report.empirical_distribution.iter().enumerate() {
        let _ = writeln!(csv, "{k},{freq}");
    }
    Ok(csv)
}
