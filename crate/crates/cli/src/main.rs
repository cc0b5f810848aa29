use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use tasep_lab::experiment::{
    emit_table, preset, run_experiment, Analysis, Dynamics, ExperimentConfig, ExperimentSummary,
    Grid, TableKind, PRESETS,
};
use tasep_lab::fredholm::{fredholm_det_with, DistributionQuery, NystromParams};
use tasep_lab::geometry::{
    border_set, lpp_passage_times, lpp_sample_weights, tasep_lpp_equivalence_with,
    write_grid_binary, write_grid_csv, LppGeometry,
};
use tasep_lab::kernels::KernelKind;
use tasep_lab::sim::InitialCondition;
use tasep_lab::{Error, Result};

/// TASEP simulations, Airy-process limit laws and last passage percolation.
#[derive(Parser)]
#[command(name = "tasep-lab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a batch and write trajectories.
    Simulate(SimulateArgs),
    /// Run an experiment described by a TOML file.
    Analyze {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Evaluate det(I - K) for the one- or two-point law.
    Fredholm(FredholmArgs),
    /// Sample an LPP grid, write it, extract border sets or check the coupling.
    Lpp(LppArgs),
    /// Run a named experiment.
    Preset {
        /// Preset name; omit with --list to print the names.
        name: Option<String>,
        #[arg(long)]
        list: bool,
        /// Print the preset as TOML instead of running it.
        #[arg(long)]
        show: bool,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Tabulate a function on a grid as CSV.
    Table(TableArgs),
}

#[derive(Args)]
struct Overrides {
    #[arg(long)]
    runs: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Overrides {
    fn apply(&self, cfg: &mut ExperimentConfig) {
        if let Some(r) = self.runs {
            cfg.runs = r;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(o) = &self.out {
            cfg.output_dir = Some(o.clone());
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum IcArg {
    Step,
    Alternating,
    Periodic,
    Bernoulli,
}

#[derive(Clone, Copy, ValueEnum)]
enum DynamicsArg {
    Continuous,
    Sequential,
    Parallel,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long, default_value = "simulate")]
    name: String,
    #[arg(long, value_enum, default_value = "step")]
    ic: IcArg,
    /// Period of the periodic initial condition.
    #[arg(long, default_value_t = 2)]
    d: i64,
    /// Density of the Bernoulli initial condition.
    #[arg(long, default_value_t = 0.5)]
    rho: f64,
    #[arg(long, value_enum, default_value = "continuous")]
    dynamics: DynamicsArg,
    /// Continuous time horizon.
    #[arg(long, default_value_t = 100.0)]
    t: f64,
    /// Discrete jump probability.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Discrete step count.
    #[arg(long, default_value_t = 100)]
    steps: u64,
    #[arg(long, default_value_t = 100)]
    runs: u64,
    #[arg(long)]
    seed: u64,
    /// Lowest and highest tracked label.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], default_values_t = [1, 10])]
    labels: Vec<i64>,
    /// Sample times; defaults to the horizon only.
    #[arg(long, value_delimiter = ',')]
    sample_times: Vec<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FredholmArgs {
    #[arg(long, value_enum, default_value = "airy2")]
    kernel: KernelArg,
    /// A point `u,s`; repeat for the joint law.
    #[arg(long = "point", value_parser = parse_pair, required = true)]
    points: Vec<(f64, f64)>,
    #[command(flatten)]
    nystrom: NystromArgs,
}

#[derive(Args)]
struct NystromArgs {
    /// Truncation length L.
    #[arg(long)]
    length: Option<f64>,
    /// Quadrature nodes per panel.
    #[arg(long)]
    nodes: Option<usize>,
    /// Similarity parameter.
    #[arg(long)]
    theta: Option<f64>,
}

impl NystromArgs {
    fn params(&self, kernel: KernelKind) -> Option<NystromParams> {
        if self.length.is_none() && self.nodes.is_none() && self.theta.is_none() {
            return None;
        }
        let d = NystromParams::default_for(kernel);
        Some(NystromParams {
            length: self.length.unwrap_or(d.length),
            nodes: self.nodes.unwrap_or(d.nodes),
            theta: self.theta.unwrap_or(d.theta),
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelArg {
    Airy1,
    Airy2,
}

impl From<KernelArg> for KernelKind {
    fn from(k: KernelArg) -> Self {
        match k {
            KernelArg::Airy1 => KernelKind::Airy1,
            KernelArg::Airy2 => KernelKind::Airy2,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GeometryArg {
    PointToPoint,
    PointToLine,
}

impl From<GeometryArg> for LppGeometry {
    fn from(g: GeometryArg) -> Self {
        match g {
            GeometryArg::PointToPoint => LppGeometry::PointToPoint,
            GeometryArg::PointToLine => LppGeometry::PointToLine,
        }
    }
}

#[derive(Args)]
struct LppArgs {
    #[arg(long, default_value_t = 20)]
    m: usize,
    #[arg(long, default_value_t = 20)]
    n: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum, default_value = "point-to-point")]
    geometry: GeometryArg,
    /// Grid output; `.csv` writes text, anything else the binary format.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the border set at this time as CSV.
    #[arg(long)]
    border: Option<f64>,
    /// Compare against the coupled TASEP and fail on any mismatch.
    #[arg(long)]
    check: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    F2,
    F1scaled,
    KernelSlice,
    Rost,
}

#[derive(Args)]
struct TableArgs {
    #[arg(value_enum)]
    kind: TableArg,
    #[arg(long, allow_hyphen_values = true, default_value_t = -6.0)]
    lo: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 6.0)]
    hi: f64,
    #[arg(long, default_value_t = 0.05)]
    step: f64,
    #[arg(long, value_enum, default_value = "airy2")]
    kernel: KernelArg,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    u: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    u_prime: f64,
    /// Fixed second argument; by default the diagonal is tabulated.
    #[arg(long, allow_hyphen_values = true)]
    s_prime: Option<f64>,
    #[command(flatten)]
    nystrom: NystromArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_pair(s: &str) -> std::result::Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or("expected u,s")?;
    let a = a.trim().parse().map_err(|e| format!("{a}: {e}"))?;
    let b = b.trim().parse().map_err(|e| format!("{b}: {e}"))?;
    Ok((a, b))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` when a check failed.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Simulate(a) => simulate(a),
        Command::Analyze { config, overrides } => {
            let text = std::fs::read_to_string(&config).map_err(|e| Error::io(&config, e))?;
            let mut cfg = ExperimentConfig::from_toml(&text)?;
            overrides.apply(&mut cfg);
            experiment(&cfg)
        }
        Command::Fredholm(a) => {
            let kernel = KernelKind::from(a.kernel);
            let q = DistributionQuery::new(kernel, a.points)?;
            let params = a.nystrom.params(kernel).unwrap_or(NystromParams::default_for(kernel));
            println!("{}", fredholm_det_with(&q, params)?);
            Ok(true)
        }
        Command::Lpp(a) => lpp(a),
        Command::Preset {
            name,
            list,
            show,
            overrides,
        } => {
            let Some(name) = name.filter(|_| !list) else {
                for p in PRESETS {
                    println!("{p}");
                }
                return Ok(true);
            };
            let mut cfg = preset(&name)?;
            overrides.apply(&mut cfg);
            if show {
                print!("{}", cfg.to_toml()?);
                return Ok(true);
            }
            experiment(&cfg)
        }
        Command::Table(a) => {
            let grid = Grid {
                lo: a.lo,
                hi: a.hi,
                step: a.step,
            };
            let kind = match a.kind {
                TableArg::F2 => TableKind::F2 {
                    grid,
                    nystrom: a.nystrom.params(KernelKind::Airy2),
                },
                TableArg::F1scaled => TableKind::F1scaled {
                    grid,
                    nystrom: a.nystrom.params(KernelKind::Airy1),
                },
                TableArg::KernelSlice => TableKind::KernelSlice {
                    kernel: a.kernel.into(),
                    u: a.u,
                    u_prime: a.u_prime,
                    grid,
                    s_prime: a.s_prime,
                },
                TableArg::Rost => TableKind::Rost { grid },
            };
            let table = emit_table(&kind)?;
            match a.out {
                Some(path) => table.save(&path)?,
                None => print!("{}", table.to_csv()),
            }
            Ok(true)
        }
    }
}

fn simulate(a: SimulateArgs) -> Result<bool> {
    let ic = match a.ic {
        IcArg::Step => InitialCondition::Step,
        IcArg::Alternating => InitialCondition::Alternating,
        IcArg::Periodic => InitialCondition::PeriodicD { d: a.d },
        IcArg::Bernoulli => InitialCondition::Bernoulli {
            rho: a.rho,
            seed: a.seed,
            reference: -1,
        },
    };
    let dynamics = match a.dynamics {
        DynamicsArg::Continuous => Dynamics::Continuous { t: a.t },
        DynamicsArg::Sequential => Dynamics::Sequential {
            p: a.p,
            steps: a.steps,
        },
        DynamicsArg::Parallel => Dynamics::Parallel {
            p: a.p,
            steps: a.steps,
        },
    };
    let cfg = ExperimentConfig {
        name: a.name,
        seed: a.seed,
        runs: a.runs,
        ic: Some(ic),
        dynamics: Some(dynamics),
        analysis: Analysis::None {
            labels: (a.labels[0], a.labels[1]),
            sample_times: a.sample_times,
        },
        write_trajectories: true,
        output_dir: a.out,
    };
    experiment(&cfg)
}

fn experiment(cfg: &ExperimentConfig) -> Result<bool> {
    let dir = cfg
        .output_dir
        .clone()
        .unwrap_or_else(|| Path::new("out").join(&cfg.name));
    let summary = run_experiment(cfg, &dir)?;
    report(&summary, &dir);
    Ok(summary.passed)
}

fn report(s: &ExperimentSummary, dir: &Path) {
    for c in &s.checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        println!("{mark} {} = {} ({})", c.name, c.value, c.condition);
    }
    for (k, v) in &s.info {
        println!("     {k} = {v}");
    }
    println!("wrote {} files to {}", s.files.len() + 1, dir.display());
}

fn lpp(a: LppArgs) -> Result<bool> {
    let geometry = LppGeometry::from(a.geometry);
    let grid = lpp_passage_times(lpp_sample_weights(a.m, a.n, a.seed)?, geometry);
    if let Some(path) = &a.out {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = BufWriter::new(file);
        let csv = path.extension().is_some_and(|e| e == "csv");
        let written = if csv {
            write_grid_csv(&grid, &mut w)
        } else {
            write_grid_binary(&grid, &mut w)
        };
        written.and_then(|_| w.flush()).map_err(|e| Error::io(path, e))?;
    }
    if let Some(t) = a.border {
        let b = border_set(&grid, t)?;
        let stdout = std::io::stdout();
        b.write_csv(&mut stdout.lock())
            .map_err(|e| Error::io("<stdout>", e))?;
    }
    if a.check {
        let rep = tasep_lpp_equivalence_with(a.seed, a.m, a.n, geometry)?;
        let text = serde_json::to_string(&rep).map_err(|e| Error::Serialization(e.to_string()))?;
        println!("{text}");
        return Ok(rep.passed());
    }
    if a.out.is_none() && a.border.is_none() {
        println!("{}", grid.g(a.m, a.n)?);
    }
    Ok(true)
}
