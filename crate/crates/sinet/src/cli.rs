//! Command-line front end.
//!
//! Every experiment flag can also come from a JSON config file (`--config`)
//! whose keys are the flag names in snake case; flags given on the command
//! line win. The output directory falls back to `$SINET_OUT_DIR`, then
//! `sinet-out`.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use sinet_core::calibration::{CalibrationConfig, FitResolution};
use sinet_core::epidemic::{Placement, SimConfig, UpdateMode};
use sinet_core::netgen::{thresholds, GenMode};

use crate::error::{CliError, Result};
use crate::experiment::*;
use crate::grid::{log_space, parse_counts, parse_grid, TABLE1};
use crate::manifest::{ExperimentManifest, MANIFEST_FILE};
use crate::runner::Parallel;

pub const OUT_DIR_ENV: &str = "SINET_OUT_DIR";
const DEFAULT_OUT_DIR: &str = "sinet-out";

#[derive(Debug, Parser)]
#[command(
    name = "sinet",
    version,
    about = "SI epidemics on Erdős–Rényi networks: simulation and mean-field calibration"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Draw one network; writes network.edgelist and degrees.csv.
    Generate(Flags),
    /// Component structure across p; writes components.csv and components_summary.csv.
    ComponentsSweep(Flags),
    /// Run epidemics; writes trajectory.csv, or ensemble.csv and mean_trajectory.csv.
    Simulate(Flags),
    /// Fit β at one p and test it against 1; writes calibration.csv.
    Calibrate(Flags),
    /// β(p) restricted to the largest component; writes beta_curve.csv.
    BetaCurve(Flags),
    /// Label p by the β = 1 test and locate p_d per n; writes pd_labels.csv.
    PdScan(Flags),
    /// Times to reach 50/75/100% of the final outbreak; writes transient_times.csv.
    TransientTimes(Flags),
    /// Final outbreak size against the largest component; writes equilibrium.csv.
    EquilibriumSweep(Flags),
    /// Turn a finished run's output into plot-ready CSVs.
    Plotdata(PlotArgs),
    /// Re-run the experiment recorded in a manifest.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum ModeArg {
    Gnp,
    Gnl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum UpdateModeArg {
    AsyncUniform,
    AsyncSweep,
    Synchronous,
}

impl From<UpdateModeArg> for UpdateMode {
    fn from(m: UpdateModeArg) -> Self {
        match m {
            UpdateModeArg::AsyncUniform => UpdateMode::AsyncUniform,
            UpdateModeArg::AsyncSweep => UpdateMode::AsyncSweep,
            UpdateModeArg::Synchronous => UpdateMode::Synchronous,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum PlacementArg {
    Uniform,
    Largest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum ResolutionArg {
    Micro,
    Macro,
}

/// Experiment flags. Doubles as the config-file schema.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct Flags {
    /// JSON file supplying defaults for any flag below.
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
    /// Output directory [env: SINET_OUT_DIR; default: sinet-out].
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Worker threads [default: all cores]. Never changes the output.
    #[arg(long)]
    threads: Option<usize>,
    /// Master seed; replica r uses seed + r [default: 1].
    #[arg(long)]
    seed: Option<u64>,
    /// Number of nodes [default: 10000].
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated network sizes (pd-scan).
    #[arg(long)]
    n_list: Option<String>,
    /// Linking probability.
    #[arg(long)]
    p: Option<f64>,
    /// Grid of p: "0.001,0.01", "log:<from>:<to>:<count>" or "table1".
    #[arg(long)]
    p_grid: Option<String>,
    /// Network model [default: gnp].
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Edge count for --mode gnl.
    #[arg(long)]
    edges: Option<usize>,
    /// Initial infected count [default: 1].
    #[arg(long)]
    z0: Option<usize>,
    /// Comma-separated initial infected counts (equilibrium-sweep).
    #[arg(long)]
    z0_list: Option<String>,
    /// Contact efficiency in (0, 1] [default: 1].
    #[arg(long)]
    lambda: Option<f64>,
    /// Replicas per grid point [default: 25].
    #[arg(long)]
    replicas: Option<usize>,
    /// Node update scheme [default: async-uniform].
    #[arg(long, value_enum)]
    update_mode: Option<UpdateModeArg>,
    /// Where to place the initial infectives [default: uniform].
    #[arg(long, value_enum)]
    placement: Option<PlacementArg>,
    /// Draw a new network for every replica.
    #[arg(long, num_args = 0..=1, default_missing_value = "true", value_name = "BOOL")]
    fresh_networks: Option<bool>,
    /// Seed inside, and fit against, the largest component.
    #[arg(long, num_args = 0..=1, default_missing_value = "true", value_name = "BOOL")]
    restrict_largest: Option<bool>,
    /// Significance level [default: 0.05].
    #[arg(long)]
    alpha: Option<f64>,
    /// Time resolution of the β regression [default: micro].
    #[arg(long, value_enum)]
    resolution: Option<ResolutionArg>,
    /// Cap on macro steps per run [default: 1000].
    #[arg(long)]
    max_steps: Option<usize>,
}

macro_rules! flag_fields {
    ($m:ident) => {
        $m!(
            out_dir,
            threads,
            seed,
            n,
            n_list,
            p,
            p_grid,
            mode,
            edges,
            z0,
            z0_list,
            lambda,
            replicas,
            update_mode,
            placement,
            fresh_networks,
            restrict_largest,
            alpha,
            resolution,
            max_steps
        )
    };
}

impl Flags {
    /// Names of the flags that were given.
    fn given(&self) -> Vec<&'static str> {
        let mut names = Vec::new();
        macro_rules! collect {
            ($($f:ident),*) => { $(if self.$f.is_some() { names.push(stringify!($f)); })* };
        }
        flag_fields!(collect);
        names
    }

    /// Fills every unset flag from `base`.
    fn over(self, base: Flags) -> Flags {
        macro_rules! merge {
            ($($f:ident),*) => { Flags { config: self.config, $($f: self.$f.or(base.$f),)* } };
        }
        flag_fields!(merge)
    }
}

#[derive(Debug, Args)]
struct PlotArgs {
    /// Output directory of a finished run.
    #[arg(long)]
    input: PathBuf,
    /// Where to write the plot data [default: <input>/plotdata].
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReplayArgs {
    /// Manifest written by an earlier run.
    manifest: PathBuf,
    /// Output directory [default: the manifest's directory].
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Flags each subcommand understands, besides config/out_dir/threads/seed.
fn accepted(cmd: &str) -> &'static [&'static str] {
    match cmd {
        "generate" => &["n", "p", "mode", "edges"],
        "components-sweep" => &["n", "p_grid", "replicas"],
        "simulate" => &[
            "n",
            "p",
            "mode",
            "edges",
            "z0",
            "lambda",
            "replicas",
            "update_mode",
            "placement",
            "fresh_networks",
            "max_steps",
        ],
        "calibrate" => &[
            "n",
            "p",
            "z0",
            "lambda",
            "replicas",
            "update_mode",
            "restrict_largest",
            "alpha",
            "resolution",
            "max_steps",
        ],
        "beta-curve" => &[
            "n",
            "p_grid",
            "z0",
            "lambda",
            "replicas",
            "update_mode",
            "alpha",
            "resolution",
            "max_steps",
        ],
        "pd-scan" => &[
            "n",
            "n_list",
            "p_grid",
            "lambda",
            "replicas",
            "update_mode",
            "restrict_largest",
            "alpha",
            "resolution",
            "max_steps",
        ],
        "transient-times" => &[
            "n",
            "p_grid",
            "z0",
            "lambda",
            "replicas",
            "update_mode",
            "resolution",
            "max_steps",
        ],
        "equilibrium-sweep" => &["n", "p_grid", "z0_list", "replicas"],
        _ => &[],
    }
}

fn grid_or(flags: &Flags, default: impl FnOnce() -> Vec<f64>) -> Result<Vec<f64>> {
    match &flags.p_grid {
        Some(spec) => parse_grid(spec).map_err(usage),
        None => Ok(default()),
    }
}

fn network_mode(flags: &Flags) -> Result<GenMode> {
    match (flags.mode.unwrap_or(ModeArg::Gnp), flags.p, flags.edges) {
        (ModeArg::Gnp, Some(p), None) => Ok(GenMode::Gnp(p)),
        (ModeArg::Gnl, None, Some(l)) => Ok(GenMode::Gnl(l)),
        (ModeArg::Gnp, _, _) => Err(usage("--mode gnp needs --p and no --edges")),
        (ModeArg::Gnl, _, _) => Err(usage("--mode gnl needs --edges and no --p")),
    }
}

fn calibration_config(flags: &Flags, n: usize) -> CalibrationConfig {
    let mut cfg = CalibrationConfig::new(
        n,
        flags.z0.unwrap_or(1),
        flags.replicas.unwrap_or(25),
        flags.seed.unwrap_or(1),
    );
    if let Some(a) = flags.alpha {
        cfg.alpha = a;
    }
    if let Some(l) = flags.lambda {
        cfg.lambda = l;
    }
    if let Some(m) = flags.update_mode {
        cfg.update_mode = m.into();
    }
    if let Some(r) = flags.resolution {
        cfg.resolution = match r {
            ResolutionArg::Micro => FitResolution::MicroStep,
            ResolutionArg::Macro => FitResolution::MacroStep,
        };
    }
    if let Some(s) = flags.max_steps {
        cfg.max_macro_steps = s;
    }
    cfg.restrict_to_largest = flags.restrict_largest.unwrap_or(false);
    cfg
}

/// Points per decade in the default log grids.
const PER_DECADE: f64 = 4.0;

fn log_grid(from: f64, to: f64) -> Vec<f64> {
    let count = ((to / from).log10() * PER_DECADE).round() as usize + 1;
    log_space(from, to, count.max(2))
}

/// Turns the merged flags into a fully specified experiment.
fn resolve(cmd: &str, flags: &Flags) -> Result<Experiment> {
    let n = flags.n.unwrap_or(10_000);
    let seed = flags.seed.unwrap_or(1);
    let replicas = flags.replicas.unwrap_or(25);
    let p1 = 1.0 / (n.max(2) as f64 - 1.0);
    let p2 = if n >= 3 { thresholds(n)?.p2 } else { 1.0 };
    Ok(match cmd {
        "generate" => Experiment::Generate(GenerateParams {
            n,
            mode: network_mode(flags)?,
            seed,
        }),
        "components-sweep" => Experiment::ComponentsSweep(ComponentsParams {
            n,
            p_grid: grid_or(flags, || {
                if n == 10_000 {
                    TABLE1.to_vec()
                } else {
                    log_grid(0.1 * p1, (10.0 * p2).min(1.0))
                }
            })?,
            replicas,
            seed,
        }),
        "simulate" => {
            let mut sim = SimConfig::new(flags.z0.unwrap_or(1), seed);
            if let Some(l) = flags.lambda {
                sim.lambda = l;
            }
            if let Some(m) = flags.update_mode {
                sim.update_mode = m.into();
            }
            if let Some(s) = flags.max_steps {
                sim.max_macro_steps = s;
            }
            if flags.placement == Some(PlacementArg::Largest) {
                sim.placement = Placement::LargestComponentOnly;
            }
            Experiment::Simulate(SimulateParams {
                n,
                network: network_mode(flags)?,
                sim,
                replicas: flags.replicas.unwrap_or(1),
                fresh_networks: flags.fresh_networks.unwrap_or(false),
            })
        }
        "calibrate" => {
            let p = flags.p.ok_or_else(|| usage("calibrate needs --p"))?;
            Experiment::Calibrate(CalibrateParams {
                config: calibration_config(flags, n),
                p,
            })
        }
        "beta-curve" => Experiment::BetaCurve(SweepParams {
            config: CalibrationConfig {
                restrict_to_largest: true,
                ..calibration_config(flags, n)
            },
            p_grid: grid_or(flags, || log_grid(0.1 * p1, 1.0))?,
        }),
        "pd-scan" => {
            let n_list = match &flags.n_list {
                Some(s) => parse_counts(s).map_err(usage)?,
                None => vec![n],
            };
            if n_list.is_empty() {
                return Err(usage("--n-list is empty"));
            }
            let lowest = n_list.iter().copied().max().unwrap_or(n);
            let default_from = if lowest >= 3 {
                thresholds(lowest)?.p2
            } else {
                p2
            };
            Experiment::PdScan(PdScanParams {
                config: CalibrationConfig {
                    z0: 1,
                    ..calibration_config(flags, n)
                },
                n_list,
                p_grid: grid_or(flags, || log_grid(default_from, 1.0))?,
            })
        }
        "transient-times" => {
            let mut config = calibration_config(flags, n);
            config.restrict_to_largest = false;
            Experiment::TransientTimes(SweepParams {
                config,
                p_grid: grid_or(flags, || log_grid(0.1 * p1, 100.0 * p1))?,
            })
        }
        "equilibrium-sweep" => Experiment::EquilibriumSweep(EquilibriumParams {
            n,
            p_grid: grid_or(flags, || log_grid(0.1 * p1, (10.0 * p2).min(1.0)))?,
            z0_list: match &flags.z0_list {
                Some(s) => parse_counts(s).map_err(usage)?,
                None => vec![1, 5, 10, 50, 100, 500],
            },
            replicas,
            seed,
        }),
        other => return Err(usage(format!("unknown subcommand {other}"))),
    })
}

fn read_config(path: &Path) -> Result<Flags> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn experiment_from_flags(cmd: &str, flags: Flags) -> Result<(Experiment, PathBuf, Option<usize>)> {
    let allowed = accepted(cmd);
    let common = ["out_dir", "threads", "seed"];
    if let Some(bad) = flags
        .given()
        .into_iter()
        .find(|f| !allowed.contains(f) && !common.contains(f))
    {
        return Err(usage(format!(
            "--{} does not apply to {cmd}",
            bad.replace('_', "-")
        )));
    }
    let flags = match &flags.config {
        Some(path) => {
            let base = read_config(path)?;
            flags.over(base)
        }
        None => flags,
    };
    let out_dir = flags
        .out_dir
        .clone()
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR));
    Ok((resolve(cmd, &flags)?, out_dir, flags.threads))
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Runs `exp`, writing its CSVs and a manifest into `out_dir`. Returns the
/// manifest and the human-readable summary lines.
pub fn execute(
    exp: &Experiment,
    out_dir: &Path,
    threads: Option<usize>,
) -> Result<(ExperimentManifest, Vec<String>)> {
    std::fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    let runner = Parallel::new(threads.unwrap_or_else(default_threads))?;
    let started_unix = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0.0, |d| d.as_secs_f64());
    let clock = Instant::now();
    let outcome = exp.run(&runner, out_dir)?;
    let manifest = ExperimentManifest {
        tool: env!("CARGO_PKG_NAME").to_owned(),
        version: env!("CARGO_PKG_VERSION").to_owned(),
        subcommand: exp.name().to_owned(),
        master_seed: exp.master_seed(),
        params: exp.clone(),
        replica_seeds: outcome.replica_seeds,
        outputs: outcome.outputs,
        threads: runner.threads(),
        started_unix,
        wall_seconds: clock.elapsed().as_secs_f64(),
    };
    manifest.write(out_dir)?;
    Ok((manifest, outcome.summary))
}

fn dispatch(command: Command) -> Result<()> {
    let (exp, out_dir, threads) = match command {
        Command::Plotdata(args) => {
            let out_dir = args.out_dir.unwrap_or_else(|| args.input.join("plotdata"));
            (
                Experiment::Plotdata(PlotdataParams { input: args.input }),
                out_dir,
                None,
            )
        }
        Command::Replay(args) => {
            let manifest = ExperimentManifest::read(&args.manifest)?;
            let out_dir = args.out_dir.unwrap_or_else(|| {
                args.manifest
                    .parent()
                    .map(Path::to_path_buf)
                    .unwrap_or_default()
            });
            (manifest.params, out_dir, args.threads)
        }
        Command::Generate(f) => experiment_from_flags("generate", f)?,
        Command::ComponentsSweep(f) => experiment_from_flags("components-sweep", f)?,
        Command::Simulate(f) => experiment_from_flags("simulate", f)?,
        Command::Calibrate(f) => experiment_from_flags("calibrate", f)?,
        Command::BetaCurve(f) => experiment_from_flags("beta-curve", f)?,
        Command::PdScan(f) => experiment_from_flags("pd-scan", f)?,
        Command::TransientTimes(f) => experiment_from_flags("transient-times", f)?,
        Command::EquilibriumSweep(f) => experiment_from_flags("equilibrium-sweep", f)?,
    };
    let (manifest, summary) = execute(&exp, &out_dir, threads)?;
    for line in &summary {
        println!("{line}");
    }
    for file in manifest
        .outputs
        .iter()
        .map(String::as_str)
        .chain([MANIFEST_FILE])
    {
        println!("wrote {}", out_dir.join(file).display());
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the subcommand.
/// Exit status: 0 on success, 2 for usage errors, 1 for runtime failures.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sinet: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
