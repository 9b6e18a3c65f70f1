//! Fully resolved experiments and the files they produce.
//!
//! An [`Experiment`] holds every parameter that affects the output, so
//! running it again (for instance from a manifest) rewrites identical files.

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sinet_core::calibration::{
    beta_curve, calibrate_at_p, component_samples, equilibrium_sweep, locate_pd, pd_scaling,
    scan_labels, summarize_components, transient_times, BetaCalibration, CalibrationConfig,
};
use sinet_core::epidemic::{mean_curve, run_ensemble, NetworkSource, SimConfig};
use sinet_core::netgen::{degree_stats, generate, GenMode};
use sinet_core::rng::replica_seed;
use sinet_core::ReplicaRunner;

use crate::error::{CliError, Result};
use crate::output::*;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerateParams {
    pub n: usize,
    pub mode: GenMode,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentsParams {
    pub n: usize,
    pub p_grid: Vec<f64>,
    pub replicas: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateParams {
    pub n: usize,
    pub network: GenMode,
    pub sim: SimConfig,
    pub replicas: usize,
    /// Draw a new network per replica instead of sharing one drawn from
    /// `sim.seed`.
    pub fresh_networks: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrateParams {
    pub config: CalibrationConfig,
    pub p: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepParams {
    pub config: CalibrationConfig,
    pub p_grid: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PdScanParams {
    /// `config.n` is replaced by each entry of `n_list`.
    pub config: CalibrationConfig,
    pub n_list: Vec<usize>,
    pub p_grid: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumParams {
    pub n: usize,
    pub p_grid: Vec<f64>,
    pub z0_list: Vec<usize>,
    pub replicas: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotdataParams {
    /// Output directory of a finished run.
    pub input: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    Generate(GenerateParams),
    ComponentsSweep(ComponentsParams),
    Simulate(SimulateParams),
    Calibrate(CalibrateParams),
    BetaCurve(SweepParams),
    PdScan(PdScanParams),
    TransientTimes(SweepParams),
    EquilibriumSweep(EquilibriumParams),
    Plotdata(PlotdataParams),
}

/// What a run wrote, plus a few lines worth showing on the terminal.
#[derive(Debug, Default)]
pub struct Outcome {
    pub outputs: Vec<String>,
    pub replica_seeds: Vec<u64>,
    pub summary: Vec<String>,
}

impl Outcome {
    pub(crate) fn write<T: Row>(&mut self, dir: &Path, name: &str, rows: &[T]) -> Result<()> {
        write_rows(&dir.join(name), rows)?;
        self.outputs.push(name.to_owned());
        Ok(())
    }
}

fn seeds(master: u64, replicas: usize) -> Vec<u64> {
    (0..replicas).map(|r| replica_seed(master, r)).collect()
}

pub(crate) fn mean_degree(n: usize, p: f64) -> f64 {
    (n as f64 - 1.0) * p
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::Generate(_) => "generate",
            Experiment::ComponentsSweep(_) => "components-sweep",
            Experiment::Simulate(_) => "simulate",
            Experiment::Calibrate(_) => "calibrate",
            Experiment::BetaCurve(_) => "beta-curve",
            Experiment::PdScan(_) => "pd-scan",
            Experiment::TransientTimes(_) => "transient-times",
            Experiment::EquilibriumSweep(_) => "equilibrium-sweep",
            Experiment::Plotdata(_) => "plotdata",
        }
    }

    pub fn master_seed(&self) -> Option<u64> {
        Some(match self {
            Experiment::Generate(p) => p.seed,
            Experiment::ComponentsSweep(p) => p.seed,
            Experiment::Simulate(p) => p.sim.seed,
            Experiment::Calibrate(p) => p.config.seed,
            Experiment::BetaCurve(p) | Experiment::TransientTimes(p) => p.config.seed,
            Experiment::PdScan(p) => p.config.seed,
            Experiment::EquilibriumSweep(p) => p.seed,
            Experiment::Plotdata(_) => return None,
        })
    }

    /// Runs the experiment and writes its CSV files into `dir`.
    pub fn run<R: ReplicaRunner>(&self, runner: &R, dir: &Path) -> Result<Outcome> {
        let mut out = Outcome::default();
        match self {
            Experiment::Generate(p) => run_generate(p, dir, &mut out)?,
            Experiment::ComponentsSweep(p) => run_components(runner, p, dir, &mut out)?,
            Experiment::Simulate(p) => run_simulate(runner, p, dir, &mut out)?,
            Experiment::Calibrate(p) => {
                out.replica_seeds = seeds(p.config.seed, p.config.replicas);
                let cal = calibrate_at_p(runner, &p.config, p.p)?;
                out.summary.push(describe(&cal));
                write_calibrations(dir, "calibration", &p.config, &[cal], &mut out)?;
            }
            Experiment::BetaCurve(p) => {
                out.replica_seeds = seeds(p.config.seed, p.config.replicas);
                let curve = beta_curve(runner, &p.config, &p.p_grid)?;
                out.summary.extend(curve.iter().map(describe));
                write_calibrations(dir, "beta_curve", &p.config, &curve, &mut out)?;
            }
            Experiment::PdScan(p) => run_pd_scan(runner, p, dir, &mut out)?,
            Experiment::TransientTimes(p) => run_transient(runner, p, dir, &mut out)?,
            Experiment::EquilibriumSweep(p) => {
                out.replica_seeds = seeds(p.seed, p.replicas);
                let recs =
                    equilibrium_sweep(runner, p.n, &p.p_grid, &p.z0_list, p.replicas, p.seed)?;
                let rows: Vec<EquilibriumRow> = recs
                    .iter()
                    .map(|r| EquilibriumRow {
                        p: r.p,
                        k: mean_degree(p.n, r.p),
                        z0: r.z0,
                        n_eq: r.n_eq_sim,
                        n_g: r.n_g_mean,
                    })
                    .collect();
                out.write(dir, "equilibrium.csv", &rows)?;
            }
            Experiment::Plotdata(p) => crate::plotdata::emit(&p.input, dir, &mut out)?,
        }
        Ok(out)
    }
}

fn describe(cal: &BetaCalibration) -> String {
    let verdict = match cal.ttest {
        Some(t) if t.reject => format!("β ≠ 1 (t = {:.3}, p = {:.3e})", t.statistic, t.p_value),
        Some(t) => format!(
            "β = 1 not rejected (t = {:.3}, p = {:.3})",
            t.statistic, t.p_value
        ),
        None => "no usable replica".to_owned(),
    };
    format!(
        "p = {}: mean β = {:.4}, SE = {:.2e}, mean regression SE = {:.2e}, {verdict}",
        cal.p, cal.mean_beta, cal.se, cal.mean_slope_se
    )
}

fn run_generate(p: &GenerateParams, dir: &Path, out: &mut Outcome) -> Result<()> {
    let net = generate(p.n, p.mode, p.seed)?;
    let path = dir.join("network.edgelist");
    let file = File::create(&path).map_err(|e| CliError::io(&path, e))?;
    crate::edgelist::write_edge_list(&net, BufWriter::new(file))
        .map_err(|e| CliError::io(&path, e))?;
    out.outputs.push("network.edgelist".to_owned());
    let stats = degree_stats(&net);
    let rows: Vec<DegreeRow> = stats
        .histogram
        .iter()
        .map(|(&k, &count)| DegreeRow { k, count })
        .collect();
    out.write(dir, "degrees.csv", &rows)?;
    out.summary.push(format!(
        "n = {}, edges = {}, mean degree = {:.4}, degree variance = {:.4}",
        net.n(),
        net.edge_count(),
        stats.mean_degree,
        stats.variance
    ));
    Ok(())
}

fn run_components<R: ReplicaRunner>(
    runner: &R,
    p: &ComponentsParams,
    dir: &Path,
    out: &mut Outcome,
) -> Result<()> {
    out.replica_seeds = seeds(p.seed, p.replicas);
    let samples = component_samples(runner, p.n, &p.p_grid, p.replicas, p.seed)?;
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for (prob, s) in &samples {
        rows.extend(s.iter().map(|c| ComponentRow {
            p: *prob,
            seed: c.seed,
            m: c.m,
            n_g: c.n_g,
            s: c.s,
        }));
        let rec = summarize_components(p.n, *prob, s);
        summary.push(ComponentSummaryRow {
            p: rec.p,
            k: rec.k,
            n_g: rec.n_g_mean,
            m: rec.m_mean,
            s: rec.s_mean,
            replicas: rec.replicas,
        });
    }
    out.write(dir, "components.csv", &rows)?;
    out.write(dir, "components_summary.csv", &summary)?;
    Ok(())
}

fn run_simulate<R: ReplicaRunner>(
    runner: &R,
    p: &SimulateParams,
    dir: &Path,
    out: &mut Outcome,
) -> Result<()> {
    let shared;
    let source = if p.fresh_networks {
        NetworkSource::Fresh {
            n: p.n,
            mode: p.network,
        }
    } else {
        shared = generate(p.n, p.network, p.sim.seed)?;
        NetworkSource::Shared(&shared)
    };
    let ens = run_ensemble(runner, source, &p.sim, p.replicas)?;
    out.replica_seeds = ens.seeds.clone();
    if p.replicas == 1 {
        let traj = &ens.replicas[0];
        let rows: Vec<TrajectoryRow> = traj
            .z_series
            .iter()
            .enumerate()
            .map(|(t, &z)| TrajectoryRow { t, z })
            .collect();
        out.write(dir, "trajectory.csv", &rows)?;
    } else {
        let rows: Vec<EnsembleRow> = ens
            .replicas
            .iter()
            .enumerate()
            .flat_map(|(replica, traj)| {
                traj.z_series
                    .iter()
                    .enumerate()
                    .map(move |(t, &z)| EnsembleRow { replica, t, z })
            })
            .collect();
        out.write(dir, "ensemble.csv", &rows)?;
        let mean: Vec<MeanTrajectoryRow> = mean_curve(&ens.replicas)
            .into_iter()
            .enumerate()
            .map(|(t, mean_z)| MeanTrajectoryRow { t, mean_z })
            .collect();
        out.write(dir, "mean_trajectory.csv", &mean)?;
    }
    let absorbed = ens.replicas.iter().filter(|t| t.absorbed).count();
    let final_mean = ens.mean_z.last().copied().unwrap_or(0.0);
    out.summary.push(format!(
        "{} replica(s), {absorbed} absorbed, {} macro steps, final mean Z = {final_mean}",
        p.replicas,
        ens.mean_z.len() - 1
    ));
    Ok(())
}

fn write_calibrations(
    dir: &Path,
    stem: &str,
    cfg: &CalibrationConfig,
    cals: &[BetaCalibration],
    out: &mut Outcome,
) -> Result<()> {
    let rows: Vec<CalibrationRow> = cals
        .iter()
        .map(|c| CalibrationRow {
            p: c.p,
            k: mean_degree(c.n, c.p),
            n: c.n,
            z0: cfg.z0,
            replicas_used: c.per_replica.len(),
            dropped: c.dropped,
            mean_beta: c.mean_beta,
            se: c.se,
            mean_slope_se: c.mean_slope_se,
            t_statistic: c.ttest.map(|t| t.statistic),
            dof: c.ttest.map(|t| t.dof),
            p_value: c.ttest.map(|t| t.p_value),
            beta_is_one: c.passes(),
            shapiro_w: c.normality.map(|t| t.statistic),
            shapiro_p: c.normality.map(|t| t.p_value),
            normal: c.normality.map(|t| !t.reject),
        })
        .collect();
    let replicas: Vec<BetaReplicaRow> = cals
        .iter()
        .flat_map(|c| {
            c.per_replica.iter().map(|e| BetaReplicaRow {
                p: c.p,
                seed: e.seed,
                beta: e.beta,
                intercept: e.intercept,
                slope_se: e.slope_se,
                points: e.n_points_used,
                population: e.population,
            })
        })
        .collect();
    out.write(dir, &format!("{stem}.csv"), &rows)?;
    out.write(dir, &format!("{stem}_replicas.csv"), &replicas)
}

fn run_pd_scan<R: ReplicaRunner>(
    runner: &R,
    p: &PdScanParams,
    dir: &Path,
    out: &mut Outcome,
) -> Result<()> {
    out.replica_seeds = seeds(p.config.seed, p.config.replicas);
    let mut labels = Vec::new();
    let mut thresholds = Vec::new();
    for &n in &p.n_list {
        let cfg = CalibrationConfig {
            n,
            ..p.config.clone()
        };
        let points = scan_labels(runner, &cfg, &p.p_grid)?;
        let (p_d, status) = match locate_pd(&points) {
            Ok(pd) => (Some(pd), "ok".to_owned()),
            Err(e) => (None, e.to_string()),
        };
        out.summary.push(match p_d {
            Some(pd) => format!("n = {n}: p_d = {pd}"),
            None => format!("n = {n}: {status}"),
        });
        thresholds.push(ThresholdRow { n, p_d, status });
        labels.extend(points);
    }
    let rows: Vec<LabelRow> = labels
        .iter()
        .map(|l| LabelRow {
            n: l.n,
            p: l.p,
            k: mean_degree(l.n, l.p),
            pass: l.pass,
            mean_beta: l.mean_beta,
            se: l.se,
            p_value: l.p_value,
        })
        .collect();
    out.write(dir, "pd_labels.csv", &rows)?;
    out.write(dir, "pd_thresholds.csv", &thresholds)?;
    if p.n_list.len() >= 2 {
        let row = match pd_scaling(&labels) {
            Ok(fit) => {
                let status = if fit.converged {
                    "ok"
                } else {
                    "labels not linearly separable"
                };
                out.summary.push(format!(
                    "separatrix: log10 p = {:.4} {:+.4}·log10 n ({status})",
                    fit.intercept, fit.slope
                ));
                ScalingRow {
                    slope: Some(fit.slope),
                    intercept: Some(fit.intercept),
                    margin: Some(fit.margin),
                    converged: Some(fit.converged),
                    status: status.to_owned(),
                }
            }
            Err(e) => ScalingRow {
                slope: None,
                intercept: None,
                margin: None,
                converged: None,
                status: e.to_string(),
            },
        };
        out.write(dir, "pd_scaling.csv", &[row])?;
    }
    Ok(())
}

fn run_transient<R: ReplicaRunner>(
    runner: &R,
    p: &SweepParams,
    dir: &Path,
    out: &mut Outcome,
) -> Result<()> {
    out.replica_seeds = seeds(p.config.seed, p.config.replicas);
    let mut rows = Vec::new();
    let mut per_replica = Vec::new();
    for &prob in &p.p_grid {
        let k = mean_degree(p.config.n, prob);
        let tt = match transient_times(runner, &p.config, prob) {
            Ok(tt) => tt,
            Err(sinet_core::Error::InsufficientData(msg)) => {
                out.summary.push(format!("p = {prob}: {msg}"));
                rows.push(TransientRow {
                    p: prob,
                    k,
                    restricted: false,
                    replicas_used: 0,
                    dropped: p.config.replicas,
                    t50: None,
                    t75: None,
                    t100: None,
                    t_c: None,
                    inv_beta: None,
                    mean_beta: None,
                    n_eq: None,
                });
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        per_replica.extend(tt.per_replica.iter().map(|r| TransientReplicaRow {
            p: prob,
            seed: r.seed,
            t50: r.t50,
            t75: r.t75,
            t100: r.t100,
            n_eq: r.n_eq,
            beta: r.beta,
        }));
        rows.push(TransientRow {
            p: prob,
            k,
            restricted: tt.restricted,
            replicas_used: tt.per_replica.len(),
            dropped: tt.dropped,
            t50: Some(tt.t50),
            t75: Some(tt.t75),
            t100: Some(tt.t100),
            t_c: tt.t_c,
            inv_beta: tt.inv_beta,
            mean_beta: tt.mean_beta,
            n_eq: Some(tt.n_eq_mean),
        });
    }
    out.write(dir, "transient_times.csv", &rows)?;
    out.write(dir, "transient_replicas.csv", &per_replica)
}
