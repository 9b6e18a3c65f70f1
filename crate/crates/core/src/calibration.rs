//! Experimental pipelines: fitting the mass-action rate β to simulated
//! trajectories, testing it against 1, locating the validity threshold `p_d`
//! and its size scaling, transient times, equilibrium sizes and component
//! structure across linking probabilities.
//!
//! Replica `r` of every pipeline draws its network from seed `seed + r` and
//! runs its epidemic on the same seed's placement and dynamics streams, so a
//! grid point is a pure function of `(config, p)`.

use alloc::vec::Vec;

use rand::seq::SliceRandom;

use crate::epidemic::{
    equilibrium_size_in, run_trajectory_with_state, Placement, SimConfig, Trajectory, UpdateMode,
};
use crate::error::invalid;
use crate::meanfield::{characteristic_time, MeanFieldParams};
use crate::netgen::{components, generate, thresholds, ComponentDecomposition, GenMode};
use crate::rng::{replica_seed, rng_for, STREAM_PLACEMENT};
use crate::stats::{mean, ols_fit, sample_variance, shapiro_wilk, svm_linear, t_test_one_sample};
use crate::stats::{SeparatrixFit, TestResult};
use crate::{Error, ReplicaRunner, Result};

/// Population the logistic model is fitted against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum PopulationBasis {
    /// The whole network, N.
    Network,
    /// The largest component, N_G.
    LargestComponent,
    /// The realised final outbreak size, N_eq.
    Equilibrium,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BetaEstimate {
    /// Seed of the trajectory the fit came from.
    pub seed: u64,
    pub beta: f64,
    pub intercept: f64,
    pub slope_se: f64,
    pub n_points_used: usize,
    pub population: usize,
    pub basis: PopulationBasis,
}

/// Time resolution of the β regression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum FitResolution {
    /// One point per macro step.
    MacroStep,
    /// One point per node update, at `t = update / n`. Needs a trajectory
    /// recorded with `record_micro`.
    #[default]
    MicroStep,
}

/// Fits `ln((N − Z)/Z) = intercept − β·t` over every macro step with
/// `0 < Z < N`, where `N = population`.
pub fn estimate_beta(
    traj: &Trajectory,
    population: usize,
    basis: PopulationBasis,
) -> Result<BetaEstimate> {
    estimate_beta_at(traj, population, basis, FitResolution::MacroStep)
}

/// [`estimate_beta`] at a chosen resolution. At micro-step resolution the
/// points are `t = 0` plus every node update with `0 < Z < N`.
pub fn estimate_beta_at(
    traj: &Trajectory,
    population: usize,
    basis: PopulationBasis,
    resolution: FitResolution,
) -> Result<BetaEstimate> {
    let samples: Vec<(f64, f64)> = match resolution {
        FitResolution::MacroStep => traj
            .z_series
            .iter()
            .enumerate()
            .map(|(t, &z)| (t as f64, z as f64))
            .collect(),
        FitResolution::MicroStep => {
            let micro = traj.micro_series.as_ref().ok_or_else(|| {
                invalid!("micro-step fit needs a trajectory recorded with record_micro")
            })?;
            // n updates per macro step; a run absorbed at t = 0 has none.
            let per_step = micro
                .len()
                .checked_div(traj.z_series.len() - 1)
                .unwrap_or(1) as f64;
            core::iter::once((0.0, traj.z_series[0] as f64))
                .chain(
                    micro
                        .iter()
                        .enumerate()
                        .map(|(i, &z)| ((i + 1) as f64 / per_step, z as f64)),
                )
                .collect()
        }
    };
    let fit = fit_logistic_rate(&samples, population as f64)?;
    Ok(BetaEstimate {
        seed: traj.seed,
        beta: fit.beta,
        intercept: fit.intercept,
        slope_se: fit.slope_se,
        n_points_used: fit.n_points,
        population,
        basis,
    })
}

/// Regression of `ln((N − Z)/Z)` on time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFit {
    pub beta: f64,
    /// Fitted `ln R0`.
    pub intercept: f64,
    pub slope_se: f64,
    pub n_points: usize,
}

/// Fits β to real-valued `(t, Z)` samples, using those with `0 < Z < N`.
pub fn fit_logistic_rate(samples: &[(f64, f64)], population: f64) -> Result<RateFit> {
    let points: Vec<(f64, f64)> = samples
        .iter()
        .filter(|&&(_, z)| z > 0.0 && z < population)
        .map(|&(t, z)| (t, libm::log((population - z) / z)))
        .collect();
    if points.len() < 2 {
        return Err(Error::InsufficientData(alloc::format!(
            "{} sample(s) with 0 < Z < {population}",
            points.len()
        )));
    }
    let fit = ols_fit(&points)?;
    Ok(RateFit {
        beta: -fit.slope,
        intercept: fit.intercept,
        slope_se: fit.slope_se,
        n_points: fit.n_points,
    })
}

/// Settings shared by the simulation-based pipelines.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CalibrationConfig {
    pub n: usize,
    pub z0: usize,
    pub replicas: usize,
    /// Significance level of the t-test and the normality check.
    pub alpha: f64,
    /// Seed inside the largest component and fit against N_G.
    pub restrict_to_largest: bool,
    pub lambda: f64,
    pub update_mode: UpdateMode,
    pub seed: u64,
    pub max_macro_steps: usize,
    pub resolution: FitResolution,
}

impl CalibrationConfig {
    pub fn new(n: usize, z0: usize, replicas: usize, seed: u64) -> Self {
        CalibrationConfig {
            n,
            z0,
            replicas,
            alpha: 0.05,
            restrict_to_largest: false,
            lambda: 1.0,
            update_mode: UpdateMode::AsyncUniform,
            seed,
            max_macro_steps: 1000,
            resolution: FitResolution::MicroStep,
        }
    }

    fn sim_config(&self, seed: u64, placement: Placement) -> SimConfig {
        SimConfig {
            lambda: self.lambda,
            z0: self.z0,
            placement,
            update_mode: self.update_mode,
            seed,
            max_macro_steps: self.max_macro_steps,
            record_micro: self.resolution == FitResolution::MicroStep,
        }
    }
}

/// Ensemble estimate of β at one linking probability.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BetaCalibration {
    pub p: f64,
    pub n: usize,
    pub per_replica: Vec<BetaEstimate>,
    /// Replicas without a usable regression (e.g. the epidemic never grew).
    pub dropped: usize,
    pub mean_beta: f64,
    /// Standard error of `mean_beta`: sd/√replicas.
    pub se: f64,
    /// Mean of the per-replica regression standard errors.
    pub mean_slope_se: f64,
    /// Two-sided test of β = 1; `None` when no replica produced a fit.
    pub ttest: Option<TestResult>,
    pub normality: Option<TestResult>,
}

impl BetaCalibration {
    /// β is statistically indistinguishable from 1.
    pub fn passes(&self) -> bool {
        self.ttest.is_some_and(|t| !t.reject)
    }

    /// Grid point where no replica's epidemic could be fitted; β is reported
    /// as 0 for such empty dynamics.
    fn empty(p: f64, n: usize, dropped: usize) -> Self {
        BetaCalibration {
            p,
            n,
            per_replica: Vec::new(),
            dropped,
            mean_beta: 0.0,
            se: 0.0,
            mean_slope_se: 0.0,
            ttest: None,
            normality: None,
        }
    }
}

fn beta_replica(cfg: &CalibrationConfig, p: f64, r: usize) -> Result<BetaEstimate> {
    let seed = replica_seed(cfg.seed, r);
    let net = generate(cfg.n, GenMode::Gnp(p), seed)?;
    let (traj, population, basis) = if cfg.restrict_to_largest {
        let comps = components(&net);
        if comps.giant_size < cfg.z0 {
            return Err(Error::InsufficientData(alloc::format!(
                "largest component ({}) smaller than z0",
                comps.giant_size
            )));
        }
        let sim = cfg.sim_config(seed, Placement::LargestComponentOnly);
        let (traj, _) = run_trajectory_with_state(&net, &sim, Some(&comps))?;
        (traj, comps.giant_size, PopulationBasis::LargestComponent)
    } else {
        let sim = cfg.sim_config(seed, Placement::UniformRandom);
        let (traj, _) = run_trajectory_with_state(&net, &sim, None)?;
        (traj, cfg.n, PopulationBasis::Network)
    };
    estimate_beta_at(&traj, population, basis, cfg.resolution)
}

/// Fits β on `cfg.replicas` fresh G(n, p) networks and tests it against 1.
pub fn calibrate_at_p<R: ReplicaRunner>(
    runner: &R,
    cfg: &CalibrationConfig,
    p: f64,
) -> Result<BetaCalibration> {
    if cfg.replicas < 3 {
        return Err(invalid!(
            "calibration needs at least 3 replicas, got {}",
            cfg.replicas
        ));
    }
    let results = runner.map(cfg.replicas, |r| beta_replica(cfg, p, r));
    let mut per_replica = Vec::with_capacity(cfg.replicas);
    let mut dropped = 0;
    for res in results {
        match res {
            Ok(est) => per_replica.push(est),
            Err(Error::InsufficientData(_)) => dropped += 1,
            Err(e) => return Err(e),
        }
    }
    if per_replica.len() < 3 {
        return Err(Error::InsufficientData(alloc::format!(
            "only {} of {} replicas produced a fit at p = {p}",
            per_replica.len(),
            cfg.replicas
        )));
    }
    let betas: Vec<f64> = per_replica.iter().map(|e| e.beta).collect();
    let mean_beta = mean(&betas);
    let se = libm::sqrt(sample_variance(&betas) / betas.len() as f64);
    let ttest = t_test_one_sample(&betas, 1.0, cfg.alpha)?;
    let normality = shapiro_wilk(&betas, cfg.alpha).ok();
    let mean_slope_se =
        per_replica.iter().map(|e| e.slope_se).sum::<f64>() / per_replica.len() as f64;
    Ok(BetaCalibration {
        p,
        n: cfg.n,
        per_replica,
        dropped,
        mean_beta,
        se,
        mean_slope_se,
        ttest: Some(ttest),
        normality,
    })
}

/// β(p) restricted to the largest component, one calibration per grid point.
/// Grid points without any fittable replica are reported with β = 0.
pub fn beta_curve<R: ReplicaRunner>(
    runner: &R,
    cfg: &CalibrationConfig,
    p_grid: &[f64],
) -> Result<Vec<BetaCalibration>> {
    if p_grid.is_empty() {
        return Err(invalid!("empty p grid"));
    }
    let cfg = CalibrationConfig {
        restrict_to_largest: true,
        ..cfg.clone()
    };
    p_grid
        .iter()
        .map(|&p| match calibrate_at_p(runner, &cfg, p) {
            Err(Error::InsufficientData(_)) => Ok(BetaCalibration::empty(p, cfg.n, cfg.replicas)),
            other => other,
        })
        .collect()
}

/// One grid point of a `p_d` scan.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LabeledPoint {
    pub n: usize,
    pub p: f64,
    /// β passed the t-test against 1.
    pub pass: bool,
    pub mean_beta: f64,
    pub se: f64,
    pub p_value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PdScan {
    pub n: usize,
    pub p_d: f64,
    pub points: Vec<LabeledPoint>,
}

/// Calibrates with a single initial infective at every grid point (sorted
/// ascending) and labels each by the t-test outcome. Points where the fit
/// fails entirely count as failing.
pub fn scan_labels<R: ReplicaRunner>(
    runner: &R,
    cfg: &CalibrationConfig,
    p_grid: &[f64],
) -> Result<Vec<LabeledPoint>> {
    if p_grid.is_empty() {
        return Err(invalid!("empty p grid"));
    }
    let cfg = CalibrationConfig {
        z0: 1,
        ..cfg.clone()
    };
    let mut grid = p_grid.to_vec();
    grid.sort_by(|a, b| a.partial_cmp(b).expect("finite grid"));
    grid.dedup();
    grid.iter()
        .map(|&p| match calibrate_at_p(runner, &cfg, p) {
            Ok(cal) => Ok(LabeledPoint {
                n: cfg.n,
                p,
                pass: cal.passes(),
                mean_beta: cal.mean_beta,
                se: cal.se,
                p_value: cal.ttest.map(|t| t.p_value),
            }),
            Err(Error::InsufficientData(_) | Error::DegenerateInput(_)) => Ok(LabeledPoint {
                n: cfg.n,
                p,
                pass: false,
                mean_beta: 0.0,
                se: 0.0,
                p_value: None,
            }),
            Err(e) => Err(e),
        })
        .collect()
}

/// Smallest grid point from which every larger grid point passes.
pub fn locate_pd(points: &[LabeledPoint]) -> Result<f64> {
    let mut sorted: Vec<&LabeledPoint> = points.iter().collect();
    sorted.sort_by(|a, b| a.p.partial_cmp(&b.p).expect("finite grid"));
    let passing_suffix = sorted.iter().rev().take_while(|pt| pt.pass).count();
    if passing_suffix == 0 {
        return Err(Error::ThresholdNotBracketed(
            "largest grid point fails the test".into(),
        ));
    }
    if passing_suffix == sorted.len() {
        return Err(Error::ThresholdNotBracketed(
            "every grid point passes the test".into(),
        ));
    }
    Ok(sorted[sorted.len() - passing_suffix].p)
}

pub fn pd_scan<R: ReplicaRunner>(
    runner: &R,
    cfg: &CalibrationConfig,
    p_grid: &[f64],
) -> Result<PdScan> {
    let points = scan_labels(runner, cfg, p_grid)?;
    let p_d = locate_pd(&points)?;
    Ok(PdScan {
        n: cfg.n,
        p_d,
        points,
    })
}

/// Maximum-margin line `log10 p = intercept + slope·log10 n` between passing
/// and failing points; the slope is the power-law exponent of `p_d(n)`.
pub fn pd_scaling(points: &[LabeledPoint]) -> Result<SeparatrixFit> {
    let mut sizes: Vec<usize> = points.iter().map(|pt| pt.n).collect();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.len() < 2 {
        return Err(invalid!(
            "need at least two network sizes, got {}",
            sizes.len()
        ));
    }
    let xy: Vec<(f64, f64)> = points
        .iter()
        .map(|pt| (libm::log10(pt.n as f64), libm::log10(pt.p)))
        .collect();
    let labels: Vec<i8> = points
        .iter()
        .map(|pt| if pt.pass { 1 } else { -1 })
        .collect();
    svm_linear(&xy, &labels)
}

/// Per-replica transient times, in macro steps.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ReplicaTimes {
    pub seed: u64,
    pub t50: usize,
    pub t75: usize,
    pub t100: usize,
    pub n_eq: usize,
    pub beta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TransientTimes {
    pub p: f64,
    pub t50: f64,
    pub t75: f64,
    pub t100: f64,
    /// Characteristic time of the logistic curve on the mean N_eq with the
    /// ensemble β.
    pub t_c: Option<f64>,
    pub inv_beta: Option<f64>,
    pub mean_beta: Option<f64>,
    pub n_eq_mean: f64,
    /// Dynamics were confined to the largest component (`p < p2`).
    pub restricted: bool,
    pub per_replica: Vec<ReplicaTimes>,
    pub dropped: usize,
}

fn transient_replica(
    cfg: &CalibrationConfig,
    p: f64,
    restrict: bool,
    r: usize,
) -> Result<ReplicaTimes> {
    let seed = replica_seed(cfg.seed, r);
    let net = generate(cfg.n, GenMode::Gnp(p), seed)?;
    let comps = components(&net);
    let placement = if restrict {
        if comps.giant_size <= cfg.z0 {
            return Err(Error::InsufficientData(
                "largest component too small for z0".into(),
            ));
        }
        Placement::LargestComponentOnly
    } else {
        Placement::UniformRandom
    };
    let sim = cfg.sim_config(seed, placement);
    let (traj, _) = run_trajectory_with_state(&net, &sim, Some(&comps))?;
    let n_eq = equilibrium_size_in(&comps, &traj.initial)?;
    let reach = |rho: f64| {
        traj.first_reach(rho * n_eq as f64).ok_or_else(|| {
            Error::InsufficientData(alloc::format!("run stopped before reaching {rho} of N_eq"))
        })
    };
    let beta = estimate_beta_at(&traj, n_eq, PopulationBasis::Equilibrium, cfg.resolution)
        .ok()
        .map(|b| b.beta);
    Ok(ReplicaTimes {
        seed,
        t50: reach(0.5)?,
        t75: reach(0.75)?,
        t100: reach(1.0)?,
        n_eq,
        beta,
    })
}

/// Simulated `t50`, `t75`, `t100` (first macro step with `Z >= ρ·N_eq`)
/// alongside the mean-field `T_c` and `1/β`. Below `p2` the epidemic is
/// seeded in, and confined to, the largest component.
pub fn transient_times<R: ReplicaRunner>(
    runner: &R,
    cfg: &CalibrationConfig,
    p: f64,
) -> Result<TransientTimes> {
    if cfg.replicas == 0 {
        return Err(invalid!("need at least one replica"));
    }
    let restricted = cfg.n >= 3 && p < thresholds(cfg.n)?.p2;
    let results = runner.map(cfg.replicas, |r| transient_replica(cfg, p, restricted, r));
    let mut per_replica = Vec::new();
    let mut dropped = 0;
    for res in results {
        match res {
            Ok(t) => per_replica.push(t),
            Err(Error::InsufficientData(_)) => dropped += 1,
            Err(e) => return Err(e),
        }
    }
    if per_replica.is_empty() {
        return Err(Error::InsufficientData(alloc::format!(
            "no usable replica at p = {p}"
        )));
    }
    let k = per_replica.len() as f64;
    let avg = |f: fn(&ReplicaTimes) -> f64| per_replica.iter().map(f).sum::<f64>() / k;
    let n_eq_mean = avg(|t| t.n_eq as f64);
    let betas: Vec<f64> = per_replica.iter().filter_map(|t| t.beta).collect();
    let mean_beta = (!betas.is_empty())
        .then(|| mean(&betas))
        .filter(|b| *b > 0.0);
    let t_c = mean_beta.and_then(|b| {
        MeanFieldParams::new(n_eq_mean, cfg.z0 as f64, b)
            .and_then(|mf| characteristic_time(&mf))
            .ok()
    });
    Ok(TransientTimes {
        p,
        t50: avg(|t| t.t50 as f64),
        t75: avg(|t| t.t75 as f64),
        t100: avg(|t| t.t100 as f64),
        t_c,
        inv_beta: mean_beta.map(|b| 1.0 / b),
        mean_beta,
        n_eq_mean,
        restricted,
        per_replica,
        dropped,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EquilibriumRecord {
    pub p: f64,
    pub z0: usize,
    /// Ensemble mean of the final outbreak size.
    pub n_eq_sim: f64,
    pub n_g_mean: f64,
}

/// `z0` distinct nodes, uniformly, conditioned on hitting the largest
/// component (rejection sampling).
fn seeded_placement(
    comps: &ComponentDecomposition,
    z0: usize,
    rng: &mut crate::rng::SimRng,
) -> Vec<u32> {
    let n = comps.labels.len();
    let mut pool: Vec<u32> = (0..n as u32).collect();
    loop {
        let (chosen, _) = pool.partial_shuffle(rng, z0);
        if chosen
            .iter()
            .any(|&i| comps.labels[i as usize] == comps.giant_label)
        {
            return chosen.to_vec();
        }
    }
}

/// Final outbreak size against the largest-component size, from structure
/// alone. Placements are conditioned on seeding the largest component, so
/// every record satisfies `n_g_mean <= n_eq_sim <= n`.
pub fn equilibrium_sweep<R: ReplicaRunner>(
    runner: &R,
    n: usize,
    p_grid: &[f64],
    z0_list: &[usize],
    replicas: usize,
    seed: u64,
) -> Result<Vec<EquilibriumRecord>> {
    if p_grid.is_empty() || z0_list.is_empty() {
        return Err(invalid!("empty p grid or z0 list"));
    }
    if replicas == 0 {
        return Err(invalid!("need at least one replica"));
    }
    if let Some(z0) = z0_list.iter().find(|&&z| z == 0 || z > n) {
        return Err(invalid!("z0 = {z0} outside 1..={n}"));
    }
    let mut records = Vec::new();
    for &p in p_grid {
        let per_replica = runner.map(replicas, |r| -> Result<(usize, Vec<usize>)> {
            let rseed = replica_seed(seed, r);
            let net = generate(n, GenMode::Gnp(p), rseed)?;
            let comps = components(&net);
            let mut rng = rng_for(rseed, STREAM_PLACEMENT);
            let sizes = z0_list
                .iter()
                .map(|&z0| equilibrium_size_in(&comps, &seeded_placement(&comps, z0, &mut rng)))
                .collect::<Result<Vec<_>>>()?;
            Ok((comps.giant_size, sizes))
        });
        let per_replica = per_replica.into_iter().collect::<Result<Vec<_>>>()?;
        let n_g_mean = per_replica.iter().map(|r| r.0 as f64).sum::<f64>() / replicas as f64;
        for (zi, &z0) in z0_list.iter().enumerate() {
            let n_eq_sim =
                per_replica.iter().map(|r| r.1[zi] as f64).sum::<f64>() / replicas as f64;
            records.push(EquilibriumRecord {
                p,
                z0,
                n_eq_sim,
                n_g_mean,
            });
        }
    }
    Ok(records)
}

/// Ensemble component statistics at one linking probability.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ComponentRecord {
    pub p: f64,
    /// Expected mean degree `(n − 1)p`.
    pub k: f64,
    pub n_g_mean: f64,
    pub m_mean: f64,
    pub s_mean: f64,
    pub replicas: usize,
}

/// Component statistics of one network.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ComponentSample {
    pub seed: u64,
    pub m: usize,
    pub n_g: usize,
    /// Number of distinct component sizes.
    pub s: usize,
}

/// One sample per replica and grid point, ordered by grid point then replica.
pub fn component_samples<R: ReplicaRunner>(
    runner: &R,
    n: usize,
    p_grid: &[f64],
    replicas: usize,
    seed: u64,
) -> Result<Vec<(f64, Vec<ComponentSample>)>> {
    if replicas == 0 {
        return Err(invalid!("need at least one replica"));
    }
    p_grid
        .iter()
        .map(|&p| {
            let samples = runner.map(replicas, |r| -> Result<ComponentSample> {
                let rseed = replica_seed(seed, r);
                let c = components(&generate(n, GenMode::Gnp(p), rseed)?);
                Ok(ComponentSample {
                    seed: rseed,
                    m: c.m,
                    n_g: c.giant_size,
                    s: c.distinct_sizes,
                })
            });
            Ok((p, samples.into_iter().collect::<Result<Vec<_>>>()?))
        })
        .collect()
}

/// Ensemble means of [`component_samples`].
pub fn component_sweep<R: ReplicaRunner>(
    runner: &R,
    n: usize,
    p_grid: &[f64],
    replicas: usize,
    seed: u64,
) -> Result<Vec<ComponentRecord>> {
    let samples = component_samples(runner, n, p_grid, replicas, seed)?;
    Ok(samples
        .iter()
        .map(|(p, s)| summarize_components(n, *p, s))
        .collect())
}

pub fn summarize_components(n: usize, p: f64, samples: &[ComponentSample]) -> ComponentRecord {
    let k = samples.len() as f64;
    let avg =
        |f: fn(&ComponentSample) -> usize| samples.iter().map(|s| f(s) as f64).sum::<f64>() / k;
    ComponentRecord {
        p,
        k: (n as f64 - 1.0) * p,
        n_g_mean: avg(|s| s.n_g),
        m_mean: avg(|s| s.m),
        s_mean: avg(|s| s.s),
        replicas: samples.len(),
    }
}
