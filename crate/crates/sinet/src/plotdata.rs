//! Plot-ready tables derived from a finished run: one x column, the y
//! columns of a figure, and per-replica series where a figure shows them.

use std::collections::BTreeMap;
use std::path::Path;

use sinet_core::epidemic::Placement;
use sinet_core::meanfield::{logistic_z, MeanFieldParams};
use sinet_core::netgen::{giant_fraction_theory, GenMode};

use crate::error::{CliError, Result};
use crate::experiment::{mean_degree, Experiment, Outcome};
use crate::manifest::{ExperimentManifest, MANIFEST_FILE};
use crate::output::*;

pub fn emit(input: &Path, out_dir: &Path, out: &mut Outcome) -> Result<()> {
    let manifest = ExperimentManifest::read(&input.join(MANIFEST_FILE))?;
    match &manifest.params {
        Experiment::Generate(p) => {
            let rows: Vec<DegreeRow> = read_rows(&input.join("degrees.csv"))?;
            let total: usize = rows.iter().map(|r| r.count).sum();
            let lambda = match p.mode {
                GenMode::Gnp(prob) => mean_degree(p.n, prob),
                GenMode::Gnl(l) => 2.0 * l as f64 / p.n as f64,
            };
            let max_k = rows.last().map_or(0, |r| r.k);
            let poisson = poisson_pmf(lambda, max_k);
            let dist: Vec<DegreeDistribution> = rows
                .iter()
                .map(|r| DegreeDistribution {
                    k: r.k,
                    count: r.count,
                    fraction: r.count as f64 / total.max(1) as f64,
                    poisson: poisson[r.k],
                })
                .collect();
            out.write(out_dir, "degree_distribution.csv", &dist)
        }
        Experiment::ComponentsSweep(p) => {
            let rows: Vec<ComponentSummaryRow> = read_rows(&input.join("components_summary.csv"))?;
            let plot: Vec<ComponentsVsP> = rows
                .iter()
                .map(|r| ComponentsVsP {
                    p: r.p,
                    k: r.k,
                    n_g: r.n_g,
                    n_g_theory: p.n as f64 * giant_fraction_theory(r.k),
                    m: r.m,
                    s: r.s,
                })
                .collect();
            out.write(out_dir, "components_vs_p.csv", &plot)
        }
        Experiment::Simulate(p) => {
            let z0 = match &p.sim.placement {
                Placement::Explicit(nodes) => nodes.len(),
                _ => p.sim.z0,
            };
            let series = if p.replicas == 1 {
                let rows: Vec<TrajectoryRow> = read_rows(&input.join("trajectory.csv"))?;
                vec![rows.into_iter().map(|r| r.z).collect()]
            } else {
                let rows: Vec<EnsembleRow> = read_rows(&input.join("ensemble.csv"))?;
                let mut by_replica: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
                for r in rows {
                    by_replica.entry(r.replica).or_default().push(r.z);
                }
                by_replica.into_values().collect()
            };
            write_spaghetti(out_dir, p.n as f64, z0 as f64, &series, out)
        }
        Experiment::Calibrate(_) => {
            let reps: Vec<BetaReplicaRow> = read_rows(&input.join("calibration_replicas.csv"))?;
            out.write(out_dir, "beta_samples.csv", &beta_points(&reps))
        }
        Experiment::BetaCurve(_) => {
            let rows: Vec<CalibrationRow> = read_rows(&input.join("beta_curve.csv"))?;
            let reps: Vec<BetaReplicaRow> = read_rows(&input.join("beta_curve_replicas.csv"))?;
            let beta: Vec<BetaVsP> = rows
                .iter()
                .map(|r| BetaVsP {
                    p: r.p,
                    k: r.k,
                    mean_beta: r.mean_beta,
                })
                .collect();
            let se: Vec<SeVsP> = rows
                .iter()
                .map(|r| SeVsP {
                    p: r.p,
                    k: r.k,
                    se: r.se,
                    mean_slope_se: r.mean_slope_se,
                })
                .collect();
            out.write(out_dir, "beta_vs_p.csv", &beta)?;
            out.write(out_dir, "se_vs_p.csv", &se)?;
            out.write(out_dir, "beta_points_vs_p.csv", &beta_points(&reps))
        }
        Experiment::PdScan(_) => {
            let labels: Vec<LabelRow> = read_rows(&input.join("pd_labels.csv"))?;
            let points: Vec<PdPoint> = labels
                .iter()
                .map(|l| PdPoint {
                    n: l.n,
                    p: l.p,
                    log10_n: (l.n as f64).log10(),
                    log10_p: l.p.log10(),
                    pass: l.pass,
                })
                .collect();
            out.write(out_dir, "pd_points.csv", &points)?;
            let scaling = input.join("pd_scaling.csv");
            if scaling.exists() {
                let fit: Vec<ScalingRow> = read_rows(&scaling)?;
                let mut sizes: Vec<usize> = labels.iter().map(|l| l.n).collect();
                sizes.sort_unstable();
                sizes.dedup();
                let line: Vec<PdLine> = match fit.first() {
                    Some(ScalingRow {
                        slope: Some(s),
                        intercept: Some(b),
                        ..
                    }) => sizes
                        .iter()
                        .map(|&n| PdLine {
                            log10_n: (n as f64).log10(),
                            log10_p_d: b + s * (n as f64).log10(),
                        })
                        .collect(),
                    _ => Vec::new(),
                };
                out.write(out_dir, "pd_separatrix.csv", &line)?;
            }
            Ok(())
        }
        Experiment::TransientTimes(_) => {
            let rows: Vec<TransientRow> = read_rows(&input.join("transient_times.csv"))?;
            let plot: Vec<TransientVsP> = rows
                .iter()
                .map(|r| TransientVsP {
                    p: r.p,
                    k: r.k,
                    t50: r.t50,
                    t75: r.t75,
                    t100: r.t100,
                    t_c: r.t_c,
                    inv_beta: r.inv_beta,
                })
                .collect();
            out.write(out_dir, "transient_vs_p.csv", &plot)
        }
        Experiment::EquilibriumSweep(_) => {
            let rows: Vec<EquilibriumRow> = read_rows(&input.join("equilibrium.csv"))?;
            let plot: Vec<EquilibriumVsP> = rows
                .iter()
                .map(|r| EquilibriumVsP {
                    p: r.p,
                    k: r.k,
                    z0: r.z0,
                    n_eq: r.n_eq,
                    n_g: r.n_g,
                })
                .collect();
            out.write(out_dir, "equilibrium_vs_p.csv", &plot)
        }
        Experiment::Plotdata(_) => Err(CliError::Usage(format!(
            "{} holds plot data already",
            input.display()
        ))),
    }
}

fn beta_points(reps: &[BetaReplicaRow]) -> Vec<BetaPoint> {
    reps.iter()
        .map(|r| BetaPoint {
            p: r.p,
            seed: r.seed,
            beta: r.beta,
        })
        .collect()
}

fn poisson_pmf(lambda: f64, max_k: usize) -> Vec<f64> {
    let mut pmf = Vec::with_capacity(max_k + 1);
    let mut term = (-lambda).exp();
    for k in 0..=max_k {
        if k > 0 {
            term *= lambda / k as f64;
        }
        pmf.push(term);
    }
    pmf
}

/// `t, mean_Z, analytic_Z, Z_0, Z_1, ...`; each replica is padded with its
/// final value and the analytic curve is the logistic with β = 1.
fn write_spaghetti(
    out_dir: &Path,
    n: f64,
    z0: f64,
    series: &[Vec<usize>],
    out: &mut Outcome,
) -> Result<()> {
    let len = series.iter().map(Vec::len).max().unwrap_or(0);
    let mf = MeanFieldParams::new(n, z0, 1.0)?;
    let mut header: Vec<String> = ["t", "mean_Z", "analytic_Z"].map(String::from).to_vec();
    header.extend((0..series.len()).map(|r| format!("Z_{r}")));
    let rows: Vec<Vec<String>> = (0..len)
        .map(|t| {
            let zs: Vec<usize> = series
                .iter()
                .map(|s| *s.get(t).or(s.last()).unwrap_or(&0))
                .collect();
            let mean = zs.iter().sum::<usize>() as f64 / zs.len() as f64;
            let mut row = vec![
                t.to_string(),
                mean.to_string(),
                logistic_z(t as f64, &mf).to_string(),
            ];
            row.extend(zs.iter().map(usize::to_string));
            row
        })
        .collect();
    write_table(&out_dir.join("z_vs_t.csv"), &header, &rows)?;
    out.outputs.push("z_vs_t.csv".to_owned());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poisson_sums_to_one() {
        let pmf = poisson_pmf(10.0, 60);
        assert!((pmf.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!((pmf[10] - 0.1251100357211333).abs() < 1e-12);
    }
}
