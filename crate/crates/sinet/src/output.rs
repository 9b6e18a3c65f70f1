//! CSV record layouts. Column names are part of the interface; keep them
//! stable.

use std::path::Path;

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::error::{CliError, Result};

/// A CSV record type with a fixed header, so that an empty table still gets
/// its header row.
pub trait Row: Serialize + DeserializeOwned {
    const HEADER: &'static [&'static str];
}

macro_rules! rows {
    ($($(#[$meta:meta])* $name:ident { $($(#[$fmeta:meta])* $field:ident : $ty:ty => $col:literal),+ $(,)? })+) => {$(
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
        pub struct $name {
            $($(#[$fmeta])* #[serde(rename = $col)] pub $field: $ty,)+
        }
        impl Row for $name {
            const HEADER: &'static [&'static str] = &[$($col),+];
        }
    )+};
}

rows! {
    DegreeRow { k: usize => "k", count: usize => "count" }
    /// One network of a component sweep.
    ComponentRow { p: f64 => "p", seed: u64 => "seed", m: usize => "m", n_g: usize => "N_G", s: usize => "S" }
    ComponentSummaryRow {
        p: f64 => "p", k: f64 => "k", n_g: f64 => "N_G", m: f64 => "m", s: f64 => "S", replicas: usize => "replicas",
    }
    TrajectoryRow { t: usize => "t", z: usize => "Z" }
    EnsembleRow { replica: usize => "replica", t: usize => "t", z: usize => "Z" }
    MeanTrajectoryRow { t: usize => "t", mean_z: f64 => "mean_Z" }
    /// Ensemble calibration of β at one linking probability.
    CalibrationRow {
        p: f64 => "p",
        k: f64 => "k",
        n: usize => "n",
        z0: usize => "z0",
        replicas_used: usize => "replicas_used",
        dropped: usize => "dropped",
        mean_beta: f64 => "mean_beta",
        se: f64 => "se",
        mean_slope_se: f64 => "mean_slope_se",
        t_statistic: Option<f64> => "t",
        dof: Option<usize> => "dof",
        p_value: Option<f64> => "p_value",
        /// The t-test does not reject β = 1.
        beta_is_one: bool => "beta_is_one",
        shapiro_w: Option<f64> => "shapiro_W",
        shapiro_p: Option<f64> => "shapiro_p",
        normal: Option<bool> => "normal",
    }
    BetaReplicaRow {
        p: f64 => "p",
        seed: u64 => "seed",
        beta: f64 => "beta",
        intercept: f64 => "intercept",
        slope_se: f64 => "slope_se",
        points: usize => "points",
        population: usize => "population",
    }
    LabelRow {
        n: usize => "n",
        p: f64 => "p",
        k: f64 => "k",
        pass: bool => "pass",
        mean_beta: f64 => "mean_beta",
        se: f64 => "se",
        p_value: Option<f64> => "p_value",
    }
    ThresholdRow { n: usize => "n", p_d: Option<f64> => "p_d", status: String => "status" }
    ScalingRow {
        slope: Option<f64> => "slope",
        intercept: Option<f64> => "intercept",
        margin: Option<f64> => "margin",
        converged: Option<bool> => "converged",
        status: String => "status",
    }
    TransientRow {
        p: f64 => "p",
        k: f64 => "k",
        restricted: bool => "restricted",
        replicas_used: usize => "replicas_used",
        dropped: usize => "dropped",
        t50: Option<f64> => "t50",
        t75: Option<f64> => "t75",
        t100: Option<f64> => "t100",
        t_c: Option<f64> => "T_c",
        inv_beta: Option<f64> => "inv_beta",
        mean_beta: Option<f64> => "mean_beta",
        n_eq: Option<f64> => "N_eq",
    }
    TransientReplicaRow {
        p: f64 => "p",
        seed: u64 => "seed",
        t50: usize => "t50",
        t75: usize => "t75",
        t100: usize => "t100",
        n_eq: usize => "N_eq",
        beta: Option<f64> => "beta",
    }
    EquilibriumRow { p: f64 => "p", k: f64 => "k", z0: usize => "z0", n_eq: f64 => "N_eq", n_g: f64 => "N_G" }

    BetaVsP { p: f64 => "p", k: f64 => "k", mean_beta: f64 => "mean_beta" }
    SeVsP { p: f64 => "p", k: f64 => "k", se: f64 => "se", mean_slope_se: f64 => "mean_slope_se" }
    BetaPoint { p: f64 => "p", seed: u64 => "seed", beta: f64 => "beta" }
    TransientVsP {
        p: f64 => "p",
        k: f64 => "k",
        t50: Option<f64> => "t50",
        t75: Option<f64> => "t75",
        t100: Option<f64> => "t100",
        t_c: Option<f64> => "T_c",
        inv_beta: Option<f64> => "inv_beta",
    }
    ComponentsVsP {
        p: f64 => "p", k: f64 => "k", n_g: f64 => "N_G", n_g_theory: f64 => "N_G_theory", m: f64 => "m", s: f64 => "S",
    }
    EquilibriumVsP { p: f64 => "p", k: f64 => "k", z0: usize => "z0", n_eq: f64 => "N_eq", n_g: f64 => "N_G" }
    DegreeDistribution { k: usize => "k", count: usize => "count", fraction: f64 => "fraction", poisson: f64 => "poisson" }
    PdPoint { n: usize => "n", p: f64 => "p", log10_n: f64 => "log10_n", log10_p: f64 => "log10_p", pass: bool => "pass" }
    PdLine { log10_n: f64 => "log10_n", log10_p_d: f64 => "log10_p_d" }
}

pub fn write_rows<T: Row>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_path(path)?;
    w.write_record(T::HEADER)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

/// Writes a table whose columns are only known at run time.
pub fn write_table(path: &Path, header: &[String], rows: &[Vec<String>]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

pub fn read_rows<T: Row>(path: &Path) -> Result<Vec<T>> {
    if !path.exists() {
        return Err(CliError::NotFound(path.to_path_buf()));
    }
    let mut r = csv::Reader::from_path(path)?;
    let found: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if found != T::HEADER {
        return Err(CliError::Usage(format!(
            "{}: unexpected columns {found:?}",
            path.display()
        )));
    }
    r.deserialize()
        .map(|row| row.map_err(CliError::from))
        .collect()
}
