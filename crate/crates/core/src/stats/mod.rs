//! The statistical kernel used by the calibration pipelines.

mod ols;
mod shapiro;
pub mod special;
mod svm;
mod ttest;

pub use ols::{ols_fit, OlsFit};
pub use shapiro::shapiro_wilk;
pub use svm::{svm_linear, SeparatrixFit, SVM_PENALTY};
pub use ttest::t_test_one_sample;

/// Outcome of a hypothesis test.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TestResult {
    pub statistic: f64,
    /// Degrees of freedom (sample size for Shapiro–Wilk).
    pub dof: usize,
    pub p_value: f64,
    pub alpha: f64,
    /// `p_value < alpha`.
    pub reject: bool,
}

impl TestResult {
    pub(crate) fn new(statistic: f64, dof: usize, p_value: f64, alpha: f64) -> Self {
        let p_value = p_value.clamp(0.0, 1.0);
        TestResult {
            statistic,
            dof,
            p_value,
            alpha,
            reject: p_value < alpha,
        }
    }
}

pub(crate) fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample variance with n-1 denominator.
pub(crate) fn sample_variance(xs: &[f64]) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64
}
