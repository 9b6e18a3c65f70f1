use super::special::student_t_two_sided;
use super::{mean, sample_variance, TestResult};
use crate::error::invalid;
use crate::{Error, Result};

/// Two-sided one-sample Student t-test of `mean(sample) == mu0`.
pub fn t_test_one_sample(sample: &[f64], mu0: f64, alpha: f64) -> Result<TestResult> {
    if sample.len() < 2 {
        return Err(invalid!(
            "t-test needs at least 2 observations, got {}",
            sample.len()
        ));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(invalid!("alpha = {alpha} outside [0, 1]"));
    }
    let var = sample_variance(sample);
    if var <= 0.0 {
        return Err(Error::DegenerateInput("sample has zero variance".into()));
    }
    let n = sample.len();
    let t = (mean(sample) - mu0) / libm::sqrt(var / n as f64);
    let dof = n - 1;
    Ok(TestResult::new(
        t,
        dof,
        student_t_two_sided(t, dof as f64),
        alpha,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_computed_example() {
        let r = t_test_one_sample(&[1.1, 1.2, 1.3], 1.0, 0.05).unwrap();
        // mean 1.2, sd 0.1: t = 0.2 / (0.1/sqrt 3) = 2 sqrt 3
        assert!((r.statistic - 2.0 * libm::sqrt(3.0)).abs() < 1e-12);
        assert_eq!(r.dof, 2);
        // dof 2: p = 1 - t/sqrt(t^2+2) = 1 - sqrt(12/14)
        assert!((r.p_value - (1.0 - libm::sqrt(12.0 / 14.0))).abs() < 1e-12);
        assert!(!r.reject);
    }

    #[test]
    fn mean_at_null() {
        let r = t_test_one_sample(&[0.5, 1.5, 1.0], 1.0, 0.05).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.p_value, 1.0);
        assert!(!r.reject);
    }

    #[test]
    fn zero_variance_is_reported() {
        assert!(matches!(
            t_test_one_sample(&[1.0, 1.0, 1.0], 1.0, 0.05),
            Err(Error::DegenerateInput(_))
        ));
        assert!(matches!(
            t_test_one_sample(&[1.0], 1.0, 0.05),
            Err(Error::InvalidParameter(_))
        ));
    }
}
