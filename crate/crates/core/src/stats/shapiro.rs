//! Shapiro–Wilk W test with Royston's AS R94 approximations for the
//! coefficients and the p-value.

use alloc::vec::Vec;

use super::special::{normal_quantile, normal_sf};
use super::TestResult;
use crate::error::invalid;
use crate::{Error, Result};

const C1: [f64; 6] = [0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056];
const C2: [f64; 6] = [0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633];
const C3: [f64; 4] = [0.5440, -0.39978, 0.025054, -6.714e-4];
const C4: [f64; 4] = [1.3822, -0.77857, 0.062767, -0.0020322];
const C5: [f64; 4] = [-1.5861, -0.31082, -0.083751, 0.0038915];
const C6: [f64; 3] = [-0.4803, -0.082676, 0.0030302];
const G: [f64; 2] = [-2.273, 0.459];

/// `c[0] + c[1] x + c[2] x² + ...`
fn poly(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &ci| acc * x + ci)
}

/// Coefficients `a_1 >= a_2 >= ... > 0` for the upper half of the order
/// statistics (the lower half carries the negated values).
fn coefficients(n: usize) -> Vec<f64> {
    let half = n / 2;
    if n == 3 {
        return alloc::vec![libm::sqrt(0.5)];
    }
    let an = n as f64;
    let an25 = an + 0.25;
    let mut a: Vec<f64> = (1..=half)
        .map(|i| normal_quantile((i as f64 - 0.375) / an25))
        .collect();
    let summ2 = 2.0 * a.iter().map(|m| m * m).sum::<f64>();
    let ssumm2 = libm::sqrt(summ2);
    let rsn = 1.0 / libm::sqrt(an);
    let a1 = poly(&C1, rsn) - a[0] / ssumm2;
    let (first_free, fac) = if n > 5 {
        let a2 = -a[1] / ssumm2 + poly(&C2, rsn);
        let fac = libm::sqrt(
            (summ2 - 2.0 * a[0] * a[0] - 2.0 * a[1] * a[1]) / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2),
        );
        a[1] = a2;
        (2, fac)
    } else {
        let fac = libm::sqrt((summ2 - 2.0 * a[0] * a[0]) / (1.0 - 2.0 * a1 * a1));
        (1, fac)
    };
    a[0] = a1;
    for ai in a.iter_mut().skip(first_free) {
        *ai = -*ai / fac;
    }
    a
}

/// Shapiro–Wilk normality test at level `alpha`, for `3 <= n <= 5000`.
/// `statistic` is W; `dof` carries the sample size.
pub fn shapiro_wilk(sample: &[f64], alpha: f64) -> Result<TestResult> {
    let n = sample.len();
    if !(3..=5000).contains(&n) {
        return Err(invalid!(
            "Shapiro-Wilk needs 3..=5000 observations, got {n}"
        ));
    }
    if sample.iter().any(|x| !x.is_finite()) {
        return Err(invalid!("sample contains non-finite values"));
    }
    let mut x = sample.to_vec();
    x.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let range = x[n - 1] - x[0];
    if range < 1e-19 * libm::fabs(x[0]).max(1.0) {
        return Err(Error::DegenerateInput(
            "all observations are identical".into(),
        ));
    }
    let a = coefficients(n);
    // Full antisymmetric coefficient vector, correlated with the data.
    let coef = |i: usize| -> f64 {
        let j = n - 1 - i;
        if i < j {
            -a[i]
        } else if i > j {
            a[j]
        } else {
            0.0
        }
    };
    let x_mean = x.iter().map(|v| v / range).sum::<f64>() / n as f64;
    let (mut ssa, mut ssx, mut sax) = (0.0, 0.0, 0.0);
    for (i, &xi) in x.iter().enumerate() {
        let c = coef(i);
        let d = xi / range - x_mean;
        ssa += c * c;
        ssx += d * d;
        sax += c * d;
    }
    let ssassx = libm::sqrt(ssa * ssx);
    let w = (1.0 - (ssassx - sax) * (ssassx + sax) / (ssa * ssx)).min(1.0);
    Ok(TestResult::new(w, n, p_value(w, n), alpha))
}

fn p_value(w: f64, n: usize) -> f64 {
    let an = n as f64;
    if n == 3 {
        let pi6 = 6.0 / core::f64::consts::PI;
        let stqr = core::f64::consts::FRAC_PI_3;
        return (pi6 * (libm::asin(libm::sqrt(w)) - stqr)).max(0.0);
    }
    let mut w1 = libm::log(1.0 - w);
    let (m, s) = if n <= 11 {
        let gamma = poly(&G, an);
        if w1 >= gamma {
            return 1e-99;
        }
        w1 = -libm::log(gamma - w1);
        (poly(&C3, an), libm::exp(poly(&C4, an)))
    } else {
        let ln_n = libm::log(an);
        (poly(&C5, ln_n), libm::exp(poly(&C6, ln_n)))
    };
    normal_sf((w1 - m) / s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_limits() {
        assert!(matches!(
            shapiro_wilk(&[1.0, 2.0], 0.05),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            shapiro_wilk(&[2.0; 10], 0.05),
            Err(Error::DegenerateInput(_))
        ));
        assert!(shapiro_wilk(&alloc::vec![0.0; 5001], 0.05).is_err());
    }

    #[test]
    fn bimodal_sample_rejected() {
        let mut s = alloc::vec![0.0; 12];
        s.extend(core::iter::repeat_n(10.0, 13));
        let r = shapiro_wilk(&s, 0.05).unwrap();
        assert!(r.reject);
        assert!(r.statistic > 0.0 && r.statistic <= 1.0);
    }

    #[test]
    fn coefficients_are_normalised() {
        for n in [4, 5, 6, 11, 25, 200] {
            let a = coefficients(n);
            let ss: f64 = 2.0 * a.iter().map(|v| v * v).sum::<f64>();
            assert!((ss - 1.0).abs() < 1e-3, "n = {n}: {ss}");
            assert!(a.windows(2).all(|w| w[0] >= w[1]));
        }
    }
}
