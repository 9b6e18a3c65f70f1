use crate::{Error, Result};

/// Least-squares line `y = intercept + slope·t`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OlsFit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope under homoscedastic residuals; 0 when
    /// only two points are fitted.
    pub slope_se: f64,
    pub n_points: usize,
    pub r2: f64,
}

pub fn ols_fit(points: &[(f64, f64)]) -> Result<OlsFit> {
    let n = points.len();
    if n < 2 {
        return Err(Error::DegenerateInput(alloc::format!(
            "{n} point(s); need at least 2"
        )));
    }
    let nf = n as f64;
    let t_mean = points.iter().map(|p| p.0).sum::<f64>() / nf;
    let y_mean = points.iter().map(|p| p.1).sum::<f64>() / nf;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(t, y) in points {
        let (dt, dy) = (t - t_mean, y - y_mean);
        sxx += dt * dt;
        sxy += dt * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(Error::DegenerateInput(
            "all regressor values are equal".into(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * t_mean;
    let rss: f64 = points
        .iter()
        .map(|&(t, y)| {
            let r = y - intercept - slope * t;
            r * r
        })
        .sum();
    let slope_se = if n > 2 {
        libm::sqrt(rss / (nf - 2.0) / sxx)
    } else {
        0.0
    };
    let r2 = if syy > 0.0 { 1.0 - rss / syy } else { 1.0 };
    Ok(OlsFit {
        slope,
        intercept,
        slope_se,
        n_points: n,
        r2,
    })
}
