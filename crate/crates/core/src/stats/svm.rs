//! Two-dimensional linear maximum-margin classifier.
//!
//! Solves the soft-margin dual with penalty [`SVM_PENALTY`] by sequential
//! minimal optimisation: starting from all multipliers at zero, each
//! iteration updates the maximally KKT-violating pair in closed form. Ties are
//! broken by the lowest index, so the result is a pure function of the input.

use alloc::vec::Vec;

use crate::error::invalid;
use crate::{Error, Result};

/// Hinge-loss penalty. Large enough that separable data get the hard-margin
/// solution.
pub const SVM_PENALTY: f64 = 1e3;
const KKT_TOLERANCE: f64 = 1e-10;
const MAX_ITERATIONS: usize = 1_000_000;
const HINGE_SLACK: f64 = 1e-7;

/// Separating line `y = slope·x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SeparatrixFit {
    pub slope: f64,
    pub intercept: f64,
    /// Width `2/‖w‖` of the band between the two supporting lines.
    pub margin: f64,
    /// The optimiser met its KKT tolerance and every training point lies on
    /// the correct side of its supporting line.
    pub converged: bool,
    /// Normal vector and offset: the decision value is `w·p + bias`.
    pub w: [f64; 2],
    pub bias: f64,
    pub iterations: usize,
}

impl SeparatrixFit {
    /// Signed distance of `p` from the boundary; positive on the `+1` side.
    pub fn signed_distance(&self, p: (f64, f64)) -> f64 {
        (self.w[0] * p.0 + self.w[1] * p.1 + self.bias) / libm::hypot(self.w[0], self.w[1])
    }

    pub fn classify(&self, p: (f64, f64)) -> i8 {
        if self.signed_distance(p) >= 0.0 {
            1
        } else {
            -1
        }
    }
}

/// Fits the maximum-margin line between points labelled `+1` and `-1`.
pub fn svm_linear(points: &[(f64, f64)], labels: &[i8]) -> Result<SeparatrixFit> {
    if points.len() != labels.len() {
        return Err(invalid!(
            "{} points but {} labels",
            points.len(),
            labels.len()
        ));
    }
    if let Some(l) = labels.iter().find(|&&l| l != 1 && l != -1) {
        return Err(invalid!("label {l} is not +1 or -1"));
    }
    if !labels.contains(&1) || !labels.contains(&-1) {
        return Err(invalid!("both classes must be present"));
    }
    let n = points.len();
    let y: Vec<f64> = labels.iter().map(|&l| l as f64).collect();
    let kernel = |i: usize, j: usize| points[i].0 * points[j].0 + points[i].1 * points[j].1;
    let c = SVM_PENALTY;

    let mut alpha = alloc::vec![0.0f64; n];
    let mut grad = alloc::vec![-1.0f64; n];
    let mut iterations = 0;
    let mut kkt_met = false;
    while iterations < MAX_ITERATIONS {
        let (mut gmax, mut gmin) = (f64::NEG_INFINITY, f64::INFINITY);
        let (mut i, mut j) = (usize::MAX, usize::MAX);
        for t in 0..n {
            let v = -y[t] * grad[t];
            let up = if y[t] > 0.0 {
                alpha[t] < c
            } else {
                alpha[t] > 0.0
            };
            let low = if y[t] > 0.0 {
                alpha[t] > 0.0
            } else {
                alpha[t] < c
            };
            if up && v > gmax {
                gmax = v;
                i = t;
            }
            if low && v < gmin {
                gmin = v;
                j = t;
            }
        }
        if i == usize::MAX || j == usize::MAX || gmax - gmin < KKT_TOLERANCE {
            kkt_met = true;
            break;
        }
        iterations += 1;

        let q = |a: usize, b: usize| y[a] * y[b] * kernel(a, b);
        let (old_i, old_j) = (alpha[i], alpha[j]);
        if y[i] != y[j] {
            let quad = (q(i, i) + q(j, j) + 2.0 * q(i, j)).max(1e-12);
            let delta = (-grad[i] - grad[j]) / quad;
            let diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if diff > 0.0 {
                if alpha[j] < 0.0 {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = -diff;
            }
            if diff > 0.0 {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = c - diff;
                }
            } else if alpha[j] > c {
                alpha[j] = c;
                alpha[i] = c + diff;
            }
        } else {
            let quad = (q(i, i) + q(j, j) - 2.0 * q(i, j)).max(1e-12);
            let delta = (grad[i] - grad[j]) / quad;
            let sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if sum > c {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = sum - c;
                }
            } else if alpha[j] < 0.0 {
                alpha[j] = 0.0;
                alpha[i] = sum;
            }
            if sum > c {
                if alpha[j] > c {
                    alpha[j] = c;
                    alpha[i] = sum - c;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = sum;
            }
        }
        let (di, dj) = (alpha[i] - old_i, alpha[j] - old_j);
        for (t, g) in grad.iter_mut().enumerate() {
            *g += q(t, i) * di + q(t, j) * dj;
        }
    }

    let rho = {
        let (mut ub, mut lb) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut free, mut sum_free) = (0usize, 0.0);
        for t in 0..n {
            let yg = y[t] * grad[t];
            let at_upper = alpha[t] >= c;
            let at_lower = alpha[t] <= 0.0;
            if at_upper {
                if y[t] < 0.0 {
                    ub = ub.min(yg);
                } else {
                    lb = lb.max(yg);
                }
            } else if at_lower {
                if y[t] > 0.0 {
                    ub = ub.min(yg);
                } else {
                    lb = lb.max(yg);
                }
            } else {
                free += 1;
                sum_free += yg;
            }
        }
        if free > 0 {
            sum_free / free as f64
        } else {
            (ub + lb) / 2.0
        }
    };

    let mut w = [0.0f64; 2];
    for t in 0..n {
        w[0] += alpha[t] * y[t] * points[t].0;
        w[1] += alpha[t] * y[t] * points[t].1;
    }
    let bias = -rho;
    let norm = libm::hypot(w[0], w[1]);
    if norm == 0.0 {
        return Err(Error::DegenerateInput(
            "classifier collapsed to a zero normal".into(),
        ));
    }
    if libm::fabs(w[1]) < 1e-12 * norm {
        return Err(Error::DegenerateInput(
            "separatrix is vertical; no y = a + b·x form".into(),
        ));
    }
    let hinge_free = (0..n)
        .all(|t| y[t] * (w[0] * points[t].0 + w[1] * points[t].1 + bias) >= 1.0 - HINGE_SLACK);
    Ok(SeparatrixFit {
        slope: -w[0] / w[1],
        intercept: -bias / w[1],
        margin: 2.0 / norm,
        converged: kkt_met && hinge_free,
        w,
        bias,
        iterations,
    })
}
