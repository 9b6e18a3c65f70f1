//! Closed forms of the logistic (mass-action) SI model
//! `Z' = (β/N)(N − Z)Z` and the quantities derived from it.

use crate::error::invalid;
use crate::Result;

/// Parameters of the logistic curve. `n_eff` is the population the mean
/// field acts on: the whole network, or only its largest component.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MeanFieldParams {
    pub n_eff: f64,
    pub z0: f64,
    pub beta: f64,
}

impl MeanFieldParams {
    pub fn new(n_eff: f64, z0: f64, beta: f64) -> Result<Self> {
        if !(z0 > 0.0 && z0 <= n_eff) {
            return Err(invalid!(
                "need 0 < z0 <= n_eff, got z0 = {z0}, n_eff = {n_eff}"
            ));
        }
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(invalid!("beta must be positive and finite, got {beta}"));
        }
        Ok(MeanFieldParams { n_eff, z0, beta })
    }
}

/// `N·Z0 / (Z0 + (N − Z0)·e^(−βt))`, clamped to `[z0, n_eff]`.
pub fn logistic_z(t: f64, params: &MeanFieldParams) -> f64 {
    let MeanFieldParams { n_eff, z0, beta } = *params;
    let z = n_eff * z0 / (z0 + (n_eff - z0) * libm::exp(-beta * t));
    z.clamp(z0, n_eff)
}

/// Susceptible-to-infected ratio `R(t) = R0·e^(−βt)`.
pub fn ratio_r(t: f64, r0: f64, beta: f64) -> f64 {
    r0 * libm::exp(-beta * t)
}

/// Derivative-weighted mean time to equilibrium,
/// `T_c = (N/(N − Z0))·ln(N/Z0)/β`.
pub fn characteristic_time(params: &MeanFieldParams) -> Result<f64> {
    let MeanFieldParams { n_eff, z0, beta } = *params;
    if z0 >= n_eff {
        return Err(invalid!("characteristic time undefined when z0 = n_eff"));
    }
    Ok(n_eff / (n_eff - z0) * libm::log(n_eff / z0) / beta)
}

/// Time at which the logistic curve reaches `rho·n_eff`.
pub fn analytic_t_rho(rho: f64, params: &MeanFieldParams) -> Result<f64> {
    let MeanFieldParams { n_eff, z0, beta } = *params;
    if rho >= 1.0 {
        return Err(invalid!(
            "rho = {rho}: the logistic curve never reaches N in finite time"
        ));
    }
    if rho <= z0 / n_eff {
        return Err(invalid!(
            "rho = {rho} already met at t = 0 (z0/N = {})",
            z0 / n_eff
        ));
    }
    Ok(libm::log(rho * (n_eff - z0) / (z0 * (1.0 - rho))) / beta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ref_params() -> MeanFieldParams {
        MeanFieldParams::new(1e4, 1.0, 1.0).unwrap()
    }

    #[test]
    fn logistic_values() {
        let p = ref_params();
        assert_eq!(logistic_z(0.0, &p), 1.0);
        assert!((logistic_z(libm::log(9999.0), &p) - 5000.0).abs() < 1e-8);
        assert_eq!(logistic_z(1e6, &p), 1e4);
        let mut prev = 0.0;
        for i in 0..400 {
            let z = logistic_z(i as f64 * 0.1, &p);
            assert!(z >= prev);
            prev = z;
        }
    }

    #[test]
    fn ratio_values() {
        assert_eq!(ratio_r(0.0, 3.5, 2.0), 3.5);
        assert!((ratio_r(0.5, 3.5, 2.0) - 3.5 / core::f64::consts::E).abs() < 1e-15);
        let p = ref_params();
        let z = logistic_z(5.0, &p);
        let r0 = (p.n_eff - p.z0) / p.z0;
        assert!((ratio_r(5.0, r0, 1.0) - (p.n_eff - z) / z).abs() < 1e-12);
    }

    #[test]
    fn characteristic_time_values() {
        assert!((characteristic_time(&ref_params()).unwrap() - 9.2103).abs() < 1e-3);
        let half = MeanFieldParams::new(1e4, 5e3, 1.0).unwrap();
        assert!(
            (characteristic_time(&half).unwrap() - 2.0 * core::f64::consts::LN_2).abs() < 1e-12
        );
        let fast = MeanFieldParams::new(1e4, 1.0, 2.0).unwrap();
        let ratio =
            characteristic_time(&ref_params()).unwrap() / characteristic_time(&fast).unwrap();
        assert!((ratio - 2.0).abs() < 1e-12);
        let done = MeanFieldParams::new(10.0, 10.0, 1.0).unwrap();
        assert!(characteristic_time(&done).is_err());
    }

    #[test]
    fn t_rho_values() {
        let p = ref_params();
        assert!((analytic_t_rho(0.5, &p).unwrap() - libm::log(9999.0)).abs() < 1e-12);
        for rho in [0.3, 0.75, 0.9] {
            let t = analytic_t_rho(rho, &p).unwrap();
            assert!((logistic_z(t, &p) - rho * 1e4).abs() < 1e-10);
        }
        let half = MeanFieldParams::new(1e4, 5e3, 1.0).unwrap();
        assert!(analytic_t_rho(0.5, &half).is_err());
        assert!(analytic_t_rho(1.0, &p).is_err());
    }

    #[test]
    fn param_validation() {
        assert!(MeanFieldParams::new(10.0, 0.0, 1.0).is_err());
        assert!(MeanFieldParams::new(10.0, 11.0, 1.0).is_err());
        assert!(MeanFieldParams::new(10.0, 1.0, 0.0).is_err());
    }
}
