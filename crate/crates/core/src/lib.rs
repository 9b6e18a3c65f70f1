//! Stochastic SI epidemics on Erdős–Rényi networks and their mean-field
//! (logistic) description.
//!
//! The crate is `no_std` and needs only `alloc`. It covers:
//!
//! - [`netgen`]: G(n, p) / G(n, L) generation, degree statistics, connected
//!   components and the structural thresholds `p1 = 1/(n-1)`, `p2 = ln(n)/n`.
//! - [`epidemic`]: agent-based SI dynamics with the proportional-neighbourhood
//!   contagion rule `λ·Zᵢ/kᵢ`, run to the absorbing state.
//! - [`meanfield`]: closed-form logistic solution, ratio dynamics,
//!   characteristic and transient times.
//! - [`stats`]: least squares, one-sample t-test, Shapiro–Wilk and a 2D
//!   linear maximum-margin classifier.
//! - [`calibration`]: the experimental pipelines that fit the mass-action
//!   rate β and locate the validity threshold of the mean-field description.
//!
//! Everything random is driven by [`rng::SimRng`] (ChaCha8) seeded from a
//! `u64`, so every result is reproducible from its seed.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod calibration;
pub mod epidemic;
mod error;
pub mod meanfield;
pub mod netgen;
pub mod rng;
pub mod runner;
pub mod stats;

pub use error::{Error, Result};
pub use runner::{ReplicaRunner, Sequential};
