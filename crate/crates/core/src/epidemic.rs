//! Agent-based SI dynamics with the proportional-neighbourhood contagion rule.
//!
//! A susceptible node `i` with `kᵢ > 0` neighbours, `Zᵢ` of them infected,
//! becomes infected at an update with probability `λ·Zᵢ/kᵢ`. Isolated nodes
//! are never infected unless seeded. Time is counted in macro steps of `n`
//! node updates.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::invalid;
use crate::netgen::{components, generate, ComponentDecomposition, GenMode, Network};
use crate::rng::{replica_seed, rng_for, SimRng, STREAM_DYNAMICS, STREAM_PLACEMENT};
use crate::{ReplicaRunner, Result};

/// Where the initial infectives are put.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Placement {
    /// `z0` distinct nodes drawn uniformly from the whole network.
    UniformRandom,
    /// `z0` distinct nodes drawn uniformly from the largest component.
    LargestComponentOnly,
    /// These nodes exactly; `z0` is taken from the list length.
    Explicit(Vec<u32>),
}

/// Node update scheme. Every scheme performs `n` node updates per macro step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum UpdateMode {
    /// One random permutation of all nodes per macro step, updated in turn
    /// with immediate visibility of new infections.
    AsyncSweep,
    /// `n` independent uniform node draws per macro step.
    #[default]
    AsyncUniform,
    /// All nodes evaluated against the state at the start of the step.
    Synchronous,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SimConfig {
    /// Contact efficiency, in (0, 1].
    pub lambda: f64,
    pub z0: usize,
    pub placement: Placement,
    pub update_mode: UpdateMode,
    pub seed: u64,
    pub max_macro_steps: usize,
    /// Also record Z after every single node update.
    pub record_micro: bool,
}

impl SimConfig {
    pub fn new(z0: usize, seed: u64) -> Self {
        SimConfig {
            lambda: 1.0,
            z0,
            placement: Placement::UniformRandom,
            update_mode: UpdateMode::AsyncUniform,
            seed,
            max_macro_steps: 1000,
            record_micro: false,
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        SimConfig {
            seed,
            ..self.clone()
        }
    }
}

/// Infection probability for a susceptible node; 0 for isolated nodes.
#[inline]
pub fn contagion_probability(lambda: f64, infected_neighbours: u32, degree: usize) -> f64 {
    if degree == 0 {
        0.0
    } else {
        lambda * infected_neighbours as f64 / degree as f64
    }
}

/// Mutable state of one epidemic on a fixed network.
#[derive(Debug, Clone)]
pub struct EpidemicState<'a> {
    net: &'a Network,
    infected: Vec<bool>,
    infected_neighbours: Vec<u32>,
    z: usize,
    /// Edges joining a susceptible and an infected node. Zero means absorbed.
    open_edges: u64,
    t_macro: usize,
}

impl<'a> EpidemicState<'a> {
    pub fn new(net: &'a Network, initial: &[u32]) -> Result<Self> {
        validate_initial(net.n(), initial)?;
        let n = net.n();
        let mut state = EpidemicState {
            net,
            infected: alloc::vec![false; n],
            infected_neighbours: alloc::vec![0; n],
            z: 0,
            open_edges: 0,
            t_macro: 0,
        };
        for &i in initial {
            state.infect(i as usize);
        }
        Ok(state)
    }

    fn infect(&mut self, node: usize) {
        debug_assert!(!self.infected[node]);
        self.infected[node] = true;
        self.z += 1;
        self.open_edges -= self.infected_neighbours[node] as u64;
        for &u in self.net.neighbours(node) {
            let u = u as usize;
            self.infected_neighbours[u] += 1;
            if !self.infected[u] {
                self.open_edges += 1;
            }
        }
    }

    /// Updates node `i` against the current state.
    #[inline]
    fn update_node(&mut self, i: usize, lambda: f64, rng: &mut SimRng) -> bool {
        if self.infected[i] || self.infected_neighbours[i] == 0 {
            return false;
        }
        let prob = contagion_probability(lambda, self.infected_neighbours[i], self.net.degree(i));
        if rng.random::<f64>() < prob {
            self.infect(i);
            true
        } else {
            false
        }
    }

    /// Advances one macro step. `order` is scratch space for the sweep
    /// permutation; `micro` receives Z after each node update when given.
    pub fn macro_step(
        &mut self,
        mode: UpdateMode,
        lambda: f64,
        rng: &mut SimRng,
        order: &mut Vec<u32>,
        mut micro: Option<&mut Vec<u32>>,
    ) {
        let n = self.net.n();
        match mode {
            UpdateMode::AsyncSweep => {
                if order.len() != n {
                    order.clear();
                    order.extend(0..n as u32);
                }
                order.shuffle(rng);
                for &i in order.iter() {
                    self.update_node(i as usize, lambda, rng);
                    if let Some(m) = micro.as_deref_mut() {
                        m.push(self.z as u32);
                    }
                }
            }
            UpdateMode::AsyncUniform => {
                for _ in 0..n {
                    let i = rng.random_range(0..n);
                    self.update_node(i, lambda, rng);
                    if let Some(m) = micro.as_deref_mut() {
                        m.push(self.z as u32);
                    }
                }
            }
            UpdateMode::Synchronous => {
                order.clear();
                for i in 0..n {
                    if self.infected[i] || self.infected_neighbours[i] == 0 {
                        continue;
                    }
                    let prob = contagion_probability(
                        lambda,
                        self.infected_neighbours[i],
                        self.net.degree(i),
                    );
                    if rng.random::<f64>() < prob {
                        order.push(i as u32);
                    }
                }
                let base = self.z as u32;
                for (done, &i) in order.iter().enumerate() {
                    self.infect(i as usize);
                    if let Some(m) = micro.as_deref_mut() {
                        m.push(base + done as u32 + 1);
                    }
                }
                // Keep n entries per macro step in the micro series.
                if let Some(m) = micro {
                    let z = self.z as u32;
                    m.extend(core::iter::repeat_n(z, n - order.len()));
                }
                order.clear();
            }
        }
        self.t_macro += 1;
    }

    /// No susceptible node has an infected neighbour.
    pub fn is_absorbed(&self) -> bool {
        self.open_edges == 0
    }

    pub fn z(&self) -> usize {
        self.z
    }

    pub fn x(&self) -> usize {
        self.net.n() - self.z
    }

    pub fn t_macro(&self) -> usize {
        self.t_macro
    }

    pub fn is_infected(&self, node: usize) -> bool {
        self.infected[node]
    }

    pub fn infected_nodes(&self) -> Vec<u32> {
        (0..self.net.n() as u32)
            .filter(|&i| self.infected[i as usize])
            .collect()
    }
}

fn validate_initial(n: usize, initial: &[u32]) -> Result<()> {
    if initial.is_empty() {
        return Err(invalid!("initial infected set is empty"));
    }
    let mut seen = alloc::vec![false; n];
    for &i in initial {
        let i = i as usize;
        if i >= n {
            return Err(invalid!("initial infective {i} outside 0..{n}"));
        }
        if core::mem::replace(&mut seen[i], true) {
            return Err(invalid!("initial infective {i} listed twice"));
        }
    }
    Ok(())
}

/// `k` distinct entries of `pool`, uniformly, via a partial Fisher–Yates.
fn sample_distinct(pool: &[u32], k: usize, rng: &mut SimRng) -> Vec<u32> {
    let mut pool = pool.to_vec();
    let (chosen, _) = pool.partial_shuffle(rng, k);
    chosen.to_vec()
}

/// Draws the initial infected set prescribed by `cfg`.
pub fn place_initial(
    net: &Network,
    cfg: &SimConfig,
    comps: Option<&ComponentDecomposition>,
) -> Result<Vec<u32>> {
    let n = net.n();
    let mut rng = rng_for(cfg.seed, STREAM_PLACEMENT);
    match &cfg.placement {
        Placement::Explicit(nodes) => {
            validate_initial(n, nodes)?;
            Ok(nodes.clone())
        }
        Placement::UniformRandom => {
            if cfg.z0 == 0 || cfg.z0 > n {
                return Err(invalid!("z0 = {} must lie in 1..={n}", cfg.z0));
            }
            let all: Vec<u32> = (0..n as u32).collect();
            Ok(sample_distinct(&all, cfg.z0, &mut rng))
        }
        Placement::LargestComponentOnly => {
            let owned;
            let comps = match comps {
                Some(c) => c,
                None => {
                    owned = components(net);
                    &owned
                }
            };
            if cfg.z0 == 0 || cfg.z0 > comps.giant_size {
                return Err(invalid!(
                    "z0 = {} must lie in 1..={} (largest component)",
                    cfg.z0,
                    comps.giant_size
                ));
            }
            Ok(sample_distinct(&comps.giant_nodes(), cfg.z0, &mut rng))
        }
    }
}

/// Infected count per macro step of one run.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Trajectory {
    /// Z at t = 0, 1, 2, ...
    pub z_series: Vec<usize>,
    pub absorbed: bool,
    /// Macro step at which absorption was detected.
    pub t_absorb: Option<usize>,
    pub seed: u64,
    pub initial: Vec<u32>,
    /// Z after every node update, when requested.
    pub micro_series: Option<Vec<u32>>,
}

impl Trajectory {
    pub fn final_z(&self) -> usize {
        *self.z_series.last().expect("trajectory holds t = 0")
    }

    /// First macro step with `Z >= level`.
    pub fn first_reach(&self, level: f64) -> Option<usize> {
        self.z_series.iter().position(|&z| z as f64 >= level)
    }
}

fn check_config(net: &Network, cfg: &SimConfig) -> Result<()> {
    if !(cfg.lambda > 0.0 && cfg.lambda <= 1.0) {
        return Err(invalid!("lambda = {} outside (0, 1]", cfg.lambda));
    }
    if !matches!(cfg.placement, Placement::Explicit(_)) && cfg.z0 > net.n() {
        return Err(invalid!("z0 = {} exceeds network size {}", cfg.z0, net.n()));
    }
    Ok(())
}

/// Runs one epidemic to absorption or `max_macro_steps`, returning the final
/// state alongside the trajectory.
pub fn run_trajectory_with_state<'a>(
    net: &'a Network,
    cfg: &SimConfig,
    comps: Option<&ComponentDecomposition>,
) -> Result<(Trajectory, EpidemicState<'a>)> {
    check_config(net, cfg)?;
    let initial = place_initial(net, cfg, comps)?;
    let mut state = EpidemicState::new(net, &initial)?;
    let mut rng = rng_for(cfg.seed, STREAM_DYNAMICS);
    let mut z_series = alloc::vec![state.z()];
    let mut micro = cfg.record_micro.then(Vec::new);
    let mut order = Vec::new();
    while !state.is_absorbed() && state.t_macro() < cfg.max_macro_steps {
        state.macro_step(
            cfg.update_mode,
            cfg.lambda,
            &mut rng,
            &mut order,
            micro.as_mut(),
        );
        z_series.push(state.z());
    }
    let absorbed = state.is_absorbed();
    let traj = Trajectory {
        z_series,
        absorbed,
        t_absorb: absorbed.then(|| state.t_macro()),
        seed: cfg.seed,
        initial,
        micro_series: micro,
    };
    Ok((traj, state))
}

pub fn run_trajectory(net: &Network, cfg: &SimConfig) -> Result<Trajectory> {
    run_trajectory_with_state(net, cfg, None).map(|(t, _)| t)
}

/// Final outbreak size implied by the network structure alone: the total size
/// of all components holding at least one initial infective.
pub fn equilibrium_size(net: &Network, initial: &[u32]) -> Result<usize> {
    equilibrium_size_in(&components(net), initial)
}

pub fn equilibrium_size_in(comps: &ComponentDecomposition, initial: &[u32]) -> Result<usize> {
    if initial.is_empty() {
        return Err(invalid!("initial infected set is empty"));
    }
    let mut seeded = alloc::vec![false; comps.m];
    let mut total = 0;
    for &i in initial {
        let label = *comps
            .labels
            .get(i as usize)
            .ok_or_else(|| invalid!("initial infective {i} outside the network"))?
            as usize;
        if !core::mem::replace(&mut seeded[label], true) {
            total += comps.sizes[label];
        }
    }
    Ok(total)
}

/// Network used by each replica of an ensemble.
#[derive(Debug, Clone, Copy)]
pub enum NetworkSource<'a> {
    Shared(&'a Network),
    /// A new network per replica, drawn with the replica's seed.
    Fresh {
        n: usize,
        mode: GenMode,
    },
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EnsembleTrajectory {
    /// Pointwise mean of Z; shorter runs are padded with their final value.
    pub mean_z: Vec<f64>,
    pub replicas: Vec<Trajectory>,
    pub seeds: Vec<u64>,
}

/// Pointwise mean with final-value padding.
pub fn mean_curve(runs: &[Trajectory]) -> Vec<f64> {
    let len = runs.iter().map(|r| r.z_series.len()).max().unwrap_or(0);
    (0..len)
        .map(|t| {
            let sum: f64 = runs
                .iter()
                .map(|r| *r.z_series.get(t).unwrap_or(&r.final_z()) as f64)
                .sum();
            sum / runs.len() as f64
        })
        .collect()
}

/// Replica `r` runs with seed `cfg.seed + r`.
pub fn run_ensemble<R: ReplicaRunner>(
    runner: &R,
    source: NetworkSource<'_>,
    cfg: &SimConfig,
    replicas: usize,
) -> Result<EnsembleTrajectory> {
    if replicas == 0 {
        return Err(invalid!("ensemble needs at least one replica"));
    }
    let seeds: Vec<u64> = (0..replicas).map(|r| replica_seed(cfg.seed, r)).collect();
    let shared_comps = match (source, &cfg.placement) {
        (NetworkSource::Shared(net), Placement::LargestComponentOnly) => Some(components(net)),
        _ => None,
    };
    let results = runner.map(replicas, |r| {
        let rcfg = cfg.with_seed(seeds[r]);
        match source {
            NetworkSource::Shared(net) => {
                run_trajectory_with_state(net, &rcfg, shared_comps.as_ref()).map(|(t, _)| t)
            }
            NetworkSource::Fresh { n, mode } => {
                let net = generate(n, mode, seeds[r])?;
                run_trajectory(&net, &rcfg)
            }
        }
    });
    let replicas = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(EnsembleTrajectory {
        mean_z: mean_curve(&replicas),
        replicas,
        seeds,
    })
}
