//! Erdős–Rényi network generation and structural statistics.

mod components;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::error::invalid;
use crate::rng::{rng_for, SimRng, STREAM_NETWORK};
use crate::Result;

pub use components::{components, ComponentDecomposition, UnionFind};

/// How the edge set of a network was drawn.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum GenMode {
    /// Every pair linked independently with probability `p`.
    Gnp(f64),
    /// Exactly `L` distinct pairs drawn uniformly without replacement.
    Gnl(usize),
}

impl GenMode {
    pub fn name(&self) -> &'static str {
        match self {
            GenMode::Gnp(_) => "GNP",
            GenMode::Gnl(_) => "GNL",
        }
    }
}

impl fmt::Display for GenMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenMode::Gnp(p) => write!(f, "mode=GNP param={p}"),
            GenMode::Gnl(l) => write!(f, "mode=GNL param={l}"),
        }
    }
}

/// Immutable undirected simple graph stored as compressed adjacency lists.
///
/// Neighbour lists are sorted ascending.
#[derive(Clone, PartialEq)]
pub struct Network {
    n: usize,
    offsets: Vec<usize>,
    neighbours: Vec<u32>,
    mode: GenMode,
    seed: u64,
}

impl fmt::Debug for Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Network")
            .field("n", &self.n)
            .field("edges", &self.edge_count())
            .field("mode", &self.mode)
            .field("seed", &self.seed)
            .finish()
    }
}

/// Number of unordered node pairs, `n(n-1)/2`.
pub fn pair_count(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Decodes a pair index into `(v, w)` with `w < v`, where pairs are ordered
/// by `v` and then `w`: index `v(v-1)/2 + w`.
fn decode_pair(k: u64) -> (u32, u32) {
    let mut v = ((1.0 + libm::sqrt(1.0 + 8.0 * k as f64)) / 2.0) as u64;
    while v * (v - 1) / 2 > k {
        v -= 1;
    }
    while (v + 1) * v / 2 <= k {
        v += 1;
    }
    (v as u32, (k - v * (v - 1) / 2) as u32)
}

/// Draws a network with `n` nodes. The same `(n, mode, seed)` always yields
/// the same edge set.
pub fn generate(n: usize, mode: GenMode, seed: u64) -> Result<Network> {
    if n == 0 {
        return Err(invalid!("network needs at least one node"));
    }
    if n > u32::MAX as usize {
        return Err(invalid!("node count {n} exceeds u32 range"));
    }
    let mut rng = rng_for(seed, STREAM_NETWORK);
    let edges = match mode {
        GenMode::Gnp(p) => {
            if !(0.0..=1.0).contains(&p) {
                return Err(invalid!("linking probability {p} outside [0, 1]"));
            }
            gnp_edges(n, p, &mut rng)
        }
        GenMode::Gnl(l) => {
            let total = pair_count(n);
            if l as u64 > total {
                return Err(invalid!("{l} links exceed the {total} available pairs"));
            }
            gnl_edges(n, l as u64, &mut rng)
        }
    };
    Ok(Network::from_sorted_edges(n, &edges, mode, seed))
}

/// Geometric skipping over the pair sequence: the gap to the next present
/// pair is Geometric(p), so the expected cost is O(n + |E|).
fn gnp_edges(n: usize, p: f64, rng: &mut SimRng) -> Vec<(u32, u32)> {
    let mut edges = Vec::new();
    if p == 0.0 || n < 2 {
        return edges;
    }
    if p == 1.0 {
        edges.reserve(pair_count(n) as usize);
        for v in 1..n as u32 {
            edges.extend((0..v).map(|w| (v, w)));
        }
        return edges;
    }
    let expected = p * pair_count(n) as f64;
    edges.reserve((expected + 4.0 * libm::sqrt(expected)) as usize);
    let log_q = libm::log1p(-p);
    let n = n as i64;
    let mut v: i64 = 1;
    let mut w: i64 = -1;
    while v < n {
        let r: f64 = rng.random();
        let skip = libm::floor(libm::log1p(-r) / log_q);
        // Saturating: a huge skip simply runs past the last pair.
        w = w.saturating_add(1).saturating_add(skip as i64);
        while w >= v && v < n {
            w -= v;
            v += 1;
        }
        if v < n {
            edges.push((v as u32, w as u32));
        }
    }
    edges
}

/// Floyd's sampling of `l` distinct pair indices out of `n(n-1)/2`.
fn gnl_edges(n: usize, l: u64, rng: &mut SimRng) -> Vec<(u32, u32)> {
    let total = pair_count(n);
    let complement = l > total / 2;
    let draw = if complement { total - l } else { l };
    let mut chosen = BTreeSet::new();
    for j in total - draw..total {
        let t = rng.random_range(0..=j);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    if complement {
        (0..total)
            .filter(|k| !chosen.contains(k))
            .map(decode_pair)
            .collect()
    } else {
        chosen.into_iter().map(decode_pair).collect()
    }
}

impl Network {
    /// Builds a network from an explicit edge list (any order, either
    /// orientation). Rejects self-loops, duplicates and out-of-range ids.
    pub fn from_edges(n: usize, edges: &[(u32, u32)], mode: GenMode, seed: u64) -> Result<Self> {
        if n == 0 || n > u32::MAX as usize {
            return Err(invalid!("node count {n} out of range"));
        }
        let mut canon: Vec<(u32, u32)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == b {
                return Err(invalid!("self-loop at node {a}"));
            }
            if a as usize >= n || b as usize >= n {
                return Err(invalid!("edge ({a}, {b}) references a node outside 0..{n}"));
            }
            canon.push((a.max(b), a.min(b)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(invalid!("duplicate edge ({}, {})", w[0].1, w[0].0));
        }
        Ok(Self::from_sorted_edges(n, &canon, mode, seed))
    }

    /// `edges` must hold distinct `(v, w)` pairs with `w < v`, sorted by
    /// `(v, w)`; every neighbour list then comes out sorted.
    fn from_sorted_edges(n: usize, edges: &[(u32, u32)], mode: GenMode, seed: u64) -> Self {
        let mut degree = alloc::vec![0usize; n];
        for &(v, w) in edges {
            degree[v as usize] += 1;
            degree[w as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut acc = 0;
        for d in &degree {
            acc += d;
            offsets.push(acc);
        }
        let mut cursor: Vec<usize> = offsets[..n].to_vec();
        let mut neighbours = alloc::vec![0u32; acc];
        for &(v, w) in edges {
            neighbours[cursor[v as usize]] = w;
            cursor[v as usize] += 1;
            neighbours[cursor[w as usize]] = v;
            cursor[w as usize] += 1;
        }
        Network {
            n,
            offsets,
            neighbours,
            mode,
            seed,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.neighbours.len() / 2
    }

    pub fn mode(&self) -> GenMode {
        self.mode
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn degree(&self, node: usize) -> usize {
        self.offsets[node + 1] - self.offsets[node]
    }

    pub fn neighbours(&self, node: usize) -> &[u32] {
        &self.neighbours[self.offsets[node]..self.offsets[node + 1]]
    }

    /// Each edge once as `(i, j)` with `i < j`, ordered by `i` then `j`.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n).flat_map(move |i| {
            self.neighbours(i)
                .iter()
                .filter(move |&&j| j as usize > i)
                .map(move |&j| (i as u32, j))
        })
    }

    /// Mean degree `2|E|/n`.
    pub fn mean_degree(&self) -> f64 {
        self.neighbours.len() as f64 / self.n as f64
    }
}

/// Degree distribution of a network.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeStats {
    /// degree -> number of nodes with that degree
    pub histogram: BTreeMap<usize, usize>,
    pub mean_degree: f64,
    /// Sample variance (n-1 denominator); 0 for a single node.
    pub variance: f64,
}

pub fn degree_stats(net: &Network) -> DegreeStats {
    let n = net.n();
    let mut histogram = BTreeMap::new();
    for i in 0..n {
        *histogram.entry(net.degree(i)).or_insert(0) += 1;
    }
    let mean_degree = net.mean_degree();
    let variance = if n > 1 {
        (0..n)
            .map(|i| {
                let d = net.degree(i) as f64 - mean_degree;
                d * d
            })
            .sum::<f64>()
            / (n - 1) as f64
    } else {
        0.0
    };
    DegreeStats {
        histogram,
        mean_degree,
        variance,
    }
}

/// The two structural thresholds of G(n, p).
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Thresholds {
    /// `1/(n-1)`: onset of giant-component growth (mean degree 1).
    pub p1: f64,
    /// `ln(n)/n`: the giant component spans the network.
    pub p2: f64,
}

pub fn thresholds(n: usize) -> Result<Thresholds> {
    if n < 3 {
        return Err(invalid!("thresholds need n >= 3, got {n}"));
    }
    let nf = n as f64;
    Ok(Thresholds {
        p1: 1.0 / (nf - 1.0),
        p2: libm::log(nf) / nf,
    })
}

/// Asymptotic giant-component fraction of G(n, p) with mean degree `k`:
/// the largest root of `S = 1 - exp(-k S)`.
pub fn giant_fraction_theory(k: f64) -> f64 {
    if k <= 1.0 {
        return 0.0;
    }
    // From S = 1 the iteration decreases monotonically onto the largest root.
    let mut s = 1.0;
    for _ in 0..1_000_000 {
        let next = 1.0 - libm::exp(-k * s);
        if libm::fabs(next - s) < 1e-12 {
            return next;
        }
        s = next;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn complete_graph() {
        let net = generate(5, GenMode::Gnp(1.0), 3).unwrap();
        assert_eq!(net.edge_count(), 10);
        assert!((0..5).all(|i| net.degree(i) == 4));
        let stats = degree_stats(&generate(100, GenMode::Gnp(1.0), 0).unwrap());
        assert_eq!(stats.histogram.get(&99), Some(&100));
        assert_eq!(stats.variance, 0.0);
    }

    #[test]
    fn empty_graph() {
        let net = generate(50, GenMode::Gnp(0.0), 1).unwrap();
        assert_eq!(net.edge_count(), 0);
        let stats = degree_stats(&net);
        assert_eq!(stats.histogram.len(), 1);
        assert_eq!(stats.histogram[&0], 50);
        assert_eq!(stats.mean_degree, 0.0);
    }

    #[test]
    fn gnl_exact_link_count() {
        let net = generate(10, GenMode::Gnl(5), 11).unwrap();
        assert_eq!(net.edge_count(), 5);
        assert_eq!(degree_stats(&net).mean_degree, 1.0);
        // dense request goes through the complement branch
        let dense = generate(10, GenMode::Gnl(40), 11).unwrap();
        assert_eq!(dense.edge_count(), 40);
        let full = generate(10, GenMode::Gnl(45), 11).unwrap();
        assert_eq!(full.edge_count(), 45);
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(
            generate(10, GenMode::Gnp(1.5), 0),
            Err(crate::Error::InvalidParameter(_))
        ));
        assert!(matches!(
            generate(10, GenMode::Gnp(-0.1), 0),
            Err(crate::Error::InvalidParameter(_))
        ));
        assert!(matches!(
            generate(10, GenMode::Gnp(f64::NAN), 0),
            Err(crate::Error::InvalidParameter(_))
        ));
        assert!(matches!(
            generate(10, GenMode::Gnl(46), 0),
            Err(crate::Error::InvalidParameter(_))
        ));
        assert!(generate(0, GenMode::Gnp(0.5), 0).is_err());
        assert_eq!(generate(1, GenMode::Gnp(1.0), 0).unwrap().edge_count(), 0);
    }

    #[test]
    fn pair_decoding_is_ordered() {
        let mut k = 0;
        for v in 1..60u32 {
            for w in 0..v {
                assert_eq!(decode_pair(k), (v, w));
                k += 1;
            }
        }
    }

    #[test]
    fn from_edges_validates() {
        let m = GenMode::Gnl(2);
        assert!(Network::from_edges(3, &[(0, 0)], m, 0).is_err());
        assert!(Network::from_edges(3, &[(0, 1), (1, 0)], m, 0).is_err());
        assert!(Network::from_edges(3, &[(0, 3)], m, 0).is_err());
        let net = Network::from_edges(3, &[(2, 0), (0, 1)], m, 0).unwrap();
        assert_eq!(net.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2)]);
        assert_eq!(net.neighbours(0), &[1, 2]);
    }

    #[test]
    fn threshold_values() {
        let t = thresholds(10_000).unwrap();
        assert!((t.p1 - 0.0001).abs() < 2e-8);
        assert!((t.p2 - 0.000921).abs() < 1e-6);
        let t = thresholds(100).unwrap();
        assert!((t.p1 - 1.0 / 99.0).abs() < 1e-15);
        assert!((t.p2 - 0.046052).abs() < 1e-6);
        let t = thresholds(3).unwrap();
        assert_eq!(t.p1, 0.5);
        assert!((t.p2 - 0.3662).abs() < 1e-4);
        assert!(thresholds(2).is_err());
    }

    /// Bisection on `1 - exp(-kS) - S` over `[0.5, 1]`, independent of the
    /// fixed-point route.
    fn giant_root_bisection(k: f64) -> f64 {
        let f = |s: f64| 1.0 - libm::exp(-k * s) - s;
        let (mut lo, mut hi) = (0.2, 1.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn giant_fraction_values() {
        assert_eq!(giant_fraction_theory(0.5), 0.0);
        assert_eq!(giant_fraction_theory(1.0), 0.0);
        for k in [2.0, 4.0, 10.0] {
            assert!((giant_fraction_theory(k) - giant_root_bisection(k)).abs() < 1e-10);
        }
        // frozen from the bisection oracle
        assert!((giant_fraction_theory(2.0) - 0.796812).abs() < 1e-6);
        assert!((giant_fraction_theory(10.0) - 0.9999546).abs() < 1e-7);
    }
}
