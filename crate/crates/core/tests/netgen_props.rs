use proptest::prelude::*;
use sinet_core::netgen::{
    components, degree_stats, generate, giant_fraction_theory, pair_count, ComponentDecomposition,
    GenMode,
};

fn gnp() -> impl Strategy<Value = (usize, f64, u64)> {
    (1usize..120, 0.0f64..=1.0, any::<u64>())
}

/// Component id of every node by repeated relaxation over an adjacency matrix.
fn reachability_labels(n: usize, edges: &[(u32, u32)]) -> Vec<usize> {
    let mut label: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for &(i, j) in edges {
            let m = label[i as usize].min(label[j as usize]);
            for k in [i as usize, j as usize] {
                if label[k] != m {
                    label[k] = m;
                    changed = true;
                }
            }
        }
        if !changed {
            return label;
        }
    }
}

fn same_partition(d: &ComponentDecomposition, reference: &[usize]) -> bool {
    let n = reference.len();
    (0..n).all(|a| (0..n).all(|b| (d.labels[a] == d.labels[b]) == (reference[a] == reference[b])))
}

proptest! {
    #[test]
    fn gnp_structure((n, p, seed) in gnp()) {
        let net = generate(n, GenMode::Gnp(p), seed).unwrap();
        let degree_sum: usize = (0..n).map(|i| net.degree(i)).sum();
        prop_assert_eq!(degree_sum, 2 * net.edge_count());
        for i in 0..n {
            let nb = net.neighbours(i);
            prop_assert!(nb.windows(2).all(|w| w[0] < w[1]));
            for &j in nb {
                prop_assert!(j as usize != i);
                prop_assert!(net.neighbours(j as usize).binary_search(&(i as u32)).is_ok());
            }
        }
        let again = generate(n, GenMode::Gnp(p), seed).unwrap();
        prop_assert!(net.edges().eq(again.edges()));
    }

    #[test]
    fn gnl_has_exact_edge_count(n in 2usize..80, frac in 0.0f64..=1.0, seed in any::<u64>()) {
        let l = (pair_count(n) as f64 * frac) as usize;
        let net = generate(n, GenMode::Gnl(l), seed).unwrap();
        prop_assert_eq!(net.edge_count(), l);
        let mut edges: Vec<_> = net.edges().collect();
        edges.dedup();
        prop_assert_eq!(edges.len(), l);
    }

    #[test]
    fn components_match_reachability(n in 1usize..=20, p in 0.0f64..0.4, seed in any::<u64>()) {
        let net = generate(n, GenMode::Gnp(p), seed).unwrap();
        let edges: Vec<_> = net.edges().collect();
        let reference = reachability_labels(n, &edges);
        let uf = components(&net);
        prop_assert!(same_partition(&uf, &reference));
        prop_assert_eq!(&uf, &ComponentDecomposition::by_traversal(&net));
        prop_assert_eq!(uf.sizes.iter().sum::<usize>(), n);
        prop_assert_eq!(uf.giant_size, *uf.sizes.iter().max().unwrap());
    }
}

#[test]
fn gnp_edge_count_is_unbiased() {
    let (n, p) = (200, 0.05);
    let counts: Vec<f64> = (0..200u64)
        .map(|s| generate(n, GenMode::Gnp(p), s).unwrap().edge_count() as f64)
        .collect();
    let mean = counts.iter().sum::<f64>() / counts.len() as f64;
    let var = counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (counts.len() - 1) as f64;
    let expected = p * pair_count(n) as f64;
    assert!(
        (mean - expected).abs() < 3.0 * (var / counts.len() as f64).sqrt(),
        "{mean} vs {expected}"
    );
}

#[test]
fn degrees_are_poisson_like() {
    let runs: Vec<_> = (0..25u64)
        .map(|s| degree_stats(&generate(10_000, GenMode::Gnp(1e-3), s).unwrap()))
        .collect();
    let mean = runs.iter().map(|d| d.mean_degree).sum::<f64>() / 25.0;
    let var = runs.iter().map(|d| d.variance).sum::<f64>() / 25.0;
    assert!((mean - 10.0).abs() < 0.1, "{mean}");
    assert!((0.9..=1.1).contains(&(var / mean)), "{}", var / mean);
    let peak = runs[0].histogram.iter().max_by_key(|&(_, c)| *c).unwrap().0;
    assert!((9..=10).contains(peak), "{peak}");
}

#[test]
fn giant_fraction_follows_theory() {
    let n = 10_000;
    for k in [2.0, 4.0, 10.0] {
        let p = k / (n - 1) as f64;
        let frac = (0..25u64)
            .map(|s| {
                components(&generate(n, GenMode::Gnp(p), s).unwrap()).giant_size as f64 / n as f64
            })
            .sum::<f64>()
            / 25.0;
        let theory = giant_fraction_theory(k);
        assert!((frac - theory).abs() < 0.02, "k={k}: {frac} vs {theory}");
    }
}
