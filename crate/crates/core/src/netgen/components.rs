use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::Network;

/// Disjoint-set forest with union by size and path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: alloc::vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    /// Merges the sets of `a` and `b`; returns false if already joined.
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a as usize] < self.size[b as usize] {
            core::mem::swap(&mut a, &mut b);
        }
        self.parent[b as usize] = a;
        self.size[a as usize] += self.size[b as usize];
        true
    }
}

/// Partition of a network into maximal connected subgraphs.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentDecomposition {
    /// Component id per node. Ids are `0..m`, numbered in order of each
    /// component's smallest node.
    pub labels: Vec<u32>,
    /// Size of each component, indexed by id.
    pub sizes: Vec<usize>,
    /// Number of components.
    pub m: usize,
    /// Size of the largest component.
    pub giant_size: usize,
    /// Id of the largest component (smallest id among ties).
    pub giant_label: u32,
    /// Number of distinct component sizes.
    pub distinct_sizes: usize,
}

impl ComponentDecomposition {
    fn from_labels(labels: Vec<u32>, m: usize) -> Self {
        let mut sizes = alloc::vec![0usize; m];
        for &l in &labels {
            sizes[l as usize] += 1;
        }
        let (giant_label, giant_size) =
            sizes.iter().enumerate().fold(
                (0, 0),
                |best, (l, &s)| if s > best.1 { (l, s) } else { best },
            );
        let distinct_sizes = sizes.iter().collect::<BTreeSet<_>>().len();
        ComponentDecomposition {
            labels,
            sizes,
            m,
            giant_size,
            giant_label: giant_label as u32,
            distinct_sizes,
        }
    }

    pub fn size_of_node(&self, node: usize) -> usize {
        self.sizes[self.labels[node] as usize]
    }

    /// Nodes of the largest component in ascending order.
    pub fn giant_nodes(&self) -> Vec<u32> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == self.giant_label)
            .map(|(i, _)| i as u32)
            .collect()
    }

    /// Breadth-first labelling; yields exactly the same decomposition as
    /// [`components`].
    pub fn by_traversal(net: &Network) -> Self {
        let n = net.n();
        let mut labels = alloc::vec![u32::MAX; n];
        let mut queue = alloc::collections::VecDeque::new();
        let mut m = 0u32;
        for start in 0..n {
            if labels[start] != u32::MAX {
                continue;
            }
            labels[start] = m;
            queue.push_back(start as u32);
            while let Some(v) = queue.pop_front() {
                for &u in net.neighbours(v as usize) {
                    if labels[u as usize] == u32::MAX {
                        labels[u as usize] = m;
                        queue.push_back(u);
                    }
                }
            }
            m += 1;
        }
        Self::from_labels(labels, m as usize)
    }
}

/// Connected components by union-find over the edge set.
pub fn components(net: &Network) -> ComponentDecomposition {
    let n = net.n();
    let mut uf = UnionFind::new(n);
    for (i, j) in net.edges() {
        uf.union(i, j);
    }
    let mut root_label = alloc::vec![u32::MAX; n];
    let mut labels = Vec::with_capacity(n);
    let mut m = 0u32;
    for i in 0..n as u32 {
        let root = uf.find(i) as usize;
        if root_label[root] == u32::MAX {
            root_label[root] = m;
            m += 1;
        }
        labels.push(root_label[root]);
    }
    ComponentDecomposition::from_labels(labels, m as usize)
}
