//! Hop distances and topology metrics: average degree, degree histogram,
//! average path length, depth-bounded connectivity and the Poisson
//! connectivity predictor.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Dense all-pairs hop-count matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    /// Sentinel stored for pairs with no connecting path.
    pub const UNREACHABLE: u32 = u32::MAX;

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Hop count between `i` and `j`, or [`Self::UNREACHABLE`].
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.dist[i * self.n + j]
    }

    /// Hop count if a path exists.
    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> Option<u32> {
        match self.get(i, j) {
            Self::UNREACHABLE => None,
            d => Some(d),
        }
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.dist[i * self.n..(i + 1) * self.n]
    }

    /// Largest finite distance, `None` on graphs with fewer than two nodes
    /// or without any edge.
    pub fn diameter(&self) -> Option<u32> {
        self.unordered_pairs()
            .filter_map(|(i, j)| self.distance(i, j))
            .max()
    }

    pub fn is_connected(&self) -> bool {
        self.dist.iter().all(|&d| d != Self::UNREACHABLE)
    }

    fn unordered_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| (i + 1..self.n).map(move |j| (i, j)))
    }
}

/// Breadth-first search from every node. Minimum hop counts on an unweighted
/// graph; equivalent to Dijkstra with unit weights.
pub fn all_pairs_shortest(graph: &Graph) -> DistanceMatrix {
    let n = graph.node_count();
    let mut dist = vec![DistanceMatrix::UNREACHABLE; n * n];
    if n > 0 {
        dist.par_chunks_mut(n).enumerate().for_each(|(src, row)| {
            let mut queue = Vec::with_capacity(n);
            row[src] = 0;
            queue.push(src);
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                let next = row[u] + 1;
                for &v in graph.neighbors(u) {
                    if row[v] == DistanceMatrix::UNREACHABLE {
                        row[v] = next;
                        queue.push(v);
                    }
                }
            }
        });
    }
    DistanceMatrix { n, dist }
}

/// Mean degree `2M / N`.
pub fn average_degree(graph: &Graph) -> f64 {
    if graph.node_count() == 0 {
        return 0.0;
    }
    2.0 * graph.edge_count() as f64 / graph.node_count() as f64
}

/// Number of nodes with each observed degree. Dividing by `N` gives p(k).
pub fn degree_distribution(graph: &Graph) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for d in graph.degrees() {
        *hist.entry(d).or_insert(0) += 1;
    }
    hist
}

/// Average path length over reachable unordered pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathLengthSummary {
    /// `None` when no pair of distinct nodes is connected.
    pub apl: Option<f64>,
    pub reachable_pairs: usize,
}

/// Mean hop distance over unordered pairs that are connected. Unreachable
/// pairs are left out of both the sum and the count.
pub fn average_path_length(dm: &DistanceMatrix) -> PathLengthSummary {
    let mut total = 0u64;
    let mut count = 0usize;
    for (i, j) in dm.unordered_pairs() {
        if let Some(d) = dm.distance(i, j) {
            total += u64::from(d);
            count += 1;
        }
    }
    PathLengthSummary {
        apl: (count > 0).then(|| total as f64 / count as f64),
        reachable_pairs: count,
    }
}

/// Fraction of all `N(N-1)/2` unordered pairs at distance `<= dep`.
/// Graphs with fewer than two nodes have no pairs and report 0.
pub fn connectivity(dm: &DistanceMatrix, dep: u32) -> f64 {
    let n = dm.node_count();
    let pairs = n * n.saturating_sub(1) / 2;
    if pairs == 0 {
        return 0.0;
    }
    let within = dm
        .unordered_pairs()
        .filter(|&(i, j)| dm.get(i, j) <= dep)
        .count();
    within as f64 / pairs as f64
}

/// Predicted connectivity when path lengths follow Poisson(λ):
/// `Σ_{l=1..dep} λ^l e^{-λ} / l!`.
pub fn poisson_connectivity(lambda: f64, dep: u32) -> Result<f64> {
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(Error::invalid(format!(
            "lambda must be a positive finite number, got {lambda}"
        )));
    }
    if dep == 0 {
        return Err(Error::invalid("dep must be at least 1"));
    }
    let mut term = (-lambda).exp();
    let mut sum = 0.0;
    for l in 1..=dep {
        term *= lambda / f64::from(l);
        sum += term;
    }
    Ok(sum)
}

/// Summary of a graph's topology at a given social-circle depth.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TopologyReport {
    pub n: usize,
    pub m: usize,
    pub average_degree: f64,
    pub degree_histogram: BTreeMap<usize, usize>,
    pub apl: Option<f64>,
    pub reachable_pairs: usize,
    pub connectivity: f64,
    pub dep: u32,
}

impl TopologyReport {
    pub fn compute(graph: &Graph, dm: &DistanceMatrix, dep: u32) -> Self {
        let paths = average_path_length(dm);
        Self {
            n: graph.node_count(),
            m: graph.edge_count(),
            average_degree: average_degree(graph),
            degree_histogram: degree_distribution(graph),
            apl: paths.apl,
            reachable_pairs: paths.reachable_pairs,
            connectivity: connectivity(dm, dep),
            dep,
        }
    }

    pub fn from_graph(graph: &Graph, dep: u32) -> Self {
        Self::compute(graph, &all_pairs_shortest(graph), dep)
    }
}
