//! Generators for the four network models: nearest-neighbour coupled ring
//! (NCN), Erdős–Rényi (ER), Watts–Strogatz (WS) and Barabási–Albert (BA).
//!
//! Every generator is a pure function of its parameters and the random
//! stream it is handed. Graphs are stored with edges in canonical order, so
//! equal seeds give byte-identical edge lists.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest number of edges a simple graph on `n` nodes can hold.
pub fn max_edges(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn canonical(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

fn check_ring(n: usize, k: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::invalid(format!("ring needs n >= 3, got {n}")));
    }
    if !k.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "coupling degree k must be even, got {k}"
        )));
    }
    if k < 2 || k > n - 1 {
        return Err(Error::invalid(format!(
            "coupling degree k must lie in 2..={}, got {k}",
            n - 1
        )));
    }
    Ok(())
}

fn ring_edges(n: usize, k: usize) -> BTreeSet<(usize, usize)> {
    let mut set = BTreeSet::new();
    for i in 0..n {
        for offset in 1..=k / 2 {
            set.insert(canonical(i, (i + offset) % n));
        }
    }
    set
}

/// Ring lattice where node `i` links to `i ± 1, …, i ± k/2` (mod `n`).
pub fn generate_ncn(n: usize, k: usize) -> Result<Graph> {
    check_ring(n, k)?;
    Ok(Graph::from_canonical(n, ring_edges(n, k)))
}

/// G(n, M): exactly `m` distinct edges chosen uniformly among all node pairs.
pub fn generate_er<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Graph> {
    let total = max_edges(n);
    if m > total {
        return Err(Error::invalid(format!(
            "m = {m} exceeds the {total} possible edges on {n} nodes"
        )));
    }
    // Row offsets of the upper-triangular pair enumeration.
    let offsets: Vec<usize> = (0..n).map(|u| u * n - u * (u + 1) / 2).collect();
    let decode = |t: usize| -> (usize, usize) {
        let u = offsets.partition_point(|&o| o <= t) - 1;
        (u, u + 1 + (t - offsets[u]))
    };
    let set: BTreeSet<_> = index::sample(rng, total, m)
        .into_iter()
        .map(decode)
        .collect();
    Ok(Graph::from_canonical(n, set))
}

/// G(n, p) realised as G(n, M) with `M ~ Binomial(n(n-1)/2, p)`.
pub fn generate_er_gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!(
            "edge probability must be in [0, 1], got {p}"
        )));
    }
    let total = max_edges(n) as u64;
    let m = Binomial::new(total, p)
        .map_err(|e| Error::invalid(e.to_string()))?
        .sample(rng);
    generate_er(n, m as usize, rng)
}

/// Watts–Strogatz rewiring of the NCN ring.
///
/// Ring edges are visited in canonical order. With probability `p_rewire` the
/// lower endpoint is kept and the other end moves to a uniformly drawn node;
/// draws that would form a self-loop or duplicate are resampled up to `n`
/// times, after which the edge stays where it was.
pub fn generate_ws<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    p_rewire: f64,
    rng: &mut R,
) -> Result<Graph> {
    check_ring(n, k)?;
    if !(0.0..=1.0).contains(&p_rewire) {
        return Err(Error::invalid(format!(
            "rewiring probability must be in [0, 1], got {p_rewire}"
        )));
    }
    let original: Vec<_> = ring_edges(n, k).into_iter().collect();
    let mut current: BTreeSet<_> = original.iter().copied().collect();
    for &(u, v) in &original {
        if !rng.random_bool(p_rewire) {
            continue;
        }
        for _ in 0..n {
            let w = rng.random_range(0..n);
            if w == u || current.contains(&canonical(u, w)) {
                continue;
            }
            current.remove(&(u, v));
            current.insert(canonical(u, w));
            break;
        }
    }
    Ok(Graph::from_canonical(n, current))
}

/// Barabási–Albert growth.
///
/// Starts from a complete graph on `m_attach + 1` nodes; every later node
/// attaches to `m_attach` distinct existing nodes drawn with probability
/// proportional to degree, without replacement.
pub fn generate_ba<R: Rng + ?Sized>(n: usize, m_attach: usize, rng: &mut R) -> Result<Graph> {
    if m_attach < 1 || m_attach >= n {
        return Err(Error::invalid(format!(
            "attachment count must satisfy 1 <= m < n, got m = {m_attach}, n = {n}"
        )));
    }
    let seed_size = m_attach + 1;
    let mut set = BTreeSet::new();
    // Every edge endpoint appears once here, so a uniform pick is a
    // degree-proportional pick.
    let mut endpoints = Vec::with_capacity(2 * (max_edges(seed_size) + m_attach * n));
    for u in 0..seed_size {
        for v in u + 1..seed_size {
            set.insert((u, v));
            endpoints.push(u);
            endpoints.push(v);
        }
    }
    let mut targets = Vec::with_capacity(m_attach);
    for new in seed_size..n {
        targets.clear();
        while targets.len() < m_attach {
            let t = endpoints[rng.random_range(0..endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            set.insert((t, new));
            endpoints.push(t);
            endpoints.push(new);
        }
    }
    Ok(Graph::from_canonical(n, set))
}

/// The four network families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NetworkModel {
    Ncn,
    Er,
    Ws,
    Ba,
}

impl NetworkModel {
    pub const ALL: [NetworkModel; 4] = [Self::Ncn, Self::Er, Self::Ws, Self::Ba];

    pub fn name(self) -> &'static str {
        match self {
            Self::Ncn => "ncn",
            Self::Er => "er",
            Self::Ws => "ws",
            Self::Ba => "ba",
        }
    }

    /// Checks that nominal degree `k` is usable for this model on `n` nodes.
    pub fn validate(self, n: usize, k: usize) -> Result<()> {
        if k < 2 || !k.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "degree k must be even and >= 2, got {k}"
            )));
        }
        match self {
            Self::Ncn | Self::Ws => check_ring(n, k),
            Self::Er if n * k / 2 > max_edges(n) => Err(Error::invalid(format!(
                "ER with k = {k} needs {} edges, only {} possible",
                n * k / 2,
                max_edges(n)
            ))),
            Self::Ba if k >= n => Err(Error::invalid(format!("BA with k = {k} needs n > {k}"))),
            _ => Ok(()),
        }
    }

    /// Generates a graph for nominal degree `k`: NCN(k), WS(k, p_rewire) and
    /// ER(m = nk/2) all have average degree `k`. BA uses `k` as the number of
    /// links each new node brings, so its average degree is close to `2k`.
    pub fn generate<R: Rng + ?Sized>(
        self,
        n: usize,
        k: usize,
        p_rewire: f64,
        rng: &mut R,
    ) -> Result<Graph> {
        self.validate(n, k)?;
        match self {
            Self::Ncn => generate_ncn(n, k),
            Self::Er => generate_er(n, n * k / 2, rng),
            Self::Ws => generate_ws(n, k, p_rewire, rng),
            Self::Ba => generate_ba(n, k, rng),
        }
    }
}

impl fmt::Display for NetworkModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NetworkModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ncn" => Ok(Self::Ncn),
            "er" => Ok(Self::Er),
            "ws" => Ok(Self::Ws),
            "ba" => Ok(Self::Ba),
            other => Err(Error::invalid(format!("unknown network model {other:?}"))),
        }
    }
}
