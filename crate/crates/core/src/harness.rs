//! Seeded experiment driver.
//!
//! A cell is one (model, n, k, dep, p_rewire, seed) combination. Each cell
//! builds a market and a graph from sub-seeds of its master seed, runs
//! circle-restricted deferred acceptance and records utility and topology
//! metrics. The market sub-seed ignores the model, so all four networks at
//! a given (n, seed) share the same market and the same scores.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::market::{
    average_utility, find_blocking_pair, restricted_deferred_acceptance, Market, Matching,
    SocialCircle,
};
use crate::netgen::NetworkModel;
use crate::rng::{split_seed, RandomSource};
use crate::topology::{all_pairs_shortest, average_path_length, connectivity, DistanceMatrix};

pub const DEFAULT_DEP: u32 = 3;
pub const DEFAULT_P_REWIRE: f64 = 0.1;
pub const DEFAULT_REPLICATIONS: usize = 50;

const MARKET_STREAM: u64 = 0x6d61_726b_6574;
const GRAPH_STREAM: u64 = 0x0067_7261_7068;

/// Sub-seed for the market of a replication. Independent of the model.
pub fn market_seed(master: u64) -> u64 {
    split_seed(master, MARKET_STREAM)
}

/// Sub-seed for the graph of a replication under `model`.
pub fn graph_seed(master: u64, model: NetworkModel) -> u64 {
    split_seed(master, GRAPH_STREAM + model as u64)
}

/// `reps` consecutive master seeds starting at `base`.
pub fn replication_seeds(base: u64, reps: usize) -> Vec<u64> {
    (0..reps as u64).map(|i| base.wrapping_add(i)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub model: NetworkModel,
    pub n: usize,
    pub k: usize,
    pub dep: u32,
    pub p_rewire: f64,
    pub seed: u64,
}

impl Cell {
    pub fn validate(&self) -> Result<()> {
        if self.n < 4 || !self.n.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "n must be even and >= 4, got {}",
                self.n
            )));
        }
        if self.dep < 1 {
            return Err(Error::invalid("dep must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.p_rewire) {
            return Err(Error::invalid(format!(
                "p_rewire must be in [0, 1], got {}",
                self.p_rewire
            )));
        }
        self.model.validate(self.n, self.k)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub models: Vec<NetworkModel>,
    pub n_values: Vec<usize>,
    pub k_values: Vec<usize>,
    pub dep: u32,
    pub p_rewire: f64,
    pub seeds: Vec<u64>,
}

impl ExperimentConfig {
    /// Cells in output order: model, then n, then k, then seed.
    pub fn cells(&self) -> Vec<Cell> {
        let mut cells = Vec::new();
        for &model in &self.models {
            for &n in &self.n_values {
                for &k in &self.k_values {
                    for &seed in &self.seeds {
                        cells.push(Cell {
                            model,
                            n,
                            k,
                            dep: self.dep,
                            p_rewire: self.p_rewire,
                            seed,
                        });
                    }
                }
            }
        }
        cells
    }

    pub fn validate(&self) -> Result<()> {
        if self.models.is_empty()
            || self.n_values.is_empty()
            || self.k_values.is_empty()
            || self.seeds.is_empty()
        {
            return Err(Error::invalid(
                "config needs at least one model, n, k and seed",
            ));
        }
        self.cells().iter().try_for_each(Cell::validate)
    }

    /// Average utility against population at k = 2, n in {20, …, 100}.
    pub fn table2(base_seed: u64, reps: usize) -> Self {
        Self {
            models: NetworkModel::ALL.to_vec(),
            n_values: vec![20, 40, 60, 80, 100],
            k_values: vec![2],
            dep: DEFAULT_DEP,
            p_rewire: DEFAULT_P_REWIRE,
            seeds: replication_seeds(base_seed, reps),
        }
    }

    /// Utility against population, n in {10, 20, …, 100} at k = 2.
    pub fn fig1(base_seed: u64, reps: usize) -> Self {
        Self {
            n_values: (1..=10).map(|i| 10 * i).collect(),
            ..Self::table2(base_seed, reps)
        }
    }

    /// Utility against degree at n = 60.
    pub fn fig2(base_seed: u64, reps: usize) -> Self {
        Self {
            n_values: vec![60],
            k_values: (1..=8).map(|i| 2 * i).collect(),
            ..Self::table2(base_seed, reps)
        }
    }

    /// Connectivity against APL at n = 100 over a degree sweep.
    pub fn fig3_6(base_seed: u64, reps: usize) -> Self {
        Self {
            n_values: vec![100],
            k_values: (1..=10).map(|i| 2 * i).collect(),
            ..Self::table2(base_seed, reps)
        }
    }
}

/// One row of experiment output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub model: NetworkModel,
    pub n: usize,
    pub k: usize,
    pub dep: u32,
    pub p_rewire: f64,
    pub seed: u64,
    pub average_utility: f64,
    /// `None` when the graph has no edges.
    pub apl: Option<f64>,
    pub connectivity: f64,
    pub matched_pairs: usize,
    pub runtime_ms: f64,
}

/// Everything a cell produced, for callers that need more than the row.
#[derive(Debug, Clone)]
pub struct CellOutcome {
    pub market: Market,
    pub graph: Graph,
    pub distances: DistanceMatrix,
    pub matching: Matching,
    pub result: ExperimentResult,
}

/// Runs one cell and keeps its intermediate objects.
pub fn run_cell_detailed(cell: &Cell) -> Result<CellOutcome> {
    cell.validate()?;
    let start = Instant::now();
    let market = Market::build(cell.n, &mut RandomSource::new(market_seed(cell.seed)))?;
    let mut graph_rng = RandomSource::new(graph_seed(cell.seed, cell.model));
    let graph = cell
        .model
        .generate(cell.n, cell.k, cell.p_rewire, &mut graph_rng)?;
    let distances = all_pairs_shortest(&graph);
    let circle = SocialCircle::new(&distances, cell.dep);
    let matching = restricted_deferred_acceptance(&market, &circle);
    if let Some(bp) = find_blocking_pair(&market, &circle, &matching) {
        return Err(Error::OracleViolation(format!(
            "cell {cell:?} produced an unstable matching, blocked by {bp:?}"
        )));
    }
    let result = ExperimentResult {
        model: cell.model,
        n: cell.n,
        k: cell.k,
        dep: cell.dep,
        p_rewire: cell.p_rewire,
        seed: cell.seed,
        average_utility: average_utility(&market, &matching),
        apl: average_path_length(&distances).apl,
        connectivity: connectivity(&distances, cell.dep),
        matched_pairs: matching.len(),
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok(CellOutcome {
        market,
        graph,
        distances,
        matching,
        result,
    })
}

pub fn run_cell(cell: &Cell) -> Result<ExperimentResult> {
    run_cell_detailed(cell).map(|o| o.result)
}

/// Runs every cell of `config` in parallel; rows come back in
/// [`ExperimentConfig::cells`] order.
pub fn sweep(config: &ExperimentConfig) -> Result<Vec<ExperimentResult>> {
    config.validate()?;
    config.cells().par_iter().map(run_cell).collect()
}

/// Field a summary may group on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKey {
    Model,
    N,
    K,
    Dep,
}

impl std::str::FromStr for GroupKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "model" => Ok(Self::Model),
            "n" => Ok(Self::N),
            "k" => Ok(Self::K),
            "dep" => Ok(Self::Dep),
            other => Err(Error::invalid(format!("cannot group by {other:?}"))),
        }
    }
}

/// Mean and sample standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Stat {
    pub mean: f64,
    pub stddev: f64,
}

impl Stat {
    /// `None` for an empty sample; a single value has zero spread.
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let len = values.len() as f64;
        let mean = values.iter().sum::<f64>() / len;
        let stddev = if values.len() < 2 {
            0.0
        } else {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (len - 1.0)).sqrt()
        };
        Some(Self { mean, stddev })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub model: Option<NetworkModel>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub dep: Option<u32>,
    pub count: usize,
    pub average_utility: Stat,
    /// Over rows with a defined APL; `None` if there are none.
    pub apl: Option<Stat>,
    pub connectivity: Stat,
    pub matched_pairs: Stat,
}

type SummaryKey = (
    Option<NetworkModel>,
    Option<usize>,
    Option<usize>,
    Option<u32>,
);

/// Per-group mean and standard deviation of the result metrics. Groups are
/// ordered by key.
pub fn summarize(results: &[ExperimentResult], group_by: &[GroupKey]) -> Result<Vec<SummaryRow>> {
    if results.is_empty() {
        return Err(Error::invalid("cannot summarise an empty result set"));
    }
    let key_of = |r: &ExperimentResult| -> SummaryKey {
        (
            group_by.contains(&GroupKey::Model).then_some(r.model),
            group_by.contains(&GroupKey::N).then_some(r.n),
            group_by.contains(&GroupKey::K).then_some(r.k),
            group_by.contains(&GroupKey::Dep).then_some(r.dep),
        )
    };
    let mut groups: BTreeMap<SummaryKey, Vec<&ExperimentResult>> = BTreeMap::new();
    for r in results {
        groups.entry(key_of(r)).or_default().push(r);
    }
    Ok(groups
        .into_iter()
        .map(|((model, n, k, dep), rows)| {
            let col = |f: &dyn Fn(&ExperimentResult) -> f64| -> Vec<f64> {
                rows.iter().map(|r| f(r)).collect()
            };
            let apls: Vec<f64> = rows.iter().filter_map(|r| r.apl).collect();
            SummaryRow {
                model,
                n,
                k,
                dep,
                count: rows.len(),
                average_utility: Stat::of(&col(&|r| r.average_utility)).expect("non-empty group"),
                apl: Stat::of(&apls),
                connectivity: Stat::of(&col(&|r| r.connectivity)).expect("non-empty group"),
                matched_pairs: Stat::of(&col(&|r| r.matched_pairs as f64))
                    .expect("non-empty group"),
            }
        })
        .collect())
}

/// Pearson correlation; `None` when either sample is constant or the
/// lengths differ.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let mx = Stat::of(xs)?.mean;
    let my = Stat::of(ys)?.mean;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx).powi(2);
        syy += (y - my).powi(2);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

/// CSV column order.
pub const CSV_HEADER: [&str; 10] = [
    "model",
    "n",
    "k",
    "dep",
    "p_rewire",
    "seed",
    "average_utility",
    "apl",
    "connectivity",
    "matched_pairs",
];

#[derive(Serialize)]
struct CsvRow {
    model: NetworkModel,
    n: usize,
    k: usize,
    dep: u32,
    p_rewire: f64,
    seed: u64,
    average_utility: f64,
    apl: Option<f64>,
    connectivity: f64,
    matched_pairs: usize,
}

/// Writes results as CSV with a header row. The runtime is not written, so
/// equal configurations give byte-identical output.
pub fn write_csv<W: Write>(results: &[ExperimentResult], w: W) -> Result<()> {
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    writer.write_record(CSV_HEADER)?;
    for r in results {
        writer.serialize(CsvRow {
            model: r.model,
            n: r.n,
            k: r.k,
            dep: r.dep,
            p_rewire: r.p_rewire,
            seed: r.seed,
            average_utility: r.average_utility,
            apl: r.apl,
            connectivity: r.connectivity,
            matched_pairs: r.matched_pairs,
        })?;
    }
    writer.flush()?;
    Ok(())
}

pub fn to_csv_string(results: &[ExperimentResult]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(results, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::market::classical_gs;

    fn cell(model: NetworkModel, n: usize, k: usize, seed: u64) -> Cell {
        Cell {
            model,
            n,
            k,
            dep: 3,
            p_rewire: 0.1,
            seed,
        }
    }

    #[test]
    fn small_ring_converges_to_full_information() {
        let out = run_cell_detailed(&cell(NetworkModel::Ncn, 4, 2, 5)).unwrap();
        assert_eq!(out.distances.diameter(), Some(2));
        assert_eq!(out.matching, classical_gs(&out.market));
        assert_eq!(out.result.matched_pairs, 2);
    }

    #[test]
    fn cell_is_deterministic() {
        for model in NetworkModel::ALL {
            let a = run_cell(&cell(model, 30, 4, 77)).unwrap();
            let b = run_cell(&cell(model, 30, 4, 77)).unwrap();
            assert_eq!(
                ExperimentResult {
                    runtime_ms: 0.0,
                    ..a
                },
                ExperimentResult {
                    runtime_ms: 0.0,
                    ..b
                }
            );
        }
    }

    #[test]
    fn market_shared_across_models() {
        let markets: Vec<Market> = NetworkModel::ALL
            .iter()
            .map(|&m| run_cell_detailed(&cell(m, 20, 2, 3)).unwrap().market)
            .collect();
        assert!(markets.windows(2).all(|w| w[0] == w[1]));
        let other = run_cell_detailed(&cell(NetworkModel::Ba, 20, 2, 4))
            .unwrap()
            .market;
        assert_ne!(markets[0], other);
    }

    #[test]
    fn invalid_cells_rejected() {
        assert!(run_cell(&cell(NetworkModel::Ncn, 5, 2, 0)).is_err());
        assert!(run_cell(&cell(NetworkModel::Ncn, 6, 3, 0)).is_err());
        assert!(run_cell(&cell(NetworkModel::Ws, 6, 6, 0)).is_err());
        assert!(run_cell(&Cell {
            dep: 0,
            ..cell(NetworkModel::Er, 6, 2, 0)
        })
        .is_err());
        assert!(run_cell(&Cell {
            p_rewire: 2.0,
            ..cell(NetworkModel::Ws, 6, 2, 0)
        })
        .is_err());
    }

    #[test]
    fn sweep_cardinality_and_order() {
        let one = ExperimentConfig {
            models: vec![NetworkModel::Er],
            n_values: vec![10],
            k_values: vec![2],
            dep: 3,
            p_rewire: 0.1,
            seeds: vec![1],
        };
        assert_eq!(sweep(&one).unwrap().len(), 1);

        let t2 = ExperimentConfig::table2(0, 3);
        let rows = sweep(&t2).unwrap();
        assert_eq!(rows.len(), 20 * 3);
        let cells = t2.cells();
        for (row, cell) in rows.iter().zip(&cells) {
            assert_eq!(
                (row.model, row.n, row.k, row.seed),
                (cell.model, cell.n, cell.k, cell.seed)
            );
        }
        let grouped = summarize(&rows, &[GroupKey::Model, GroupKey::N]).unwrap();
        assert_eq!(grouped.len(), 20);
        assert!(grouped.iter().all(|g| g.count == 3));
    }

    #[test]
    fn summarize_basics() {
        let row = run_cell(&cell(NetworkModel::Ba, 20, 2, 1)).unwrap();
        let s = summarize(std::slice::from_ref(&row), &[GroupKey::Model]).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].average_utility.mean, row.average_utility);
        assert_eq!(s[0].average_utility.stddev, 0.0);
        let s = summarize(&[row.clone(), row.clone()], &[]).unwrap();
        assert_eq!(s[0].count, 2);
        assert_eq!(s[0].connectivity.stddev, 0.0);
        assert!(summarize(&[], &[GroupKey::N]).is_err());
    }

    #[test]
    fn pearson_signs() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        assert!((pearson(&xs, &[2.0, 4.0, 6.0, 8.0]).unwrap() - 1.0).abs() < 1e-12);
        assert!((pearson(&xs, &[8.0, 6.0, 4.0, 2.0]).unwrap() + 1.0).abs() < 1e-12);
        assert_eq!(pearson(&xs, &[1.0; 4]), None);
        assert_eq!(pearson(&xs, &[1.0]), None);
    }

    #[test]
    fn csv_header_and_empty_apl() {
        let row = ExperimentResult {
            model: NetworkModel::Er,
            n: 4,
            k: 2,
            dep: 3,
            p_rewire: 0.1,
            seed: 9,
            average_utility: 0.0,
            apl: None,
            connectivity: 0.0,
            matched_pairs: 0,
            runtime_ms: 12.5,
        };
        let text = to_csv_string(&[row]).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "model,n,k,dep,p_rewire,seed,average_utility,apl,connectivity,matched_pairs"
        );
        assert_eq!(lines.next().unwrap(), "er,4,2,3,0.1,9,0.0,,0.0,0");
    }
}
