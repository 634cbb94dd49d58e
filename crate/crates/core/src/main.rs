use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use netmatch::harness::{self, ExperimentConfig, GroupKey};
use netmatch::market::{restricted_deferred_acceptance, MatchingReport};
use netmatch::netgen::NetworkModel;
use netmatch::{Error, Graph, Market, RandomSource, SocialCircle, TopologyReport};

#[derive(Parser)]
#[command(
    name = "netmatch",
    version,
    about = "Stable matching inside network social circles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and print it as an edge list.
    Generate {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Topology report (JSON) for an edge-list file or a generated graph.
    Metrics {
        /// Read the graph from an edge-list file instead of generating it.
        #[arg(long)]
        graph_file: Option<PathBuf>,
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = harness::DEFAULT_DEP)]
        dep: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one matching and print the outcome as JSON.
    Match {
        #[arg(long)]
        graph_file: Option<PathBuf>,
        /// Replay a market saved with --market-out.
        #[arg(long)]
        market_file: Option<PathBuf>,
        #[arg(long)]
        market_out: Option<PathBuf>,
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = harness::DEFAULT_DEP)]
        dep: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a custom sweep.
    Sweep {
        /// Models to include; all four when omitted.
        #[arg(long = "model", value_delimiter = ',')]
        models: Vec<NetworkModel>,
        #[arg(long = "n", value_delimiter = ',', required = true)]
        n_values: Vec<usize>,
        #[arg(long = "k", value_delimiter = ',', required = true)]
        k_values: Vec<usize>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Average utility at k = 2 over n in {20, ..., 100}.
    Table2 {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Average utility against population at k = 2.
    Fig1 {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Average utility against degree at n = 60.
    Fig2 {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Connectivity against APL at n = 100.
    #[command(name = "fig3-6")]
    Fig3To6 {
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long, default_value = "ba")]
    model: NetworkModel,
    #[arg(long, default_value_t = 20)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = harness::DEFAULT_P_REWIRE)]
    p_rewire: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = harness::DEFAULT_DEP)]
    dep: u32,
    #[arg(long, default_value_t = harness::DEFAULT_P_REWIRE)]
    p_rewire: f64,
    /// First master seed; replications use consecutive seeds.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = harness::DEFAULT_REPLICATIONS)]
    reps: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Emit per-(model, n, k) means and standard deviations instead of raw rows.
    #[arg(long)]
    summary: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) | Error::Csv(_) => 3,
        _ => 2,
    }
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Generate { graph, out } => {
            let g = generate(&graph)?;
            emit(out.as_deref(), g.to_edge_list().as_bytes())
        }
        Command::Metrics {
            graph_file,
            graph,
            dep,
            out,
        } => {
            let g = load_or_generate(graph_file.as_deref(), &graph)?;
            let report = TopologyReport::from_graph(&g, dep);
            emit_json(out.as_deref(), &report)
        }
        Command::Match {
            graph_file,
            market_file,
            market_out,
            graph,
            dep,
            out,
        } => {
            let g = load_or_generate(graph_file.as_deref(), &graph)?;
            let market = match market_file {
                Some(path) => serde_json::from_reader(BufReader::new(File::open(path)?))?,
                None => Market::build(
                    g.node_count(),
                    &mut RandomSource::new(harness::market_seed(graph.seed)),
                )?,
            };
            if market.agent_count() != g.node_count() {
                return Err(Error::InvalidParameter(format!(
                    "market has {} agents but the graph has {} nodes",
                    market.agent_count(),
                    g.node_count()
                )));
            }
            if let Some(path) = market_out {
                emit_json(Some(&path), &market)?;
            }
            let dm = netmatch::topology::all_pairs_shortest(&g);
            let circle = SocialCircle::new(&dm, dep);
            let matching = restricted_deferred_acceptance(&market, &circle);
            emit_json(
                out.as_deref(),
                &MatchingReport::new(&market, &circle, &matching)?,
            )
        }
        Command::Sweep {
            models,
            n_values,
            k_values,
            run,
        } => {
            let config = ExperimentConfig {
                models: if models.is_empty() {
                    NetworkModel::ALL.to_vec()
                } else {
                    models
                },
                n_values,
                k_values,
                dep: run.dep,
                p_rewire: run.p_rewire,
                seeds: harness::replication_seeds(run.seed, run.reps),
            };
            run_config(config, &run)
        }
        Command::Table2 { run } => run_config(preset(&run, ExperimentConfig::table2), &run),
        Command::Fig1 { run } => run_config(preset(&run, ExperimentConfig::fig1), &run),
        Command::Fig2 { run } => run_config(preset(&run, ExperimentConfig::fig2), &run),
        Command::Fig3To6 { run } => run_config(preset(&run, ExperimentConfig::fig3_6), &run),
    }
}

fn preset(run: &RunArgs, make: fn(u64, usize) -> ExperimentConfig) -> ExperimentConfig {
    ExperimentConfig {
        dep: run.dep,
        p_rewire: run.p_rewire,
        ..make(run.seed, run.reps)
    }
}

fn run_config(config: ExperimentConfig, run: &RunArgs) -> Result<(), Error> {
    let rows = harness::sweep(&config)?;
    if run.summary {
        let summary = harness::summarize(&rows, &[GroupKey::Model, GroupKey::N, GroupKey::K])?;
        return match run.format {
            Format::Json => emit_json(run.out.as_deref(), &summary),
            Format::Csv => {
                let mut text = String::from(
                    "model,n,k,count,utility_mean,utility_sd,apl_mean,apl_sd,connectivity_mean,connectivity_sd,matched_mean,matched_sd\n",
                );
                for s in &summary {
                    let (apl_mean, apl_sd) = s
                        .apl
                        .map(|a| (a.mean.to_string(), a.stddev.to_string()))
                        .unwrap_or_default();
                    text.push_str(&format!(
                        "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                        s.model.map(|m| m.to_string()).unwrap_or_default(),
                        s.n.map(|v| v.to_string()).unwrap_or_default(),
                        s.k.map(|v| v.to_string()).unwrap_or_default(),
                        s.count,
                        s.average_utility.mean,
                        s.average_utility.stddev,
                        apl_mean,
                        apl_sd,
                        s.connectivity.mean,
                        s.connectivity.stddev,
                        s.matched_pairs.mean,
                        s.matched_pairs.stddev,
                    ));
                }
                emit(run.out.as_deref(), text.as_bytes())
            }
        };
    }
    match run.format {
        Format::Csv => emit(
            run.out.as_deref(),
            harness::to_csv_string(&rows)?.as_bytes(),
        ),
        Format::Json => emit_json(run.out.as_deref(), &rows),
    }
}

fn generate(args: &GraphArgs) -> Result<Graph, Error> {
    let mut rng = RandomSource::new(harness::graph_seed(args.seed, args.model));
    args.model.generate(args.n, args.k, args.p_rewire, &mut rng)
}

fn load_or_generate(path: Option<&Path>, args: &GraphArgs) -> Result<Graph, Error> {
    match path {
        Some(p) => Graph::read_edge_list(BufReader::new(File::open(p)?)),
        None => generate(args),
    }
}

fn emit_json<T: serde::Serialize>(out: Option<&Path>, value: &T) -> Result<(), Error> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(out, text.as_bytes())
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), Error> {
    match out {
        Some(path) => File::create(path)?.write_all(bytes)?,
        None => io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}
