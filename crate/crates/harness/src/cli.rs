//! The `biclique` command.
//!
//! Exit codes: 0 on success, 1 on bad usage or unreadable input, 2 when a
//! produced structure fails verification or the acceptance suite fails.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use biclique_core::densest::densest_approx;
use biclique_core::density::{partition_density, DensityParams, DensityPolicy};
use biclique_core::ep::{partition_ep, partition_ep_directed, partition_shattering, PartitionParams};
use biclique_core::finder::{find_from_partition, find_sampled, find_topdeg, verify_biclique, Method, TopDegPolicy};
use biclique_core::graph::{
    gen_digraph, gen_gnm, gen_gnp, gen_hypergraph, gen_interval, read_digraph, read_graph, read_hypergraph, write_digraph,
    write_graph, write_hypergraph,
};
use biclique_core::hyper::{partition_equitable, partition_stepup};
use biclique_core::partition::{verify_directed_partition, verify_dpartition, verify_partition};
use biclique_core::queries::QueryScratch;
use biclique_core::{BicliquePartition, CbRepr, Execution, Graph, SbRepr};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::acceptance::{threads_from_env, Suite};
use crate::config::Config;
use crate::format::{read_any_partition, read_vertex_set, write_dpartition, write_partition, AnyPartition};
use crate::report::{report_theory, TheoryRecord};

#[derive(Parser, Debug)]
#[command(name = "biclique", version, about = "Biclique partitions of graphs and hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a random graph, digraph or hypergraph.
    Gen {
        #[command(subcommand)]
        model: Model,
        #[arg(long, global = true, default_value_t = 0)]
        seed: u64,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Partition the edges of a graph (or digraph) into bicliques.
    Partition {
        #[arg(long, value_enum, default_value_t = Algo::Ep)]
        algo: Algo,
        #[arg(long)]
        part_size: Option<usize>,
        /// Shattering exponent for `--algo shatter`.
        #[arg(long, default_value_t = 2)]
        shatter_d: u32,
        #[arg(long, value_enum, default_value_t = Policy::Desk)]
        policy: Policy,
        #[arg(long)]
        sequential: bool,
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Partition the hyperedges of a d-uniform hypergraph into d-partite cliques.
    Dpartition {
        #[arg(long, value_enum, default_value_t = DAlgo::Equitable)]
        algo: DAlgo,
        #[arg(long)]
        sequential: bool,
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Encode a graph as a biclique-based binary file.
    Compress {
        #[arg(long, value_enum, default_value_t = Algo::Ep)]
        algo: Algo,
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Decode a compressed file back to the edge-list format.
    Decompress {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Answer an independent-set or cut query on a compressed graph.
    Query {
        #[arg(long)]
        sbp: PathBuf,
        /// File with one vertex id per line.
        #[arg(long, conflicts_with = "cut")]
        independent_set: Option<PathBuf>,
        #[arg(long, num_args = 2, value_names = ["S", "T"])]
        cut: Option<Vec<PathBuf>>,
    },
    /// Approximate densest subgraph, as JSON.
    Densest {
        #[arg(long, default_value_t = 2.0)]
        alpha: f64,
        /// Compressed input; otherwise a graph is read and partitioned first.
        #[arg(long, conflicts_with = "input")]
        sbp: Option<PathBuf>,
        #[arg(short, long)]
        input: Option<PathBuf>,
    },
    /// Find a large biclique, as JSON.
    FindBiclique {
        #[arg(long, value_enum, default_value_t = FindMethod::Topdeg)]
        method: FindMethod,
        /// `sweep`, `asymptotic` or a fixed ε such as `0.1`.
        #[arg(long, default_value = "sweep", value_parser = parse_topdeg)]
        policy: TopDegPolicy,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        input: Option<PathBuf>,
    },
    /// Weight and load ratios of a biclique partition, as JSON.
    Stats {
        /// Partition file.
        #[arg(short, long)]
        input: Option<PathBuf>,
        /// Host graph; when given, the partition is verified against it.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Run the acceptance suite, one JSON line per criterion.
    Bench {
        #[arg(long, value_enum, default_value_t = BenchSuite::Acceptance)]
        suite: BenchSuite,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Comma-separated criterion numbers.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

#[derive(Subcommand, Debug)]
enum Model {
    Gnp { n: usize, p: f64 },
    Gnm { n: usize, m: u64 },
    Hypergraph { n: usize, d: usize, p: f64 },
    Interval { n: usize },
    Digraph { n: usize, p: f64 },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Algo {
    Ep,
    Directed,
    Shatter,
    Density,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DAlgo {
    Stepup,
    Equitable,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Policy {
    Desk,
    Asymptotic,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FindMethod {
    Partition,
    Topdeg,
    Sampled,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BenchSuite {
    Acceptance,
}

fn parse_topdeg(s: &str) -> Result<TopDegPolicy, String> {
    match s {
        "sweep" => Ok(TopDegPolicy::Sweep),
        "asymptotic" => Ok(TopDegPolicy::Asymptotic),
        eps => match eps.parse::<f64>() {
            Ok(e) if e > 0.0 && e < 1.0 => Ok(TopDegPolicy::Fixed(e)),
            _ => Err(format!("expected sweep, asymptotic or ε in (0, 1), got {eps:?}")),
        },
    }
}

struct Failure {
    code: i32,
    msg: String,
}

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure { code: 1, msg: e.to_string() }
}

fn verify_err(e: impl std::fmt::Display) -> Failure {
    Failure { code: 2, msg: format!("verification failed: {e}") }
}

fn open(path: Option<&Path>) -> Result<Box<dyn BufRead>, Failure> {
    match path {
        None => Ok(Box::new(BufReader::new(io::stdin()))),
        Some(p) if p.as_os_str() == "-" => Ok(Box::new(BufReader::new(io::stdin()))),
        Some(p) => {
            let f = File::open(p).map_err(|e| input_err(format!("{}: {e}", p.display())))?;
            Ok(Box::new(BufReader::new(f)))
        }
    }
}

fn create(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    match path {
        None => Ok(Box::new(BufWriter::new(io::stdout()))),
        Some(p) if p.as_os_str() == "-" => Ok(Box::new(BufWriter::new(io::stdout()))),
        Some(p) => {
            let f = File::create(p).map_err(|e| input_err(format!("{}: {e}", p.display())))?;
            Ok(Box::new(BufWriter::new(f)))
        }
    }
}

fn execution(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::default()
    }
}

fn read_vertices(path: &Path) -> Result<Vec<u32>, Failure> {
    read_vertex_set(open(Some(path))?).map_err(input_err)
}

fn load_sb(path: &Path) -> Result<SbRepr, Failure> {
    SbRepr::decode(open(Some(path))?).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn partition_graph(g: &Graph, algo: Algo, params: PartitionParams, policy: Policy) -> Result<BicliquePartition, Failure> {
    Ok(match algo {
        Algo::Ep => partition_ep(g, &params),
        Algo::Shatter => partition_shattering(g, params.shattering.unwrap_or(2), params.execution).partition,
        Algo::Density => {
            let policy = match (params.part_size, policy) {
                (Some(r), _) => DensityPolicy::Explicit { part_size: r, divisor: 1 },
                (None, Policy::Desk) => DensityPolicy::DeskScale,
                (None, Policy::Asymptotic) => DensityPolicy::Asymptotic,
            };
            partition_density(g, &DensityParams { policy, execution: params.execution })
        }
        Algo::Directed => return Err(input_err("--algo directed reads a digraph; use it with `partition`")),
    })
}

fn emit_json(value: serde_json::Value) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    writeln!(out, "{value}").map_err(input_err)
}

fn execute(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen { model, seed, output } => {
            let mut out = create(output.as_deref())?;
            let out_ref = &mut out;
            let written = match model {
                Model::Gnp { n, p } => write_graph(&gen_gnp(n, p, seed).map_err(input_err)?, out_ref),
                Model::Gnm { n, m } => write_graph(&gen_gnm(n, m, seed).map_err(input_err)?, out_ref),
                Model::Interval { n } => write_graph(&gen_interval(n, seed).map_err(input_err)?, out_ref),
                Model::Digraph { n, p } => write_digraph(&gen_digraph(n, p, seed).map_err(input_err)?, out_ref),
                Model::Hypergraph { n, d, p } => write_hypergraph(&gen_hypergraph(n, d, p, seed).map_err(input_err)?, out_ref),
            };
            written.and_then(|()| out.flush()).map_err(input_err)
        }
        Command::Partition { algo, part_size, shatter_d, policy, sequential, input, output } => {
            let params = PartitionParams {
                part_size,
                shattering: matches!(algo, Algo::Shatter).then_some(shatter_d),
                execution: execution(sequential),
            };
            let reader = open(input.as_deref())?;
            let p = if let Algo::Directed = algo {
                let g = read_digraph(reader).map_err(input_err)?;
                let p = partition_ep_directed(&g, &params);
                verify_directed_partition(&g, &p).map_err(verify_err)?;
                p
            } else {
                let g = read_graph(reader).map_err(input_err)?;
                let p = partition_graph(&g, algo, params, policy)?;
                verify_partition(&g, &p).map_err(verify_err)?;
                p
            };
            write_partition(&p, create(output.as_deref())?).map_err(input_err)
        }
        Command::Dpartition { algo, sequential, input, output } => {
            let h = read_hypergraph(open(input.as_deref())?).map_err(input_err)?;
            let p = match algo {
                DAlgo::Stepup => partition_stepup(&h, execution(sequential)),
                DAlgo::Equitable => partition_equitable(&h, execution(sequential)),
            };
            verify_dpartition(&h, &p).map_err(verify_err)?;
            write_dpartition(&p, create(output.as_deref())?).map_err(input_err)
        }
        Command::Compress { algo, input, output } => {
            let g = read_graph(open(input.as_deref())?).map_err(input_err)?;
            let p = partition_graph(&g, algo, PartitionParams::default(), Policy::Desk)?;
            verify_partition(&g, &p).map_err(verify_err)?;
            let sb = SbRepr::new(p);
            let mut out = create(Some(&output))?;
            sb.encode(&mut out).map_err(input_err)?;
            out.flush().map_err(input_err)
        }
        Command::Decompress { input, output } => {
            let sb = load_sb(&input)?;
            let edges = sb.edges();
            let g = Graph::from_edges(sb.n(), &edges).map_err(|e| verify_err(format!("decoded bicliques overlap: {e}")))?;
            let mut out = create(output.as_deref())?;
            write_graph(&g, &mut out).and_then(|()| out.flush()).map_err(input_err)
        }
        Command::Query { sbp, independent_set, cut } => {
            let sb = load_sb(&sbp)?;
            let mut q = QueryScratch::new();
            match (independent_set, cut) {
                (Some(s), None) => {
                    let s = read_vertices(&s)?;
                    let answer = q.is_independent(&sb, &s).map_err(input_err)?;
                    emit_json(json!({ "query": "independent-set", "size": s.len(), "independent": answer }))
                }
                (None, Some(files)) => {
                    let (s, t) = (read_vertices(&files[0])?, read_vertices(&files[1])?);
                    let answer = q.cut(&sb, &s, &t).map_err(input_err)?;
                    emit_json(json!({ "query": "cut", "s": s.len(), "t": t.len(), "cut": answer }))
                }
                _ => Err(input_err("give exactly one of --independent-set or --cut")),
            }
        }
        Command::Densest { alpha, sbp, input } => {
            let cb = match sbp {
                Some(path) => CbRepr::from_sb(load_sb(&path)?),
                None => {
                    let g = read_graph(open(input.as_deref())?).map_err(input_err)?;
                    CbRepr::new(partition_ep(&g, &PartitionParams::default()))
                }
            };
            let r = densest_approx(&cb, alpha).map_err(input_err)?;
            emit_json(json!({
                "alpha": alpha,
                "size": r.vertices.len(),
                "density": r.density.to_string(),
                "density_value": *r.density.numer() as f64 / *r.density.denom() as f64,
                "rounds": r.rounds,
                "vertices": r.vertices,
            }))
        }
        Command::FindBiclique { method, policy, seed, input } => {
            let g = read_graph(open(input.as_deref())?).map_err(input_err)?;
            let found = match method {
                FindMethod::Partition => find_from_partition(&g, &partition_ep(&g, &PartitionParams::default())),
                FindMethod::Topdeg => find_topdeg(&g, policy),
                FindMethod::Sampled => find_sampled(&g, policy, seed),
            }
            .map_err(input_err)?;
            verify_biclique(&g, &found.a, &found.b).map_err(verify_err)?;
            emit_json(json!({
                "method": found.method.name(),
                "fallback": found.fallback,
                "requested": match method {
                    FindMethod::Partition => Method::Partition.name(),
                    FindMethod::Topdeg => Method::TopDegree.name(),
                    FindMethod::Sampled => Method::Sampled.name(),
                },
                "t": found.t(),
                "a": found.a,
                "b": found.b,
            }))
        }
        Command::Stats { input, graph } => {
            let record: TheoryRecord = match read_any_partition(open(input.as_deref())?).map_err(input_err)? {
                AnyPartition::Bicliques(p) => match graph {
                    Some(path) => {
                        let g = read_graph(open(Some(&path))?).map_err(input_err)?;
                        verify_partition(&g, &p).map_err(verify_err)?;
                        report_theory(&g, &p)
                    }
                    None => TheoryRecord::from_counts(p.host_n(), p.covered_pairs(), p.len(), p.weight(), p.max_load()),
                },
                AnyPartition::DCliques(_) => return Err(input_err("stats expects a biclique partition")),
            };
            emit_json(serde_json::to_value(record).map_err(input_err)?)
        }
        Command::Bench { suite: BenchSuite::Acceptance, seed, config, only } => {
            let config = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
                    Config::parse(&text).map_err(input_err)?
                }
                None => Config::default(),
            };
            let suite = Suite::new(config, seed, threads_from_env());
            let outcomes = suite.run(&only, |o| {
                let line = serde_json::to_string(o).expect("outcome serializes");
                println!("{line}");
            });
            let blocking = outcomes.iter().filter(|o| o.blocking()).count();
            if blocking > 0 {
                return Err(Failure { code: 2, msg: format!("{blocking} acceptance criteria failed") });
            }
            Ok(())
        }
    }
}

/// Parses `args` (program name first) and runs the command, returning the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("biclique: {}", f.msg);
            f.code
        }
    }
}
