use std::ffi::OsString;
use std::fmt::Write as _;
use std::ops::Range;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use rewire_core::curvature::{curvature_report, Curvature};
use rewire_core::info::{es_bound, simulate_all_inputs};
use rewire_core::resistance::EffectiveResistance;
use rewire_core::rewiring::{run, Algorithm, RunConfig, DEFAULT_TAU};
use rewire_core::spectral::{cheeger_bounds, cheeger_exact, spectrum, triangle_count};
use rewire_core::{generate, GeneratorSpec, Graph};
use serde_json::{json, Map, Value};

use crate::circuit;
use crate::edgelist::{self, EdgeList, GENERATOR_TAG};
use crate::error::{exit, CliError, Result};
use crate::format::sig9;
use crate::plot::trace_svg;
use crate::trace::{default_meta_path, trace_csv, write_metadata, write_text, TraceMetadata};

/// Caps the number of seeds rewired in parallel.
pub const THREADS_ENV: &str = "EXPANDER_REWIRE_THREADS";

/// Clique size used for the dumbbell when none is given.
pub const DEFAULT_DUMBBELL_CLIQUE: usize = 25;

#[derive(Debug, Parser)]
#[command(
    name = "expander-rewire",
    version,
    about = "Graph rewiring runs, spectral and curvature metrics, and noisy-circuit information bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a graph from one of the built-in families as an edge list.
    Generate(GenerateArgs),
    /// Rewire a graph and record its metric trace.
    Rewire(RewireArgs),
    /// Report spectral, Cheeger, resistance, and curvature metrics.
    Metrics(MetricsArgs),
    /// Tabulate the information-decay bound, optionally against a circuit.
    InfoBound(InfoBoundArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Dumbbell,
    RingOfCliques,
    PathOfCliques,
    Path,
    Complete,
    Cycle,
    RandomRegular,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub clique_size: Option<usize>,
    #[arg(long)]
    pub num_cliques: Option<usize>,
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output path; the edge list goes to standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_algorithm(s: &str) -> std::result::Result<Algorithm, String> {
    s.parse().map_err(|e: rewire_core::Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct RewireArgs {
    /// rlef, grlef, or sdrf.
    #[arg(long, value_parser = parse_algorithm)]
    pub algo: Algorithm,
    #[arg(long)]
    pub iters: usize,
    /// Inverse temperature of the greedy flip's hub-edge softmax.
    #[arg(long, default_value_t = DEFAULT_TAU)]
    pub tau: f64,
    #[arg(long, default_value_t = 0, conflicts_with = "seeds")]
    pub seed: u64,
    /// Half-open seed range `a..b` (or inclusive `a..=b`) run in parallel;
    /// output paths gain a `.seed<k>` suffix.
    #[arg(long, value_parser = parse_seed_range)]
    pub seeds: Option<Range<u64>>,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Metadata JSON path; defaults to the trace path with `.meta.json`.
    #[arg(long)]
    pub meta: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub metric_every: usize,
    /// SVG chart of the trace.
    #[arg(long)]
    pub plot: Option<PathBuf>,
    /// End the run at the first step that disconnects the graph.
    #[arg(long)]
    pub stop_on_disconnect: bool,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON object instead of `metric,u,v,value` CSV rows.
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub norm_gap: bool,
    #[arg(long)]
    pub gap: bool,
    #[arg(long)]
    pub triangles: bool,
    /// Exhaustive Cheeger constant; at most 20 nodes.
    #[arg(long)]
    pub cheeger_exact: bool,
    /// Spectral Cheeger bounds; regular graphs only.
    #[arg(long)]
    pub cheeger_bounds: bool,
    /// Effective resistance of every edge.
    #[arg(long)]
    pub effective_resistance: bool,
    /// Per-edge curvature plus the Kantorovich norm; at most 60 nodes.
    #[arg(long)]
    pub curvature: bool,
    /// Per-edge curvature only, for graphs of any size.
    #[arg(long)]
    pub edge_curvature: bool,
}

#[derive(Debug, Args)]
pub struct InfoBoundArgs {
    /// Gate failure probabilities, comma-separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub delta: Vec<f64>,
    /// Fan-in bound k; in circuit mode it overrides the file.
    #[arg(long)]
    pub fanin: Option<usize>,
    /// Input-to-output distances, comma-separated (scalar mode).
    #[arg(long, value_delimiter = ',', conflicts_with = "circuit")]
    pub distance: Vec<usize>,
    /// Circuit JSON; reports exact mutual information for every input.
    #[arg(long)]
    pub circuit: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn parse_seed_range(s: &str) -> std::result::Result<Range<u64>, String> {
    let bad = || format!("'{s}' is not a seed range like 0..10 or 0..=9");
    let (start, end, inclusive) = if let Some((a, b)) = s.split_once("..=") {
        (a, b, true)
    } else if let Some((a, b)) = s.split_once("..") {
        (a, b, false)
    } else {
        return Err(bad());
    };
    let start: u64 = start.trim().parse().map_err(|_| bad())?;
    let end: u64 = end.trim().parse().map_err(|_| bad())?;
    let end = if inclusive {
        end.checked_add(1).ok_or_else(bad)?
    } else {
        end
    };
    if start >= end {
        return Err(format!("seed range '{s}' is empty"));
    }
    Ok(start..end)
}

/// Parses `args` (including the program name), runs the command, prints
/// its output, and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                exit::USAGE
            } else {
                exit::SUCCESS
            };
        }
    };
    match execute(&cli.command) {
        Ok(stdout) => {
            print!("{stdout}");
            exit::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Runs a command and returns what it prints on standard output.
pub fn execute(command: &Command) -> Result<String> {
    match command {
        Command::Generate(args) => cmd_generate(args),
        Command::Rewire(args) => cmd_rewire(args),
        Command::Metrics(args) => cmd_metrics(args),
        Command::InfoBound(args) => cmd_info_bound(args),
    }
}

fn emit(out: Option<&Path>, text: String) -> Result<String> {
    match out {
        Some(path) => {
            write_text(path, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

pub fn generator_spec(args: &GenerateArgs) -> Result<GeneratorSpec> {
    let need = |value: Option<usize>, flag: &str| {
        value.ok_or_else(|| {
            CliError::usage(format!(
                "--family {} requires --{flag}",
                args.family.to_possible_value().unwrap().get_name()
            ))
        })
    };
    Ok(match args.family {
        Family::Dumbbell => GeneratorSpec::Dumbbell {
            clique_size: args.clique_size.unwrap_or(DEFAULT_DUMBBELL_CLIQUE),
        },
        Family::RingOfCliques => GeneratorSpec::RingOfCliques {
            degree: need(args.degree, "degree")?,
            num_cliques: need(args.num_cliques, "num-cliques")?,
        },
        Family::PathOfCliques => GeneratorSpec::PathOfCliques {
            clique_size: need(args.clique_size, "clique-size")?,
            num_cliques: need(args.num_cliques, "num-cliques")?,
        },
        Family::Path => GeneratorSpec::Path {
            n: need(args.n, "n")?,
        },
        Family::Complete => GeneratorSpec::Complete {
            n: need(args.n, "n")?,
        },
        Family::Cycle => GeneratorSpec::Cycle {
            n: need(args.n, "n")?,
        },
        Family::RandomRegular => GeneratorSpec::RandomRegular {
            n: need(args.n, "n")?,
            degree: need(args.degree, "degree")?,
            seed: args.seed,
        },
    })
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<String> {
    let spec = generator_spec(args)?;
    let list = EdgeList {
        graph: generate(spec)?,
        comments: vec![format!("{GENERATOR_TAG} {spec}")],
    };
    emit(args.out.as_deref(), edgelist::write(&list))
}

/// `dir/name.ext` becomes `dir/name.seed<k>.ext`.
pub fn seed_suffixed(path: &Path, seed: u64) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}.seed{seed}.{}", ext.to_string_lossy()),
        None => format!("{stem}.seed{seed}"),
    };
    path.with_file_name(name)
}

pub fn thread_cap() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(value) => match value.trim().parse::<usize>() {
            Ok(k) if k >= 1 => Ok(Some(k)),
            _ => Err(CliError::usage(format!(
                "{THREADS_ENV}='{value}' is not a positive integer"
            ))),
        },
        Err(_) => Ok(None),
    }
}

struct SeedOutputs {
    out: Option<PathBuf>,
    trace: Option<PathBuf>,
    meta: Option<PathBuf>,
    plot: Option<PathBuf>,
}

fn rewire_one(
    args: &RewireArgs,
    input: &EdgeList,
    seed: u64,
    paths: SeedOutputs,
) -> Result<String> {
    let config = RunConfig::new(args.algo, args.iters, seed)
        .with_tau(args.tau)
        .with_metric_every(args.metric_every)
        .with_stop_on_disconnect(args.stop_on_disconnect);
    let (graph, trace) = run(input.graph.clone(), &config)?;
    let meta = TraceMetadata::new(
        &trace,
        args.stop_on_disconnect,
        input.generator(),
        Some(&args.input),
        graph.node_count(),
    );
    if let Some(path) = &paths.out {
        let list = EdgeList {
            graph,
            comments: input.comments.clone(),
        };
        edgelist::write_file(path, &list)?;
    }
    if let Some(path) = &paths.trace {
        write_text(path, &trace_csv(&trace))?;
    }
    if let Some(path) = &paths.meta {
        write_metadata(path, &meta)?;
    }
    if let Some(path) = &paths.plot {
        let title = format!("{} seed {seed}", args.algo);
        write_text(path, &trace_svg(&trace.records, &title))?;
    }
    Ok(format!(
        "algo={} seed={seed} iterations={} records={} connected={} norm_gap={} triangles={}\n",
        args.algo,
        meta.final_iteration,
        meta.records,
        u8::from(meta.final_connected),
        sig9(meta.final_norm_gap),
        meta.final_triangles
    ))
}

pub fn cmd_rewire(args: &RewireArgs) -> Result<String> {
    let input = edgelist::read_file(&args.input)?;
    let meta_for = |trace: &Option<PathBuf>| {
        args.meta
            .clone()
            .or_else(|| trace.as_deref().map(default_meta_path))
    };
    let Some(seeds) = args.seeds.clone() else {
        let paths = SeedOutputs {
            out: args.out.clone(),
            trace: args.trace.clone(),
            meta: meta_for(&args.trace),
            plot: args.plot.clone(),
        };
        return rewire_one(args, &input, args.seed, paths);
    };

    let suffix = |p: &Option<PathBuf>, seed| p.as_deref().map(|p| seed_suffixed(p, seed));
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(k) = thread_cap()? {
        pool = pool.num_threads(k);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::usage(format!("cannot start worker threads: {e}")))?;
    let seeds: Vec<u64> = seeds.collect();
    let results: Vec<Result<String>> = pool.install(|| {
        seeds
            .par_iter()
            .map(|&seed| {
                let trace = suffix(&args.trace, seed);
                let paths = SeedOutputs {
                    out: suffix(&args.out, seed),
                    meta: suffix(&args.meta, seed)
                        .or_else(|| trace.as_deref().map(default_meta_path)),
                    trace,
                    plot: suffix(&args.plot, seed),
                };
                rewire_one(args, &input, seed, paths)
            })
            .collect()
    });
    results
        .into_iter()
        .collect::<Result<Vec<_>>>()
        .map(|lines| lines.concat())
}

/// Metric rows in selection order.
enum Metric {
    Scalar(&'static str, f64),
    Count(&'static str, usize),
    PerEdge(&'static str, Vec<((usize, usize), f64)>),
}

fn collect_metrics(args: &MetricsArgs, g: &Graph) -> Result<Vec<Metric>> {
    let any = args.norm_gap
        || args.gap
        || args.triangles
        || args.cheeger_exact
        || args.cheeger_bounds
        || args.effective_resistance
        || args.curvature
        || args.edge_curvature;
    let defaults = !any;
    let mut metrics = Vec::new();
    if args.norm_gap || args.gap || defaults {
        let report = spectrum(g)?;
        if args.norm_gap || defaults {
            metrics.push(Metric::Scalar("norm_gap", report.normalized_gap));
        }
        if args.gap || defaults {
            metrics.push(Metric::Scalar("gap", report.gap));
        }
    }
    if args.triangles || defaults {
        metrics.push(Metric::Count("triangles", triangle_count(g)));
    }
    if args.cheeger_exact {
        let cut = cheeger_exact(g)?.exact.expect("exact cut is reported");
        metrics.push(Metric::Scalar("cheeger_exact", cut.value()));
    }
    if args.cheeger_bounds {
        let report = cheeger_bounds(g)?;
        metrics.push(Metric::Scalar(
            "cheeger_lower",
            report.spectral_lower.expect("lower bound"),
        ));
        metrics.push(Metric::Scalar(
            "cheeger_upper",
            report.spectral_upper.expect("upper bound"),
        ));
    }
    if args.effective_resistance {
        let er = EffectiveResistance::new(g);
        let rows = g
            .edges()
            .map(|(u, v)| Ok(((u, v), er.resistance(u, v)?)))
            .collect::<rewire_core::Result<Vec<_>>>()?;
        metrics.push(Metric::PerEdge("effective_resistance", rows));
    }
    if args.curvature {
        let report = curvature_report(g)?;
        metrics.push(Metric::PerEdge(
            "curvature",
            report.per_edge.into_iter().collect(),
        ));
        metrics.push(Metric::Scalar("kantorovich_norm", report.kantorovich_norm));
        metrics.push(Metric::Scalar("graph_curvature", report.graph_curvature));
    } else if args.edge_curvature {
        metrics.push(Metric::PerEdge("curvature", Curvature::new(g).all_edges()?));
    }
    Ok(metrics)
}

fn metrics_csv(metrics: &[Metric]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["metric", "u", "v", "value"])
        .expect("in-memory write");
    for metric in metrics {
        match metric {
            Metric::Scalar(name, x) => w.write_record([*name, "", "", &sig9(*x)]),
            Metric::Count(name, k) => w.write_record([*name, "", "", &k.to_string()]),
            Metric::PerEdge(name, rows) => rows.iter().try_for_each(|&((u, v), x)| {
                w.write_record([*name, &u.to_string(), &v.to_string(), &sig9(x)])
            }),
        }
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ASCII output")
}

fn metrics_json(metrics: &[Metric]) -> String {
    let mut map = Map::new();
    for metric in metrics {
        let (name, value) = match metric {
            Metric::Scalar(name, x) => (*name, json!(x)),
            Metric::Count(name, k) => (*name, json!(k)),
            Metric::PerEdge(name, rows) => (
                *name,
                Value::Array(
                    rows.iter()
                        .map(|&((u, v), x)| json!({ "u": u, "v": v, "value": x }))
                        .collect(),
                ),
            ),
        };
        map.insert(name.to_string(), value);
    }
    let mut text = serde_json::to_string_pretty(&Value::Object(map)).expect("metrics serialize");
    text.push('\n');
    text
}

pub fn cmd_metrics(args: &MetricsArgs) -> Result<String> {
    let input = edgelist::read_file(&args.input)?;
    let metrics = collect_metrics(args, &input.graph)?;
    let text = if args.json {
        metrics_json(&metrics)
    } else {
        metrics_csv(&metrics)
    };
    emit(args.out.as_deref(), text)
}

pub fn cmd_info_bound(args: &InfoBoundArgs) -> Result<String> {
    let mut out = String::new();
    if let Some(path) = &args.circuit {
        let c = circuit::read_file(path)?.build(args.fanin)?;
        let k = c.fanin_bound();
        out.push_str("delta,k,d,eta,bound_bits,exact_mi_bits\n");
        for &delta in &args.delta {
            let eta = es_bound(delta, k, 0)?.eta;
            for info in simulate_all_inputs(&c, delta)? {
                let (d, bound) = match (info.distance, info.bound) {
                    (Some(d), Some(b)) => (d.to_string(), sig9(b.raw)),
                    _ => (String::new(), String::new()),
                };
                writeln!(
                    out,
                    "{},{k},{d},{},{bound},{}",
                    sig9(delta),
                    sig9(eta),
                    sig9(info.mutual_information)
                )
                .unwrap();
            }
        }
    } else {
        let k = args
            .fanin
            .ok_or_else(|| CliError::usage("--fanin is required without --circuit"))?;
        if args.distance.is_empty() {
            return Err(CliError::usage("--distance is required without --circuit"));
        }
        out.push_str("delta,k,d,eta,bound_bits,clamped_bits\n");
        for &delta in &args.delta {
            for &d in &args.distance {
                let b = es_bound(delta, k, d)?;
                writeln!(
                    out,
                    "{},{k},{d},{},{},{}",
                    sig9(delta),
                    sig9(b.eta),
                    sig9(b.raw),
                    sig9(b.clamped)
                )
                .unwrap();
            }
        }
    }
    emit(args.out.as_deref(), out)
}
