use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::{grlef_step, rlef_step, sdrf_step, StepOutcome};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::RngStream;
use crate::spectral::{normalized_gap, triangle_count, NORMALIZATION};

/// Inverse temperature used when none is given.
pub const DEFAULT_TAU: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Rlef,
    Grlef,
    Sdrf,
}

impl Algorithm {
    pub fn id(&self) -> &'static str {
        match self {
            Self::Rlef => "rlef",
            Self::Grlef => "grlef",
            Self::Sdrf => "sdrf",
        }
    }

    /// Whether steps are local flips that keep degrees and connectivity.
    pub fn is_local(&self) -> bool {
        !matches!(self, Self::Sdrf)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rlef" => Ok(Self::Rlef),
            "grlef" => Ok(Self::Grlef),
            "sdrf" => Ok(Self::Sdrf),
            other => Err(Error::parameter(format!(
                "unknown algorithm '{other}' (expected rlef, grlef or sdrf)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub algorithm: Algorithm,
    pub iterations: usize,
    /// Only used by G-RLEF.
    pub tau: f64,
    pub seed: u64,
    /// Record metrics every this many iterations (and after the last one).
    pub metric_every: usize,
    /// End the run, with a final record, at the first step that leaves the
    /// graph disconnected.
    pub stop_on_disconnect: bool,
}

impl RunConfig {
    pub fn new(algorithm: Algorithm, iterations: usize, seed: u64) -> Self {
        Self {
            algorithm,
            iterations,
            tau: DEFAULT_TAU,
            seed,
            metric_every: 1,
            stop_on_disconnect: false,
        }
    }

    pub fn with_tau(mut self, tau: f64) -> Self {
        self.tau = tau;
        self
    }

    pub fn with_metric_every(mut self, every: usize) -> Self {
        self.metric_every = every;
        self
    }

    pub fn with_stop_on_disconnect(mut self, stop: bool) -> Self {
        self.stop_on_disconnect = stop;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    pub iteration: usize,
    pub edge_count: usize,
    pub connected: bool,
    /// Zero once the graph is disconnected.
    pub normalized_gap: f64,
    pub triangles: usize,
    /// Whether the step that produced this record aborted. Always false for
    /// the initial record.
    pub aborted: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RewireTrace {
    pub algorithm: Algorithm,
    pub seed: u64,
    pub tau: Option<f64>,
    /// Requested iterations. The last record may come earlier when the run
    /// stopped on disconnection.
    pub iterations: usize,
    pub metric_every: usize,
    pub normalization: &'static str,
    pub records: Vec<TraceRecord>,
}

fn observe(g: &Graph, iteration: usize, aborted: bool) -> Result<TraceRecord> {
    let connected = g.is_connected();
    let normalized_gap = if connected && g.node_count() >= 2 {
        normalized_gap(g)?
    } else {
        0.0
    };
    Ok(TraceRecord {
        iteration,
        edge_count: g.edge_count(),
        connected,
        normalized_gap,
        triangles: triangle_count(g),
        aborted,
    })
}

/// One step of `algorithm`.
pub fn step(
    g: &mut Graph,
    algorithm: Algorithm,
    tau: f64,
    rng: &mut RngStream,
) -> Result<StepOutcome> {
    match algorithm {
        Algorithm::Rlef => rlef_step(g, rng),
        Algorithm::Grlef => grlef_step(g, tau, rng),
        Algorithm::Sdrf => sdrf_step(g, rng),
    }
}

/// Applies `config.iterations` steps and records metrics along the way.
///
/// Records are taken before the first step, after every `metric_every`-th
/// step, and after the final step. Local flips require a connected input;
/// the curvature baseline keeps recording after it disconnects the graph,
/// with a normalized gap of zero, unless `stop_on_disconnect` ends the run
/// there.
pub fn run(mut g: Graph, config: &RunConfig) -> Result<(Graph, RewireTrace)> {
    if config.metric_every == 0 {
        return Err(Error::parameter("metric_every must be >= 1"));
    }
    if config.algorithm == Algorithm::Grlef && !(config.tau > 0.0 && config.tau.is_finite()) {
        return Err(Error::parameter("tau must be a positive finite number"));
    }
    if config.algorithm.is_local() && !g.is_connected() {
        return Err(Error::domain(format!(
            "{} requires a connected input graph",
            config.algorithm
        )));
    }
    if config.iterations > 0 && g.edge_count() == 0 {
        return Err(Error::domain("rewiring needs at least one edge"));
    }

    let mut rng = RngStream::from_seed(config.seed);
    let mut records = alloc::vec![observe(&g, 0, false)?];
    for t in 1..=config.iterations {
        let outcome = step(&mut g, config.algorithm, config.tau, &mut rng)?;
        let stop = config.stop_on_disconnect && outcome.is_applied() && !g.is_connected();
        if stop || t % config.metric_every == 0 || t == config.iterations {
            records.push(observe(&g, t, !outcome.is_applied())?);
        }
        if stop {
            break;
        }
    }
    let trace = RewireTrace {
        algorithm: config.algorithm,
        seed: config.seed,
        tau: (config.algorithm == Algorithm::Grlef).then_some(config.tau),
        iterations: config.iterations,
        metric_every: config.metric_every,
        normalization: NORMALIZATION,
        records,
    };
    Ok((g, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, GeneratorSpec};

    #[test]
    fn zero_iterations() {
        let g = generate(GeneratorSpec::Dumbbell { clique_size: 5 }).unwrap();
        for algorithm in [Algorithm::Rlef, Algorithm::Grlef, Algorithm::Sdrf] {
            let (out, trace) = run(g.clone(), &RunConfig::new(algorithm, 0, 1)).unwrap();
            assert_eq!(out, g);
            assert_eq!(trace.records.len(), 1);
            assert_eq!(trace.records[0].iteration, 0);
            assert_eq!(trace.records[0].triangles, 20);
        }
    }

    #[test]
    fn record_schedule() {
        let g = generate(GeneratorSpec::Cycle { n: 12 }).unwrap();
        let cfg = RunConfig::new(Algorithm::Rlef, 25, 4).with_metric_every(10);
        let (_, trace) = run(g, &cfg).unwrap();
        let iters: Vec<usize> = trace.records.iter().map(|r| r.iteration).collect();
        assert_eq!(iters, [0, 10, 20, 25]);
    }

    #[test]
    fn parameter_errors() {
        let g = generate(GeneratorSpec::Cycle { n: 6 }).unwrap();
        assert!(matches!(
            "gat".parse::<Algorithm>(),
            Err(Error::Parameter(_))
        ));
        let bad_every = RunConfig::new(Algorithm::Rlef, 5, 0).with_metric_every(0);
        assert!(matches!(
            run(g.clone(), &bad_every),
            Err(Error::Parameter(_))
        ));
        let bad_tau = RunConfig::new(Algorithm::Grlef, 5, 0).with_tau(0.0);
        assert!(matches!(run(g.clone(), &bad_tau), Err(Error::Parameter(_))));
        let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            run(split.clone(), &RunConfig::new(Algorithm::Grlef, 5, 0)),
            Err(Error::Domain(_))
        ));
        let (_, trace) = run(split, &RunConfig::new(Algorithm::Sdrf, 2, 0)).unwrap();
        assert!(trace
            .records
            .iter()
            .all(|r| !r.connected && r.normalized_gap == 0.0));
    }

    #[test]
    fn stops_at_the_first_disconnection() {
        let g = generate(GeneratorSpec::Dumbbell { clique_size: 4 }).unwrap();
        let cfg = RunConfig::new(Algorithm::Sdrf, 200, 2)
            .with_metric_every(50)
            .with_stop_on_disconnect(true);
        let (out, trace) = run(g, &cfg).unwrap();
        let last = trace.records.last().unwrap();
        if last.iteration < 200 {
            assert!(!last.connected && !out.is_connected());
            assert!(trace.records[..trace.records.len() - 1]
                .iter()
                .all(|r| r.connected));
        } else {
            assert!(trace.records.iter().all(|r| r.connected));
        }
    }

    #[test]
    fn runs_are_deterministic() {
        let g = generate(GeneratorSpec::RingOfCliques {
            degree: 4,
            num_cliques: 6,
        })
        .unwrap();
        for algorithm in [Algorithm::Rlef, Algorithm::Grlef, Algorithm::Sdrf] {
            let cfg = RunConfig::new(algorithm, 60, 17).with_metric_every(7);
            let a = run(g.clone(), &cfg).unwrap();
            let b = run(g.clone(), &cfg).unwrap();
            assert_eq!(a, b);
        }
    }
}
