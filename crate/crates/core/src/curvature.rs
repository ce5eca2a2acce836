//! Ollivier-Ricci curvature of the simple random walk `K_G = D^-1 A`.
//!
//! `kappa(u, v) = 1 - W1(K_G(u, .), K_G(v, .)) / d_G(u, v)`, where `W1` is the
//! 1-Wasserstein distance with the hop metric as ground cost. The walk is not
//! lazy. The graph-level curvature is `1 - tau(K_G)` with `tau` the
//! Kantorovich norm, the worst pairwise contraction ratio.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{DistanceTable, Graph};
use crate::transport::transport_cost;

/// Largest graph accepted by [`kantorovich_norm`] and [`curvature_report`].
pub const KANTOROVICH_MAX_NODES: usize = 60;

const MASS_TOLERANCE: f64 = 1e-12;

/// A probability distribution over graph nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeDistribution {
    support: Vec<(usize, f64)>,
}

impl NodeDistribution {
    /// Validates positive masses summing to one, with distinct nodes.
    pub fn new(mut support: Vec<(usize, f64)>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::parameter("distribution has empty support"));
        }
        support.sort_by_key(|&(node, _)| node);
        if support.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::parameter("distribution support has repeated nodes"));
        }
        if support.iter().any(|&(_, m)| !(m > 0.0) || !m.is_finite()) {
            return Err(Error::parameter("distribution masses must be positive"));
        }
        let total: f64 = support.iter().map(|&(_, m)| m).sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::parameter(format!(
                "distribution masses sum to {total}, not 1"
            )));
        }
        Ok(Self { support })
    }

    /// Uniform over `nodes`, which must be distinct.
    pub fn uniform(nodes: &[usize]) -> Result<Self> {
        let mass = 1.0 / nodes.len() as f64;
        Self::new(nodes.iter().map(|&x| (x, mass)).collect())
    }

    pub fn point(node: usize) -> Self {
        Self {
            support: alloc::vec![(node, 1.0)],
        }
    }

    /// One step of the simple random walk from `x`: uniform over `N(x)`.
    pub fn random_walk(g: &Graph, x: usize) -> Result<Self> {
        g.check_node(x)?;
        if g.degree(x) == 0 {
            return Err(Error::domain(format!("node {x} is isolated")));
        }
        Self::uniform(g.neighbors(x))
    }

    pub fn support(&self) -> &[(usize, f64)] {
        &self.support
    }
}

fn w1_on_table(table: &DistanceTable, mu: &[(usize, f64)], nu: &[(usize, f64)]) -> Result<f64> {
    for &(x, _) in mu {
        for &(y, _) in nu {
            if table.get(x, y) == DistanceTable::UNREACHABLE {
                return Err(Error::domain(format!(
                    "nodes {x} and {y} lie in different components"
                )));
            }
        }
    }
    let supply: Vec<f64> = mu.iter().map(|&(_, m)| m).collect();
    let demand: Vec<f64> = nu.iter().map(|&(_, m)| m).collect();
    Ok(transport_cost(&supply, &demand, |i, j| {
        table.get(mu[i].0, nu[j].0) as f64
    }))
}

/// Exact `W1(mu, nu)` with the hop distance of `g` as ground metric.
pub fn wasserstein1(g: &Graph, mu: &NodeDistribution, nu: &NodeDistribution) -> Result<f64> {
    for &(x, _) in mu.support().iter().chain(nu.support()) {
        g.check_node(x)?;
    }
    let table = DistanceTable::new(g);
    w1_on_table(&table, mu.support(), nu.support())
}

/// Curvature queries against one graph snapshot with memoized distances.
#[derive(Debug, Clone)]
pub struct Curvature<'g> {
    graph: &'g Graph,
    table: DistanceTable,
}

impl<'g> Curvature<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Self {
            graph,
            table: DistanceTable::new(graph),
        }
    }

    /// Reuses a distance table; `table` must describe `graph`, possibly
    /// after inserting edges into it.
    pub fn with_table(graph: &'g Graph, table: DistanceTable) -> Self {
        debug_assert_eq!(table.node_count(), graph.node_count());
        Self { graph, table }
    }

    pub fn table(&self) -> &DistanceTable {
        &self.table
    }

    /// `W1(K(x, .), K(y, .))`.
    pub fn walk_distance(&self, x: usize, y: usize) -> Result<f64> {
        let mu = NodeDistribution::random_walk(self.graph, x)?;
        let nu = NodeDistribution::random_walk(self.graph, y)?;
        w1_on_table(&self.table, mu.support(), nu.support())
    }

    /// Curvature of the edge `(u, v)`.
    pub fn edge(&self, u: usize, v: usize) -> Result<f64> {
        self.graph.check_node(u)?;
        self.graph.check_node(v)?;
        if !self.graph.has_edge(u, v) {
            return Err(Error::domain(format!("({u}, {v}) is not an edge")));
        }
        Ok(1.0 - self.walk_distance(u, v)?)
    }

    /// Curvature of every edge in canonical order.
    pub fn all_edges(&self) -> Result<Vec<((usize, usize), f64)>> {
        self.graph
            .edges()
            .map(|(u, v)| Ok(((u, v), 1.0 - self.walk_distance(u, v)?)))
            .collect()
    }
}

/// Ollivier-Ricci curvature of the edge `(u, v)`.
pub fn ollivier_ricci_edge(g: &Graph, u: usize, v: usize) -> Result<f64> {
    Curvature::new(g).edge(u, v)
}

/// Kantorovich norm of the random-walk channel and the resulting graph
/// curvature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KantorovichNorm {
    /// `sup_{x != y} W1(K(x, .), K(y, .)) / d(x, y)`.
    pub tau: f64,
    /// `1 - tau`.
    pub curvature: f64,
    /// A pair attaining the supremum.
    pub argmax: (usize, usize),
}

fn check_kantorovich_size(g: &Graph) -> Result<()> {
    let n = g.node_count();
    if n > KANTOROVICH_MAX_NODES {
        return Err(Error::capacity(format!(
            "Kantorovich norm solves O(n^2) transport problems and supports at most \
             {KANTOROVICH_MAX_NODES} nodes (got {n}); use per-edge curvature instead"
        )));
    }
    if n < 2 {
        return Err(Error::domain("Kantorovich norm needs at least 2 nodes"));
    }
    if !g.is_connected() {
        return Err(Error::domain("Kantorovich norm needs a connected graph"));
    }
    Ok(())
}

/// Supremum over all distinct node pairs.
pub fn kantorovich_norm(g: &Graph) -> Result<KantorovichNorm> {
    check_kantorovich_size(g)?;
    let ctx = Curvature::new(g);
    let n = g.node_count();
    let mut best = (f64::NEG_INFINITY, (0, 1));
    for x in 0..n {
        for y in x + 1..n {
            let ratio = ctx.walk_distance(x, y)? / ctx.table().get(x, y) as f64;
            if ratio > best.0 {
                best = (ratio, (x, y));
            }
        }
    }
    Ok(KantorovichNorm {
        tau: best.0,
        curvature: 1.0 - best.0,
        argmax: best.1,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureReport {
    pub per_edge: BTreeMap<(usize, usize), f64>,
    pub kantorovich_norm: f64,
    /// `1 - kantorovich_norm`.
    pub graph_curvature: f64,
}

pub fn curvature_report(g: &Graph) -> Result<CurvatureReport> {
    let norm = kantorovich_norm(g)?;
    let per_edge = Curvature::new(g).all_edges()?.into_iter().collect();
    Ok(CurvatureReport {
        per_edge,
        kantorovich_norm: norm.tau,
        graph_curvature: 1.0 - norm.tau,
    })
}
