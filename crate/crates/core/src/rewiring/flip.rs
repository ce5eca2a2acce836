use alloc::vec::Vec;

use rand::Rng;

use super::{canonical, AbortReason, StepOutcome};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::resistance::triangle_resistance_bound;

/// A local flip on the three-path `i - u - v - j`: `(i, u), (j, v)` become
/// `(i, v), (j, u)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Flip {
    pub u: usize,
    pub v: usize,
    pub i: usize,
    pub j: usize,
}

impl Flip {
    /// Checks that the flip keeps the graph simple: `(u, v), (i, u), (j, v)`
    /// are edges and `(i, v), (j, u)` are not.
    pub fn is_valid(&self, g: &Graph) -> bool {
        let Flip { u, v, i, j } = *self;
        let nodes = [u, v, i, j];
        nodes.iter().all(|&x| x < g.node_count())
            && (0..4).all(|a| (a + 1..4).all(|b| nodes[a] != nodes[b]))
            && g.has_edge(u, v)
            && g.has_edge(i, u)
            && g.has_edge(j, v)
            && !g.has_edge(i, v)
            && !g.has_edge(j, u)
    }

    /// Applies the flip. The caller guarantees [`Flip::is_valid`].
    pub fn apply(&self, g: &mut Graph) -> StepOutcome {
        debug_assert!(self.is_valid(g));
        let Flip { u, v, i, j } = *self;
        g.remove_edge(i, u);
        g.remove_edge(j, v);
        g.add_edge(i, v).expect("valid flip endpoints");
        g.add_edge(j, u).expect("valid flip endpoints");
        StepOutcome {
            hub_edge: (u, v),
            abort_reason: None,
            removed_edges: alloc::vec![canonical(i, u), canonical(j, v)],
            added_edges: alloc::vec![canonical(i, v), canonical(j, u)],
        }
    }
}

fn require_edges(g: &Graph) -> Result<()> {
    if g.edge_count() == 0 {
        Err(Error::domain("rewiring needs at least one edge"))
    } else {
        Ok(())
    }
}

/// Sorted `N(a) \ (N(b) ∪ {b})`: neighbors of `a` that can be moved over to
/// `b` without creating a self-loop or a parallel edge.
fn exclusive_neighbors(g: &Graph, a: usize, b: usize) -> Vec<usize> {
    g.neighbors(a)
        .iter()
        .copied()
        .filter(|&x| x != b && !g.has_edge(x, b))
        .collect()
}

/// Valid `j` choices for an RLEF step on hub `(u, v)`: `N(v) \ (N(u) ∪ {u})`.
pub fn rlef_valid_j(g: &Graph, u: usize, v: usize) -> Vec<usize> {
    exclusive_neighbors(g, v, u)
}

/// Draws a uniformly random oriented edge `(u, v)`.
fn uniform_arc<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> (usize, usize) {
    let mut k = rng.random_range(0..2 * g.edge_count());
    for u in 0..g.node_count() {
        let d = g.degree(u);
        if k < d {
            return (u, g.neighbors(u)[k]);
        }
        k -= d;
    }
    unreachable!("arc index below 2m")
}

/// One random local edge flip.
///
/// The hub edge and `i` are drawn uniformly; the step aborts when `i` is `v`
/// or already adjacent to `v`. Otherwise `j` is drawn uniformly from the
/// valid set, which is the distribution a rejection loop over `N(v)` would
/// produce; an empty valid set aborts instead of looping forever.
pub fn rlef_step<R: Rng + ?Sized>(g: &mut Graph, rng: &mut R) -> Result<StepOutcome> {
    require_edges(g)?;
    let (u, v) = uniform_arc(g, rng);
    let nbrs = g.neighbors(u);
    let i = nbrs[rng.random_range(0..nbrs.len())];
    if i == v || g.has_edge(i, v) {
        return Ok(StepOutcome::aborted((u, v), AbortReason::NeighborOverlap));
    }
    let valid_j = rlef_valid_j(g, u, v);
    if valid_j.is_empty() {
        return Ok(StepOutcome::aborted((u, v), AbortReason::NoValidJ));
    }
    let j = valid_j[rng.random_range(0..valid_j.len())];
    Ok(Flip { u, v, i, j }.apply(g))
}

/// Greedy sampling weights `x_e = 2 / (2 + #common neighbors)` for every edge
/// in canonical order. Each is the triangle upper bound on the edge's
/// effective resistance.
pub fn hub_weights(g: &Graph) -> Vec<((usize, usize), f64)> {
    g.edges()
        .map(|(u, v)| {
            (
                (u, v),
                triangle_resistance_bound(g.common_neighbor_count(u, v)),
            )
        })
        .collect()
}

/// Draws index `k` with probability `softmax(tau * x)_k`.
pub fn sample_softmax<R: Rng + ?Sized>(x: &[f64], tau: f64, rng: &mut R) -> usize {
    let top = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = x.iter().map(|&xk| libm::exp(tau * (xk - top))).collect();
    let total: f64 = weights.iter().sum();
    let mut r = rng.random::<f64>() * total;
    for (k, &w) in weights.iter().enumerate() {
        if r < w {
            return k;
        }
        r -= w;
    }
    // Rounding left a sliver past the last bucket.
    weights.iter().rposition(|&w| w > 0.0).unwrap_or(0)
}

/// Uniform choice among the minimizers of `score`.
fn argmin_uniform<R: Rng + ?Sized>(
    candidates: &[usize],
    score: impl Fn(usize) -> i64,
    rng: &mut R,
) -> usize {
    let scores: Vec<i64> = candidates.iter().map(|&c| score(c)).collect();
    let best = *scores.iter().min().expect("nonempty candidate set");
    let ties: Vec<usize> = candidates
        .iter()
        .zip(&scores)
        .filter(|&(_, &s)| s == best)
        .map(|(&c, _)| c)
        .collect();
    ties[rng.random_range(0..ties.len())]
}

/// One greedy random local edge flip with inverse temperature `tau`.
///
/// `i` minimizes `#Δ(i, v) - #Δ(i, u)` over `N(u) \ (N(v) ∪ {v})` and `j`
/// minimizes `#Δ(j, u) - #Δ(j, v)` over `N(v) \ (N(u) ∪ {u})`, which keeps
/// the triangle count from growing where possible. The step aborts when
/// either candidate set is empty.
pub fn grlef_step<R: Rng + ?Sized>(g: &mut Graph, tau: f64, rng: &mut R) -> Result<StepOutcome> {
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(Error::parameter("tau must be a positive finite number"));
    }
    require_edges(g)?;
    let weights = hub_weights(g);
    let x: Vec<f64> = weights.iter().map(|&(_, w)| w).collect();
    let (u, v) = weights[sample_softmax(&x, tau, rng)].0;
    let i_set = exclusive_neighbors(g, u, v);
    let j_set = exclusive_neighbors(g, v, u);
    if i_set.is_empty() || j_set.is_empty() {
        return Ok(StepOutcome::aborted((u, v), AbortReason::SubsetCondition));
    }
    let tri = |a: usize, b: usize| g.common_neighbor_count(a, b) as i64;
    let i = argmin_uniform(&i_set, |i| tri(i, v) - tri(i, u), rng);
    let j = argmin_uniform(&j_set, |j| tri(j, u) - tri(j, v), rng);
    Ok(Flip { u, v, i, j }.apply(g))
}
