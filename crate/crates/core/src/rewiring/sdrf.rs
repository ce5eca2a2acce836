use alloc::vec::Vec;

use rand::Rng;

use super::{canonical, AbortReason, StepOutcome};
use crate::curvature::{Curvature, NodeDistribution};
use crate::error::{Error, Result};
use crate::graph::{DistanceTable, Graph};
use crate::transport::transport_cost;

/// Curvature values closer than this count as tied.
const TIE_TOLERANCE: f64 = 1e-9;

fn pick_tied<R: Rng + ?Sized, T: Copy>(
    scored: &[(T, f64)],
    better: impl Fn(f64, f64) -> bool,
    rng: &mut R,
) -> Option<T> {
    let best = scored
        .iter()
        .map(|&(_, s)| s)
        .reduce(|a, b| if better(b, a) { b } else { a })?;
    let ties: Vec<T> = scored
        .iter()
        .filter(|&&(_, s)| (s - best).abs() <= TIE_TOLERANCE)
        .map(|&(t, _)| t)
        .collect();
    Some(ties[rng.random_range(0..ties.len())])
}

/// Curvature of `(u, v)` once the edge `(a, b)` exists. The walk measures of
/// `u` and `v` do not change; only the ground distances shrink.
fn curvature_with_shortcut(
    g: &Graph,
    table: &DistanceTable,
    (u, v): (usize, usize),
    (a, b): (usize, usize),
) -> Result<f64> {
    let mu = NodeDistribution::random_walk(g, u)?;
    let nu = NodeDistribution::random_walk(g, v)?;
    let (mu, nu) = (mu.support(), nu.support());
    let supply: Vec<f64> = mu.iter().map(|&(_, m)| m).collect();
    let demand: Vec<f64> = nu.iter().map(|&(_, m)| m).collect();
    let w1 = transport_cost(&supply, &demand, |p, q| {
        let (x, y) = (mu[p].0, nu[q].0);
        let via_ab = table
            .get(x, a)
            .saturating_add(1)
            .saturating_add(table.get(b, y));
        let via_ba = table
            .get(x, b)
            .saturating_add(1)
            .saturating_add(table.get(a, y));
        table.get(x, y).min(via_ab).min(via_ba) as f64
    });
    Ok(1.0 - w1)
}

/// One add/remove cycle of the curvature-driven baseline, in the mode that
/// always removes an edge so the edge count stays fixed.
///
/// Add phase: take the edge `(u, v)` of minimum Ollivier-Ricci curvature and
/// add the supporting edge `(i, j)`, `i ∈ N(u) \ {v}`, `j ∈ N(v) \ {u}`, that
/// raises the curvature of `(u, v)` the most. Remove phase: delete the edge
/// of maximum curvature in the augmented graph, other than `(i, j)`. Ties are
/// broken uniformly. When no supporting edge exists the step aborts and
/// removes nothing.
pub fn sdrf_step<R: Rng + ?Sized>(g: &mut Graph, rng: &mut R) -> Result<StepOutcome> {
    if g.edge_count() == 0 {
        return Err(Error::domain("rewiring needs at least one edge"));
    }
    let table = DistanceTable::new(g);
    let ctx = Curvature::with_table(g, table);
    let curvatures = ctx.all_edges()?;
    let (u, v) = pick_tied(&curvatures, |a, b| a < b, rng).expect("graph has edges");

    let mut candidates = Vec::new();
    for &i in g.neighbors(u) {
        if i == v {
            continue;
        }
        for &j in g.neighbors(v) {
            if j == u || j == i || g.has_edge(i, j) {
                continue;
            }
            let improved = curvature_with_shortcut(g, ctx.table(), (u, v), (i, j))?;
            candidates.push((canonical(i, j), improved));
        }
    }
    let Some(added) = pick_tied(&candidates, |a, b| a > b, rng) else {
        return Ok(StepOutcome::aborted((u, v), AbortReason::NoSupportingEdge));
    };

    let table = ctx.table().with_shortcut(added.0, added.1);
    g.add_edge(added.0, added.1)?;
    let ctx = Curvature::with_table(g, table);
    let scored: Vec<((usize, usize), f64)> = ctx
        .all_edges()?
        .into_iter()
        .filter(|&(e, _)| e != added)
        .collect();
    let removed = pick_tied(&scored, |a, b| a > b, rng).expect("graph still has its old edges");
    g.remove_edge(removed.0, removed.1);
    Ok(StepOutcome {
        hub_edge: (u, v),
        abort_reason: None,
        removed_edges: alloc::vec![removed],
        added_edges: alloc::vec![added],
    })
}
