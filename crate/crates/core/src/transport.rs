//! Exact discrete optimal transport.
//!
//! The transportation problem is solved as a min-cost flow with successive
//! shortest augmenting paths: Dijkstra on reduced costs with node potentials,
//! one augmentation per round. Arcs between supply and demand nodes are
//! uncapacitated, so every round exhausts a supply, a demand, or the flow on
//! one reverse arc, and the final flow is an optimal vertex of the transport
//! polytope.

use alloc::vec;
use alloc::vec::Vec;

/// Masses below this are treated as exhausted.
pub const MASS_EPS: f64 = 1e-12;

/// Minimum of `sum pi(i, j) * cost(i, j)` over couplings `pi` with row sums
/// `supply` and column sums `demand`. Both marginals must carry the same
/// total mass; costs must be nonnegative and finite.
pub fn transport_cost(supply: &[f64], demand: &[f64], cost: impl Fn(usize, usize) -> f64) -> f64 {
    let s = supply.len();
    let t = demand.len();
    if s == 0 || t == 0 {
        return 0.0;
    }
    let c: Vec<f64> = (0..s * t).map(|k| cost(k / t, k % t)).collect();
    let mut flow = vec![0.0f64; s * t];
    let mut left = supply.to_vec();
    let mut need = demand.to_vec();

    // Nodes: sources 0..s, sinks s..s+t, super sink s+t. The super source is
    // implicit: every source with remaining supply starts at distance 0
    // relative to its potential.
    let nodes = s + t + 1;
    let sink = s + t;
    let mut potential = vec![0.0f64; nodes];
    let mut dist = vec![f64::INFINITY; nodes];
    let mut prev = vec![usize::MAX; nodes];
    let mut done = vec![false; nodes];

    loop {
        let active: Vec<usize> = (0..s).filter(|&i| left[i] > MASS_EPS).collect();
        if active.is_empty() || need.iter().all(|&m| m <= MASS_EPS) {
            break;
        }
        dist.fill(f64::INFINITY);
        prev.fill(usize::MAX);
        done.fill(false);
        for &i in &active {
            dist[i] = -potential[i];
        }
        // Dense Dijkstra; graph has at most ~100 nodes.
        loop {
            let mut x = usize::MAX;
            let mut best = f64::INFINITY;
            for y in 0..nodes {
                if !done[y] && dist[y] < best {
                    best = dist[y];
                    x = y;
                }
            }
            if x == usize::MAX {
                break;
            }
            done[x] = true;
            if x == sink {
                break;
            }
            let relax = |y: usize, arc_cost: f64, dist: &mut [f64], prev: &mut [usize]| {
                let reduced = (arc_cost + potential[x] - potential[y]).max(0.0);
                let cand = dist[x] + reduced;
                if cand < dist[y] {
                    dist[y] = cand;
                    prev[y] = x;
                }
            };
            if x < s {
                for j in 0..t {
                    relax(s + j, c[x * t + j], &mut dist, &mut prev);
                }
            } else {
                let j = x - s;
                for i in 0..s {
                    if flow[i * t + j] > MASS_EPS {
                        relax(i, -c[i * t + j], &mut dist, &mut prev);
                    }
                }
                if need[j] > MASS_EPS {
                    relax(sink, 0.0, &mut dist, &mut prev);
                }
            }
        }
        if !dist[sink].is_finite() {
            break;
        }
        // Capping at the sink distance keeps every reduced cost nonnegative
        // for nodes the search did not finalize.
        let reach = dist[sink];
        for y in 0..nodes {
            potential[y] += dist[y].min(reach);
        }

        // Walk back from the super sink to find the bottleneck.
        let last_sink = prev[sink];
        let mut amount = need[last_sink - s];
        let mut y = last_sink;
        while prev[y] != usize::MAX {
            let x = prev[y];
            if x >= s {
                // Reverse arc sink x -> source y cancels flow on (y, x).
                amount = amount.min(flow[y * t + (x - s)]);
            }
            y = x;
        }
        let first_source = y;
        amount = amount.min(left[first_source]);

        left[first_source] -= amount;
        need[last_sink - s] -= amount;
        let mut y = last_sink;
        while prev[y] != usize::MAX {
            let x = prev[y];
            if x < s {
                flow[x * t + (y - s)] += amount;
            } else {
                let cell = &mut flow[y * t + (x - s)];
                *cell -= amount;
                if *cell < MASS_EPS {
                    *cell = 0.0;
                }
            }
            y = x;
        }
    }

    flow.iter().zip(&c).map(|(f, c)| f * c).sum()
}
