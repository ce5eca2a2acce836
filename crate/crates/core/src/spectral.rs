//! Spectral gap, Cheeger constant, and triangle statistics.

use alloc::format;
use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest graph accepted by [`cheeger_exact`].
pub const CHEEGER_EXACT_MAX_NODES: usize = 20;

/// Convention used for [`SpectrumReport::normalized_gap`] and trace records.
pub const NORMALIZATION: &str =
    "1 - mu2/d for d-regular graphs; otherwise lambda2 of the random-walk normalized Laplacian";

/// How the normalized gap of a report was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// `1 - mu_2 / d` from the adjacency spectrum.
    RegularAdjacency,
    /// Second-smallest eigenvalue of `I - D^-1 A`.
    RandomWalkLaplacian,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    /// Adjacency eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
    /// `mu_1 - mu_2`.
    pub gap: f64,
    pub normalized_gap: f64,
    pub normalization: Normalization,
    /// `max(|mu_2|, |mu_n|)`.
    pub mu_abs: f64,
    pub regular_degree: Option<usize>,
}

impl SpectrumReport {
    /// Whether the graph is an `(n, d, alpha)`-spectral-expander, i.e.
    /// `mu(A) / d <= alpha`. `None` for irregular graphs.
    pub fn is_spectral_expander(&self, alpha: f64) -> Option<bool> {
        let d = self.regular_degree? as f64;
        Some(self.mu_abs / d <= alpha)
    }
}

pub(crate) fn adjacency_matrix(g: &Graph) -> DMatrix<f64> {
    let n = g.node_count();
    let mut a = DMatrix::zeros(n, n);
    for (u, v) in g.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    a
}

fn descending_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    let mut values: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    values
}

fn require_connected(g: &Graph) -> Result<()> {
    if g.node_count() < 2 {
        return Err(Error::domain("spectral metrics need at least 2 nodes"));
    }
    if !g.is_connected() {
        return Err(Error::domain(
            "graph is disconnected; normalized gap would be 0",
        ));
    }
    Ok(())
}

/// Full adjacency spectrum plus the normalized gap.
pub fn spectrum(g: &Graph) -> Result<SpectrumReport> {
    require_connected(g)?;
    let eigenvalues = descending_eigenvalues(adjacency_matrix(g));
    let n = eigenvalues.len();
    let gap = eigenvalues[0] - eigenvalues[1];
    let mu_abs = libm::fabs(eigenvalues[1]).max(libm::fabs(eigenvalues[n - 1]));
    let regular_degree = g.regular_degree();
    let (normalized_gap, normalization) = match regular_degree {
        Some(d) => (
            1.0 - eigenvalues[1] / d as f64,
            Normalization::RegularAdjacency,
        ),
        None => (random_walk_gap(g), Normalization::RandomWalkLaplacian),
    };
    Ok(SpectrumReport {
        eigenvalues,
        gap,
        normalized_gap,
        normalization,
        mu_abs,
        regular_degree,
    })
}

/// `lambda_2` of `I - D^-1/2 A D^-1/2`, which shares its spectrum with
/// `I - D^-1 A`. For a d-regular graph this is `1 - mu_2 / d`.
fn random_walk_gap(g: &Graph) -> f64 {
    let n = g.node_count();
    let inv_sqrt: Vec<f64> = (0..n)
        .map(|u| 1.0 / libm::sqrt(g.degree(u) as f64))
        .collect();
    let mut m = DMatrix::zeros(n, n);
    for (u, v) in g.edges() {
        let w = inv_sqrt[u] * inv_sqrt[v];
        m[(u, v)] = w;
        m[(v, u)] = w;
    }
    1.0 - descending_eigenvalues(m)[1]
}

/// Normalized spectral gap under [`NORMALIZATION`].
pub fn normalized_gap(g: &Graph) -> Result<f64> {
    require_connected(g)?;
    Ok(match g.regular_degree() {
        Some(d) => 1.0 - descending_eigenvalues(adjacency_matrix(g))[1] / d as f64,
        None => random_walk_gap(g),
    })
}

/// A minimizing cut for the Cheeger constant: `boundary / size` with the
/// witness set `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheegerCut {
    pub boundary: usize,
    pub size: usize,
    pub witness: Vec<usize>,
}

impl CheegerCut {
    pub fn value(&self) -> f64 {
        self.boundary as f64 / self.size as f64
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CheegerReport {
    pub exact: Option<CheegerCut>,
    /// `(d - mu_2) / 2`.
    pub spectral_lower: Option<f64>,
    /// `sqrt(2 d (d - mu_2))`.
    pub spectral_upper: Option<f64>,
}

/// Exact Cheeger constant `min |∂S| / |S|` over `|S| <= n/2`, by exhaustive
/// enumeration of node subsets.
pub fn cheeger_exact(g: &Graph) -> Result<CheegerReport> {
    let n = g.node_count();
    if n > CHEEGER_EXACT_MAX_NODES {
        return Err(Error::capacity(format!(
            "exact Cheeger constant enumerates subsets and supports at most \
             {CHEEGER_EXACT_MAX_NODES} nodes (got {n}); use cheeger_bounds instead"
        )));
    }
    require_connected(g)?;
    let adj: Vec<u32> = (0..n)
        .map(|u| g.neighbors(u).iter().fold(0u32, |m, &v| m | (1 << v)))
        .collect();
    let half = n / 2;
    // Best ratio so far as (boundary, size); compared by cross-multiplication.
    let mut best: Option<(usize, usize, u32)> = None;
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size > half {
            continue;
        }
        let mut boundary = 0usize;
        let mut bits = mask;
        let mut pruned = false;
        while bits != 0 {
            let u = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            boundary += (adj[u] & !mask).count_ones() as usize;
            if let Some((b, s, _)) = best {
                if boundary * s >= b * size {
                    pruned = true;
                    break;
                }
            }
        }
        if !pruned {
            best = Some((boundary, size, mask));
        }
    }
    let (boundary, size, mask) = best.expect("n >= 2 has a nonempty subset of size <= n/2");
    let witness = (0..n).filter(|&u| mask & (1 << u) != 0).collect();
    Ok(CheegerReport {
        exact: Some(CheegerCut {
            boundary,
            size,
            witness,
        }),
        ..CheegerReport::default()
    })
}

/// Spectral sandwich `(d - mu_2)/2 <= h(G) <= sqrt(2 d (d - mu_2))` for a
/// connected d-regular graph.
pub fn cheeger_bounds(g: &Graph) -> Result<CheegerReport> {
    require_connected(g)?;
    let d = g
        .regular_degree()
        .ok_or_else(|| Error::domain("Cheeger spectral bounds require a regular graph"))?
        as f64;
    let mu2 = descending_eigenvalues(adjacency_matrix(g))[1];
    let gap = d - mu2;
    Ok(CheegerReport {
        exact: None,
        spectral_lower: Some(gap / 2.0),
        spectral_upper: Some(libm::sqrt(2.0 * d * gap.max(0.0))),
    })
}

/// `|N(u) ∩ N(v)|`, the number of triangles through `(u, v)` when it is an
/// edge.
pub fn common_neighbors(g: &Graph, u: usize, v: usize) -> Result<usize> {
    g.check_node(u)?;
    g.check_node(v)?;
    if u == v {
        return Err(Error::domain("common neighbors need two distinct nodes"));
    }
    Ok(g.common_neighbor_count(u, v))
}

/// Number of triangles, `Trace(A^3) / 6`, counted as one third of the
/// per-edge common-neighbor sums.
pub fn triangle_count(g: &Graph) -> usize {
    let per_edge: usize = g.edges().map(|(u, v)| g.common_neighbor_count(u, v)).sum();
    debug_assert_eq!(per_edge % 3, 0);
    per_edge / 3
}
