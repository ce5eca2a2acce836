//! Effective resistance `R_uv = (e_u - e_v)^T L^+ (e_u - e_v)` with unit edge
//! resistances.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Moore-Penrose pseudoinverse of the Laplacian of one graph snapshot.
///
/// The Laplacian is block diagonal over connected components, so the
/// pseudoinverse is stored per block: for a component with `k` nodes,
/// `L_C^+ = (L_C + J/k)^-1 - J/k`.
#[derive(Debug, Clone)]
pub struct EffectiveResistance {
    component: Vec<usize>,
    local_index: Vec<usize>,
    blocks: Vec<DMatrix<f64>>,
}

impl EffectiveResistance {
    pub fn new(g: &Graph) -> Self {
        let n = g.node_count();
        let (count, component) = g.components();
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
        let mut local_index = vec![0; n];
        for u in 0..n {
            local_index[u] = members[component[u]].len();
            members[component[u]].push(u);
        }
        let blocks = members
            .iter()
            .map(|nodes| {
                let k = nodes.len();
                let shift = 1.0 / k as f64;
                let mut m = DMatrix::from_element(k, k, shift);
                for (a, &u) in nodes.iter().enumerate() {
                    m[(a, a)] += g.degree(u) as f64;
                    for &v in g.neighbors(u) {
                        m[(a, local_index[v])] -= 1.0;
                    }
                }
                let mut inv = m
                    .cholesky()
                    .expect("L + J/k is positive definite on a connected component")
                    .inverse();
                inv.add_scalar_mut(-shift);
                inv
            })
            .collect();
        Self {
            component,
            local_index,
            blocks,
        }
    }

    pub fn node_count(&self) -> usize {
        self.component.len()
    }

    /// `L^+[u, v]`; zero across components.
    pub fn pseudoinverse_entry(&self, u: usize, v: usize) -> f64 {
        if self.component[u] != self.component[v] {
            return 0.0;
        }
        self.blocks[self.component[u]][(self.local_index[u], self.local_index[v])]
    }

    /// Effective resistance between distinct nodes; `f64::INFINITY` when
    /// they lie in different components.
    pub fn resistance(&self, u: usize, v: usize) -> Result<f64> {
        let n = self.node_count();
        for x in [u, v] {
            if x >= n {
                return Err(Error::NodeIndex {
                    node: x,
                    node_count: n,
                });
            }
        }
        if u == v {
            return Err(Error::domain(
                "effective resistance needs two distinct nodes",
            ));
        }
        if self.component[u] != self.component[v] {
            return Ok(f64::INFINITY);
        }
        let r = self.pseudoinverse_entry(u, u) + self.pseudoinverse_entry(v, v)
            - 2.0 * self.pseudoinverse_entry(u, v);
        Ok(r.max(0.0))
    }
}

/// One-off effective resistance; build [`EffectiveResistance`] once when
/// querying many pairs of the same graph.
pub fn effective_resistance(g: &Graph, u: usize, v: usize) -> Result<f64> {
    g.check_node(u)?;
    g.check_node(v)?;
    EffectiveResistance::new(g).resistance(u, v)
}

/// Upper bound `2 / (2 + #common neighbors)` on an edge's effective
/// resistance.
pub fn triangle_resistance_bound(common_neighbors: usize) -> f64 {
    2.0 / (2.0 + common_neighbors as f64)
}
