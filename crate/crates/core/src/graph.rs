//! Simple undirected graphs on the node set `0..n`.
//!
//! Adjacency lists are kept sorted so that "pick the k-th neighbor" is a
//! deterministic function of the graph, which keeps seeded runs reproducible.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A simple undirected graph: no self-loops, no parallel edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Graph with `node_count` isolated nodes.
    pub fn new(node_count: usize) -> Self {
        Self {
            adjacency: vec![Vec::new(); node_count],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::new(node_count);
        for (u, v) in edges {
            if !g.add_edge(u, v)? {
                return Err(Error::parameter(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbors of `u`.
    ///
    /// Panics if `u` is out of range; use [`Graph::check_node`] first for
    /// untrusted indices.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    /// `Some(d)` when every node has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let first = self.adjacency.first()?.len();
        self.adjacency
            .iter()
            .all(|nbrs| nbrs.len() == first)
            .then_some(first)
    }

    pub fn check_node(&self, u: usize) -> Result<()> {
        if u < self.node_count() {
            Ok(())
        } else {
            Err(Error::NodeIndex {
                node: u,
                node_count: self.node_count(),
            })
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.node_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Inserts `(u, v)`. Returns `Ok(false)` if the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u == v {
            return Err(Error::parameter(format!("self-loop at node {u}")));
        }
        match self.adjacency[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adjacency[u].insert(pos, v);
                let back = self.adjacency[v].binary_search(&u).unwrap_err();
                self.adjacency[v].insert(back, u);
                self.edge_count += 1;
                Ok(true)
            }
        }
    }

    /// Removes `(u, v)` if present.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.node_count() || v >= self.node_count() {
            return false;
        }
        match self.adjacency[u].binary_search(&v) {
            Ok(pos) => {
                self.adjacency[u].remove(pos);
                let back = self.adjacency[v].binary_search(&u).unwrap();
                self.adjacency[v].remove(back);
                self.edge_count -= 1;
                true
            }
            Err(_) => false,
        }
    }

    /// Edges as `(u, v)` with `u < v`, in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, nbrs)| {
            let start = nbrs.partition_point(|&v| v <= u);
            nbrs[start..].iter().map(move |&v| (u, v))
        })
    }

    /// `|N(u) ∩ N(v)|` by a merge over the sorted adjacency lists.
    pub(crate) fn common_neighbor_count(&self, u: usize, v: usize) -> usize {
        let (a, b) = (&self.adjacency[u], &self.adjacency[v]);
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    /// True iff a breadth-first search from node 0 reaches every node.
    /// Graphs with zero or one node are connected.
    pub fn is_connected(&self) -> bool {
        if self.node_count() <= 1 {
            return true;
        }
        bfs_distances(self, 0).iter().all(Option::is_some)
    }

    /// Component label per node; labels are `0..k` in order of first node.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let n = self.node_count();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            queue.push_back(start);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adjacency[x] {
                    if label[y] == usize::MAX {
                        label[y] = count;
                        queue.push_back(y);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }
}

/// Hop distances from `source`; `None` marks unreachable nodes.
pub fn bfs_distances(g: &Graph, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.node_count()];
    let mut queue = VecDeque::new();
    dist[source] = Some(0);
    queue.push_back(source);
    while let Some(x) = queue.pop_front() {
        let next = dist[x].unwrap() + 1;
        for &y in g.neighbors(x) {
            if dist[y].is_none() {
                dist[y] = Some(next);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Shortest-path distance `d_G(u, v)`; `None` when `u` and `v` are in
/// different components.
pub fn distance(g: &Graph, u: usize, v: usize) -> Result<Option<usize>> {
    g.check_node(u)?;
    g.check_node(v)?;
    if u == v {
        return Ok(Some(0));
    }
    Ok(bfs_distances(g, u)[v])
}

/// All-pairs hop distances, computed by one BFS per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceTable {
    pub const UNREACHABLE: u32 = u32::MAX;

    pub fn new(g: &Graph) -> Self {
        let n = g.node_count();
        let mut dist = vec![Self::UNREACHABLE; n * n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            let row = &mut dist[s * n..(s + 1) * n];
            row[s] = 0;
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                let next = row[x] + 1;
                for &y in g.neighbors(x) {
                    if row[y] == Self::UNREACHABLE {
                        row[y] = next;
                        queue.push_back(y);
                    }
                }
            }
        }
        Self { n, dist }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Raw distance, [`DistanceTable::UNREACHABLE`] across components.
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    /// Distances after inserting the edge `(a, b)`: every shortest path either
    /// avoids the new edge or crosses it exactly once.
    pub fn with_shortcut(&self, a: usize, b: usize) -> Self {
        let n = self.n;
        let mut dist = self.dist.clone();
        for x in 0..n {
            let xa = self.get(x, a);
            let xb = self.get(x, b);
            for y in 0..n {
                let via_ab = xa.saturating_add(1).saturating_add(self.get(b, y));
                let via_ba = xb.saturating_add(1).saturating_add(self.get(a, y));
                let cell = &mut dist[x * n + y];
                *cell = (*cell).min(via_ab).min(via_ba);
            }
        }
        Self { n, dist }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    #[test]
    fn rejects_self_loops_duplicates_and_bad_indices() {
        assert!(matches!(
            Graph::from_edges(3, [(1, 1)]),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(Error::NodeIndex {
                node: 3,
                node_count: 3
            })
        ));
    }

    #[test]
    fn edges_are_canonical() {
        let g = Graph::from_edges(4, [(3, 1), (2, 0), (0, 1)]).unwrap();
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, [(0, 1), (0, 2), (1, 3)]);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.neighbors(1), &[0, 3]);
    }

    #[test]
    fn connectivity() {
        let two_triangles =
            Graph::from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]).unwrap();
        assert!(!two_triangles.is_connected());
        assert_eq!(two_triangles.components().0, 2);
        assert!(Graph::new(1).is_connected());
        assert!(Graph::new(0).is_connected());
        assert!(!Graph::new(2).is_connected());
        assert!(path(5).is_connected());
    }

    #[test]
    fn distances() {
        let g = path(4);
        assert_eq!(distance(&g, 0, 3), Ok(Some(3)));
        assert_eq!(distance(&g, 2, 2), Ok(Some(0)));
        assert!(matches!(distance(&g, 0, 9), Err(Error::NodeIndex { .. })));
        let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(distance(&split, 0, 3), Ok(None));
        let table = DistanceTable::new(&split);
        assert_eq!(table.get(0, 3), DistanceTable::UNREACHABLE);
        assert_eq!(table.get(3, 2), 1);
    }

    #[test]
    fn shortcut_matches_fresh_bfs() {
        let mut g = path(7);
        let before = DistanceTable::new(&g);
        let patched = before.with_shortcut(1, 5);
        g.add_edge(1, 5).unwrap();
        assert_eq!(patched, DistanceTable::new(&g));
    }

    #[test]
    fn remove_then_add_restores() {
        let mut g = path(4);
        let original = g.clone();
        assert!(g.remove_edge(2, 1));
        assert!(!g.remove_edge(2, 1));
        assert_eq!(g.edge_count(), 2);
        assert!(g.add_edge(1, 2).unwrap());
        assert_eq!(g, original);
    }
}
