//! Rewiring algorithms and the trace-recording run driver.
//!
//! Three step kinds are provided:
//!
//! - [`rlef_step`]: random local edge flip. A hub edge `(u, v)` and neighbors
//!   `i` of `u` and `j` of `v` are drawn, then `(i, u), (j, v)` are replaced
//!   by `(i, v), (j, u)`. Degrees, simplicity and connectivity are preserved.
//! - [`grlef_step`]: greedy variant. The hub edge is drawn from a softmax over
//!   `2 / (2 + #common neighbors)` and `i`, `j` are chosen to keep the change
//!   in triangle count as small as possible.
//! - [`sdrf_step`]: curvature-driven baseline. Adds a supporting edge around
//!   the most negatively curved edge, then removes the most positively curved
//!   edge anywhere in the graph. Edge count is preserved, degrees and
//!   connectivity are not.
//!
//! # Draw order
//!
//! Every random choice comes from one [`RngStream`](crate::RngStream), in this
//! order per step:
//!
//! - RLEF: arc index in `0..2m` (uniform edge and orientation, arcs ordered by
//!   source node then by neighbor), index of `i` in `N(u)`, and, if the step
//!   has not aborted, index of `j` in the sorted valid set
//!   `N(v) \ (N(u) ∪ {u})`.
//! - G-RLEF: one `f64` in `[0, 1)` for the hub edge (edges in canonical
//!   order), then a tie-break index for `i` and one for `j`, each drawn even
//!   when there is a single minimizer.
//! - SDRF: tie-break index among minimum-curvature edges, among best
//!   supporting edges, then among maximum-curvature edges.

mod flip;
mod run;
mod sdrf;

use alloc::vec::Vec;

pub use flip::{grlef_step, hub_weights, rlef_step, rlef_valid_j, sample_softmax, Flip};
pub use run::{run, step, Algorithm, RewireTrace, RunConfig, TraceRecord, DEFAULT_TAU};
pub use sdrf::sdrf_step;

pub use crate::rng::RngStream;

/// Why a step left the graph unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbortReason {
    /// RLEF drew `i` equal to `v` or adjacent to `v`.
    NeighborOverlap,
    /// RLEF found no `j` in `N(v) \ (N(u) ∪ {u})`.
    NoValidJ,
    /// G-RLEF hub edge whose endpoint neighborhoods leave no flip candidate.
    SubsetCondition,
    /// SDRF found no non-adjacent pair around the most negatively curved edge.
    NoSupportingEdge,
}

/// Result of one rewiring step. Aborted steps carry no edge changes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepOutcome {
    pub hub_edge: (usize, usize),
    pub abort_reason: Option<AbortReason>,
    pub removed_edges: Vec<(usize, usize)>,
    pub added_edges: Vec<(usize, usize)>,
}

impl StepOutcome {
    pub(crate) fn aborted(hub_edge: (usize, usize), reason: AbortReason) -> Self {
        Self {
            hub_edge,
            abort_reason: Some(reason),
            removed_edges: Vec::new(),
            added_edges: Vec::new(),
        }
    }

    pub fn is_applied(&self) -> bool {
        self.abort_reason.is_none()
    }
}

pub(crate) fn canonical(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}
