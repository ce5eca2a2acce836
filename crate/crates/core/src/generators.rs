//! Deterministic generators for the benchmark graph families.
//!
//! Node layouts are fixed so that traces are reproducible:
//!
//! - dumbbell(c): clique A on `0..c`, clique B on `c..2c`, bridge `(c-1, c)`.
//! - ring_of_cliques(d, m): clique `k` occupies `k(d+1)..(k+1)(d+1)`. Its
//!   first and last nodes lose their mutual edge; the last node of clique `k`
//!   is joined to the first node of clique `k+1 (mod m)`.
//! - path_of_cliques(c, m): clique `k` occupies `kc..(k+1)c`; the last node of
//!   clique `k` is joined to the first node of clique `k+1`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::RngStream;

/// Restarts allowed before random regular generation gives up.
pub const RANDOM_REGULAR_ATTEMPTS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorSpec {
    /// Two cliques of `clique_size` nodes joined by one bridge edge.
    Dumbbell {
        clique_size: usize,
    },
    /// `num_cliques` cliques of `degree + 1` nodes closed into a ring; every
    /// node ends with degree exactly `degree`.
    RingOfCliques {
        degree: usize,
        num_cliques: usize,
    },
    /// `num_cliques` cliques of `clique_size` nodes chained by single edges.
    PathOfCliques {
        clique_size: usize,
        num_cliques: usize,
    },
    Path {
        n: usize,
    },
    Complete {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    /// Connected simple `degree`-regular graph from the pairing model.
    RandomRegular {
        n: usize,
        degree: usize,
        seed: u64,
    },
}

impl GeneratorSpec {
    pub fn family(&self) -> &'static str {
        match self {
            Self::Dumbbell { .. } => "dumbbell",
            Self::RingOfCliques { .. } => "ring-of-cliques",
            Self::PathOfCliques { .. } => "path-of-cliques",
            Self::Path { .. } => "path",
            Self::Complete { .. } => "complete",
            Self::Cycle { .. } => "cycle",
            Self::RandomRegular { .. } => "random-regular",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: &str| Err(Error::parameter(format!("{}: {msg}", self.family())));
        match *self {
            Self::Dumbbell { clique_size: 0 } => fail("clique size must be >= 1"),
            Self::RingOfCliques { degree, .. } if degree < 3 => fail("degree must be >= 3"),
            Self::RingOfCliques { num_cliques, .. } if num_cliques < 2 => {
                fail("need at least 2 cliques")
            }
            Self::PathOfCliques {
                clique_size,
                num_cliques,
            } if clique_size == 0 || num_cliques == 0 => {
                fail("clique size and clique count must be >= 1")
            }
            Self::Path { n } | Self::Complete { n } if n == 0 => fail("n must be >= 1"),
            Self::Cycle { n } if n < 3 => fail("n must be >= 3"),
            Self::RandomRegular { n, degree, .. } => {
                if degree == 0 || degree >= n {
                    fail("need 1 <= degree < n")
                } else if (n * degree) % 2 != 0 {
                    fail("n * degree must be even")
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family())?;
        match *self {
            Self::Dumbbell { clique_size } => write!(f, " clique-size={clique_size}"),
            Self::RingOfCliques {
                degree,
                num_cliques,
            } => {
                write!(f, " degree={degree} num-cliques={num_cliques}")
            }
            Self::PathOfCliques {
                clique_size,
                num_cliques,
            } => {
                write!(f, " clique-size={clique_size} num-cliques={num_cliques}")
            }
            Self::Path { n } | Self::Complete { n } | Self::Cycle { n } => write!(f, " n={n}"),
            Self::RandomRegular { n, degree, seed } => {
                write!(f, " n={n} degree={degree} seed={seed}")
            }
        }
    }
}

pub fn generate(spec: GeneratorSpec) -> Result<Graph> {
    spec.validate()?;
    let g = match spec {
        GeneratorSpec::Dumbbell { clique_size } => dumbbell(clique_size),
        GeneratorSpec::RingOfCliques {
            degree,
            num_cliques,
        } => ring_of_cliques(degree, num_cliques),
        GeneratorSpec::PathOfCliques {
            clique_size,
            num_cliques,
        } => path_of_cliques(clique_size, num_cliques),
        GeneratorSpec::Path { n } => path(n),
        GeneratorSpec::Complete { n } => complete(n),
        GeneratorSpec::Cycle { n } => cycle(n),
        GeneratorSpec::RandomRegular { n, degree, seed } => random_regular(n, degree, seed)?,
    };
    debug_assert!(g.is_connected());
    Ok(g)
}

fn add_clique(g: &mut Graph, start: usize, size: usize) {
    for u in start..start + size {
        for v in u + 1..start + size {
            g.add_edge(u, v).unwrap();
        }
    }
}

fn dumbbell(c: usize) -> Graph {
    let mut g = Graph::new(2 * c);
    add_clique(&mut g, 0, c);
    add_clique(&mut g, c, c);
    g.add_edge(c - 1, c).unwrap();
    g
}

fn ring_of_cliques(d: usize, m: usize) -> Graph {
    let size = d + 1;
    let mut g = Graph::new(m * size);
    for k in 0..m {
        let first = k * size;
        let last = first + d;
        add_clique(&mut g, first, size);
        g.remove_edge(first, last);
    }
    for k in 0..m {
        let last = k * size + d;
        let next_first = ((k + 1) % m) * size;
        g.add_edge(last, next_first).unwrap();
    }
    g
}

fn path_of_cliques(c: usize, m: usize) -> Graph {
    let mut g = Graph::new(m * c);
    for k in 0..m {
        add_clique(&mut g, k * c, c);
    }
    for k in 1..m {
        g.add_edge(k * c - 1, k * c).unwrap();
    }
    g
}

fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
}

fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    add_clique(&mut g, 0, n);
    g
}

fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
}

/// Pairing model with full restart: shuffle `n * d` stubs, pair them in
/// order, and start over on any self-loop, parallel edge, or disconnected
/// result.
fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    let mut rng = RngStream::from_seed(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|u| core::iter::repeat_n(u, d)).collect();
    'attempt: for _ in 0..RANDOM_REGULAR_ATTEMPTS {
        stubs.shuffle(&mut rng);
        let mut g = Graph::new(n);
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || !g.add_edge(u, v)? {
                continue 'attempt;
            }
        }
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::Generation(format!(
        "no simple connected {d}-regular graph on {n} nodes after {RANDOM_REGULAR_ATTEMPTS} attempts"
    )))
}

/// Uniformly random labelled tree on `n` nodes grown by random attachment,
/// plus `extra_edges` distinct non-tree edges chosen uniformly. Used for
/// randomized checks over irregular connected graphs.
pub fn random_connected(n: usize, extra_edges: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::parameter("random connected graph needs n >= 1"));
    }
    let room = n * (n - 1) / 2 - (n - 1);
    if extra_edges > room {
        return Err(Error::parameter(format!(
            "{extra_edges} extra edges requested but only {room} non-tree pairs exist on {n} nodes"
        )));
    }
    let mut rng = RngStream::from_seed(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut g = Graph::new(n);
    for k in 1..n {
        let parent = order[rng.random_range(0..k)];
        g.add_edge(order[k], parent)?;
    }
    let mut added = 0;
    while added < extra_edges {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v && g.add_edge(u, v)? {
            added += 1;
        }
    }
    Ok(g)
}
