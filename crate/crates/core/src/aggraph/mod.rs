//! The annihilating-submodule graphs `AG(M)` and `AG(M)*`.

mod dot;
mod invariants;
mod solvers;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::finmod::Lattice;

pub use dot::to_dot;
pub use invariants::{invariants, InvariantReport, Shape};
pub use solvers::{chromatic_number, clique_number, maximum_clique};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GraphKind {
    #[serde(rename = "AG")]
    Ag,
    #[serde(rename = "AG_star")]
    AgStar,
}

impl GraphKind {
    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Ag => "AG",
            GraphKind::AgStar => "AG_star",
        }
    }
}

/// A simple undirected graph whose vertices are submodule ids.
///
/// Vertex positions `0..n` index `vertices` and `adjacency`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnGraph {
    kind: GraphKind,
    vertices: Vec<usize>,
    adjacency: Vec<FixedBitSet>,
}

impl AnnGraph {
    /// A graph on `vertices` with an edge between positions `i != j` whenever
    /// `adjacent(vertices[i], vertices[j])`.
    pub fn from_relation(kind: GraphKind, vertices: Vec<usize>, adjacent: impl Fn(usize, usize) -> bool) -> Self {
        let n = vertices.len();
        let mut adjacency = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            for j in (i + 1)..n {
                if adjacent(vertices[i], vertices[j]) {
                    adjacency[i].insert(j);
                    adjacency[j].insert(i);
                }
            }
        }
        AnnGraph { kind, vertices, adjacency }
    }

    /// A graph on positions `0..n`; loops are ignored.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adjacency = vec![FixedBitSet::with_capacity(n); n];
        for &(a, b) in edges {
            assert!(a < n && b < n, "edge ({a},{b}) out of range for {n} vertices");
            if a != b {
                adjacency[a].insert(b);
                adjacency[b].insert(a);
            }
        }
        AnnGraph { kind: GraphKind::Ag, vertices: (0..n).collect(), adjacency }
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    /// Submodule ids, in lattice order.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn neighbors(&self, i: usize) -> &FixedBitSet {
        &self.adjacency[i]
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].contains(j)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.len()).map(|i| self.degree(i)).sum::<usize>() / 2
    }

    /// Edges as position pairs `(i, j)` with `i < j`, lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len()).flat_map(|i| self.adjacency[i].ones().filter(move |&j| j > i).map(move |j| (i, j))).collect()
    }

    /// Position of a submodule id.
    pub fn position(&self, id: usize) -> Option<usize> {
        self.vertices.binary_search(&id).ok()
    }

    pub fn contains_vertex(&self, id: usize) -> bool {
        self.position(id).is_some()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        match (self.position(a), self.position(b)) {
            (Some(i), Some(j)) => self.adjacent(i, j),
            _ => false,
        }
    }
}

/// `AG(M)`: nonzero `N` with `NK = 0` for some nonzero proper `K` (possibly
/// `K = N`); distinct vertices are adjacent when their product is zero.
pub fn build_ag(lattice: &Lattice) -> AnnGraph {
    let candidates: Vec<usize> = (0..lattice.len()).filter(|&k| k != lattice.zero() && lattice.is_proper(k)).collect();
    let vertices: Vec<usize> = (0..lattice.len())
        .filter(|&n| n != lattice.zero())
        .filter(|&n| candidates.iter().any(|&k| lattice.product_is_zero(n, k)))
        .collect();
    AnnGraph::from_relation(GraphKind::Ag, vertices, |a, b| lattice.product_is_zero(a, b))
}

/// `AG(M)*`: proper `N` with `(N:M) ≠ Ann(M)` and `NK = 0` for some proper
/// `K` with `(K:M) ≠ Ann(M)`.
pub fn build_ag_star(lattice: &Lattice) -> AnnGraph {
    let ann = lattice.annihilator();
    let candidates: Vec<usize> =
        (0..lattice.len()).filter(|&k| lattice.is_proper(k) && lattice.colon(k) != ann).collect();
    let vertices: Vec<usize> =
        candidates.iter().copied().filter(|&n| candidates.iter().any(|&k| lattice.product_is_zero(n, k))).collect();
    AnnGraph::from_relation(GraphKind::AgStar, vertices, |a, b| lattice.product_is_zero(a, b))
}
