use std::collections::VecDeque;

use serde::{Serialize, Serializer};

use super::solvers::{chromatic_number, maximum_clique};
use super::AnnGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    Empty,
    Star,
    Path(usize),
    Tree,
    Complete,
    Regular,
    CyclePresent,
}

impl std::fmt::Display for Shape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Shape::Empty => f.write_str("empty"),
            Shape::Star => f.write_str("star"),
            Shape::Path(n) => write!(f, "path_{n}"),
            Shape::Tree => f.write_str("tree"),
            Shape::Complete => f.write_str("complete"),
            Shape::Regular => f.write_str("regular"),
            Shape::CyclePresent => f.write_str("cycle_present"),
        }
    }
}

impl Serialize for Shape {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub vertices: usize,
    pub edges: usize,
    pub girth: Option<usize>,
    pub diameter: Option<usize>,
    pub connected: bool,
    pub bipartite: bool,
    pub clique_number: usize,
    pub chromatic_number: usize,
    /// Ascending.
    pub degree_sequence: Vec<usize>,
    pub shape: Vec<Shape>,
    /// Vertex positions of one maximum clique.
    #[serde(skip)]
    pub max_clique: Vec<usize>,
}

impl InvariantReport {
    pub fn has_shape(&self, shape: Shape) -> bool {
        self.shape.contains(&shape)
    }

    pub fn is_tree(&self) -> bool {
        self.has_shape(Shape::Tree)
    }

    pub fn is_star(&self) -> bool {
        self.has_shape(Shape::Star)
    }

    pub fn is_complete(&self) -> bool {
        self.has_shape(Shape::Complete)
    }

    pub fn is_path(&self, n: usize) -> bool {
        self.has_shape(Shape::Path(n))
    }
}

pub fn invariants(g: &AnnGraph) -> InvariantReport {
    let n = g.len();
    let edges = g.edge_count();
    let mut degree_sequence: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    degree_sequence.sort_unstable();
    let distances: Vec<Vec<Option<usize>>> = (0..n).map(|v| bfs(g, v)).collect();
    let connected = n > 0 && distances[0].iter().all(Option::is_some);
    let diameter =
        if connected && n >= 2 { distances.iter().flatten().map(|d| d.expect("connected")).max() } else { None };
    let girth = girth(g);
    let max_clique = maximum_clique(g);

    let mut shape = Vec::new();
    if n == 0 {
        shape.push(Shape::Empty);
    } else {
        let tree = connected && edges == n - 1;
        let max_degree = *degree_sequence.last().expect("nonempty");
        if tree && (n <= 2 || max_degree == n - 1) {
            shape.push(Shape::Star);
        }
        if tree && max_degree <= 2 {
            shape.push(Shape::Path(n));
        }
        if tree {
            shape.push(Shape::Tree);
        }
        if edges == n * (n - 1) / 2 {
            shape.push(Shape::Complete);
        }
        if degree_sequence[0] == max_degree {
            shape.push(Shape::Regular);
        }
        if girth.is_some() {
            shape.push(Shape::CyclePresent);
        }
    }

    InvariantReport {
        vertices: n,
        edges,
        girth,
        diameter,
        connected,
        bipartite: is_bipartite(g),
        clique_number: max_clique.len(),
        chromatic_number: chromatic_number(g),
        degree_sequence,
        shape,
        max_clique,
    }
}

fn bfs(g: &AnnGraph, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.len()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued vertices are reached");
        for w in g.neighbors(u).ones() {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Shortest cycle length: the minimum over BFS roots of
/// `dist(u) + dist(w) + 1` across non-tree edges `uw`.
fn girth(g: &AnnGraph) -> Option<usize> {
    let n = g.len();
    let mut best: Option<usize> = None;
    for root in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            if best.is_some_and(|b| 2 * dist[u] + 1 >= b) {
                break;
            }
            for w in g.neighbors(u).ones() {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

fn is_bipartite(g: &AnnGraph) -> bool {
    let n = g.len();
    let mut side = vec![None; n];
    for start in 0..n {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let su = side[u].expect("queued vertices are colored");
            for w in g.neighbors(u).ones() {
                match side[w] {
                    None => {
                        side[w] = Some(!su);
                        queue.push_back(w);
                    }
                    Some(sw) if sw == su => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}
