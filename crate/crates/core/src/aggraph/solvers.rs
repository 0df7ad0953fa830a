//! Exact clique and chromatic number solvers on bitset adjacency.

use fixedbitset::FixedBitSet;

use super::AnnGraph;

/// A maximum clique, as sorted vertex positions.
pub fn maximum_clique(g: &AnnGraph) -> Vec<usize> {
    let n = g.len();
    let mut best = Vec::new();
    let mut current = Vec::new();
    let mut p = FixedBitSet::with_capacity(n);
    p.insert_range(..);
    bron_kerbosch(g, &mut current, p, FixedBitSet::with_capacity(n), &mut best);
    best.sort_unstable();
    best
}

pub fn clique_number(g: &AnnGraph) -> usize {
    maximum_clique(g).len()
}

fn bron_kerbosch(
    g: &AnnGraph,
    current: &mut Vec<usize>,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    best: &mut Vec<usize>,
) {
    if p.is_clear() {
        if x.is_clear() && current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    if current.len() + p.count_ones(..) <= best.len() {
        return;
    }
    let pivot =
        p.ones().chain(x.ones()).max_by_key(|&u| g.neighbors(u).intersection(&p).count()).expect("p is nonempty");
    let mut candidates = p.clone();
    candidates.difference_with(g.neighbors(pivot));
    for v in candidates.ones().collect::<Vec<_>>() {
        let mut np = p.clone();
        np.intersect_with(g.neighbors(v));
        let mut nx = x.clone();
        nx.intersect_with(g.neighbors(v));
        current.push(v);
        bron_kerbosch(g, current, np, nx, best);
        current.pop();
        p.set(v, false);
        x.insert(v);
    }
}

/// Least `k` admitting a proper `k`-coloring.
pub fn chromatic_number(g: &AnnGraph) -> usize {
    let n = g.len();
    if n == 0 {
        return 0;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let upper = greedy_colors(g, &order);
    let lower = clique_number(g).max(1);
    (lower..upper).find(|&k| colorable(g, &order, k)).unwrap_or(upper)
}

fn greedy_colors(g: &AnnGraph, order: &[usize]) -> usize {
    let mut color = vec![usize::MAX; g.len()];
    let mut used = 0;
    for &v in order {
        let taken: Vec<usize> = g.neighbors(v).ones().map(|u| color[u]).filter(|&c| c != usize::MAX).collect();
        let c = (0..).find(|c| !taken.contains(c)).expect("unbounded");
        color[v] = c;
        used = used.max(c + 1);
    }
    used
}

fn colorable(g: &AnnGraph, order: &[usize], k: usize) -> bool {
    let mut color = vec![usize::MAX; g.len()];
    assign(g, order, 0, k, 0, &mut color)
}

fn assign(g: &AnnGraph, order: &[usize], pos: usize, k: usize, used: usize, color: &mut [usize]) -> bool {
    let Some(&v) = order.get(pos) else {
        return true;
    };
    // a fresh color is interchangeable with any other unused one
    for c in 0..k.min(used + 1) {
        if g.neighbors(v).ones().all(|u| color[u] != c) {
            color[v] = c;
            if assign(g, order, pos + 1, k, used.max(c + 1), color) {
                return true;
            }
            color[v] = usize::MAX;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> AnnGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        AnnGraph::from_edges(n, &edges)
    }

    #[test]
    fn small_graphs() {
        assert_eq!(clique_number(&AnnGraph::from_edges(0, &[])), 0);
        assert_eq!(chromatic_number(&AnnGraph::from_edges(0, &[])), 0);
        assert_eq!(chromatic_number(&AnnGraph::from_edges(3, &[])), 1);
        assert_eq!((clique_number(&cycle(5)), chromatic_number(&cycle(5))), (2, 3));
        assert_eq!((clique_number(&cycle(6)), chromatic_number(&cycle(6))), (2, 2));
    }

    #[test]
    fn chromatic_exceeds_clique_on_the_groetzsch_graph() {
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        for i in 0..5 {
            edges.push((5 + i, (i + 1) % 5));
            edges.push((5 + i, (i + 4) % 5));
            edges.push((5 + i, 10));
        }
        let g = AnnGraph::from_edges(11, &edges);
        assert_eq!(clique_number(&g), 2);
        assert_eq!(chromatic_number(&g), 4);
    }

    #[test]
    fn complete_graph() {
        let edges: Vec<_> = (0..6).flat_map(|i| ((i + 1)..6).map(move |j| (i, j))).collect();
        let g = AnnGraph::from_edges(6, &edges);
        assert_eq!(maximum_clique(&g), vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(chromatic_number(&g), 6);
    }
}
