use std::fmt::Write;

use super::AnnGraph;
use crate::finmod::Lattice;

/// Graphviz text with vertices ordered by their element sets and labelled by
/// minimal generators.
pub fn to_dot(g: &AnnGraph, lattice: &Lattice) -> String {
    let mut order: Vec<usize> = (0..g.len()).collect();
    order.sort_by(|&a, &b| lattice.get(g.vertices()[a]).elements().cmp(lattice.get(g.vertices()[b]).elements()));
    let mut node = vec![0; g.len()];
    for (k, &pos) in order.iter().enumerate() {
        node[pos] = k;
    }
    let mut out = format!("graph {} {{\n", g.kind().name());
    for &pos in &order {
        let label = lattice.label(g.vertices()[pos]).replace('"', "\\\"");
        writeln!(out, "  n{} [label=\"{label}\"];", node[pos]).expect("write to string");
    }
    let mut edges: Vec<(usize, usize)> =
        g.edges().into_iter().map(|(i, j)| (node[i].min(node[j]), node[i].max(node[j]))).collect();
    edges.sort_unstable();
    for (a, b) in edges {
        writeln!(out, "  n{a} -- n{b};").expect("write to string");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aggraph::build_ag;
    use crate::finmod::{Limits, Module};

    fn dot(n: u64) -> String {
        let lat = Lattice::enumerate(Module::cyclic(n, n).unwrap(), &Limits::default()).unwrap();
        to_dot(&build_ag(&lat), &lat)
    }

    #[test]
    fn dot_examples() {
        assert_eq!(dot(6), "graph AG {\n  n0 [label=\"⟨2⟩\"];\n  n1 [label=\"⟨3⟩\"];\n  n0 -- n1;\n}\n");
        assert_eq!(dot(7), "graph AG {\n}\n");
        assert_eq!(
            dot(12),
            "graph AG {\n  n0 [label=\"⟨2⟩\"];\n  n1 [label=\"⟨3⟩\"];\n  n2 [label=\"⟨4⟩\"];\n  n3 [label=\"⟨6⟩\"];\n  n0 -- n3;\n  n1 -- n2;\n  n2 -- n3;\n}\n"
        );
    }
}
