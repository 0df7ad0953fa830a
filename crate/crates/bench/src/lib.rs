//! Fixtures shared by the benchmarks.

use agmod_core::{build_ag, AnnGraph, Factor, Lattice, Limits, Module, Ring};

/// Named modules with lattices of a few dozen submodules.
pub fn fixtures() -> Vec<(&'static str, Module)> {
    let elementary = |p: u64, k: usize| Module::new(Ring::cyclic(p).unwrap(), vec![Factor { d: p, c: 0 }; k]).unwrap();
    vec![
        ("Z210", Module::cyclic(210, 210).unwrap()),
        ("Z360", Module::cyclic(360, 360).unwrap()),
        ("Z2^4", elementary(2, 4)),
        ("Z3^3", elementary(3, 3)),
        ("Z4+Z4", Module::new(Ring::cyclic(4).unwrap(), vec![Factor { d: 4, c: 0 }; 2]).unwrap()),
    ]
}

pub fn ag(module: &Module) -> (Lattice, AnnGraph) {
    let lattice = Lattice::enumerate(module.clone(), &Limits::default()).expect("fixture within limits");
    let graph = build_ag(&lattice);
    (lattice, graph)
}
