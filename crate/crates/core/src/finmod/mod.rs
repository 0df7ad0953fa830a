//! Finite modules over products of cyclic rings and their submodule lattices.

mod elemset;
mod embed;
mod lattice;
mod module;
mod witness;

pub use elemset::ElemSet;
pub use embed::{detect_fxs, EmbeddedModule, FxsWitness};
pub use lattice::{Lattice, Limits, ModuleClass, Submodule, MAX_SUBMODULES_ENV};
pub use module::{Factor, ModElem, Module};
pub use witness::{min_prime_clique_witness, CliqueWitness};
