//! Annihilating-submodule graphs of finite modules over products of cyclic rings.

pub mod aggraph;
mod arith;
pub mod error;
pub mod finmod;
pub mod finring;
pub mod localization;
pub mod theorems;

pub use aggraph::{build_ag, build_ag_star, invariants, to_dot, AnnGraph, GraphKind, InvariantReport, Shape};
pub use error::{Error, Result};
pub use finmod::{
    detect_fxs, min_prime_clique_witness, CliqueWitness, ElemSet, EmbeddedModule, Factor, FxsWitness, Lattice, Limits,
    ModElem, Module, ModuleClass, Submodule, MAX_SUBMODULES_ENV,
};
pub use finring::{ArithOp, Ideal, Ring, RingElem};
pub use localization::{localize, mult_closure, LocalizedModule, MultSet};
pub use theorems::{generate_corpus, run_suite, CorpusInstance, CorpusSpec, PredicateResult, Status, SuiteReport};
