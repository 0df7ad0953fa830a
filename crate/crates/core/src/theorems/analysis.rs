use std::cell::OnceCell;

use crate::aggraph::{build_ag, invariants, AnnGraph, InvariantReport};
use crate::error::Result;
use crate::finmod::{detect_fxs, ElemSet, EmbeddedModule, FxsWitness, Lattice, Limits, Module};
use crate::finring::RingElem;
use crate::localization::{
    localization_idempotent, localize, min_prime_complement, mult_closure, regular_elements, LocalizedModule, MultSet,
};

/// Everything the predicates need about one module, computed once.
pub struct Analysis {
    pub lattice: Lattice,
    pub graph: AnnGraph,
    pub report: InvariantReport,
    pub min_primes: Vec<usize>,
    pub cyclic: bool,
    pub ann_nil: bool,
    /// `rad_M(0) = 0`.
    pub reduced: bool,
    limits: Limits,
    splittings: OnceCell<Result<Vec<Splitting>>>,
    fxs: OnceCell<Result<Option<FxsWitness>>>,
    semiprime: OnceCell<bool>,
    localizations: OnceCell<Result<Vec<LocalCase>>>,
}

/// `M = eM ⊕ (1-e)M` with both parts nonzero.
pub struct Splitting {
    pub idem: RingElem,
    pub first: EmbeddedModule,
    pub second: EmbeddedModule,
    pub first_lattice: Lattice,
    pub second_lattice: Lattice,
}

/// `M_S` for one multiplicative set avoiding the zero-divisors on `M`.
pub struct LocalCase {
    pub name: String,
    pub set: MultSet,
    pub localized: LocalizedModule,
    pub lattice: Lattice,
    pub graph: AnnGraph,
    pub report: InvariantReport,
    /// `N ↦ N_S` on lattice ids.
    pub phi: Vec<usize>,
}

impl Analysis {
    pub fn new(module: Module, limits: &Limits) -> Result<Self> {
        let lattice = Lattice::enumerate(module, limits)?;
        let graph = build_ag(&lattice);
        let report = invariants(&graph);
        let min_primes = lattice.min_primes();
        let cyclic = lattice.cyclic_generator().is_some();
        let ring = lattice.module().ring();
        let ann_nil = ring.is_nil_ideal(lattice.annihilator());
        let reduced = lattice.radical(lattice.zero()) == lattice.zero();
        Ok(Analysis {
            lattice,
            graph,
            report,
            min_primes,
            cyclic,
            ann_nil,
            reduced,
            limits: *limits,
            splittings: OnceCell::new(),
            fxs: OnceCell::new(),
            semiprime: OnceCell::new(),
            localizations: OnceCell::new(),
        })
    }

    pub fn module(&self) -> &Module {
        self.lattice.module()
    }

    pub fn has_vertices(&self) -> bool {
        !self.graph.is_empty()
    }

    pub fn triangle_free(&self) -> bool {
        self.report.clique_number < 3
    }

    pub fn acyclic(&self) -> bool {
        self.report.girth.is_none()
    }

    pub fn labels(&self, ids: &[usize]) -> String {
        let labels: Vec<String> = ids.iter().map(|&id| self.lattice.label(id)).collect();
        format!("[{}]", labels.join(", "))
    }

    pub fn id_of(&self, set: &ElemSet) -> usize {
        self.lattice.id_of_submodule(set)
    }

    pub fn semiprime(&self) -> bool {
        *self.semiprime.get_or_init(|| self.lattice.is_semiprime_module())
    }

    pub fn fxs(&self) -> Result<Option<&FxsWitness>> {
        self.fxs
            .get_or_init(|| detect_fxs(self.module(), &self.limits))
            .as_ref()
            .map(Option::as_ref)
            .map_err(Clone::clone)
    }

    /// All splittings by nontrivial idempotents with both parts nonzero.
    pub fn splittings(&self) -> Result<&[Splitting]> {
        self.splittings
            .get_or_init(|| {
                let module = self.module();
                let ring = module.ring();
                let one = ring.one();
                let mut out = Vec::new();
                for e in ring.idempotents() {
                    if e.is_zero() || e == one {
                        continue;
                    }
                    let (first, second) = module.decompose_by_idempotent(&e)?;
                    if first.card() == 1 || second.card() == 1 {
                        continue;
                    }
                    let first_lattice = Lattice::enumerate(first.module().clone(), &self.limits)?;
                    let second_lattice = Lattice::enumerate(second.module().clone(), &self.limits)?;
                    out.push(Splitting { idem: e, first, second, first_lattice, second_lattice });
                }
                Ok(out)
            })
            .as_deref()
            .map_err(Clone::clone)
    }

    /// `T = R \ Z(M)`, the minimal-prime complement when it avoids `Z(M)`,
    /// and the sets generated by a single non-zero-divisor (one per distinct
    /// localization idempotent).
    pub fn localizations(&self) -> Result<&[LocalCase]> {
        self.localizations
            .get_or_init(|| {
                let module = self.module();
                let ring = module.ring();
                let regular = regular_elements(module)?;
                let mut sets = vec![("T".to_string(), regular.clone())];
                let complement = min_prime_complement(&self.lattice)?;
                if complement.elements().iter().all(|s| module.acts_injectively(s)) {
                    sets.push(("min_prime_complement".to_string(), complement));
                }
                let mut idems: Vec<RingElem> = sets.iter().map(|(_, s)| localization_idempotent(s)).collect();
                for t in regular.elements() {
                    let set = mult_closure(ring, std::slice::from_ref(t))?;
                    let e = localization_idempotent(&set);
                    if !idems.contains(&e) {
                        idems.push(e);
                        sets.push((format!("⟨{t}⟩"), set));
                    }
                }
                sets.into_iter().map(|(name, set)| self.local_case(name, set)).collect()
            })
            .as_deref()
            .map_err(Clone::clone)
    }

    fn local_case(&self, name: String, set: MultSet) -> Result<LocalCase> {
        let localized = localize(self.module(), &set)?;
        let lattice = Lattice::enumerate(localized.image.module().clone(), &self.limits)?;
        let graph = build_ag(&lattice);
        let report = invariants(&graph);
        let phi =
            self.lattice.iter().map(|sub| lattice.id_of_submodule(&localized.localize_set(sub.elements()))).collect();
        Ok(LocalCase { name, set, localized, lattice, graph, report, phi })
    }
}
