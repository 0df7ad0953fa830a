use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::{ElemSet, Module};
use crate::arith::divisors;
use crate::error::{Error, Result};
use crate::finring::Ideal;

/// Environment variable overriding [`Limits::max_submodules`].
pub const MAX_SUBMODULES_ENV: &str = "AGMOD_MAX_SUBMODULES";

/// Caps on lattice enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_module_card: usize,
    pub max_submodules: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_module_card: 512, max_submodules: 4096 }
    }
}

impl Limits {
    /// Defaults, with the submodule cap taken from `AGMOD_MAX_SUBMODULES` when set.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(cap) = std::env::var(MAX_SUBMODULES_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            limits.max_submodules = cap;
        }
        limits
    }
}

/// A submodule with its canonical element set and a generator list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submodule {
    elements: ElemSet,
    gens: Vec<usize>,
    id: usize,
}

impl Submodule {
    pub fn elements(&self) -> &ElemSet {
        &self.elements
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Structural labels; several may apply at once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleClass {
    Simple,
    UniqueNontrivialSubmodule,
    PrimeModule,
    Other,
}

/// Every submodule of a module, sorted by `(size, canonical encoding)`.
#[derive(Debug)]
pub struct Lattice {
    module: Module,
    subs: Vec<Submodule>,
    index: HashMap<ElemSet, usize>,
    below: Vec<FixedBitSet>,
    colons: Vec<Ideal>,
    annihilator: Ideal,
    cyclic_of: Vec<usize>,
    primes: OnceLock<Vec<usize>>,
}

impl Lattice {
    /// Breadth-first closure from `{0}`: extend each known submodule by one
    /// cyclic submodule it does not contain, re-close, dedupe until fixpoint.
    pub fn enumerate(module: Module, limits: &Limits) -> Result<Self> {
        if module.card() > limits.max_module_card {
            return Err(Error::Resource {
                what: format!("module cardinality {}", module.card()),
                cap: limits.max_module_card,
            });
        }
        let mut cyclic_sets: Vec<ElemSet> = Vec::new();
        let mut cyclic_gen: Vec<usize> = Vec::new();
        let mut cyclic_lookup: HashMap<ElemSet, usize> = HashMap::new();
        let mut elem_cyclic = Vec::with_capacity(module.card());
        for m in 0..module.card() {
            let c = module.generate(&[m]);
            let k = *cyclic_lookup.entry(c.clone()).or_insert_with(|| {
                cyclic_sets.push(c);
                cyclic_gen.push(m);
                cyclic_sets.len() - 1
            });
            elem_cyclic.push(k);
        }

        let mut seen: HashSet<ElemSet> = HashSet::new();
        let mut order: Vec<ElemSet> = Vec::new();
        let zero = module.zero_set();
        seen.insert(zero.clone());
        order.push(zero);
        let mut head = 0;
        while head < order.len() {
            let current = order[head].clone();
            head += 1;
            for (c, &g) in cyclic_sets.iter().zip(&cyclic_gen) {
                if c.is_subset(&current) {
                    continue;
                }
                let next = module.close_from(current.clone(), &[g]);
                if seen.insert(next.clone()) {
                    order.push(next);
                    if order.len() > limits.max_submodules {
                        return Err(Error::Resource {
                            what: format!("submodule count of {module}"),
                            cap: limits.max_submodules,
                        });
                    }
                }
            }
        }

        order.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let index: HashMap<ElemSet, usize> = order.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let cyclic_of: Vec<usize> = elem_cyclic.iter().map(|&k| index[&cyclic_sets[k]]).collect();

        let subs: Vec<Submodule> = order
            .into_iter()
            .enumerate()
            .map(|(id, elements)| {
                let gens = if elements.len() == 1 {
                    Vec::new()
                } else {
                    match elements.iter().find(|&m| cyclic_of[m] == id) {
                        Some(m) => vec![m],
                        None => module.greedy_generators(&elements),
                    }
                };
                Submodule { elements, gens, id }
            })
            .collect();

        let n = subs.len();
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for (i, big) in subs.iter().enumerate() {
            for (j, small) in subs.iter().enumerate().take(i + 1) {
                if small.len() <= big.len() && small.elements.is_subset(&big.elements) {
                    below[i].insert(j);
                }
            }
        }
        let colons = subs.iter().map(|s| module.colon(&s.elements)).collect();
        let annihilator = module.annihilator();
        Ok(Lattice { module, subs, index, below, colons, annihilator, cyclic_of, primes: OnceLock::new() })
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subs.is_empty()
    }

    pub fn get(&self, id: usize) -> &Submodule {
        &self.subs[id]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Submodule> {
        self.subs.iter()
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.subs.len() - 1
    }

    pub fn is_zero_module(&self) -> bool {
        self.subs.len() == 1
    }

    pub fn id_of(&self, set: &ElemSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    /// Id of a set that is known to be a submodule.
    pub fn id_of_submodule(&self, set: &ElemSet) -> usize {
        self.id_of(set).expect("every submodule is enumerated")
    }

    /// Id of the cyclic submodule `Rm`.
    pub fn cyclic_submodule(&self, m: usize) -> usize {
        self.cyclic_of[m]
    }

    pub fn label(&self, id: usize) -> String {
        self.module.label(&self.subs[id].gens)
    }

    /// `a ⊆ b`.
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    pub fn contained_in(&self, id: usize) -> impl Iterator<Item = usize> + '_ {
        self.below[id].ones()
    }

    pub fn colon(&self, id: usize) -> &Ideal {
        &self.colons[id]
    }

    pub fn annihilator(&self) -> &Ideal {
        &self.annihilator
    }

    pub fn is_proper(&self, id: usize) -> bool {
        id != self.top()
    }

    pub fn sum(&self, a: usize, b: usize) -> usize {
        self.id_of_submodule(&self.module.close_from(self.subs[a].elements.clone(), &self.subs[b].gens))
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.id_of_submodule(&self.subs[a].elements.intersection(&self.subs[b].elements))
    }

    /// `I K` as a lattice id.
    pub fn ideal_times(&self, ideal: &Ideal, k: usize) -> usize {
        self.id_of_submodule(&self.module.ideal_times(ideal, &self.subs[k].gens))
    }

    /// `I M` as a lattice id.
    pub fn ideal_action(&self, ideal: &Ideal) -> usize {
        self.id_of_submodule(&self.module.ideal_action(ideal))
    }

    /// The product `N K = (N:M)(K:M)M`.
    pub fn product(&self, a: usize, b: usize) -> usize {
        let ideal = self.module.ring().ideal_product(&self.colons[a], &self.colons[b]);
        self.ideal_action(&ideal)
    }

    /// `NK = 0`, decided by `(N:M)(K:M) ⊆ Ann(M)` (an ideal kills `M` exactly
    /// when it lies in the annihilator).
    pub fn product_is_zero(&self, a: usize, b: usize) -> bool {
        self.module.ring().ideal_product(&self.colons[a], &self.colons[b]).is_subset_of(&self.annihilator)
    }

    /// Ids of all prime submodules.
    pub fn primes(&self) -> &[usize] {
        self.primes.get_or_init(|| {
            (0..self.len()).filter(|&id| self.module.is_prime_submodule(&self.subs[id].elements)).collect()
        })
    }

    pub fn is_prime(&self, id: usize) -> bool {
        self.primes().binary_search(&id).is_ok()
    }

    /// `Min(M)`: inclusion-minimal primes.
    pub fn min_primes(&self) -> Vec<usize> {
        let primes = self.primes();
        primes.iter().copied().filter(|&p| primes.iter().all(|&q| q == p || !self.le(q, p))).collect()
    }

    /// `rad(N)`: intersection of the primes containing `N`, or `M` if none does.
    pub fn radical(&self, id: usize) -> usize {
        let mut acc: Option<ElemSet> = None;
        for &p in self.primes() {
            if self.le(id, p) {
                let set = &self.subs[p].elements;
                acc = Some(match acc {
                    None => set.clone(),
                    Some(a) => a.intersection(set),
                });
            }
        }
        match acc {
            None => self.top(),
            Some(set) => self.id_of_submodule(&set),
        }
    }

    /// Intersection of an arbitrary nonempty family of submodules.
    pub fn meet_all(&self, ids: &[usize]) -> usize {
        let mut iter = ids.iter();
        let first = match iter.next() {
            None => return self.top(),
            Some(&f) => self.subs[f].elements.clone(),
        };
        let set = iter.fold(first, |acc, &i| acc.intersection(&self.subs[i].elements));
        self.id_of_submodule(&set)
    }

    /// Ideals of `R` up to `Ann(M)`: divisor tuples of the component exponents.
    /// `I K` depends on `I` only through `I + Ann(M)`, so these cover every case.
    pub fn effective_ideals(&self) -> Vec<Ideal> {
        let exps = self.module.component_exponents();
        let mut out: Vec<Vec<u64>> = vec![Vec::new()];
        for &l in &exps {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    divisors(l).into_iter().map(move |d| {
                        let mut next = prefix.clone();
                        next.push(d);
                        next
                    })
                })
                .collect();
        }
        out.into_iter().map(|d| self.module.ring().ideal(d).expect("divisors of L_i divide n_i")).collect()
    }

    /// `N < M` with `I²K ⊆ N ⟹ IK ⊆ N` for every ideal `I` and submodule `K`.
    pub fn is_semiprime_submodule(&self, id: usize) -> bool {
        if !self.is_proper(id) {
            return false;
        }
        let ring = self.module.ring();
        for ideal in self.effective_ideals() {
            let square = ring.ideal_product(&ideal, &ideal);
            if square.sum(&self.annihilator) == ideal.sum(&self.annihilator) {
                continue;
            }
            for k in 0..self.len() {
                if self.le(self.ideal_times(&square, k), id) && !self.le(self.ideal_times(&ideal, k), id) {
                    return false;
                }
            }
        }
        true
    }

    /// `(0)` is a semiprime submodule.
    pub fn is_semiprime_module(&self) -> bool {
        self.is_semiprime_submodule(self.zero())
    }

    /// Atoms: nonzero submodules whose only proper submodule is `0`.
    pub fn minimal_submodules(&self) -> Vec<usize> {
        (1..self.len()).filter(|&i| self.below[i].count_ones(..) == 2).collect()
    }

    /// Least `m` with `Rm = M`.
    pub fn cyclic_generator(&self) -> Option<usize> {
        let top = self.top();
        (0..self.module.card()).find(|&m| self.cyclic_of[m] == top)
    }

    pub fn classify(&self) -> Vec<ModuleClass> {
        let mut out = Vec::new();
        if self.len() == 2 {
            out.push(ModuleClass::Simple);
        }
        if self.len() == 3 {
            out.push(ModuleClass::UniqueNontrivialSubmodule);
        }
        if !self.is_zero_module() && self.is_prime(self.zero()) {
            out.push(ModuleClass::PrimeModule);
        }
        if out.is_empty() {
            out.push(ModuleClass::Other);
        }
        out
    }

    pub fn is_simple(&self) -> bool {
        self.len() == 2
    }

    pub fn has_unique_nontrivial_submodule(&self) -> bool {
        self.len() == 3
    }

    pub fn is_prime_module(&self) -> bool {
        !self.is_zero_module() && self.is_prime(self.zero())
    }

    /// Pairwise sums and intersections of submodules are submodules in the list.
    pub fn verify_closure(&self) -> bool {
        let m = &self.module;
        (0..self.len()).all(|a| {
            (a..self.len()).all(|b| {
                let meet = self.subs[a].elements.intersection(&self.subs[b].elements);
                let join = m.close_from(self.subs[a].elements.clone(), &self.subs[b].gens);
                self.id_of(&meet).is_some() && self.id_of(&join).is_some()
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::Ring;

    fn lat(m: Module) -> Lattice {
        Lattice::enumerate(m, &Limits::default()).unwrap()
    }

    fn z(n: u64) -> Lattice {
        lat(Module::cyclic(n, n).unwrap())
    }

    /// Id of `dZ_n` inside the lattice of `Z_n`.
    fn dz(l: &Lattice, d: usize) -> usize {
        let n = l.module().card();
        l.id_of(&ElemSet::from_indices(n, (0..n).step_by(d))).unwrap()
    }

    fn dz_list(l: &Lattice, ids: &[usize]) -> Vec<usize> {
        let n = l.module().card();
        ids.iter().map(|&i| if l.get(i).len() == 1 { n } else { n / l.get(i).len() }).collect()
    }

    #[test]
    fn cyclic_lattices_are_divisor_lattices() {
        let l = z(12);
        assert_eq!(l.len(), 6);
        let sizes: Vec<usize> = l.iter().map(|s| s.len()).collect();
        assert_eq!(sizes, vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(z(7).len(), 2);
        assert!(l.verify_closure());
    }

    #[test]
    fn product_ring_lattice() {
        let l = lat(Module::regular(Ring::new(vec![2, 4]).unwrap()).unwrap());
        assert_eq!(l.len(), 6);
        assert!(l.verify_closure());
    }

    #[test]
    fn lattice_cap_is_enforced() {
        let m = Module::regular(Ring::cyclic(12).unwrap()).unwrap();
        let err = Lattice::enumerate(m.clone(), &Limits { max_module_card: 512, max_submodules: 3 }).unwrap_err();
        assert!(matches!(err, Error::Resource { cap: 3, .. }));
        let err = Lattice::enumerate(m, &Limits { max_module_card: 6, max_submodules: 4096 }).unwrap_err();
        assert!(matches!(err, Error::Resource { cap: 6, .. }));
    }

    #[test]
    fn min_primes_examples() {
        let l = z(12);
        assert_eq!(dz_list(&l, &l.min_primes()), vec![3, 2]);
        let l = z(30);
        let mut got = dz_list(&l, &l.min_primes());
        got.sort();
        assert_eq!(got, vec![2, 3, 5]);
        let l = z(7);
        assert_eq!(l.min_primes(), vec![0]);
    }

    #[test]
    fn radical_examples() {
        let l = z(12);
        assert_eq!(l.radical(0), dz(&l, 6));
        assert_eq!(z(30).radical(0), 0);
        assert_eq!(l.radical(l.top()), l.top());
    }

    #[test]
    fn semiprime_examples() {
        assert!(z(30).is_semiprime_module());
        assert!(!z(12).is_semiprime_module());
        assert!(z(5).is_semiprime_module());
    }

    #[test]
    fn minimal_submodule_examples() {
        let l = z(12);
        let mut got = dz_list(&l, &l.minimal_submodules());
        got.sort();
        assert_eq!(got, vec![4, 6]);
        let l = z(9);
        assert_eq!(dz_list(&l, &l.minimal_submodules()), vec![3]);
        let l = lat(Module::regular(Ring::new(vec![2, 4]).unwrap()).unwrap());
        let got: Vec<String> = l.minimal_submodules().iter().map(|&i| l.label(i)).collect();
        assert_eq!(got, vec!["⟨(0,2)⟩", "⟨(1,0)⟩"]);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(z(4).classify(), vec![ModuleClass::UniqueNontrivialSubmodule]);
        assert_eq!(z(5).classify(), vec![ModuleClass::Simple, ModuleClass::PrimeModule]);
        assert_eq!(z(12).classify(), vec![ModuleClass::Other]);
    }

    #[test]
    fn labels_use_least_generators() {
        let l = z(6);
        let got: Vec<String> = (0..l.len()).map(|i| l.label(i)).collect();
        assert_eq!(got, vec!["⟨0⟩", "⟨3⟩", "⟨2⟩", "⟨1⟩"]);
    }

    #[test]
    fn products_by_ideal_containment_match_element_products() {
        let l = lat(Module::regular(Ring::new(vec![4, 6]).unwrap()).unwrap());
        for a in 0..l.len() {
            for b in 0..l.len() {
                assert_eq!(l.product_is_zero(a, b), l.product(a, b) == 0);
            }
        }
    }
}
