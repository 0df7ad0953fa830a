//! Localization of finite modules.
//!
//! In a finite commutative ring every element `s` has a unique idempotent
//! among its powers, and inverting `s` is the same as multiplying by that
//! idempotent. `S^{-1}M` is therefore realized as `eM` for the product `e` of
//! those idempotents over the generators of `S`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finmod::{ElemSet, EmbeddedModule, Lattice, Module};
use crate::finring::{Ring, RingElem};

/// A multiplicatively closed subset, kept with its full closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultSet {
    ring: Ring,
    gens: Vec<RingElem>,
    closure: Vec<RingElem>,
    contains_zero: bool,
}

impl MultSet {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[RingElem] {
        &self.gens
    }

    /// All elements, in canonical order.
    pub fn elements(&self) -> &[RingElem] {
        &self.closure
    }

    pub fn contains(&self, r: &RingElem) -> bool {
        self.closure.binary_search(r).is_ok()
    }

    pub fn contains_zero(&self) -> bool {
        self.contains_zero
    }

    pub fn len(&self) -> usize {
        self.closure.len()
    }

    pub fn is_empty(&self) -> bool {
        self.closure.is_empty()
    }
}

/// Least multiplicatively closed set containing `gens` and `1`.
pub fn mult_closure(ring: &Ring, gens: &[RingElem]) -> Result<MultSet> {
    for g in gens {
        ring.check_elem(g)?;
    }
    let mut seen: BTreeSet<RingElem> = BTreeSet::new();
    let mut frontier = vec![ring.one()];
    seen.insert(ring.one());
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = ring.mul(&x, g)?;
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let closure: Vec<RingElem> = seen.into_iter().collect();
    let contains_zero = closure.iter().any(|r| r.is_zero());
    Ok(MultSet { ring: ring.clone(), gens: gens.to_vec(), closure, contains_zero })
}

/// The idempotent among the powers `s, s^2, ...`.
pub fn power_idempotent(ring: &Ring, s: &RingElem) -> RingElem {
    let residues = s
        .residues()
        .iter()
        .zip(ring.moduli())
        .map(|(&x, &n)| {
            let mut p = x % n;
            for _ in 0..=2 * n {
                if (p as u128 * p as u128 % n as u128) as u64 == p {
                    return p;
                }
                p = (p as u128 * x as u128 % n as u128) as u64;
            }
            unreachable!("a power of {x} mod {n} is idempotent within 2n steps")
        })
        .collect();
    ring.elem(residues).expect("reduced residues")
}

/// Product over the generators of their power idempotents (`1` for no generators).
pub fn localization_idempotent(set: &MultSet) -> RingElem {
    let ring = &set.ring;
    set.gens.iter().fold(ring.one(), |acc, s| ring.mul(&acc, &power_idempotent(ring, s)).expect("same ring"))
}

/// `S^{-1}M` realized as `eM`.
#[derive(Debug, Clone)]
pub struct LocalizedModule {
    pub set: MultSet,
    pub idem: RingElem,
    pub image: EmbeddedModule,
    /// `{m : sm = 0 for some s ∈ S}` as a subset of `M`.
    pub kernel: ElemSet,
}

impl LocalizedModule {
    /// `N ↦ N_S`, i.e. `N ↦ eN`, in image coordinates.
    pub fn localize_set(&self, set: &ElemSet) -> ElemSet {
        self.image.project_set(set)
    }
}

/// Localizes `M` at `S`, checking that every `s ∈ S` acts invertibly on the
/// image and that `m ↦ em` has exactly the `S`-torsion as kernel.
pub fn localize(module: &Module, set: &MultSet) -> Result<LocalizedModule> {
    if module.ring() != set.ring() {
        return Err(Error::Structure("multiplicative set lives in a different ring".into()));
    }
    let ring = module.ring();
    let idem = localization_idempotent(set);
    let image = module.image_under(&idem)?;
    let image_set = image.image_set();

    for s in set.elements() {
        if !acts_invertibly_on(module, s, &image_set) {
            return Err(Error::Internal(format!("{s} does not act invertibly on the localization")));
        }
    }
    let kernel_by_e = ElemSet::from_indices(module.card(), (0..module.card()).filter(|&m| module.scale(&idem, m) == 0));
    let torsion = ElemSet::from_indices(
        module.card(),
        (0..module.card()).filter(|&m| set.elements().iter().any(|s| module.scale(s, m) == 0)),
    );
    if kernel_by_e != torsion {
        return Err(Error::Internal(format!("kernel of m ↦ {idem}·m differs from the S-torsion of {module}")));
    }
    if image.card() * kernel_by_e.len() != module.card() {
        return Err(Error::Internal("|image|·|kernel| ≠ |M|".into()));
    }
    let _ = ring;
    Ok(LocalizedModule { set: set.clone(), idem, image, kernel: kernel_by_e })
}

/// Whether some `s'` satisfies `s s' x = x` on `target`: `s` permutes the
/// finite set, so `s' = s^{k-1}` for the order `k` of that permutation.
fn acts_invertibly_on(module: &Module, s: &RingElem, target: &ElemSet) -> bool {
    let ring = module.ring();
    let mut power = s.clone();
    for _ in 0..=ring.cardinality() {
        if target.iter().all(|x| module.scale(&power, x) == x) {
            return true;
        }
        power = ring.mul(&power, s).expect("same ring");
    }
    false
}

/// Whether no element of `S` is a zero-divisor on `M`.
pub fn avoids_zero_divisors(module: &Module, set: &MultSet) -> bool {
    set.elements().iter().all(|s| module.acts_injectively(s))
}

/// `R \ Z(M)`, the non-zero-divisors on `M`.
pub fn regular_elements(module: &Module) -> Result<MultSet> {
    let elements: Vec<RingElem> = module.ring().elements().filter(|r| module.acts_injectively(r)).collect();
    closed_set(module.ring(), elements)
}

/// `S = R \ ∪ (P_i : M)` over the minimal primes.
pub fn min_prime_complement(lattice: &Lattice) -> Result<MultSet> {
    let ring = lattice.module().ring();
    let colons: Vec<_> = lattice.min_primes().iter().map(|&p| lattice.colon(p).clone()).collect();
    let elements: Vec<RingElem> = ring.elements().filter(|r| colons.iter().all(|c| !c.contains(r))).collect();
    closed_set(ring, elements)
}

/// `R \ p` for a prime ideal given by a prime submodule's colon.
pub fn prime_complement(lattice: &Lattice, prime: usize) -> Result<MultSet> {
    let ring = lattice.module().ring();
    let colon = lattice.colon(prime).clone();
    let elements: Vec<RingElem> = ring.elements().filter(|r| !colon.contains(r)).collect();
    closed_set(ring, elements)
}

/// Wraps an explicit element list that must already be multiplicatively closed.
fn closed_set(ring: &Ring, elements: Vec<RingElem>) -> Result<MultSet> {
    let set = mult_closure(ring, &elements)?;
    if set.elements() != elements.as_slice() {
        return Err(Error::Internal("complement set is not multiplicatively closed".into()));
    }
    Ok(set)
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionComponent {
    pub prime: usize,
    pub idempotent: RingElem,
    pub size: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    pub idempotent: RingElem,
    pub image_size: usize,
    pub components: Vec<DecompositionComponent>,
}

/// For cyclic `M` with minimal primes `P_1..P_n` and `S = R \ ∪ (P_i:M)`:
/// the localizations at each `(P_i:M)`, restricted into `M_S = eM`, are given
/// by pairwise orthogonal idempotents `e_i` with `Σ e_i = e` and
/// `eM = ⊕ e_i M`.
pub fn check_product_decomposition(lattice: &Lattice) -> Result<DecompositionReport> {
    let module = lattice.module();
    if lattice.cyclic_generator().is_none() {
        return Err(Error::Domain(format!("{module} is not cyclic")));
    }
    let ring = module.ring();
    let set = min_prime_complement(lattice)?;
    let e = localization_idempotent(&set);
    let image = module.image_under(&e)?;
    let image_set = image.image_set();

    let mut components = Vec::new();
    let mut parts: Vec<ElemSet> = Vec::new();
    for p in lattice.min_primes() {
        let local = prime_complement(lattice, p)?;
        let ei = ring.mul(&localization_idempotent(&local), &e)?;
        let part = ElemSet::from_indices(module.card(), (0..module.card()).map(|m| module.scale(&ei, m)));
        components.push(DecompositionComponent { prime: p, idempotent: ei, size: part.len() });
        parts.push(part);
    }

    for (i, a) in components.iter().enumerate() {
        for b in components.iter().skip(i + 1) {
            let prod = ring.mul(&a.idempotent, &b.idempotent)?;
            if !prod.is_zero() {
                return Err(Error::Internal(format!(
                    "localization idempotents {} and {} are not orthogonal",
                    a.idempotent, b.idempotent
                )));
            }
        }
    }
    let total = components.iter().try_fold(ring.zero(), |acc, c| ring.add(&acc, &c.idempotent))?;
    if total != e {
        return Err(Error::Internal(format!("Σ e_i = {total} differs from e = {e}")));
    }
    let sum = parts.iter().fold(module.zero_set(), |acc, p| {
        let gens = p.to_vec();
        module.close_from(acc, &gens)
    });
    let size_product: usize = parts.iter().map(|p| p.len()).product();
    if sum != image_set || size_product != image_set.len() {
        return Err(Error::Internal("eM is not the internal direct sum of the e_i M".into()));
    }
    Ok(DecompositionReport { idempotent: e, image_size: image.card(), components })
}
