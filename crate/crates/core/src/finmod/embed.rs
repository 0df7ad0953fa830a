//! Images `eM` of a module under a ring idempotent, as modules over `eR`.
//!
//! For an idempotent `e` of `Z_{n_1} x ... x Z_{n_k}`, the ring `eR` is again a
//! product of cyclic rings (`e_i Z_{n_i} ≅ Z_{n_i / gcd(e_i, n_i)}`), and `eM` is
//! again a product of cyclic factors. The image is therefore kept in structured
//! form together with the injection back into `M`.

use super::{ElemSet, Factor, Lattice, Limits, Module};
use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::finring::{Ring, RingElem};

/// `eM` as a module over `eR`, with its embedding into the ambient module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedModule {
    idem: RingElem,
    module: Module,
    ambient: Module,
    /// Ambient factor index of each image factor.
    factor_map: Vec<usize>,
    /// Ambient ring component of each image ring component.
    comp_map: Vec<usize>,
}

impl EmbeddedModule {
    pub fn idempotent(&self) -> &RingElem {
        &self.idem
    }

    /// The image as a structured module over `eR`.
    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn ambient(&self) -> &Module {
        &self.ambient
    }

    pub fn card(&self) -> usize {
        self.module.card()
    }

    /// Ambient index of an image element: each coordinate is lifted by
    /// multiplying with `e` modulo the ambient factor order.
    pub fn to_ambient(&self, x: usize) -> usize {
        let mut coords = vec![0u64; self.ambient.factors().len()];
        for (img_t, &amb_t) in self.factor_map.iter().enumerate() {
            let f = self.ambient.factors()[amb_t];
            let e = self.idem.residues()[f.c] % f.d;
            coords[amb_t] = self.module.coord(x, img_t) * e % f.d;
        }
        self.ambient.from_coords(&coords)
    }

    /// Image index of an ambient element lying in `eM`.
    pub fn from_ambient(&self, m: usize) -> Option<usize> {
        if self.ambient.scale(&self.idem, m) != m {
            return None;
        }
        let coords: Vec<u64> = self
            .factor_map
            .iter()
            .enumerate()
            .map(|(img_t, &amb_t)| self.ambient.coord(m, amb_t) % self.module.factors()[img_t].d)
            .collect();
        Some(self.module.from_coords(&coords))
    }

    /// `eM` as a subset of the ambient module.
    pub fn image_set(&self) -> ElemSet {
        ElemSet::from_indices(self.ambient.card(), (0..self.card()).map(|x| self.to_ambient(x)))
    }

    /// Ambient subset corresponding to a subset of the image.
    pub fn lift_set(&self, set: &ElemSet) -> ElemSet {
        ElemSet::from_indices(self.ambient.card(), set.iter().map(|x| self.to_ambient(x)))
    }

    /// `eN` for an ambient subset `N`, in image coordinates.
    pub fn project_set(&self, set: &ElemSet) -> ElemSet {
        ElemSet::from_indices(
            self.card(),
            set.iter().map(|m| self.from_ambient(self.ambient.scale(&self.idem, m)).expect("e·m lies in eM")),
        )
    }

    /// Ambient ring element corresponding to an element of `eR`.
    pub fn ring_to_ambient(&self, r: &RingElem) -> RingElem {
        let ring = self.ambient.ring();
        let mut residues = vec![0u64; ring.components()];
        for (img_i, &amb_i) in self.comp_map.iter().enumerate() {
            let n = ring.moduli()[amb_i];
            let e = self.idem.residues()[amb_i];
            residues[amb_i] = (r.residues()[img_i] * e) % n;
        }
        ring.elem(residues).expect("reduced residues")
    }

    /// The element of `eR` acting on `eM` as `r` does.
    pub fn ring_from_ambient(&self, r: &RingElem) -> RingElem {
        let ring = self.module.ring();
        let residues = self.comp_map.iter().zip(ring.moduli()).map(|(&amb_i, &a)| r.residues()[amb_i] % a).collect();
        ring.elem(residues).expect("reduced residues")
    }
}

impl Module {
    /// `eM` over `eR` for an idempotent `e` (0 and 1 allowed).
    pub fn image_under(&self, e: &RingElem) -> Result<EmbeddedModule> {
        let ring = self.ring();
        ring.check_elem(e)?;
        if !ring.is_idempotent(e) {
            return Err(Error::Domain(format!("{e} is not idempotent")));
        }
        let mut comp_map = Vec::new();
        let mut moduli = Vec::new();
        let mut comp_index = vec![usize::MAX; ring.components()];
        for (i, &n) in ring.moduli().iter().enumerate() {
            let a = n / gcd(e.residues()[i], n);
            if a >= 2 {
                comp_index[i] = comp_map.len();
                comp_map.push(i);
                moduli.push(a);
            }
        }
        let mut factor_map = Vec::new();
        let mut factors = Vec::new();
        for (t, f) in self.factors().iter().enumerate() {
            let g = self.factor_image_order(e, t);
            if g >= 2 {
                factor_map.push(t);
                factors.push(Factor { d: g, c: comp_index[f.c] });
            }
        }
        let module = Module::new(Ring::new(moduli)?, factors)?;
        Ok(EmbeddedModule { idem: e.clone(), module, ambient: self.clone(), factor_map, comp_map })
    }

    /// `M = eM ⊕ (1-e)M` for a nontrivial idempotent `e`.
    pub fn decompose_by_idempotent(&self, e: &RingElem) -> Result<(EmbeddedModule, EmbeddedModule)> {
        let ring = self.ring();
        ring.check_elem(e)?;
        if !ring.is_idempotent(e) {
            return Err(Error::Domain(format!("{e} is not idempotent")));
        }
        if e.is_zero() || *e == ring.one() {
            return Err(Error::Domain(format!("{e} is a trivial idempotent")));
        }
        let complement = ring.sub(&ring.one(), e)?;
        let first = self.image_under(e)?;
        let second = self.image_under(&complement)?;
        if first.card() * second.card() != self.card() {
            return Err(Error::Internal(format!(
                "|eM|·|(1-e)M| = {}·{} ≠ |M| = {}",
                first.card(),
                second.card(),
                self.card()
            )));
        }
        Ok((first, second))
    }
}

/// A splitting `M = F × S` with `F` simple and `S` having exactly one
/// nontrivial submodule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FxsWitness {
    pub idempotent: RingElem,
    /// Image of `F` (the simple part) in `M`.
    pub simple_part: ElemSet,
    /// Image of `S` in `M`.
    pub uniserial_part: ElemSet,
    /// Image of the unique nontrivial submodule of `S` in `M`.
    pub inner: ElemSet,
}

/// Searches the nontrivial idempotents, larger of each complementary pair
/// first, for a splitting into a simple module and a module with a unique
/// nontrivial submodule.
pub fn detect_fxs(module: &Module, limits: &Limits) -> Result<Option<FxsWitness>> {
    let ring = module.ring();
    let one = ring.one();
    for e in ring.idempotents().into_iter().rev() {
        if e.is_zero() || e == one {
            continue;
        }
        let (a, b) = module.decompose_by_idempotent(&e)?;
        let la = Lattice::enumerate(a.module().clone(), limits)?;
        let lb = Lattice::enumerate(b.module().clone(), limits)?;
        let split = if la.is_simple() && lb.has_unique_nontrivial_submodule() {
            Some((&a, &b, &lb))
        } else if lb.is_simple() && la.has_unique_nontrivial_submodule() {
            Some((&b, &a, &la))
        } else {
            None
        };
        if let Some((f, s, ls)) = split {
            return Ok(Some(FxsWitness {
                idempotent: e,
                simple_part: f.image_set(),
                uniserial_part: s.image_set(),
                inner: s.lift_set(ls.get(1).elements()),
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposition_examples() {
        let m = Module::cyclic(12, 12).unwrap();
        let four = m.ring().elem(vec![4]).unwrap();
        let (a, b) = m.decompose_by_idempotent(&four).unwrap();
        assert_eq!(a.image_set().to_vec(), vec![0, 4, 8]);
        assert_eq!(b.image_set().to_vec(), vec![0, 3, 6, 9]);
        assert_eq!(a.module().card(), 3);
        assert_eq!(b.module().ring().moduli(), &[4]);

        let m = Module::regular(Ring::new(vec![2, 4]).unwrap()).unwrap();
        let e = m.ring().elem(vec![1, 0]).unwrap();
        let (a, b) = m.decompose_by_idempotent(&e).unwrap();
        assert_eq!((a.card(), b.card()), (2, 4));
    }

    #[test]
    fn trivial_or_non_idempotent_splittings_are_rejected() {
        let m = Module::cyclic(12, 12).unwrap();
        let ring = m.ring().clone();
        assert!(matches!(m.decompose_by_idempotent(&ring.one()), Err(Error::Domain(_))));
        assert!(matches!(m.decompose_by_idempotent(&ring.zero()), Err(Error::Domain(_))));
        assert!(matches!(m.decompose_by_idempotent(&ring.elem(vec![3]).unwrap()), Err(Error::Domain(_))));
    }

    #[test]
    fn embedding_round_trips() {
        let m = Module::new(
            Ring::new(vec![12, 6]).unwrap(),
            vec![Factor { d: 12, c: 0 }, Factor { d: 6, c: 1 }, Factor { d: 2, c: 0 }],
        )
        .unwrap();
        let e = m.ring().elem(vec![9, 3]).unwrap();
        let img = m.image_under(&e).unwrap();
        for x in 0..img.card() {
            let y = img.to_ambient(x);
            assert_eq!(m.scale(&e, y), y);
            assert_eq!(img.from_ambient(y), Some(x));
        }
        assert_eq!(img.image_set().len(), img.card());
        for r in m.ring().elements() {
            let local = img.ring_from_ambient(&r);
            for x in 0..img.card() {
                assert_eq!(img.to_ambient(img.module().scale(&local, x)), m.scale(&r, img.to_ambient(x)));
            }
        }
        // R-linearity of the embedding
        let r = img.module().ring().element_at(3);
        let amb_r = img.ring_to_ambient(&r);
        for x in 0..img.card() {
            assert_eq!(img.to_ambient(img.module().scale(&r, x)), m.scale(&amb_r, img.to_ambient(x)));
        }
    }

    #[test]
    fn zero_idempotent_gives_zero_module() {
        let m = Module::cyclic(12, 12).unwrap();
        let img = m.image_under(&m.ring().zero()).unwrap();
        assert_eq!(img.card(), 1);
        assert_eq!(img.module().ring().components(), 0);
    }

    #[test]
    fn fxs_detection_examples() {
        let limits = Limits::default();
        let w = detect_fxs(&Module::cyclic(12, 12).unwrap(), &limits).unwrap().unwrap();
        assert_eq!(w.idempotent.residues(), &[9]);
        assert_eq!(w.simple_part.to_vec(), vec![0, 4, 8]);
        assert_eq!(w.inner.to_vec(), vec![0, 6]);
        let m = Module::regular(Ring::new(vec![2, 4]).unwrap()).unwrap();
        let w = detect_fxs(&m, &limits).unwrap().unwrap();
        assert_eq!(w.idempotent.residues(), &[1, 0]);
        assert!(detect_fxs(&Module::cyclic(30, 30).unwrap(), &limits).unwrap().is_none());
    }
}
