//! Saturated `S`-closed subsets of small cyclic modules.

use crate::error::Result;
use crate::finmod::{ElemSet, Lattice, Module};
use crate::localization::{mult_closure, MultSet};

/// A multiplicative set `S` and the least saturated `S`-closed subset `S*`
/// containing an orbit `S·x`.
pub struct SaturatedConfig {
    pub set: MultSet,
    pub seed: usize,
    pub star: ElemSet,
}

pub enum SaturationCheck {
    /// Number of maximal submodules checked.
    Holds(usize),
    Fails {
        submodule: usize,
        reason: &'static str,
    },
}

/// All configurations with `S` generated by the units and one further
/// element, and `S*` the saturation of an orbit, with `0 ∉ S*`.
pub fn saturated_closure(lattice: &Lattice) -> Result<Vec<SaturatedConfig>> {
    let module = lattice.module();
    let ring = module.ring();
    let elements: Vec<_> = ring.elements().collect();
    let units: Vec<_> = elements.iter().filter(|r| ring.is_unit(r)).cloned().collect();

    let mut preimages: Vec<Vec<(usize, usize)>> = vec![Vec::new(); module.card()];
    for (ai, r) in elements.iter().enumerate() {
        for y in 0..module.card() {
            preimages[module.scale(r, y)].push((ai, y));
        }
    }

    let mut sets: Vec<MultSet> = Vec::new();
    for s in &elements {
        let mut gens = units.clone();
        gens.push(s.clone());
        let set = mult_closure(ring, &gens)?;
        if !sets.iter().any(|t| t.elements() == set.elements()) {
            sets.push(set);
        }
    }

    let mut out = Vec::new();
    for set in sets {
        let in_s: Vec<bool> = elements.iter().map(|r| set.contains(r)).collect();
        let mut stars: Vec<ElemSet> = Vec::new();
        for x in 0..module.card() {
            let Some(star) = saturate(module, &set, &in_s, &preimages, x) else {
                continue;
            };
            if star.contains(module.zero()) || stars.contains(&star) {
                continue;
            }
            stars.push(star.clone());
            out.push(SaturatedConfig { set: set.clone(), seed: x, star });
        }
    }
    Ok(out)
}

fn saturate(
    module: &Module,
    set: &MultSet,
    in_s: &[bool],
    preimages: &[Vec<(usize, usize)>],
    seed: usize,
) -> Option<ElemSet> {
    let mut star = ElemSet::empty(module.card());
    let mut queue = vec![seed];
    star.insert(seed);
    while let Some(z) = queue.pop() {
        for s in set.elements() {
            let y = module.scale(s, z);
            if star.insert(y) {
                queue.push(y);
            }
        }
        for &(ai, y) in &preimages[z] {
            if !in_s[ai] {
                return None;
            }
            if star.insert(y) {
                queue.push(y);
            }
        }
    }
    Some(star)
}

impl SaturatedConfig {
    pub fn check(&self, lattice: &Lattice) -> SaturationCheck {
        let ring = lattice.module().ring();
        let avoiding: Vec<usize> =
            (0..lattice.len()).filter(|&id| lattice.get(id).elements().is_disjoint(&self.star)).collect();
        let maximal: Vec<usize> =
            avoiding.iter().copied().filter(|&n| avoiding.iter().all(|&k| k == n || !lattice.le(n, k))).collect();
        let ideals = ring.ideals();
        let avoids_s = |ideal: &crate::finring::Ideal| self.set.elements().iter().all(|s| !ideal.contains(s));
        for &n in &maximal {
            let colon = lattice.colon(n);
            if !avoids_s(colon) {
                return SaturationCheck::Fails { submodule: n, reason: "(N:M) meets S" };
            }
            if ideals.iter().any(|j| j != colon && colon.is_subset_of(j) && avoids_s(j)) {
                return SaturationCheck::Fails { submodule: n, reason: "(N:M) is not maximal in R \\ S" };
            }
            if !lattice.is_prime(n) {
                return SaturationCheck::Fails { submodule: n, reason: "N is not prime" };
            }
        }
        SaturationCheck::Holds(maximal.len())
    }

    pub fn describe_set(&self) -> String {
        let items: Vec<String> = self.set.elements().iter().map(ToString::to_string).collect();
        format!("{{{}}}", items.join(","))
    }

    pub fn describe_star(&self, module: &Module) -> String {
        let items: Vec<String> = self.star.iter().map(|m| module.fmt_elem(m)).collect();
        format!("{{{}}}", items.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finmod::Limits;

    #[test]
    fn z6_configurations() {
        let lat = Lattice::enumerate(Module::cyclic(6, 6).unwrap(), &Limits::default()).unwrap();
        let configs = saturated_closure(&lat).unwrap();
        assert!(!configs.is_empty());
        for cfg in &configs {
            assert!(!cfg.star.contains(0));
            // S-closed
            for s in cfg.set.elements() {
                assert!(cfg.star.iter().all(|z| cfg.star.contains(lat.module().scale(s, z))));
            }
            assert!(matches!(cfg.check(&lat), SaturationCheck::Holds(_)));
        }
        // S = units, S* = units of Z_6: the maximal submodules avoiding it are 2Z and 3Z
        let units = configs.iter().find(|c| c.set.len() == 2 && c.star.to_vec() == vec![1, 5]).unwrap();
        assert!(matches!(units.check(&lat), SaturationCheck::Holds(2)));
    }

    #[test]
    fn non_saturated_orbits_are_dropped() {
        let lat = Lattice::enumerate(Module::cyclic(4, 4).unwrap(), &Limits::default()).unwrap();
        for cfg in saturated_closure(&lat).unwrap() {
            // 2 = 2·1 with 2 ∉ S unless S contains 2, and then 0 = 2·2 ∈ S*
            assert!(!cfg.star.contains(2));
        }
    }
}
