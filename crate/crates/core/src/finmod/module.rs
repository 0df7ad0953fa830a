use std::fmt;

use serde::{Deserialize, Serialize};

use super::ElemSet;
use crate::arith::{divisors, gcd, lcm};
use crate::error::{Error, Result};
use crate::finring::{Ideal, Ring, RingElem};

/// Modules larger than this are refused outright; element indices are `usize`.
const HARD_MODULE_LIMIT: u64 = 1 << 22;

/// Construction-time exhaustive axiom check runs when `|R| * |M|` is at most this.
const AXIOM_CHECK_LIMIT: u64 = 1_000_000;

/// One cyclic factor `Z_d` acted on through ring component `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Factor {
    pub d: u64,
    pub c: usize,
}

/// A finite module `Z_{d_1} x ... x Z_{d_m}` over a product of cyclic rings,
/// where `r` acts on factor `t` as multiplication by `r_{c_t} mod d_t`.
///
/// Elements are addressed by a canonical index (mixed radix, first factor most
/// significant), so index order is lexicographic order on coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Module {
    ring: Ring,
    factors: Vec<Factor>,
    strides: Vec<usize>,
    card: usize,
}

/// Coordinate view of a module element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ModElem {
    coords: Vec<u64>,
}

impl ModElem {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

impl fmt::Display for ModElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.coords.as_slice() {
            [x] => write!(f, "{x}"),
            xs => {
                let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

impl Module {
    pub fn new(ring: Ring, factors: Vec<Factor>) -> Result<Self> {
        let moduli = ring.moduli();
        let bad: Vec<String> = factors
            .iter()
            .enumerate()
            .filter_map(|(t, f)| {
                if f.c >= moduli.len() {
                    Some(format!(
                        "factor #{t} (d={}, c={}): component index out of range for a ring with {} components",
                        f.d,
                        f.c,
                        moduli.len()
                    ))
                } else if f.d == 0 || !moduli[f.c].is_multiple_of(f.d) {
                    Some(format!(
                        "factor #{t} (d={}, c={}): {} does not divide the component modulus {}",
                        f.d, f.c, f.d, moduli[f.c]
                    ))
                } else {
                    None
                }
            })
            .collect();
        if !bad.is_empty() {
            return Err(Error::InvalidSpec(bad));
        }
        let card: u64 = factors.iter().try_fold(1u64, |acc, f| acc.checked_mul(f.d)).unwrap_or(u64::MAX);
        if card > HARD_MODULE_LIMIT {
            return Err(Error::Resource {
                what: format!("module cardinality {card}"),
                cap: HARD_MODULE_LIMIT as usize,
            });
        }
        let mut strides = vec![1usize; factors.len()];
        for t in (0..factors.len().saturating_sub(1)).rev() {
            strides[t] = strides[t + 1] * factors[t + 1].d as usize;
        }
        let module = Module { ring, factors, strides, card: card as usize };
        if module.ring.cardinality().saturating_mul(card) <= AXIOM_CHECK_LIMIT {
            module.verify_action()?;
        }
        Ok(module)
    }

    /// `Z_m` as a module over `Z_n` (requires `m | n`).
    pub fn cyclic(n: u64, m: u64) -> Result<Self> {
        Module::new(Ring::cyclic(n)?, vec![Factor { d: m, c: 0 }])
    }

    /// `R` as a module over itself.
    pub fn regular(ring: Ring) -> Result<Self> {
        let factors = ring.moduli().iter().enumerate().map(|(c, &d)| Factor { d, c }).collect();
        Module::new(ring, factors)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn card(&self) -> usize {
        self.card
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn coord(&self, m: usize, t: usize) -> u64 {
        ((m / self.strides[t]) % self.factors[t].d as usize) as u64
    }

    pub fn elem(&self, m: usize) -> ModElem {
        ModElem { coords: (0..self.factors.len()).map(|t| self.coord(m, t)).collect() }
    }

    pub fn index_of(&self, x: &ModElem) -> Result<usize> {
        if x.coords.len() != self.factors.len() {
            return Err(Error::Structure(format!(
                "element has {} coordinates, module has {} factors",
                x.coords.len(),
                self.factors.len()
            )));
        }
        let mut idx = 0;
        for (t, (&v, f)) in x.coords.iter().zip(&self.factors).enumerate() {
            if v >= f.d {
                return Err(Error::Structure(format!("coordinate #{t} = {v} is out of range for Z_{}", f.d)));
            }
            idx += v as usize * self.strides[t];
        }
        Ok(idx)
    }

    pub fn from_coords(&self, coords: &[u64]) -> usize {
        coords.iter().zip(&self.factors).zip(&self.strides).map(|((&v, f), &s)| (v % f.d) as usize * s).sum()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for (t, f) in self.factors.iter().enumerate() {
            let d = f.d as usize;
            out += ((self.coord(a, t) as usize + self.coord(b, t) as usize) % d) * self.strides[t];
        }
        out
    }

    pub fn neg(&self, a: usize) -> usize {
        let mut out = 0;
        for (t, f) in self.factors.iter().enumerate() {
            out += ((f.d - self.coord(a, t)) % f.d) as usize * self.strides[t];
        }
        out
    }

    /// Scalar action by a residue tuple (not necessarily reduced).
    pub fn scale_residues(&self, r: &[u64], m: usize) -> usize {
        let mut out = 0;
        for (t, f) in self.factors.iter().enumerate() {
            let v = (r[f.c] % f.d) * self.coord(m, t) % f.d;
            out += v as usize * self.strides[t];
        }
        out
    }

    pub fn scale(&self, r: &RingElem, m: usize) -> usize {
        self.scale_residues(r.residues(), m)
    }

    /// Multiplication by the component idempotent `e_i`.
    pub fn project(&self, i: usize, m: usize) -> usize {
        let mut out = 0;
        for (t, f) in self.factors.iter().enumerate() {
            if f.c == i {
                out += self.coord(m, t) as usize * self.strides[t];
            }
        }
        out
    }

    /// Canonical generators of `M`: the unit vector of each factor.
    pub fn unit_generators(&self) -> Vec<usize> {
        (0..self.factors.len()).map(|t| self.strides[t]).collect()
    }

    pub fn full_set(&self) -> ElemSet {
        ElemSet::full(self.card)
    }

    pub fn zero_set(&self) -> ElemSet {
        ElemSet::from_indices(self.card, [0])
    }

    /// Per-component exponent of `M`: `L_i = lcm{d_t : c_t = i}` (1 if no factor).
    /// `r` acts on `M` only through `r_i mod L_i`, and `Ann(M)` has divisors `L_i`.
    pub fn component_exponents(&self) -> Vec<u64> {
        let mut l = vec![1u64; self.ring.components()];
        for f in &self.factors {
            l[f.c] = lcm(l[f.c], f.d);
        }
        l
    }

    /// Representatives of `R / Ann(M)`, as residue tuples modulo the component exponents.
    pub fn effective_scalars(&self) -> Vec<Vec<u64>> {
        let l = self.component_exponents();
        let total: u64 = l.iter().product();
        (0..total)
            .map(|mut idx| {
                let mut r = vec![0u64; l.len()];
                for (slot, &n) in r.iter_mut().zip(&l).rev() {
                    *slot = idx % n;
                    idx /= n;
                }
                r
            })
            .collect()
    }

    /// Least submodule containing `base` (already a submodule) and `extra`.
    ///
    /// Additive subgroups closed under the component idempotents are exactly
    /// the submodules, since those idempotents span `R` additively.
    pub fn close_from(&self, base: ElemSet, extra: &[usize]) -> ElemSet {
        let mut set = base;
        let mut members: Vec<usize> = set.to_vec();
        let mut queue: Vec<usize> = extra.to_vec();
        let comps = self.ring.components();
        while let Some(g) = queue.pop() {
            if set.contains(g) {
                continue;
            }
            let mut reps = Vec::new();
            let mut x = g;
            while !set.contains(x) {
                reps.push(x);
                x = self.add(x, g);
            }
            let old_len = members.len();
            for rep in reps {
                for k in 0..old_len {
                    let y = self.add(members[k], rep);
                    if set.insert(y) {
                        members.push(y);
                    }
                }
            }
            if comps > 1 {
                for i in 0..comps {
                    queue.push(self.project(i, g));
                }
            }
        }
        set
    }

    /// The submodule generated by `gens`.
    pub fn generate(&self, gens: &[usize]) -> ElemSet {
        self.close_from(self.zero_set(), gens)
    }

    pub fn generate_elems(&self, gens: &[ModElem]) -> Result<ElemSet> {
        let idx = gens.iter().map(|g| self.index_of(g)).collect::<Result<Vec<_>>>()?;
        Ok(self.generate(&idx))
    }

    /// Generator list for a submodule: the least single generator when the
    /// submodule is cyclic, otherwise [`Module::greedy_generators`].
    pub fn minimal_generators(&self, set: &ElemSet) -> Vec<usize> {
        if set.len() == 1 {
            return Vec::new();
        }
        match set.iter().find(|&m| self.generate(&[m]).len() == set.len()) {
            Some(m) => vec![m],
            None => self.greedy_generators(set),
        }
    }

    /// Ascending elements not yet covered, then pruned of any generator the
    /// others already produce.
    pub fn greedy_generators(&self, set: &ElemSet) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut covered = self.zero_set();
        for m in set.iter() {
            if covered.len() == set.len() {
                break;
            }
            if !covered.contains(m) {
                gens.push(m);
                covered = self.close_from(covered, &[m]);
            }
        }
        let mut i = 0;
        while i < gens.len() {
            let rest: Vec<usize> = gens.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &g)| g).collect();
            if self.generate(&rest).len() == set.len() {
                gens.remove(i);
            } else {
                i += 1;
            }
        }
        gens
    }

    pub fn is_submodule(&self, set: &ElemSet) -> bool {
        if !set.contains(0) {
            return false;
        }
        let members = set.to_vec();
        let comps = self.ring.components();
        members.iter().all(|&a| {
            members.iter().all(|&b| set.contains(self.add(a, b)))
                && (0..comps).all(|i| set.contains(self.project(i, a)))
        })
    }

    /// `{r : r K ⊆ N}` for `K` generated by `k_gens`, in divisor form.
    pub fn colon_gens(&self, n: &ElemSet, k_gens: &[usize]) -> Ideal {
        let moduli = self.ring.moduli();
        let divs = (0..moduli.len())
            .map(|i| {
                let mut r = vec![0u64; moduli.len()];
                *divisors(moduli[i])
                    .iter()
                    .find(|&&a| {
                        r[i] = a;
                        k_gens.iter().all(|&k| n.contains(self.scale_residues(&r, k)))
                    })
                    .expect("n_i itself always qualifies")
            })
            .collect();
        self.ring.ideal(divs).expect("divisors of the moduli")
    }

    /// `(N : M) = {r : rM ⊆ N}`.
    pub fn colon(&self, n: &ElemSet) -> Ideal {
        self.colon_gens(n, &self.unit_generators())
    }

    pub fn annihilator(&self) -> Ideal {
        self.colon(&self.zero_set())
    }

    pub fn is_faithful(&self) -> bool {
        self.annihilator().is_zero_in(&self.ring)
    }

    /// `I K` for `K` generated by `k_gens`: generated by `(d_i e_i) k`.
    pub fn ideal_times(&self, ideal: &Ideal, k_gens: &[usize]) -> ElemSet {
        let comps = self.ring.components();
        let mut gens = Vec::with_capacity(comps * k_gens.len());
        for i in 0..comps {
            let mut r = vec![0u64; comps];
            r[i] = ideal.divisors()[i];
            gens.extend(k_gens.iter().map(|&k| self.scale_residues(&r, k)));
        }
        self.generate(&gens)
    }

    /// `I M`.
    pub fn ideal_action(&self, ideal: &Ideal) -> ElemSet {
        self.ideal_times(ideal, &self.unit_generators())
    }

    /// The product `N K = (N:M)(K:M)M`.
    pub fn product(&self, n: &ElemSet, k: &ElemSet) -> ElemSet {
        let ideal = self.ring.ideal_product(&self.colon(n), &self.colon(k));
        self.ideal_action(&ideal)
    }

    /// Exhaustive prime test: `P ≠ M` and `r m ∈ P` forces `r ∈ (P:M)` or `m ∈ P`.
    /// Scalars are taken modulo `Ann(M)`, which changes neither side.
    pub fn is_prime_submodule(&self, p: &ElemSet) -> bool {
        if p.len() == self.card {
            return false;
        }
        let colon = self.colon(p);
        let outside: Vec<usize> = (0..self.card).filter(|&m| !p.contains(m)).collect();
        self.effective_scalars().iter().all(|r| {
            let in_colon = colon.divisors().iter().zip(r).all(|(&d, &x)| x % d == 0);
            in_colon || outside.iter().all(|&m| !p.contains(self.scale_residues(r, m)))
        })
    }

    /// `Z(M) = {r : r m = 0 for some m ≠ 0}`, in canonical order.
    pub fn zero_divisors_on(&self) -> Vec<RingElem> {
        self.ring.elements().filter(|r| (1..self.card).any(|m| self.scale(r, m) == 0)).collect()
    }

    /// Whether `r` acts injectively (hence bijectively) on `M`.
    pub fn acts_injectively(&self, r: &RingElem) -> bool {
        (1..self.card).all(|m| self.scale(r, m) != 0)
    }

    /// The least `m` with `Rm = M`, if any.
    pub fn cyclic_generator(&self) -> Option<usize> {
        (0..self.card).find(|&m| self.generate(&[m]).len() == self.card)
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic_generator().is_some()
    }

    pub fn fmt_elem(&self, m: usize) -> String {
        self.elem(m).to_string()
    }

    /// `⟨g_1,...⟩` label for a generator list; the zero submodule is `⟨0⟩`.
    pub fn label(&self, gens: &[usize]) -> String {
        if gens.is_empty() {
            return "⟨0⟩".to_string();
        }
        let parts: Vec<String> = gens.iter().map(|&g| self.fmt_elem(g)).collect();
        format!("⟨{}⟩", parts.join(","))
    }

    /// Exhaustive spot check of the module axioms over `R x M`.
    fn verify_action(&self) -> Result<()> {
        let ring = &self.ring;
        let one = ring.one();
        let gens = self.unit_generators();
        let comps = ring.components();
        for m in 0..self.card {
            if self.scale(&one, m) != m {
                return Err(Error::Internal(format!("1·m ≠ m for m = {}", self.fmt_elem(m))));
            }
        }
        for r in ring.elements() {
            for m in 0..self.card {
                let rm = self.scale(&r, m);
                for &g in &gens {
                    if self.scale(&r, self.add(m, g)) != self.add(rm, self.scale(&r, g)) {
                        return Err(Error::Internal("scalar action is not additive".into()));
                    }
                }
                for i in 0..comps {
                    let s = ring.unit_vector(i);
                    let rs = ring.mul(&r, &s)?;
                    if self.scale(&rs, m) != self.scale(&r, self.scale(&s, m)) {
                        return Err(Error::Internal("scalar action is not associative".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// `gcd`-reduced order of the factor `t` under the idempotent `e`.
    pub(crate) fn factor_image_order(&self, e: &RingElem, t: usize) -> u64 {
        let f = self.factors[t];
        let ec = e.residues()[f.c] % f.d;
        f.d / gcd(ec, f.d)
    }
}

impl fmt::Display for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0 over {}", self.ring);
        }
        let parts: Vec<String> = self.factors.iter().map(|x| format!("Z_{}@{}", x.d, x.c)).collect();
        write!(f, "{} over {}", parts.join("×"), self.ring)
    }
}
