//! Finite commutative rings of the form `Z_{n_1} x ... x Z_{n_k}`.
//!
//! Elements are residue tuples, ideals are divisor tuples. Every ideal of such
//! a ring is a product of ideals `d_i Z_{n_i}`, so the divisor form is a
//! complete and canonical encoding.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{divisors, gcd, lcm, pow_mod, squarefree_kernel};
use crate::error::{Error, Result};

/// A product of cyclic rings. The empty product is the zero ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ring {
    moduli: Vec<u64>,
}

/// A residue tuple, one entry per ring component.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RingElem {
    residues: Vec<u64>,
}

/// The ideal `d_1 Z_{n_1} x ... x d_k Z_{n_k}`; `d_i = n_i` is the zero component.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Ideal {
    divisors: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl Ring {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        let bad: Vec<String> = moduli
            .iter()
            .enumerate()
            .filter(|(_, &n)| n < 2)
            .map(|(i, n)| format!("ring modulus #{i} is {n}; moduli must be at least 2"))
            .collect();
        if !bad.is_empty() {
            return Err(Error::InvalidSpec(bad));
        }
        Ok(Ring { moduli })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Ring::new(vec![n])
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn components(&self) -> usize {
        self.moduli.len()
    }

    pub fn cardinality(&self) -> u64 {
        self.moduli.iter().product()
    }

    pub fn zero(&self) -> RingElem {
        RingElem { residues: vec![0; self.moduli.len()] }
    }

    pub fn one(&self) -> RingElem {
        RingElem { residues: vec![1; self.moduli.len()] }
    }

    /// Builds an element, reducing nothing: residues must already be in range.
    pub fn elem(&self, residues: Vec<u64>) -> Result<RingElem> {
        self.check_residues(&residues)?;
        Ok(RingElem { residues })
    }

    /// Builds an element from arbitrary integers, reducing each residue.
    pub fn elem_reduced(&self, residues: &[u64]) -> Result<RingElem> {
        if residues.len() != self.moduli.len() {
            return Err(self.count_mismatch(residues.len()));
        }
        Ok(RingElem { residues: residues.iter().zip(&self.moduli).map(|(r, n)| r % n).collect() })
    }

    /// The element that is `1` in component `i` and `0` elsewhere.
    pub fn unit_vector(&self, i: usize) -> RingElem {
        let mut residues = vec![0; self.moduli.len()];
        residues[i] = 1;
        RingElem { residues }
    }

    /// Element with canonical index `idx` (lexicographic order on residue tuples).
    pub fn element_at(&self, mut idx: u64) -> RingElem {
        let mut residues = vec![0; self.moduli.len()];
        for (slot, &n) in residues.iter_mut().zip(&self.moduli).rev() {
            *slot = idx % n;
            idx /= n;
        }
        RingElem { residues }
    }

    pub fn index_of(&self, r: &RingElem) -> u64 {
        r.residues.iter().zip(&self.moduli).fold(0, |acc, (x, n)| acc * n + x)
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = RingElem> + '_ {
        (0..self.cardinality()).map(move |i| self.element_at(i))
    }

    pub fn arith(&self, a: &RingElem, b: &RingElem, op: ArithOp) -> Result<RingElem> {
        self.check_elem(a)?;
        self.check_elem(b)?;
        let residues = a
            .residues
            .iter()
            .zip(&b.residues)
            .zip(&self.moduli)
            .map(|((&x, &y), &n)| match op {
                ArithOp::Add => (x + y) % n,
                ArithOp::Sub => (x + n - y) % n,
                ArithOp::Mul => (x as u128 * y as u128 % n as u128) as u64,
            })
            .collect();
        Ok(RingElem { residues })
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> Result<RingElem> {
        self.arith(a, b, ArithOp::Add)
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> Result<RingElem> {
        self.arith(a, b, ArithOp::Sub)
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> Result<RingElem> {
        self.arith(a, b, ArithOp::Mul)
    }

    pub fn pow(&self, r: &RingElem, exp: u64) -> RingElem {
        RingElem { residues: r.residues.iter().zip(&self.moduli).map(|(&x, &n)| pow_mod(x, exp, n)).collect() }
    }

    /// `r^k = 0` for some `k <= |R|`. The nilpotency index never exceeds `|R|`,
    /// so it is enough to look at `r^{|R|}`.
    pub fn is_nilpotent(&self, r: &RingElem) -> bool {
        self.pow(r, self.cardinality()).is_zero()
    }

    pub fn is_idempotent(&self, r: &RingElem) -> bool {
        r.residues.iter().zip(&self.moduli).all(|(&x, &n)| (x as u128 * x as u128 % n as u128) as u64 == x)
    }

    pub fn is_unit(&self, r: &RingElem) -> bool {
        r.residues.iter().zip(&self.moduli).all(|(&x, &n)| gcd(x, n) == 1)
    }

    /// Every idempotent, in canonical order. Idempotents of a product are the
    /// tuples of componentwise idempotents.
    pub fn idempotents(&self) -> Vec<RingElem> {
        let per_component: Vec<Vec<u64>> = self
            .moduli
            .iter()
            .map(|&n| (0..n).filter(|&x| (x as u128 * x as u128 % n as u128) as u64 == x).collect())
            .collect();
        cartesian(&per_component).into_iter().map(|residues| RingElem { residues }).collect()
    }

    /// Every ideal, as divisor tuples in lexicographic order.
    pub fn ideals(&self) -> Vec<Ideal> {
        let per_component: Vec<Vec<u64>> = self.moduli.iter().map(|&n| divisors(n)).collect();
        cartesian(&per_component).into_iter().map(|divisors| Ideal { divisors }).collect()
    }

    pub fn ideal(&self, divisors: Vec<u64>) -> Result<Ideal> {
        if divisors.len() != self.moduli.len() {
            return Err(self.count_mismatch(divisors.len()));
        }
        let bad: Vec<String> = divisors
            .iter()
            .zip(&self.moduli)
            .enumerate()
            .filter(|(_, (&d, &n))| d == 0 || n % d != 0)
            .map(|(i, (d, n))| format!("ideal divisor #{i} is {d}, which does not divide {n}"))
            .collect();
        if !bad.is_empty() {
            return Err(Error::InvalidSpec(bad));
        }
        Ok(Ideal { divisors })
    }

    pub fn zero_ideal(&self) -> Ideal {
        Ideal { divisors: self.moduli.clone() }
    }

    pub fn unit_ideal(&self) -> Ideal {
        Ideal { divisors: vec![1; self.moduli.len()] }
    }

    /// Principal ideal `rR`; componentwise `gcd(r_i, n_i) Z_{n_i}`.
    pub fn principal(&self, r: &RingElem) -> Ideal {
        Ideal { divisors: r.residues.iter().zip(&self.moduli).map(|(&x, &n)| gcd(x, n)).collect() }
    }

    pub fn nilradical(&self) -> Ideal {
        self.ideal_radical(&self.zero_ideal())
    }

    pub fn ideal_product(&self, a: &Ideal, b: &Ideal) -> Ideal {
        Ideal {
            divisors: a
                .divisors
                .iter()
                .zip(&b.divisors)
                .zip(&self.moduli)
                .map(|((&x, &y), &n)| gcd(x * y, n))
                .collect(),
        }
    }

    /// `{r : r^k in I for some k}`: each divisor replaced by its squarefree kernel.
    pub fn ideal_radical(&self, i: &Ideal) -> Ideal {
        Ideal { divisors: i.divisors.iter().map(|&d| squarefree_kernel(d)).collect() }
    }

    /// Every element of `I` is nilpotent, i.e. `I` sits inside the nilradical.
    pub fn is_nil_ideal(&self, i: &Ideal) -> bool {
        i.is_subset_of(&self.nilradical())
    }

    /// Proper, and prime in exactly one component with every other component full.
    pub fn is_prime_ideal(&self, i: &Ideal) -> bool {
        let non_full: Vec<(u64, u64)> =
            i.divisors.iter().zip(&self.moduli).filter(|(&d, _)| d != 1).map(|(&d, &n)| (d, n)).collect();
        matches!(non_full.as_slice(), [(d, _)] if crate::arith::is_prime(*d))
    }

    /// Elements of `I` in canonical order.
    pub fn ideal_elements(&self, i: &Ideal) -> Vec<RingElem> {
        self.elements().filter(|r| i.contains(r)).collect()
    }

    /// Lifts `u`, idempotent modulo the nil ideal `I`, to an idempotent
    /// `e in uR` with `e - u in I`, by iterating `u <- 3u^2 - 2u^3`.
    pub fn lift_idempotent(&self, u: &RingElem, i: &Ideal) -> Result<RingElem> {
        self.check_elem(u)?;
        if i.divisors.len() != self.moduli.len() {
            return Err(self.count_mismatch(i.divisors.len()));
        }
        if !self.is_nil_ideal(i) {
            return Err(Error::Domain(format!("ideal {i} is not nil")));
        }
        let defect = self.sub(&self.mul(u, u)?, u)?;
        if !i.contains(&defect) {
            return Err(Error::Domain(format!("{u} is not idempotent modulo {i}")));
        }
        let cap = 64 - self.cardinality().leading_zeros() + 4;
        let mut x = u.clone();
        for _ in 0..cap {
            if self.is_idempotent(&x) {
                break;
            }
            let sq = self.mul(&x, &x)?;
            let cube = self.mul(&sq, &x)?;
            let three_sq = self.add(&self.add(&sq, &sq)?, &sq)?;
            let two_cube = self.add(&cube, &cube)?;
            x = self.sub(&three_sq, &two_cube)?;
        }
        if !self.is_idempotent(&x) {
            return Err(Error::Internal(format!("idempotent lifting of {u} did not converge within {cap} steps")));
        }
        if !i.contains(&self.sub(&x, u)?) || !self.principal(u).contains(&x) {
            return Err(Error::Internal(format!("lifted idempotent {x} violates its postconditions")));
        }
        Ok(x)
    }

    fn check_residues(&self, residues: &[u64]) -> Result<()> {
        if residues.len() != self.moduli.len() {
            return Err(self.count_mismatch(residues.len()));
        }
        if let Some((i, (r, n))) = residues.iter().zip(&self.moduli).enumerate().find(|(_, (r, n))| r >= n) {
            return Err(Error::Structure(format!("residue #{i} = {r} is out of range for Z_{n}")));
        }
        Ok(())
    }

    pub(crate) fn check_elem(&self, r: &RingElem) -> Result<()> {
        self.check_residues(&r.residues)
    }

    fn count_mismatch(&self, got: usize) -> Error {
        Error::Structure(format!("expected {} ring components, got {got}", self.moduli.len()))
    }
}

impl RingElem {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|&x| x == 0)
    }
}

impl Ideal {
    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn contains(&self, r: &RingElem) -> bool {
        self.divisors.iter().zip(&r.residues).all(|(&d, &x)| x % d == 0)
    }

    pub fn is_subset_of(&self, other: &Ideal) -> bool {
        self.divisors.iter().zip(&other.divisors).all(|(&d, &o)| d % o == 0)
    }

    pub fn intersection(&self, other: &Ideal) -> Ideal {
        Ideal { divisors: self.divisors.iter().zip(&other.divisors).map(|(&a, &b)| lcm(a, b)).collect() }
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        Ideal { divisors: self.divisors.iter().zip(&other.divisors).map(|(&a, &b)| gcd(a, b)).collect() }
    }

    pub fn is_zero_in(&self, ring: &Ring) -> bool {
        self.divisors == ring.moduli
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.divisors.iter().all(|&d| d == 1)
    }
}

fn cartesian(lists: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for list in lists {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |&x| {
                    let mut next = prefix.clone();
                    next.push(x);
                    next
                })
            })
            .collect();
    }
    out
}

fn fmt_tuple(f: &mut fmt::Formatter<'_>, xs: &[u64]) -> fmt::Result {
    if xs.len() == 1 {
        return write!(f, "{}", xs[0]);
    }
    write!(f, "(")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tuple(f, &self.residues)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        fmt_tuple(f, &self.divisors)?;
        write!(f, "⟩")
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moduli.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.moduli.iter().map(|n| format!("Z_{n}")).collect();
        write!(f, "{}", parts.join("×"))
    }
}
