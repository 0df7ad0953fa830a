use serde::Serialize;

use super::Lattice;
use crate::error::{Error, Result};
use crate::finring::RingElem;
use crate::localization::{localization_idempotent, min_prime_complement, prime_complement};

/// A clique of size `|Min(M)|` built from the localization idempotents.
#[derive(Debug, Clone, Serialize)]
pub struct CliqueWitness {
    /// Lattice ids of the clique members, in minimal-prime order.
    pub members: Vec<usize>,
    /// The localization idempotent `e_i` used for each member.
    pub idempotents: Vec<RingElem>,
    /// The multiplier `t = Π t_ij`.
    pub multiplier: RingElem,
}

/// For cyclic `M = Rm` with minimal primes `P_1..P_n`: localize at
/// `S = R \ ∪ (P_i:M)`, take the component generators `n_i = e_i m`, find for
/// each `i < j` some `t_ij ∈ S` with `t_ij e_i n_j = 0` (trying `1` first, then
/// `S` in canonical order), and return the submodules `R t n_i` with
/// `t = Π t_ij`. The result is checked to be `n` distinct nonzero submodules
/// with pairwise zero products.
pub fn min_prime_clique_witness(lattice: &Lattice) -> Result<CliqueWitness> {
    let module = lattice.module();
    let ring = module.ring();
    let m = lattice.cyclic_generator().ok_or_else(|| Error::Domain(format!("{module} is not cyclic")))?;
    let mins = lattice.min_primes();
    let set = min_prime_complement(lattice)?;
    let e = localization_idempotent(&set);

    let mut idempotents = Vec::with_capacity(mins.len());
    for &p in &mins {
        let local = prime_complement(lattice, p)?;
        idempotents.push(ring.mul(&localization_idempotent(&local), &e)?);
    }
    let gens: Vec<usize> = idempotents.iter().map(|ei| module.scale(ei, m)).collect();

    let one = ring.one();
    let mut multiplier = ring.one();
    for (i, ei) in idempotents.iter().enumerate() {
        for (j, &nj) in gens.iter().enumerate().skip(i + 1) {
            let target = module.scale(ei, nj);
            let t_ij = std::iter::once(&one)
                .chain(set.elements())
                .find(|s| module.scale(s, target) == 0)
                .ok_or_else(|| Error::Internal(format!("no t in S kills e_{i}·n_{j}")))?;
            multiplier = ring.mul(&multiplier, t_ij)?;
        }
    }

    let members: Vec<usize> = gens.iter().map(|&g| lattice.cyclic_submodule(module.scale(&multiplier, g))).collect();
    for (i, &a) in members.iter().enumerate() {
        if a == lattice.zero() {
            return Err(Error::Internal(format!("clique witness member {i} is zero")));
        }
        for &b in &members[i + 1..] {
            if a == b {
                return Err(Error::Internal(format!("clique witness repeats {}", lattice.label(a))));
            }
            if lattice.product(a, b) != lattice.zero() {
                return Err(Error::Internal(format!(
                    "clique witness members {} and {} have nonzero product",
                    lattice.label(a),
                    lattice.label(b)
                )));
            }
        }
    }
    Ok(CliqueWitness { members, idempotents, multiplier })
}
