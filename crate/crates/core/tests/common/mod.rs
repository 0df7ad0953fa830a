//! Brute-force references built only from element arithmetic.
#![allow(dead_code)]

use std::collections::BTreeSet;

use agmod_core::{AnnGraph, ElemSet, Module, Ring, RingElem};

/// Largest clique by subset enumeration.
pub fn brute_clique(g: &AnnGraph) -> usize {
    let n = g.len();
    assert!(n <= 16);
    (0u32..1 << n)
        .filter(|&mask| {
            let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.adjacent(a, b)))
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Least number of independent sets covering all vertices, by subset DP.
pub fn brute_chromatic(g: &AnnGraph) -> usize {
    let n = g.len();
    assert!(n <= 16);
    let full = (1usize << n) - 1;
    let independent: Vec<bool> = (0..=full)
        .map(|mask| (0..n).all(|a| mask >> a & 1 == 0 || (0..n).all(|b| mask >> b & 1 == 0 || !g.adjacent(a, b))))
        .collect();
    let mut best = vec![usize::MAX; full + 1];
    best[0] = 0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut sub = rest;
        loop {
            let part = sub | low;
            if independent[part] && best[mask ^ part] != usize::MAX {
                best[mask] = best[mask].min(best[mask ^ part] + 1);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    best[full]
}

/// Induced subgraph on the given positions.
pub fn induced(g: &AnnGraph, keep: &[usize]) -> AnnGraph {
    let mut edges = Vec::new();
    for (i, &a) in keep.iter().enumerate() {
        for (j, &b) in keep.iter().enumerate().skip(i + 1) {
            if g.adjacent(a, b) {
                edges.push((i, j));
            }
        }
    }
    AnnGraph::from_edges(keep.len(), &edges)
}

/// Additive closure of a set of module elements.
pub fn additive_closure(module: &Module, seeds: impl IntoIterator<Item = usize>) -> ElemSet {
    let mut set = ElemSet::empty(module.card());
    set.insert(module.zero());
    let seeds: Vec<usize> = seeds.into_iter().collect();
    let mut frontier = vec![module.zero()];
    while let Some(x) = frontier.pop() {
        for &s in &seeds {
            let y = module.add(x, s);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

/// `{r : rM ⊆ N}` by testing every scalar on every element.
pub fn elem_colon(module: &Module, n: &ElemSet) -> BTreeSet<RingElem> {
    module.ring().elements().filter(|r| (0..module.card()).all(|m| n.contains(module.scale(r, m)))).collect()
}

/// The ideal generated by all products `ab`, closed under addition.
pub fn elem_ideal_product(ring: &Ring, a: &BTreeSet<RingElem>, b: &BTreeSet<RingElem>) -> BTreeSet<RingElem> {
    let products: BTreeSet<RingElem> = a.iter().flat_map(|x| b.iter().map(move |y| ring.mul(x, y).unwrap())).collect();
    let mut set: BTreeSet<RingElem> = BTreeSet::from([ring.zero()]);
    let mut frontier = vec![ring.zero()];
    while let Some(x) = frontier.pop() {
        for p in &products {
            let y = ring.add(&x, p).unwrap();
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

/// `IM` as the additive closure of all `rm`.
pub fn elem_ideal_action(module: &Module, ideal: &BTreeSet<RingElem>) -> ElemSet {
    let seeds: BTreeSet<usize> =
        ideal.iter().flat_map(|r| (0..module.card()).map(move |m| module.scale(r, m))).collect();
    additive_closure(module, seeds)
}

/// `NK = (N:M)(K:M)M` entirely by element sets.
pub fn brute_product(module: &Module, n: &ElemSet, k: &ElemSet) -> ElemSet {
    brute_product_of_colons(module, &elem_colon(module, n), &elem_colon(module, k))
}

pub fn brute_product_of_colons(module: &Module, a: &BTreeSet<RingElem>, b: &BTreeSet<RingElem>) -> ElemSet {
    elem_ideal_action(module, &elem_ideal_product(module.ring(), a, b))
}

/// Nondecreasing moduli tuples (each at least 2) with product at most `max`.
pub fn rings_up_to(max: u64) -> Vec<Vec<u64>> {
    fn extend(prefix: &mut Vec<u64>, product: u64, max: u64, out: &mut Vec<Vec<u64>>) {
        let start = prefix.last().copied().unwrap_or(2);
        for n in start..=max / product {
            prefix.push(n);
            out.push(prefix.clone());
            extend(prefix, product * n, max, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max, &mut out);
    out
}

/// Elements of an ideal given by divisor tuple, by direct membership test.
pub fn ideal_set(ring: &Ring, ideal: &agmod_core::Ideal) -> BTreeSet<RingElem> {
    ring.elements().filter(|r| ideal.contains(r)).collect()
}
