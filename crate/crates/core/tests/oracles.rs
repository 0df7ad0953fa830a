mod common;

use agmod_core::aggraph::{chromatic_number, clique_number};
use agmod_core::theorems::{generate_corpus, CorpusSpec};
use agmod_core::{build_ag, build_ag_star, Lattice, Limits, Module, Ring};
use common::*;

#[test]
fn ideal_products_match_element_products_on_small_rings() {
    for moduli in rings_up_to(72) {
        let ring = Ring::new(moduli.clone()).unwrap();
        let ideals = ring.ideals();
        for a in &ideals {
            for b in &ideals {
                let want = elem_ideal_product(&ring, &ideal_set(&ring, a), &ideal_set(&ring, b));
                assert_eq!(ideal_set(&ring, &ring.ideal_product(a, b)), want, "{moduli:?} {a} {b}");
            }
        }
    }
}

#[test]
fn module_products_match_element_products_on_corpus_modules() {
    let spec = CorpusSpec { max_ring_card: 24, max_module_card: 32, ..CorpusSpec::default() };
    for inst in generate_corpus(&spec) {
        let lat = Lattice::enumerate(inst.module.clone(), &Limits::default()).unwrap();
        let m = lat.module();
        for a in 0..lat.len() {
            let colon = ideal_set(m.ring(), lat.colon(a));
            assert_eq!(colon, elem_colon(m, lat.get(a).elements()), "{} colon {}", inst.id, lat.label(a));
            for b in a..lat.len() {
                let want = brute_product(m, lat.get(a).elements(), lat.get(b).elements());
                assert_eq!(
                    lat.get(lat.product(a, b)).elements(),
                    &want,
                    "{} {} {}",
                    inst.id,
                    lat.label(a),
                    lat.label(b)
                );
                assert_eq!(lat.product_is_zero(a, b), want.len() == 1);
            }
        }
    }
}

#[test]
fn submodule_counts_match_subgroup_enumeration() {
    // every additive subgroup closed under scalars, found by closing all subsets of size ≤ 2
    for (moduli, factors) in
        [(vec![12], vec![(12, 0)]), (vec![2, 4], vec![(2, 0), (4, 1)]), (vec![4], vec![(2, 0), (4, 0)])]
    {
        let ring = Ring::new(moduli).unwrap();
        let factors = factors.into_iter().map(|(d, c)| agmod_core::Factor { d, c }).collect();
        let m = Module::new(ring, factors).unwrap();
        let lat = Lattice::enumerate(m.clone(), &Limits::default()).unwrap();
        let mut found = std::collections::BTreeSet::new();
        for x in 0..m.card() {
            for y in 0..m.card() {
                let seeds: Vec<usize> = m.ring().elements().flat_map(|r| [m.scale(&r, x), m.scale(&r, y)]).collect();
                found.insert(additive_closure(&m, seeds));
            }
        }
        assert_eq!(found.len(), lat.len());
        assert!(found.iter().all(|s| lat.id_of(s).is_some()));
    }
}

#[test]
fn solvers_match_brute_force_on_corpus_graphs() {
    let mut checked = 0;
    for inst in generate_corpus(&CorpusSpec::default()) {
        let lat = Lattice::enumerate(inst.module.clone(), &Limits::default()).unwrap();
        for g in [build_ag(&lat), build_ag_star(&lat)] {
            if g.len() > 12 {
                continue;
            }
            assert_eq!(clique_number(&g), brute_clique(&g), "{}", inst.id);
            assert_eq!(chromatic_number(&g), brute_chromatic(&g), "{}", inst.id);
            checked += 1;
        }
    }
    assert!(checked > 100);
}
