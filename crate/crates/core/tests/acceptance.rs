mod common;

use std::time::{Duration, Instant};

use agmod_core::aggraph::{chromatic_number, clique_number};
use agmod_core::localization::{check_product_decomposition, localize, min_prime_complement};
use agmod_core::theorems::{
    check_module, generate_corpus, run_suite, theorem_ids, Analysis, CorpusInstance, CorpusSpec, Status,
};
use agmod_core::{
    build_ag, build_ag_star, invariants, min_prime_clique_witness, AnnGraph, Lattice, Limits, Module, Ring,
};
use common::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

struct Corpus {
    instances: Vec<CorpusInstance>,
    analyses: Vec<Analysis>,
}

impl Corpus {
    fn load() -> Self {
        let instances = generate_corpus(&CorpusSpec::default());
        let analyses = instances
            .iter()
            .map(|i| Analysis::new(i.module.clone(), &Limits::default()).expect("default corpus fits the caps"))
            .collect();
        Corpus { instances, analyses }
    }

    fn iter(&self) -> impl Iterator<Item = (&CorpusInstance, &Analysis)> {
        self.instances.iter().zip(&self.analyses)
    }
}

fn z(n: u64) -> Module {
    Module::cyclic(n, n).unwrap()
}

fn lattice(m: Module) -> Lattice {
    Lattice::enumerate(m, &Limits::default()).unwrap()
}

fn status_of(theorem: &str, module: &Module) -> (Status, Option<String>) {
    let r = check_module(module, &[theorem], &Limits::default()).unwrap().remove(0);
    let path = r.witness.as_ref().and_then(|w| w.get("path").cloned());
    (r.status, path)
}

fn criterion_1(corpus: &Corpus) -> Verdict {
    let mut trees = 0;
    let mut fxs_count = 0;
    let mut slowest = Duration::ZERO;
    for (inst, a) in corpus.iter() {
        let start = Instant::now();
        let r = check_module(&inst.module, &["thm_2_7"], &Limits::default()).unwrap().remove(0);
        slowest = slowest.max(start.elapsed());
        if a.report.is_tree() {
            trees += 1;
            if r.status != Status::ApplicablePass {
                return verdict(false, format!("{}: {:?}", inst.id, r));
            }
        }
        if a.fxs().unwrap().is_some() {
            fxs_count += 1;
            if r.status != Status::ApplicablePass || !a.report.is_path(4) {
                return verdict(false, format!("F×S instance {} is not P4", inst.id));
            }
        }
    }
    let expected = [
        (Module::regular(Ring::new(vec![2, 4]).unwrap()).unwrap(), "[⟨(0,1)⟩, ⟨(1,0)⟩, ⟨(0,2)⟩, ⟨(1,2)⟩]"),
        (z(12), "[⟨3⟩, ⟨4⟩, ⟨6⟩, ⟨2⟩]"),
    ];
    for (m, path) in expected {
        let (status, got) = status_of("thm_2_7", &m);
        if status != Status::ApplicablePass || got.as_deref() != Some(path) {
            return verdict(false, format!("four-vertex path mismatch: {got:?}"));
        }
    }
    verdict(
        trees > 0 && fxs_count > 0 && slowest < Duration::from_secs(1),
        format!("{trees} tree graphs star or P4, {fxs_count} F×S instances are P4 on 0×S, F×0, 0×N, F×N; slowest {slowest:.2?}"),
    )
}

fn sorted_labels(lat: &Lattice, ids: &[usize]) -> Vec<String> {
    let mut v: Vec<String> = ids.iter().map(|&i| lat.label(i)).collect();
    v.sort();
    v
}

fn criterion_2(corpus: &Corpus) -> Verdict {
    let mut cyclic = 0;
    let mut excluded = 0;
    for (inst, a) in corpus.iter().filter(|(_, a)| a.cyclic) {
        if !a.has_vertices() {
            if !a.lattice.is_simple() {
                return verdict(false, format!("{} has an empty graph but is not simple", inst.id));
            }
            excluded += 1;
            continue;
        }
        cyclic += 1;
        let n = a.min_primes.len();
        let w = match min_prime_clique_witness(&a.lattice) {
            Ok(w) => w,
            Err(e) => return verdict(false, format!("{}: {e}", inst.id)),
        };
        let pairwise_zero = w
            .members
            .iter()
            .enumerate()
            .all(|(i, &x)| w.members[i + 1..].iter().all(|&y| a.lattice.product_is_zero(x, y)));
        if a.report.clique_number < n || w.members.len() != n || !pairwise_zero {
            return verdict(
                false,
                format!("{}: cl {} < |Min| {n} or witness invalid", inst.id, a.report.clique_number),
            );
        }
        if n >= 3 && a.report.girth != Some(3) {
            return verdict(false, format!("{}: |Min| {n} but girth {:?}", inst.id, a.report.girth));
        }
    }
    for (n, want) in [(30, ["⟨10⟩", "⟨15⟩", "⟨6⟩"]), (60, ["⟨12⟩", "⟨15⟩", "⟨20⟩"])] {
        let lat = lattice(z(n));
        let w = min_prime_clique_witness(&lat).unwrap();
        if sorted_labels(&lat, &w.members) != want {
            return verdict(false, format!("Z_{n} witness {:?}", sorted_labels(&lat, &w.members)));
        }
    }
    verdict(
        cyclic > 0,
        format!("{cyclic} cyclic instances with cl ≥ |Min| and verified witness cliques; Z_30 and Z_60 witnesses match; {excluded} simple modules with empty AG excluded"),
    )
}

fn criterion_3() -> Verdict {
    let start = Instant::now();
    let mut checked = 0;
    let mut excluded = 0;
    for n in 2..=210u64 {
        let omega = (2..=n).filter(|p| n % p == 0 && (2..*p).all(|q| p % q != 0)).count();
        let squarefree = (2..=n).all(|p| n % (p * p) != 0);
        if !squarefree {
            continue;
        }
        let g = build_ag(&lattice(z(n)));
        if g.is_empty() {
            excluded += 1;
            continue;
        }
        let (cl, chi) = (clique_number(&g), chromatic_number(&g));
        if cl != omega || chi != omega {
            return verdict(false, format!("Z_{n}: cl {cl}, χ {chi}, ω {omega}"));
        }
        checked += 1;
    }
    let g6 = build_ag(&lattice(z(6)));
    let g30 = build_ag(&lattice(z(30)));
    let spot = chromatic_number(&g6) == 2 && chromatic_number(&g30) == 3;
    let elapsed = start.elapsed();
    verdict(
        spot && elapsed < Duration::from_secs(30),
        format!("χ = cl = ω(n) for {checked} composite squarefree n ≤ 210 in {elapsed:.2?}; {excluded} primes with empty AG excluded"),
    )
}

fn criterion_4(corpus: &Corpus) -> Verdict {
    let start = Instant::now();
    let rep = run_suite(&corpus.instances, &["thm_2_21"], &Limits::default(), 4).unwrap();
    let c = rep.counts["thm_2_21"];
    let direct = corpus.iter().all(|(_, a)| (a.report.clique_number == 2) == (a.report.chromatic_number == 2));
    verdict(
        c.applicable_fail == 0 && c.skipped == 0 && direct && c.applicable_pass == corpus.instances.len(),
        format!("cl = 2 ⟺ χ = 2 on all {} instances in {:.2?}", c.applicable_pass, start.elapsed()),
    )
}

fn criterion_5(corpus: &Corpus) -> Verdict {
    let mut applicable = 0;
    let mut semiprime = 0;
    for (inst, a) in corpus.iter() {
        let m = &inst.module;
        let s = min_prime_complement(&a.lattice).unwrap();
        if !s.elements().iter().all(|r| m.acts_injectively(r)) {
            continue;
        }
        applicable += 1;
        let loc = localize(m, &s).unwrap();
        let g = build_ag(&lattice(loc.image.module().clone()));
        let (cl, chi) = (clique_number(&g), chromatic_number(&g));
        let (cl0, chi0) = (a.report.clique_number, a.report.chromatic_number);
        if cl > cl0 || chi > chi0 {
            return verdict(false, format!("{}: localization increased cl {cl0}→{cl} or χ {chi0}→{chi}", inst.id));
        }
        if a.semiprime() {
            semiprime += 1;
            if cl != cl0 || chi != chi0 {
                return verdict(false, format!("{}: semiprime but cl {cl0}→{cl}, χ {chi0}→{chi}", inst.id));
            }
        }
    }
    verdict(
        applicable > 0 && semiprime > 0,
        format!("{applicable} instances with S ∩ Z(M) = ∅ keep cl and χ bounded; {semiprime} semiprime ones keep them equal"),
    )
}

fn criterion_6(corpus: &Corpus) -> Verdict {
    let mut cyclic = 0;
    for (inst, a) in corpus.iter().filter(|(_, a)| a.cyclic) {
        if let Err(e) = check_product_decomposition(&a.lattice) {
            return verdict(false, format!("{}: {e}", inst.id));
        }
        cyclic += 1;
    }
    let rep = check_product_decomposition(&lattice(z(12))).unwrap();
    let mut idems: Vec<u64> = rep.components.iter().map(|c| c.idempotent.residues()[0]).collect();
    idems.sort();
    let ok = idems == [4, 9] && rep.idempotent.residues() == [1];
    verdict(
        ok && cyclic > 0,
        format!("{cyclic} cyclic instances decompose as ⊕ e_i M; Z_12 gives {{9, 4}} with 9 + 4 ≡ 1"),
    )
}

fn criterion_7(corpus: &Corpus) -> Verdict {
    let mut pool: Vec<AnnGraph> = Vec::new();
    for a in &corpus.analyses {
        for g in [a.graph.clone(), build_ag_star(&a.lattice)] {
            if !g.is_empty() && g.len() <= 12 {
                pool.push(g);
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut sampled = 0;
    for _ in 0..200 {
        let g = &pool[rng.gen_range(0..pool.len())];
        let g = if rng.gen_bool(0.5) {
            let keep: Vec<usize> = (0..g.len()).filter(|_| rng.gen_bool(0.7)).collect();
            induced(g, &keep)
        } else {
            g.clone()
        };
        if clique_number(&g) != brute_clique(&g) || chromatic_number(&g) != brute_chromatic(&g) {
            return verdict(false, format!("solver mismatch on a {}-vertex graph", g.len()));
        }
        sampled += 1;
    }

    let rings = rings_up_to(200);
    for moduli in &rings {
        let ring = Ring::new(moduli.clone()).unwrap();
        let ideals = ring.ideals();
        let sets: Vec<_> = ideals.iter().map(|i| ideal_set(&ring, i)).collect();
        for (i, a) in ideals.iter().enumerate() {
            for (j, b) in ideals.iter().enumerate().skip(i) {
                if ideal_set(&ring, &ring.ideal_product(a, b)) != elem_ideal_product(&ring, &sets[i], &sets[j]) {
                    return verdict(false, format!("ideal product mismatch in {moduli:?}: {a} {b}"));
                }
            }
        }
        let m = Module::regular(ring).unwrap();
        let lat = lattice(m.clone());
        let colons: Vec<_> = lat.iter().map(|sub| elem_colon(&m, sub.elements())).collect();
        for x in 0..lat.len() {
            for y in x..lat.len() {
                let want = brute_product_of_colons(&m, &colons[x], &colons[y]);
                if lat.get(lat.product(x, y)).elements() != &want {
                    return verdict(false, format!("submodule product mismatch in {moduli:?}"));
                }
            }
        }
    }
    verdict(
        true,
        format!("solvers match brute force on {sampled} sampled graphs (pool {}); products match on all {} rings with |R| ≤ 200", pool.len(), rings.len()),
    )
}

fn criterion_8(corpus: &Corpus) -> Verdict {
    let mut checked = 0;
    for (inst, a) in corpus.iter() {
        for (kind, report) in [("AG", a.report.clone()), ("AG*", invariants(&build_ag_star(&a.lattice)))] {
            if report.vertices < 2 || kind == "AG*" {
                continue;
            }
            checked += 1;
            if !report.connected || report.diameter.is_none_or(|d| d > 3) {
                return verdict(
                    false,
                    format!("{} {kind}: connected {} diameter {:?}", inst.id, report.connected, report.diameter),
                );
            }
        }
    }
    verdict(checked > 0, format!("{checked} graphs with ≥ 2 vertices are connected with diameter ≤ 3"))
}

fn criterion_9(corpus: &Corpus) -> Verdict {
    let ids = theorem_ids();
    let rep = run_suite(&corpus.instances, &ids, &Limits::default(), 4).unwrap();
    let idle: Vec<&str> =
        ids.iter().copied().filter(|t| rep.counts[*t].applicable_pass + rep.counts[*t].applicable_fail == 0).collect();
    let first_failure = rep.failures().next().map(|f| format!("{} on {}", f.theorem_id, f.instance_id));
    let min_applicable = ids.iter().map(|t| (rep.counts[*t].applicable_pass, *t)).min().unwrap();
    verdict(
        rep.violations == 0 && idle.is_empty() && rep.skipped == 0,
        match (first_failure, idle.is_empty()) {
            (Some(f), _) => format!("{} violations, first {f}", rep.violations),
            (None, false) => format!("predicates never applicable: {idle:?}"),
            (None, true) => format!(
                "0 violations over {} instances × {} predicates; least exercised {} with {} applicable",
                rep.instances,
                ids.len(),
                min_applicable.1,
                min_applicable.0
            ),
        },
    )
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

fn main() {
    let corpus = Corpus::load();
    let criteria: Vec<Criterion> = vec![
        ("tree AG is a star or P4; F×S gives P4", Box::new(|| criterion_1(&corpus))),
        ("min-prime clique witness and girth", Box::new(|| criterion_2(&corpus))),
        ("χ = cl = ω(n) for squarefree n ≤ 210", Box::new(criterion_3)),
        ("cl = 2 iff χ = 2", Box::new(|| criterion_4(&corpus))),
        ("localization at the min-prime complement", Box::new(|| criterion_5(&corpus))),
        ("localization product decomposition", Box::new(|| criterion_6(&corpus))),
        ("solver and product oracles", Box::new(|| criterion_7(&corpus))),
        ("connectivity and diameter ≤ 3", Box::new(|| criterion_8(&corpus))),
        ("predicate suite", Box::new(|| criterion_9(&corpus))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = run();
        let elapsed = start.elapsed();
        if !v.ok {
            failed += 1;
        }
        println!("criterion {} {}: {name}: {} ({elapsed:.2?})", i + 1, if v.ok { "PASS" } else { "FAIL" }, v.detail);
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
