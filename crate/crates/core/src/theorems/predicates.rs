use std::collections::BTreeSet;

use super::analysis::Analysis;
use super::saturation::{saturated_closure, SaturationCheck};
use super::{Outcome, Witness};
use crate::aggraph::Shape;
use crate::error::{Error, Result};
use crate::finmod::{min_prime_clique_witness, Lattice};
use crate::localization::check_product_decomposition;

macro_rules! witness {
    ($($k:expr => $v:expr),* $(,)?) => {{
        let mut w = Witness::new();
        $(w.insert($k.to_string(), $v.to_string());)*
        w
    }};
}

fn verdict(ok: bool, w: Witness) -> Outcome {
    if ok {
        Outcome::pass(w)
    } else {
        Outcome::fail(w)
    }
}

fn shapes(a: &Analysis) -> String {
    let s: Vec<String> = a.report.shape.iter().map(Shape::to_string).collect();
    s.join(",")
}

fn star_or_p4(a: &Analysis) -> bool {
    a.report.is_star() || a.report.is_path(4)
}

/// Submodules, colons, products and primes split along every idempotent.
pub fn prop_2_1(a: &Analysis) -> Result<Outcome> {
    let splits = a.splittings()?;
    if splits.is_empty() {
        return Ok(Outcome::not_met("no nontrivial idempotent splits M"));
    }
    let lat = &a.lattice;
    let module = a.module();
    let ring = module.ring();
    for sp in splits {
        let (l1, l2) = (&sp.first_lattice, &sp.second_lattice);
        let e = sp.idem.to_string();
        if lat.len() != l1.len() * l2.len() {
            return Ok(Outcome::fail(witness! {
                "idempotent" => e, "submodules" => lat.len(), "parts" => format!("{}×{}", l1.len(), l2.len()),
            }));
        }
        let parts: Vec<(usize, usize)> = lat
            .iter()
            .map(|sub| {
                (
                    l1.id_of_submodule(&sp.first.project_set(sub.elements())),
                    l2.id_of_submodule(&sp.second.project_set(sub.elements())),
                )
            })
            .collect();
        for (id, &(n1, n2)) in parts.iter().enumerate() {
            let joined = module.close_from(
                sp.first.lift_set(l1.get(n1).elements()),
                &sp.second.lift_set(l2.get(n2).elements()).to_vec(),
            );
            if &joined != lat.get(id).elements() {
                return Ok(Outcome::fail(witness! {
                    "idempotent" => e, "submodule" => lat.label(id), "check" => "N = N1 × N2",
                }));
            }
            for r in ring.elements() {
                let whole = lat.colon(id).contains(&r);
                let split = l1.colon(n1).contains(&sp.first.ring_from_ambient(&r))
                    && l2.colon(n2).contains(&sp.second.ring_from_ambient(&r));
                if whole != split {
                    return Ok(Outcome::fail(witness! {
                        "idempotent" => e, "submodule" => lat.label(id), "scalar" => r, "check" => "(N:M) = (N1:M1) × (N2:M2)",
                    }));
                }
            }
        }
        for n in 0..lat.len() {
            for k in n..lat.len() {
                let nk = lat.product(n, k);
                let want = (l1.product(parts[n].0, parts[k].0), l2.product(parts[n].1, parts[k].1));
                if parts[nk] != want {
                    return Ok(Outcome::fail(witness! {
                        "idempotent" => e, "pair" => a.labels(&[n, k]), "check" => "NK = N1K1 × N2K2",
                    }));
                }
            }
        }
        let primes: BTreeSet<(usize, usize)> = lat.primes().iter().map(|&p| parts[p]).collect();
        let expected: BTreeSet<(usize, usize)> =
            l1.primes().iter().map(|&p| (p, l2.top())).chain(l2.primes().iter().map(|&q| (l1.top(), q))).collect();
        if primes != expected {
            return Ok(Outcome::fail(witness! {
                "idempotent" => e, "primes" => a.labels(lat.primes()), "check" => "primes are P × M2 and M1 × Q",
            }));
        }
    }
    Ok(Outcome::pass(witness! { "splittings" => splits.len() }))
}

/// Ann(M) nil: every minimal submodule squares to zero or is `eM`.
pub fn lemma_2_4(a: &Analysis) -> Result<Outcome> {
    if !a.ann_nil {
        return Ok(Outcome::not_met("Ann(M) is not nil"));
    }
    let lat = &a.lattice;
    let module = a.module();
    let idems = module.ring().idempotents();
    let mut checked = Vec::new();
    for n in lat.minimal_submodules() {
        if lat.product_is_zero(n, n) {
            checked.push(format!("{}²=0", lat.label(n)));
            continue;
        }
        let mut found = None;
        for e in &idems {
            if &module.image_under(e)?.image_set() == lat.get(n).elements() {
                found = Some(e);
                break;
            }
        }
        match found {
            Some(e) => checked.push(format!("{}={e}M", lat.label(n))),
            None => {
                return Ok(Outcome::fail(witness! {
                    "minimal" => lat.label(n), "check" => "N² = 0 or N = eM",
                }))
            }
        }
    }
    Ok(Outcome::pass(witness! { "minimal" => checked.join(" ") }))
}

/// Every nonzero proper submodule is a vertex.
pub fn prop_2_5(a: &Analysis) -> Result<Outcome> {
    let lat = &a.lattice;
    let missing: Vec<usize> =
        (0..lat.len()).filter(|&id| id != lat.zero() && lat.is_proper(id) && !a.graph.contains_vertex(id)).collect();
    if missing.is_empty() {
        Ok(Outcome::pass(witness! { "vertices" => a.graph.len() }))
    } else {
        Ok(Outcome::fail(witness! { "not_vertices" => a.labels(&missing) }))
    }
}

fn simple_and(l1: &Lattice, l2: &Lattice, other: impl Fn(&Lattice) -> bool) -> bool {
    (l1.is_simple() && other(l2)) || (l2.is_simple() && other(l1))
}

/// Triangle-free AG over a split module: the parts are prime, or one is prime
/// and the other has a unique nontrivial submodule; and AG is acyclic exactly
/// for `F × S` and `F × D`.
pub fn lemma_2_6(a: &Analysis) -> Result<Outcome> {
    if !a.triangle_free() {
        return Ok(Outcome::not_met("AG(M) has a triangle"));
    }
    let splits = a.splittings()?;
    if splits.is_empty() {
        return Ok(Outcome::not_met("no splitting with both parts nonzero"));
    }
    for sp in splits {
        let (l1, l2) = (&sp.first_lattice, &sp.second_lattice);
        let both_prime = l1.is_prime_module() && l2.is_prime_module();
        let mixed = (l1.is_prime_module() && l2.has_unique_nontrivial_submodule())
            || (l2.is_prime_module() && l1.has_unique_nontrivial_submodule());
        if !both_prime && !mixed {
            return Ok(Outcome::fail(witness! {
                "idempotent" => sp.idem, "classes" => format!("{:?} / {:?}", l1.classify(), l2.classify()),
            }));
        }
    }
    let decomposable = splits.iter().find(|sp| {
        let (l1, l2) = (&sp.first_lattice, &sp.second_lattice);
        simple_and(l1, l2, Lattice::has_unique_nontrivial_submodule) || simple_and(l1, l2, Lattice::is_prime_module)
    });
    let w = witness! {
        "acyclic" => a.acyclic(),
        "f_times_s_or_d" => decomposable.map_or("none".to_string(), |sp| sp.idem.to_string()),
    };
    Ok(verdict(a.acyclic() == decomposable.is_some(), w))
}

/// Conclusions shared by the tree and bipartite statements: star or `P4`,
/// and `P4` exactly for `F × S`.
fn star_or_p4_with_fxs(a: &Analysis) -> Result<Outcome> {
    let fxs = a.fxs()?;
    let p4 = a.report.is_path(4);
    let w = witness! {
        "shape" => shapes(a),
        "fxs" => fxs.map_or("none".to_string(), |f| f.idempotent.to_string()),
    };
    Ok(verdict(star_or_p4(a) && p4 == fxs.is_some(), w))
}

/// Tree AG is a star or `P4`; `P4` iff `M = F × S`, on the four vertices
/// `0×S – F×0 – 0×N – F×N`.
pub fn thm_2_7(a: &Analysis) -> Result<Outcome> {
    let fxs = a.fxs()?;
    if !a.report.is_tree() && fxs.is_none() {
        return Ok(Outcome::not_met("AG(M) is not a tree and M is not F × S"));
    }
    if a.report.is_tree() {
        let out = star_or_p4_with_fxs(a)?;
        if out.status != super::Status::ApplicablePass {
            return Ok(out);
        }
    }
    let Some(f) = fxs else {
        return Ok(Outcome::pass(witness! { "shape" => shapes(a) }));
    };
    let lat = &a.lattice;
    let zero_s = a.id_of(&f.uniserial_part);
    let f_zero = a.id_of(&f.simple_part);
    let zero_n = a.id_of(&f.inner);
    let f_n = lat.sum(f_zero, zero_n);
    let path = [zero_s, f_zero, zero_n, f_n];
    let mut sorted = path.to_vec();
    sorted.sort_unstable();
    let g = &a.graph;
    let ok =
        a.report.is_path(4) && g.vertices() == sorted.as_slice() && path.windows(2).all(|w| g.has_edge(w[0], w[1]));
    Ok(verdict(
        ok,
        witness! {
            "idempotent" => f.idempotent,
            "path" => a.labels(&path),
            "shape" => shapes(a),
        },
    ))
}

/// Bipartite AG is a star or `P4`, with `P4` iff `F × S`.
pub fn thm_2_8(a: &Analysis) -> Result<Outcome> {
    if !a.has_vertices() {
        return Ok(Outcome::not_met("AG(M) has no vertices"));
    }
    if !a.report.bipartite {
        return Ok(Outcome::not_met("AG(M) is not bipartite"));
    }
    star_or_p4_with_fxs(a)
}

/// Ann(M) nil and AG finite bipartite: star or `P4`.
pub fn prop_2_9a(a: &Analysis) -> Result<Outcome> {
    if !a.ann_nil {
        return Ok(Outcome::not_met("Ann(M) is not nil"));
    }
    if !a.has_vertices() || !a.report.bipartite {
        return Ok(Outcome::not_met("AG(M) is empty or not bipartite"));
    }
    Ok(verdict(star_or_p4(a), witness! { "shape" => shapes(a) }))
}

/// Ann(M) nil and AG regular: complete.
pub fn prop_2_9b(a: &Analysis) -> Result<Outcome> {
    if !a.ann_nil {
        return Ok(Outcome::not_met("Ann(M) is not nil"));
    }
    if !a.has_vertices() || !a.report.has_shape(Shape::Regular) {
        return Ok(Outcome::not_met("AG(M) is empty or not regular"));
    }
    Ok(verdict(a.report.is_complete(), witness! { "shape" => shapes(a) }))
}

const SATURATION_MODULE_CAP: usize = 64;

/// Cyclic `M`, saturated `S`-closed `S*`: a submodule maximal in `M \ S*` is
/// prime, with colon maximal in `R \ S`.
pub fn thm_2_10(a: &Analysis) -> Result<Outcome> {
    if !a.cyclic {
        return Ok(Outcome::not_met("M is not cyclic"));
    }
    if a.module().card() > SATURATION_MODULE_CAP {
        return Ok(Outcome::not_met("|M| exceeds the saturation search size"));
    }
    let mut configs = 0usize;
    let mut checked = 0usize;
    for cfg in saturated_closure(&a.lattice)? {
        configs += 1;
        match cfg.check(&a.lattice) {
            SaturationCheck::Holds(n) => checked += n,
            SaturationCheck::Fails { submodule, reason } => {
                return Ok(Outcome::fail(witness! {
                    "S" => cfg.describe_set(), "S_star" => cfg.describe_star(a.module()),
                    "submodule" => a.lattice.label(submodule), "check" => reason,
                }));
            }
        }
    }
    if checked == 0 {
        return Ok(Outcome::not_met("no saturated S-closed subset with a submodule in its complement"));
    }
    Ok(Outcome::pass(witness! { "configurations" => configs, "maximal_submodules" => checked }))
}

/// Cyclic, Ann(M) nil, |Min| ≥ 3: AG has a cycle.
pub fn thm_2_11(a: &Analysis) -> Result<Outcome> {
    if !(a.cyclic && a.ann_nil && a.min_primes.len() >= 3) {
        return Ok(Outcome::not_met("needs cyclic M, Ann(M) nil and |Min(M)| ≥ 3"));
    }
    Ok(verdict(!a.acyclic(), witness! { "girth" => fmt_opt(a.report.girth), "min" => a.min_primes.len() }))
}

/// Cyclic, rad(0) ≠ 0, Ann(M) nil, |Min| = 2: a cycle or `P4`.
pub fn thm_2_12(a: &Analysis) -> Result<Outcome> {
    if !(a.cyclic && !a.reduced && a.ann_nil && a.min_primes.len() == 2) {
        return Ok(Outcome::not_met("needs cyclic M, rad(0) ≠ 0, Ann(M) nil and |Min(M)| = 2"));
    }
    Ok(verdict(
        !a.acyclic() || a.report.is_path(4),
        witness! {
            "girth" => fmt_opt(a.report.girth), "shape" => shapes(a),
        },
    ))
}

fn fmt_opt(x: Option<usize>) -> String {
    x.map_or("none".to_string(), |v| v.to_string())
}

/// The vertex map `N ↦ N_S` preserves and reflects zero products and lands
/// in `V(AG(M_S))`.
fn vertex_map_fails(a: &Analysis, case: &super::analysis::LocalCase) -> Option<Witness> {
    let vs = a.graph.vertices();
    for (i, &n) in vs.iter().enumerate() {
        if !case.graph.contains_vertex(case.phi[n]) {
            return Some(witness! { "S" => case.name, "vertex" => a.lattice.label(n), "check" => "N_S is a vertex" });
        }
        for &k in &vs[i..] {
            if a.lattice.product_is_zero(n, k) != case.lattice.product_is_zero(case.phi[n], case.phi[k]) {
                return Some(witness! {
                    "S" => case.name, "pair" => a.labels(&[n, k]), "check" => "NK = 0 iff N_S K_S = 0",
                });
            }
        }
    }
    None
}

fn localization_predicate(
    a: &Analysis,
    only_t: bool,
    require_semiprime: bool,
    value: fn(&crate::aggraph::InvariantReport) -> usize,
    name: &str,
) -> Result<Outcome> {
    let semiprime = a.semiprime();
    if require_semiprime && !semiprime {
        return Ok(Outcome::not_met("M is not semiprime"));
    }
    let here = value(&a.report);
    let mut seen = Vec::new();
    for case in a.localizations()? {
        if only_t && case.name != "T" {
            continue;
        }
        if let Some(w) = vertex_map_fails(a, case) {
            return Ok(Outcome::fail(w));
        }
        let there = value(&case.report);
        let ok = if semiprime { there == here } else { there <= here };
        if !ok {
            return Ok(Outcome::fail(witness! {
                "S" => case.name, name => here, format!("{name}_S") => there, "semiprime" => semiprime,
            }));
        }
        seen.push(format!("{}:{}", case.name, there));
    }
    Ok(Outcome::pass(witness! { name => here, "semiprime" => semiprime, "localizations" => seen.join(" ") }))
}

fn clique(r: &crate::aggraph::InvariantReport) -> usize {
    r.clique_number
}

fn chromatic(r: &crate::aggraph::InvariantReport) -> usize {
    r.chromatic_number
}

/// `cl(AG(M_S)) ≤ cl(AG(M))` for `S ∩ Z(M) = ∅`, equality when semiprime.
pub fn thm_2_13(a: &Analysis) -> Result<Outcome> {
    localization_predicate(a, false, false, clique, "clique")
}

/// Semiprime: `cl(AG(T(M))) = cl(AG(M))` for `T = R \ Z(M)`.
pub fn cor_2_14(a: &Analysis) -> Result<Outcome> {
    localization_predicate(a, true, true, clique, "clique")
}

/// `χ(AG(M_S)) ≤ χ(AG(M))`, equality when semiprime.
pub fn cor_2_15(a: &Analysis) -> Result<Outcome> {
    localization_predicate(a, false, false, chromatic, "chromatic")
}

/// Semiprime: `χ(AG(T(M))) = χ(AG(M))`.
pub fn cor_2_16(a: &Analysis) -> Result<Outcome> {
    localization_predicate(a, true, true, chromatic, "chromatic")
}

/// Cyclic: `M_S` is the internal direct sum of the localizations at the
/// minimal primes.
pub fn thm_2_17(a: &Analysis) -> Result<Outcome> {
    if !a.cyclic {
        return Ok(Outcome::not_met("M is not cyclic"));
    }
    match check_product_decomposition(&a.lattice) {
        Ok(rep) => {
            let parts: Vec<String> = rep.components.iter().map(|c| format!("{}:{}", c.idempotent, c.size)).collect();
            Ok(Outcome::pass(witness! { "e" => rep.idempotent, "components" => parts.join(" ") }))
        }
        Err(Error::Internal(msg)) => Ok(Outcome::fail(witness! { "check" => msg })),
        Err(e) => Err(e),
    }
}

/// Cyclic: a clique of size `|Min(M)|`.
pub fn thm_2_18(a: &Analysis) -> Result<Outcome> {
    if !a.cyclic {
        return Ok(Outcome::not_met("M is not cyclic"));
    }
    if !a.has_vertices() {
        return Ok(Outcome::not_met("AG(M) has no vertices"));
    }
    let w = match min_prime_clique_witness(&a.lattice) {
        Ok(w) => w,
        Err(Error::Internal(msg)) => return Ok(Outcome::fail(witness! { "check" => msg })),
        Err(e) => return Err(e),
    };
    let n = a.min_primes.len();
    let members = &w.members;
    let in_graph = n == 1
        || (members.iter().all(|&v| a.graph.contains_vertex(v))
            && members.iter().enumerate().all(|(i, &x)| members[i + 1..].iter().all(|&y| a.graph.has_edge(x, y))));
    Ok(verdict(
        in_graph && members.len() == n && a.report.clique_number >= n,
        witness! {
            "clique" => a.labels(members), "multiplier" => w.multiplier, "min" => n,
        },
    ))
}

/// Cyclic: `cl ≥ |Min|`, and girth 3 once `|Min| ≥ 3`.
pub fn cor_2_19(a: &Analysis) -> Result<Outcome> {
    if !a.cyclic {
        return Ok(Outcome::not_met("M is not cyclic"));
    }
    if !a.has_vertices() {
        return Ok(Outcome::not_met("AG(M) has no vertices"));
    }
    let n = a.min_primes.len();
    let ok = a.report.clique_number >= n && (n < 3 || a.report.girth == Some(3));
    Ok(verdict(
        ok,
        witness! {
            "clique" => a.report.clique_number, "min" => n, "girth" => fmt_opt(a.report.girth),
        },
    ))
}

/// Cyclic and `rad(0) = 0`: `χ = cl = |Min|`.
pub fn thm_2_20(a: &Analysis) -> Result<Outcome> {
    if !(a.cyclic && a.reduced) {
        return Ok(Outcome::not_met("needs cyclic M with rad(0) = 0"));
    }
    if !a.has_vertices() {
        return Ok(Outcome::not_met("AG(M) has no vertices"));
    }
    let (cl, chi, n) = (a.report.clique_number, a.report.chromatic_number, a.min_primes.len());
    Ok(verdict(cl == n && chi == n, witness! { "clique" => cl, "chromatic" => chi, "min" => n }))
}

/// `cl = 2 ⟺ χ = 2`.
pub fn thm_2_21(a: &Analysis) -> Result<Outcome> {
    let (cl, chi) = (a.report.clique_number, a.report.chromatic_number);
    Ok(verdict((cl == 2) == (chi == 2), witness! { "clique" => cl, "chromatic" => chi }))
}

fn single_min_star(a: &Analysis, graph_ok: bool, what: &str) -> Result<Outcome> {
    if !(a.ann_nil && a.min_primes.len() == 1) {
        return Ok(Outcome::not_met("needs Ann(M) nil and |Min(M)| = 1"));
    }
    if !a.has_vertices() {
        return Ok(Outcome::not_met("AG(M) has no vertices"));
    }
    if !graph_ok {
        return Ok(Outcome::not_met(&format!("AG(M) is not {what}")));
    }
    Ok(verdict(a.report.is_star(), witness! { "shape" => shapes(a) }))
}

/// Ann(M) nil, `|Min| = 1`, triangle-free: star.
pub fn thm_2_22(a: &Analysis) -> Result<Outcome> {
    single_min_star(a, a.triangle_free(), "triangle-free")
}

/// Ann(M) nil, `|Min| = 1`, bipartite: star.
pub fn cor_2_23(a: &Analysis) -> Result<Outcome> {
    single_min_star(a, a.report.bipartite, "bipartite")
}
