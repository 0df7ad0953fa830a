//! Executable predicates for the structural results on `AG(M)`, and a runner
//! over a generated corpus.

mod analysis;
mod corpus;
mod predicates;
mod saturation;

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finmod::{Limits, Module};

pub use analysis::{Analysis, LocalCase, Splitting};
pub use corpus::{generate_corpus, instance_id, CorpusInstance, CorpusSpec, Families, Family};
pub use saturation::{saturated_closure, SaturatedConfig, SaturationCheck};

pub type Witness = BTreeMap<String, String>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    #[serde(rename = "applicable_pass")]
    ApplicablePass,
    #[serde(rename = "applicable_FAIL")]
    ApplicableFail,
    #[serde(rename = "hypotheses_not_met")]
    HypothesesNotMet,
    #[serde(rename = "skipped")]
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub witness: Option<Witness>,
    pub reason: Option<String>,
}

impl Outcome {
    pub fn pass(witness: Witness) -> Self {
        Outcome { status: Status::ApplicablePass, witness: Some(witness), reason: None }
    }

    pub fn fail(witness: Witness) -> Self {
        Outcome { status: Status::ApplicableFail, witness: Some(witness), reason: None }
    }

    pub fn not_met(reason: &str) -> Self {
        Outcome { status: Status::HypothesesNotMet, witness: None, reason: Some(reason.to_string()) }
    }

    pub fn skipped(reason: String) -> Self {
        Outcome { status: Status::Skipped, witness: None, reason: Some(reason) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredicateResult {
    pub theorem_id: String,
    pub instance_id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

type Predicate = fn(&Analysis) -> Result<Outcome>;

const PREDICATES: &[(&str, Predicate)] = &[
    ("prop_2_1", predicates::prop_2_1),
    ("lemma_2_4", predicates::lemma_2_4),
    ("prop_2_5", predicates::prop_2_5),
    ("lemma_2_6", predicates::lemma_2_6),
    ("thm_2_7", predicates::thm_2_7),
    ("thm_2_8", predicates::thm_2_8),
    ("prop_2_9a", predicates::prop_2_9a),
    ("prop_2_9b", predicates::prop_2_9b),
    ("thm_2_10", predicates::thm_2_10),
    ("thm_2_11", predicates::thm_2_11),
    ("thm_2_12", predicates::thm_2_12),
    ("thm_2_13", predicates::thm_2_13),
    ("cor_2_14", predicates::cor_2_14),
    ("cor_2_15", predicates::cor_2_15),
    ("cor_2_16", predicates::cor_2_16),
    ("thm_2_17", predicates::thm_2_17),
    ("thm_2_18", predicates::thm_2_18),
    ("cor_2_19", predicates::cor_2_19),
    ("thm_2_20", predicates::thm_2_20),
    ("thm_2_21", predicates::thm_2_21),
    ("thm_2_22", predicates::thm_2_22),
    ("cor_2_23", predicates::cor_2_23),
];

/// Every theorem id, in suite order.
pub fn theorem_ids() -> Vec<&'static str> {
    PREDICATES.iter().map(|(id, _)| *id).collect()
}

/// Resolves ids against the known list, reporting every unknown one.
pub fn resolve_theorems<S: AsRef<str>>(ids: &[S]) -> Result<Vec<&'static str>> {
    let mut out = Vec::new();
    let mut unknown = Vec::new();
    for id in ids {
        match PREDICATES.iter().find(|(known, _)| *known == id.as_ref()) {
            Some((known, _)) => {
                if !out.contains(known) {
                    out.push(*known);
                }
            }
            None => unknown.push(format!("unknown theorem id `{}`", id.as_ref())),
        }
    }
    if unknown.is_empty() {
        Ok(out)
    } else {
        Err(Error::InvalidSpec(unknown))
    }
}

/// Runs one predicate on a prepared analysis. Resource caps hit while
/// computing auxiliary data give a skip record; internal check failures are
/// violations.
pub fn run_predicate(theorem_id: &str, instance_id: &str, analysis: &Analysis) -> Result<PredicateResult> {
    let (id, predicate) = PREDICATES
        .iter()
        .find(|(known, _)| *known == theorem_id)
        .ok_or_else(|| Error::InvalidSpec(vec![format!("unknown theorem id `{theorem_id}`")]))?;
    let outcome = match predicate(analysis) {
        Ok(o) => o,
        Err(e @ Error::Resource { .. }) => Outcome::skipped(e.to_string()),
        Err(e) => {
            let mut w = Witness::new();
            w.insert("error".to_string(), e.to_string());
            Outcome::fail(w)
        }
    };
    Ok(PredicateResult {
        theorem_id: id.to_string(),
        instance_id: instance_id.to_string(),
        status: outcome.status,
        witness: outcome.witness,
        reason: outcome.reason,
    })
}

/// Analyzes a module and runs the given predicates on it.
pub fn check_module(module: &Module, theorems: &[&str], limits: &Limits) -> Result<Vec<PredicateResult>> {
    let id = instance_id(module);
    match Analysis::new(module.clone(), limits) {
        Ok(analysis) => theorems.iter().map(|t| run_predicate(t, &id, &analysis)).collect(),
        Err(e @ Error::Resource { .. }) => {
            resolve_theorems(theorems)?;
            Ok(theorems
                .iter()
                .map(|t| PredicateResult {
                    theorem_id: t.to_string(),
                    instance_id: id.clone(),
                    status: Status::Skipped,
                    witness: None,
                    reason: Some(e.to_string()),
                })
                .collect())
        }
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub applicable_pass: usize,
    #[serde(rename = "applicable_FAIL")]
    pub applicable_fail: usize,
    pub hypotheses_not_met: usize,
    pub skipped: usize,
}

impl Counts {
    fn add(&mut self, status: Status) {
        match status {
            Status::ApplicablePass => self.applicable_pass += 1,
            Status::ApplicableFail => self.applicable_fail += 1,
            Status::HypothesesNotMet => self.hypotheses_not_met += 1,
            Status::Skipped => self.skipped += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub instances: usize,
    pub theorems: Vec<String>,
    pub counts: BTreeMap<String, Counts>,
    pub violations: usize,
    pub skipped: usize,
    pub results: Vec<PredicateResult>,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &PredicateResult> {
        self.results.iter().filter(|r| r.status == Status::ApplicableFail)
    }
}

/// Runs `theorems` over `corpus` on up to `jobs` threads. Results are ordered
/// by corpus position and then theorem order, whatever the completion order.
pub fn run_suite(corpus: &[CorpusInstance], theorems: &[&str], limits: &Limits, jobs: usize) -> Result<SuiteReport> {
    let theorems = resolve_theorems(theorems)?;
    let slots: Vec<Mutex<Option<Result<Vec<PredicateResult>>>>> = corpus.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = jobs.clamp(1, corpus.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(inst) = corpus.get(i) else { break };
                let res = check_module(&inst.module, &theorems, limits);
                *slots[i].lock().expect("slot lock") = Some(res);
            });
        }
    });

    let mut counts: BTreeMap<String, Counts> = theorems.iter().map(|t| (t.to_string(), Counts::default())).collect();
    let mut results = Vec::new();
    for slot in slots {
        let batch = slot.into_inner().expect("slot lock").expect("every instance is processed")?;
        for r in batch {
            counts.get_mut(&r.theorem_id).expect("known theorem").add(r.status);
            results.push(r);
        }
    }
    let violations = counts.values().map(|c| c.applicable_fail).sum();
    let skipped = counts.values().map(|c| c.skipped).sum();
    Ok(SuiteReport {
        instances: corpus.len(),
        theorems: theorems.iter().map(|t| t.to_string()).collect(),
        counts,
        violations,
        skipped,
        results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::Ring;

    fn one(theorem: &str, module: Module) -> PredicateResult {
        check_module(&module, &[theorem], &Limits::default()).unwrap().remove(0)
    }

    fn z(n: u64) -> Module {
        Module::cyclic(n, n).unwrap()
    }

    #[test]
    fn examples() {
        let r = one("thm_2_7", z(12));
        assert_eq!(r.status, Status::ApplicablePass);
        assert_eq!(r.witness.as_ref().unwrap()["idempotent"], "9");
        let r = one("cor_2_19", z(30));
        assert_eq!(r.status, Status::ApplicablePass);
        assert_eq!(r.witness.as_ref().unwrap()["girth"], "3");
        assert_eq!(one("thm_2_20", z(6)).status, Status::ApplicablePass);
        let fxs = Module::regular(Ring::new(vec![2, 4]).unwrap()).unwrap();
        let r = one("thm_2_7", fxs);
        assert_eq!(r.status, Status::ApplicablePass);
        assert_eq!(r.witness.as_ref().unwrap()["path"], "[⟨(0,1)⟩, ⟨(1,0)⟩, ⟨(0,2)⟩, ⟨(1,2)⟩]");
    }

    #[test]
    fn hypotheses_gate_the_conclusions() {
        // AG(Z_30) has a triangle, so it is not a tree and Z_30 is not F × S
        assert_eq!(one("thm_2_7", z(30)).status, Status::HypothesesNotMet);
        assert_eq!(one("thm_2_8", z(30)).status, Status::HypothesesNotMet);
        assert_eq!(one("thm_2_11", z(12)).status, Status::HypothesesNotMet);
        assert_eq!(one("thm_2_20", z(12)).status, Status::HypothesesNotMet);
        assert_eq!(one("thm_2_22", z(6)).status, Status::HypothesesNotMet);
        // simple modules have an empty graph
        for t in ["thm_2_8", "thm_2_18", "cor_2_19", "thm_2_20", "thm_2_22", "cor_2_23"] {
            assert_eq!(one(t, z(7)).status, Status::HypothesesNotMet, "{t}");
        }
        let two_dim = Module::new(Ring::cyclic(2).unwrap(), vec![crate::finmod::Factor { d: 2, c: 0 }; 2]).unwrap();
        assert_eq!(one("thm_2_18", two_dim).status, Status::HypothesesNotMet);
    }

    #[test]
    fn every_predicate_passes_on_small_cyclic_modules() {
        for n in 2..=24 {
            for r in check_module(&z(n), &theorem_ids(), &Limits::default()).unwrap() {
                assert_ne!(r.status, Status::ApplicableFail, "{r:?}");
            }
        }
    }

    #[test]
    fn unknown_ids_are_rejected() {
        assert!(matches!(resolve_theorems(&["thm_2_7", "thm_9_9"]), Err(Error::InvalidSpec(v)) if v.len() == 1));
    }

    #[test]
    fn resource_caps_produce_skip_records() {
        let limits = Limits { max_module_card: 8, max_submodules: 4096 };
        let r = check_module(&z(12), &["thm_2_21"], &limits).unwrap();
        assert_eq!(r[0].status, Status::Skipped);
        assert!(r[0].reason.is_some());
    }

    #[test]
    fn suite_is_deterministic_and_counts_add_up() {
        let spec = CorpusSpec { max_ring_card: 12, max_module_card: 32, families: Families::default() };
        let corpus = generate_corpus(&spec);
        let ids = theorem_ids();
        let a = run_suite(&corpus, &ids, &Limits::default(), 4).unwrap();
        let b = run_suite(&corpus, &ids, &Limits::default(), 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.results.len(), corpus.len() * ids.len());
        assert_eq!(a.violations, 0, "{:?}", a.failures().collect::<Vec<_>>());
        let empty = run_suite(&[], &ids, &Limits::default(), 4).unwrap();
        assert_eq!(empty.results.len(), 0);
        assert!(empty.counts.values().all(|c| *c == Counts::default()));
    }
}
