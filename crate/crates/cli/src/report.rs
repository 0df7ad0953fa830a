use agmod_core::localization::{avoids_zero_divisors, check_product_decomposition, min_prime_complement};
use agmod_core::{
    build_ag, build_ag_star, detect_fxs, invariants, localize, min_prime_clique_witness, mult_closure, AnnGraph,
    CorpusSpec, InvariantReport, Lattice, Limits, ModuleClass, MultSet, SuiteReport,
};
use serde::Serialize;

use crate::error::CliResult;
use crate::spec::{ring_elems, InstanceSpec, LocalizeAt, SCHEMA};

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub schema: u32,
    pub instance: InstanceSpec,
    pub ring_card: u64,
    pub module_card: usize,
    pub submodules: Vec<SubmoduleRow>,
    pub lattice: LatticeSummary,
    pub ag: GraphSection,
    pub ag_star: GraphSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clique_witness: Option<CliqueWitnessSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub localization: Option<LocalizationSection>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubmoduleRow {
    pub id: usize,
    pub label: String,
    pub size: usize,
    pub generators: Vec<String>,
    pub colon: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeSummary {
    pub count: usize,
    pub minimal: Vec<usize>,
    pub primes: Vec<usize>,
    pub min_primes: Vec<usize>,
    pub radical_of_zero: usize,
    pub annihilator: String,
    pub annihilator_nil: bool,
    pub semiprime: bool,
    pub cyclic: bool,
    pub cyclic_generator: Option<String>,
    pub classification: Vec<ModuleClass>,
    /// `M = F × S` with `F` simple and `S` having one nontrivial submodule.
    pub fxs: Option<FxsSummary>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FxsSummary {
    pub idempotent: String,
    pub simple_part: usize,
    pub uniserial_part: usize,
    pub inner: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Vertex {
    pub id: usize,
    pub label: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphSection {
    pub kind: &'static str,
    pub vertices: Vec<Vertex>,
    /// Pairs of submodule ids, each ascending, in lexicographic order.
    pub edges: Vec<[usize; 2]>,
    pub max_clique: Vec<usize>,
    pub invariants: InvariantReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct CliqueWitnessSummary {
    pub members: Vec<usize>,
    pub labels: Vec<String>,
    pub idempotents: Vec<String>,
    pub multiplier: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LocalizationSection {
    pub at: &'static str,
    pub generators: Vec<String>,
    pub set_size: usize,
    pub contains_zero: bool,
    pub avoids_zero_divisors: bool,
    pub idempotent: String,
    pub image_size: usize,
    pub kernel_size: usize,
    /// The localized module, as a spec over `eR`.
    pub image: InstanceSpec,
    /// Lattice id of `N_S` in the localized module, indexed by the id of `N`.
    pub submodule_map: Vec<usize>,
    pub semiprime: bool,
    pub ag_before: InvariantReport,
    pub ag_after: InvariantReport,
    pub clique_number: Comparison,
    pub chromatic_number: Comparison,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Decomposition>,
}

/// `eM = ⊕ e_i M` over the minimal primes `P_i` of a cyclic module.
#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    pub idempotent: String,
    pub image_size: usize,
    pub components: Vec<DecompositionPart>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionPart {
    pub prime: usize,
    pub idempotent: String,
    pub size: usize,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Comparison {
    pub before: usize,
    pub after: usize,
    pub preserved: bool,
}

impl Comparison {
    fn new(before: usize, after: usize) -> Self {
        Comparison { before, after, preserved: before == after }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LocalizeReport {
    pub schema: u32,
    pub instance: InstanceSpec,
    pub localization: LocalizationSection,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub schema: u32,
    pub corpus: CorpusSpec,
    pub suite: SuiteReport,
}

pub fn graph_section(lattice: &Lattice, g: &AnnGraph) -> GraphSection {
    let report = invariants(g);
    let ids = g.vertices();
    let mut edges: Vec<[usize; 2]> = g
        .edges()
        .into_iter()
        .map(|(a, b)| {
            let (x, y) = (ids[a], ids[b]);
            [x.min(y), x.max(y)]
        })
        .collect();
    edges.sort_unstable();
    let mut max_clique: Vec<usize> = report.max_clique.iter().map(|&p| ids[p]).collect();
    max_clique.sort_unstable();
    GraphSection {
        kind: g.kind().name(),
        vertices: ids.iter().map(|&id| Vertex { id, label: lattice.label(id) }).collect(),
        edges,
        max_clique,
        invariants: report,
    }
}

pub fn analyze(spec: &InstanceSpec, at: Option<&LocalizeAt>, limits: &Limits) -> CliResult<AnalyzeReport> {
    let module = spec.to_module()?;
    let lattice = Lattice::enumerate(module.clone(), limits)?;
    let ring = module.ring();

    let submodules = lattice
        .iter()
        .map(|s| SubmoduleRow {
            id: s.id(),
            label: lattice.label(s.id()),
            size: s.len(),
            generators: s.gens().iter().map(|&g| module.fmt_elem(g)).collect(),
            colon: lattice.colon(s.id()).to_string(),
        })
        .collect();

    let fxs = detect_fxs(&module, limits)?.map(|w| FxsSummary {
        idempotent: w.idempotent.to_string(),
        simple_part: lattice.id_of_submodule(&w.simple_part),
        uniserial_part: lattice.id_of_submodule(&w.uniserial_part),
        inner: lattice.id_of_submodule(&w.inner),
    });
    let cyclic_generator = lattice.cyclic_generator();
    let summary = LatticeSummary {
        count: lattice.len(),
        minimal: lattice.minimal_submodules(),
        primes: lattice.primes().to_vec(),
        min_primes: lattice.min_primes(),
        radical_of_zero: lattice.radical(lattice.zero()),
        annihilator: lattice.annihilator().to_string(),
        annihilator_nil: ring.is_nil_ideal(lattice.annihilator()),
        semiprime: lattice.is_semiprime_module(),
        cyclic: cyclic_generator.is_some(),
        cyclic_generator: cyclic_generator.map(|m| module.fmt_elem(m)),
        classification: lattice.classify(),
        fxs,
    };

    let clique_witness = if spec.options.clique_witness && cyclic_generator.is_some() {
        let w = min_prime_clique_witness(&lattice)?;
        Some(CliqueWitnessSummary {
            labels: w.members.iter().map(|&id| lattice.label(id)).collect(),
            members: w.members,
            idempotents: w.idempotents.iter().map(ToString::to_string).collect(),
            multiplier: w.multiplier.to_string(),
        })
    } else {
        None
    };

    let localization = at.map(|at| localization_section(&lattice, at, limits)).transpose()?;

    Ok(AnalyzeReport {
        schema: SCHEMA,
        instance: spec.clone(),
        ring_card: ring.cardinality(),
        module_card: module.card(),
        submodules,
        ag: graph_section(&lattice, &build_ag(&lattice)),
        ag_star: graph_section(&lattice, &build_ag_star(&lattice)),
        lattice: summary,
        clique_witness,
        localization,
    })
}

pub fn localization_section(lattice: &Lattice, at: &LocalizeAt, limits: &Limits) -> CliResult<LocalizationSection> {
    let module = lattice.module();
    let (name, set): (&'static str, MultSet) = match at {
        LocalizeAt::MinPrimes => ("min_primes", min_prime_complement(lattice)?),
        LocalizeAt::Gens(gens) => ("gens", mult_closure(module.ring(), &ring_elems(module.ring(), gens)?)?),
    };
    let localized = localize(module, &set)?;
    let image = localized.image.module().clone();
    let local_lattice = Lattice::enumerate(image.clone(), limits)?;
    let submodule_map =
        lattice.iter().map(|s| local_lattice.id_of_submodule(&localized.localize_set(s.elements()))).collect();
    let before = invariants(&build_ag(lattice));
    let after = invariants(&build_ag(&local_lattice));
    let decomposition = match at {
        LocalizeAt::MinPrimes if lattice.cyclic_generator().is_some() => {
            let d = check_product_decomposition(lattice)?;
            Some(Decomposition {
                idempotent: d.idempotent.to_string(),
                image_size: d.image_size,
                components: d
                    .components
                    .iter()
                    .map(|c| DecompositionPart { prime: c.prime, idempotent: c.idempotent.to_string(), size: c.size })
                    .collect(),
            })
        }
        _ => None,
    };
    Ok(LocalizationSection {
        at: name,
        generators: set.gens().iter().map(ToString::to_string).collect(),
        set_size: set.len(),
        contains_zero: set.contains_zero(),
        avoids_zero_divisors: avoids_zero_divisors(module, &set),
        idempotent: localized.idem.to_string(),
        image_size: localized.image.card(),
        kernel_size: localized.kernel.len(),
        image: InstanceSpec::from_module(&image),
        submodule_map,
        semiprime: lattice.is_semiprime_module(),
        clique_number: Comparison::new(before.clique_number, after.clique_number),
        chromatic_number: Comparison::new(before.chromatic_number, after.chromatic_number),
        ag_before: before,
        ag_after: after,
        decomposition,
    })
}

pub fn localize_report(spec: &InstanceSpec, at: &LocalizeAt, limits: &Limits) -> CliResult<LocalizeReport> {
    let lattice = Lattice::enumerate(spec.to_module()?, limits)?;
    Ok(LocalizeReport {
        schema: SCHEMA,
        instance: spec.clone(),
        localization: localization_section(&lattice, at, limits)?,
    })
}
