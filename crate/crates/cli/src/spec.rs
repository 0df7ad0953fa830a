use std::path::Path;

use agmod_core::{Factor, Module, Ring, RingElem};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const SCHEMA: u32 = 1;

fn schema_version() -> u32 {
    SCHEMA
}

fn yes() -> bool {
    true
}

/// A module `Z_{d_1} x ... x Z_{d_m}` over `Z_{n_1} x ... x Z_{n_k}`, plus
/// analysis toggles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    #[serde(default = "schema_version")]
    pub schema: u32,
    pub ring: Vec<u64>,
    pub module: Vec<Factor>,
    #[serde(default)]
    pub options: AnalysisOptions,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisOptions {
    /// Localize at the complement of the minimal-prime colons.
    #[serde(default)]
    pub localize_at_min_primes: bool,
    /// Localize at the multiplicative set generated by these ring elements.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub localize_gens: Option<Vec<Vec<u64>>>,
    /// Include the minimal-prime clique witness for cyclic modules.
    #[serde(default = "yes")]
    pub clique_witness: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { localize_at_min_primes: false, localize_gens: None, clique_witness: true }
    }
}

/// Where to localize, after merging spec options and command-line flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalizeAt {
    MinPrimes,
    Gens(Vec<Vec<u64>>),
}

impl AnalysisOptions {
    pub fn localize_at(&self) -> CliResult<Option<LocalizeAt>> {
        match (self.localize_at_min_primes, &self.localize_gens) {
            (true, Some(_)) => {
                Err(CliError::Usage("localize_at_min_primes and localize_gens are mutually exclusive".into()))
            }
            (true, None) => Ok(Some(LocalizeAt::MinPrimes)),
            (false, Some(gens)) => Ok(Some(LocalizeAt::Gens(gens.clone()))),
            (false, None) => Ok(None),
        }
    }
}

impl InstanceSpec {
    pub fn new(ring: Vec<u64>, module: Vec<Factor>) -> Self {
        InstanceSpec { schema: SCHEMA, ring, module, options: AnalysisOptions::default() }
    }

    pub fn from_module(module: &Module) -> Self {
        InstanceSpec::new(module.ring().moduli().to_vec(), module.factors().to_vec())
    }

    pub fn parse(text: &str, origin: &str) -> CliResult<Self> {
        let spec: InstanceSpec =
            serde_json::from_str(text).map_err(|source| CliError::Parse { path: origin.to_string(), source })?;
        if spec.schema != SCHEMA {
            return Err(CliError::Usage(format!("{origin}: unsupported schema {} (expected {SCHEMA})", spec.schema)));
        }
        Ok(spec)
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let origin = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: origin.clone(), source })?;
        InstanceSpec::parse(&text, &origin)
    }

    pub fn to_module(&self) -> CliResult<Module> {
        let ring = Ring::new(self.ring.clone())?;
        Ok(Module::new(ring, self.module.clone())?)
    }
}

/// Parses `3,5` or `(1,0),(0,3)` into residue tuples.
pub fn parse_gens(text: &str) -> CliResult<Vec<Vec<u64>>> {
    let bad = |why: &str| CliError::Usage(format!("invalid generator list {text:?}: {why}"));
    let mut items = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for ch in text.chars() {
        match ch {
            '(' => {
                depth += 1;
                if depth > 1 {
                    return Err(bad("nested parentheses"));
                }
                current.push(ch);
            }
            ')' => {
                depth = depth.checked_sub(1).ok_or_else(|| bad("unbalanced ')'"))?;
                current.push(ch);
            }
            ',' if depth == 0 => items.push(std::mem::take(&mut current)),
            _ => current.push(ch),
        }
    }
    if depth != 0 {
        return Err(bad("unbalanced '('"));
    }
    items.push(current);

    items
        .iter()
        .map(|item| {
            let item = item.trim();
            let inner = match item.strip_prefix('(') {
                Some(rest) => rest.strip_suffix(')').ok_or_else(|| bad("text after ')'"))?,
                None => item,
            };
            inner
                .split(',')
                .map(|r| r.trim().parse::<u64>().map_err(|_| bad(&format!("{r:?} is not a residue"))))
                .collect()
        })
        .collect()
}

/// Ring elements for residue tuples; residues must be in range.
pub fn ring_elems(ring: &Ring, gens: &[Vec<u64>]) -> CliResult<Vec<RingElem>> {
    Ok(gens.iter().map(|g| ring.elem(g.clone())).collect::<agmod_core::Result<_>>()?)
}
