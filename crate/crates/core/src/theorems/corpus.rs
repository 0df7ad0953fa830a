use serde::{Deserialize, Serialize};

use crate::arith::{divisors, is_prime};
use crate::finmod::{Factor, Module};
use crate::finring::Ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Cyclic,
    Product,
    Split,
    Tower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Families {
    pub cyclic: bool,
    pub product: bool,
    pub split: bool,
    pub tower: bool,
}

impl Default for Families {
    fn default() -> Self {
        Families { cyclic: true, product: true, split: true, tower: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusSpec {
    pub max_ring_card: u64,
    pub max_module_card: usize,
    #[serde(default)]
    pub families: Families,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec { max_ring_card: 36, max_module_card: 128, families: Families::default() }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusInstance {
    pub id: String,
    pub family: Family,
    pub module: Module,
}

/// Stable text encoding: `Z2xZ4|2@0,4@1`.
pub fn instance_id(module: &Module) -> String {
    let ring: Vec<String> = module.ring().moduli().iter().map(|n| format!("Z{n}")).collect();
    let factors: Vec<String> = module.factors().iter().map(|f| format!("{}@{}", f.d, f.c)).collect();
    format!("{}|{}", ring.join("x"), factors.join(","))
}

/// Deterministic corpus, sorted by ring moduli and then factors, without
/// duplicates (the first family to produce an instance names it).
pub fn generate_corpus(spec: &CorpusSpec) -> Vec<CorpusInstance> {
    let mut raw: Vec<(Family, Vec<u64>, Vec<Factor>)> = Vec::new();
    let fits = |moduli: &[u64], factors: &[Factor]| {
        moduli.iter().product::<u64>() <= spec.max_ring_card
            && factors.iter().map(|f| f.d).product::<u64>() <= spec.max_module_card as u64
            && !factors.is_empty()
    };
    let mut push = |family, moduli: Vec<u64>, factors: Vec<Factor>| {
        if fits(&moduli, &factors) {
            raw.push((family, moduli, factors));
        }
    };

    if spec.families.cyclic {
        for n in 2..=spec.max_ring_card {
            for m in divisors(n).into_iter().filter(|&m| m > 1) {
                push(Family::Cyclic, vec![n], vec![Factor { d: m, c: 0 }]);
            }
        }
    }
    if spec.families.product {
        for a in 2..=16u64 {
            for b in a..=16u64 {
                for d1 in divisors(a) {
                    for d2 in divisors(b) {
                        let factors: Vec<Factor> = [(d1, 0), (d2, 1)]
                            .into_iter()
                            .filter(|&(d, _)| d > 1)
                            .map(|(d, c)| Factor { d, c })
                            .collect();
                        push(Family::Product, vec![a, b], factors);
                    }
                }
            }
        }
    }
    if spec.families.split {
        let primes: Vec<u64> = (2..=spec.max_ring_card).filter(|&p| is_prime(p)).collect();
        for &p in &primes {
            for &q in &primes {
                // F × S with S = Z_{q²} over Z_{q^j}
                for j in 2..=3u32 {
                    push(Family::Split, vec![p, q.pow(j)], vec![Factor { d: p, c: 0 }, Factor { d: q * q, c: 1 }]);
                }
                // F × D with D = Z_q^k over Z_q
                for k in 1..=3usize {
                    let mut factors = vec![Factor { d: p, c: 0 }];
                    factors.extend(std::iter::repeat_n(Factor { d: q, c: 1 }, k));
                    push(Family::Split, vec![p, q], factors);
                }
            }
        }
    }
    if spec.families.tower {
        for p in (2..=spec.max_ring_card).filter(|&p| is_prime(p)) {
            let mut k = 1u32;
            while p.pow(k) <= spec.max_ring_card {
                for i in 1..=k {
                    for j in i..=k {
                        push(
                            Family::Tower,
                            vec![p.pow(k)],
                            vec![Factor { d: p.pow(i), c: 0 }, Factor { d: p.pow(j), c: 0 }],
                        );
                    }
                }
                k += 1;
            }
        }
    }

    raw.sort_by(|a, b| {
        (&a.1, a.2.iter().map(|f| (f.d, f.c)).collect::<Vec<_>>())
            .cmp(&(&b.1, b.2.iter().map(|f| (f.d, f.c)).collect::<Vec<_>>()))
            .then(a.0.cmp(&b.0))
    });
    raw.dedup_by(|a, b| a.1 == b.1 && a.2 == b.2);
    raw.into_iter()
        .map(|(family, moduli, factors)| {
            let ring = Ring::new(moduli).expect("corpus moduli are at least 2");
            let module = Module::new(ring, factors).expect("corpus factors are valid");
            CorpusInstance { id: instance_id(&module), family, module }
        })
        .collect()
}
