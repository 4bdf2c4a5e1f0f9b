//! Injective modules over finite rings.
//!
//! Baer's criterion reduces injectivity to extending maps out of ideals.
//! A single step `M ⊆ M₁` glues one copy of `R` onto `M` for every pair
//! `(I, φ: I → M)`, identifying `I` inside the copy with `φ(I)`; afterwards
//! every such `φ` extends to `R → M₁`. Iterating gives a chain whose union is
//! injective. At finite stages only the step property can be checked, so the
//! chain reports that property stage by stage, and a brute-force envelope
//! search serves as an independent oracle.

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite::{
    direct_sum, enumerate_ideals, hom_all, hom_from_ideal, FiniteIdeal, FiniteModule, FiniteRing,
    HomGraph, ModuleMap,
};

/// Limits for the step construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BaerOptions {
    /// Cap on the number of `(I, φ)` pairs, i.e. on glued copies of `R`.
    pub max_maps: usize,
    /// Cap on `|M₁|`. The step is verified by listing `M₁`, so this stays
    /// within the enumeration bound.
    pub max_size: u128,
}

impl Default for BaerOptions {
    fn default() -> Self {
        BaerOptions {
            max_maps: 4096,
            max_size: 1 << 16,
        }
    }
}

/// `table[r][m]` is the index of `r·m`.
fn action_table(m: &FiniteModule) -> Result<Vec<Vec<usize>>> {
    let elems = m.elements()?;
    Ok((0..m.ring().size())
        .map(|r| elems.iter().map(|v| m.index_of(&m.act(r, v))).collect())
        .collect())
}

fn image_of(map: &HomGraph, x: usize) -> usize {
    map.image(x).expect("generator lies in the ideal")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaerWitness {
    pub ideal: String,
    pub ideal_elements: Vec<usize>,
    /// `(ring element, module element)` index pairs of the map.
    pub map: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaerTest {
    pub injective: bool,
    pub ideals_checked: usize,
    pub maps_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<BaerWitness>,
}

/// Every map from every ideal into `m` extends to `R` iff `m` is injective.
pub fn baer_test(m: &FiniteModule) -> Result<BaerTest> {
    let ring = m.ring().clone();
    let table = action_table(m)?;
    let mut maps_checked = 0;
    let ideals = enumerate_ideals(&ring)?;
    for ideal in &ideals {
        let gens = ideal.generators(&ring);
        let restrictions: HashSet<Vec<usize>> = (0..table[0].len())
            .map(|x| gens.iter().map(|&g| table[g][x]).collect())
            .collect();
        for map in hom_from_ideal(&ring, ideal, m)? {
            maps_checked += 1;
            let on_gens: Vec<usize> = gens.iter().map(|&g| image_of(&map, g)).collect();
            if !restrictions.contains(&on_gens) {
                return Ok(BaerTest {
                    injective: false,
                    ideals_checked: ideals.len(),
                    maps_checked,
                    witness: Some(BaerWitness {
                        ideal: ideal.render(&ring),
                        ideal_elements: ideal.elements().to_vec(),
                        map: map.pairs,
                    }),
                });
            }
        }
    }
    Ok(BaerTest {
        injective: true,
        ideals_checked: ideals.len(),
        maps_checked,
        witness: None,
    })
}

/// One glued copy of `R`: the ideal, the map into `M`, and its copy index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    pub ideal: FiniteIdeal,
    pub map: HomGraph,
    pub copy: usize,
}

#[derive(Debug, Clone)]
pub struct BaerStepResult {
    pub input: FiniteModule,
    pub output: FiniteModule,
    pub embedding: ModuleMap,
    pub ledger: Vec<LedgerEntry>,
    /// For each ledger entry, the image of `1` of an extension `R → M₁`
    /// found by exhaustive search (the first one in element order).
    pub extensions: Vec<Option<usize>>,
    pub embedding_injective: bool,
    /// Every ledger map, composed with the embedding, extends to `R`.
    pub postcondition_holds: bool,
}

/// Every `(I, φ)` pair, ideals in enumeration order.
fn ledger(ring: &Arc<FiniteRing>, m: &FiniteModule, max_maps: usize) -> Result<Vec<LedgerEntry>> {
    let mut out = Vec::new();
    for ideal in enumerate_ideals(ring)? {
        for map in hom_from_ideal(ring, &ideal, m)? {
            if out.len() == max_maps {
                return Err(Error::bound(
                    "Baer step (ideal, map) pairs",
                    max_maps + 1,
                    max_maps,
                ));
            }
            out.push(LedgerEntry {
                ideal: ideal.clone(),
                map,
                copy: out.len(),
            });
        }
    }
    Ok(out)
}

/// `M₁ = (M ⊕ ⨁ R_i) / ⟨(φ_i(a), −a·e_i) : a ∈ I_i⟩`.
pub fn baer_step(m: &FiniteModule, options: BaerOptions) -> Result<BaerStepResult> {
    let ring = m.ring().clone();
    let ledger = ledger(&ring, m, options.max_maps)?;
    let mut parts = vec![m.clone()];
    parts.extend(std::iter::repeat_n(
        FiniteModule::regular(&ring),
        ledger.len(),
    ));
    let sum = direct_sum(&ring, &parts, u128::MAX)?;
    let big = &sum.module;
    let k = ring.rank();
    let mut relations = Vec::new();
    for entry in &ledger {
        let off = m.dim() + entry.copy * k;
        for g in entry.ideal.generators(&ring) {
            let mut v = vec![0i64; big.dim()];
            v[..m.dim()].copy_from_slice(&m.element(image_of(&entry.map, g)));
            for (j, c) in ring.element(g).iter().enumerate() {
                v[off + j] = -c;
            }
            relations.push(v);
        }
    }
    let output = big.quotient(&big.span(&relations));
    if output.size() > options.max_size {
        return Err(Error::bound(
            "Baer step module size",
            output.size().min(usize::MAX as u128) as usize,
            options.max_size as usize,
        ));
    }
    let embedding = sum.injections[0].clone();
    let embedding_injective = embedding.is_injective(m, &output)?;

    let table = action_table(&output)?;
    let mut extensions = Vec::new();
    for entry in &ledger {
        let gens = entry.ideal.generators(&ring);
        let images: Vec<usize> = gens
            .iter()
            .map(|&g| {
                output.index_of(&embedding.apply(&output, &m.element(image_of(&entry.map, g))))
            })
            .collect();
        extensions.push(extensions_first(&table, &gens, &images));
    }
    let postcondition_holds = extensions.iter().all(Option::is_some);
    Ok(BaerStepResult {
        input: m.clone(),
        output,
        embedding,
        ledger,
        extensions,
        embedding_injective,
        postcondition_holds,
    })
}

fn extensions_first(table: &[Vec<usize>], gens: &[usize], images: &[usize]) -> Option<usize> {
    let n = table.first().map_or(0, |t| t.len());
    (0..n).find(|&x| gens.iter().zip(images).all(|(&g, &img)| table[g][x] == img))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageReport {
    pub stage: usize,
    pub size: u128,
    pub maps: usize,
    pub embedding_injective: bool,
    /// Every map `I → M_k` extends to `R → M_{k+1}`.
    pub extension_property: bool,
    /// The composite `M₀ → M_{k+1}` is injective.
    pub base_embedded: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageStop {
    pub stage: usize,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct BaerChain {
    pub modules: Vec<FiniteModule>,
    pub embeddings: Vec<ModuleMap>,
    pub stages: Vec<StageReport>,
    /// Set when a bound stopped the chain before `K` steps.
    pub stopped: Option<StageStop>,
}

impl BaerChain {
    pub fn holds(&self) -> bool {
        self.stopped.is_none()
            && self
                .stages
                .iter()
                .all(|s| s.embedding_injective && s.extension_property && s.base_embedded)
    }
}

/// `M₀ ⊆ M₁ ⊆ … ⊆ M_K`, stopping early (with a marker) on a bound.
pub fn baer_chain(m: &FiniteModule, k: usize, options: BaerOptions) -> Result<BaerChain> {
    let mut chain = BaerChain {
        modules: vec![m.clone()],
        embeddings: Vec::new(),
        stages: Vec::new(),
        stopped: None,
    };
    let mut composite: Option<ModuleMap> = None;
    for stage in 0..k {
        let cur = chain.modules.last().expect("nonempty chain").clone();
        let step = match baer_step(&cur, options) {
            Ok(s) => s,
            Err(e @ (Error::Bound { .. } | Error::Resource { .. })) => {
                chain.stopped = Some(StageStop {
                    stage,
                    reason: e.to_string(),
                });
                break;
            }
            Err(e) => return Err(e),
        };
        let comp = match &composite {
            None => step.embedding.clone(),
            Some(c) => c.then(&step.embedding),
        };
        let base_embedded = comp.is_injective(m, &step.output)?;
        chain.stages.push(StageReport {
            stage,
            size: step.output.size(),
            maps: step.ledger.len(),
            embedding_injective: step.embedding_injective,
            extension_property: step.postcondition_holds,
            base_embedded,
        });
        composite = Some(comp);
        chain.embeddings.push(step.embedding);
        chain.modules.push(step.output);
    }
    Ok(chain)
}

/// Limits for the envelope search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnvelopeOptions {
    pub size_bound: u128,
    /// Largest free rank `m` whose quotients `R^m / N` are searched.
    pub max_rank: usize,
}

impl Default for EnvelopeOptions {
    fn default() -> Self {
        EnvelopeOptions {
            size_bound: 256,
            max_rank: 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Envelope {
    pub module: FiniteModule,
    pub embedding: ModuleMap,
    /// Free rank of the presentation it was found as.
    pub rank: usize,
}

#[derive(Debug, Clone)]
pub struct EnvelopeSearch {
    pub found: Option<Envelope>,
    pub candidates_examined: usize,
    /// Largest module size whose quotients were fully examined.
    pub searched_up_to: u128,
    pub options: EnvelopeOptions,
}

fn injective_embedding(m: &FiniteModule, e: &FiniteModule) -> Result<Option<ModuleMap>> {
    let em = m.elements()?;
    for h in hom_all(m, e)? {
        let mut imgs: Vec<usize> = h.pairs.iter().map(|p| p.1).collect();
        imgs.sort_unstable();
        imgs.dedup();
        if imgs.len() == em.len() {
            return Ok(Some(h.to_map(m, e)));
        }
    }
    Ok(None)
}

/// Smallest injective quotient `R^m / N` (size ascending, then `m`, then
/// submodule order) into which `m` embeds.
pub fn injective_envelope_bruteforce(
    m: &FiniteModule,
    options: EnvelopeOptions,
) -> Result<EnvelopeSearch> {
    let ring = m.ring().clone();
    let rsize = ring.size() as u128;
    let mut examined = 0;
    if m.is_zero_module() {
        return Ok(EnvelopeSearch {
            found: Some(Envelope {
                module: FiniteModule::zero(&ring),
                embedding: ModuleMap { matrix: Vec::new() },
                rank: 0,
            }),
            candidates_examined: 0,
            searched_up_to: 1,
            options,
        });
    }
    // Quotients of R^r for each rank, by size.
    let mut quotients: Vec<Vec<FiniteModule>> = Vec::new();
    for r in 0..=options.max_rank {
        if rsize.pow(r as u32) > crate::finite::module::ENUMERATION_BOUND as u128 {
            break;
        }
        let free = direct_sum(&ring, &vec![FiniteModule::regular(&ring); r], u128::MAX)?.module;
        let qs = free
            .submodules()?
            .into_iter()
            .map(|n| free.quotient(&n))
            .filter(|q| q.size() <= options.size_bound)
            .collect();
        quotients.push(qs);
    }
    let mut searched_up_to = 0;
    for size in m.size()..=options.size_bound {
        for (r, qs) in quotients.iter().enumerate() {
            for q in qs.iter().filter(|q| q.size() == size) {
                examined += 1;
                let Some(embedding) = injective_embedding(m, q)? else {
                    continue;
                };
                if baer_test(q)?.injective {
                    return Ok(EnvelopeSearch {
                        found: Some(Envelope {
                            module: q.clone(),
                            embedding,
                            rank: r,
                        }),
                        candidates_examined: examined,
                        searched_up_to: size,
                        options,
                    });
                }
            }
        }
        searched_up_to = size;
    }
    Ok(EnvelopeSearch {
        found: None,
        candidates_examined: examined,
        searched_up_to,
        options,
    })
}

#[derive(Debug, Clone)]
pub struct InjectiveResolution {
    /// `E₀, E₁, …` with `0 → M → E₀ → E₁ → …` exact.
    pub terms: Vec<FiniteModule>,
    /// The cokernel reached zero, so the resolution is finite.
    pub complete: bool,
    /// Set when an envelope search came back empty.
    pub not_found_at: Option<usize>,
}

/// Resolves by envelopes: `E₀ = E(M)`, then `E(E₀ / M)`, and so on.
pub fn injective_resolution(
    m: &FiniteModule,
    length: usize,
    options: EnvelopeOptions,
) -> Result<InjectiveResolution> {
    let mut terms = Vec::new();
    let mut cur = m.clone();
    for i in 0..length {
        if cur.is_zero_module() {
            return Ok(InjectiveResolution {
                terms,
                complete: true,
                not_found_at: None,
            });
        }
        let search = injective_envelope_bruteforce(&cur, options)?;
        let Some(env) = search.found else {
            return Ok(InjectiveResolution {
                terms,
                complete: false,
                not_found_at: Some(i),
            });
        };
        let image: Vec<Vec<i64>> = cur
            .elements()?
            .iter()
            .map(|v| env.embedding.apply(&env.module, v))
            .collect();
        let sub = env.module.span(&image);
        cur = env.module.quotient(&sub);
        terms.push(env.module);
    }
    Ok(InjectiveResolution {
        complete: cur.is_zero_module(),
        terms,
        not_found_at: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4() -> Arc<FiniteRing> {
        Arc::new(FiniteRing::zmod(4).unwrap())
    }

    #[test]
    fn baer_test_examples() {
        let r = z4();
        assert!(baer_test(&FiniteModule::regular(&r)).unwrap().injective);
        assert!(baer_test(&FiniteModule::zero(&r)).unwrap().injective);
        let t = baer_test(&FiniteModule::cyclic(&r, &[vec![2]])).unwrap();
        assert!(!t.injective);
        let w = t.witness.unwrap();
        assert_eq!(w.ideal, "(2)");
        // 2 ↦ the nonzero element of Z/2.
        assert_eq!(w.map, vec![(0, 0), (2, 1)]);
    }

    #[test]
    fn step_from_zero_has_size_eight() {
        let r = z4();
        let s = baer_step(&FiniteModule::zero(&r), BaerOptions::default()).unwrap();
        assert_eq!(s.ledger.len(), 3);
        assert_eq!(s.output.size(), 8);
        assert!(s.postcondition_holds && s.embedding_injective);
        let expected = FiniteModule::sum_of_cyclics(&r, &[vec![], vec![vec![2]]]).unwrap();
        assert!(s.output.is_isomorphic(&expected).unwrap());
    }

    #[test]
    fn step_on_injective_module_splits() {
        let r = z4();
        let m = FiniteModule::regular(&r);
        let s = baer_step(&m, BaerOptions::default()).unwrap();
        assert!(s.postcondition_holds && s.embedding_injective);
        // A retraction M₁ → M with p∘ι = id exists.
        let id: Vec<usize> = (0..4).collect();
        let split = hom_all(&s.output, &m).unwrap().into_iter().any(|p| {
            let p = p.to_map(&s.output, &m);
            let comp = s.embedding.then(&p);
            id.iter()
                .all(|&x| m.index_of(&comp.apply(&m, &m.element(x))) == x)
        });
        assert!(split);
    }

    #[test]
    fn chain_over_z4() {
        let r = z4();
        let m = FiniteModule::cyclic(&r, &[vec![2]]);
        let c = baer_chain(&m, 2, BaerOptions::default()).unwrap();
        assert!(c.holds(), "{:?} {:?}", c.stages, c.stopped);
        assert_eq!(c.modules.len(), 3);
        assert_eq!(c.stages[0].size, 32);
        let c0 = baer_chain(&m, 0, BaerOptions::default()).unwrap();
        assert_eq!(c0.modules.len(), 1);
        assert!(c0.holds());
        let tight = BaerOptions {
            max_maps: 4096,
            max_size: 64,
        };
        let c = baer_chain(&m, 2, tight).unwrap();
        assert_eq!(c.stopped.as_ref().map(|s| s.stage), Some(1));
        assert_eq!(c.modules.len(), 2);
    }

    #[test]
    fn envelopes() {
        let r = z4();
        let z2 = FiniteModule::cyclic(&r, &[vec![2]]);
        let e = injective_envelope_bruteforce(&z2, EnvelopeOptions::default()).unwrap();
        let found = e.found.unwrap();
        assert!(found
            .module
            .is_isomorphic(&FiniteModule::regular(&r))
            .unwrap());
        let e =
            injective_envelope_bruteforce(&FiniteModule::regular(&r), EnvelopeOptions::default())
                .unwrap();
        assert_eq!(e.found.unwrap().module.size(), 4);
        let e = injective_envelope_bruteforce(&FiniteModule::zero(&r), EnvelopeOptions::default())
            .unwrap();
        assert_eq!(e.found.unwrap().module.size(), 1);
    }

    #[test]
    fn resolution_of_z2_is_periodic() {
        let r = z4();
        let z2 = FiniteModule::cyclic(&r, &[vec![2]]);
        let res = injective_resolution(&z2, 3, EnvelopeOptions::default()).unwrap();
        assert_eq!(res.terms.len(), 3);
        assert!(!res.complete);
        assert!(res.terms.iter().all(|t| t.size() == 4));
        let res = injective_resolution(&FiniteModule::regular(&r), 3, EnvelopeOptions::default())
            .unwrap();
        assert_eq!(res.terms.len(), 1);
        assert!(res.complete);
    }
}
