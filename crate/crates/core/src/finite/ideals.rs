//! Ideals of finite rings: enumeration, primes, Noetherian witnesses and
//! Hom sets out of ideals.

use std::sync::Arc;

use serde::Serialize;

use super::lattice::Lattice;
use super::module::{hom_graphs, FiniteModule, HomGraph};
use super::ring::FiniteRing;
use crate::error::{Error, Result};

/// An ideal of a finite ring, stored as its full element set (ring
/// indices, ascending) together with its lattice in the regular module.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteIdeal {
    lattice: Lattice,
    elements: Vec<usize>,
}

impl FiniteIdeal {
    fn from_lattice(ring: &FiniteRing, lattice: Lattice) -> Self {
        let elements = (0..ring.size())
            .filter(|&i| lattice.contains(ring.element(i)))
            .collect();
        FiniteIdeal { lattice, elements }
    }

    /// Checks closure under addition and multiplication by ring elements.
    pub fn from_elements(ring: &FiniteRing, elements: &[usize]) -> Result<Self> {
        let mut set = vec![false; ring.size()];
        for &e in elements {
            if e >= ring.size() {
                return Err(Error::validation(format!(
                    "element index {e} is outside {}",
                    ring.label()
                )));
            }
            set[e] = true;
        }
        if !set[ring.zero()] {
            return Err(Error::validation("subset does not contain 0"));
        }
        for &a in elements {
            for &b in elements {
                if !set[ring.add(a, b)] {
                    return Err(Error::validation(format!(
                        "subset is not closed under addition: {} + {}",
                        ring.render(a),
                        ring.render(b)
                    )));
                }
            }
            for r in 0..ring.size() {
                if !set[ring.mul(r, a)] {
                    return Err(Error::validation(format!(
                        "subset is not closed under scaling: {} * {}",
                        ring.render(r),
                        ring.render(a)
                    )));
                }
            }
        }
        let gens: Vec<Vec<i64>> = elements.iter().map(|&e| ring.element(e).to_vec()).collect();
        let lattice = ring.group().extended(&gens);
        Ok(Self::from_lattice(ring, lattice))
    }

    /// The ideal generated by the given ring elements.
    pub fn generated_by(ring: &Arc<FiniteRing>, gens: &[usize]) -> Self {
        let reg = FiniteModule::regular(ring);
        let vecs: Vec<Vec<i64>> = gens.iter().map(|&g| ring.element(g).to_vec()).collect();
        Self::from_lattice(ring, reg.span(&vecs))
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subset(&self, other: &FiniteIdeal) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// Greedy generators: scan elements in index order and keep each one
    /// not already in the ideal generated so far.
    pub fn generators(&self, ring: &Arc<FiniteRing>) -> Vec<usize> {
        let reg = FiniteModule::regular(ring);
        reg.generators_of(&self.lattice)
            .expect("ring is enumerable")
            .iter()
            .map(|v| ring.index_of(v))
            .collect()
    }

    pub fn render(&self, ring: &Arc<FiniteRing>) -> String {
        let gens = self.generators(ring);
        if gens.is_empty() {
            return "(0)".to_string();
        }
        format!(
            "({})",
            gens.iter()
                .map(|&g| ring.render(g))
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

/// Every ideal, ordered by size and then by element set.
pub fn enumerate_ideals(ring: &Arc<FiniteRing>) -> Result<Vec<FiniteIdeal>> {
    let reg = FiniteModule::regular(ring);
    let mut out: Vec<FiniteIdeal> = reg
        .submodules()?
        .into_iter()
        .map(|l| FiniteIdeal::from_lattice(ring, l))
        .collect();
    out.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.elements.cmp(&b.elements))
    });
    Ok(out)
}

pub fn is_prime(ring: &FiniteRing, ideal: &FiniteIdeal) -> bool {
    if ideal.len() == ring.size() {
        return false;
    }
    for a in 0..ring.size() {
        if ideal.contains(a) {
            continue;
        }
        for b in 0..ring.size() {
            if !ideal.contains(b) && ideal.contains(ring.mul(a, b)) {
                return false;
            }
        }
    }
    true
}

/// The prime ideals.
pub fn enumerate_spec(ring: &Arc<FiniteRing>) -> Result<Vec<FiniteIdeal>> {
    Ok(enumerate_ideals(ring)?
        .into_iter()
        .filter(|i| is_prime(ring, i))
        .collect())
}

/// Families larger than this are not checked subset by subset.
pub const SUBFAMILY_CHECK_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NoetherianReport {
    /// Greedy generator list of each family member.
    pub generators: Vec<Vec<usize>>,
    /// Number of ideals in a longest strictly increasing chain drawn from
    /// the family.
    pub longest_strict_chain: usize,
    pub ideal_count: usize,
    pub chain_bound_holds: bool,
    /// Positions in the family of its maximal members.
    pub maximal: Vec<usize>,
    /// Whether every nonempty subfamily was checked to have a maximal
    /// member; `None` when the family exceeds the subset-check limit.
    pub every_subfamily_has_maximal: Option<bool>,
}

/// Checks the three Noetherian conditions on an explicit family of
/// ideals given by element sets.
pub fn noetherian_witness(
    ring: &Arc<FiniteRing>,
    family: &[Vec<usize>],
) -> Result<NoetherianReport> {
    if family.is_empty() {
        return Err(Error::validation("the family of ideals must be nonempty"));
    }
    let ideals: Vec<FiniteIdeal> = family
        .iter()
        .map(|s| FiniteIdeal::from_elements(ring, s))
        .collect::<Result<_>>()?;
    let n = ideals.len();
    let sub: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| ideals[i].is_subset(&ideals[j])).collect())
        .collect();
    let strict = |i: usize, j: usize| sub[i][j] && !sub[j][i];

    // Longest chain by dynamic programming over increasing size.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| ideals[i].len());
    let mut best = vec![1usize; n];
    for (pos, &j) in order.iter().enumerate() {
        for &i in &order[..pos] {
            if strict(i, j) {
                best[j] = best[j].max(best[i] + 1);
            }
        }
    }
    let longest = best.iter().copied().max().unwrap_or(0);
    let ideal_count = enumerate_ideals(ring)?.len();

    let maximal_in = |mask: u64| -> Vec<usize> {
        (0..n)
            .filter(|&i| mask >> i & 1 == 1)
            .filter(|&i| !(0..n).any(|j| mask >> j & 1 == 1 && strict(i, j)))
            .collect()
    };
    let maximal = if n < 64 {
        maximal_in((1u64 << n) - 1)
    } else {
        Vec::new()
    };
    let every = if n <= SUBFAMILY_CHECK_LIMIT {
        Some((1u64..(1u64 << n)).all(|mask| !maximal_in(mask).is_empty()))
    } else {
        None
    };
    Ok(NoetherianReport {
        generators: ideals.iter().map(|i| i.generators(ring)).collect(),
        longest_strict_chain: longest,
        ideal_count,
        chain_bound_holds: longest <= ideal_count,
        maximal,
        every_subfamily_has_maximal: every,
    })
}

/// Every linear map `I -> M`, as graphs on the elements of `I`.
pub fn hom_from_ideal(
    ring: &Arc<FiniteRing>,
    ideal: &FiniteIdeal,
    module: &FiniteModule,
) -> Result<Vec<HomGraph>> {
    let reg = FiniteModule::regular(ring);
    hom_graphs(&reg, ideal.lattice(), module)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> Arc<FiniteRing> {
        Arc::new(FiniteRing::zmod(n).unwrap())
    }

    /// Independent oracle: close every subset of Z/n under the module
    /// operations and collect the distinct results.
    fn closure_oracle(n: usize) -> Vec<Vec<usize>> {
        let mut found = std::collections::BTreeSet::new();
        for mask in 0u32..(1 << n) {
            let mut set: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            set[0] = true;
            loop {
                let mut changed = false;
                for a in 0..n {
                    for b in 0..n {
                        if set[a] && set[b] && !set[(a + b) % n] {
                            set[(a + b) % n] = true;
                            changed = true;
                        }
                        if set[a] && !set[(a * b) % n] {
                            set[(a * b) % n] = true;
                            changed = true;
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
            found.insert((0..n).filter(|&i| set[i]).collect::<Vec<_>>());
        }
        found.into_iter().collect()
    }

    #[test]
    fn ideals_of_z8() {
        let r = z(8);
        let ideals = enumerate_ideals(&r).unwrap();
        let names: Vec<String> = ideals.iter().map(|i| i.render(&r)).collect();
        assert_eq!(names, ["(0)", "(4)", "(2)", "(1)"]);
    }

    #[test]
    fn ideal_counts_match_closure_oracle() {
        for n in [6usize, 8, 9, 10, 12] {
            let r = z(n as u64);
            let mut ours: Vec<Vec<usize>> = enumerate_ideals(&r)
                .unwrap()
                .iter()
                .map(|i| {
                    i.elements()
                        .iter()
                        .map(|&e| r.element(e)[0] as usize)
                        .collect::<Vec<_>>()
                })
                .map(|mut v| {
                    v.sort();
                    v
                })
                .collect();
            ours.sort();
            assert_eq!(ours, closure_oracle(n), "Z/{n}");
        }
    }

    #[test]
    fn field_has_two_ideals() {
        assert_eq!(enumerate_ideals(&z(5)).unwrap().len(), 2);
        let f4 = Arc::new(FiniteRing::fp_quotient(2, &[1, 1, 1]).unwrap());
        assert_eq!(enumerate_ideals(&f4).unwrap().len(), 2);
    }

    #[test]
    fn spectra() {
        let show = |n| {
            let r = z(n);
            enumerate_spec(&r)
                .unwrap()
                .iter()
                .map(|i| i.render(&r))
                .collect::<Vec<_>>()
        };
        assert_eq!(show(8), ["(2)"]);
        let mut s6 = show(6);
        s6.sort();
        assert_eq!(s6, ["(2)", "(3)"]);
        assert_eq!(show(5), ["(0)"]);
    }

    #[test]
    fn noetherian_report_on_z8() {
        let r = z(8);
        let rep = noetherian_witness(&r, &[vec![0], vec![0, 4], vec![0, 2, 4, 6]]).unwrap();
        assert_eq!(rep.longest_strict_chain, 3);
        assert_eq!(rep.maximal, vec![2]);
        assert_eq!(rep.ideal_count, 4);
        assert!(rep.chain_bound_holds);
        assert_eq!(rep.every_subfamily_has_maximal, Some(true));
        assert_eq!(rep.generators[2], vec![r.index_of(&[2])]);
    }

    #[test]
    fn noetherian_report_on_z6_has_two_maxima() {
        let r = z(6);
        let rep = noetherian_witness(&r, &[vec![0, 2, 4], vec![0, 3]]).unwrap();
        assert_eq!(rep.maximal, vec![0, 1]);
        assert_eq!(rep.longest_strict_chain, 1);
    }

    #[test]
    fn noetherian_witness_rejects_bad_input() {
        let r = z(6);
        assert!(matches!(
            noetherian_witness(&r, &[]),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            noetherian_witness(&r, &[vec![0, 1]]),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn homs_from_ideals_of_z4() {
        let r = z(4);
        let ideals = enumerate_ideals(&r).unwrap();
        let z2 = FiniteModule::cyclic(&r, &[vec![2]]);
        let counts: Vec<usize> = ideals
            .iter()
            .map(|i| hom_from_ideal(&r, i, &z2).unwrap().len())
            .collect();
        // (0), (2), (1)
        assert_eq!(counts, [1, 2, 2]);
        // Exhaustive check of the two candidate maps (2) -> Z/2.
        for h in hom_from_ideal(&r, &ideals[1], &z2).unwrap() {
            for &(a, fa) in &h.pairs {
                for &(b, fb) in &h.pairs {
                    let s = h.image(r.add(a, b)).unwrap();
                    assert_eq!(z2.index_of(&z2.add(&z2.element(fa), &z2.element(fb))), s);
                }
            }
        }
    }

    #[test]
    fn hom_count_independent_of_generating_set() {
        let r = z(12);
        let m = FiniteModule::cyclic(&r, &[vec![4]]);
        let a = FiniteIdeal::generated_by(&r, &[r.index_of(&[2])]);
        let b = FiniteIdeal::generated_by(&r, &[r.index_of(&[4]), r.index_of(&[6])]);
        assert_eq!(a, b);
        assert_eq!(
            hom_from_ideal(&r, &a, &m).unwrap().len(),
            hom_from_ideal(&r, &b, &m).unwrap().len()
        );
    }
}
