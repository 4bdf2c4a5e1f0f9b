//! Counting the valid digraphs over a finite node vocabulary.
//!
//! A vocabulary is a list of distinct nonempty opens (the first one is the
//! whole space) with candidate local ideals on each. A valid digraph picks
//! the root ideal, at most one node per other open, and for every non-root
//! node a nonempty set of admissible parents. Because admissible edges go
//! strictly down in the opens, any such choice is acyclic and every node is
//! reachable from the root, so the count is
//! `Σ_selections Π_{v ≠ root} (2^{#admissible parents of v} − 1)`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite::{enumerate_ideals, enumerate_spec, FiniteIdeal, FiniteRing};
use crate::ring::{IdealHandle, RingRef};
use crate::topology::DistinguishedOpen;

/// Cap on the number of node selections examined.
pub const SELECTION_BOUND: u128 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DigraphSpaceCount {
    pub opens: usize,
    /// Candidate ideals per open, in open order.
    pub ideals_per_open: Vec<usize>,
    pub count: u128,
}

/// `below[a][b]`: open `b` is strictly inside open `a`.
/// `edge_ok(a, i, b, j)`: ideal `j` on `b` strictly exceeds ideal `i` on `a`
/// localized to `b`.
struct Vocabulary<F: Fn(usize, usize, usize, usize) -> bool> {
    ideals: Vec<usize>,
    below: Vec<Vec<bool>>,
    edge_ok: F,
}

impl<F: Fn(usize, usize, usize, usize) -> bool> Vocabulary<F> {
    fn count(&self) -> Result<u128> {
        let selections: u128 = self.ideals[0] as u128
            * self.ideals[1..]
                .iter()
                .map(|&k| k as u128 + 1)
                .product::<u128>();
        if selections > SELECTION_BOUND {
            return Err(Error::bound(
                "digraph node selections",
                selections as usize,
                SELECTION_BOUND as usize,
            ));
        }
        let mut choice: Vec<Option<usize>> = vec![None; self.ideals.len()];
        let mut total = 0u128;
        self.walk(0, &mut choice, &mut total);
        Ok(total)
    }

    fn walk(&self, o: usize, choice: &mut Vec<Option<usize>>, total: &mut u128) {
        if o == self.ideals.len() {
            let mut product = 1u128;
            for b in 1..choice.len() {
                let Some(j) = choice[b] else { continue };
                let parents = (0..choice.len())
                    .filter(|&a| self.below[a][b])
                    .filter(|&a| choice[a].is_some_and(|i| (self.edge_ok)(a, i, b, j)))
                    .count();
                product *= (1u128 << parents) - 1;
                if product == 0 {
                    return;
                }
            }
            *total += product;
            return;
        }
        if o > 0 {
            choice[o] = None;
            self.walk(o + 1, choice, total);
        }
        for i in 0..self.ideals[o] {
            choice[o] = Some(i);
            self.walk(o + 1, choice, total);
        }
        choice[o] = None;
    }
}

/// `{x : f^k x ∈ J for some k}`.
fn saturate(ring: &FiniteRing, ideal: &FiniteIdeal, f: usize) -> Vec<usize> {
    let n = ring.size();
    let mut powers = vec![ring.one()];
    loop {
        let next = ring.mul(*powers.last().unwrap(), f);
        if powers.contains(&next) {
            break;
        }
        powers.push(next);
    }
    (0..n)
        .filter(|&x| powers.iter().any(|&p| ideal.contains(ring.mul(p, x))))
        .collect()
}

/// Opens are the distinct nonempty sets `D(f)` of primes; each carries the
/// ideals of `R` saturated with respect to `f`, which are the ideals of `R_f`.
pub fn count_finite_digraph_space(ring: &Arc<FiniteRing>) -> Result<DigraphSpaceCount> {
    let spec = enumerate_spec(ring)?;
    let ideals = enumerate_ideals(ring)?;
    // Mask of primes not containing f, with the first f realizing it.
    let mut opens: Vec<(u32, usize)> = Vec::new();
    for f in 0..ring.size() {
        let mask = spec
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.contains(f))
            .fold(0u32, |m, (k, _)| m | 1 << k);
        if mask != 0 && !opens.iter().any(|o| o.0 == mask) {
            opens.push((mask, f));
        }
    }
    let full = ((1u64 << spec.len()) - 1) as u32;
    opens.sort_by_key(|o| (o.0 != full, std::cmp::Reverse(o.0.count_ones()), o.0));
    let local: Vec<Vec<&FiniteIdeal>> = opens
        .iter()
        .map(|&(_, f)| {
            ideals
                .iter()
                .filter(|j| saturate(ring, j, f) == j.elements())
                .collect()
        })
        .collect();
    let below: Vec<Vec<bool>> = opens
        .iter()
        .map(|a| {
            opens
                .iter()
                .map(|b| b.0 != a.0 && b.0 & !a.0 == 0)
                .collect()
        })
        .collect();
    let vocab = Vocabulary {
        ideals: local.iter().map(|l| l.len()).collect(),
        below,
        edge_ok: |a: usize, i: usize, b: usize, j: usize| {
            let restricted = saturate(ring, local[a][i], opens[b].1);
            let child = local[b][j];
            restricted.len() < child.len() && restricted.iter().all(|&x| child.contains(x))
        },
    };
    Ok(DigraphSpaceCount {
        opens: opens.len(),
        ideals_per_open: vocab.ideals.clone(),
        count: vocab.count()?,
    })
}

/// Vocabulary given by candidate opens and candidate ideals of a presented
/// ring. Opens are deduplicated up to equality and empty ones dropped; on
/// each open the candidate ideals are deduplicated as ideals of the
/// coordinate ring.
pub fn count_digraph_space(
    ring: &RingRef,
    opens: &[DistinguishedOpen],
    ideals: &[IdealHandle],
) -> Result<DigraphSpaceCount> {
    if opens.is_empty() || ideals.is_empty() {
        return Err(Error::domain("empty digraph vocabulary"));
    }
    let whole = DistinguishedOpen::whole(ring);
    let mut distinct: Vec<DistinguishedOpen> = Vec::new();
    for u in opens {
        if u.is_empty()? {
            continue;
        }
        let mut seen = false;
        for v in &distinct {
            if v.equals(u)? {
                seen = true;
                break;
            }
        }
        if !seen {
            distinct.push(u.clone());
        }
    }
    let Some(root_pos) = distinct
        .iter()
        .position(|u| u.equals(&whole).unwrap_or(false))
    else {
        return Err(Error::domain(
            "the vocabulary must contain the whole space D(1)",
        ));
    };
    distinct.swap(0, root_pos);
    let mut local: Vec<Vec<IdealHandle>> = Vec::new();
    for u in &distinct {
        let cr = u.coordinate_ring()?;
        let mut here: Vec<IdealHandle> = Vec::new();
        for i in ideals {
            let e = i.extend_to(&cr)?;
            let mut seen = false;
            for h in &here {
                if h.equals(&e)? {
                    seen = true;
                    break;
                }
            }
            if !seen {
                here.push(e);
            }
        }
        local.push(here);
    }
    let n = distinct.len();
    let mut below = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            below[a][b] = a != b && distinct[a].strictly_contains(&distinct[b])?;
        }
    }
    // Precompute admissible edges so the closure stays infallible.
    let mut ok = std::collections::HashMap::new();
    for a in 0..n {
        for b in 0..n {
            if !below[a][b] {
                continue;
            }
            let cr = distinct[b].coordinate_ring()?;
            for (i, parent) in local[a].iter().enumerate() {
                let restricted = parent.extend_to(&cr)?;
                for (j, child) in local[b].iter().enumerate() {
                    let strict =
                        child.contains_ideal(&restricted)? && !child.equals(&restricted)?;
                    ok.insert((a, i, b, j), strict);
                }
            }
        }
    }
    let vocab = Vocabulary {
        ideals: local.iter().map(|l| l.len()).collect(),
        below,
        edge_ok: |a: usize, i: usize, b: usize, j: usize| {
            ok.get(&(a, i, b, j)).copied().unwrap_or(false)
        },
    };
    Ok(DigraphSpaceCount {
        opens: n,
        ideals_per_open: vocab.ideals.clone(),
        count: vocab.count()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::ring::PresentedRing;

    #[test]
    fn zmod4_has_one_digraph_per_ideal() {
        let r = Arc::new(FiniteRing::zmod(4).unwrap());
        let c = count_finite_digraph_space(&r).unwrap();
        assert_eq!((c.opens, c.count), (1, 3));
    }

    /// Brute force over node selections and all edge subsets, checking the
    /// invariants directly (reachability by search).
    fn brute_force(ring: &Arc<FiniteRing>) -> u128 {
        let spec = enumerate_spec(ring).unwrap();
        let ideals = enumerate_ideals(ring).unwrap();
        let mut nodes: Vec<(u32, usize, Vec<usize>)> = Vec::new();
        for f in 0..ring.size() {
            let mask = spec
                .iter()
                .enumerate()
                .filter(|(_, p)| !p.contains(f))
                .fold(0u32, |m, (k, _)| m | 1 << k);
            if mask == 0 {
                continue;
            }
            for j in &ideals {
                let sat = saturate(ring, j, f);
                if nodes.iter().any(|n| n.0 == mask && n.2 == sat) {
                    continue;
                }
                nodes.push((mask, f, sat));
            }
        }
        let full = ((1u64 << spec.len()) - 1) as u32;
        let mut total = 0;
        for sel in 1u32..(1 << nodes.len()) {
            let chosen: Vec<usize> = (0..nodes.len()).filter(|&k| sel >> k & 1 == 1).collect();
            let roots: Vec<usize> = chosen
                .iter()
                .copied()
                .filter(|&k| nodes[k].0 == full)
                .collect();
            if roots.len() != 1 {
                continue;
            }
            let masks: Vec<u32> = chosen.iter().map(|&k| nodes[k].0).collect();
            if (1..masks.len()).any(|i| masks[..i].contains(&masks[i])) {
                continue;
            }
            let pairs: Vec<(usize, usize)> = chosen
                .iter()
                .flat_map(|&a| chosen.iter().map(move |&b| (a, b)))
                .filter(|&(a, b)| a != b)
                .collect();
            for emask in 0u64..(1 << pairs.len()) {
                let edges: Vec<(usize, usize)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| emask >> i & 1 == 1)
                    .map(|(_, e)| *e)
                    .collect();
                let valid_edge = |&(a, b): &(usize, usize)| {
                    let (ma, mb) = (nodes[a].0, nodes[b].0);
                    let restricted = saturate(
                        ring,
                        &FiniteIdeal::from_elements(ring, &nodes[a].2).unwrap(),
                        nodes[b].1,
                    );
                    mb != ma
                        && mb & !ma == 0
                        && restricted.len() < nodes[b].2.len()
                        && restricted.iter().all(|x| nodes[b].2.contains(x))
                        && b != roots[0]
                };
                if !edges.iter().all(valid_edge) {
                    continue;
                }
                let mut seen = vec![roots[0]];
                let mut stack = vec![roots[0]];
                while let Some(a) = stack.pop() {
                    for &(x, y) in &edges {
                        if x == a && !seen.contains(&y) {
                            seen.push(y);
                            stack.push(y);
                        }
                    }
                }
                if seen.len() == chosen.len() {
                    total += 1;
                }
            }
        }
        total
    }

    #[test]
    fn matches_brute_force() {
        for n in [2u64, 4, 6, 8, 10, 12] {
            let r = Arc::new(FiniteRing::zmod(n).unwrap());
            assert_eq!(
                count_finite_digraph_space(&r).unwrap().count,
                brute_force(&r),
                "Z/{n}"
            );
        }
        assert_eq!(
            count_finite_digraph_space(&Arc::new(FiniteRing::zmod(6).unwrap()))
                .unwrap()
                .count,
            9
        );
    }

    #[test]
    fn presented_vocabulary() {
        let r = PresentedRing::polynomial(Field::Rationals, &["x"]).unwrap();
        let opens: Vec<DistinguishedOpen> = ["1", "x", "x^2"]
            .iter()
            .map(|f| DistinguishedOpen::parse(&r, f).unwrap())
            .collect();
        let ideals = vec![r.ideal_strs(&["0"]).unwrap(), r.ideal_strs(&["1"]).unwrap()];
        // Roots (0) or (1); a D(x) node only below (0) and only with (1).
        let c = count_digraph_space(&r, &opens, &ideals).unwrap();
        assert_eq!(c.opens, 2);
        assert_eq!(c.count, 3);
        assert!(matches!(
            count_digraph_space(&r, &[], &ideals),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            count_digraph_space(&r, &opens[1..], &ideals),
            Err(Error::Domain(_))
        ));
    }
}
