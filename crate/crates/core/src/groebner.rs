//! Buchberger's algorithm with the product and chain criteria.
//!
//! Polynomials are converted into term vectors sorted by the active monomial
//! order for the duration of a computation; all basis elements are kept
//! monic so reduction never divides.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Coeff, Field};
use crate::poly::{degree, divides, lcm, mono_div, mono_mul, Monomial, MonomialOrder, Polynomial};

/// Explicit limits for Buchberger runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Budget {
    /// S-polynomial pairs processed per basis computation.
    pub max_pairs: usize,
    /// Total degree of any basis element produced.
    pub max_degree: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 1_000_000,
            max_degree: 64,
        }
    }
}

impl Budget {
    /// Defaults overridden by `NOETHER_BUDGET_PAIRS` / `NOETHER_BUDGET_DEGREE`.
    pub fn from_env() -> Self {
        Budget::default().with_env()
    }

    /// `self` with any `NOETHER_BUDGET_PAIRS` / `NOETHER_BUDGET_DEGREE`
    /// values applied on top.
    pub fn with_env(mut self) -> Self {
        if let Some(v) = std::env::var("NOETHER_BUDGET_PAIRS")
            .ok()
            .and_then(|s| s.parse().ok())
        {
            self.max_pairs = v;
        }
        if let Some(v) = std::env::var("NOETHER_BUDGET_DEGREE")
            .ok()
            .and_then(|s| s.parse().ok())
        {
            self.max_degree = v;
        }
        self
    }
}

#[derive(Debug, Clone)]
struct Sorted {
    terms: Vec<(Monomial, Coeff)>,
}

impl Sorted {
    fn from_poly(p: &Polynomial, order: MonomialOrder) -> Self {
        let mut terms: Vec<_> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Sorted { terms }
    }

    fn to_poly(&self, field: Field, nvars: usize) -> Polynomial {
        Polynomial::from_terms(field, nvars, self.terms.iter().cloned())
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self, field: Field) {
        if let Some((_, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = field.inv(c);
                for t in &mut self.terms {
                    t.1 = field.mul(&t.1, &inv);
                }
            }
        }
    }

    fn max_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| degree(m)).max().unwrap_or(0)
    }
}

/// `a - c * mono * b`, all sorted descending.
fn sub_mul(
    a: &[(Monomial, Coeff)],
    c: &Coeff,
    mono: &[u32],
    b: &[(Monomial, Coeff)],
    field: Field,
    order: MonomialOrder,
) -> Vec<(Monomial, Coeff)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b
        .iter()
        .map(|(m, k)| (mono_mul(m, mono), field.mul(k, c)))
        .peekable();
    while i < a.len() || bi.peek().is_some() {
        match (a.get(i), bi.peek()) {
            (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                Ordering::Greater => {
                    out.push(x.clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, k) = bi.next().unwrap();
                    out.push((m, field.neg(&k)));
                }
                Ordering::Equal => {
                    let (m, k) = bi.next().unwrap();
                    let v = field.sub(&x.1, &k);
                    if !v.is_zero() {
                        out.push((m, v));
                    }
                    i += 1;
                }
            },
            (Some(x), None) => {
                out.push(x.clone());
                i += 1;
            }
            (None, Some(_)) => {
                let (m, k) = bi.next().unwrap();
                out.push((m, field.neg(&k)));
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Full reduction of `p` by monic `basis`.
fn reduce(p: &Sorted, basis: &[Sorted], field: Field, order: MonomialOrder) -> Sorted {
    let mut rest = p.terms.clone();
    let mut rem: Vec<(Monomial, Coeff)> = Vec::new();
    while !rest.is_empty() {
        let (lm, lc) = rest[0].clone();
        match basis.iter().find(|g| divides(g.lm(), &lm)) {
            Some(g) => {
                let q = mono_div(&lm, g.lm());
                rest = sub_mul(&rest, &lc, &q, &g.terms, field, order);
            }
            None => {
                rem.push(rest.remove(0));
            }
        }
    }
    Sorted { terms: rem }
}

fn s_poly(a: &Sorted, b: &Sorted, field: Field, order: MonomialOrder) -> Sorted {
    let l = lcm(a.lm(), b.lm());
    let ma = mono_div(&l, a.lm());
    let mb = mono_div(&l, b.lm());
    let lhs: Vec<_> = a
        .terms
        .iter()
        .map(|(m, c)| (mono_mul(m, &ma), c.clone()))
        .collect();
    Sorted {
        terms: sub_mul(&lhs, &Coeff::one(), &mb, &b.terms, field, order),
    }
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Reduced Gröbner basis of the ideal generated by `gens`, sorted by leading
/// monomial, largest first. The zero ideal gives an empty basis.
pub fn groebner_basis(
    gens: &[Polynomial],
    order: MonomialOrder,
    budget: &Budget,
) -> Result<Vec<Polynomial>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let field = first.field();
    let nvars = first.nvars();

    let mut basis: Vec<Sorted> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut processed = 0usize;

    let push =
        |basis: &mut Vec<Sorted>, pairs: &mut Vec<(usize, usize)>, mut p: Sorted| -> Result<bool> {
            p.make_monic(field);
            if p.max_degree() > budget.max_degree {
                return Err(Error::Resource {
                    budget: "max_degree",
                    limit: budget.max_degree as usize,
                });
            }
            let unit = p.lm().iter().all(|&e| e == 0);
            let k = basis.len();
            basis.push(p);
            for i in 0..k {
                pairs.push((i, k));
            }
            Ok(unit)
        };

    for g in gens {
        let s = Sorted::from_poly(g, order);
        let r = reduce(&s, &basis, field, order);
        if !r.is_zero() && push(&mut basis, &mut pairs, r)? {
            return Ok(vec![Polynomial::one(field, nvars)]);
        }
    }

    while !pairs.is_empty() {
        // Normal selection strategy: smallest lcm first.
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let la = lcm(basis[a.0].lm(), basis[a.1].lm());
                let lb = lcm(basis[b.0].lm(), basis[b.1].lm());
                order.cmp(&la, &lb).then_with(|| a.cmp(b))
            })
            .unwrap();
        let (i, j) = pairs.swap_remove(idx);
        processed += 1;
        if processed > budget.max_pairs {
            return Err(Error::Resource {
                budget: "max_pairs",
                limit: budget.max_pairs,
            });
        }
        if coprime(basis[i].lm(), basis[j].lm()) {
            continue;
        }
        let l = lcm(basis[i].lm(), basis[j].lm());
        let pending: HashSet<(usize, usize)> = pairs.iter().copied().collect();
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(basis[k].lm(), &l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j], field, order);
        let r = reduce(&s, &basis, field, order);
        if !r.is_zero() && push(&mut basis, &mut pairs, r)? {
            return Ok(vec![Polynomial::one(field, nvars)]);
        }
    }

    // Minimal basis: drop elements whose leading monomial is a multiple of another's.
    let mut keep: Vec<Sorted> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis
            .iter()
            .enumerate()
            .any(|(k, h)| k != i && divides(h.lm(), g.lm()) && (h.lm() != g.lm() || k < i));
        if !redundant {
            keep.push(g.clone());
        }
    }
    // Interreduce tails.
    let mut reduced = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Sorted> = keep
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, g)| g.clone())
            .collect();
        let head = Sorted {
            terms: vec![keep[i].terms[0].clone()],
        };
        let tail = Sorted {
            terms: keep[i].terms[1..].to_vec(),
        };
        let mut r = reduce(&tail, &others, field, order);
        r.terms.insert(0, head.terms[0].clone());
        r.make_monic(field);
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
    Ok(reduced.iter().map(|s| s.to_poly(field, nvars)).collect())
}

/// Normal form of `p` with respect to a Gröbner basis for `order`.
pub fn normal_form(p: &Polynomial, basis: &[Polynomial], order: MonomialOrder) -> Polynomial {
    let field = p.field();
    let gb: Vec<Sorted> = basis
        .iter()
        .map(|g| {
            let mut s = Sorted::from_poly(g, order);
            s.make_monic(field);
            s
        })
        .collect();
    reduce(&Sorted::from_poly(p, order), &gb, field, order).to_poly(field, p.nvars())
}

/// Eliminates the first `k` variables of `gens`: returns a Gröbner basis
/// (degrevlex in the remaining variables) of the contraction.
pub fn eliminate(gens: &[Polynomial], k: usize, budget: &Budget) -> Result<Vec<Polynomial>> {
    let gb = groebner_basis(gens, MonomialOrder::Elimination { block: k }, budget)?;
    Ok(gb.iter().filter_map(|g| g.drop_leading_vars(k)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn polys(src: &[&str], vars: &[&str], field: Field) -> Vec<Polynomial> {
        let v: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        src.iter()
            .map(|s| parse_polynomial(s, &v, field).unwrap())
            .collect()
    }

    #[test]
    fn principal_ideal_collapses() {
        let g = polys(&["x^2 - 1", "x - 1"], &["x"], Field::Rationals);
        let gb = groebner_basis(&g, MonomialOrder::Lex, &Budget::default()).unwrap();
        assert_eq!(gb, polys(&["x - 1"], &["x"], Field::Rationals));
    }

    #[test]
    fn linear_change_of_coordinates() {
        let g = polys(&["x + y", "x - y"], &["x", "y"], Field::Rationals);
        let gb = groebner_basis(&g, MonomialOrder::DegRevLex, &Budget::default()).unwrap();
        assert_eq!(gb, polys(&["x", "y"], &["x", "y"], Field::Rationals));
    }

    #[test]
    fn zero_ideal_is_empty() {
        let g = polys(&["0"], &["x"], Field::Rationals);
        assert!(
            groebner_basis(&g, MonomialOrder::DegRevLex, &Budget::default())
                .unwrap()
                .is_empty()
        );
        assert!(
            groebner_basis(&[], MonomialOrder::DegRevLex, &Budget::default())
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn reduced_basis_is_idempotent() {
        let g = polys(&["x^2*y - 1", "x*y^2 - x"], &["x", "y"], Field::Prime(5));
        let b = Budget::default();
        let gb = groebner_basis(&g, MonomialOrder::DegRevLex, &b).unwrap();
        assert_eq!(
            groebner_basis(&gb, MonomialOrder::DegRevLex, &b).unwrap(),
            gb
        );
    }

    #[test]
    fn pair_budget_is_enforced() {
        let g = polys(
            &["x^3 - y*z", "y^3 - x*z", "z^3 - x*y"],
            &["x", "y", "z"],
            Field::Rationals,
        );
        let tight = Budget {
            max_pairs: 1,
            max_degree: 64,
        };
        let err = groebner_basis(&g, MonomialOrder::DegRevLex, &tight).unwrap_err();
        assert_eq!(
            err,
            Error::Resource {
                budget: "max_pairs",
                limit: 1
            }
        );
    }

    #[test]
    fn elimination_computes_intersection() {
        // t*x + (1 - t)*y, eliminate t: (x) ∩ (y) = (x*y)
        let g = polys(&["t*x", "y - t*y"], &["t", "x", "y"], Field::Rationals);
        let out = eliminate(&g, 1, &Budget::default()).unwrap();
        assert_eq!(out, polys(&["x*y"], &["x", "y"], Field::Rationals));
    }
}
