//! The sheaf of ideals generated by a digraph.
//!
//! A digraph generates the smallest subsheaf of the structure sheaf that
//! contains each node ideal over its open. A section `s` over `U` belongs to
//! it iff at every point `p ∈ U` the germ of `s` lies in the ideal generated
//! by the nodes whose opens contain `p`. Grouping the points of `U` by the
//! set `S` of nodes that contain them turns this into finitely many radical
//! membership tests:
//!
//! ```text
//! u · Π_{i∈S} f_i ∈ √((J_S : s) + (f_j : j ∉ S))     for every S ∋ root
//! ```
//!
//! where `J_S` is the sum of the node ideals in `S`.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::IdealHandle;
use crate::topology::DistinguishedOpen;
use crate::unipoly::{coprime_base, UniPoly};

use super::model::{IdealDigraph, MAX_NODES};

fn check_open(d: &IdealDigraph, u: &DistinguishedOpen) -> Result<()> {
    if u.ring() != d.ring() {
        return Err(Error::domain("open lives in another ring"));
    }
    if u.is_empty()? {
        return Err(Error::domain(format!("{u} is empty")));
    }
    Ok(())
}

fn check_size(d: &IdealDigraph) -> Result<()> {
    if d.nodes().len() > MAX_NODES {
        return Err(Error::bound("digraph nodes", d.nodes().len(), MAX_NODES));
    }
    Ok(())
}

/// Whether the section `numerator / denominator` over `u` lies in the
/// generated sheaf. Denominators are units on `u` and do not matter, so
/// only the numerator is passed.
pub fn section_membership(
    d: &IdealDigraph,
    u: &DistinguishedOpen,
    numerator: &Polynomial,
) -> Result<bool> {
    d.require_valid()?;
    check_size(d)?;
    check_open(d, u)?;
    if numerator.is_zero() {
        return Ok(true);
    }
    let ring = d.ring();
    let root = d.root();
    let others: Vec<usize> = (0..d.nodes().len()).filter(|&i| i != root).collect();
    for mask in 0u32..(1u32 << others.len()) {
        let in_s = |i: usize| {
            i == root
                || others
                    .iter()
                    .position(|&o| o == i)
                    .is_some_and(|k| mask >> k & 1 == 1)
        };
        let mut j_s = Vec::new();
        let mut f_out = Vec::new();
        let mut target = u.f().clone();
        for (i, node) in d.nodes().iter().enumerate() {
            if in_s(i) {
                j_s.extend(node.ideal.generators().iter().cloned());
                target = &target * node.open.f();
            } else {
                f_out.push(node.open.f().clone());
            }
        }
        let mut gens = ring.colon(&j_s, numerator)?;
        gens.extend(f_out);
        if !ring.radical_contains(&gens, &target)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Section membership for a fraction; the denominator must be a unit on `u`.
pub fn section_membership_fraction(
    d: &IdealDigraph,
    u: &DistinguishedOpen,
    s: &Fraction,
) -> Result<bool> {
    s.check_denominator(u)?;
    section_membership(d, u, &s.num)
}

/// The ideal of sections over `u`, in the coordinate ring of `u`.
///
/// Only univariate base rings without a quotient are supported. There the
/// section ideal is principal: refine every polynomial involved into a
/// pairwise coprime base; the points dividing one base element `b` all see
/// the same set of nodes `S_b`, and the stalk condition there is divisibility
/// by `b` to the multiplicity `b` has in the generator of `J_{S_b}`.
pub fn evaluate_sheaf(d: &IdealDigraph, u: &DistinguishedOpen) -> Result<IdealHandle> {
    let ring = d.ring();
    if !ring.is_univariate() || !ring.quotient().is_empty() {
        return Err(Error::capability(
            "exact section ideals need a univariate base ring without quotient; use section membership instead",
        ));
    }
    d.require_valid()?;
    check_size(d)?;
    check_open(d, u)?;
    let field = ring.field();
    let target_ring = u.coordinate_ring()?;
    let uni = |p: &Polynomial| UniPoly::from_poly(p);
    let node_gens: Vec<UniPoly> = d
        .nodes()
        .iter()
        .map(|n| {
            n.ideal
                .generators()
                .iter()
                .fold(UniPoly::zero(field), |acc, g| acc.gcd(&uni(g)))
        })
        .collect();
    let opens: Vec<UniPoly> = d.nodes().iter().map(|n| uni(n.open.f())).collect();
    let gcd_over = |pred: &dyn Fn(usize) -> bool| {
        node_gens
            .iter()
            .enumerate()
            .filter(|(i, _)| pred(*i))
            .fold(UniPoly::zero(field), |acc, (_, g)| acc.gcd(g))
    };

    // Generic point: every node applies.
    if gcd_over(&|_| true).is_zero() {
        return IdealHandle::new(target_ring, vec![]);
    }
    let away = uni(u.f()).mul(&uni(&ring.inverted_product()));
    let mut inputs: Vec<UniPoly> = node_gens.clone();
    inputs.extend(opens.iter().cloned());
    inputs.push(away.clone());
    let mut g = UniPoly::one(field);
    let mut used = Vec::new();
    for b in coprime_base(&inputs) {
        if !b.gcd(&away).is_unit() {
            continue;
        }
        let applicable: Vec<bool> = opens.iter().map(|f| b.gcd(f).is_unit()).collect();
        let stalk = gcd_over(&|i| applicable[i]);
        if stalk.is_zero() {
            return IdealHandle::new(target_ring, vec![]);
        }
        let e = stalk.multiplicity(&b);
        if e > 0 {
            g = g.mul(&b.pow(e));
            used.push(b);
        }
    }
    let gp = g.to_poly();
    if !section_membership(d, u, &gp)? {
        return Err(Error::validation(
            "evaluated generator fails the stalk criterion",
        ));
    }
    for b in &used {
        let smaller = g.exact_div(b).to_poly();
        if section_membership(d, u, &smaller)? {
            return Err(Error::validation("evaluated generator is not minimal"));
        }
    }
    IdealHandle::new(target_ring, vec![gp])
}

/// Whether the generated sheaf is quasi-coherent on the given basis opens.
///
/// In one variable the section ideal over each `D(h)` is compared with the
/// global sections localized at `h`. Otherwise the only decidable case is
/// the one where every node ideal already lies in the localized root ideal
/// (the sheaf is then the one attached to the root ideal); anything else is
/// a capability error.
pub fn is_quasi_coherent(d: &IdealDigraph, basis: &[DistinguishedOpen]) -> Result<bool> {
    d.require_valid()?;
    let ring = d.ring();
    if ring.is_univariate() && ring.quotient().is_empty() {
        let global = evaluate_sheaf(d, &DistinguishedOpen::whole(ring))?;
        for h in basis {
            if h.is_empty()? {
                continue;
            }
            let local = evaluate_sheaf(d, h)?;
            if !local.equals(&global.extend_to(local.ring())?)? {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    let root = &d.nodes()[d.root()];
    for node in d.nodes() {
        let r = node.open.coordinate_ring()?;
        if !root
            .ideal
            .extend_to(&r)?
            .contains_ideal(&node.ideal.extend_to(&r)?)?
        {
            return Err(Error::capability(
                "quasi-coherence of a multivariate digraph with proper children is not decidable here",
            ));
        }
    }
    Ok(true)
}

/// A local section `num / den`.
#[derive(Debug, Clone)]
pub struct Fraction {
    pub num: Polynomial,
    pub den: Polynomial,
}

impl Fraction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::domain("zero denominator"));
        }
        Ok(Fraction { num, den })
    }

    pub fn whole(num: Polynomial) -> Self {
        let den = Polynomial::one(num.field(), num.nvars());
        Fraction { num, den }
    }

    fn check_denominator(&self, u: &DistinguishedOpen) -> Result<()> {
        if self.den.is_zero() {
            return Err(Error::domain("zero denominator"));
        }
        if !u.coordinate_ring()?.is_unit(&self.den)? {
            return Err(Error::domain(format!(
                "denominator {} is not a unit on {u}",
                u.ring().render(&self.den)
            )));
        }
        Ok(())
    }
}

/// A node whose ideal is generated by fractions.
#[derive(Debug, Clone)]
pub struct FractionNode {
    pub open: DistinguishedOpen,
    pub generators: Vec<Fraction>,
}

/// Replaces every fraction by its numerator. Denominators must be units on
/// the node's open, so the numerators generate the same ideal there; this
/// is re-checked by comparing canonical forms of `(num)` and `(num·den)`.
pub fn clear_denominators(
    ring: &crate::ring::RingRef,
    nodes: Vec<FractionNode>,
    edges: Vec<(usize, usize)>,
    root: usize,
) -> Result<IdealDigraph> {
    let mut out = Vec::with_capacity(nodes.len());
    for node in nodes {
        let local = node.open.coordinate_ring()?;
        let mut nums = Vec::new();
        let mut scaled = Vec::new();
        for fr in &node.generators {
            fr.check_denominator(&node.open)?;
            nums.push(fr.num.clone());
            scaled.push(&fr.num * &fr.den);
        }
        if !local.ideal(nums.clone())?.equals(&local.ideal(scaled)?)? {
            return Err(Error::validation(format!(
                "cleared generators change the ideal on {}",
                node.open
            )));
        }
        out.push(super::model::DigraphNode::new(node.open, nums)?);
    }
    IdealDigraph::new(ring.clone(), out, edges, root)
}
