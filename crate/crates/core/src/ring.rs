//! Presented rings `(k[vars] / quotient)[inverted^-1]` and their ideals.
//!
//! Every ideal has a canonical form: the reduced Gröbner basis (in the
//! ring's order) of `(I + quotient) : h^∞`, where `h` is the product of the
//! inverted elements. Two ideals of the same ring are equal iff their
//! canonical forms coincide.
//!
//! In one variable the canonical form is a single monic gcd with every
//! factor shared with `h` removed; this path avoids Buchberger entirely and
//! agrees with it (see the tests).

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{eliminate, groebner_basis as buchberger, normal_form, Budget};
use crate::parse::{parse_polynomial, valid_variable_name};
use crate::poly::{MonomialOrder, Polynomial};
use crate::unipoly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PresentedRing {
    field: Field,
    vars: Vec<String>,
    quotient: Vec<Polynomial>,
    inverted: Vec<Polynomial>,
    order: MonomialOrder,
    budget: Budget,
}

pub type RingRef = Arc<PresentedRing>;

impl PresentedRing {
    /// The polynomial ring `field[vars]` with degrevlex order.
    pub fn polynomial(field: Field, vars: &[&str]) -> Result<RingRef> {
        Ok(Arc::new(Self::bare(
            field,
            vars.iter().map(|s| s.to_string()).collect(),
        )?))
    }

    fn bare(field: Field, vars: Vec<String>) -> Result<Self> {
        for (i, v) in vars.iter().enumerate() {
            if !valid_variable_name(v) {
                return Err(Error::domain(format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::domain(format!("duplicate variable `{v}`")));
            }
        }
        Ok(PresentedRing {
            field,
            vars,
            quotient: Vec::new(),
            inverted: Vec::new(),
            order: MonomialOrder::DegRevLex,
            budget: Budget::default(),
        })
    }

    /// General constructor; validates that no inverted element vanishes
    /// modulo the quotient.
    pub fn new(
        field: Field,
        vars: Vec<String>,
        quotient: Vec<Polynomial>,
        inverted: Vec<Polynomial>,
        order: MonomialOrder,
        budget: Budget,
    ) -> Result<RingRef> {
        let mut r = Self::bare(field, vars)?;
        r.order = order;
        r.budget = budget;
        for p in quotient.iter().chain(&inverted) {
            if p.nvars() != r.vars.len() || p.field() != field {
                return Err(Error::domain("polynomial does not live in this ring"));
            }
        }
        r.quotient = quotient.into_iter().filter(|p| !p.is_zero()).collect();
        let mut ring = r;
        for f in inverted {
            ring = ring.with_inverted(f)?;
        }
        Ok(Arc::new(ring))
    }

    /// Parses a descriptor made of polynomial strings.
    pub fn from_strs(
        field: Field,
        vars: &[&str],
        quotient: &[&str],
        inverted: &[&str],
    ) -> Result<RingRef> {
        let v: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let q = quotient
            .iter()
            .map(|s| parse_polynomial(s, &v, field))
            .collect::<Result<Vec<_>>>()?;
        let i = inverted
            .iter()
            .map(|s| parse_polynomial(s, &v, field))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, v, q, i, MonomialOrder::DegRevLex, Budget::default())
    }

    fn with_inverted(mut self, f: Polynomial) -> Result<Self> {
        if self.reduces_to_zero_mod_quotient(&f)? {
            return Err(Error::domain(format!(
                "inverted element {} vanishes modulo the quotient",
                f.render(&self.vars)
            )));
        }
        self.inverted.push(f);
        Ok(self)
    }

    fn reduces_to_zero_mod_quotient(&self, f: &Polynomial) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        if self.quotient.is_empty() {
            return Ok(false);
        }
        if self.is_univariate() {
            let g = univariate_gcd(&self.quotient, self.field);
            return Ok(g.divides(&UniPoly::from_poly(f)));
        }
        let gb = buchberger(&self.quotient, self.order, &self.budget)?;
        Ok(normal_form(f, &gb, self.order).is_zero())
    }

    /// The same ring with `f` also inverted (the coordinate ring of `D(f)`).
    pub fn localized(&self, f: &Polynomial) -> Result<RingRef> {
        Ok(Arc::new(self.clone().with_inverted(f.clone())?))
    }

    pub fn with_budget(&self, budget: Budget) -> RingRef {
        let mut r = self.clone();
        r.budget = budget;
        Arc::new(r)
    }

    pub fn with_order(&self, order: MonomialOrder) -> RingRef {
        let mut r = self.clone();
        r.order = order;
        Arc::new(r)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn quotient(&self) -> &[Polynomial] {
        &self.quotient
    }

    pub fn inverted(&self) -> &[Polynomial] {
        &self.inverted
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn is_univariate(&self) -> bool {
        self.vars.len() == 1
    }

    pub fn parse(&self, src: &str) -> Result<Polynomial> {
        parse_polynomial(src, &self.vars, self.field)
    }

    pub fn render(&self, p: &Polynomial) -> String {
        p.render(&self.vars)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.field, self.nvars())
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self.field, self.nvars())
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.field, self.nvars(), i)
    }

    /// Product of the inverted generators (1 if none).
    pub fn inverted_product(&self) -> Polynomial {
        self.inverted.iter().fold(self.one(), |acc, f| &acc * f)
    }

    fn check(&self, p: &Polynomial) -> Result<()> {
        if p.nvars() != self.nvars() || p.field() != self.field {
            return Err(Error::domain("polynomial does not live in this ring"));
        }
        Ok(())
    }

    fn base_generators(&self, gens: &[Polynomial]) -> Vec<Polynomial> {
        gens.iter()
            .chain(&self.quotient)
            .filter(|p| !p.is_zero())
            .cloned()
            .collect()
    }

    /// Canonical basis of the ideal generated by `gens`.
    pub fn canonical_basis(&self, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
        for g in gens {
            self.check(g)?;
        }
        if self.is_univariate() {
            let g = univariate_gcd(&self.base_generators(gens), self.field);
            let h = UniPoly::from_poly(&self.inverted_product());
            let g = g.strip_common(&h);
            return Ok(if g.is_zero() {
                vec![]
            } else {
                vec![g.monic().to_poly()]
            });
        }
        self.canonical_basis_general(gens)
    }

    /// Buchberger-only canonical form; always equal to [`Self::canonical_basis`].
    pub fn canonical_basis_general(&self, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
        let base = self.base_generators(gens);
        if self.inverted.is_empty() {
            return buchberger(&base, self.order, &self.budget);
        }
        let sat = saturate_general(&base, &self.inverted_product(), &self.budget)?;
        buchberger(&sat, self.order, &self.budget)
    }

    /// Reduced basis of `gens + quotient` in the polynomial ring, ignoring
    /// inverted elements.
    pub fn polynomial_basis(&self, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
        for g in gens {
            self.check(g)?;
        }
        buchberger(&self.base_generators(gens), self.order, &self.budget)
    }

    /// Generators of `(gens + quotient) : f^∞` in the polynomial ring.
    pub fn saturation(&self, gens: &[Polynomial], f: &Polynomial) -> Result<Vec<Polynomial>> {
        self.check(f)?;
        if f.is_zero() {
            return Err(Error::domain("saturation by the zero polynomial"));
        }
        let base = self.base_generators(gens);
        if self.is_univariate() {
            let g = univariate_gcd(&base, self.field).strip_common(&UniPoly::from_poly(f));
            return Ok(if g.is_zero() {
                vec![]
            } else {
                vec![g.to_poly()]
            });
        }
        saturate_general(&base, f, &self.budget)
    }

    /// `f ∈ √(I)` in this ring (quotient and inverted elements included),
    /// decided by the Rabinowitsch trick.
    pub fn radical_contains(&self, gens: &[Polynomial], f: &Polynomial) -> Result<bool> {
        self.check(f)?;
        let hf = &self.inverted_product() * f;
        if hf.is_zero() {
            return Ok(true);
        }
        let base = self.base_generators(gens);
        if self.is_univariate() {
            let g = univariate_gcd(&base, self.field)
                .strip_common(&UniPoly::from_poly(&self.inverted_product()));
            let fu = UniPoly::from_poly(f);
            if g.is_zero() {
                // k[x]_h is a domain: only 0 is nilpotent.
                return Ok(fu.is_zero());
            }
            if g.is_unit() {
                return Ok(true);
            }
            let e = g.degree().unwrap();
            return Ok(fu.pow_mod(e, &g).is_zero());
        }
        let t_gens = rabinowitsch(&base, &hf);
        let gb = buchberger(&t_gens, MonomialOrder::DegRevLex, &self.budget)?;
        Ok(gb.len() == 1 && gb[0].is_one())
    }

    /// Generators of `(gens + quotient) : s`.
    pub fn colon(&self, gens: &[Polynomial], s: &Polynomial) -> Result<Vec<Polynomial>> {
        self.check(s)?;
        if s.is_zero() {
            return Ok(vec![self.one()]);
        }
        let base = self.base_generators(gens);
        if self.is_univariate() {
            let g = univariate_gcd(&base, self.field);
            if g.is_zero() {
                return Ok(vec![]);
            }
            let su = UniPoly::from_poly(s);
            return Ok(vec![g.exact_div(&g.gcd(&su)).monic().to_poly()]);
        }
        let inter = self.intersection_general(&base, std::slice::from_ref(s))?;
        inter.iter().map(|p| exact_div(p, s)).collect()
    }

    /// Generators of `(a + quotient) ∩ (b + quotient)`.
    pub fn intersection(&self, a: &[Polynomial], b: &[Polynomial]) -> Result<Vec<Polynomial>> {
        let a = self.base_generators(a);
        let b = self.base_generators(b);
        if self.is_univariate() {
            let l = univariate_gcd(&a, self.field).lcm(&univariate_gcd(&b, self.field));
            return Ok(if l.is_zero() {
                vec![]
            } else {
                vec![l.to_poly()]
            });
        }
        self.intersection_general(&a, &b)
    }

    fn intersection_general(&self, a: &[Polynomial], b: &[Polynomial]) -> Result<Vec<Polynomial>> {
        if a.is_empty() || b.is_empty() {
            return Ok(vec![]);
        }
        let n = self.nvars();
        let t = Polynomial::var(self.field, n + 1, 0);
        let one_minus_t = &Polynomial::one(self.field, n + 1) - &t;
        let mut lifted: Vec<Polynomial> = a.iter().map(|p| &t * &p.prepend_vars(1)).collect();
        lifted.extend(b.iter().map(|p| &one_minus_t * &p.prepend_vars(1)));
        eliminate(&lifted, 1, &self.budget)
    }

    pub fn ideal(self: &Arc<Self>, gens: Vec<Polynomial>) -> Result<IdealHandle> {
        IdealHandle::new(self.clone(), gens)
    }

    pub fn ideal_strs(self: &Arc<Self>, gens: &[&str]) -> Result<IdealHandle> {
        let g = gens
            .iter()
            .map(|s| self.parse(s))
            .collect::<Result<Vec<_>>>()?;
        IdealHandle::new(self.clone(), g)
    }

    /// `p` is a unit of this ring.
    pub fn is_unit(self: &Arc<Self>, p: &Polynomial) -> Result<bool> {
        self.ideal(vec![p.clone()])?.is_unit()
    }
}

impl fmt::Display for PresentedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.vars.join(","))?;
        if !self.quotient.is_empty() {
            let q: Vec<String> = self.quotient.iter().map(|p| self.render(p)).collect();
            write!(f, "/({})", q.join(", "))?;
        }
        if !self.inverted.is_empty() {
            let q: Vec<String> = self.inverted.iter().map(|p| self.render(p)).collect();
            write!(f, "[({})^-1]", q.join(", "))?;
        }
        Ok(())
    }
}

fn univariate_gcd(gens: &[Polynomial], field: Field) -> UniPoly {
    gens.iter().fold(UniPoly::zero(field), |acc, p| {
        acc.gcd(&UniPoly::from_poly(p))
    })
}

/// `gens ∪ {1 - t·f}` in the ring with a new first variable `t`.
fn rabinowitsch(gens: &[Polynomial], f: &Polynomial) -> Vec<Polynomial> {
    let n = f.nvars();
    let field = f.field();
    let t = Polynomial::var(field, n + 1, 0);
    let mut out: Vec<Polynomial> = gens.iter().map(|p| p.prepend_vars(1)).collect();
    out.push(&Polynomial::one(field, n + 1) - &(&t * &f.prepend_vars(1)));
    out
}

fn saturate_general(
    gens: &[Polynomial],
    f: &Polynomial,
    budget: &Budget,
) -> Result<Vec<Polynomial>> {
    if gens.is_empty() {
        return Ok(vec![]);
    }
    eliminate(&rabinowitsch(gens, f), 1, budget)
}

/// Exact multivariate division; errors if `d` does not divide `p`.
pub fn exact_div(p: &Polynomial, d: &Polynomial) -> Result<Polynomial> {
    let order = MonomialOrder::DegRevLex;
    let (dm, dc) = d
        .leading(order)
        .ok_or_else(|| Error::domain("division by zero"))?;
    let (dm, dc) = (dm.clone(), dc.clone());
    let field = p.field();
    let mut rest = p.clone();
    let mut q = Polynomial::zero(field, p.nvars());
    while let Some((m, c)) = rest.leading(order).map(|(m, c)| (m.clone(), c.clone())) {
        if !crate::poly::divides(&dm, &m) {
            return Err(Error::domain("inexact polynomial division"));
        }
        let t = Polynomial::term(field, crate::poly::mono_div(&m, &dm), field.div(&c, &dc));
        rest = &rest - &(&t * d);
        q = &q + &t;
    }
    Ok(q)
}

/// An ideal given by finitely many generators, with a cached canonical form.
#[derive(Debug, Clone)]
pub struct IdealHandle {
    ring: RingRef,
    generators: Vec<Polynomial>,
    canonical: OnceLock<Vec<Polynomial>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CombineOp {
    Sum,
    Product,
    Intersection,
}

impl IdealHandle {
    pub fn new(ring: RingRef, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            ring.check(g)?;
        }
        Ok(IdealHandle {
            ring,
            generators,
            canonical: OnceLock::new(),
        })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn canonical(&self) -> Result<&[Polynomial]> {
        if let Some(c) = self.canonical.get() {
            return Ok(c);
        }
        let c = self.ring.canonical_basis(&self.generators)?;
        Ok(self.canonical.get_or_init(|| c))
    }

    /// The same ideal read in another ring with identical variables (e.g. a
    /// further localization).
    pub fn extend_to(&self, ring: &RingRef) -> Result<IdealHandle> {
        if ring.vars != self.ring.vars || ring.field != self.ring.field {
            return Err(Error::domain("rings have different variables"));
        }
        IdealHandle::new(ring.clone(), self.generators.clone())
    }

    fn same_ring(&self, other: &IdealHandle) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::domain("ideals live in different rings"));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.canonical()?.is_empty())
    }

    pub fn is_unit(&self) -> Result<bool> {
        let c = self.canonical()?;
        Ok(c.len() == 1 && c[0].is_constant() && !c[0].is_zero())
    }

    /// Reduced Gröbner basis of the generators plus the quotient. Rings with
    /// inverted elements must use [`Self::canonical`] instead.
    pub fn groebner_basis(&self) -> Result<Vec<Polynomial>> {
        if !self.ring.inverted.is_empty() {
            return Err(Error::domain(
                "ring has inverted elements; use the canonical (saturated) basis",
            ));
        }
        self.ring.polynomial_basis(&self.generators)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        self.ring.check(p)?;
        let c = self.canonical()?;
        Ok(normal_form(p, c, self.ring.order).is_zero())
    }

    pub fn contains_ideal(&self, other: &IdealHandle) -> Result<bool> {
        self.same_ring(other)?;
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &IdealHandle) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self.canonical()? == other.canonical()?)
    }

    pub fn combine(&self, op: CombineOp, other: &IdealHandle) -> Result<IdealHandle> {
        self.same_ring(other)?;
        let gens = match op {
            CombineOp::Sum => self
                .generators
                .iter()
                .chain(&other.generators)
                .cloned()
                .collect(),
            CombineOp::Product => {
                let mut v = Vec::new();
                for a in &self.generators {
                    for b in &other.generators {
                        v.push(a * b);
                    }
                }
                v
            }
            CombineOp::Intersection => self
                .ring
                .intersection(&self.generators, &other.generators)?,
        };
        IdealHandle::new(self.ring.clone(), gens)
    }

    /// `I : f^∞`, an ideal of the same ring.
    pub fn saturate(&self, f: &Polynomial) -> Result<IdealHandle> {
        let gens = self.ring.saturation(&self.generators, f)?;
        IdealHandle::new(self.ring.clone(), gens)
    }

    pub fn colon(&self, s: &Polynomial) -> Result<IdealHandle> {
        let gens = self.ring.colon(&self.generators, s)?;
        IdealHandle::new(self.ring.clone(), gens)
    }

    pub fn radical_contains(&self, f: &Polynomial) -> Result<bool> {
        self.ring.radical_contains(&self.generators, f)
    }

    pub fn render(&self) -> String {
        let g: Vec<String> = self
            .generators
            .iter()
            .map(|p| self.ring.render(p))
            .collect();
        format!("({})", g.join(", "))
    }

    pub fn render_canonical(&self) -> Result<Vec<String>> {
        Ok(self
            .canonical()?
            .iter()
            .map(|p| self.ring.render(p))
            .collect())
    }
}

pub fn groebner_basis(ideal: &IdealHandle) -> Result<Vec<Polynomial>> {
    ideal.groebner_basis()
}

pub fn ideal_membership(p: &Polynomial, ideal: &IdealHandle) -> Result<bool> {
    ideal.contains(p)
}

pub fn ideal_equal(a: &IdealHandle, b: &IdealHandle) -> Result<bool> {
    a.equals(b)
}

pub fn ideal_combine(op: CombineOp, a: &IdealHandle, b: &IdealHandle) -> Result<IdealHandle> {
    a.combine(op, b)
}

pub fn saturate(ideal: &IdealHandle, f: &Polynomial) -> Result<IdealHandle> {
    ideal.saturate(f)
}

pub fn radical_membership(f: &Polynomial, ideal: &IdealHandle) -> Result<bool> {
    ideal.radical_contains(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qxy() -> RingRef {
        PresentedRing::polynomial(Field::Rationals, &["x", "y"]).unwrap()
    }

    #[test]
    fn membership_examples() {
        let r = PresentedRing::polynomial(Field::Rationals, &["x"]).unwrap();
        let i = r.ideal_strs(&["x - 1"]).unwrap();
        assert!(i.contains(&r.parse("x^2 - 1").unwrap()).unwrap());
        assert!(!i.contains(&r.parse("x + 1").unwrap()).unwrap());
        let unit = r.ideal_strs(&["1"]).unwrap();
        assert!(unit.contains(&r.parse("x^7 + 3").unwrap()).unwrap());
    }

    #[test]
    fn equality_examples() {
        let r = PresentedRing::polynomial(Field::Rationals, &["x"]).unwrap();
        assert!(r
            .ideal_strs(&["x"])
            .unwrap()
            .equals(&r.ideal_strs(&["x", "x^2"]).unwrap())
            .unwrap());
        assert!(!r
            .ideal_strs(&["x"])
            .unwrap()
            .equals(&r.ideal_strs(&["x - 1"]).unwrap())
            .unwrap());
        let rx = r.localized(&r.parse("x").unwrap()).unwrap();
        assert!(rx
            .ideal_strs(&["x"])
            .unwrap()
            .equals(&rx.ideal_strs(&["1"]).unwrap())
            .unwrap());
    }

    #[test]
    fn combine_examples() {
        let r = qxy();
        let x = r.ideal_strs(&["x"]).unwrap();
        let y = r.ideal_strs(&["y"]).unwrap();
        let sum = x.combine(CombineOp::Sum, &y).unwrap();
        assert!(sum.equals(&r.ideal_strs(&["x", "y"]).unwrap()).unwrap());
        let inter = x.combine(CombineOp::Intersection, &y).unwrap();
        assert!(inter.equals(&r.ideal_strs(&["x*y"]).unwrap()).unwrap());
        let prod = x.combine(CombineOp::Product, &x).unwrap();
        assert!(prod.equals(&r.ideal_strs(&["x^2"]).unwrap()).unwrap());
    }

    #[test]
    fn saturation_examples() {
        let r = qxy();
        let x = r.parse("x").unwrap();
        let s = r.ideal_strs(&["x*y"]).unwrap().saturate(&x).unwrap();
        assert!(s.equals(&r.ideal_strs(&["y"]).unwrap()).unwrap());
        let s = r.ideal_strs(&["x^2"]).unwrap().saturate(&x).unwrap();
        assert!(s.is_unit().unwrap());
        let i = r.ideal_strs(&["y*(x - 1)"]).unwrap();
        assert!(i.saturate(&x).unwrap().equals(&i).unwrap());
        assert!(i.saturate(&r.zero()).is_err());
    }

    #[test]
    fn radical_examples() {
        let r = PresentedRing::polynomial(Field::Rationals, &["x"]).unwrap();
        let sq = r.ideal_strs(&["x^2"]).unwrap();
        assert!(sq.radical_contains(&r.parse("x").unwrap()).unwrap());
        assert!(!sq.radical_contains(&r.parse("x + 1").unwrap()).unwrap());
        assert!(r
            .ideal_strs(&["1"])
            .unwrap()
            .radical_contains(&r.parse("x + 5").unwrap())
            .unwrap());
        let r2 = qxy();
        let i = r2.ideal_strs(&["x^2", "y^3"]).unwrap();
        assert!(i.radical_contains(&r2.parse("x + y").unwrap()).unwrap());
        assert!(!i.radical_contains(&r2.parse("x + 1").unwrap()).unwrap());
    }

    #[test]
    fn colon_ideal() {
        let r = qxy();
        let c = r
            .ideal_strs(&["x*y", "x^2"])
            .unwrap()
            .colon(&r.parse("x").unwrap())
            .unwrap();
        assert!(c.equals(&r.ideal_strs(&["x", "y"]).unwrap()).unwrap());
        let r1 = PresentedRing::polynomial(Field::Rationals, &["x"]).unwrap();
        let c = r1
            .ideal_strs(&["x^2 - 1"])
            .unwrap()
            .colon(&r1.parse("x + 1").unwrap())
            .unwrap();
        assert!(c.equals(&r1.ideal_strs(&["x - 1"]).unwrap()).unwrap());
    }

    #[test]
    fn univariate_fast_path_agrees_with_buchberger() {
        let r = PresentedRing::from_strs(Field::Prime(5), &["x"], &[], &["x", "x^2 - 2"]).unwrap();
        for gens in [
            &["x^3 - x"][..],
            &["x^4 - 1", "x^2 - 2*x"],
            &["x*(x^2 - 2)"],
            &["0"],
        ] {
            let g: Vec<_> = gens.iter().map(|s| r.parse(s).unwrap()).collect();
            assert_eq!(
                r.canonical_basis(&g).unwrap(),
                r.canonical_basis_general(&g).unwrap(),
                "{gens:?}"
            );
        }
    }

    #[test]
    fn quotient_rings() {
        let r = PresentedRing::from_strs(Field::Rationals, &["x", "y"], &["x*y"], &[]).unwrap();
        let i = r.ideal_strs(&["x"]).unwrap();
        assert!(i.contains(&r.parse("x^2 + x*y").unwrap()).unwrap());
        assert!(!i.contains(&r.parse("y").unwrap()).unwrap());
        assert!(PresentedRing::from_strs(Field::Rationals, &["x"], &["x"], &["x^2"]).is_err());
    }

    #[test]
    fn groebner_basis_requires_no_inverted() {
        let r = PresentedRing::from_strs(Field::Rationals, &["x"], &[], &["x"]).unwrap();
        assert!(r.ideal_strs(&["x - 1"]).unwrap().groebner_basis().is_err());
    }
}
