//! Sparse multivariate polynomials over an exact [`Field`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::field::{Coeff, Field};

/// Exponent vector; its length equals the number of ring variables.
pub type Monomial = Vec<u32>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    #[default]
    DegRevLex,
    /// The first `block` variables are eliminated: monomials are compared by
    /// degrevlex on that block first, then degrevlex on the remaining ones.
    Elimination {
        block: usize,
    },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::DegRevLex => degrevlex(a, b),
            MonomialOrder::Elimination { block } => {
                let k = (*block).min(a.len());
                degrevlex(&a[..k], &b[..k]).then_with(|| degrevlex(&a[k..], &b[k..]))
            }
        }
    }
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn mono_div(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Polynomial {
    pub fn zero(field: Field, nvars: usize) -> Self {
        Polynomial {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Field, nvars: usize, c: Coeff) -> Self {
        Self::term(field, vec![0; nvars], c)
    }

    pub fn one(field: Field, nvars: usize) -> Self {
        Self::constant(field, nvars, Coeff::one())
    }

    pub fn from_i64(field: Field, nvars: usize, c: i64) -> Self {
        Self::constant(field, nvars, field.from_i64(c))
    }

    pub fn var(field: Field, nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Self::term(field, m, Coeff::one())
    }

    pub fn term(field: Field, mono: Monomial, c: Coeff) -> Self {
        let nvars = mono.len();
        let c = field.normalize(c);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Polynomial {
            field,
            nvars,
            terms,
        }
    }

    pub fn from_terms(
        field: Field,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Coeff)>,
    ) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars);
            p.add_term(m, field.normalize(c));
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let field = self.field;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = field.add(o.get(), &c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.is_constant() && self.terms.values().all(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &[u32]) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| degree(m)).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m[var]).max()
    }

    pub fn leading(&self, order: MonomialOrder) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let f = self.field;
        Polynomial::from_terms(
            f,
            self.nvars,
            self.terms.iter().map(|(m, a)| (m.clone(), f.mul(a, c))),
        )
    }

    pub fn mul_term(&self, mono: &[u32], c: &Coeff) -> Self {
        let f = self.field;
        Polynomial::from_terms(
            f,
            self.nvars,
            self.terms
                .iter()
                .map(|(m, a)| (mono_mul(m, mono), f.mul(a, c))),
        )
    }

    /// Divides by the leading coefficient for `order`; zero stays zero.
    pub fn monic(&self, order: MonomialOrder) -> Self {
        match self.leading(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.field.inv(c)),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Polynomial::one(self.field, self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Adds `k` new variables in front (indices `0..k`), shifting the rest.
    pub fn prepend_vars(&self, k: usize) -> Self {
        Polynomial::from_terms(
            self.field,
            self.nvars + k,
            self.terms.iter().map(|(m, c)| {
                let mut mm = vec![0; k];
                mm.extend_from_slice(m);
                (mm, c.clone())
            }),
        )
    }

    /// Drops the first `k` variables; `None` if any of them occurs.
    pub fn drop_leading_vars(&self, k: usize) -> Option<Self> {
        if self.terms.keys().any(|m| m[..k].iter().any(|&e| e > 0)) {
            return None;
        }
        Some(Polynomial::from_terms(
            self.field,
            self.nvars - k,
            self.terms.iter().map(|(m, c)| (m[k..].to_vec(), c.clone())),
        ))
    }

    /// Substitutes polynomials (in a common ring) for each variable.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars);
        let target_vars = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut out = Polynomial::zero(self.field, target_vars);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(self.field, target_vars, c.clone());
            for (img, &e) in images.iter().zip(m) {
                if e > 0 {
                    t = &t * &img.pow(e);
                }
            }
            out = &out + &t;
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Self {
        let f = self.field;
        Polynomial::from_terms(
            f,
            self.nvars,
            self.terms.iter().filter(|(m, _)| m[var] > 0).map(|(m, c)| {
                let mut mm = m.clone();
                mm[var] -= 1;
                (mm, f.mul(c, &f.from_i64(m[var] as i64)))
            }),
        )
    }

    /// Evaluates at a point given by field values.
    pub fn evaluate(&self, point: &[Coeff]) -> Coeff {
        let f = self.field;
        let mut acc = Coeff::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t = f.mul(&t, x);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Renders with the given variable names, highest degrevlex term first.
    pub fn render(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(b.0, a.0));
        let mut out = String::new();
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let c = self.field.display_value(c);
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let is_const = m.iter().all(|&e| e == 0);
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || is_const {
                factors.push(abs.to_string());
            }
            for (v, &e) in vars.iter().zip(m) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            let _ = write!(out, "{}", factors.join("*"));
        }
        out
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let f = self.field;
        Polynomial::from_terms(
            f,
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))),
        )
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let f = self.field;
        let mut out = Polynomial::zero(f, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(mono_mul(m1, m2), f.mul(c1, c2));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(nv: usize, terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_terms(
            Field::Rationals,
            nv,
            terms
                .iter()
                .map(|(m, c)| (m.to_vec(), Coeff::from_integer((*c).into()))),
        )
    }

    #[test]
    fn degrevlex_ties_break_on_last_variable() {
        let o = MonomialOrder::DegRevLex;
        // x*z < y^2 in degrevlex (x > y > z)
        assert_eq!(o.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(o.cmp(&[2, 0, 0], &[0, 0, 3]), Ordering::Less);
        assert_eq!(
            MonomialOrder::Lex.cmp(&[1, 0, 0], &[0, 5, 5]),
            Ordering::Greater
        );
    }

    #[test]
    fn elimination_order_puts_block_first() {
        let o = MonomialOrder::Elimination { block: 1 };
        assert_eq!(o.cmp(&[1, 0], &[0, 9]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 2], &[0, 1]), Ordering::Greater);
    }

    #[test]
    fn arithmetic_cancels_terms() {
        let x = Polynomial::var(Field::Rationals, 1, 0);
        let one = Polynomial::one(Field::Rationals, 1);
        let p = &(&x - &one) * &(&x + &one);
        assert_eq!(p, q(1, &[(&[2], 1), (&[0], -1)]));
        assert!((&p - &p).is_zero());
        assert_eq!(p.render(&["x".into()]), "x^2 - 1");
    }

    #[test]
    fn substitution_composes() {
        let x = Polynomial::var(Field::Prime(5), 1, 0);
        let p = &x.pow(3) - &Polynomial::from_i64(Field::Prime(5), 1, 2);
        let sq = x.pow(2);
        assert_eq!(
            p.substitute(&[sq]),
            &x.pow(6) - &Polynomial::from_i64(Field::Prime(5), 1, 2)
        );
    }
}
