//! Dense univariate polynomials, used for the fast paths in one variable.

use num_traits::{One, Zero};

use crate::field::{Coeff, Field};
use crate::poly::Polynomial;

/// Coefficients from the constant term upward, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<Coeff>,
}

impl UniPoly {
    pub fn new(field: Field, coeffs: Vec<Coeff>) -> Self {
        let mut p = UniPoly {
            field,
            coeffs: coeffs.into_iter().map(|c| field.normalize(c)).collect(),
        };
        p.trim();
        p
    }

    pub fn zero(field: Field) -> Self {
        UniPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        UniPoly {
            field,
            coeffs: vec![Coeff::one()],
        }
    }

    pub fn x_pow(field: Field, e: usize) -> Self {
        let mut coeffs = vec![Coeff::zero(); e + 1];
        coeffs[e] = Coeff::one();
        UniPoly { field, coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn from_poly(p: &Polynomial) -> Self {
        assert_eq!(p.nvars(), 1, "univariate view of a multivariate polynomial");
        let deg = p.total_degree().unwrap_or(0) as usize;
        let mut coeffs = vec![Coeff::zero(); if p.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in p.terms() {
            coeffs[m[0] as usize] = c.clone();
        }
        UniPoly::new(p.field(), coeffs)
    }

    pub fn to_poly(&self) -> Polynomial {
        Polynomial::from_terms(
            self.field,
            1,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (vec![i as u32], c.clone())),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Coeff> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => {
                let inv = self.field.inv(l);
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let f = self.field;
        UniPoly::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Coeff::zero();
        UniPoly::new(
            f,
            (0..n)
                .map(|i| {
                    f.add(
                        self.coeffs.get(i).unwrap_or(&z),
                        o.coeffs.get(i).unwrap_or(&z),
                    )
                })
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&self.field.from_i64(-1)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero(self.field);
        }
        let f = self.field;
        let mut out = vec![Coeff::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        UniPoly::new(f, out)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = UniPoly::one(self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let f = self.field;
        let dd = d.coeffs.len() - 1;
        let inv = f.inv(d.lead().unwrap());
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::zero(f), self.clone());
        }
        let mut q = vec![Coeff::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(&r[k + dd], &inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = f.sub(&r[k + j], &f.mul(&c, dc));
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UniPoly::new(f, q), UniPoly::new(f, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn divides(&self, p: &Self) -> bool {
        if self.is_zero() {
            return p.is_zero();
        }
        p.rem(self).is_zero()
    }

    /// Exact quotient; panics if `d` does not divide.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact division");
        q
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.monic();
        let mut b = o.monic();
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a
    }

    pub fn lcm(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero(self.field);
        }
        self.mul(o).exact_div(&self.gcd(o)).monic()
    }

    /// `base^e mod m` by repeated squaring.
    pub fn pow_mod(&self, e: usize, m: &Self) -> Self {
        let mut acc = UniPoly::one(self.field).rem(m);
        let mut base = self.rem(m);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    /// Removes from `self` every factor it shares with `h`, i.e. the
    /// generator of `(self) : h^∞`.
    pub fn strip_common(&self, h: &Self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.monic();
        loop {
            let c = g.gcd(h);
            if c.is_unit() || c.is_zero() {
                return g;
            }
            g = g.exact_div(&c).monic();
        }
    }

    /// Multiplicity of `b` (non-unit) in `self`, which must be nonzero.
    pub fn multiplicity(&self, b: &Self) -> usize {
        let mut k = 0;
        let mut p = self.clone();
        loop {
            let (q, r) = p.div_rem(b);
            if !r.is_zero() {
                return k;
            }
            p = q;
            k += 1;
        }
    }

    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = UniPoly::zero(self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc
                .mul(inner)
                .add(&UniPoly::new(self.field, vec![c.clone()]));
        }
        acc
    }

    pub fn eval(&self, x: &Coeff) -> Coeff {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Coeff::zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }
}

/// Refines nonzero, non-unit inputs into a pairwise coprime set of monic
/// polynomials such that each input is a constant times a product of powers
/// of the output elements.
pub fn coprime_base(inputs: &[UniPoly]) -> Vec<UniPoly> {
    let mut set: Vec<UniPoly> = Vec::new();
    for p in inputs {
        if p.is_zero() || p.is_unit() {
            continue;
        }
        set.push(p.monic());
    }
    loop {
        set.sort_by(|a, b| {
            a.coeffs
                .len()
                .cmp(&b.coeffs.len())
                .then_with(|| cmp_coeffs(a, b))
        });
        set.dedup();
        let mut found = None;
        'outer: for i in 0..set.len() {
            for j in (i + 1)..set.len() {
                let g = set[i].gcd(&set[j]);
                if !g.is_unit() {
                    found = Some((i, j, g));
                    break 'outer;
                }
            }
        }
        let Some((i, j, g)) = found else {
            return set;
        };
        let a = set[i].exact_div(&g).monic();
        let b = set[j].exact_div(&g).monic();
        set.remove(j);
        set.remove(i);
        for p in [g, a, b] {
            if !p.is_unit() && !p.is_zero() {
                set.push(p);
            }
        }
    }
}

fn cmp_coeffs(a: &UniPoly, b: &UniPoly) -> std::cmp::Ordering {
    for (x, y) in a.coeffs.iter().zip(&b.coeffs).rev() {
        let o = x.cmp(y);
        if o != std::cmp::Ordering::Equal {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> UniPoly {
        UniPoly::new(
            Field::Rationals,
            c.iter().map(|&v| Coeff::from_integer(v.into())).collect(),
        )
    }

    #[test]
    fn gcd_and_division() {
        let a = q(&[-1, 0, 1]); // x^2 - 1
        let b = q(&[-1, 1]); // x - 1
        assert_eq!(a.gcd(&b), b);
        let (qq, r) = a.div_rem(&b);
        assert_eq!(qq, q(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.lcm(&q(&[1, 1])), a);
    }

    #[test]
    fn strip_common_removes_shared_factors() {
        let g = q(&[0, 0, -1, 1]); // x^2 (x - 1)
        assert_eq!(g.strip_common(&q(&[0, 1])), q(&[-1, 1]));
    }

    #[test]
    fn coprime_base_refines() {
        // x^2 (x-1), x (x-1)^2 -> {x, x-1}
        let a = q(&[0, 0, -1, 1]);
        let b = q(&[0, 1, -2, 1]);
        let base = coprime_base(&[a.clone(), b]);
        assert_eq!(base.len(), 2);
        assert!(base.contains(&q(&[0, 1])));
        assert!(base.contains(&q(&[-1, 1])));
        assert_eq!(a.multiplicity(&q(&[0, 1])), 2);
    }

    #[test]
    fn pow_mod_matches_direct_power() {
        let f = Field::Prime(5);
        let x = UniPoly::x_pow(f, 1);
        let m = UniPoly::new(f, vec![f.from_i64(-2), f.zero(), f.one()]);
        assert_eq!(x.pow_mod(9, &m), x.pow(9).rem(&m));
    }
}
