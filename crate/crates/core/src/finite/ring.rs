//! Finite commutative rings given by structure constants over a finite
//! abelian group.

use std::fmt;

use num_integer::Integer;

use super::lattice::Lattice;
use crate::error::{Error, Result};
use crate::field::is_prime;

/// Default cap on the size of rings used in exhaustive operations.
pub const RING_BOUND: usize = 256;

/// A finite commutative ring with unit.
///
/// The additive group is `Z^k / L`; `structure[i][j]` holds the coordinates
/// of `b_i · b_j` for the standard basis vectors `b_i`. Elements are
/// addressed by their index in the group, and full addition and
/// multiplication tables are kept since the ring is small.
#[derive(Debug, Clone)]
pub struct FiniteRing {
    label: String,
    group: Lattice,
    structure: Vec<Vec<Vec<i64>>>,
    one: Vec<i64>,
    elements: Vec<Vec<i64>>,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    one_index: usize,
    /// Render elements as polynomials in `x` (coordinates are coefficients).
    polynomial_elements: bool,
}

impl FiniteRing {
    /// Builds a ring from its additive group, structure constants and unit,
    /// checking the ring axioms on basis elements.
    pub fn from_structure(
        label: impl Into<String>,
        group: Lattice,
        structure: Vec<Vec<Vec<i64>>>,
        one: Vec<i64>,
        bound: usize,
    ) -> Result<Self> {
        let k = group.dim();
        let size = group.group_order();
        if size > bound as u128 {
            return Err(Error::bound(
                "finite ring size",
                size.min(usize::MAX as u128) as usize,
                bound,
            ));
        }
        if structure.len() != k
            || structure
                .iter()
                .any(|r| r.len() != k || r.iter().any(|v| v.len() != k))
        {
            return Err(Error::validation(
                "structure constants do not match the group rank",
            ));
        }
        let structure: Vec<Vec<Vec<i64>>> = structure
            .into_iter()
            .map(|row| row.into_iter().map(|v| group.reduce(&v)).collect())
            .collect();
        let one = group.reduce(&one);
        let n = size as usize;
        let elements: Vec<Vec<i64>> = (0..n).map(|i| group.element(i)).collect();
        let mut ring = FiniteRing {
            label: label.into(),
            group,
            structure,
            one,
            elements,
            add: Vec::new(),
            mul: Vec::new(),
            neg: Vec::new(),
            one_index: 0,
            polynomial_elements: false,
        };
        ring.check_axioms()?;
        ring.one_index = ring.group.index_of(&ring.one);
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let s: Vec<i64> = ring.elements[a]
                    .iter()
                    .zip(&ring.elements[b])
                    .map(|(x, y)| x + y)
                    .collect();
                add[a * n + b] = ring.group.index_of(&ring.group.reduce(&s));
                mul[a * n + b] = ring
                    .group
                    .index_of(&ring.mul_coords(&ring.elements[a], &ring.elements[b]));
            }
        }
        let neg = (0..n)
            .map(|a| {
                let v: Vec<i64> = ring.elements[a].iter().map(|x| -x).collect();
                ring.group.index_of(&ring.group.reduce(&v))
            })
            .collect();
        ring.add = add;
        ring.mul = mul;
        ring.neg = neg;
        Ok(ring)
    }

    /// `Z/n`; `n = 1` gives the zero ring.
    pub fn zmod(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("Z/n needs n >= 1"));
        }
        let n = n as i64;
        Self::from_structure(
            format!("Z/{n}"),
            Lattice::full(1, n),
            vec![vec![vec![1]]],
            vec![1],
            RING_BOUND,
        )
    }

    /// `F_p[x]/(f)` for a monic `f`, coefficients listed from the constant
    /// term upward.
    pub fn fp_quotient(p: u64, modulus: &[i64]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        let pi = p as i64;
        let modulus: Vec<i64> = modulus.iter().map(|c| c.mod_floor(&pi)).collect();
        let d = modulus.len().checked_sub(1).filter(|&d| d >= 1);
        let Some(d) = d else {
            return Err(Error::domain("modulus must have degree at least 1"));
        };
        if modulus[d] != 1 {
            return Err(Error::domain("modulus must be monic"));
        }
        // x^m reduced modulo f, for m < 2d - 1.
        let mut powers: Vec<Vec<i64>> = Vec::new();
        let mut cur = vec![0i64; d];
        cur[0] = 1;
        for _ in 0..(2 * d - 1) {
            powers.push(cur.clone());
            let top = cur[d - 1];
            let mut next = vec![0i64; d];
            for j in (1..d).rev() {
                next[j] = cur[j - 1];
            }
            for j in 0..d {
                next[j] = (next[j] - top * modulus[j]).mod_floor(&pi);
            }
            cur = next;
        }
        let structure = (0..d)
            .map(|i| (0..d).map(|j| powers[i + j].clone()).collect())
            .collect();
        let mut one = vec![0; d];
        one[0] = 1;
        let mut ring = Self::from_structure(
            format!("F{p}[x]/({})", render_modulus(&modulus)),
            Lattice::full(d, pi),
            structure,
            one,
            RING_BOUND,
        )?;
        ring.polynomial_elements = true;
        Ok(ring)
    }

    /// Direct product of rings.
    pub fn product(factors: &[FiniteRing]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::domain("product of no rings"));
        }
        let k: usize = factors.iter().map(|r| r.rank()).sum();
        let e = factors.iter().fold(1i64, |acc, r| acc.lcm(&r.exponent()));
        let mut gens = Vec::new();
        let mut structure = vec![vec![vec![0i64; k]; k]; k];
        let mut one = vec![0i64; k];
        let mut off = 0;
        for r in factors {
            let rk = r.rank();
            for row in r.group.rows() {
                let mut v = vec![0i64; k];
                v[off..off + rk].copy_from_slice(row);
                gens.push(v);
            }
            for i in 0..rk {
                for j in 0..rk {
                    structure[off + i][off + j][off..off + rk].copy_from_slice(&r.structure[i][j]);
                }
            }
            one[off..off + rk].copy_from_slice(&r.one);
            off += rk;
        }
        let label = factors
            .iter()
            .map(|r| r.label.clone())
            .collect::<Vec<_>>()
            .join(" x ");
        Self::from_structure(
            label,
            Lattice::from_generators(k, e, &gens),
            structure,
            one,
            RING_BOUND,
        )
    }

    fn check_axioms(&self) -> Result<()> {
        let k = self.rank();
        let basis: Vec<Vec<i64>> = (0..k)
            .map(|i| {
                let mut v = vec![0; k];
                v[i] = 1;
                v
            })
            .collect();
        for row in self.group.rows() {
            for b in &basis {
                if !self.group.contains(&self.mul_coords(row, b)) {
                    return Err(Error::validation(format!(
                        "{}: multiplication is not well defined on the additive group",
                        self.label
                    )));
                }
            }
        }
        for a in &basis {
            if self.mul_coords(&self.one, a) != self.group.reduce(a) {
                return Err(Error::validation(format!(
                    "{}: unit element is not neutral",
                    self.label
                )));
            }
            for b in &basis {
                if self.mul_coords(a, b) != self.mul_coords(b, a) {
                    return Err(Error::validation(format!(
                        "{}: multiplication is not commutative",
                        self.label
                    )));
                }
                for c in &basis {
                    let l = self.mul_coords(&self.mul_coords(a, b), c);
                    let r = self.mul_coords(a, &self.mul_coords(b, c));
                    if l != r {
                        return Err(Error::validation(format!(
                            "{}: multiplication is not associative",
                            self.label
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Product of coordinate vectors, reduced.
    pub fn mul_coords(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let k = self.rank();
        let mut out = vec![0i64; k];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let xy = x * y;
                for (o, s) in out.iter_mut().zip(&self.structure[i][j]) {
                    *o += xy * s;
                }
            }
            for o in out.iter_mut() {
                *o = o.mod_floor(&self.exponent());
            }
        }
        self.group.reduce(&out)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn group(&self) -> &Lattice {
        &self.group
    }

    /// Rank of the additive group presentation.
    pub fn rank(&self) -> usize {
        self.group.dim()
    }

    /// Additive exponent, which is also the characteristic.
    pub fn exponent(&self) -> i64 {
        self.group.exponent()
    }

    pub fn structure(&self) -> &[Vec<Vec<i64>>] {
        &self.structure
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &[i64] {
        &self.elements[i]
    }

    pub fn index_of(&self, v: &[i64]) -> usize {
        self.group.index_of(&self.group.reduce(v))
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.one_index
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size() + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size() + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    /// Human-readable element: a polynomial for `F_p[x]/(f)`, an integer for
    /// other rank-one rings, coordinates otherwise.
    pub fn render(&self, i: usize) -> String {
        let v = &self.elements[i];
        if self.polynomial_elements {
            let s = render_modulus(v);
            if s.is_empty() {
                "0".to_string()
            } else {
                s
            }
        } else if v.len() == 1 {
            v[0].to_string()
        } else {
            format!("{v:?}")
        }
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

fn render_modulus(m: &[i64]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in m.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        parts.push(match (c, i) {
            (c, 0) => c.to_string(),
            (1, _) => mono,
            (c, _) => format!("{c}*{mono}"),
        });
    }
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_tables() {
        let r = FiniteRing::zmod(6).unwrap();
        assert_eq!(r.size(), 6);
        assert_eq!(r.mul(r.index_of(&[2]), r.index_of(&[3])), r.zero());
        assert_eq!(r.add(r.index_of(&[5]), r.one()), r.zero());
        assert_eq!(r.neg(r.index_of(&[2])), r.index_of(&[4]));
    }

    #[test]
    fn dual_numbers_over_f2() {
        let r = FiniteRing::fp_quotient(2, &[0, 0, 1]).unwrap();
        assert_eq!(r.size(), 4);
        assert_eq!(r.label(), "F2[x]/(x^2)");
        let x = r.index_of(&[0, 1]);
        assert_eq!(r.mul(x, x), r.zero());
        assert_eq!(r.add(x, x), r.zero());
    }

    #[test]
    fn f4_is_a_field() {
        let r = FiniteRing::fp_quotient(2, &[1, 1, 1]).unwrap();
        for a in 1..r.size() {
            assert!((0..r.size()).any(|b| r.mul(a, b) == r.one()));
        }
    }

    #[test]
    fn products_multiply_componentwise() {
        let r = FiniteRing::product(&[FiniteRing::zmod(2).unwrap(), FiniteRing::zmod(3).unwrap()])
            .unwrap();
        assert_eq!(r.size(), 6);
        assert_eq!(r.exponent(), 6);
        let e = r.index_of(&[1, 0]);
        assert_eq!(r.mul(e, e), e);
        assert_eq!(r.mul(e, r.index_of(&[0, 1])), r.zero());
    }

    #[test]
    fn size_bound_is_enforced() {
        assert!(matches!(FiniteRing::zmod(1000), Err(Error::Bound { .. })));
        assert!(FiniteRing::zmod(0).is_err());
        assert_eq!(FiniteRing::zmod(1).unwrap().size(), 1);
        assert!(FiniteRing::fp_quotient(4, &[0, 1]).is_err());
    }
}
