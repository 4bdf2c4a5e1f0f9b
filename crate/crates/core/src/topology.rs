//! Distinguished opens of `Spec(R)` and finite topological spaces.
//!
//! Opens are intensional: `D(f)` is stored by its defining element and
//! compared through radical membership, never as a point set.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::RingRef;

#[derive(Debug, Clone)]
pub struct DistinguishedOpen {
    ring: RingRef,
    f: Polynomial,
}

impl DistinguishedOpen {
    pub fn new(ring: RingRef, f: Polynomial) -> Result<Self> {
        if f.nvars() != ring.nvars() || f.field() != ring.field() {
            return Err(Error::domain(
                "open defined by a polynomial of another ring",
            ));
        }
        Ok(DistinguishedOpen { ring, f })
    }

    pub fn parse(ring: &RingRef, src: &str) -> Result<Self> {
        let f = ring.parse(src)?;
        Self::new(ring.clone(), f)
    }

    /// `D(1)`, the whole space.
    pub fn whole(ring: &RingRef) -> Self {
        DistinguishedOpen {
            ring: ring.clone(),
            f: ring.one(),
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn render(&self) -> String {
        format!("D({})", self.ring.render(&self.f))
    }

    /// `D(f)` is empty iff `f` is nilpotent.
    pub fn is_empty(&self) -> Result<bool> {
        self.ring.radical_contains(&[], &self.f)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &DistinguishedOpen) -> Result<bool> {
        self.same_ring(other)?;
        self.ring
            .radical_contains(std::slice::from_ref(&self.f), &other.f)
    }

    pub fn equals(&self, other: &DistinguishedOpen) -> Result<bool> {
        Ok(self.contains(other)? && other.contains(self)?)
    }

    /// `other ⊊ self`.
    pub fn strictly_contains(&self, other: &DistinguishedOpen) -> Result<bool> {
        Ok(self.contains(other)? && !other.contains(self)?)
    }

    pub fn intersect(&self, other: &DistinguishedOpen) -> DistinguishedOpen {
        DistinguishedOpen {
            ring: self.ring.clone(),
            f: &self.f * &other.f,
        }
    }

    /// The ring of functions on the open: `R` with `f` inverted. A nonzero
    /// constant leaves the ring unchanged.
    pub fn coordinate_ring(&self) -> Result<RingRef> {
        if self.is_empty()? {
            return Err(Error::domain(format!("{} is empty", self.render())));
        }
        if self.f.is_constant() {
            return Ok(self.ring.clone());
        }
        self.ring.localized(&self.f)
    }

    fn same_ring(&self, other: &DistinguishedOpen) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::domain("opens of different rings"));
        }
        Ok(())
    }
}

impl fmt::Display for DistinguishedOpen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `b ⊆ a`.
pub fn open_contains(a: &DistinguishedOpen, b: &DistinguishedOpen) -> Result<bool> {
    a.contains(b)
}

pub fn open_intersect(a: &DistinguishedOpen, b: &DistinguishedOpen) -> DistinguishedOpen {
    a.intersect(b)
}

#[derive(Debug, Clone)]
pub struct OpenCover {
    pub target: DistinguishedOpen,
    pub pieces: Vec<DistinguishedOpen>,
}

impl OpenCover {
    pub fn new(target: DistinguishedOpen, pieces: Vec<DistinguishedOpen>) -> Result<Self> {
        for p in &pieces {
            target.same_ring(p)?;
        }
        Ok(OpenCover { target, pieces })
    }

    /// Checks that the pieces lie in the target and cover it.
    pub fn validate(&self) -> Result<()> {
        for p in &self.pieces {
            if !self.target.contains(p)? {
                return Err(Error::validation(format!(
                    "{} is not inside {}",
                    p, self.target
                )));
            }
        }
        if !cover_check(self)? {
            return Err(Error::validation(format!(
                "the pieces do not cover {}",
                self.target
            )));
        }
        Ok(())
    }
}

/// `target.f ∈ √(pieces)`.
pub fn cover_check(c: &OpenCover) -> Result<bool> {
    let gens: Vec<Polynomial> = c.pieces.iter().map(|p| p.f.clone()).collect();
    c.target.ring.radical_contains(&gens, &c.target.f)
}

pub fn coordinate_ring(u: &DistinguishedOpen) -> Result<RingRef> {
    u.coordinate_ring()
}

/// Largest finite space we handle; subsets are stored as `u32` masks.
pub const MAX_POINTS: usize = 16;

/// A finite preordered set with the Alexandrov topology whose opens are the
/// down-sets: an edge `(a, b)` means `a ≤ b`, so every open containing `b`
/// contains `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    names: Vec<String>,
    below: Vec<u32>,
    opens: Vec<u32>,
}

impl FiniteSpace {
    pub fn new(names: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::domain("a finite space needs at least one point"));
        }
        if n > MAX_POINTS {
            return Err(Error::bound("finite space points", n, MAX_POINTS));
        }
        let mut below: Vec<u32> = (0..n).map(|i| 1 << i).collect();
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::domain(format!(
                    "edge ({a}, {b}) names a missing point"
                )));
            }
            below[b] |= 1 << a;
        }
        loop {
            let mut changed = false;
            for b in 0..n {
                let mut acc = below[b];
                for a in 0..n {
                    if below[b] >> a & 1 == 1 {
                        acc |= below[a];
                    }
                }
                if acc != below[b] {
                    below[b] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let opens = (0u32..(1u32 << n))
            .filter(|&u| (0..n).all(|p| u >> p & 1 == 0 || below[p] & !u == 0))
            .collect();
        Ok(FiniteSpace {
            names,
            below,
            opens,
        })
    }

    /// Points named `0, 1, …`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn whole(&self) -> u32 {
        ((1u64 << self.len()) - 1) as u32
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[b] >> a & 1 == 1
    }

    /// The smallest open containing `p`.
    pub fn down(&self, p: usize) -> u32 {
        self.below[p]
    }

    pub fn opens(&self) -> &[u32] {
        &self.opens
    }

    pub fn is_open(&self, u: u32) -> bool {
        self.opens.binary_search(&u).is_ok()
    }

    /// Connectedness of the subspace `u` (the comparability graph on `u`
    /// is connected); the empty set is not connected.
    pub fn is_connected(&self, u: u32) -> bool {
        if u == 0 {
            return false;
        }
        let start = u.trailing_zeros() as usize;
        let mut seen = 1u32 << start;
        let mut stack = vec![start];
        while let Some(a) = stack.pop() {
            for b in 0..self.len() {
                if u >> b & 1 == 1 && seen >> b & 1 == 0 && (self.leq(a, b) || self.leq(b, a)) {
                    seen |= 1 << b;
                    stack.push(b);
                }
            }
        }
        seen == u
    }

    /// Nonempty connected opens.
    pub fn connected_opens(&self) -> Vec<u32> {
        self.opens
            .iter()
            .copied()
            .filter(|&u| self.is_connected(u))
            .collect()
    }

    /// Connected components of the whole space.
    pub fn components(&self) -> Vec<u32> {
        let mut out = Vec::new();
        let mut rest = self.whole();
        while rest != 0 {
            let start = rest.trailing_zeros() as usize;
            let mut comp = 1u32 << start;
            loop {
                let mut next = comp;
                for a in 0..self.len() {
                    if comp >> a & 1 == 1 {
                        for b in 0..self.len() {
                            if self.leq(a, b) || self.leq(b, a) {
                                next |= 1 << b;
                            }
                        }
                    }
                }
                if next == comp {
                    break;
                }
                comp = next;
            }
            out.push(comp);
            rest &= !comp;
        }
        out
    }

    pub fn render_set(&self, u: u32) -> String {
        let pts: Vec<&str> = (0..self.len())
            .filter(|&p| u >> p & 1 == 1)
            .map(|p| self.names[p].as_str())
            .collect();
        format!("{{{}}}", pts.join(","))
    }
}
