//! Sheaves of ideals of the constant sheaf `ℤ` on a finite space.
//!
//! On a connected open `U` the constant sheaf has sections `ℤ`, so an ideal
//! sheaf is a choice of `n_U ≥ 0` (meaning `n_U ℤ`) per connected open.
//! The minimal opens `↓p` cover everything, which pins the sheaf down:
//! `n_U = lcm { n_{↓p} : p ∈ U }`.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::topology::FiniteSpace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZZSheafData {
    space: FiniteSpace,
    values: BTreeMap<u32, u64>,
}

fn lcm0(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a.lcm(&b)
    }
}

/// `a ℤ ⊆ b ℤ`.
fn ideal_within(a: u64, b: u64) -> bool {
    a.is_multiple_of(b)
}

impl ZZSheafData {
    /// Checks that every connected open has a value, the restriction law
    /// (`U ⊆ V` implies `n_U | n_V`) and the gluing law.
    pub fn new(space: FiniteSpace, values: BTreeMap<u32, u64>) -> Result<Self> {
        let connected = space.connected_opens();
        for &u in &connected {
            if !values.contains_key(&u) {
                return Err(Error::validation(format!(
                    "no value on the connected open {}",
                    space.render_set(u)
                )));
            }
        }
        for &u in values.keys() {
            if !space.is_open(u) || !space.is_connected(u) {
                return Err(Error::validation(format!(
                    "{} is not a connected open",
                    space.render_set(u)
                )));
            }
        }
        for &u in &connected {
            for &v in &connected {
                if u != v && u & !v == 0 && !ideal_within(values[&v], values[&u]) {
                    return Err(Error::validation(format!(
                        "restriction from {} = {} to {} = {} is not an inclusion",
                        space.render_set(v),
                        values[&v],
                        space.render_set(u),
                        values[&u]
                    )));
                }
            }
        }
        for &u in &connected {
            let glued = (0..space.len())
                .filter(|&p| u >> p & 1 == 1)
                .fold(1u64, |acc, p| lcm0(acc, values[&space.down(p)]));
            if glued != values[&u] {
                return Err(Error::validation(format!(
                    "gluing fails on {}: value {} but the local values give {}",
                    space.render_set(u),
                    values[&u],
                    glued
                )));
            }
        }
        Ok(ZZSheafData { space, values })
    }

    /// The sheaf determined by its values on the minimal opens `↓p`.
    pub fn from_points(space: FiniteSpace, point_values: &[u64]) -> Result<Self> {
        if point_values.len() != space.len() {
            return Err(Error::domain("one value per point is required"));
        }
        let values = space
            .connected_opens()
            .into_iter()
            .map(|u| {
                let n = (0..space.len())
                    .filter(|&p| u >> p & 1 == 1)
                    .fold(1u64, |acc, p| lcm0(acc, point_values[p]));
                (u, n)
            })
            .collect();
        Self::new(space, values)
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn values(&self) -> &BTreeMap<u32, u64> {
        &self.values
    }

    pub fn value(&self, u: u32) -> Option<u64> {
        self.values.get(&u).copied()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZZNode {
    pub open: u32,
    pub n: u64,
}

/// One rooted digraph per connected component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZZDigraph {
    pub nodes: Vec<ZZNode>,
    pub edges: Vec<(usize, usize)>,
    pub roots: Vec<usize>,
}

pub fn extract_zz_digraph(z: &ZZSheafData) -> ZZDigraph {
    let space = &z.space;
    let connected = space.connected_opens();
    let mut nodes: Vec<ZZNode> = Vec::new();
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for comp in space.components() {
        nodes.push(ZZNode {
            open: comp,
            n: z.values[&comp],
        });
        roots.push(nodes.len() - 1);
        let mut frontier = vec![nodes.len() - 1];
        while let Some(i) = frontier.pop() {
            let ZZNode { open: v, n: nv } = nodes[i];
            let expansive: Vec<u32> = connected
                .iter()
                .copied()
                .filter(|&u| u != v && u & !v == 0 && z.values[&u] != nv)
                .collect();
            for &u in &expansive {
                if expansive.iter().any(|&w| w != u && u & !w == 0) {
                    continue;
                }
                let idx = match nodes.iter().position(|nd| nd.open == u) {
                    Some(k) => k,
                    None => {
                        nodes.push(ZZNode {
                            open: u,
                            n: z.values[&u],
                        });
                        frontier.push(nodes.len() - 1);
                        nodes.len() - 1
                    }
                };
                if !edges.contains(&(i, idx)) {
                    edges.push((i, idx));
                }
            }
        }
    }
    ZZDigraph {
        nodes,
        edges,
        roots,
    }
}

impl ZZDigraph {
    /// Value of the generated sheaf on a connected open: the stalk at `p` is
    /// generated by every node whose open contains `p`.
    pub fn regenerate(&self, space: &FiniteSpace, u: u32) -> u64 {
        (0..space.len())
            .filter(|&p| u >> p & 1 == 1)
            .map(|p| {
                self.nodes
                    .iter()
                    .filter(|nd| nd.open >> p & 1 == 1)
                    .fold(0u64, |acc, nd| acc.gcd(&nd.n))
            })
            .fold(1u64, lcm0)
    }

    /// Connected opens on which regeneration disagrees with `z`.
    pub fn mismatches(&self, z: &ZZSheafData) -> Vec<u32> {
        z.values
            .iter()
            .filter(|(&u, &n)| self.regenerate(&z.space, u) != n)
            .map(|(&u, _)| u)
            .collect()
    }
}
