//! Digraphs of ideals and their validation.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::{IdealHandle, RingRef};
use crate::topology::DistinguishedOpen;

/// Default cap on node count for operations that iterate over node subsets.
pub const MAX_NODES: usize = 16;

/// A node `⟨D(f), K⟩`. The generators of `K` are polynomials of the base
/// ring, read in the coordinate ring of the open.
#[derive(Debug, Clone)]
pub struct DigraphNode {
    pub open: DistinguishedOpen,
    pub ideal: IdealHandle,
}

impl DigraphNode {
    pub fn new(open: DistinguishedOpen, generators: Vec<Polynomial>) -> Result<Self> {
        let ideal = IdealHandle::new(open.ring().clone(), generators)?;
        Ok(DigraphNode { open, ideal })
    }

    pub fn parse(ring: &RingRef, open: &str, generators: &[&str]) -> Result<Self> {
        let open = DistinguishedOpen::parse(ring, open)?;
        let gens = generators
            .iter()
            .map(|g| ring.parse(g))
            .collect::<Result<Vec<_>>>()?;
        Self::new(open, gens)
    }

    /// The node ideal as an ideal of the coordinate ring of its open.
    pub fn local_ideal(&self) -> Result<IdealHandle> {
        self.ideal.extend_to(&self.open.coordinate_ring()?)
    }

    pub fn render(&self) -> String {
        format!("<{}, {}>", self.open, self.ideal.render())
    }
}

#[derive(Debug, Clone)]
pub struct IdealDigraph {
    ring: RingRef,
    nodes: Vec<DigraphNode>,
    edges: Vec<(usize, usize)>,
    root: usize,
    report: OnceLock<ValidationReport>,
}

impl IdealDigraph {
    pub fn new(
        ring: RingRef,
        nodes: Vec<DigraphNode>,
        edges: Vec<(usize, usize)>,
        root: usize,
    ) -> Result<Self> {
        for n in &nodes {
            if *n.open.ring() != ring || *n.ideal.ring() != ring {
                return Err(Error::domain("digraph node lives in another ring"));
            }
        }
        Ok(IdealDigraph {
            ring,
            nodes,
            edges,
            root,
            report: OnceLock::new(),
        })
    }

    /// A single root node over the whole space.
    pub fn root_only(ring: &RingRef, generators: Vec<Polynomial>) -> Result<Self> {
        let node = DigraphNode::new(DistinguishedOpen::whole(ring), generators)?;
        Self::new(ring.clone(), vec![node], Vec::new(), 0)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn nodes(&self) -> &[DigraphNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn children(&self, i: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|e| e.0 == i)
            .map(|e| e.1)
            .collect()
    }

    /// Runs (once) and returns the validation report.
    pub fn validate(&self) -> Result<&ValidationReport> {
        if let Some(r) = self.report.get() {
            return Ok(r);
        }
        let r = validate_digraph(self)?;
        Ok(self.report.get_or_init(|| r))
    }

    /// Errors with the first failing invariant unless the digraph is valid.
    pub fn require_valid(&self) -> Result<()> {
        let r = self.validate()?;
        match r.checks.iter().find(|c| !c.passed) {
            None => Ok(()),
            Some(c) => Err(Error::validation(format!(
                "invalid digraph ({}): {}",
                c.name,
                c.detail.clone().unwrap_or_default()
            ))),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, n) in self.nodes.iter().enumerate() {
            let mark = if i == self.root { " (root)" } else { "" };
            out.push_str(&format!("{i}: {}{mark}\n", n.render()));
        }
        for (a, b) in &self.edges {
            out.push_str(&format!("{a} -> {b}\n"));
        }
        out
    }
}

/// Outcome of one invariant, with the offending nodes or edge when it fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantCheck {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl InvariantCheck {
    fn pass(name: &'static str) -> Self {
        InvariantCheck {
            name,
            passed: true,
            edge: None,
            nodes: None,
            detail: None,
        }
    }

    fn fail(name: &'static str, detail: String) -> Self {
        InvariantCheck {
            name,
            passed: false,
            edge: None,
            nodes: None,
            detail: Some(detail),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub checks: Vec<InvariantCheck>,
}

impl ValidationReport {
    pub fn check(&self, name: &str) -> Option<&InvariantCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const GLOBAL: &str = "global";
pub const FUNCTIONAL: &str = "functional";
pub const DECREASING: &str = "decreasing-on-opens";
pub const INCREASING: &str = "increasing-on-ideals";
pub const STRUCTURAL: &str = "structural";

/// Checks the five invariants independently.
pub fn validate_digraph(d: &IdealDigraph) -> Result<ValidationReport> {
    let n = d.nodes.len();
    let mut checks = Vec::new();

    // Structural first: the remaining checks index nodes through it.
    let structural = structural_check(d);
    let shape_ok = d.root < n && d.edges.iter().all(|&(a, b)| a < n && b < n);

    checks.push(if !shape_ok {
        InvariantCheck::fail(GLOBAL, "root index out of range".into())
    } else {
        let root = &d.nodes[d.root];
        if root.open.equals(&DistinguishedOpen::whole(&d.ring))? {
            InvariantCheck::pass(GLOBAL)
        } else {
            InvariantCheck {
                nodes: Some(vec![d.root]),
                ..InvariantCheck::fail(GLOBAL, format!("root open {} is not D(1)", root.open))
            }
        }
    });

    let mut functional = InvariantCheck::pass(FUNCTIONAL);
    'f: for i in 0..n {
        for j in (i + 1)..n {
            if d.nodes[i].open.equals(&d.nodes[j].open)? {
                functional = InvariantCheck {
                    nodes: Some(vec![i, j]),
                    ..InvariantCheck::fail(
                        FUNCTIONAL,
                        format!("nodes {i} and {j} have the same open {}", d.nodes[i].open),
                    )
                };
                break 'f;
            }
        }
    }
    checks.push(functional);

    let mut decreasing = InvariantCheck::pass(DECREASING);
    let mut increasing = InvariantCheck::pass(INCREASING);
    if shape_ok {
        for &(a, b) in &d.edges {
            let (pa, pb) = (&d.nodes[a], &d.nodes[b]);
            if decreasing.passed && !pa.open.strictly_contains(&pb.open)? {
                decreasing = InvariantCheck {
                    edge: Some((a, b)),
                    ..InvariantCheck::fail(
                        DECREASING,
                        format!("{} is not strictly inside {}", pb.open, pa.open),
                    )
                };
            }
            if increasing.passed {
                if let Some(why) = increasing_failure(pa, pb)? {
                    increasing = InvariantCheck {
                        edge: Some((a, b)),
                        ..InvariantCheck::fail(INCREASING, why)
                    };
                }
            }
        }
    }
    checks.push(decreasing);
    checks.push(increasing);
    checks.push(structural);
    let valid = checks.iter().all(|c| c.passed);
    Ok(ValidationReport { valid, checks })
}

/// `None` if the child ideal strictly contains the parent's localization.
fn increasing_failure(parent: &DigraphNode, child: &DigraphNode) -> Result<Option<String>> {
    if child.open.is_empty()? {
        return Ok(Some(format!("child open {} is empty", child.open)));
    }
    let ring = child.open.coordinate_ring()?;
    let k_child = child.ideal.extend_to(&ring)?;
    let k_parent = parent.ideal.extend_to(&ring)?;
    if !k_child.contains_ideal(&k_parent)? {
        return Ok(Some(format!(
            "{} localized to {} is not contained in {}",
            parent.ideal.render(),
            child.open,
            child.ideal.render()
        )));
    }
    if k_child.equals(&k_parent)? {
        return Ok(Some(format!(
            "{} localized to {} already equals {}",
            parent.ideal.render(),
            child.open,
            child.ideal.render()
        )));
    }
    Ok(None)
}

fn structural_check(d: &IdealDigraph) -> InvariantCheck {
    let n = d.nodes.len();
    if n == 0 {
        return InvariantCheck::fail(STRUCTURAL, "digraph has no nodes".into());
    }
    if d.root >= n {
        return InvariantCheck::fail(STRUCTURAL, format!("root index {} out of range", d.root));
    }
    for &(a, b) in &d.edges {
        if a >= n || b >= n {
            return InvariantCheck {
                edge: Some((a, b)),
                ..InvariantCheck::fail(STRUCTURAL, "edge endpoint out of range".into())
            };
        }
        if b == d.root {
            return InvariantCheck {
                edge: Some((a, b)),
                ..InvariantCheck::fail(STRUCTURAL, "edge into the root".into())
            };
        }
        if a == b {
            return InvariantCheck {
                edge: Some((a, b)),
                ..InvariantCheck::fail(STRUCTURAL, "self loop".into())
            };
        }
    }
    for (i, node) in d.nodes.iter().enumerate() {
        match node.open.is_empty() {
            Ok(false) => {}
            Ok(true) => {
                return InvariantCheck {
                    nodes: Some(vec![i]),
                    ..InvariantCheck::fail(STRUCTURAL, format!("node {i} has the empty open"))
                }
            }
            Err(e) => return InvariantCheck::fail(STRUCTURAL, e.to_string()),
        }
    }
    // Kahn's algorithm gives acyclicity; a search from the root gives reachability.
    let mut indeg = vec![0usize; n];
    for &(_, b) in &d.edges {
        indeg[b] += 1;
    }
    let mut queue: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut seen = 0;
    while let Some(v) = queue.pop() {
        seen += 1;
        for &(a, b) in &d.edges {
            if a == v {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    queue.push(b);
                }
            }
        }
    }
    if seen < n {
        let cyc: Vec<usize> = (0..n).filter(|&i| indeg[i] > 0).collect();
        return InvariantCheck {
            nodes: Some(cyc),
            ..InvariantCheck::fail(STRUCTURAL, "digraph has a cycle".into())
        };
    }
    let mut reach = vec![false; n];
    reach[d.root] = true;
    let mut stack = vec![d.root];
    while let Some(v) = stack.pop() {
        for &(a, b) in &d.edges {
            if a == v && !reach[b] {
                reach[b] = true;
                stack.push(b);
            }
        }
    }
    let unreachable: Vec<usize> = (0..n).filter(|&i| !reach[i]).collect();
    if !unreachable.is_empty() {
        return InvariantCheck {
            nodes: Some(unreachable),
            ..InvariantCheck::fail(STRUCTURAL, "nodes not reachable from the root".into())
        };
    }
    InvariantCheck::pass(STRUCTURAL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::ring::PresentedRing;

    fn qx() -> RingRef {
        PresentedRing::polynomial(Field::Rationals, &["x"]).unwrap()
    }

    fn g0(r: &RingRef) -> IdealDigraph {
        let root = DigraphNode::parse(r, "1", &["0"]).unwrap();
        let child = DigraphNode::parse(r, "x", &["1"]).unwrap();
        IdealDigraph::new(r.clone(), vec![root, child], vec![(0, 1)], 0).unwrap()
    }

    #[test]
    fn root_only_is_valid() {
        let r = qx();
        let d = IdealDigraph::root_only(&r, vec![r.parse("x").unwrap()]).unwrap();
        assert!(d.validate().unwrap().valid);
    }

    #[test]
    fn g0_is_valid() {
        let r = qx();
        let rep = validate_digraph(&g0(&r)).unwrap();
        assert!(rep.valid, "{rep:?}");
    }

    #[test]
    fn increasing_violation_names_the_edge() {
        let r = qx();
        let root = DigraphNode::parse(&r, "1", &["x"]).unwrap();
        let child = DigraphNode::parse(&r, "x", &["1"]).unwrap();
        let d = IdealDigraph::new(r, vec![root, child], vec![(0, 1)], 0).unwrap();
        let rep = validate_digraph(&d).unwrap();
        assert!(!rep.valid);
        let inc = rep.check(INCREASING).unwrap();
        assert!(!inc.passed);
        assert_eq!(inc.edge, Some((0, 1)));
        assert!(inc.detail.as_ref().unwrap().contains("already equals"));
        for name in [GLOBAL, FUNCTIONAL, DECREASING, STRUCTURAL] {
            assert!(rep.check(name).unwrap().passed, "{name}");
        }
    }

    #[test]
    fn each_invariant_can_fail_alone() {
        let r = qx();
        let n = |o: &str, g: &str| DigraphNode::parse(&r, o, &[g]).unwrap();
        // Root is not D(1).
        let d = IdealDigraph::new(r.clone(), vec![n("x", "0")], vec![], 0).unwrap();
        assert!(!validate_digraph(&d).unwrap().check(GLOBAL).unwrap().passed);
        // Two nodes over D(x) = D(x^2).
        let d = IdealDigraph::new(
            r.clone(),
            vec![n("1", "0"), n("x", "1"), n("x^2", "1")],
            vec![(0, 1), (0, 2)],
            0,
        )
        .unwrap();
        assert_eq!(
            validate_digraph(&d)
                .unwrap()
                .check(FUNCTIONAL)
                .unwrap()
                .nodes,
            Some(vec![1, 2])
        );
        // Edge between incomparable opens.
        let d = IdealDigraph::new(
            r.clone(),
            vec![n("1", "0"), n("x", "1"), n("x-1", "1")],
            vec![(0, 1), (1, 2)],
            0,
        )
        .unwrap();
        assert_eq!(
            validate_digraph(&d)
                .unwrap()
                .check(DECREASING)
                .unwrap()
                .edge,
            Some((1, 2))
        );
        // Unreachable node.
        let d = IdealDigraph::new(r.clone(), vec![n("1", "0"), n("x", "1")], vec![], 0).unwrap();
        assert_eq!(
            validate_digraph(&d)
                .unwrap()
                .check(STRUCTURAL)
                .unwrap()
                .nodes,
            Some(vec![1])
        );
        assert!(d.require_valid().is_err());
    }
}
