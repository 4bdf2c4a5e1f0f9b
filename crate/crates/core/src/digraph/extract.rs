//! Extracting a finite digraph from a sheaf oracle.
//!
//! Starting from the root `⟨D(1), 𝓘(D(1))⟩`, each generation looks at the
//! test-basis opens strictly inside a node and keeps those on which the
//! oracle's value strictly exceeds the localization of the node's value
//! (the expansive opens). Only the maximal expansive opens become children;
//! smaller ones are reached from those children if they are still
//! expansive there. Every root-to-leaf path then carries a strictly
//! increasing chain of saturated ideals, which bounds the depth; a
//! configured depth limit guards against oracles that are not sheaves.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::{IdealHandle, RingRef};
use crate::topology::DistinguishedOpen;

use super::model::{validate_digraph, DigraphNode, IdealDigraph, ValidationReport};
use super::sheaf::evaluate_sheaf;

/// A queryable sheaf of ideals.
pub trait SheafOracle {
    fn ring(&self) -> &RingRef;

    /// Candidate opens examined at every node.
    fn basis(&self) -> &[DistinguishedOpen];

    /// Global generators of the section ideal over `u`, as an ideal of the
    /// base ring (to be read in the coordinate ring of `u`).
    fn value(&self, u: &DistinguishedOpen) -> Result<IdealHandle>;

    fn describe(&self) -> String;
}

/// The sheaf attached to a fixed ideal: its value on `D(h)` is the ideal
/// localized at `h`.
#[derive(Debug, Clone)]
pub struct QuasiCoherentOracle {
    pub ideal: IdealHandle,
    pub basis: Vec<DistinguishedOpen>,
}

impl SheafOracle for QuasiCoherentOracle {
    fn ring(&self) -> &RingRef {
        self.ideal.ring()
    }

    fn basis(&self) -> &[DistinguishedOpen] {
        &self.basis
    }

    fn value(&self, _u: &DistinguishedOpen) -> Result<IdealHandle> {
        Ok(self.ideal.clone())
    }

    fn describe(&self) -> String {
        format!("quasi-coherent {}", self.ideal.render())
    }
}

/// Value on `U`: a base ideal plus the ideals of every piece whose open
/// contains `U`. The sheaf generated by a digraph whose children have unit
/// ideals, such as `G₀`, has this shape.
#[derive(Debug, Clone)]
pub struct PiecewiseOracle {
    pub ring: RingRef,
    pub base: Vec<Polynomial>,
    pub pieces: Vec<(DistinguishedOpen, Vec<Polynomial>)>,
    pub basis: Vec<DistinguishedOpen>,
}

impl SheafOracle for PiecewiseOracle {
    fn ring(&self) -> &RingRef {
        &self.ring
    }

    fn basis(&self) -> &[DistinguishedOpen] {
        &self.basis
    }

    fn value(&self, u: &DistinguishedOpen) -> Result<IdealHandle> {
        let mut gens = self.base.clone();
        for (w, g) in &self.pieces {
            if w.contains(u)? {
                gens.extend(g.iter().cloned());
            }
        }
        IdealHandle::new(self.ring.clone(), gens)
    }

    fn describe(&self) -> String {
        let pieces: Vec<String> = self
            .pieces
            .iter()
            .map(|(w, g)| {
                let gs: Vec<String> = g.iter().map(|p| self.ring.render(p)).collect();
                format!("{w}: ({})", gs.join(", "))
            })
            .collect();
        format!("piecewise [{}]", pieces.join("; "))
    }
}

/// The sheaf generated by an existing digraph (univariate rings).
#[derive(Debug, Clone)]
pub struct DigraphOracle {
    pub digraph: IdealDigraph,
    pub basis: Vec<DistinguishedOpen>,
}

impl SheafOracle for DigraphOracle {
    fn ring(&self) -> &RingRef {
        self.digraph.ring()
    }

    fn basis(&self) -> &[DistinguishedOpen] {
        &self.basis
    }

    fn value(&self, u: &DistinguishedOpen) -> Result<IdealHandle> {
        let v = evaluate_sheaf(&self.digraph, u)?;
        IdealHandle::new(self.digraph.ring().clone(), v.generators().to_vec())
    }

    fn describe(&self) -> String {
        format!(
            "sheaf generated by a {}-node digraph",
            self.digraph.nodes().len()
        )
    }
}

/// Explicit values on finitely many opens, looked up by open equality.
#[derive(Debug, Clone)]
pub struct TableOracle {
    pub ring: RingRef,
    pub entries: Vec<(DistinguishedOpen, Vec<Polynomial>)>,
    pub basis: Vec<DistinguishedOpen>,
}

impl SheafOracle for TableOracle {
    fn ring(&self) -> &RingRef {
        &self.ring
    }

    fn basis(&self) -> &[DistinguishedOpen] {
        &self.basis
    }

    fn value(&self, u: &DistinguishedOpen) -> Result<IdealHandle> {
        for (w, g) in &self.entries {
            if w.equals(u)? {
                return IdealHandle::new(self.ring.clone(), g.clone());
            }
        }
        Err(Error::domain(format!("oracle table has no entry for {u}")))
    }

    fn describe(&self) -> String {
        format!("table with {} entries", self.entries.len())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ExtractOptions {
    pub depth_bound: usize,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions { depth_bound: 32 }
    }
}

/// Per-edge check that saturated global ideals strictly increase.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TerminationCertificate {
    pub edges_checked: usize,
    pub strictly_increasing: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_edge: Option<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct Extraction {
    pub digraph: IdealDigraph,
    pub generations: usize,
    pub validation: ValidationReport,
    pub certificate: TerminationCertificate,
}

fn localized(ideal: &IdealHandle, u: &DistinguishedOpen) -> Result<IdealHandle> {
    ideal.extend_to(&u.coordinate_ring()?)
}

pub fn extract_digraph(oracle: &dyn SheafOracle, options: ExtractOptions) -> Result<Extraction> {
    let ring = oracle.ring().clone();
    let whole = DistinguishedOpen::whole(&ring);
    let mut nodes = vec![DigraphNode {
        ideal: oracle.value(&whole)?,
        open: whole,
    }];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut frontier = vec![0usize];
    let mut generations = 0;
    let basis: Vec<DistinguishedOpen> = oracle
        .basis()
        .iter()
        .filter_map(|b| match b.is_empty() {
            Ok(true) => None,
            Ok(false) => Some(Ok(b.clone())),
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<_>>()?;

    while !frontier.is_empty() {
        if generations >= options.depth_bound {
            return Err(Error::Resource {
                budget: "extraction depth",
                limit: options.depth_bound,
            });
        }
        let mut next = Vec::new();
        for &p in &frontier {
            let parent_open = nodes[p].open.clone();
            let parent_ideal = nodes[p].ideal.clone();
            let mut expansive: Vec<(DistinguishedOpen, IdealHandle)> = Vec::new();
            for b in &basis {
                if !parent_open.strictly_contains(b)? {
                    continue;
                }
                let value = oracle.value(b)?;
                let here = localized(&value, b)?;
                let from_parent = localized(&parent_ideal, b)?;
                if !here.contains_ideal(&from_parent)? {
                    return Err(Error::Oracle {
                        larger: parent_open.render(),
                        smaller: b.render(),
                    });
                }
                if here.equals(&from_parent)? {
                    continue;
                }
                let mut dup = false;
                for (o, _) in &expansive {
                    if o.equals(b)? {
                        dup = true;
                        break;
                    }
                }
                if !dup {
                    expansive.push((b.clone(), value));
                }
            }
            let mut maximal = Vec::new();
            for (i, (o, v)) in expansive.iter().enumerate() {
                let mut inside_other = false;
                for (j, (w, _)) in expansive.iter().enumerate() {
                    if i != j && w.strictly_contains(o)? {
                        inside_other = true;
                        break;
                    }
                }
                if !inside_other {
                    maximal.push((o.clone(), v.clone()));
                }
            }
            for (o, v) in maximal {
                let mut existing = None;
                for (k, n) in nodes.iter().enumerate() {
                    if n.open.equals(&o)? {
                        existing = Some(k);
                        break;
                    }
                }
                let idx = match existing {
                    Some(k) => k,
                    None => {
                        nodes.push(DigraphNode { open: o, ideal: v });
                        next.push(nodes.len() - 1);
                        nodes.len() - 1
                    }
                };
                if !edges.contains(&(p, idx)) {
                    edges.push((p, idx));
                }
            }
        }
        frontier = next;
        generations += 1;
    }
    let digraph = IdealDigraph::new(ring, nodes, edges, 0)?;
    let validation = validate_digraph(&digraph)?;
    let certificate = termination_certificate(&digraph)?;
    Ok(Extraction {
        digraph,
        generations,
        validation,
        certificate,
    })
}

/// For every edge `a -> b`, checks `K_a : f_a^∞ ⊊ K_b : f_b^∞` in the base
/// ring, so that every path carries a strictly increasing chain.
pub fn termination_certificate(d: &IdealDigraph) -> Result<TerminationCertificate> {
    let ring = d.ring();
    let sat = |i: usize| -> Result<IdealHandle> {
        let n = &d.nodes()[i];
        ring.ideal(ring.saturation(n.ideal.generators(), n.open.f())?)
    };
    for &(a, b) in d.edges() {
        let (sa, sb) = (sat(a)?, sat(b)?);
        if !sb.contains_ideal(&sa)? || sb.equals(&sa)? {
            return Ok(TerminationCertificate {
                edges_checked: d.edges().len(),
                strictly_increasing: false,
                failing_edge: Some((a, b)),
            });
        }
    }
    Ok(TerminationCertificate {
        edges_checked: d.edges().len(),
        strictly_increasing: true,
        failing_edge: None,
    })
}

/// One comparison between an oracle and a digraph's generated sheaf.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundTripEntry {
    pub open: String,
    pub oracle: Vec<String>,
    pub digraph: Vec<String>,
    pub equal: bool,
}

/// The basis opens together with their nonempty pairwise intersections.
pub fn basis_with_intersections(basis: &[DistinguishedOpen]) -> Result<Vec<DistinguishedOpen>> {
    let mut out: Vec<DistinguishedOpen> = basis.to_vec();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let w = basis[i].intersect(&basis[j]);
            if !w.is_empty()? {
                out.push(w);
            }
        }
    }
    Ok(out)
}

/// Compares oracle values with the digraph's section ideals on `opens`
/// (exact ideal equality in each coordinate ring; univariate rings).
pub fn round_trip(
    oracle: &dyn SheafOracle,
    d: &IdealDigraph,
    opens: &[DistinguishedOpen],
) -> Result<Vec<RoundTripEntry>> {
    let mut out = Vec::new();
    for u in opens {
        let expected = localized(&oracle.value(u)?, u)?;
        let got = evaluate_sheaf(d, u)?;
        out.push(RoundTripEntry {
            open: u.render(),
            oracle: expected.render_canonical()?,
            digraph: got.render_canonical()?,
            equal: expected.equals(&got)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::ring::PresentedRing;

    fn qx() -> RingRef {
        PresentedRing::polynomial(Field::Rationals, &["x"]).unwrap()
    }

    fn opens(r: &RingRef, fs: &[&str]) -> Vec<DistinguishedOpen> {
        fs.iter()
            .map(|f| DistinguishedOpen::parse(r, f).unwrap())
            .collect()
    }

    fn g0_oracle(r: &RingRef) -> PiecewiseOracle {
        PiecewiseOracle {
            ring: r.clone(),
            base: vec![r.zero()],
            pieces: vec![(DistinguishedOpen::parse(r, "x").unwrap(), vec![r.one()])],
            basis: opens(r, &["x", "x-1", "x*(x-1)"]),
        }
    }

    #[test]
    fn quasi_coherent_oracle_gives_root_only() {
        let r = qx();
        let o = QuasiCoherentOracle {
            ideal: r.ideal_strs(&["x-1"]).unwrap(),
            basis: opens(&r, &["x", "x-1", "x*(x-1)"]),
        };
        let ex = extract_digraph(&o, ExtractOptions::default()).unwrap();
        assert_eq!(ex.digraph.nodes().len(), 1);
        assert!(ex.validation.valid);
        let all = basis_with_intersections(o.basis()).unwrap();
        assert!(round_trip(&o, &ex.digraph, &all)
            .unwrap()
            .iter()
            .all(|e| e.equal));
    }

    #[test]
    fn g0_oracle_gives_two_nodes() {
        let r = qx();
        let o = g0_oracle(&r);
        let ex = extract_digraph(&o, ExtractOptions::default()).unwrap();
        assert_eq!(ex.digraph.nodes().len(), 2);
        assert_eq!(ex.digraph.edges(), &[(0, 1)]);
        assert!(ex.digraph.nodes()[1]
            .open
            .equals(&DistinguishedOpen::parse(&r, "x").unwrap())
            .unwrap());
        assert!(ex.validation.valid);
        assert!(ex.certificate.strictly_increasing);
        let all = basis_with_intersections(o.basis()).unwrap();
        let rt = round_trip(&o, &ex.digraph, &all).unwrap();
        assert!(rt.iter().all(|e| e.equal), "{rt:?}");
    }

    #[test]
    fn unit_oracle_gives_unit_root() {
        let r = qx();
        let o = QuasiCoherentOracle {
            ideal: r.ideal_strs(&["1"]).unwrap(),
            basis: opens(&r, &["x", "x+1"]),
        };
        let ex = extract_digraph(&o, ExtractOptions::default()).unwrap();
        assert_eq!(ex.digraph.nodes().len(), 1);
        assert!(ex.digraph.nodes()[0].ideal.is_unit().unwrap());
    }

    #[test]
    fn presheaf_violation_is_reported() {
        let r = qx();
        // Value (x) globally but (0) on D(x-1): restriction fails.
        let o = TableOracle {
            ring: r.clone(),
            entries: vec![
                (DistinguishedOpen::whole(&r), vec![r.parse("x").unwrap()]),
                (DistinguishedOpen::parse(&r, "x-1").unwrap(), vec![]),
            ],
            basis: opens(&r, &["x-1"]),
        };
        match extract_digraph(&o, ExtractOptions::default()) {
            Err(Error::Oracle { larger, smaller }) => {
                assert_eq!(larger, "D(1)");
                assert_eq!(smaller, "D(x - 1)");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn chains_of_children() {
        // Two overlapping children; their intersection needs a grandchild.
        let r = qx();
        let d = IdealDigraph::new(
            r.clone(),
            vec![
                DigraphNode::parse(&r, "1", &["x^2*(x-1)^2"]).unwrap(),
                DigraphNode::parse(&r, "x-1", &["x"]).unwrap(),
                DigraphNode::parse(&r, "x+1", &["(x-1)"]).unwrap(),
            ],
            vec![(0, 1), (0, 2)],
            0,
        )
        .unwrap();
        assert!(d.validate().unwrap().valid);
        let o = DigraphOracle {
            digraph: d.clone(),
            basis: opens(&r, &["x-1", "x+1", "x", "(x-1)*(x+1)", "x*(x+1)"]),
        };
        let ex = extract_digraph(&o, ExtractOptions::default()).unwrap();
        assert!(ex.validation.valid, "{:?}", ex.validation);
        assert!(ex.certificate.strictly_increasing);
        let all = basis_with_intersections(o.basis()).unwrap();
        let rt = round_trip(&o, &ex.digraph, &all).unwrap();
        assert!(rt.iter().all(|e| e.equal), "{rt:?}");
    }

    #[test]
    fn depth_bound_is_enforced() {
        let r = qx();
        let o = g0_oracle(&r);
        let err = extract_digraph(&o, ExtractOptions { depth_bound: 1 }).unwrap_err();
        assert!(matches!(
            err,
            Error::Resource {
                budget: "extraction depth",
                ..
            }
        ));
    }
}
