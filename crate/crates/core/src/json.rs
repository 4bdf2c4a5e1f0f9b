//! JSON descriptors for rings, ideals, opens, digraphs, oracles and finite
//! modules. Polynomials are written as strings in the ring's variables.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::digraph::{
    clear_denominators, DigraphNode, DigraphOracle, Fraction, FractionNode, IdealDigraph,
    PiecewiseOracle, QuasiCoherentOracle, SheafOracle, TableOracle, ZZSheafData,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::finite::{FiniteModule, FiniteRing};
use crate::groebner::Budget;
use crate::poly::{MonomialOrder, Polynomial};
use crate::ring::{IdealHandle, PresentedRing, RingRef};
use crate::topology::{DistinguishedOpen, FiniteSpace, OpenCover};

/// Parses `src` in `ring`, naming the descriptor field on failure.
pub fn parse_in(ring: &RingRef, src: &str, what: &str) -> Result<Polynomial> {
    ring.parse(src).map_err(|e| match e {
        Error::Parse {
            message,
            line,
            column,
        } => Error::Parse {
            message: format!("{what} `{src}`: {message}"),
            line,
            column,
        },
        other => other,
    })
}

fn parse_all(ring: &RingRef, srcs: &[String], what: &str) -> Result<Vec<Polynomial>> {
    srcs.iter().map(|s| parse_in(ring, s, what)).collect()
}

fn render_all(ring: &RingRef, ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| ring.render(p)).collect()
}

fn default_field() -> String {
    "q".to_string()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderDesc {
    #[default]
    Degrevlex,
    Lex,
}

/// `{"field": "q" | "fp:<p>", "vars": [...], "quotient": [...], "inverted": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDesc {
    #[serde(default = "default_field")]
    pub field: String,
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub quotient: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inverted: Vec<String>,
    #[serde(default, skip_serializing_if = "is_default_order")]
    pub order: OrderDesc,
}

fn is_default_order(o: &OrderDesc) -> bool {
    *o == OrderDesc::Degrevlex
}

impl RingDesc {
    pub fn build(&self, budget: Budget) -> Result<RingRef> {
        let field = Field::parse(&self.field)?;
        let bare = PresentedRing::new(
            field,
            self.vars.clone(),
            Vec::new(),
            Vec::new(),
            MonomialOrder::DegRevLex,
            budget,
        )?;
        let quotient = parse_all(&bare, &self.quotient, "quotient relation")?;
        let inverted = parse_all(&bare, &self.inverted, "inverted element")?;
        let order = match self.order {
            OrderDesc::Degrevlex => MonomialOrder::DegRevLex,
            OrderDesc::Lex => MonomialOrder::Lex,
        };
        PresentedRing::new(field, self.vars.clone(), quotient, inverted, order, budget)
    }

    pub fn describe(ring: &RingRef) -> Self {
        RingDesc {
            field: ring.field().to_string(),
            vars: ring.vars().to_vec(),
            quotient: render_all(ring, ring.quotient()),
            inverted: render_all(ring, ring.inverted()),
            order: match ring.order() {
                MonomialOrder::Lex => OrderDesc::Lex,
                _ => OrderDesc::Degrevlex,
            },
        }
    }
}

/// `{"ring": …, "generators": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealDesc {
    pub ring: RingDesc,
    pub generators: Vec<String>,
}

impl IdealDesc {
    pub fn build(&self, budget: Budget) -> Result<IdealHandle> {
        let ring = self.ring.build(budget)?;
        let gens = parse_all(&ring, &self.generators, "generator")?;
        ring.ideal(gens)
    }
}

/// An open `D(f)`, written either as `"f"` or as `{"f": "f"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OpenDesc {
    Bare(String),
    Element { f: String },
}

impl OpenDesc {
    pub fn source(&self) -> &str {
        match self {
            OpenDesc::Bare(s) | OpenDesc::Element { f: s } => s,
        }
    }

    pub fn build(&self, ring: &RingRef) -> Result<DistinguishedOpen> {
        DistinguishedOpen::new(ring.clone(), parse_in(ring, self.source(), "open")?)
    }

    pub fn describe(u: &DistinguishedOpen) -> Self {
        OpenDesc::Element {
            f: u.ring().render(u.f()),
        }
    }
}

pub fn build_opens(ring: &RingRef, opens: &[OpenDesc]) -> Result<Vec<DistinguishedOpen>> {
    opens.iter().map(|o| o.build(ring)).collect()
}

/// `{"target": open (default D(1)), "pieces": [open, …]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverDesc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<OpenDesc>,
    pub pieces: Vec<OpenDesc>,
}

impl CoverDesc {
    pub fn build(&self, ring: &RingRef) -> Result<OpenCover> {
        let target = match &self.target {
            Some(t) => t.build(ring)?,
            None => DistinguishedOpen::whole(ring),
        };
        OpenCover::new(target, build_opens(ring, &self.pieces)?)
    }
}

/// A generator: a polynomial, or a fraction `{"num": …, "den": …}` whose
/// denominator is a unit on the node's open.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorDesc {
    Polynomial(String),
    Fraction { num: String, den: String },
}

impl GeneratorDesc {
    pub fn build(&self, ring: &RingRef) -> Result<Fraction> {
        match self {
            GeneratorDesc::Polynomial(p) => Ok(Fraction::whole(parse_in(ring, p, "generator")?)),
            GeneratorDesc::Fraction { num, den } => Fraction::new(
                parse_in(ring, num, "numerator")?,
                parse_in(ring, den, "denominator")?,
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDesc {
    pub open: OpenDesc,
    pub generators: Vec<GeneratorDesc>,
}

/// `{"ring": …, "nodes": [{"open": …, "generators": [...]}, …],
/// "edges": [[parent, child], …], "root": i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DigraphDesc {
    pub ring: RingDesc,
    pub nodes: Vec<NodeDesc>,
    #[serde(default)]
    pub edges: Vec<(usize, usize)>,
    #[serde(default)]
    pub root: usize,
}

impl DigraphDesc {
    pub fn build(&self, budget: Budget) -> Result<IdealDigraph> {
        let ring = self.ring.build(budget)?;
        self.build_in(&ring)
    }

    pub fn build_in(&self, ring: &RingRef) -> Result<IdealDigraph> {
        if self.root >= self.nodes.len() {
            return Err(Error::validation(format!(
                "root {} is not a node",
                self.root
            )));
        }
        for &(a, b) in &self.edges {
            if a >= self.nodes.len() || b >= self.nodes.len() {
                return Err(Error::validation(format!(
                    "edge ({a}, {b}) names a missing node"
                )));
            }
        }
        let mut fractional = false;
        let mut nodes = Vec::with_capacity(self.nodes.len());
        for n in &self.nodes {
            let open = n.open.build(ring)?;
            let generators = n
                .generators
                .iter()
                .map(|g| g.build(ring))
                .collect::<Result<Vec<_>>>()?;
            fractional |= generators.iter().any(|g| !g.den.is_one());
            nodes.push(FractionNode { open, generators });
        }
        if fractional {
            return clear_denominators(ring, nodes, self.edges.clone(), self.root);
        }
        let nodes = nodes
            .into_iter()
            .map(|n| DigraphNode::new(n.open, n.generators.into_iter().map(|g| g.num).collect()))
            .collect::<Result<Vec<_>>>()?;
        IdealDigraph::new(ring.clone(), nodes, self.edges.clone(), self.root)
    }

    pub fn describe(d: &IdealDigraph) -> Self {
        let ring = d.ring();
        DigraphDesc {
            ring: RingDesc::describe(ring),
            nodes: d
                .nodes()
                .iter()
                .map(|n| NodeDesc {
                    open: OpenDesc::describe(&n.open),
                    generators: n
                        .ideal
                        .generators()
                        .iter()
                        .map(|g| GeneratorDesc::Polynomial(ring.render(g)))
                        .collect(),
                })
                .collect(),
            edges: d.edges().to_vec(),
            root: d.root(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDesc {
    pub open: OpenDesc,
    pub generators: Vec<String>,
}

fn build_entries(
    ring: &RingRef,
    entries: &[EntryDesc],
) -> Result<Vec<(DistinguishedOpen, Vec<Polynomial>)>> {
    entries
        .iter()
        .map(|e| {
            Ok((
                e.open.build(ring)?,
                parse_all(ring, &e.generators, "generator")?,
            ))
        })
        .collect()
}

/// A sheaf oracle, tagged by `"kind"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum OracleDesc {
    /// The sheaf `Ĩ` of a fixed ideal.
    QuasiCoherent {
        ring: RingDesc,
        generators: Vec<String>,
        basis: Vec<OpenDesc>,
    },
    /// A base ideal plus the ideal of every piece whose open contains the
    /// queried one.
    Piecewise {
        ring: RingDesc,
        #[serde(default)]
        base: Vec<String>,
        pieces: Vec<EntryDesc>,
        basis: Vec<OpenDesc>,
    },
    /// Explicit values; the whole space and every basis open need an entry.
    Table {
        ring: RingDesc,
        entries: Vec<EntryDesc>,
        basis: Vec<OpenDesc>,
    },
    /// The sheaf generated by a digraph (univariate rings).
    Digraph {
        digraph: DigraphDesc,
        basis: Vec<OpenDesc>,
    },
}

impl OracleDesc {
    pub fn build(&self, budget: Budget) -> Result<Box<dyn SheafOracle>> {
        Ok(match self {
            OracleDesc::QuasiCoherent {
                ring,
                generators,
                basis,
            } => {
                let ring = ring.build(budget)?;
                let ideal = ring.ideal(parse_all(&ring, generators, "generator")?)?;
                Box::new(QuasiCoherentOracle {
                    basis: build_opens(&ring, basis)?,
                    ideal,
                })
            }
            OracleDesc::Piecewise {
                ring,
                base,
                pieces,
                basis,
            } => {
                let ring = ring.build(budget)?;
                Box::new(PiecewiseOracle {
                    base: parse_all(&ring, base, "generator")?,
                    pieces: build_entries(&ring, pieces)?,
                    basis: build_opens(&ring, basis)?,
                    ring,
                })
            }
            OracleDesc::Table {
                ring,
                entries,
                basis,
            } => {
                let ring = ring.build(budget)?;
                Box::new(TableOracle {
                    entries: build_entries(&ring, entries)?,
                    basis: build_opens(&ring, basis)?,
                    ring,
                })
            }
            OracleDesc::Digraph { digraph, basis } => {
                let d = digraph.build(budget)?;
                Box::new(DigraphOracle {
                    basis: build_opens(d.ring(), basis)?,
                    digraph: d,
                })
            }
        })
    }
}

/// A finite space given by a preorder: the edge `[a, b]` puts `a` below
/// `b`, so every open containing `b` contains `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDesc {
    pub points: usize,
    #[serde(default)]
    pub edges: Vec<(usize, usize)>,
}

impl SpaceDesc {
    pub fn build(&self) -> Result<FiniteSpace> {
        FiniteSpace::from_edges(self.points, &self.edges)
    }
}

pub fn mask_of(points: &[usize]) -> Result<u32> {
    points.iter().try_fold(0u32, |acc, &p| {
        if p >= crate::topology::MAX_POINTS {
            Err(Error::domain(format!("point {p} is out of range")))
        } else {
            Ok(acc | 1 << p)
        }
    })
}

pub fn points_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|&p| mask >> p & 1 == 1).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZZValueDesc {
    pub open: Vec<usize>,
    pub n: u64,
}

/// An ideal sheaf of the constant sheaf `ℤ`: either a value per connected
/// open, or a value per point (on the minimal open around it).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZZSheafDesc {
    pub space: SpaceDesc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<ZZValueDesc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point_values: Option<Vec<u64>>,
}

impl ZZSheafDesc {
    pub fn build(&self) -> Result<ZZSheafData> {
        let space = self.space.build()?;
        match (&self.values, &self.point_values) {
            (Some(values), None) => {
                let mut map = BTreeMap::new();
                for v in values {
                    map.insert(mask_of(&v.open)?, v.n);
                }
                ZZSheafData::new(space, map)
            }
            (None, Some(pv)) => ZZSheafData::from_points(space, pv),
            _ => Err(Error::validation(
                "give exactly one of `values` and `point_values`",
            )),
        }
    }
}

/// `{"zmod": n}`, `{"fp_quotient": {"p": p, "modulus": [c0, c1, …, 1]}}` or
/// `{"product": [ring, …]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum FiniteRingDesc {
    Zmod(u64),
    FpQuotient { p: u64, modulus: Vec<i64> },
    Product(Vec<FiniteRingDesc>),
}

impl FiniteRingDesc {
    pub fn build(&self) -> Result<FiniteRing> {
        match self {
            FiniteRingDesc::Zmod(n) => FiniteRing::zmod(*n),
            FiniteRingDesc::FpQuotient { p, modulus } => FiniteRing::fp_quotient(*p, modulus),
            FiniteRingDesc::Product(fs) => {
                let rings = fs.iter().map(|f| f.build()).collect::<Result<Vec<_>>>()?;
                FiniteRing::product(&rings)
            }
        }
    }
}

/// `R/I₁ ⊕ … ⊕ R/I_k`; each summand lists the generators of `I_j` as ring
/// coordinate vectors (an empty list is `R` itself). No summands gives 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteModuleDesc {
    pub ring: FiniteRingDesc,
    #[serde(default)]
    pub cyclics: Vec<Vec<Vec<i64>>>,
}

impl FiniteModuleDesc {
    pub fn build(&self) -> Result<FiniteModule> {
        let ring = Arc::new(self.ring.build()?);
        for gens in &self.cyclics {
            if let Some(g) = gens.iter().find(|g| g.len() != ring.rank()) {
                return Err(Error::validation(format!(
                    "ideal generator {g:?} does not have {} coordinates",
                    ring.rank()
                )));
            }
        }
        if self.cyclics.is_empty() {
            return Ok(FiniteModule::zero(&ring));
        }
        FiniteModule::sum_of_cyclics(&ring, &self.cyclics)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::validate_digraph;

    #[test]
    fn ring_round_trip() {
        let desc: RingDesc =
            serde_json::from_str(r#"{"field": "fp:5", "vars": ["x", "y"], "inverted": ["x"]}"#)
                .unwrap();
        let ring = desc.build(Budget::default()).unwrap();
        let back = RingDesc::describe(&ring);
        assert_eq!(back.field, "F5");
        assert_eq!(back.inverted, vec!["x"]);
        assert_eq!(back.build(Budget::default()).unwrap().field(), ring.field());
    }

    #[test]
    fn unknown_variable_is_named() {
        let desc: IdealDesc =
            serde_json::from_str(r#"{"ring": {"vars": ["x"]}, "generators": ["x + z"]}"#).unwrap();
        match desc.build(Budget::default()) {
            Err(Error::Parse { message, .. }) => assert!(message.contains("`z`"), "{message}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn digraph_with_fraction() {
        let desc: DigraphDesc = serde_json::from_str(
            r#"{"ring": {"vars": ["x"]},
                "nodes": [{"open": "1", "generators": ["0"]},
                          {"open": {"f": "x"}, "generators": [{"num": "1", "den": "x^2"}]}],
                "edges": [[0, 1]], "root": 0}"#,
        )
        .unwrap();
        let d = desc.build(Budget::default()).unwrap();
        assert!(validate_digraph(&d).unwrap().valid);
        let back = DigraphDesc::describe(&d);
        assert_eq!(
            back.nodes[1].generators,
            vec![GeneratorDesc::Polynomial("1".into())]
        );
    }

    #[test]
    fn oracles_and_modules() {
        let o: OracleDesc = serde_json::from_str(
            r#"{"kind": "quasi-coherent", "ring": {"vars": ["x"]}, "generators": ["x - 1"], "basis": ["x"]}"#,
        )
        .unwrap();
        assert_eq!(o.build(Budget::default()).unwrap().basis().len(), 1);
        let m: FiniteModuleDesc =
            serde_json::from_str(r#"{"ring": {"zmod": 4}, "cyclics": [[[2]], []]}"#).unwrap();
        assert_eq!(m.build().unwrap().size(), 8);
        let r: FiniteRingDesc = serde_json::from_str(
            r#"{"product": [{"zmod": 2}, {"fp_quotient": {"p": 2, "modulus": [0, 0, 1]}}]}"#,
        )
        .unwrap();
        assert_eq!(r.build().unwrap().size(), 8);
        let z: ZZSheafDesc = serde_json::from_str(
            r#"{"space": {"points": 2, "edges": [[0, 1]]}, "values": [{"open": [0, 1], "n": 4}, {"open": [0], "n": 2}]}"#,
        )
        .unwrap();
        assert_eq!(z.build().unwrap().value(0b01), Some(2));
    }
}
