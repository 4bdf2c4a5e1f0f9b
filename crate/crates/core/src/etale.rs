//! The tower of double covers of the punctured line.
//!
//! Level `n` is `k[x]` with `x` and a list of `x^e − 2` inverted, and the
//! map from level `n − 1` to level `n` is `x ↦ x²`. The ideal `(x − 1)` at
//! each level, pulled back to higher levels, generates strictly less than
//! `(x − 1)` there; the suite verifies this and the supporting facts level
//! by level.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::Budget;
use crate::poly::{MonomialOrder, Polynomial};
use crate::ring::{IdealHandle, PresentedRing, RingRef};

pub const MAX_TOWER_DEPTH: usize = 8;

/// Which `x^e − 2` are inverted at level `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExponentRule {
    /// `e = 2, 4, …, 2^n`: the deleted points of every lower level, pulled
    /// back along `x ↦ x²`.
    Power,
    /// `e = 2, 4, …, 2n`, the exponents of the displayed formula.
    Literal,
}

impl ExponentRule {
    pub fn exponents(self, n: usize) -> Vec<u32> {
        match self {
            ExponentRule::Power => (1..=n).map(|j| 1u32 << j).collect(),
            ExponentRule::Literal => (1..=n).map(|j| 2 * j as u32).collect(),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "power" => Ok(ExponentRule::Power),
            "literal" => Ok(ExponentRule::Literal),
            _ => Err(Error::domain(format!(
                "unknown exponent rule `{s}` (expected power or literal)"
            ))),
        }
    }
}

impl fmt::Display for ExponentRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExponentRule::Power => "power",
            ExponentRule::Literal => "literal",
        })
    }
}

#[derive(Debug, Clone)]
pub struct TowerLevel {
    pub n: usize,
    pub rule: ExponentRule,
    pub ring: RingRef,
    /// `(x − 1)`.
    pub ideal: IdealHandle,
}

fn x_pow_minus(field: Field, e: u32, c: i64) -> Polynomial {
    &Polynomial::var(field, 1, 0).pow(e) - &Polynomial::from_i64(field, 1, c)
}

pub fn tower_ring(n: usize, field: Field, rule: ExponentRule) -> Result<TowerLevel> {
    if field.characteristic() == 2 {
        return Err(Error::domain(
            "the squaring tower needs a field of characteristic other than 2",
        ));
    }
    let x = Polynomial::var(field, 1, 0);
    let mut inverted = vec![x];
    inverted.extend(
        rule.exponents(n)
            .into_iter()
            .map(|e| x_pow_minus(field, e, 2)),
    );
    let ring = PresentedRing::new(
        field,
        vec!["x".to_string()],
        Vec::new(),
        inverted,
        MonomialOrder::DegRevLex,
        Budget::default(),
    )?;
    let ideal = IdealHandle::new(ring.clone(), vec![x_pow_minus(field, 1, 1)])?;
    Ok(TowerLevel {
        n,
        rule,
        ring,
        ideal,
    })
}

/// Pullback along `k` squaring maps: `p(x) ↦ p(x^{2^k})`.
fn pull_back(p: &Polynomial, k: usize) -> Polynomial {
    let x = Polynomial::var(p.field(), 1, 0);
    p.substitute(&[x.pow(1 << k)])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverMapReport {
    pub source: usize,
    pub target: usize,
    /// Every inverted element of the source maps to a unit.
    pub well_defined: bool,
    /// The derivative `2x` of `x²` is a unit of the target.
    pub unramified: bool,
    /// Composing the squaring maps from level 0 gives `x ↦ x^{2^n}`, and
    /// pulling `(x − 1)` back step by step agrees with pulling it back once.
    pub composite_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CoverMapReport {
    pub fn passed(&self) -> bool {
        self.well_defined && self.unramified && self.composite_ok
    }
}

pub fn verify_cover_map(source: &TowerLevel, target: &TowerLevel) -> Result<CoverMapReport> {
    if target.n != source.n + 1
        || source.ring.field() != target.ring.field()
        || source.rule != target.rule
    {
        return Err(Error::domain(format!(
            "cover maps go between consecutive levels of one tower, not {} -> {}",
            source.n, target.n
        )));
    }
    let field = target.ring.field();
    let mut witness = None;
    let mut well_defined = true;
    for g in source.ring.inverted() {
        let image = pull_back(g, 1);
        if !target.ring.is_unit(&image)? {
            well_defined = false;
            witness = Some(format!(
                "{} maps to {}, which is not a unit at level {}",
                source.ring.render(g),
                target.ring.render(&image),
                target.n
            ));
            break;
        }
    }
    let two_x = Polynomial::var(field, 1, 0).pow(2).derivative(0);
    let unramified = target.ring.is_unit(&two_x)?;
    if !unramified && witness.is_none() {
        witness = Some(format!("{} is not a unit", target.ring.render(&two_x)));
    }
    let x = Polynomial::var(field, 1, 0);
    let stepwise = (0..target.n).fold(x.clone(), |acc, _| pull_back(&acc, 1));
    let line = x_pow_minus(field, 1, 1);
    let stepwise_ideal = (0..target.n).fold(line.clone(), |acc, _| pull_back(&acc, 1));
    let composite_ok =
        stepwise == x.pow(1 << target.n) && stepwise_ideal == pull_back(&line, target.n);
    Ok(CoverMapReport {
        source: source.n,
        target: target.n,
        well_defined,
        unramified,
        composite_ok,
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrictnessReport {
    pub n: usize,
    /// Canonical generators of the ideal generated by all lower pullbacks.
    pub generated: Vec<String>,
    pub equals_x2_minus_1: bool,
    pub equals_x_minus_1: bool,
    /// `J ⊊ (x − 1)`.
    pub strict: bool,
    pub witness_outside: bool,
    pub witness_product_inside: bool,
    pub witness_non_unit: bool,
}

impl StrictnessReport {
    pub fn passed(&self) -> bool {
        self.equals_x2_minus_1
            && !self.equals_x_minus_1
            && self.strict
            && self.witness_outside
            && self.witness_product_inside
            && self.witness_non_unit
    }
}

/// The pullbacks `x^{2^{n−m}} − 1` of `(x − 1)` from levels `m < n`
/// generate `(x² − 1)`, strictly inside `(x − 1)`, with witness `x + 1`.
pub fn pullback_strictness(level: &TowerLevel) -> Result<StrictnessReport> {
    let n = level.n;
    if n == 0 {
        return Err(Error::domain("strictness needs a level n >= 1"));
    }
    let ring = &level.ring;
    let field = ring.field();
    let line = x_pow_minus(field, 1, 1);
    let gens: Vec<Polynomial> = (0..n).map(|m| pull_back(&line, n - m)).collect();
    let j = ring.ideal(gens)?;
    let x2 = ring.ideal(vec![x_pow_minus(field, 2, 1)])?;
    let plus = &Polynomial::var(field, 1, 0) + &Polynomial::one(field, 1);
    Ok(StrictnessReport {
        n,
        generated: j.render_canonical()?,
        equals_x2_minus_1: j.equals(&x2)?,
        equals_x_minus_1: j.equals(&level.ideal)?,
        strict: level.ideal.contains_ideal(&j)? && !j.equals(&level.ideal)?,
        witness_outside: !j.contains(&plus)?,
        witness_product_inside: j.contains(&(&line * &plus))?,
        witness_non_unit: !ring.is_unit(&plus)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalityReport {
    pub n: usize,
    /// `(x − 1) ≠ (1)`.
    pub proper: bool,
    /// Every inverted element is nonzero at `x = 1`, so the quotient by
    /// `(x − 1)` is the base field.
    pub maximal: bool,
    /// Every inverted element is nonzero at `x = −1`.
    pub minus_one_survives: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl MaximalityReport {
    pub fn passed(&self) -> bool {
        self.proper && self.maximal && self.minus_one_survives
    }
}

pub fn properness_and_maximality(level: &TowerLevel) -> Result<MaximalityReport> {
    let ring = &level.ring;
    let field = ring.field();
    let mut witness = None;
    let mut maximal = true;
    let mut minus_one_survives = true;
    for g in ring.inverted() {
        if g.evaluate(&[field.one()]).is_zero() {
            maximal = false;
            witness.get_or_insert_with(|| format!("{} vanishes at x = 1", ring.render(g)));
        }
        if g.evaluate(&[field.neg(&field.one())]).is_zero() {
            minus_one_survives = false;
            witness.get_or_insert_with(|| format!("{} vanishes at x = -1", ring.render(g)));
        }
    }
    Ok(MaximalityReport {
        n: level.n,
        proper: !level.ideal.is_unit()?,
        maximal,
        minus_one_survives,
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub n: usize,
    pub inverted: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover_map: Option<CoverMapReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strictness: Option<StrictnessReport>,
    pub maximality: MaximalityReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerSuite {
    pub field: String,
    pub rule: ExponentRule,
    pub depth: usize,
    pub levels: Vec<LevelReport>,
    /// `(x^{2^N} − 1) ⊊ … ⊊ (x² − 1) ⊊ (x − 1)`, largest exponent first,
    /// as verified in the level-`N` ring.
    pub chain: Vec<String>,
    pub strict_inclusions: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_level: Option<usize>,
    /// The first inclusion of the chain that is not strict.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain_witness: Option<String>,
}

pub fn run_tower_suite(depth: usize, field: Field, rule: ExponentRule) -> Result<TowerSuite> {
    if depth > MAX_TOWER_DEPTH {
        return Err(Error::bound("tower depth", depth, MAX_TOWER_DEPTH));
    }
    let mut levels = Vec::new();
    let mut failing_level = None;
    let mut prev: Option<TowerLevel> = None;
    for n in 0..=depth {
        let level = tower_ring(n, field, rule)?;
        let cover_map = match &prev {
            Some(p) => Some(verify_cover_map(p, &level)?),
            None => None,
        };
        let strictness = if n >= 1 {
            Some(pullback_strictness(&level)?)
        } else {
            None
        };
        let maximality = properness_and_maximality(&level)?;
        let ok = cover_map.as_ref().is_none_or(CoverMapReport::passed)
            && strictness.as_ref().is_none_or(StrictnessReport::passed)
            && maximality.passed();
        levels.push(LevelReport {
            n,
            inverted: level
                .ring
                .inverted()
                .iter()
                .map(|g| level.ring.render(g))
                .collect(),
            cover_map,
            strictness,
            maximality,
        });
        if !ok {
            failing_level = Some(n);
            break;
        }
        prev = Some(level);
    }
    let mut chain = Vec::new();
    let mut strict_inclusions = 0;
    let mut chain_witness = None;
    if failing_level.is_none() {
        let top = tower_ring(depth, field, rule)?;
        let ideals: Vec<IdealHandle> = (0..=depth)
            .rev()
            .map(|k| top.ring.ideal(vec![x_pow_minus(field, 1 << k, 1)]))
            .collect::<Result<_>>()?;
        chain = ideals.iter().map(IdealHandle::render).collect();
        for w in ideals.windows(2) {
            if w[1].contains_ideal(&w[0])? && !w[0].equals(&w[1])? {
                strict_inclusions += 1;
            } else {
                failing_level = Some(depth);
                chain_witness = Some(format!(
                    "{} ⊊ {} fails in the level-{depth} ring",
                    w[0].render(),
                    w[1].render()
                ));
                break;
            }
        }
    }
    Ok(TowerSuite {
        field: field.to_string(),
        rule,
        depth,
        passed: failing_level.is_none() && strict_inclusions == depth,
        levels,
        chain,
        strict_inclusions,
        failing_level,
        chain_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn level_rings() {
        let l0 = tower_ring(0, Field::Rationals, ExponentRule::Power).unwrap();
        assert_eq!(l0.ring.inverted().len(), 1);
        let l1 = tower_ring(1, Field::Rationals, ExponentRule::Power).unwrap();
        let inv: Vec<String> = l1
            .ring
            .inverted()
            .iter()
            .map(|g| l1.ring.render(g))
            .collect();
        assert_eq!(inv, vec!["x", "x^2 - 2"]);
        let l2 = tower_ring(2, f5(), ExponentRule::Power).unwrap();
        let inv: Vec<String> = l2
            .ring
            .inverted()
            .iter()
            .map(|g| l2.ring.render(g))
            .collect();
        assert_eq!(inv, vec!["x", "x^2 - 2", "x^4 - 2"]);
        assert_eq!(ExponentRule::Literal.exponents(3), vec![2, 4, 6]);
        assert_eq!(ExponentRule::Power.exponents(3), vec![2, 4, 8]);
        assert!(matches!(
            tower_ring(1, Field::prime(2).unwrap(), ExponentRule::Power),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn cover_maps() {
        let l0 = tower_ring(0, Field::Rationals, ExponentRule::Power).unwrap();
        let l1 = tower_ring(1, Field::Rationals, ExponentRule::Power).unwrap();
        let l2 = tower_ring(2, Field::Rationals, ExponentRule::Power).unwrap();
        assert!(verify_cover_map(&l0, &l1).unwrap().passed());
        assert!(matches!(verify_cover_map(&l0, &l2), Err(Error::Domain(_))));
        // The literal rule breaks well-definedness from level 2 to 3:
        // x^4 - 2 maps to x^8 - 2, which shares no factor with x^6 - 2.
        let a = tower_ring(2, Field::Rationals, ExponentRule::Literal).unwrap();
        let b = tower_ring(3, Field::Rationals, ExponentRule::Literal).unwrap();
        let r = verify_cover_map(&a, &b).unwrap();
        assert!(!r.well_defined && r.unramified);
        assert!(r.witness.unwrap().contains("x^8 - 2"));
    }

    #[test]
    fn strictness() {
        let l1 = tower_ring(1, Field::Rationals, ExponentRule::Power).unwrap();
        let s = pullback_strictness(&l1).unwrap();
        assert!(s.passed(), "{s:?}");
        assert_eq!(s.generated, vec!["x^2 - 1"]);
        assert!(!s.equals_x_minus_1);
        let l3 = tower_ring(3, f5(), ExponentRule::Power).unwrap();
        assert!(pullback_strictness(&l3).unwrap().passed());
    }

    #[test]
    fn maximality() {
        let l1 = tower_ring(1, Field::Rationals, ExponentRule::Power).unwrap();
        assert!(properness_and_maximality(&l1).unwrap().passed());
        let l4 = tower_ring(4, f5(), ExponentRule::Power).unwrap();
        assert!(properness_and_maximality(&l4).unwrap().passed());
    }

    #[test]
    fn suites() {
        for field in [Field::Rationals, f5()] {
            let s = run_tower_suite(3, field, ExponentRule::Power).unwrap();
            assert!(s.passed, "{s:?}");
            assert_eq!(s.strict_inclusions, 3);
            assert_eq!(
                s.chain,
                vec!["(x^8 - 1)", "(x^4 - 1)", "(x^2 - 1)", "(x - 1)"]
            );
        }
        let s = run_tower_suite(0, Field::Rationals, ExponentRule::Power).unwrap();
        assert!(s.passed);
        let lit = run_tower_suite(3, Field::Rationals, ExponentRule::Literal).unwrap();
        assert!(!lit.passed);
        assert_eq!(lit.failing_level, Some(3));
    }

    #[test]
    fn chain_collapses_over_f3() {
        // 2 = -1 in F3, so x^2 + 1 is inverted and (x^4 - 1) = (x^2 - 1).
        let s = run_tower_suite(2, Field::prime(3).unwrap(), ExponentRule::Power).unwrap();
        assert!(!s.passed);
        assert_eq!(s.strict_inclusions, 0);
        assert!(s
            .chain_witness
            .unwrap()
            .starts_with("(x^4 - 1) ⊊ (x^2 - 1)"));
    }
}
