//! Alternating Čech complexes on finite covers.
//!
//! Two sources of complexes:
//!
//! - twisted structure sheaves `O(d)` on `Pⁿ`, where sections over a chart
//!   are Laurent monomials. The complex splits by multidegree, and the
//!   summand of a multidegree `a` only depends on the set `N(a)` of
//!   negative exponents, so each sign pattern is built once and weighted by
//!   the number of multidegrees in the window that share it;
//! - quasi-coherent `Ĩ` on `k[x]` with a cover `D(f_1), …, D(f_m)` of the
//!   line. Sections over `D(h)` are truncated to `p·q / h^E` with
//!   `deg(p·q) ≤ D + E·deg h`, which restriction maps preserve.
//!
//! Ranks are exact (Gaussian elimination over the coefficient field).

use num_integer::binomial;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Coeff, Field};
use crate::ring::{IdealHandle, RingRef};
use crate::topology::{DistinguishedOpen, OpenCover};
use crate::unipoly::UniPoly;

pub type Matrix = Vec<Vec<Coeff>>;

/// Default limits for projective computations.
pub const MAX_PROJECTIVE_DIM: usize = 4;
pub const MAX_TWIST: i64 = 20;

/// A direct summand of a Čech complex, repeated `multiplicity` times.
#[derive(Debug, Clone)]
pub struct CechBlock {
    pub label: String,
    pub multiplicity: u64,
    /// `dims[p]` is the dimension of `C^p`.
    pub dims: Vec<usize>,
    /// `differentials[p] : C^p → C^{p+1}`, with `dims[p + 1]` rows.
    pub differentials: Vec<Matrix>,
}

#[derive(Debug, Clone)]
pub struct CechComplex {
    pub field: Field,
    pub cover_size: usize,
    pub blocks: Vec<CechBlock>,
    pub warnings: Vec<String>,
}

pub fn rank(field: Field, m: &Matrix) -> usize {
    let mut rows: Vec<Vec<Coeff>> = m
        .iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .cloned()
        .collect();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = field.inv(&rows[r][c]);
        let (top, below) = rows.split_at_mut(r + 1);
        let pivot = &top[r];
        for row in below {
            if row[c].is_zero() {
                continue;
            }
            let factor = field.mul(&row[c], &inv);
            for (x, p) in row[c..cols].iter_mut().zip(&pivot[c..cols]) {
                let t = field.mul(&factor, p);
                *x = field.sub(x, &t);
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

fn product(field: Field, a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(Coeff::zero(), |acc, k| {
                        field.add(&acc, &field.mul(&row[k], &b[k][j]))
                    })
                })
                .collect()
        })
        .collect()
}

impl CechBlock {
    fn d_squared_zero(&self, field: Field) -> bool {
        self.differentials.windows(2).all(|w| {
            product(field, &w[1], &w[0])
                .iter()
                .flatten()
                .all(|c| c.is_zero())
        })
    }

    fn cohomology(&self, field: Field) -> Vec<usize> {
        let ranks: Vec<usize> = self.differentials.iter().map(|m| rank(field, m)).collect();
        (0..self.dims.len())
            .map(|p| {
                let out = if p < ranks.len() { ranks[p] } else { 0 };
                let inc = if p > 0 { ranks[p - 1] } else { 0 };
                self.dims[p] - out - inc
            })
            .collect()
    }
}

impl CechComplex {
    pub fn cochain_dims(&self) -> Vec<u64> {
        (0..self.cover_size)
            .map(|p| {
                self.blocks
                    .iter()
                    .map(|b| b.multiplicity * b.dims[p] as u64)
                    .sum()
            })
            .collect()
    }

    pub fn d_squared_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.d_squared_zero(self.field))
    }

    pub fn cohomology_dims(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.cover_size];
        for b in &self.blocks {
            for (p, h) in b.cohomology(self.field).into_iter().enumerate() {
                out[p] += b.multiplicity * h as u64;
            }
        }
        out
    }
}

/// Nonempty subsets of `0..m` as bitmasks, grouped by size (then by value).
fn subsets_by_size(m: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new(); m];
    for s in 1u32..(1 << m) {
        out[s.count_ones() as usize - 1].push(s);
    }
    out
}

/// Alternating coboundary between consecutive degrees. `restrict(from,
/// to)` is the matrix of the restriction from the section space of `from`
/// to that of `to` (both subsets of cover indices).
fn coboundaries<F>(
    field: Field,
    levels: &[Vec<u32>],
    dim: &dyn Fn(u32) -> usize,
    restrict: F,
) -> Vec<Matrix>
where
    F: Fn(u32, u32) -> Matrix,
{
    let offsets = |level: &Vec<u32>| -> Vec<usize> {
        let mut acc = 0;
        level
            .iter()
            .map(|&s| {
                let o = acc;
                acc += dim(s);
                o
            })
            .collect()
    };
    let mut out = Vec::new();
    for p in 0..levels.len().saturating_sub(1) {
        let (src, tgt) = (&levels[p], &levels[p + 1]);
        let (so, to) = (offsets(src), offsets(tgt));
        let cols: usize = src.iter().map(|&s| dim(s)).sum();
        let rows: usize = tgt.iter().map(|&s| dim(s)).sum();
        let mut m = vec![vec![Coeff::zero(); cols]; rows];
        for (ti, &t) in tgt.iter().enumerate() {
            let members: Vec<usize> = (0..32).filter(|&i| t >> i & 1 == 1).collect();
            for (k, &drop) in members.iter().enumerate() {
                let s = t & !(1 << drop);
                let si = src.iter().position(|&x| x == s).expect("face is a subset");
                let block = restrict(s, t);
                let sign = if k % 2 == 0 {
                    field.one()
                } else {
                    field.neg(&field.one())
                };
                for (r, row) in block.iter().enumerate() {
                    for (c, v) in row.iter().enumerate() {
                        let cell = &mut m[to[ti] + r][so[si] + c];
                        *cell = field.add(cell, &field.mul(&sign, v));
                    }
                }
            }
        }
        out.push(m);
    }
    out
}

/// Multidegrees `a ∈ ℤ^{n+1}` with `Σ a = d`, `|a_j| ≤ W`, negative exactly
/// on `neg`.
fn count_multidegrees(n: usize, d: i64, window: i64, neg: u32) -> u64 {
    let mut ways = std::collections::BTreeMap::from([(0i64, 1u64)]);
    for j in 0..=n {
        let range: Vec<i64> = if neg >> j & 1 == 1 {
            (-window..=-1).collect()
        } else {
            (0..=window).collect()
        };
        let mut next = std::collections::BTreeMap::new();
        for (&s, &c) in &ways {
            for &v in &range {
                *next.entry(s + v).or_insert(0u64) += c;
            }
        }
        ways = next;
    }
    ways.get(&d).copied().unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistData {
    pub n: usize,
    pub d: i64,
    /// Bound on `|a_j|` for the Laurent exponents; defaults to `|d| + 1`.
    pub window: Option<i64>,
    /// Chart supports: chart `S` is the locus where every `x_j`, `j ∈ S`, is
    /// nonzero. Defaults to the `n + 1` standard charts.
    pub supports: Option<Vec<Vec<usize>>>,
}

impl TwistData {
    pub fn new(n: usize, d: i64) -> Self {
        TwistData {
            n,
            d,
            window: None,
            supports: None,
        }
    }

    pub fn window(&self) -> i64 {
        self.window.unwrap_or(self.d.abs() + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistedCohomology {
    pub n: usize,
    pub d: i64,
    pub window: i64,
    pub supports: Vec<Vec<usize>>,
    pub cochain_dims: Vec<u64>,
    /// `dims[i] = dim Hⁱ`, for `i` up to the top degree of the cover.
    pub dims: Vec<u64>,
    pub d_squared_zero: bool,
    pub warnings: Vec<String>,
}

pub fn twisted_complex(t: &TwistData) -> Result<(CechComplex, Vec<Vec<usize>>)> {
    if t.n > MAX_PROJECTIVE_DIM {
        return Err(Error::bound(
            "projective dimension",
            t.n,
            MAX_PROJECTIVE_DIM,
        ));
    }
    if t.d.abs() > MAX_TWIST {
        return Err(Error::bound(
            "twist |d|",
            t.d.unsigned_abs() as usize,
            MAX_TWIST as usize,
        ));
    }
    let window = t.window();
    if window < 0 {
        return Err(Error::domain("negative window"));
    }
    let supports = t
        .supports
        .clone()
        .unwrap_or_else(|| (0..=t.n).map(|j| vec![j]).collect());
    if supports.is_empty() || supports.len() > 8 {
        return Err(Error::bound("cover charts", supports.len(), 8));
    }
    let masks: Vec<u32> = supports
        .iter()
        .map(|s| {
            if s.is_empty() || s.iter().any(|&j| j > t.n) {
                Err(Error::domain(format!(
                    "chart support {s:?} is not a nonempty subset of 0..={}",
                    t.n
                )))
            } else {
                Ok(s.iter().fold(0u32, |m, &j| m | 1 << j))
            }
        })
        .collect::<Result<_>>()?;
    // A point whose only nonzero coordinate is x_j lies in no chart unless
    // {j} is one of the supports.
    for j in 0..=t.n {
        if !masks.contains(&(1 << j)) {
            return Err(Error::validation(format!(
                "the charts do not cover the coordinate point {j}"
            )));
        }
    }
    let mut warnings = Vec::new();
    if window < t.d.abs() {
        warnings.push(format!(
            "window {window} is below |d| = {}; cohomology may be truncated",
            t.d.abs()
        ));
    }
    let m = masks.len();
    let levels = subsets_by_size(m);
    let field = Field::Rationals;
    let mut blocks = Vec::new();
    for neg in 0u32..(1 << (t.n + 1)) {
        let mult = count_multidegrees(t.n, t.d, window, neg);
        if mult == 0 {
            continue;
        }
        // The monomial lives on the intersection of the charts in K iff
        // every negative exponent is inverted there.
        let lives = |k: u32| -> bool {
            let union = (0..m)
                .filter(|&i| k >> i & 1 == 1)
                .fold(0u32, |u, i| u | masks[i]);
            neg & !union == 0
        };
        let dim = |k: u32| usize::from(lives(k));
        let dims = levels
            .iter()
            .map(|l| l.iter().map(|&k| dim(k)).sum())
            .collect();
        let differentials = coboundaries(field, &levels, &dim, |s, tt| {
            vec![vec![Coeff::one(); dim(s)]; dim(tt)]
        });
        blocks.push(CechBlock {
            label: format!(
                "negative exponents {:?}",
                (0..=t.n).filter(|&j| neg >> j & 1 == 1).collect::<Vec<_>>()
            ),
            multiplicity: mult,
            dims,
            differentials,
        });
    }
    Ok((
        CechComplex {
            field,
            cover_size: m,
            blocks,
            warnings,
        },
        supports,
    ))
}

/// `dim Hⁱ(Pⁿ, O(d))` by Laurent-monomial rank counting on the chart cover.
pub fn twisted_cohomology_dims(t: &TwistData) -> Result<TwistedCohomology> {
    let (c, supports) = twisted_complex(t)?;
    Ok(TwistedCohomology {
        n: t.n,
        d: t.d,
        window: t.window(),
        supports,
        cochain_dims: c.cochain_dims(),
        dims: c.cohomology_dims(),
        d_squared_zero: c.d_squared_zero(),
        warnings: c.warnings,
    })
}

/// Closed forms used as cross-checks: `C(n+d, n)` for `H⁰` and
/// `C(−d−1, n)` for `Hⁿ`.
pub fn expected_top_and_bottom(n: usize, d: i64) -> (u64, u64) {
    let h0 = if d >= 0 {
        binomial(n as u64 + d as u64, n as u64)
    } else {
        0
    };
    let hn = if d < -(n as i64) {
        binomial((-d - 1) as u64, n as u64)
    } else {
        0
    };
    (h0, hn)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AffineWindow {
    /// Degree allowance `D` of a section `r / h^E`: `deg r ≤ D + E·deg h`.
    pub degree: usize,
    /// Pole order `E`.
    pub pole_order: usize,
}

impl Default for AffineWindow {
    fn default() -> Self {
        AffineWindow {
            degree: 6,
            pole_order: 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct AffineCech {
    pub complex: CechComplex,
    pub window: AffineWindow,
    /// Generator of the ideal (the gcd of the given generators).
    pub generator: UniPoly,
    pub cochain_dims: Vec<u64>,
    pub dims: Vec<u64>,
    /// Dimension of the global sections of `Ĩ` inside the window: elements
    /// of `I` of degree at most `D`.
    pub global_sections: u64,
}

fn univariate_setup(
    ring: &RingRef,
    ideal: &IdealHandle,
    cover: &OpenCover,
) -> Result<(UniPoly, Vec<UniPoly>)> {
    if !ring.is_univariate() || !ring.quotient().is_empty() || !ring.inverted().is_empty() {
        return Err(Error::capability(
            "affine Čech complexes need exact section spaces, available for k[x] only",
        ));
    }
    if ideal.ring() != ring || cover.target.ring() != ring {
        return Err(Error::domain(
            "ideal and cover must live over the given ring",
        ));
    }
    cover.validate()?;
    if !cover.target.equals(&DistinguishedOpen::whole(ring))? {
        return Err(Error::capability(
            "affine Čech complexes are computed for covers of the whole line",
        ));
    }
    if cover.pieces.len() > 8 {
        return Err(Error::bound("cover pieces", cover.pieces.len(), 8));
    }
    let g = ideal
        .generators()
        .iter()
        .fold(UniPoly::zero(ring.field()), |acc, p| {
            acc.gcd(&UniPoly::from_poly(p))
        });
    let fs = cover
        .pieces
        .iter()
        .map(|u| UniPoly::from_poly(u.f()))
        .collect();
    Ok((g, fs))
}

pub fn cech_complex_affine(
    ring: &RingRef,
    ideal: &IdealHandle,
    cover: &OpenCover,
    window: AffineWindow,
) -> Result<AffineCech> {
    let (g, fs) = univariate_setup(ring, ideal, cover)?;
    let field = ring.field();
    let m = fs.len();
    let levels = subsets_by_size(m);
    let h_of = |k: u32| {
        (0..m)
            .filter(|&i| k >> i & 1 == 1)
            .fold(UniPoly::one(field), |acc, i| acc.mul(&fs[i]))
    };
    // Section basis on D(h): g·x^i / h^E for i ≤ D + E·deg h − deg g.
    let dim = |k: u32| -> usize {
        if g.is_zero() {
            return 0;
        }
        let top = (window.degree + window.pole_order * h_of(k).degree().unwrap_or(0)) as i64
            - g.degree().unwrap_or(0) as i64;
        (top + 1).max(0) as usize
    };
    let restrict = |s: u32, t: u32| -> Matrix {
        let extra = h_of(t & !s).pow(window.pole_order);
        let (cols, rows) = (dim(s), dim(t));
        let mut mat = vec![vec![Coeff::zero(); cols]; rows];
        for i in 0..cols {
            let image = UniPoly::x_pow(field, i).mul(&extra);
            for (row, c) in mat.iter_mut().zip(image.coeffs()) {
                row[i] = c.clone();
            }
        }
        mat
    };
    let dims = levels
        .iter()
        .map(|l| l.iter().map(|&k| dim(k)).sum())
        .collect();
    let differentials = coboundaries(field, &levels, &dim, restrict);
    let mut warnings = Vec::new();
    if !g.is_zero() && g.degree().unwrap_or(0) > window.degree {
        warnings.push(format!(
            "window degree {} is below the generator degree {}; no global section fits",
            window.degree,
            g.degree().unwrap_or(0)
        ));
    }
    let complex = CechComplex {
        field,
        cover_size: m,
        blocks: vec![CechBlock {
            label: "window".to_string(),
            multiplicity: 1,
            dims,
            differentials,
        }],
        warnings,
    };
    let global_sections = if g.is_zero() {
        0
    } else {
        (window.degree as i64 - g.degree().unwrap_or(0) as i64 + 1).max(0) as u64
    };
    Ok(AffineCech {
        cochain_dims: complex.cochain_dims(),
        dims: complex.cohomology_dims(),
        complex,
        window,
        generator: g.monic(),
        global_sections,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineVanishing {
    pub holds: bool,
    pub dims: Vec<u64>,
    pub global_sections: u64,
    pub d_squared_zero: bool,
    pub window: AffineWindow,
    pub warnings: Vec<String>,
}

/// `Hⁱ = 0` for `i > 0` and `H⁰` equal to the global sections, inside the
/// window.
pub fn affine_vanishing_check(
    ring: &RingRef,
    ideal: &IdealHandle,
    cover: &OpenCover,
    window: AffineWindow,
) -> Result<AffineVanishing> {
    let a = cech_complex_affine(ring, ideal, cover, window)?;
    let holds = a.dims.iter().skip(1).all(|&h| h == 0) && a.dims[0] == a.global_sections;
    Ok(AffineVanishing {
        holds,
        d_squared_zero: a.complex.d_squared_zero(),
        dims: a.dims,
        global_sections: a.global_sections,
        window,
        warnings: a.complex.warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PresentedRing;

    fn dims(n: usize, d: i64) -> Vec<u64> {
        let r = twisted_cohomology_dims(&TwistData::new(n, d)).unwrap();
        assert!(r.d_squared_zero);
        r.dims
    }

    #[test]
    fn projective_line_examples() {
        assert_eq!(dims(1, 2), vec![3, 0]);
        assert_eq!(dims(1, -2), vec![0, 1]);
        assert_eq!(dims(2, 0), vec![1, 0, 0]);
    }

    #[test]
    fn closed_forms_and_middle_vanishing() {
        for n in 0..=3usize {
            for d in -8i64..=6 {
                let h = dims(n, d);
                let (h0, hn) = expected_top_and_bottom(n, d);
                assert_eq!(h[0], if n == 0 { h0 + hn } else { h0 }, "n={n} d={d}");
                if n > 0 {
                    assert_eq!(h[n], hn, "n={n} d={d}");
                    assert!(h[1..n].iter().all(|&x| x == 0));
                }
            }
        }
    }

    #[test]
    fn euler_characteristic_and_symmetry() {
        for d in -8i64..=8 {
            let h = dims(1, d);
            assert_eq!(h[0] as i64 - h[1] as i64, d + 1);
        }
        for n in 1..=3usize {
            for d in 0..=4i64 {
                assert_eq!(dims(n, -d - n as i64 - 1)[n], dims(n, d)[0]);
            }
        }
    }

    #[test]
    fn refinement_gives_same_dimensions() {
        for d in -5i64..=5 {
            let mut t = TwistData::new(1, d);
            t.supports = Some(vec![vec![0], vec![1], vec![0, 1]]);
            let r = twisted_cohomology_dims(&t).unwrap();
            assert!(r.d_squared_zero);
            assert_eq!(&r.dims[..2], dims(1, d).as_slice());
            assert_eq!(r.dims[2], 0);
        }
    }

    #[test]
    fn bad_covers_and_bounds() {
        let mut t = TwistData::new(1, 0);
        t.supports = Some(vec![vec![0], vec![0, 1]]);
        assert!(matches!(
            twisted_cohomology_dims(&t),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            twisted_cohomology_dims(&TwistData::new(5, 0)),
            Err(Error::Bound { .. })
        ));
        let mut small = TwistData::new(1, 4);
        small.window = Some(2);
        let r = twisted_cohomology_dims(&small).unwrap();
        assert_eq!(r.warnings.len(), 1);
        assert_eq!(r.dims[0], 1);
    }

    fn line() -> RingRef {
        PresentedRing::polynomial(Field::Rationals, &["x"]).unwrap()
    }

    fn cover(r: &RingRef, fs: &[&str]) -> OpenCover {
        let pieces = fs
            .iter()
            .map(|f| DistinguishedOpen::parse(r, f).unwrap())
            .collect();
        OpenCover::new(DistinguishedOpen::whole(r), pieces).unwrap()
    }

    #[test]
    fn affine_two_charts() {
        let r = line();
        let c = cover(&r, &["x", "x-1"]);
        let one = r.ideal_strs(&["1"]).unwrap();
        let a = cech_complex_affine(&r, &one, &c, AffineWindow::default()).unwrap();
        assert!(a.complex.d_squared_zero());
        // Polynomials of degree ≤ 6.
        assert_eq!(a.dims, vec![7, 0]);
        let x = r.ideal_strs(&["x"]).unwrap();
        assert!(
            affine_vanishing_check(&r, &x, &c, AffineWindow::default())
                .unwrap()
                .holds
        );
        assert!(
            affine_vanishing_check(&r, &one, &c, AffineWindow::default())
                .unwrap()
                .holds
        );
    }

    #[test]
    fn affine_single_chart_and_zero_ideal() {
        let r = line();
        let c = cover(&r, &["1"]);
        let i = r.ideal_strs(&["x^2-1", "x-1"]).unwrap();
        let a = cech_complex_affine(&r, &i, &c, AffineWindow::default()).unwrap();
        assert_eq!(a.dims, vec![6]);
        let c2 = cover(&r, &["x", "x-1", "x+1"]);
        let zero = r.ideal_strs(&["0"]).unwrap();
        let z = cech_complex_affine(&r, &zero, &c2, AffineWindow::default()).unwrap();
        assert_eq!(z.cochain_dims, vec![0, 0, 0]);
        assert_eq!(z.dims, vec![0, 0, 0]);
    }

    #[test]
    fn affine_three_charts() {
        let r = line();
        let c = cover(&r, &["x", "x-1", "x+1"]);
        let i = r.ideal_strs(&["x^2"]).unwrap();
        let v = affine_vanishing_check(&r, &i, &c, AffineWindow::default()).unwrap();
        assert!(v.d_squared_zero);
        assert!(v.holds, "{v:?}");
    }

    #[test]
    fn affine_rejects_non_covers_and_multivariate() {
        let r = line();
        let c = cover(&r, &["x"]);
        let one = r.ideal_strs(&["1"]).unwrap();
        assert!(matches!(
            affine_vanishing_check(&r, &one, &c, AffineWindow::default()),
            Err(Error::Validation(_))
        ));
        let r2 = PresentedRing::polynomial(Field::Rationals, &["x", "y"]).unwrap();
        let c2 = cover(&r2, &["1"]);
        let i2 = r2.ideal_strs(&["x"]).unwrap();
        assert!(matches!(
            cech_complex_affine(&r2, &i2, &c2, AffineWindow::default()),
            Err(Error::Capability(_))
        ));
    }

    #[test]
    fn rank_over_prime_field() {
        let f = Field::prime(3).unwrap();
        let m: Matrix = vec![
            vec![f.from_i64(1), f.from_i64(2)],
            vec![f.from_i64(2), f.from_i64(1)],
        ];
        // det = 1 - 4 = -3 = 0 mod 3.
        assert_eq!(rank(f, &m), 1);
        assert_eq!(
            rank(
                Field::Rationals,
                &vec![vec![Coeff::one(), Coeff::from_integer(2.into())]; 2]
            ),
            1
        );
    }
}
