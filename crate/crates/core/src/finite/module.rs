//! Finite modules over finite rings.
//!
//! A module is a finite abelian group `Z^r / L` together with one integer
//! matrix per basis vector of the ring, giving the action of that basis
//! vector. Submodules are lattices between `L` and `Z^r`, so quotients
//! reuse the same matrices. No element tables are stored; modules far
//! larger than anything we enumerate (the Baer chain produces some) stay
//! cheap to build.

use std::sync::Arc;

use num_integer::Integer;

use super::lattice::Lattice;
use super::ring::FiniteRing;
use crate::error::{Error, Result};

/// Cap on the number of elements we are willing to list.
pub const ENUMERATION_BOUND: usize = 1 << 16;

/// Row-major integer matrix.
pub type Matrix = Vec<Vec<i64>>;

pub(crate) fn mat_vec(m: &Matrix, v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

fn mat_mul(a: &Matrix, b: &Matrix, cols: usize) -> Matrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().enumerate().map(|(k, x)| x * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn unit_vector(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

#[derive(Debug, Clone)]
pub struct FiniteModule {
    ring: Arc<FiniteRing>,
    group: Lattice,
    basis_action: Vec<Matrix>,
    scalars: Vec<Matrix>,
}

impl FiniteModule {
    /// Builds a module from its group and the action of each ring basis
    /// vector, checking the module axioms as matrix identities modulo `L`.
    pub fn new(ring: Arc<FiniteRing>, group: Lattice, basis_action: Vec<Matrix>) -> Result<Self> {
        let r = group.dim();
        let k = ring.rank();
        if group.exponent() != ring.exponent() {
            return Err(Error::validation(
                "module group exponent differs from the ring characteristic",
            ));
        }
        if basis_action.len() != k
            || basis_action
                .iter()
                .any(|m| m.len() != r || m.iter().any(|row| row.len() != r))
        {
            return Err(Error::validation("action matrices have the wrong shape"));
        }
        let e = ring.exponent();
        let basis_action: Vec<Matrix> = basis_action
            .into_iter()
            .map(|m| {
                m.into_iter()
                    .map(|row| row.into_iter().map(|x| x.mod_floor(&e)).collect())
                    .collect()
            })
            .collect();
        let scalars = (0..ring.size())
            .map(|idx| {
                let c = ring.element(idx);
                let mut acc = vec![vec![0i64; r]; r];
                for (ci, a) in c.iter().zip(&basis_action) {
                    for (arow, brow) in acc.iter_mut().zip(a) {
                        for (x, y) in arow.iter_mut().zip(brow) {
                            *x = (*x + ci * y).mod_floor(&e);
                        }
                    }
                }
                acc
            })
            .collect();
        let m = FiniteModule {
            ring,
            group,
            basis_action,
            scalars,
        };
        m.check_axioms()?;
        Ok(m)
    }

    fn check_axioms(&self) -> Result<()> {
        let r = self.dim();
        let k = self.ring.rank();
        let bad = |what: &str| Err(Error::validation(format!("module axiom fails: {what}")));
        for a in &self.basis_action {
            for row in self.group.rows() {
                if !self.group.contains(&mat_vec(a, row)) {
                    return bad("action does not preserve the relation lattice");
                }
            }
        }
        let cols = |m: &Matrix| -> Vec<Vec<i64>> {
            (0..r)
                .map(|j| self.group.reduce(&mat_vec(m, &unit_vector(r, j))))
                .collect()
        };
        let one = self.ring.element(self.ring.one()).to_vec();
        if cols(&self.combination(&one)) != cols(&identity(r)) {
            return bad("the unit does not act as the identity");
        }
        for l in self.ring.group().rows() {
            if cols(&self.combination(l))
                .iter()
                .any(|c| c.iter().any(|&x| x != 0))
            {
                return bad("a relation of the ring does not act as zero");
            }
        }
        for i in 0..k {
            for j in 0..k {
                let lhs = mat_mul(&self.basis_action[i], &self.basis_action[j], r);
                let rhs = self.combination(&self.ring.structure()[i][j]);
                if cols(&lhs) != cols(&rhs) {
                    return bad("action is not multiplicative");
                }
            }
        }
        Ok(())
    }

    fn combination(&self, coeffs: &[i64]) -> Matrix {
        let r = self.dim();
        let mut acc = vec![vec![0i64; r]; r];
        for (c, a) in coeffs.iter().zip(&self.basis_action) {
            for (arow, brow) in acc.iter_mut().zip(a) {
                for (x, y) in arow.iter_mut().zip(brow) {
                    *x += c * y;
                }
            }
        }
        acc
    }

    /// The ring acting on itself.
    pub fn regular(ring: &Arc<FiniteRing>) -> Self {
        let k = ring.rank();
        let action = (0..k)
            .map(|i| {
                let mut m = vec![vec![0i64; k]; k];
                for (col, v) in ring.structure()[i].iter().enumerate() {
                    for (row, x) in v.iter().enumerate() {
                        m[row][col] = *x;
                    }
                }
                m
            })
            .collect();
        FiniteModule::new(ring.clone(), ring.group().clone(), action).expect("regular module")
    }

    pub fn zero(ring: &Arc<FiniteRing>) -> Self {
        let k = ring.rank();
        FiniteModule::new(
            ring.clone(),
            Lattice::full(0, ring.exponent()),
            vec![Vec::new(); k],
        )
        .expect("zero module")
    }

    /// `R / (gens)`, with generators given as ring coordinate vectors.
    pub fn cyclic(ring: &Arc<FiniteRing>, gens: &[Vec<i64>]) -> Self {
        let reg = FiniteModule::regular(ring);
        let sub = reg.span(gens);
        reg.quotient(&sub)
    }

    /// `R/I_1 ⊕ … ⊕ R/I_n`.
    pub fn sum_of_cyclics(ring: &Arc<FiniteRing>, ideals: &[Vec<Vec<i64>>]) -> Result<Self> {
        let parts: Vec<FiniteModule> = ideals
            .iter()
            .map(|g| FiniteModule::cyclic(ring, g))
            .collect();
        Ok(direct_sum(ring, &parts, u128::MAX)?.module)
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn group(&self) -> &Lattice {
        &self.group
    }

    pub fn basis_action(&self) -> &[Matrix] {
        &self.basis_action
    }

    /// Rank of the group presentation.
    pub fn dim(&self) -> usize {
        self.group.dim()
    }

    pub fn size(&self) -> u128 {
        self.group.group_order()
    }

    pub fn is_zero_module(&self) -> bool {
        self.size() == 1
    }

    pub fn same_ring(&self, other: &FiniteModule) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || self.ring.label() == other.ring.label()
    }

    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        self.group.reduce(v)
    }

    pub fn zero_vector(&self) -> Vec<i64> {
        vec![0; self.dim()]
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.group.reduce(&s)
    }

    pub fn neg(&self, a: &[i64]) -> Vec<i64> {
        let s: Vec<i64> = a.iter().map(|x| -x).collect();
        self.group.reduce(&s)
    }

    pub fn sub(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        self.add(a, &self.neg(b))
    }

    /// Action of the ring element with index `r`.
    pub fn act(&self, r: usize, v: &[i64]) -> Vec<i64> {
        self.group.reduce(&mat_vec(&self.scalars[r], v))
    }

    pub fn is_zero(&self, v: &[i64]) -> bool {
        self.group.contains(v)
    }

    pub fn index_of(&self, v: &[i64]) -> usize {
        self.group.index_of(&self.group.reduce(v))
    }

    pub fn element(&self, i: usize) -> Vec<i64> {
        self.group.element(i)
    }

    pub fn check_enumerable(&self, bound: usize) -> Result<usize> {
        let n = self.size();
        if n > bound as u128 {
            return Err(Error::bound(
                "module size",
                n.min(usize::MAX as u128) as usize,
                bound,
            ));
        }
        Ok(n as usize)
    }

    pub fn elements(&self) -> Result<Vec<Vec<i64>>> {
        let n = self.check_enumerable(ENUMERATION_BOUND)?;
        Ok((0..n).map(|i| self.group.element(i)).collect())
    }

    /// Lattice of the whole module, `Z^r` itself.
    pub fn whole(&self) -> Lattice {
        let r = self.dim();
        let rows: Vec<Vec<i64>> = (0..r).map(|i| unit_vector(r, i)).collect();
        Lattice::from_generators(r, self.group.exponent(), &rows)
    }

    /// Lattice of the submodule generated by `gens`.
    pub fn span(&self, gens: &[Vec<i64>]) -> Lattice {
        let mut all = Vec::new();
        for g in gens {
            for a in &self.basis_action {
                all.push(mat_vec(a, g));
            }
            all.push(g.clone());
        }
        self.group.extended(&all)
    }

    /// Whether `lattice` describes a submodule of `self`.
    pub fn is_submodule(&self, lattice: &Lattice) -> bool {
        lattice.dim() == self.dim()
            && lattice.contains_lattice(&self.group)
            && lattice.rows().iter().all(|row| {
                self.basis_action
                    .iter()
                    .all(|a| lattice.contains(&mat_vec(a, row)))
            })
    }

    pub fn quotient(&self, sub: &Lattice) -> FiniteModule {
        debug_assert!(self.is_submodule(sub));
        FiniteModule {
            ring: self.ring.clone(),
            group: sub.clone(),
            basis_action: self.basis_action.clone(),
            scalars: self.scalars.clone(),
        }
    }

    /// Element indices (in `self`) of the submodule `sub`.
    pub fn submodule_elements(&self, sub: &Lattice) -> Result<Vec<usize>> {
        let n = self.check_enumerable(ENUMERATION_BOUND)?;
        Ok((0..n)
            .filter(|&i| sub.contains(&self.group.element(i)))
            .collect())
    }

    pub fn submodule_size(&self, sub: &Lattice) -> u128 {
        self.size() / sub.group_order()
    }

    /// A small generating set, chosen greedily in element order.
    pub fn generators_of(&self, sub: &Lattice) -> Result<Vec<Vec<i64>>> {
        let mut span = self.group.clone();
        let mut gens = Vec::new();
        for i in self.submodule_elements(sub)? {
            let v = self.group.element(i);
            if !span.contains(&v) {
                gens.push(v.clone());
                span = self.span_from(&span, &v);
                if span == *sub {
                    break;
                }
            }
        }
        Ok(gens)
    }

    fn span_from(&self, base: &Lattice, g: &[i64]) -> Lattice {
        let mut all: Vec<Vec<i64>> = self.basis_action.iter().map(|a| mat_vec(a, g)).collect();
        all.push(g.to_vec());
        base.extended(&all)
    }

    /// All submodules, as lattices, smallest first.
    pub fn submodules(&self) -> Result<Vec<Lattice>> {
        let n = self.check_enumerable(ENUMERATION_BOUND)?;
        let elems: Vec<Vec<i64>> = (0..n).map(|i| self.group.element(i)).collect();
        let mut seen = std::collections::HashSet::new();
        let mut out = vec![self.group.clone()];
        seen.insert(self.group.clone());
        let mut i = 0;
        while i < out.len() {
            let cur = out[i].clone();
            for v in &elems {
                if cur.contains(v) {
                    continue;
                }
                let next = self.span_from(&cur, v);
                if seen.insert(next.clone()) {
                    out.push(next);
                }
            }
            i += 1;
        }
        out.sort_by(|a, b| {
            b.group_order()
                .cmp(&a.group_order())
                .then_with(|| a.rows().cmp(b.rows()))
        });
        Ok(out)
    }

    /// Searches for an isomorphism `self -> other` by enumerating homs.
    pub fn is_isomorphic(&self, other: &FiniteModule) -> Result<bool> {
        if self.size() != other.size() {
            return Ok(false);
        }
        let homs = hom_graphs(self, &self.whole(), other)?;
        Ok(homs.iter().any(|h| {
            let mut imgs: Vec<usize> = h.pairs.iter().map(|p| p.1).collect();
            imgs.sort_unstable();
            imgs.dedup();
            imgs.len() == h.pairs.len()
        }))
    }
}

/// A module homomorphism given by an integer matrix on coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    pub matrix: Matrix,
}

impl ModuleMap {
    pub fn apply(&self, target: &FiniteModule, v: &[i64]) -> Vec<i64> {
        target.reduce(&mat_vec(&self.matrix, v))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ModuleMap) -> ModuleMap {
        let cols = self.matrix.first().map_or(0, |r| r.len());
        if other.matrix.is_empty() {
            return ModuleMap { matrix: Vec::new() };
        }
        if self.matrix.is_empty() {
            return ModuleMap {
                matrix: vec![vec![0; cols]; other.matrix.len()],
            };
        }
        ModuleMap {
            matrix: mat_mul(&other.matrix, &self.matrix, cols),
        }
    }

    /// Checks well-definedness and linearity against both modules.
    pub fn is_homomorphism(&self, source: &FiniteModule, target: &FiniteModule) -> bool {
        let r = source.dim();
        if source
            .group()
            .rows()
            .iter()
            .any(|row| !target.is_zero(&mat_vec_or_empty(&self.matrix, row, target.dim())))
        {
            return false;
        }
        for (a, b) in source.basis_action().iter().zip(target.basis_action()) {
            for j in 0..r {
                let e = unit_vector(r, j);
                let lhs = mat_vec_or_empty(&self.matrix, &mat_vec(a, &e), target.dim());
                let rhs = mat_vec(b, &mat_vec_or_empty(&self.matrix, &e, target.dim()));
                if !target.is_zero(&lhs.iter().zip(&rhs).map(|(x, y)| x - y).collect::<Vec<_>>()) {
                    return false;
                }
            }
        }
        true
    }

    /// Injectivity, by listing the source.
    pub fn is_injective(&self, source: &FiniteModule, target: &FiniteModule) -> Result<bool> {
        for v in source.elements()? {
            if !source.is_zero(&v)
                && target.is_zero(&mat_vec_or_empty(&self.matrix, &v, target.dim()))
            {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn mat_vec_or_empty(m: &Matrix, v: &[i64], rows: usize) -> Vec<i64> {
    if m.is_empty() {
        vec![0; rows]
    } else {
        mat_vec(m, v)
    }
}

/// A direct sum with its canonical injections and projections.
#[derive(Debug, Clone)]
pub struct DirectSum {
    pub module: FiniteModule,
    pub injections: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

/// Componentwise direct sum; the empty sum is the zero module.
pub fn direct_sum(
    ring: &Arc<FiniteRing>,
    modules: &[FiniteModule],
    bound: u128,
) -> Result<DirectSum> {
    if modules
        .iter()
        .any(|m| !Arc::ptr_eq(m.ring(), ring) && m.ring().label() != ring.label())
    {
        return Err(Error::domain("direct sum of modules over different rings"));
    }
    let size = modules
        .iter()
        .fold(1u128, |acc, m| acc.saturating_mul(m.size()));
    if size > bound {
        return Err(Error::bound(
            "direct sum size",
            size.min(usize::MAX as u128) as usize,
            bound.min(usize::MAX as u128) as usize,
        ));
    }
    let r: usize = modules.iter().map(|m| m.dim()).sum();
    let k = ring.rank();
    let mut gens = Vec::new();
    let mut action = vec![vec![vec![0i64; r]; r]; k];
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut off = 0;
    for m in modules {
        let d = m.dim();
        for row in m.group().rows() {
            let mut v = vec![0; r];
            v[off..off + d].copy_from_slice(row);
            gens.push(v);
        }
        for (i, a) in m.basis_action().iter().enumerate() {
            for (p, row) in a.iter().enumerate() {
                action[i][off + p][off..off + d].copy_from_slice(row);
            }
        }
        let mut inj = vec![vec![0i64; d]; r];
        let mut proj = vec![vec![0i64; r]; d];
        for p in 0..d {
            inj[off + p][p] = 1;
            proj[p][off + p] = 1;
        }
        injections.push(ModuleMap { matrix: inj });
        projections.push(ModuleMap { matrix: proj });
        off += d;
    }
    let group = Lattice::from_generators(r, ring.exponent(), &gens);
    let module = FiniteModule::new(ring.clone(), group, action)?;
    Ok(DirectSum {
        module,
        injections,
        projections,
    })
}

/// The graph of a linear map defined on a submodule of an enumerable
/// module: pairs of element indices (domain in the ambient module, image in
/// the target), sorted by domain index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomGraph {
    pub pairs: Vec<(usize, usize)>,
}

impl HomGraph {
    pub fn image(&self, x: usize) -> Option<usize> {
        self.pairs
            .binary_search_by_key(&x, |p| p.0)
            .ok()
            .map(|i| self.pairs[i].1)
    }

    /// The coordinate matrix of a map defined on the whole of `source`.
    pub fn to_map(&self, source: &FiniteModule, target: &FiniteModule) -> ModuleMap {
        let r = source.dim();
        let cols: Vec<Vec<i64>> = (0..r)
            .map(|j| {
                let e = source.reduce(&unit_vector(r, j));
                let img = self
                    .image(source.index_of(&e))
                    .expect("map defined on the whole module");
                target.element(img)
            })
            .collect();
        ModuleMap {
            matrix: (0..target.dim())
                .map(|i| cols.iter().map(|c| c[i]).collect())
                .collect(),
        }
    }
}

/// Cap on `|domain| · |target|` for exhaustive Hom searches.
pub const HOM_SEARCH_BOUND: usize = 1 << 22;

/// Every linear map from the submodule `sub` of `ambient` into `target`.
///
/// Maps are built generator by generator: a map known on a submodule `D`
/// extends to `D + Rg` by `x + r·g ↦ φ(x) + r·m`, and a candidate image `m`
/// is kept iff this rule assigns one value to every element.
pub fn hom_graphs(
    ambient: &FiniteModule,
    sub: &Lattice,
    target: &FiniteModule,
) -> Result<Vec<HomGraph>> {
    if !ambient.same_ring(target) {
        return Err(Error::domain("Hom between modules over different rings"));
    }
    let n = ambient.check_enumerable(ENUMERATION_BOUND)?;
    let t = target.check_enumerable(ENUMERATION_BOUND)?;
    let dom_size = ambient.submodule_size(sub) as usize;
    if dom_size.saturating_mul(t) > HOM_SEARCH_BOUND {
        return Err(Error::bound(
            "hom search |domain|*|target|",
            dom_size.saturating_mul(t),
            HOM_SEARCH_BOUND,
        ));
    }
    let ring = ambient.ring().clone();
    let rs = ring.size();
    let amb_elems: Vec<Vec<i64>> = (0..n).map(|i| ambient.element(i)).collect();
    let tgt_elems: Vec<Vec<i64>> = (0..t).map(|i| target.element(i)).collect();
    let amb_act: Vec<Vec<usize>> = (0..rs)
        .map(|r| {
            amb_elems
                .iter()
                .map(|v| ambient.index_of(&ambient.act(r, v)))
                .collect()
        })
        .collect();
    let gens: Vec<usize> = ambient
        .generators_of(sub)?
        .iter()
        .map(|g| ambient.index_of(g))
        .collect();

    struct State {
        graph: Vec<usize>,
        dom: Vec<usize>,
    }
    let start = State {
        graph: {
            let mut g = vec![usize::MAX; n];
            g[0] = 0;
            g
        },
        dom: vec![0],
    };
    let mut out = Vec::new();
    let mut stack = vec![(start, 0usize)];
    while let Some((state, depth)) = stack.pop() {
        if depth == gens.len() {
            let mut pairs: Vec<(usize, usize)> =
                state.dom.iter().map(|&x| (x, state.graph[x])).collect();
            pairs.sort_unstable();
            out.push(HomGraph { pairs });
            continue;
        }
        let g = gens[depth];
        let mut children = Vec::new();
        'cand: for m in 0..t {
            let mut graph = state.graph.clone();
            let mut dom = state.dom.clone();
            for (r, act) in amb_act.iter().enumerate().take(rs) {
                let rg = act[g];
                let rm = target.act(r, &tgt_elems[m]);
                for &x in &state.dom {
                    let key = ambient.index_of(&ambient.add(&amb_elems[x], &amb_elems[rg]));
                    let val = target.index_of(&target.add(&tgt_elems[state.graph[x]], &rm));
                    match graph[key] {
                        usize::MAX => {
                            graph[key] = val;
                            dom.push(key);
                        }
                        v if v != val => continue 'cand,
                        _ => {}
                    }
                }
            }
            children.push((State { graph, dom }, depth + 1));
        }
        // Reverse so the output is ordered by generator images.
        stack.extend(children.into_iter().rev());
    }
    Ok(out)
}

/// All linear maps `source -> target`.
pub fn hom_all(source: &FiniteModule, target: &FiniteModule) -> Result<Vec<HomGraph>> {
    hom_graphs(source, &source.whole(), target)
}
