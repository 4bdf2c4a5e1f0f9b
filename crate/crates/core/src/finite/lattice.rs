//! Finite abelian groups `Z^r / L` where `L` contains `e·Z^r`.
//!
//! `L` is kept in Hermite normal form (upper triangular rows, positive
//! diagonal, entries above the diagonal reduced modulo it). Reducing a
//! vector against the rows gives the canonical coset representative, whose
//! coordinates satisfy `0 <= v_j < H_jj`; the mixed-radix reading of those
//! coordinates indexes the group elements.

use num_integer::Integer;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    exponent: i64,
    rows: Vec<Vec<i64>>,
}

impl Lattice {
    /// The lattice spanned by `gens` and `exponent·Z^dim`.
    pub fn from_generators(dim: usize, exponent: i64, gens: &[Vec<i64>]) -> Self {
        assert!(exponent > 0);
        let e = exponent;
        let mut pool: Vec<Vec<i64>> = gens
            .iter()
            .map(|g| {
                assert_eq!(g.len(), dim);
                g.iter().map(|x| x.mod_floor(&e)).collect::<Vec<_>>()
            })
            .filter(|g| g.iter().any(|&x| x != 0))
            .collect();
        let mut rows = Vec::with_capacity(dim);
        for col in 0..dim {
            let mut piv = vec![0i64; dim];
            piv[col] = e;
            for row in pool.iter_mut() {
                if row[col] == 0 {
                    continue;
                }
                let (a, b) = (piv[col], row[col]);
                let eg = a.extended_gcd(&b);
                let (g, s, t) = (eg.gcd, eg.x, eg.y);
                let new_piv: Vec<i64> = piv
                    .iter()
                    .zip(row.iter())
                    .map(|(p, r)| s * p + t * r)
                    .collect();
                let new_row: Vec<i64> = piv
                    .iter()
                    .zip(row.iter())
                    .map(|(p, r)| (b / g) * p - (a / g) * r)
                    .collect();
                piv = new_piv;
                *row = new_row;
                for (j, x) in piv.iter_mut().enumerate() {
                    if j > col {
                        *x = x.mod_floor(&e);
                    }
                }
                for x in row.iter_mut() {
                    *x = x.mod_floor(&e);
                }
            }
            if piv[col] < 0 {
                for x in piv.iter_mut() {
                    *x = -*x;
                }
                for (j, x) in piv.iter_mut().enumerate() {
                    if j > col {
                        *x = x.mod_floor(&e);
                    }
                }
            }
            pool.retain(|r| r.iter().any(|&x| x != 0));
            rows.push(piv);
        }
        for j in 0..dim {
            let d = rows[j][j];
            for i in 0..j {
                let q = Integer::div_floor(&rows[i][j], &d);
                if q != 0 {
                    let rj = rows[j].clone();
                    for (x, y) in rows[i].iter_mut().zip(rj) {
                        *x -= q * y;
                    }
                }
            }
        }
        Lattice { exponent, rows }
    }

    /// `e·Z^dim` itself: the group `(Z/e)^dim`.
    pub fn full(dim: usize, exponent: i64) -> Self {
        Self::from_generators(dim, exponent, &[])
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.dim()).map(|j| self.rows[j][j]).collect()
    }

    /// Order of `Z^r / L`, saturating at `u128::MAX`.
    pub fn group_order(&self) -> u128 {
        self.diagonal()
            .iter()
            .fold(1u128, |acc, &d| acc.saturating_mul(d as u128))
    }

    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        let mut v = v.to_vec();
        for j in 0..self.dim() {
            let d = self.rows[j][j];
            let q = Integer::div_floor(&v[j], &d);
            if q != 0 {
                for (x, y) in v.iter_mut().zip(&self.rows[j]) {
                    *x -= q * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// The smallest lattice containing `self` and `gens`.
    pub fn extended(&self, gens: &[Vec<i64>]) -> Lattice {
        let mut all = self.rows.clone();
        all.extend(gens.iter().cloned());
        Lattice::from_generators(self.dim(), self.exponent, &all)
    }

    /// Mixed-radix index of a canonical representative.
    pub fn index_of(&self, v: &[i64]) -> usize {
        let mut idx = 0usize;
        let mut scale = 1usize;
        for (j, &x) in v.iter().enumerate() {
            idx += x as usize * scale;
            scale *= self.rows[j][j] as usize;
        }
        idx
    }

    pub fn element(&self, mut idx: usize) -> Vec<i64> {
        let mut v = vec![0; self.dim()];
        for (j, x) in v.iter_mut().enumerate() {
            let d = self.rows[j][j] as usize;
            *x = (idx % d) as i64;
            idx /= d;
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_subgroups_of_z4() {
        let l = Lattice::from_generators(1, 4, &[vec![2]]);
        assert_eq!(l.diagonal(), vec![2]);
        assert_eq!(l.group_order(), 2);
        assert_eq!(l.reduce(&[7]), vec![1]);
    }

    #[test]
    fn hnf_is_canonical_for_equal_lattices() {
        let a = Lattice::from_generators(2, 4, &[vec![1, 2], vec![0, 2]]);
        let b = Lattice::from_generators(2, 4, &[vec![1, 0], vec![3, 2]]);
        assert_eq!(a, b);
        assert_eq!(a.group_order(), 2);
    }

    #[test]
    fn indices_round_trip() {
        let l = Lattice::from_generators(2, 4, &[vec![2, 2]]);
        let n = l.group_order() as usize;
        assert_eq!(n, 8);
        for i in 0..n {
            let v = l.element(i);
            assert_eq!(l.reduce(&v), v);
            assert_eq!(l.index_of(&v), i);
        }
    }
}
