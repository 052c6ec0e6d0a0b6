use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::wpoly::Field;

/// Sparse vector: `(column, value)` pairs with strictly increasing columns and
/// nonzero values.
pub type SparseVec = Vec<(usize, BigRational)>;

/// `v + c * w` over `field`.
pub fn axpy(field: Field, v: &[(usize, BigRational)], c: &BigRational, w: &[(usize, BigRational)]) -> SparseVec {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        let take_v = j >= w.len() || (i < v.len() && v[i].0 < w[j].0);
        let take_w = i >= v.len() || (j < w.len() && w[j].0 < v[i].0);
        if take_v {
            out.push(v[i].clone());
            i += 1;
        } else if take_w {
            let x = field.mul(c, &w[j].1);
            if !x.is_zero() {
                out.push((w[j].0, x));
            }
            j += 1;
        } else {
            let x = field.add(&v[i].1, &field.mul(c, &w[j].1));
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scale(field: Field, v: &[(usize, BigRational)], c: &BigRational) -> SparseVec {
    v.iter().map(|(k, x)| (*k, field.mul(x, c))).collect()
}

/// A subspace of `k^ambient` kept in semi-echelon form: every stored row has
/// leading entry 1 in a column that is a pivot of no other row.
///
/// Rows are not back-reduced; [`Subspace::rref`] produces the canonical basis
/// on demand.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    field: Field,
    rows: Vec<SparseVec>,
    pivot_row: BTreeMap<usize, usize>,
}

impl Subspace {
    pub fn zero(ambient: usize, field: Field) -> Self {
        Subspace { ambient, field, rows: Vec::new(), pivot_row: BTreeMap::new() }
    }

    pub fn full(ambient: usize, field: Field) -> Self {
        let mut s = Self::zero(ambient, field);
        for k in 0..ambient {
            s.pivot_row.insert(k, k);
            s.rows.push(vec![(k, BigRational::one())]);
        }
        s
    }

    pub fn span<I: IntoIterator<Item = SparseVec>>(ambient: usize, field: Field, vectors: I) -> Self {
        let mut s = Self::zero(ambient, field);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// Semi-echelon rows (unordered).
    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Reduces leading entries until the leading column is not a pivot.
    /// The result is empty exactly when `v` lies in the subspace.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        while let Some((col, lead)) = v.first() {
            let Some(&r) = self.pivot_row.get(col) else { break };
            let c = self.field.neg(lead);
            v = axpy(self.field, &v, &c, &self.rows[r]);
        }
        v
    }

    pub fn contains(&self, v: &[(usize, BigRational)]) -> bool {
        debug_assert!(v.iter().all(|(k, _)| *k < self.ambient));
        self.reduce(v.to_vec()).is_empty()
    }

    /// Adds `v` to the spanning set; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        if self.is_full() {
            return false;
        }
        let r = self.reduce(v);
        let Some((col, lead)) = r.first() else { return false };
        let col = *col;
        let r = if lead.is_one() { r } else { scale(self.field, &r, &self.field.inv(lead)) };
        self.pivot_row.insert(col, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.rows.iter().all(|r| other.contains(r))
    }

    pub fn equals(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        s
    }

    /// Intersection by the Zassenhaus construction: echelonize the rows
    /// `(v | v)` for `v` in `self` and `(w | 0)` for `w` in `other`; rows whose
    /// left half vanishes span `(0 | self ∩ other)`.
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let n = self.ambient;
        if self.is_full() {
            return other.clone();
        }
        if other.is_full() {
            return self.clone();
        }
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(n, self.field);
        }
        let mut big = Subspace::zero(2 * n, self.field);
        for r in &self.rows {
            let mut doubled = r.clone();
            doubled.extend(r.iter().map(|(k, x)| (k + n, x.clone())));
            big.insert(doubled);
        }
        for w in &other.rows {
            big.insert(w.clone());
        }
        let mut out = Subspace::zero(n, self.field);
        for r in &big.rows {
            if r[0].0 >= n {
                out.insert(r.iter().map(|(k, x)| (k - n, x.clone())).collect());
            }
        }
        out
    }

    /// Canonical reduced row echelon basis, ordered by pivot column.
    pub fn rref(&self) -> Vec<SparseVec> {
        let mut order: Vec<(usize, usize)> = self.pivot_row.iter().map(|(c, r)| (*c, *r)).collect();
        order.sort();
        let mut out: Vec<SparseVec> = Vec::with_capacity(order.len());
        // Back-substitute from the rightmost pivot so each row is cleared of
        // all later pivots using already-reduced rows.
        let mut reduced: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for &(col, r) in order.iter().rev() {
            let mut v = self.rows[r].clone();
            loop {
                let hit = v.iter().skip(1).find(|(k, _)| reduced.contains_key(k)).cloned();
                let Some((k, x)) = hit else { break };
                let c = self.field.neg(&x);
                v = axpy(self.field, &v, &c, &reduced[&k]);
            }
            reduced.insert(col, v);
        }
        for (_, v) in reduced {
            out.push(v);
        }
        out
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.field == other.field && self.equals(other)
    }
}

impl Eq for Subspace {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wpoly::int;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(k, x)| (k, int(x))).collect()
    }

    #[test]
    fn span_and_membership() {
        let q = Field::Rationals;
        let s = Subspace::span(3, q, [v(&[(0, 1), (1, 1)]), v(&[(1, 1), (2, 1)])]);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&v(&[(0, 1), (2, -1)])));
        assert!(!s.contains(&v(&[(0, 1)])));
        let t = Subspace::span(3, q, [v(&[(0, 1), (2, -1)]), v(&[(0, 2), (1, 2)])]);
        assert_eq!(s, t);
    }

    #[test]
    fn zassenhaus_intersection() {
        let q = Field::Rationals;
        let a = Subspace::span(3, q, [v(&[(0, 1)]), v(&[(1, 1)])]);
        let b = Subspace::span(3, q, [v(&[(1, 1), (0, 1)]), v(&[(2, 1)])]);
        let i = a.intersection(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&v(&[(0, 1), (1, 1)])));
        assert_eq!(a.sum(&b).dim(), 3);
    }

    #[test]
    fn rref_is_canonical() {
        let p = Field::Prime(5);
        let s = Subspace::span(3, p, [v(&[(0, 2), (1, 1), (2, 3)]), v(&[(1, 1), (2, 1)])]);
        let t = Subspace::span(3, p, [v(&[(0, 1), (2, 1)]), v(&[(1, 3), (2, 3)])]);
        assert_eq!(s.rref(), t.rref());
        assert_eq!(s.rref(), vec![v(&[(0, 1), (2, 1)]), v(&[(1, 1), (2, 1)])]);
    }
}
