//! Sparse exact vectors and incremental row echelon forms.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::scalar::{Field, Scalar};

/// Sorted `(index, nonzero value)` pairs.
pub type SVec = Vec<(usize, Scalar)>;

/// `x + c·y`.
pub fn axpy(x: &[(usize, Scalar)], c: &Scalar, y: &[(usize, Scalar)]) -> SVec {
    if c.is_zero() {
        return x.to_vec();
    }
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i].clone());
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            out.push((y[j].0, c * &y[j].1));
            j += 1;
        } else {
            let s = &x[i].1 + &(c * &y[j].1);
            if !s.is_zero() {
                out.push((x[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(x: &[(usize, Scalar)], c: &Scalar) -> SVec {
    if c.is_zero() {
        return Vec::new();
    }
    x.iter().map(|(i, v)| (*i, v * c)).collect()
}

/// Builds a sorted sparse vector from unsorted, possibly repeated entries.
pub fn collect(entries: impl IntoIterator<Item = (usize, Scalar)>) -> SVec {
    let mut m: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, c) in entries {
        if c.is_zero() {
            continue;
        }
        match m.get_mut(&i) {
            Some(old) => *old = &*old + &c,
            None => {
                m.insert(i, c);
            }
        }
    }
    m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

pub fn from_dense(v: &[Scalar]) -> SVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

pub fn to_dense(field: &Field, v: &[(usize, Scalar)], n: usize) -> Vec<Scalar> {
    let mut out = vec![field.zero(); n];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

/// Incremental echelon form; rows are monic at their first entry.
/// With tracking, every row remembers itself as a combination of inserted vectors.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    rows: Vec<SVec>,
    combos: Vec<SVec>,
    pivot: BTreeMap<usize, usize>,
    inserted: usize,
    track: bool,
}

impl SparseEchelon {
    pub fn new(track: bool) -> SparseEchelon {
        SparseEchelon { rows: Vec::new(), combos: Vec::new(), pivot: BTreeMap::new(), inserted: 0, track }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    fn reduce_tracked(&self, v: &[(usize, Scalar)]) -> (SVec, SVec) {
        let mut r = v.to_vec();
        let mut combo = SVec::new();
        let mut pos = 0;
        while pos < r.len() {
            let col = r[pos].0;
            match self.pivot.get(&col) {
                Some(&ri) => {
                    let c = r[pos].1.clone();
                    r = axpy(&r, &-&c, &self.rows[ri]);
                    if self.track {
                        combo = axpy(&combo, &c, &self.combos[ri]);
                    }
                }
                None => pos += 1,
            }
        }
        (r, combo)
    }

    pub fn reduce(&self, v: &[(usize, Scalar)]) -> SVec {
        self.reduce_tracked(v).0
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Coordinates of `v` over the inserted vectors, if `v` is in their span.
    pub fn express(&self, v: &[(usize, Scalar)]) -> Option<SVec> {
        assert!(self.track, "express needs tracking");
        let (r, combo) = self.reduce_tracked(v);
        r.is_empty().then_some(combo)
    }

    /// Inserts `v`. Returns `None` if it was independent, otherwise its
    /// coordinates over the previously inserted vectors.
    pub fn insert(&mut self, v: &[(usize, Scalar)]) -> Option<SVec> {
        let idx = self.inserted;
        self.inserted += 1;
        let (r, combo) = self.reduce_tracked(v);
        if r.is_empty() {
            return Some(combo);
        }
        let inv = r[0].1.inv().expect("nonzero pivot");
        let row = scale(&r, &inv);
        if self.track {
            let c = axpy(&[(idx, inv.clone())], &-&inv, &combo);
            self.combos.push(c);
        }
        self.pivot.insert(row[0].0, self.rows.len());
        self.rows.push(row);
        None
    }
}

/// Rank of the span of the given vectors.
pub fn rank(vectors: &[SVec]) -> usize {
    let mut e = SparseEchelon::new(false);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Basis of `{x : Σ x_j columns[j] = 0}`.
pub fn kernel(field: &Field, columns: &[SVec]) -> Vec<SVec> {
    let mut e = SparseEchelon::new(true);
    let one = field.one();
    let mut out = Vec::new();
    for (j, c) in columns.iter().enumerate() {
        if let Some(dep) = e.insert(c) {
            out.push(axpy(&[(j, one.clone())], &-&one, &dep));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_express() {
        let q = Field::rationals();
        let s = |v: &[i64]| from_dense(&v.iter().map(|&x| q.from_int(x)).collect::<Vec<_>>());
        let cols = [s(&[1, 0, 1]), s(&[0, 1, 1]), s(&[1, 1, 2]), s(&[0, 0, 0])];
        let k = kernel(&q, &cols);
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], s(&[-1, -1, 1]));
        assert_eq!(k[1], s(&[0, 0, 0, 1]));
        let mut e = SparseEchelon::new(true);
        for c in &cols[..2] {
            assert!(e.insert(c).is_none());
        }
        assert_eq!(e.express(&s(&[2, 3, 5])), Some(s(&[2, 3])));
        assert_eq!(e.express(&s(&[1, 0, 0])), None);
        assert_eq!(rank(&cols), 2);
    }
}
