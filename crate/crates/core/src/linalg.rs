//! Dense exact linear algebra.

use alloc::vec;
use alloc::vec::Vec;

use crate::scalar::{Field, Scalar};

/// Row-major dense matrix over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Matrix {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Matrix { field: field.clone(), rows: n, cols, data }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Matrix::zero(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let s = m.get(r, j);
                    if !s.is_zero() {
                        let v = m.get(i, j) - &(&f * s);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self·x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, free);
            }
            out.push(v);
        }
        out
    }

    /// Some `x` with `self·x = b`, if one exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "shape mismatch");
        let mut aug = Matrix::zero(&self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zero(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zero(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

/// Incrementally built echelon basis of a subspace of `k^dim`.
///
/// Every inserted vector is remembered by index so that membership queries
/// can also return coordinates in terms of the inserted vectors.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: Field,
    dim: usize,
    rows: Vec<(usize, Vec<Scalar>, Vec<(usize, Scalar)>)>,
    inserted: usize,
}

fn combo_axpy(acc: &mut Vec<(usize, Scalar)>, f: &Scalar, other: &[(usize, Scalar)]) {
    for (k, c) in other {
        let add = f * c;
        if let Some(pos) = acc.iter().position(|(j, _)| j == k) {
            acc[pos].1 = &acc[pos].1 + &add;
        } else {
            acc.push((*k, add));
        }
    }
    acc.retain(|(_, c)| !c.is_zero());
}

impl EchelonBasis {
    pub fn new(field: &Field, dim: usize) -> EchelonBasis {
        EchelonBasis { field: field.clone(), dim, rows: Vec::new(), inserted: 0 }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors inserted so far, dependent ones included.
    pub fn inserted_count(&self) -> usize {
        self.inserted
    }

    /// Reduces `v` and returns the remainder together with the combination
    /// `c` of stored rows such that `v = remainder + Σ c_k v_k`.
    fn reduce_tracked(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<(usize, Scalar)>) {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        let mut r = v.to_vec();
        let mut combo = Vec::new();
        for (p, row, rc) in &self.rows {
            let f = r[*p].clone();
            if f.is_zero() {
                continue;
            }
            for j in *p..self.dim {
                if !row[j].is_zero() {
                    r[j] = &r[j] - &(&f * &row[j]);
                }
            }
            combo_axpy(&mut combo, &f, rc);
        }
        (r, combo)
    }

    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.reduce_tracked(v).0
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates of `v` in terms of the inserted vectors (indexed by
    /// insertion order, including dependent ones, which get coefficient 0).
    pub fn express(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let (r, combo) = self.reduce_tracked(v);
        if !r.iter().all(Scalar::is_zero) {
            return None;
        }
        let mut out = vec![self.field.zero(); self.inserted];
        for (k, c) in combo {
            out[k] = c;
        }
        Some(out)
    }

    /// Inserts `v`; returns whether it was independent of the current span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        let (mut r, combo) = self.reduce_tracked(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero pivot");
        for x in r.iter_mut().skip(p) {
            *x = &*x * &inv;
        }
        // row = (v - Σ combo) / pivot
        let mut rc: Vec<(usize, Scalar)> = vec![(idx, inv.clone())];
        let neg = -&inv;
        combo_axpy(&mut rc, &neg, &combo);
        self.rows.push((p, r, rc));
        true
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _, _)| *p).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(f: &Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows[0].len();
        Matrix::from_rows(f, cols, rows.iter().map(|r| r.iter().map(|&x| f.from_int(x)).collect()).collect())
    }

    #[test]
    fn rank_kernel_solve() {
        let q = Field::rationals();
        let a = m(&q, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).iter().all(Scalar::is_zero));
        let b: Vec<_> = [4, 8, 2].iter().map(|&x| q.from_int(x)).collect();
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        let bad: Vec<_> = [1, 0, 0].iter().map(|&x| q.from_int(x)).collect();
        assert!(a.solve(&bad).is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Field::prime(7).unwrap();
        let a = m(&f, &[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(&f, 2));
        assert!(m(&f, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn echelon_express() {
        let q = Field::rationals();
        let mut e = EchelonBasis::new(&q, 3);
        let v = |a: i64, b: i64, c: i64| vec![q.from_int(a), q.from_int(b), q.from_int(c)];
        assert!(e.insert(&v(1, 1, 0)));
        assert!(e.insert(&v(0, 1, 1)));
        assert!(!e.insert(&v(1, 2, 1)));
        let c = e.express(&v(2, 5, 3)).unwrap();
        assert_eq!(c, vec![q.from_int(2), q.from_int(3), q.zero()]);
        assert!(e.express(&v(0, 0, 1)).is_none());
    }
}
