//! Finite-dimensional algebras by multiplication table.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{fmt_word, NcPoly, PresentedAlgebra, Word};
use crate::linalg::Matrix;
use crate::scalar::{Field, Scalar};
use crate::{Error, Result};

/// Sparse vector: `(basis index, nonzero coefficient)` pairs, sorted by index.
pub type Sparse = Vec<(usize, Scalar)>;

/// An augmented algebra with a chosen basis and structure constants.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    field: Field,
    labels: Vec<String>,
    words: Vec<Word>,
    index: BTreeMap<Word, usize>,
    degrees: Vec<u32>,
    table: Vec<Vec<Sparse>>,
    unit: usize,
    augmentation: Vec<Scalar>,
    graded: bool,
}

fn to_sparse(v: &[Scalar]) -> Sparse {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

impl FiniteAlgebra {
    /// Basis of normal words of a finite-dimensional presented algebra.
    pub fn from_presented(a: &PresentedAlgebra) -> Result<FiniteAlgebra> {
        let words = a.basis()?;
        let field = a.field().clone();
        let names = a.names();
        let p = a.presentation();
        let index: BTreeMap<Word, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let mut table = Vec::with_capacity(words.len());
        for u in &words {
            let mut row = Vec::with_capacity(words.len());
            for v in &words {
                let mut w = u.clone();
                w.extend_from_slice(v);
                let nf = a.normal_form(&NcPoly::word(&field, w))?;
                let mut s: Sparse = nf.terms().map(|(w, c)| (index[w], c.clone())).collect();
                s.sort_by_key(|(i, _)| *i);
                row.push(s);
            }
            table.push(row);
        }
        let augmentation =
            words.iter().map(|w| p.augment(&NcPoly::word(&field, w.clone()))).collect();
        let labels = words
            .iter()
            .map(|w| if w.is_empty() { String::from("1") } else { fmt_word(w, &names) })
            .collect();
        Ok(FiniteAlgebra {
            degrees: words.iter().map(|w| p.degree_of(w)).collect(),
            unit: index[&Vec::new()],
            field,
            labels,
            words,
            index,
            table,
            augmentation,
            graded: p.graded,
        })
    }

    /// An algebra given directly by a dense multiplication table
    /// `table[i][j]` = coordinates of `b_i b_j`.
    pub fn from_table(
        field: &Field,
        labels: Vec<String>,
        degrees: Vec<u32>,
        table: &[Vec<Vec<Scalar>>],
        unit: usize,
        augmentation: Vec<Scalar>,
        graded: bool,
    ) -> Result<FiniteAlgebra> {
        let n = labels.len();
        if degrees.len() != n || table.len() != n || augmentation.len() != n || unit >= n {
            return Err(Error::DimensionMismatch("finite algebra data".into()));
        }
        let mut sparse = Vec::with_capacity(n);
        for row in table {
            if row.len() != n || row.iter().any(|v| v.len() != n) {
                return Err(Error::DimensionMismatch("multiplication table".into()));
            }
            sparse.push(row.iter().map(|v| to_sparse(v)).collect());
        }
        Ok(FiniteAlgebra {
            field: field.clone(),
            labels,
            words: Vec::new(),
            index: BTreeMap::new(),
            degrees,
            table: sparse,
            unit,
            augmentation,
            graded,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Basis words, when built from a presentation.
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn augmentation(&self) -> &[Scalar] {
        &self.augmentation
    }

    /// Graded, with the unit spanning degree 0.
    pub fn is_connected(&self) -> bool {
        self.graded && self.degrees.iter().enumerate().all(|(i, &d)| (d == 0) == (i == self.unit))
    }

    /// Coordinates of `b_i b_j`.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i][j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn one(&self) -> Vec<Scalar> {
        self.basis_vector(self.unit)
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in &self.table[i][j] {
                    out[*k] = &out[*k] + &(&xy * c);
                }
            }
        }
        out
    }

    pub fn counit(&self, a: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for (x, e) in a.iter().zip(&self.augmentation) {
            if !x.is_zero() && !e.is_zero() {
                acc = &acc + &(x * e);
            }
        }
        acc
    }

    /// Matrix of `x ↦ a·x` (columns are images of basis vectors).
    pub fn left_mult(&self, a: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zero(&self.field, n, n);
        for j in 0..n {
            let col = self.mul(a, &self.basis_vector(j));
            for (i, c) in col.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// Coordinates of a polynomial already in normal form.
    pub fn coords(&self, f: &NcPoly) -> Result<Vec<Scalar>> {
        let mut v = vec![self.field.zero(); self.dim()];
        for (w, c) in f.terms() {
            let i = *self
                .index
                .get(w)
                .ok_or_else(|| Error::Invalid(alloc::format!("word {w:?} is not a basis word")))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn word_index(&self, w: &[u32]) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Polynomial with the given coordinates in the word basis.
    pub fn to_poly(&self, v: &[Scalar]) -> NcPoly {
        let mut p = NcPoly::zero(&self.field);
        for (i, c) in v.iter().enumerate() {
            p.add_term(self.words[i].clone(), c.clone());
        }
        p
    }

    /// Checks associativity and unit laws on all basis triples.
    pub fn check_associative(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul(&self.basis_vector(i), &self.basis_vector(j));
                for k in 0..n {
                    let left = self.mul(&ij, &self.basis_vector(k));
                    let jk = self.mul(&self.basis_vector(j), &self.basis_vector(k));
                    let right = self.mul(&self.basis_vector(i), &jk);
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::{groebner_truncated, Presentation};

    #[test]
    fn truncated_polynomial_table() {
        let q = Field::rationals();
        let mut p = Presentation::new(&q, &[("X", 1)]);
        p.add_relation_str("X^3").unwrap();
        let a = FiniteAlgebra::from_presented(&groebner_truncated(&p, 3).unwrap()).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.labels(), ["1", "X", "X^2"]);
        assert!(a.is_connected());
        assert!(a.product(1, 2).is_empty());
        assert_eq!(a.product(1, 1), [(2, q.one())]);
        assert!(a.check_associative().is_none());
    }
}
