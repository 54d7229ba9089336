//! Braided vector spaces and the braid equation.

use alloc::vec::Vec;

use crate::linalg::Matrix;
use crate::scalar::{Field, Scalar};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BraidingKind {
    /// `c(v_i ⊗ v_j) = q_ij v_j ⊗ v_i`.
    Diagonal(Vec<Vec<Scalar>>),
    /// The block `c(x⊗x) = x⊗x`, `c(x⊗y) = (y+x)⊗x`, `c(y⊗x) = x⊗y`, `c(y⊗y) = (y+x)⊗y`.
    JordanBlock,
    Explicit,
}

/// A braiding on `V ⊗ V`; the basis tensor `v_i ⊗ v_j` has index `i·θ + j`
/// and column `t` of the matrix is `c` of basis tensor `t`.
#[derive(Clone, Debug)]
pub struct BraidedVectorSpace {
    dim: usize,
    matrix: Matrix,
    kind: BraidingKind,
}

impl BraidedVectorSpace {
    pub fn diagonal(q: &[Vec<Scalar>]) -> Result<BraidedVectorSpace> {
        let t = q.len();
        if t == 0 || q.iter().any(|r| r.len() != t) {
            return Err(Error::DimensionMismatch("braiding matrix must be square and nonempty".into()));
        }
        let field = q[0][0].field().clone();
        let mut m = Matrix::zero(&field, t * t, t * t);
        for i in 0..t {
            for j in 0..t {
                m.set(j * t + i, i * t + j, q[i][j].clone());
            }
        }
        Ok(BraidedVectorSpace { dim: t, matrix: m, kind: BraidingKind::Diagonal(q.to_vec()) })
    }

    /// The Jordan block on the basis `x = v_0`, `y = v_1`.
    pub fn jordan_block(field: &Field) -> BraidedVectorSpace {
        let one = field.one();
        let mut m = Matrix::zero(field, 4, 4);
        let t = |i: usize, j: usize| i * 2 + j;
        m.set(t(0, 0), t(0, 0), one.clone());
        m.set(t(0, 1), t(1, 0), one.clone());
        m.set(t(1, 0), t(0, 1), one.clone());
        m.set(t(0, 0), t(0, 1), one.clone());
        m.set(t(1, 1), t(1, 1), one.clone());
        m.set(t(0, 1), t(1, 1), one);
        BraidedVectorSpace { dim: 2, matrix: m, kind: BraidingKind::JordanBlock }
    }

    pub fn explicit(dim: usize, matrix: Matrix) -> Result<BraidedVectorSpace> {
        if matrix.rows() != dim * dim || matrix.cols() != dim * dim {
            return Err(Error::DimensionMismatch("braiding must act on V ⊗ V".into()));
        }
        Ok(BraidedVectorSpace { dim, matrix, kind: BraidingKind::Explicit })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn kind(&self) -> &BraidingKind {
        &self.kind
    }

    fn c12(&self) -> Matrix {
        let t = self.dim;
        let mut m = Matrix::zero(self.matrix.field(), t * t * t, t * t * t);
        for a in 0..t * t {
            for b in 0..t * t {
                let v = self.matrix.get(a, b);
                if v.is_zero() {
                    continue;
                }
                for k in 0..t {
                    m.set(a * t + k, b * t + k, v.clone());
                }
            }
        }
        m
    }

    fn c23(&self) -> Matrix {
        let t = self.dim;
        let mut m = Matrix::zero(self.matrix.field(), t * t * t, t * t * t);
        for a in 0..t * t {
            for b in 0..t * t {
                let v = self.matrix.get(a, b);
                if v.is_zero() {
                    continue;
                }
                for i in 0..t {
                    m.set(i * t * t + a, i * t * t + b, v.clone());
                }
            }
        }
        m
    }

    /// A basis tensor `v_i ⊗ v_j ⊗ v_k` on which the two sides of the braid
    /// equation differ.
    pub fn braid_equation_witness(&self) -> Result<Option<(usize, usize, usize)>> {
        if self.matrix.rank() < self.dim * self.dim {
            return Err(Error::SingularBraiding);
        }
        let (a, b) = (self.c12(), self.c23());
        let l = a.mul(&b).mul(&a);
        let r = b.mul(&a).mul(&b);
        let t = self.dim;
        for col in 0..t * t * t {
            if l.column(col) != r.column(col) {
                return Ok(Some((col / (t * t), (col / t) % t, col % t)));
            }
        }
        Ok(None)
    }

    /// `(c⊗id)(id⊗c)(c⊗id) = (id⊗c)(c⊗id)(id⊗c)`.
    pub fn braid_equation_check(&self) -> Result<bool> {
        Ok(self.braid_equation_witness()?.is_none())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_and_jordan_satisfy_braid_equation() {
        let f = Field::cyclotomic(3).unwrap();
        let z = f.zeta().unwrap();
        let q = alloc::vec![alloc::vec![z.clone(), f.from_int(2)], alloc::vec![f.from_int(5), z.pow(2)]];
        assert!(BraidedVectorSpace::diagonal(&q).unwrap().braid_equation_check().unwrap());
        let f3 = Field::prime(3).unwrap();
        assert!(BraidedVectorSpace::jordan_block(&f3).braid_equation_check().unwrap());
    }

    #[test]
    fn perturbed_flip_fails() {
        let q = Field::rationals();
        let mut m = Matrix::zero(&q, 4, 4);
        for i in 0..2 {
            for j in 0..2 {
                m.set(j * 2 + i, i * 2 + j, q.one());
            }
        }
        assert!(BraidedVectorSpace::explicit(2, m.clone()).unwrap().braid_equation_check().unwrap());
        m.set(0, 1, q.from_int(2));
        let w = BraidedVectorSpace::explicit(2, m).unwrap().braid_equation_witness().unwrap();
        assert!(w.is_some());
        let singular = Matrix::zero(&q, 4, 4);
        assert_eq!(
            BraidedVectorSpace::explicit(2, singular).unwrap().braid_equation_check(),
            Err(Error::SingularBraiding)
        );
    }
}
