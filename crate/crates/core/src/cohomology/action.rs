//! The action of a group-like Hopf algebra on `Ext_R(k, k)`, invariants, and
//! the comparison `H(R ⋊ K, k)` against `H(R, k)^K`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::ext::ExtTable;
use crate::hopf::action::HopfAction;
use crate::hopf::smash::smash_from_action;
use crate::linalg::Matrix;
use crate::ncalg::{NcPoly, Word};
use crate::scalar::Scalar;
use crate::sparse::{self, SVec};
use crate::{Error, Result};

/// Left action `h ▷ [f]` of each letter of `K` on `Ext^n`, as matrices on class coordinates.
#[derive(Clone, Debug)]
pub struct KActionOnExt {
    pub letters: Vec<String>,
    pub matrices: Vec<Vec<Matrix>>,
    group: Vec<Word>,
}

/// Matrix of the `φ`-semilinear chain lift composed into cochains:
/// column `i` is the class of `f_i ∘ Φ`.
fn right_action_matrices(table: &ExtTable, action: &HopfAction, letter: u32) -> Result<Vec<Matrix>> {
    let res = table.resolution();
    let a = res.algebra();
    let field = a.field().clone();
    let dim = a.dim();
    let words = a.words();
    if words.len() != dim {
        return Err(Error::Invalid("resolution algebra has no word basis".into()));
    }
    let phi: Vec<SVec> = words
        .iter()
        .map(|w| {
            let img = action.act_word(&[letter], &NcPoly::word(&field, w.clone()))?;
            Ok(sparse::from_dense(&a.coords(&img)?))
        })
        .collect::<Result<_>>()?;
    let mut maps: Vec<Vec<SVec>> = vec![vec![vec![(a.unit(), field.one())]]];
    for n in 1..=table.top() {
        let mut row = Vec::with_capacity(res.rank(n));
        for j in 0..res.rank(n) {
            let mut y = SVec::new();
            for (idx, c) in res.differential(n, j) {
                let (l, k) = (idx / dim, idx % dim);
                y = sparse::axpy(&y, c, &res.left_mul(&phi[k], &maps[n - 1][l]));
            }
            row.push(res.solve(n, res.generator_degrees(n)[j], &y)?);
        }
        maps.push(row);
    }
    let aug = a.augmentation();
    (0..=table.top())
        .map(|n| {
            let classes = table.classes(n);
            let mut m = Matrix::zero(&field, classes.len(), classes.len());
            for (i, cls) in classes.iter().enumerate() {
                let h: Vec<Scalar> = maps[n]
                    .iter()
                    .map(|v| {
                        let mut acc = field.zero();
                        for (idx, c) in v {
                            let e = &aug[idx % dim];
                            if !e.is_zero() {
                                acc = &acc + &(&(c * e) * &cls.cocycle[idx / dim]);
                            }
                        }
                        acc
                    })
                    .collect();
                for (r, x) in table.class_coords(n, &h)?.into_iter().enumerate() {
                    m.set(r, i, x);
                }
            }
            Ok(m)
        })
        .collect()
}

/// The left action `g ▷ [f] = [f ∘ Φ_{g⁻¹}]` of every group-like letter.
pub fn k_action_on_ext(action: &HopfAction, table: &ExtTable) -> Result<KActionOnExt> {
    let k = action.hopf();
    let names = k.names();
    let mut matrices = Vec::new();
    for a in 0..k.num_generators() as u32 {
        if !k.is_grouplike_gen(a) {
            return Err(Error::Unsupported(format!("action on Ext needs group-like letters; {} is not", names[a as usize])));
        }
        let right = right_action_matrices(table, action, a)?;
        let left = right
            .iter()
            .map(|m| m.inverse().ok_or_else(|| Error::Invalid(format!("{} acts non-invertibly on Ext", names[a as usize]))))
            .collect::<Result<Vec<_>>>()?;
        matrices.push(left);
    }
    let group = if k.algebra().is_finite_dimensional() { k.algebra().basis()? } else { Vec::new() };
    Ok(KActionOnExt { letters: names, matrices, group })
}

impl KActionOnExt {
    pub fn degrees(&self) -> usize {
        self.matrices.first().map(Vec::len).unwrap_or(0)
    }

    /// Matrix of a word `a₁⋯a_r` on `Ext^n`.
    pub fn word_matrix(&self, w: &[u32], n: usize, dim: usize, field: &crate::Field) -> Matrix {
        let mut m = Matrix::identity(field, dim);
        for &a in w {
            m = m.mul(&self.matrices[a as usize][n]);
        }
        m
    }

    /// A relation of `K` that does not act as zero, with the degree where it fails.
    pub fn module_witness(&self, action: &HopfAction, table: &ExtTable) -> Option<(String, usize)> {
        let k = action.hopf();
        let field = table.field();
        let names = k.names();
        for r in &k.algebra().presentation().relations {
            for n in 0..=table.top() {
                let d = table.classes(n).len();
                let mut acc = Matrix::zero(field, d, d);
                for (w, c) in r.terms() {
                    let m = self.word_matrix(w, n, d, field);
                    for i in 0..d {
                        for j in 0..d {
                            let v = acc.get(i, j) + &(c * m.get(i, j));
                            acc.set(i, j, v);
                        }
                    }
                }
                if !acc.is_zero() {
                    return Some((r.fmt_with(&names), n));
                }
            }
        }
        None
    }

    /// `dim (Ext^n)^K`, using `Σ_{g ∈ G} g` on the group basis of `K`.
    pub fn invariant_dims(&self, table: &ExtTable) -> Result<Vec<usize>> {
        let field = table.field();
        if self.group.is_empty() {
            return Err(Error::NotSemisimple("Hopf algebra is not finite-dimensional".into()));
        }
        let order = self.group.len() as u64;
        let ch = field.characteristic();
        if ch != 0 && order.is_multiple_of(ch) {
            return Err(Error::NotSemisimple(format!("group order {order} is divisible by the characteristic {ch}")));
        }
        (0..=table.top())
            .map(|n| {
                let d = table.classes(n).len();
                let mut acc = Matrix::zero(field, d, d);
                for w in &self.group {
                    let m = self.word_matrix(w, n, d, field);
                    for i in 0..d {
                        for j in 0..d {
                            let v = acc.get(i, j) + m.get(i, j);
                            acc.set(i, j, v);
                        }
                    }
                }
                Ok(acc.rank())
            })
            .collect()
    }
}

/// `dim H(R ⋊ K, k)` against `dim H(R, k)^K`, degree by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SvComparison {
    pub smash_dims: Vec<usize>,
    pub invariant_dims: Vec<usize>,
    pub ext_dims: Vec<usize>,
    pub first_discrepancy: Option<usize>,
}

impl SvComparison {
    pub fn pass(&self) -> bool {
        self.first_discrepancy.is_none()
    }
}

pub fn compare_sv(action: &HopfAction, top: usize, cutoff: u32) -> Result<SvComparison> {
    let r = ExtTable::from_presented(action.algebra(), top)?;
    let kx = k_action_on_ext(action, &r)?;
    let invariant_dims = kx.invariant_dims(&r)?;
    let smash = smash_from_action(action, cutoff)?;
    let smash_dims = ExtTable::from_presented(&smash.algebra, top)?.dims();
    let first_discrepancy = (0..=top).find(|&n| smash_dims[n] != invariant_dims[n]);
    Ok(SvComparison { smash_dims, invariant_dims, ext_dims: r.dims(), first_discrepancy })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::action::ActionSpec;
    use crate::hopf::builders::quantum_line;
    use crate::hopf::data::cyclic_group;
    use crate::hopf::presented::HopfPresentation;
    use crate::scalar::Field;

    #[test]
    fn rotation_acts_by_inverse_root() {
        let f = Field::cyclotomic(3).unwrap();
        let z = f.zeta().unwrap();
        let k = HopfPresentation::from_data(&cyclic_group(&f, 3).unwrap()).unwrap();
        let r = quantum_line(&f, 3, &z, 6).unwrap();
        let spec = ActionSpec::parse(&k, &r, &[("g", &[("X", "zeta*X")])]).unwrap();
        let act = HopfAction::new(&k, &r, &spec).unwrap();
        let t = ExtTable::from_presented(&r, 6).unwrap();
        let kx = k_action_on_ext(&act, &t).unwrap();
        assert_eq!(kx.matrices[0][1].get(0, 0), &z.inv().unwrap());
        assert!(kx.matrices[0][2].get(0, 0).is_one());
        assert!(kx.module_witness(&act, &t).is_none());
        assert_eq!(kx.invariant_dims(&t).unwrap(), vec![1, 0, 1, 0, 1, 0, 1]);
        let triv = HopfAction::new(&k, &r, &ActionSpec::trivial()).unwrap();
        let kt = k_action_on_ext(&triv, &t).unwrap();
        assert_eq!(kt.invariant_dims(&t).unwrap(), t.dims());
    }

    #[test]
    fn sweedler_comparison() {
        let f = Field::cyclotomic(2).unwrap();
        let k = HopfPresentation::from_data(&cyclic_group(&f, 2).unwrap()).unwrap();
        let r = quantum_line(&f, 2, &f.from_int(-1), 4).unwrap();
        let spec = ActionSpec::parse(&k, &r, &[("g", &[("X", "-X")])]).unwrap();
        let act = HopfAction::new(&k, &r, &spec).unwrap();
        let c = compare_sv(&act, 6, 6).unwrap();
        assert!(c.pass(), "{c:?}");
        assert_eq!(c.smash_dims, vec![1, 0, 1, 0, 1, 0, 1]);
        let triv = HopfAction::new(&k, &r, &ActionSpec::trivial()).unwrap();
        let c = compare_sv(&triv, 4, 6).unwrap();
        assert!(c.pass());
        assert_eq!(c.smash_dims, vec![1; 5]);
    }
}
