//! Graded free resolutions of the trivial module over finite-dimensional algebras.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::ncalg::{FiniteAlgebra, NcPoly, PresentedAlgebra};
use crate::scalar::{Field, Scalar};
use crate::sparse::{self, SVec, SparseEchelon};
use crate::{Error, Result};

/// Echelon form of `d_n` restricted to one internal degree, remembering which
/// basis element of `P_n` each inserted column came from.
#[derive(Clone, Debug)]
struct Solver {
    echelon: SparseEchelon,
    domain: Vec<usize>,
}

/// `P_n = ⊕_j A·e_j` with `e_j` in internal degree `gen_degrees[n][j]`.
/// Elements of `P_n` are sparse vectors indexed by `j·dim A + basis index`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    algebra: FiniteAlgebra,
    by_degree: BTreeMap<u32, Vec<usize>>,
    gen_degrees: Vec<Vec<u32>>,
    diffs: Vec<Vec<SVec>>,
    solvers: Vec<BTreeMap<u32, Solver>>,
    kernel_dims: Vec<BTreeMap<u32, usize>>,
    exact: bool,
}

impl FreeResolution {
    /// Resolution to stage `n`; for algebras that are not connected one extra
    /// stage is built so that `Ext^n` can be read off.
    pub fn new(algebra: &FiniteAlgebra, n: usize) -> Result<FreeResolution> {
        if algebra.augmentation().iter().zip(0..).any(|(e, i)| !e.is_zero() && algebra_degree(algebra, i) != 0) {
            return Err(Error::Invalid("augmentation must vanish in positive degrees".into()));
        }
        let mut by_degree: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for i in 0..algebra.dim() {
            by_degree.entry(algebra_degree(algebra, i)).or_default().push(i);
        }
        let mut res = FreeResolution {
            algebra: algebra.clone(),
            by_degree,
            gen_degrees: vec![vec![0]],
            diffs: vec![Vec::new()],
            solvers: Vec::new(),
            kernel_dims: Vec::new(),
            exact: true,
        };
        let top = if algebra.is_connected() { n } else { n + 1 };
        for stage in 0..=top {
            let kernels = res.build_solver(stage);
            if stage > 0 {
                let prev = &res.kernel_dims[stage - 1];
                for (t, &k) in prev {
                    let r = res.solvers[stage].get(t).map(|s| s.echelon.rank()).unwrap_or(0);
                    if r != k {
                        res.exact = false;
                    }
                }
            }
            res.kernel_dims.push(kernels.iter().map(|(t, v)| (*t, v.len())).collect());
            if stage < top {
                res.choose_generators(&kernels);
            }
        }
        Ok(res)
    }

    pub fn from_presented(a: &PresentedAlgebra, n: usize) -> Result<FreeResolution> {
        FreeResolution::new(&FiniteAlgebra::from_presented(a)?, n)
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> &Field {
        self.algebra.field()
    }

    /// Highest stage with a differential.
    pub fn length(&self) -> usize {
        self.gen_degrees.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.gen_degrees[n].len()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.gen_degrees.iter().map(Vec::len).collect()
    }

    pub fn generator_degrees(&self, n: usize) -> &[u32] {
        &self.gen_degrees[n]
    }

    /// `d_n(e_j)` as an element of `P_{n-1}`.
    pub fn differential(&self, n: usize, j: usize) -> &SVec {
        &self.diffs[n][j]
    }

    /// Entry `a_ij` of `d_n(e_j) = Σ_i a_ij e_i` as a normal-form polynomial.
    pub fn differential_entry(&self, n: usize, i: usize, j: usize) -> NcPoly {
        let dim = self.algebra.dim();
        let mut v = vec![self.field().zero(); dim];
        for (idx, c) in &self.diffs[n][j] {
            if idx / dim == i {
                v[idx % dim] = c.clone();
            }
        }
        self.algebra.to_poly(&v)
    }

    /// Exactness at every computed stage, certified by ranks.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Every differential has all its entries in the augmentation ideal.
    pub fn is_minimal(&self) -> bool {
        (1..self.gen_degrees.len()).all(|n| self.epsilon_matrix(n).iter().all(|row| row.iter().all(Scalar::is_zero)))
    }

    /// `d_{n-1} ∘ d_n = 0` on every generator.
    pub fn check_d_squared(&self) -> bool {
        (2..self.gen_degrees.len()).all(|n| self.diffs[n].iter().all(|v| self.apply(n - 1, v).is_empty()))
    }

    /// `ε(a_ij)` with rows indexed by generators of `P_n` and columns by `P_{n-1}`.
    pub fn epsilon_matrix(&self, n: usize) -> Vec<Vec<Scalar>> {
        let dim = self.algebra.dim();
        let aug = self.algebra.augmentation();
        let prev = self.gen_degrees[n - 1].len();
        self.diffs[n]
            .iter()
            .map(|v| {
                let mut row = vec![self.field().zero(); prev];
                for (idx, c) in v {
                    let e = &aug[idx % dim];
                    if !e.is_zero() {
                        row[idx / dim] = &row[idx / dim] + &(c * e);
                    }
                }
                row
            })
            .collect()
    }

    /// `b · v` for a basis element `b` and `v ∈ P_n`.
    pub fn left_mul_basis(&self, b: usize, v: &[(usize, Scalar)]) -> SVec {
        let dim = self.algebra.dim();
        sparse::collect(v.iter().flat_map(|(idx, c)| {
            let (j, k) = (idx / dim, idx % dim);
            self.algebra.product(b, k).iter().map(move |(k2, c2)| (j * dim + k2, c * c2))
        }))
    }

    /// `a · v` for `a ∈ A` in basis coordinates.
    pub fn left_mul(&self, a: &[(usize, Scalar)], v: &[(usize, Scalar)]) -> SVec {
        let mut out = SVec::new();
        for (b, c) in a {
            out = sparse::axpy(&out, c, &self.left_mul_basis(*b, v));
        }
        out
    }

    /// `d_n(v)` for `v ∈ P_n`, `n ≥ 1`.
    pub fn apply(&self, n: usize, v: &[(usize, Scalar)]) -> SVec {
        let dim = self.algebra.dim();
        let mut out = SVec::new();
        for (idx, c) in v {
            let (j, k) = (idx / dim, idx % dim);
            out = sparse::axpy(&out, c, &self.left_mul_basis(k, &self.diffs[n][j]));
        }
        out
    }

    /// Internal degree of a homogeneous element of `P_n`.
    pub fn degree_of(&self, n: usize, v: &[(usize, Scalar)]) -> Option<u32> {
        let dim = self.algebra.dim();
        v.first().map(|(idx, _)| self.gen_degrees[n][idx / dim] + algebra_degree(&self.algebra, idx % dim))
    }

    /// Some `x ∈ P_n` of internal degree `t` with `d_n(x) = y`.
    pub fn solve(&self, n: usize, t: u32, y: &[(usize, Scalar)]) -> Result<SVec> {
        if y.is_empty() {
            return Ok(SVec::new());
        }
        if n >= self.solvers.len() {
            return Err(Error::InsufficientDepth { have: self.solvers.len().saturating_sub(1), need: n });
        }
        let s = self.solvers[n]
            .get(&t)
            .ok_or_else(|| Error::Invalid(format!("no stage-{n} elements of internal degree {t}")))?;
        let coords = s
            .echelon
            .express(y)
            .ok_or_else(|| Error::Invalid(format!("element of stage {} is not a boundary", n.saturating_sub(1))))?;
        Ok(sparse::collect(coords.into_iter().map(|(i, c)| (s.domain[i], c))))
    }

    /// Basis elements `(j, k)` of `P_n` in internal degree `t`, as global indices.
    fn basis_in_degree(&self, n: usize, t: u32) -> Vec<usize> {
        let dim = self.algebra.dim();
        let mut out = Vec::new();
        for (j, &g) in self.gen_degrees[n].iter().enumerate() {
            if g > t {
                continue;
            }
            if let Some(ks) = self.by_degree.get(&(t - g)) {
                out.extend(ks.iter().map(|k| j * dim + k));
            }
        }
        out
    }

    fn degree_range(&self, n: usize) -> Vec<u32> {
        let mut ts: Vec<u32> = Vec::new();
        for &g in &self.gen_degrees[n] {
            for d in self.by_degree.keys() {
                ts.push(g + d);
            }
        }
        ts.sort_unstable();
        ts.dedup();
        ts
    }

    /// Builds the solver of `d_n` (of `ε` for `n = 0`) and returns the kernel per degree.
    fn build_solver(&mut self, n: usize) -> BTreeMap<u32, Vec<SVec>> {
        let dim = self.algebra.dim();
        let mut solvers = BTreeMap::new();
        let mut kernels = BTreeMap::new();
        let one = self.field().one();
        for t in self.degree_range(n) {
            let domain = self.basis_in_degree(n, t);
            let mut echelon = SparseEchelon::new(true);
            let mut ker = Vec::new();
            for (pos, &idx) in domain.iter().enumerate() {
                let (j, k) = (idx / dim, idx % dim);
                let image = if n == 0 {
                    let e = &self.algebra.augmentation()[k];
                    if e.is_zero() {
                        SVec::new()
                    } else {
                        vec![(0, e.clone())]
                    }
                } else {
                    self.left_mul_basis(k, &self.diffs[n][j])
                };
                if let Some(dep) = echelon.insert(&image) {
                    let rel = sparse::axpy(&[(pos, one.clone())], &-&one, &dep);
                    ker.push(sparse::collect(rel.into_iter().map(|(p, c)| (domain[p], c))));
                }
            }
            if !ker.is_empty() {
                kernels.insert(t, ker);
            }
            solvers.insert(t, Solver { echelon, domain });
        }
        self.solvers.push(solvers);
        kernels
    }

    /// Chooses generators of the kernel of `d_n`, lowest internal degree first.
    fn choose_generators(&mut self, kernels: &BTreeMap<u32, Vec<SVec>>) {
        let mut chosen: Vec<(u32, SVec)> = Vec::new();
        for (&t, vecs) in kernels {
            let mut span = SparseEchelon::new(false);
            for (s, v) in &chosen {
                if let Some(bs) = self.by_degree.get(&(t - s)) {
                    for &b in bs {
                        span.insert(&self.left_mul_basis(b, v));
                    }
                }
            }
            let base: Vec<usize> = self.by_degree.get(&0).cloned().unwrap_or_default();
            if base.len() > 1 && base.len() < self.algebra.dim() {
                // generic combinations reach every isotypic part of the top at once
                let mut pending: Vec<SVec> = vecs.clone();
                loop {
                    pending = pending.iter().map(|v| span.reduce(v)).filter(|v| !v.is_empty()).collect();
                    if pending.is_empty() {
                        break;
                    }
                    let mut v = SVec::new();
                    for (i, p) in pending.iter().enumerate() {
                        v = sparse::axpy(&v, &self.field().from_int(i as i64 + 1), p);
                    }
                    if v.is_empty() {
                        v = pending[0].clone();
                    }
                    for &b in &base {
                        span.insert(&self.left_mul_basis(b, &v));
                    }
                    chosen.push((t, v));
                }
            } else {
                for v in vecs {
                    if span.contains(v) {
                        continue;
                    }
                    for &b in &base {
                        span.insert(&self.left_mul_basis(b, v));
                    }
                    chosen.push((t, v.clone()));
                }
            }
        }
        self.gen_degrees.push(chosen.iter().map(|(t, _)| *t).collect());
        self.diffs.push(chosen.into_iter().map(|(_, v)| v).collect());
    }
}

pub(crate) fn algebra_degree(a: &FiniteAlgebra, i: usize) -> u32 {
    if a.is_graded() {
        a.degree(i)
    } else {
        0
    }
}

/// Minimal resolution of `k` over a finite-dimensional presented algebra.
pub fn minimal_resolution(a: &PresentedAlgebra, n: usize) -> Result<FreeResolution> {
    FreeResolution::from_presented(a, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::builders::{qls, quantum_line};

    #[test]
    fn truncated_polynomial_resolutions() {
        let f = Field::cyclotomic(2).unwrap();
        let a = quantum_line(&f, 2, &f.from_int(-1), 4).unwrap();
        let r = minimal_resolution(&a, 6).unwrap();
        assert_eq!(r.ranks(), vec![1; 7]);
        assert!(r.is_minimal() && r.is_exact() && r.check_d_squared());
        let x = a.presentation().parse("X").unwrap();
        for n in 1..=6 {
            assert_eq!(r.differential_entry(n, 0, 0), x);
        }
        let f = Field::cyclotomic(3).unwrap();
        let a = quantum_line(&f, 3, &f.zeta().unwrap(), 5).unwrap();
        let r = minimal_resolution(&a, 6).unwrap();
        assert_eq!(r.ranks(), vec![1; 7]);
        assert_eq!(r.generator_degrees(4), [6]);
        let x2 = a.presentation().parse("X^2").unwrap();
        assert_eq!(r.differential_entry(2, 0, 0), x2);
        assert_eq!(r.differential_entry(3, 0, 0), a.presentation().parse("X").unwrap());
    }

    #[test]
    fn exterior_plane_ranks() {
        let q = Field::rationals();
        let m1 = q.from_int(-1);
        let a = qls(&[vec![m1.clone(), m1.clone()], vec![m1.clone(), m1.clone()]], 4).unwrap();
        let r = minimal_resolution(&a, 5).unwrap();
        assert_eq!(r.ranks(), vec![1, 2, 3, 4, 5, 6]);
        assert!(r.is_minimal() && r.is_exact() && r.check_d_squared());
    }
}
