//! Quantum lines, quantum linear spaces, Jordan planes and the Cartan centrality test.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::ncalg::{groebner_truncated, NcPoly, PresentedAlgebra, Presentation};
use crate::scalar::{compute_big_n, Field, Scalar};
use crate::{Error, Result};

/// `k⟨X⟩/(Xⁿ)` with `X` in degree 1; `q` must have order `n`.
pub fn quantum_line(field: &Field, n: u32, q: &Scalar, cutoff: u32) -> Result<PresentedAlgebra> {
    if n < 2 {
        return Err(Error::Invalid(format!("quantum line needs n ≥ 2, got {n}")));
    }
    let big_n = compute_big_n(q, field.characteristic())?;
    if big_n != n as u64 {
        return Err(Error::Hypothesis { i: 1, j: 1, reason: format!("q = {q} gives N = {big_n}, not {n}") });
    }
    let mut p = Presentation::new(field, &[("X", 1)]);
    p.add_relation(NcPoly::var(field, 0).pow(n));
    groebner_truncated(&p, cutoff)
}

/// `k[X]`.
pub fn polynomial_line(field: &Field, name: &str, degree: u32, cutoff: u32) -> Result<PresentedAlgebra> {
    groebner_truncated(&Presentation::new(field, &[(name, degree)]), cutoff)
}

fn check_qls_matrix(q: &[Vec<Scalar>]) -> Result<Field> {
    let t = q.len();
    if t == 0 || q.iter().any(|r| r.len() != t) {
        return Err(Error::DimensionMismatch("q-matrix must be square and nonempty".into()));
    }
    let field = q[0][0].field().clone();
    for i in 0..t {
        for j in 0..t {
            if i != j && !(&q[i][j] * &q[j][i]).is_one() {
                return Err(Error::Hypothesis { i: i + 1, j: j + 1, reason: format!("q_ij q_ji = {} ≠ 1", &q[i][j] * &q[j][i]) });
            }
        }
    }
    Ok(field)
}

fn qls_presentation(q: &[Vec<Scalar>]) -> Result<Presentation> {
    let field = check_qls_matrix(q)?;
    let t = q.len();
    let names: Vec<String> = (1..=t).map(|i| format!("X{i}")).collect();
    let gens: Vec<(&str, u32)> = names.iter().map(|n| (n.as_str(), 1)).collect();
    let mut p = Presentation::new(&field, &gens);
    for i in 0..t {
        for j in i + 1..t {
            let xij = NcPoly::word(&field, vec![i as u32, j as u32]);
            let xji = NcPoly::word(&field, vec![j as u32, i as u32]).scale(&q[i][j]);
            p.add_relation(&xij - &xji);
        }
    }
    Ok(p)
}

/// `k_q[X₁,…,X_θ]` with relations `XᵢXⱼ − qᵢⱼXⱼXᵢ` for `i < j`.
pub fn quantum_affine_space(q: &[Vec<Scalar>], cutoff: u32) -> Result<PresentedAlgebra> {
    groebner_truncated(&qls_presentation(q)?, cutoff)
}

/// `N_i` for each diagonal entry.
pub fn qls_orders(q: &[Vec<Scalar>]) -> Result<Vec<u64>> {
    let field = check_qls_matrix(q)?;
    (0..q.len())
        .map(|i| {
            compute_big_n(&q[i][i], field.characteristic())
                .map_err(|e| Error::Hypothesis { i: i + 1, j: i + 1, reason: format!("{e}") })
        })
        .collect()
}

/// The quantum linear space `B(V_q)`: `k_q[X]` modulo `Xᵢ^{Nᵢ}`.
pub fn qls(q: &[Vec<Scalar>], cutoff: u32) -> Result<PresentedAlgebra> {
    let mut p = qls_presentation(q)?;
    for (i, n) in qls_orders(q)?.into_iter().enumerate() {
        let x = NcPoly::var(&p.field, i as u32).pow(n as u32);
        p.add_relation(x);
    }
    groebner_truncated(&p, cutoff)
}

/// `k⟨x, y⟩/(yx − xy + ½x²)`, plus `xᵖ`, `yᵖ` when restricted.
pub fn jordan_plane(field: &Field, restricted: bool, cutoff: u32) -> Result<PresentedAlgebra> {
    if field.characteristic() == 2 {
        return Err(Error::Unsupported("Jordan plane needs characteristic ≠ 2".into()));
    }
    let mut p = Presentation::new(field, &[("x", 1), ("y", 1)]);
    p.set_priority(&["y", "x"])?;
    p.add_relation_str("y*x - x*y + (1/2)*x^2")?;
    if restricted {
        let c = field.characteristic();
        if c == 0 {
            return Err(Error::Unsupported("restricted Jordan plane needs positive characteristic".into()));
        }
        p.add_relation_str(&format!("x^{c}"))?;
        p.add_relation_str(&format!("y^{c}"))?;
    }
    groebner_truncated(&p, cutoff)
}

/// One row `q_{αβ}^{N_β} = 1` of the Cartan centrality table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootPairCheck {
    pub alpha: usize,
    pub beta: usize,
    pub q_alpha_beta: Scalar,
    pub n_beta: u64,
    pub pass: bool,
}

/// One row `Mᵢ | Nᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityCheck {
    pub i: usize,
    pub m: u64,
    pub n: u64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanReport {
    pub pairs: Vec<RootPairCheck>,
    pub divisibility: Vec<DivisibilityCheck>,
}

impl CartanReport {
    pub fn pass(&self) -> bool {
        self.pairs.iter().all(|r| r.pass) && self.divisibility.iter().all(|r| r.pass)
    }
}

/// `q_{αβ} = Π q_ij^{a_i b_j}` for roots given by their coordinates in the simple roots.
pub fn root_bicharacter(q: &[Vec<Scalar>], a: &[u32], b: &[u32]) -> Scalar {
    let mut acc = q[0][0].field().one();
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            acc = &acc * &q[i][j].pow(ai as u64 * bj as u64);
        }
    }
    acc
}

fn order(x: &Scalar, i: usize, j: usize) -> Result<u64> {
    x.order_of_unity()?.ok_or_else(|| Error::Hypothesis { i: i + 1, j: j + 1, reason: format!("{x} is not a root of unity") })
}

/// Evaluates `q_{αβ}^{N_β} = 1` over all pairs of positive roots, and
/// `Mᵢ | Nᵢ` with `Mᵢ = lcm{ord qᵢⱼ : j ≠ i}`.
pub fn cartan_check(q: &[Vec<Scalar>], roots: &[Vec<u32>]) -> Result<CartanReport> {
    let t = q.len();
    if t == 0 || q.iter().any(|r| r.len() != t) {
        return Err(Error::DimensionMismatch("q-matrix must be square and nonempty".into()));
    }
    if let Some(r) = roots.iter().find(|r| r.len() != t) {
        return Err(Error::DimensionMismatch(format!("root {r:?} has the wrong rank")));
    }
    let ch = q[0][0].field().characteristic();
    let mut pairs = Vec::new();
    for (a, ra) in roots.iter().enumerate() {
        for (b, rb) in roots.iter().enumerate() {
            let qbb = root_bicharacter(q, rb, rb);
            let n_beta = compute_big_n(&qbb, ch).map_err(|e| Error::Hypothesis { i: b + 1, j: b + 1, reason: format!("{e}") })?;
            let qab = root_bicharacter(q, ra, rb);
            let pass = qab.pow(n_beta).is_one();
            pairs.push(RootPairCheck { alpha: a + 1, beta: b + 1, q_alpha_beta: qab, n_beta, pass });
        }
    }
    let mut divisibility = Vec::new();
    for i in 0..t {
        let mut m = 1u64;
        for j in 0..t {
            if j != i {
                m = m.lcm(&order(&q[i][j], i, j)?);
            }
        }
        let n = compute_big_n(&q[i][i], ch).map_err(|e| Error::Hypothesis { i: i + 1, j: i + 1, reason: format!("{e}") })?;
        divisibility.push(DivisibilityCheck { i: i + 1, m, n, pass: n % m == 0 });
    }
    Ok(CartanReport { pairs, divisibility })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_lines_have_dimension_n() {
        for n in 2..=5u32 {
            let f = Field::cyclotomic(n).unwrap();
            let a = quantum_line(&f, n, &f.zeta().unwrap(), n + 2).unwrap();
            assert_eq!(a.dimension(), Some(n as usize));
        }
        let f = Field::cyclotomic(4).unwrap();
        assert!(matches!(quantum_line(&f, 3, &f.zeta().unwrap(), 6), Err(Error::Hypothesis { .. })));
    }

    #[test]
    fn qls_dimension_and_hypothesis() {
        let f = Field::cyclotomic(3).unwrap();
        let z = f.zeta().unwrap();
        let m1 = f.from_int(-1);
        let a = qls(&[vec![m1.clone(), z.clone()], vec![z.inv().unwrap(), m1.clone()]], 8).unwrap();
        assert_eq!(a.dimension(), Some(4));
        let a = qls(&[vec![m1.clone(), f.one()], vec![f.one(), z.clone()]], 8).unwrap();
        assert_eq!(a.dimension(), Some(6));
        let bad = qls(&[vec![m1.clone(), z.clone()], vec![z.clone(), m1]], 8);
        assert!(matches!(bad, Err(Error::Hypothesis { i: 1, j: 2, .. })));
    }

    #[test]
    fn jordan_dimensions() {
        for p in [3u64, 5] {
            let f = Field::prime(p).unwrap();
            let a = jordan_plane(&f, true, 2 * p as u32).unwrap();
            assert_eq!(a.dimension(), Some((p * p) as usize));
        }
        assert!(jordan_plane(&Field::rationals(), true, 4).is_err());
    }

    #[test]
    fn cartan_rank_one_and_divisibility() {
        let f = Field::cyclotomic(4).unwrap();
        let r = cartan_check(&[vec![f.zeta().unwrap()]], &[vec![1]]).unwrap();
        assert!(r.pass());
        assert_eq!(r.pairs[0].n_beta, 4);
        assert_eq!(r.divisibility[0].m, 1);
        let g = Field::cyclotomic(6).unwrap();
        let z3 = g.zeta_pow(2).unwrap();
        let m1 = g.from_int(-1);
        let q = [vec![z3.clone(), m1.clone()], vec![m1.clone(), z3]];
        let r = cartan_check(&q, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert!(!r.pass());
        assert_eq!((r.divisibility[0].m, r.divisibility[0].n), (2, 3));
    }
}
