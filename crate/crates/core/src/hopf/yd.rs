//! YD-pairs and YD-triples over Hopf algebras given by structure constants.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::braided::BraidedVectorSpace;
use super::data::HopfAlgebraData;
use crate::scalar::Scalar;
use crate::{Error, Result};

/// A group-like basis element `g` and an algebra map `χ` (values on the basis).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YdPair {
    pub g: usize,
    pub chi: Vec<Scalar>,
}

/// A YD-pair with a `(χ, χ)`-derivation `η`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YdTriple {
    pub pair: YdPair,
    pub eta: Vec<Scalar>,
}

/// Outcome of a YD validation. `braiding_scalar` is `χ(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YdVerdict {
    pub valid: bool,
    pub reason: Option<String>,
    pub braiding_scalar: Scalar,
}

fn eval(k: &HopfAlgebraData, f: &[Scalar], v: &[Scalar]) -> Scalar {
    let mut acc = k.field().zero();
    for (a, b) in f.iter().zip(v) {
        if !a.is_zero() && !b.is_zero() {
            acc = &acc + &(a * b);
        }
    }
    acc
}

fn check_character(k: &HopfAlgebraData, chi: &[Scalar]) -> Result<()> {
    let n = k.dim();
    if chi.len() != n {
        return Err(Error::DimensionMismatch("character length".into()));
    }
    if !chi[k.unit()].is_one() {
        return Err(Error::NotMultiplicative(format!("χ(1) = {}", chi[k.unit()])));
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = eval(k, chi, k.basis_mul(i, j));
            if lhs != &chi[i] * &chi[j] {
                return Err(Error::NotMultiplicative(format!(
                    "χ({}·{}) ≠ χ({})χ({})",
                    k.labels()[i],
                    k.labels()[j],
                    k.labels()[i],
                    k.labels()[j]
                )));
            }
        }
    }
    Ok(())
}

/// First basis `h` with `f(h)·g ≠ Σ f(h₂) h₁ g S(h₃)`.
fn compatibility_failure(k: &HopfAlgebraData, g: usize, f: &[Scalar]) -> Option<usize> {
    let gv = k.basis(g);
    (0..k.dim()).find(|&h| {
        let lhs: Vec<Scalar> = gv.iter().map(|x| x * &f[h]).collect();
        let mut rhs = vec![k.field().zero(); k.dim()];
        for (c, a, b, d) in k.double_coproduct_terms(h) {
            let coef = &c * &f[b];
            if coef.is_zero() {
                continue;
            }
            let t = k.mul(&k.mul(&k.basis(a), &gv), k.basis_antipode(d));
            for (r, x) in rhs.iter_mut().zip(t) {
                *r = &*r + &(&coef * &x);
            }
        }
        lhs != rhs
    })
}

/// Checks `χ(h) g = Σ χ(h₂) h₁ g S(h₃)` on every basis element.
pub fn validate_yd_pair(k: &HopfAlgebraData, g: usize, chi: &[Scalar]) -> Result<YdVerdict> {
    if g >= k.dim() || !k.is_grouplike(g) {
        return Err(Error::NotGroupLike(k.labels().get(g).cloned().unwrap_or_else(|| format!("#{g}"))));
    }
    check_character(k, chi)?;
    let bad = compatibility_failure(k, g, chi);
    Ok(YdVerdict {
        valid: bad.is_none(),
        reason: bad.map(|h| format!("compatibility fails at h = {}", k.labels()[h])),
        braiding_scalar: chi[g].clone(),
    })
}

/// Checks the pair, that `η` is a `(χ,χ)`-derivation, the `η`-compatibility,
/// and `χ(g) = η(g) = 1`.
pub fn validate_yd_triple(k: &HopfAlgebraData, g: usize, chi: &[Scalar], eta: &[Scalar]) -> Result<YdVerdict> {
    let pair = validate_yd_pair(k, g, chi)?;
    if !pair.valid {
        return Ok(pair);
    }
    if eta.len() != k.dim() {
        return Err(Error::DimensionMismatch("derivation length".into()));
    }
    let fail = |reason: String| Ok(YdVerdict { valid: false, reason: Some(reason), braiding_scalar: chi[g].clone() });
    let n = k.dim();
    for i in 0..n {
        for j in 0..n {
            let lhs = eval(k, eta, k.basis_mul(i, j));
            let rhs = &(&chi[i] * &eta[j]) + &(&eta[i] * &chi[j]);
            if lhs != rhs {
                return fail(format!(
                    "η is not a (χ,χ)-derivation at ({}, {})",
                    k.labels()[i],
                    k.labels()[j]
                ));
            }
        }
    }
    if let Some(h) = compatibility_failure(k, g, eta) {
        return fail(format!("η-compatibility fails at h = {}", k.labels()[h]));
    }
    if !chi[g].is_one() {
        return fail(format!("χ(g) = {} ≠ 1", chi[g]));
    }
    if !eta[g].is_one() {
        return fail(format!("η(g) = {} ≠ 1", eta[g]));
    }
    Ok(YdVerdict { valid: true, reason: None, braiding_scalar: chi[g].clone() })
}

/// The diagonal braiding `q_ij = χ_j(g_i)` realized by a family of YD-pairs.
pub fn braiding_from_yd_pairs(pairs: &[YdPair]) -> Result<BraidedVectorSpace> {
    let q: Vec<Vec<Scalar>> =
        pairs.iter().map(|pi| pairs.iter().map(|pj| pj.chi[pi.g].clone()).collect()).collect();
    BraidedVectorSpace::diagonal(&q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::data::{cyclic_group, sweedler, symmetric_group_s3};
    use crate::scalar::Field;

    #[test]
    fn abelian_pairs_are_valid() {
        let f = Field::cyclotomic(3).unwrap();
        let k = cyclic_group(&f, 3).unwrap();
        let z = f.zeta().unwrap();
        let chi: Vec<Scalar> = (0..3).map(|i| z.pow(i)).collect();
        let v = validate_yd_pair(&k, 1, &chi).unwrap();
        assert!(v.valid);
        assert_eq!(v.braiding_scalar, z);
    }

    #[test]
    fn sweedler_pair() {
        let q = Field::rationals();
        let k = sweedler(&q).unwrap();
        let (g, x, gx) = (k.index_of("g").unwrap(), k.index_of("x").unwrap(), k.index_of("gx").unwrap());
        let mut chi = vec![q.zero(); 4];
        chi[k.unit()] = q.one();
        chi[g] = q.from_int(-1);
        chi[x] = q.zero();
        chi[gx] = q.zero();
        let v = validate_yd_pair(&k, g, &chi).unwrap();
        assert!(v.valid);
        assert_eq!(v.braiding_scalar, q.from_int(-1));
        assert!(matches!(validate_yd_pair(&k, x, &chi), Err(Error::NotGroupLike(_))));
    }

    #[test]
    fn s3_transposition_with_sign_fails() {
        let q = Field::rationals();
        let k = symmetric_group_s3(&q).unwrap();
        let sign: Vec<Scalar> = [1, -1, -1, -1, 1, 1].iter().map(|&s| q.from_int(s)).collect();
        let v = validate_yd_pair(&k, 1, &sign).unwrap();
        assert!(!v.valid);
        let bad_chi: Vec<Scalar> = [1, 2, 1, 1, 1, 1].iter().map(|&s| q.from_int(s)).collect();
        assert!(matches!(validate_yd_pair(&k, 1, &bad_chi), Err(Error::NotMultiplicative(_))));
    }

    #[test]
    fn jordan_triple() {
        let f = Field::prime(3).unwrap();
        let k = cyclic_group(&f, 3).unwrap();
        let eps = vec![f.one(); 3];
        let eta: Vec<Scalar> = (0..3).map(|i| f.from_int(i)).collect();
        assert!(validate_yd_triple(&k, 1, &eps, &eta).unwrap().valid);
        let sq: Vec<Scalar> = (0..3).map(|i| f.from_int(i * i)).collect();
        assert!(!validate_yd_triple(&k, 1, &eps, &sq).unwrap().valid);
        let zero = vec![f.zero(); 3];
        let v = validate_yd_triple(&k, 1, &eps, &zero).unwrap();
        assert!(!v.valid);
        assert!(v.reason.unwrap().contains("η(g)"));
    }

    #[test]
    fn rebuilt_braiding_matches() {
        let f = Field::cyclotomic(4).unwrap();
        let k = crate::hopf::data::abelian_group(&f, &[4, 4], &["a", "b"]).unwrap();
        let i = f.zeta().unwrap();
        // χ_1(a^s b^t) = i^s, χ_2(a^s b^t) = (-1)^t
        let chi1: Vec<Scalar> = (0..16).map(|t| i.pow((t / 4) as u64)).collect();
        let chi2: Vec<Scalar> = (0..16).map(|t| f.from_int(-1).pow((t % 4) as u64)).collect();
        let a = k.index_of("a").unwrap();
        let b = k.index_of("b").unwrap();
        let pairs = [YdPair { g: a, chi: chi1 }, YdPair { g: b, chi: chi2 }];
        for p in &pairs {
            assert!(validate_yd_pair(&k, p.g, &p.chi).unwrap().valid);
        }
        let v = braiding_from_yd_pairs(&pairs).unwrap();
        let want = vec![vec![i.clone(), f.one()], vec![f.one(), f.from_int(-1)]];
        assert_eq!(v.kind(), &super::super::braided::BraidingKind::Diagonal(want));
    }
}
