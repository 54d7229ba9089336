//! The named example families: quantum lines, quantum linear spaces, Jordan
//! planes, Taft algebras, their deformation sequences, Laurent Hopf sequences,
//! compatible actions and the negative controls.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::defseq::{AlgebraMapSpec, DeformationSequence, HopfDefSequence, SequenceActions};
use crate::hopf::action::{ActionSpec, HopfAction};
use crate::hopf::builders::{jordan_plane, polynomial_line, qls, qls_orders, quantum_affine_space, quantum_line};
use crate::hopf::presented::HopfPresentation;
use crate::hopf::smash::{smash_from_action, SmashProductAlgebra};
use crate::ncalg::{groebner_truncated, NcPoly, PresentedAlgebra, Presentation};
use crate::scalar::{Field, Scalar};
use crate::{Error, Result};

/// `k[Y₁,…]` with the given generator names and degrees.
pub fn commutative_polynomial(field: &Field, gens: &[(&str, u32)], cutoff: u32) -> Result<PresentedAlgebra> {
    let mut p = Presentation::new(field, gens);
    for i in 0..gens.len() as u32 {
        for j in i + 1..gens.len() as u32 {
            let ij = NcPoly::word(field, vec![i, j]);
            let ji = NcPoly::word(field, vec![j, i]);
            p.add_relation(&ij - &ji);
        }
    }
    groebner_truncated(&p, cutoff)
}

/// `ζⁿ` in `Q(ζ_m)` for the field's own `m`, as the default `q` of order `n`.
pub fn root_of_order(field: &Field, n: u32) -> Result<Scalar> {
    match n {
        1 => return Ok(field.one()),
        2 if field.characteristic() != 2 => return Ok(field.from_int(-1)),
        _ => {}
    }
    let m = field.unit_exponent();
    if !m.is_multiple_of(n as u64) {
        return Err(Error::Invalid(format!("{field} has no root of unity of order {n}")));
    }
    field.zeta_pow((m / n as u64) as i64)
}

/// `k[Y] ↪ k[X] ↠ k[X]/(Xⁿ)`, `Y ↦ Xⁿ`, with `Y` in degree `n`.
pub fn qline_seq(field: &Field, n: u32, q: &Scalar, d: u32) -> Result<DeformationSequence> {
    let z = polynomial_line(field, "Y", n, d)?;
    let q_alg = polynomial_line(field, "X", 1, d)?;
    let r = quantum_line(field, n, q, d)?;
    let iota = AlgebraMapSpec::parse(&z, &q_alg, &[("Y", &format!("X^{n}"))])?;
    let pi = AlgebraMapSpec::by_name(&q_alg, &r)?;
    DeformationSequence::new(z, q_alg, r, iota, pi)
}

/// As [`qline_seq`] but with `π` onto `k[X]/(Xᵐ)`: the kernel is too large when `m < n`.
pub fn qline_seq_corrupted(field: &Field, n: u32, m: u32, d: u32) -> Result<DeformationSequence> {
    let z = polynomial_line(field, "Y", n, d)?;
    let q_alg = polynomial_line(field, "X", 1, d)?;
    let mut p = Presentation::new(field, &[("X", 1)]);
    p.add_relation(NcPoly::var(field, 0).pow(m));
    let r = groebner_truncated(&p, d)?;
    let iota = AlgebraMapSpec::parse(&z, &q_alg, &[("Y", &format!("X^{n}"))])?;
    let pi = AlgebraMapSpec::by_name(&q_alg, &r)?;
    DeformationSequence::new(z, q_alg, r, iota, pi)
}

/// `k[Y₁,…,Y_θ] ↪ k_q[X₁,…,X_θ] ↠ B(V_q)`, `Yᵢ ↦ Xᵢ^{Nᵢ}`.
pub fn qls_seq(q: &[Vec<Scalar>], d: u32) -> Result<DeformationSequence> {
    let field = q[0][0].field().clone();
    let orders = qls_orders(q)?;
    let names: Vec<String> = (1..=q.len()).map(|i| format!("Y{i}")).collect();
    let gens: Vec<(&str, u32)> = names.iter().zip(&orders).map(|(n, &o)| (n.as_str(), o as u32)).collect();
    let z = commutative_polynomial(&field, &gens, d)?;
    let q_alg = quantum_affine_space(q, d)?;
    let r = qls(q, d)?;
    let images = orders
        .iter()
        .enumerate()
        .map(|(i, &o)| NcPoly::var(&field, i as u32).pow(o as u32))
        .collect();
    let pi = AlgebraMapSpec::by_name(&q_alg, &r)?;
    DeformationSequence::new(z, q_alg, r, AlgebraMapSpec::new(images), pi)
}

/// θ = 2, all `qᵢⱼ = −1`, over `Q`: `Mᵢ = Nᵢ = 2`.
pub fn qls_passing_matrix() -> Vec<Vec<Scalar>> {
    let f = Field::rationals();
    let m1 = f.from_int(-1);
    vec![vec![m1.clone(), m1.clone()], vec![m1.clone(), m1]]
}

/// θ = 2, `qᵢᵢ = ζ₃`, `q₁₂ = q₂₁ = −1` over `Q(ζ₆)`: `Mᵢ = 2` does not divide `Nᵢ = 3`.
pub fn qls_bad_matrix() -> Result<Vec<Vec<Scalar>>> {
    let f = Field::cyclotomic(6)?;
    let z3 = f.zeta_pow(2)?;
    let m1 = f.from_int(-1);
    Ok(vec![vec![z3.clone(), m1.clone()], vec![m1, z3]])
}

/// `k[u, v] ↪ J ↠ B(V(1,2))` over `F_p`, `u ↦ xᵖ`, `v ↦ yᵖ`.
pub fn jordan_seq(p: u64, d: u32) -> Result<DeformationSequence> {
    let field = Field::prime(p)?;
    let deg = p as u32;
    let z = commutative_polynomial(&field, &[("u", deg), ("v", deg)], d)?;
    let j = jordan_plane(&field, false, d)?;
    let r = jordan_plane(&field, true, d)?;
    let iota = AlgebraMapSpec::parse(&z, &j, &[("u", &format!("x^{p}")), ("v", &format!("y^{p}"))])?;
    let pi = AlgebraMapSpec::by_name(&j, &r)?;
    DeformationSequence::new(z, j, r, iota, pi)
}

/// `k[h, h⁻¹] ↪ k[g, g⁻¹] ↠ kZ_n` with `h ↦ gⁿ`.
pub fn laurent_seq(field: &Field, n: u32, d: u32) -> Result<HopfDefSequence> {
    let w = HopfPresentation::laurent(field, "h", "H", d)?;
    let h = HopfPresentation::laurent(field, "g", "G", d)?;
    let k = HopfPresentation::cyclic(field, n, "g", "G", d)?;
    let j = AlgebraMapSpec::parse(w.algebra(), h.algebra(), &[("h", &format!("g^{n}")), ("H", &format!("G^{n}"))])?;
    let p = AlgebraMapSpec::by_name(h.algebra(), k.algebra())?;
    HopfDefSequence::new(w, h, k, j, p)
}

/// As [`laurent_seq`] but `℘` lands in `kZ_m`, `m` a proper divisor of `n`: the kernel is too large.
pub fn laurent_seq_corrupted(field: &Field, n: u32, m: u32, d: u32) -> Result<HopfDefSequence> {
    let w = HopfPresentation::laurent(field, "h", "H", d)?;
    let h = HopfPresentation::laurent(field, "g", "G", d)?;
    let k = HopfPresentation::cyclic(field, m, "g", "G", d)?;
    let j = AlgebraMapSpec::parse(w.algebra(), h.algebra(), &[("h", &format!("g^{n}")), ("H", &format!("G^{n}"))])?;
    let p = AlgebraMapSpec::by_name(h.algebra(), k.algebra())?;
    HopfDefSequence::new(w, h, k, j, p)
}

/// `k ↪ kZ_n ↠ kZ_n`.
pub fn trivial_hopf_seq(field: &Field, n: u32, d: u32) -> Result<HopfDefSequence> {
    let w = HopfPresentation::trivial(field);
    let k = HopfPresentation::cyclic(field, n, "g", "G", d)?;
    let p = AlgebraMapSpec::by_name(k.algebra(), k.algebra())?;
    HopfDefSequence::new(w, k.clone(), k, AlgebraMapSpec::new(Vec::new()), p)
}

fn diagonal_spec(a: &PresentedAlgebra, scalars: &[Scalar]) -> Result<ActionSpec> {
    let mut spec = ActionSpec::default();
    let field = a.field();
    for (letter, inverse) in [(0u32, false), (1u32, true)] {
        let row = scalars
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let c = if inverse { c.inv()? } else { c.clone() };
                Ok(NcPoly::var(field, i as u32).scale(&c))
            })
            .collect::<Result<Vec<_>>>()?;
        spec.entries.insert(letter, row);
    }
    Ok(spec)
}

/// `g·X = qX` on `k[X]` and its quotient, `g·Y = qⁿY` on `k[Y]`, for the Laurent group algebra.
pub fn qline_actions(s: &DeformationSequence, c: &HopfDefSequence, q: &Scalar, n: u32) -> Result<SequenceActions> {
    let h = &c.h;
    let z = diagonal_spec(&s.z, &[q.pow(n as u64)])?;
    let x = diagonal_spec(&s.q, core::slice::from_ref(q))?;
    let r = diagonal_spec(&s.r, core::slice::from_ref(q))?;
    SequenceActions::new(h, s, &z, &x, &r)
}

/// `K`-actions on the quantum-line sequence by the cyclic or Laurent group
/// algebra `k`, with `g·X = q'X` and trivial action on `Z`.
pub fn qline_k_actions(s: &DeformationSequence, k: &HopfPresentation, q_prime: &Scalar) -> Result<SequenceActions> {
    let x = diagonal_spec(&s.q, core::slice::from_ref(q_prime))?;
    let r = diagonal_spec(&s.r, core::slice::from_ref(q_prime))?;
    SequenceActions::new(k, s, &ActionSpec::trivial(), &x, &r)
}

/// `g·X = qX` on `Q` but `g·X = q²X` on `R`, so `π` is not `K`-linear.
pub fn qline_broken_pi_actions(s: &DeformationSequence, k: &HopfPresentation, q: &Scalar) -> Result<SequenceActions> {
    let x = diagonal_spec(&s.q, core::slice::from_ref(q))?;
    let r = diagonal_spec(&s.r, &[q * q])?;
    SequenceActions::new(k, s, &ActionSpec::trivial(), &x, &r)
}

/// `g·x = x`, `g·y = y + x` on the Jordan planes, trivial on `Z`.
pub fn jordan_actions(s: &DeformationSequence, c: &HopfDefSequence) -> Result<SequenceActions> {
    let h = &c.h;
    let on = |a: &PresentedAlgebra| ActionSpec::parse(h, a, &[("g", &[("x", "x"), ("y", "y + x")]), ("G", &[("x", "x"), ("y", "y - x")])]);
    SequenceActions::new(h, s, &ActionSpec::trivial(), &on(&s.q)?, &on(&s.r)?)
}

/// `k⟨g, X⟩/(gⁿ − 1, Xⁿ, gX − qXg)` with `X` in degree 1 and `g` in degree 0.
pub fn taft_presentation(field: &Field, n: u32, q: &Scalar, d: u32) -> Result<PresentedAlgebra> {
    let mut p = Presentation::new(field, &[("g", 0), ("X", 1)]);
    p.augmentation = vec![field.one(), field.zero()];
    let g = NcPoly::var(field, 0);
    let x = NcPoly::var(field, 1);
    p.add_relation(&g.pow(n) - &NcPoly::one(field));
    p.add_relation(x.pow(n));
    p.add_relation(&(&g * &x) - &(&x * &g).scale(q));
    groebner_truncated(&p, d.max(n + 1))
}

/// The Taft algebra as the smash product of the quantum line by `kZ_n`, `g·X = qX`.
pub fn taft_smash(field: &Field, n: u32, q: &Scalar, d: u32) -> Result<SmashProductAlgebra> {
    let k = HopfPresentation::cyclic(field, n, "g", "G", d)?;
    let r = quantum_line(field, n, q, d)?;
    let spec = diagonal_spec(&r, core::slice::from_ref(q))?;
    smash_from_action(&HopfAction::new(&k, &r, &spec)?, d.max(2 * n))
}

/// Names understood by [`crate::builtin`] consumers.
pub const NAMES: &[&str] = &[
    "quantum-line",
    "qls",
    "qls-bad",
    "cartan-check",
    "jordan",
    "taft",
    "sweedler",
    "qline-seq",
    "qline-seq-corrupted",
    "qls-seq",
    "jordan-seq",
    "laurent-seq",
    "laurent-p-seq",
    "laurent-seq-corrupted",
    "trivial-hopf-seq",
    "broken-equivariance",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defseq::{check_c_equivariant, check_deformation_sequence, check_hopf_def_sequence, check_k_equivariant, smash_sequences, Status};

    #[test]
    fn qls_sequences() {
        let rep = check_deformation_sequence(&qls_seq(&qls_passing_matrix(), 12).unwrap(), 12).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let rep = check_deformation_sequence(&qls_seq(&qls_bad_matrix().unwrap(), 12).unwrap(), 12).unwrap();
        let f = rep.entry("(f)").unwrap();
        let Status::Failed(w) = &f.status else { panic!("{f:?}") };
        assert!(w.detail.ends_with("does not commute with X2"), "{}", w.detail);
    }

    #[test]
    fn jordan_sequence_passes() {
        let rep = check_deformation_sequence(&jordan_seq(3, 12).unwrap(), 12).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn laurent_hopf_sequence() {
        let f = Field::rationals();
        let rep = check_hopf_def_sequence(&laurent_seq(&f, 3, 12).unwrap(), 12).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let rep = check_hopf_def_sequence(&laurent_seq_corrupted(&f, 3, 1, 12).unwrap(), 12).unwrap();
        assert!(rep.entry("(c)").unwrap().status.is_failed(), "{rep:?}");
    }

    #[test]
    fn trivial_hopf_sequence_depends_on_characteristic() {
        let rep = check_hopf_def_sequence(&trivial_hopf_seq(&Field::prime(3).unwrap(), 3, 6).unwrap(), 6).unwrap();
        assert_eq!(rep.failures().iter().map(|e| e.label.as_str()).collect::<Vec<_>>(), ["(h)"]);
        let rep = check_hopf_def_sequence(&trivial_hopf_seq(&Field::cyclotomic(3).unwrap(), 3, 6).unwrap(), 6).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn broken_equivariance() {
        let f = Field::cyclotomic(6).unwrap();
        let s = qline_seq(&f, 3, &f.zeta_pow(2).unwrap(), 12).unwrap();
        let k = HopfPresentation::laurent(&f, "g", "G", 12).unwrap();
        let good = qline_k_actions(&s, &k, &f.zeta_pow(2).unwrap()).unwrap();
        assert!(check_k_equivariant(&s, &good, 12).unwrap().passed());
        let bad = qline_k_actions(&s, &k, &f.zeta().unwrap()).unwrap();
        let rep = check_k_equivariant(&s, &bad, 12).unwrap();
        let e = rep.entry("K-linear ι").unwrap();
        let Status::Failed(w) = &e.status else { panic!("{e:?}") };
        assert_eq!(w.rendered.as_deref(), Some("2*X^3"));
        let q = f.zeta_pow(2).unwrap();
        let rep = check_k_equivariant(&s, &qline_broken_pi_actions(&s, &k, &q).unwrap(), 12).unwrap();
        assert_eq!(rep.failures().iter().map(|e| e.label.as_str()).collect::<Vec<_>>(), ["K-linear π"]);
    }

    #[test]
    fn smash_pipeline_gives_taft() {
        let f = Field::cyclotomic(3).unwrap();
        let q = f.zeta().unwrap();
        let m = qline_seq(&f, 3, &q, 12).unwrap();
        let c = laurent_seq(&f, 3, 12).unwrap();
        let act = qline_actions(&m, &c, &q, 3).unwrap();
        assert!(check_c_equivariant(&m, &c, &act, 12).unwrap().passed());
        let out = smash_sequences(&m, &c, &act, 12).unwrap();
        assert_eq!(out.r.dimension(), Some(9));
        let rep = check_deformation_sequence(&out, 12).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let taft = taft_presentation(&f, 3, &q, 12).unwrap();
        let map = AlgebraMapSpec::by_name(&taft, &out.r).unwrap();
        assert!(map.is_isomorphism(&taft, &out.r).unwrap());
    }

    #[test]
    fn q_of_order_2n_breaks_w_triviality() {
        let f = Field::cyclotomic(6).unwrap();
        let m = qline_seq(&f, 3, &f.zeta_pow(2).unwrap(), 12).unwrap();
        let c = laurent_seq(&f, 3, 12).unwrap();
        let act = qline_actions(&m, &c, &f.zeta().unwrap(), 3).unwrap();
        let rep = check_c_equivariant(&m, &c, &act, 12).unwrap();
        assert!(rep.entry("(k)").unwrap().status.is_failed());
        assert!(matches!(smash_sequences(&m, &c, &act, 12), Err(Error::Precondition(_))));
    }
}
