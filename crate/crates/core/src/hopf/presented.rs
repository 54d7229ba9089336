//! Hopf algebras given by a presentation with `Δ`, `ε`, `S` on generators.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::data::HopfAlgebraData;
use crate::ncalg::{groebner_truncated, NcPoly, PresentedAlgebra, Presentation, Word};
use crate::scalar::{Field, Scalar};
use crate::{Error, Result};

/// `Σ c · u ⊗ v`.
pub type TensorTerms = Vec<(Scalar, Word, Word)>;

/// Element of `A ⊗ B` keyed by word pairs.
pub type Tensor = BTreeMap<(Word, Word), Scalar>;

pub(crate) fn tensor_add(t: &mut Tensor, key: (Word, Word), c: Scalar) {
    if c.is_zero() {
        return;
    }
    match t.get_mut(&key) {
        Some(old) => {
            let s = &*old + &c;
            if s.is_zero() {
                t.remove(&key);
            } else {
                *old = s;
            }
        }
        None => {
            t.insert(key, c);
        }
    }
}

pub(crate) fn tensor_mul(a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for ((u1, v1), x) in a {
        for ((u2, v2), y) in b {
            let mut u = u1.clone();
            u.extend_from_slice(u2);
            let mut v = v1.clone();
            v.extend_from_slice(v2);
            tensor_add(&mut out, (u, v), x * y);
        }
    }
    out
}

/// Reduces both tensor factors to normal form.
pub fn tensor_normal_form(a: &PresentedAlgebra, b: &PresentedAlgebra, t: &Tensor) -> Result<Tensor> {
    let mut out = Tensor::new();
    let mut cache_a: BTreeMap<Word, NcPoly> = BTreeMap::new();
    let mut cache_b: BTreeMap<Word, NcPoly> = BTreeMap::new();
    for ((u, v), c) in t {
        if !cache_a.contains_key(u) {
            cache_a.insert(u.clone(), a.normal_form(&NcPoly::word(a.field(), u.clone()))?);
        }
        if !cache_b.contains_key(v) {
            cache_b.insert(v.clone(), b.normal_form(&NcPoly::word(b.field(), v.clone()))?);
        }
        for (uu, x) in cache_a[u].terms() {
            for (vv, y) in cache_b[v].terms() {
                tensor_add(&mut out, (uu.clone(), vv.clone()), &(c * x) * y);
            }
        }
    }
    Ok(out)
}

/// A presented Hopf algebra. The counit is the presentation's augmentation.
#[derive(Clone, Debug)]
pub struct HopfPresentation {
    algebra: PresentedAlgebra,
    coproduct: Vec<TensorTerms>,
    antipode: Vec<NcPoly>,
}

/// Turns a basis label into an identifier usable in the expression grammar.
pub fn letter_name(label: &str) -> String {
    let mut s: String =
        label.chars().filter(|c| *c != '^').map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    if s.starts_with(|c: char| c.is_ascii_digit()) {
        s.insert(0, 'b');
    }
    s
}

impl HopfPresentation {
    pub fn new(algebra: PresentedAlgebra, coproduct: Vec<TensorTerms>, antipode: Vec<NcPoly>) -> Result<Self> {
        let n = algebra.num_generators();
        if coproduct.len() != n || antipode.len() != n {
            return Err(Error::DimensionMismatch("coproduct/antipode per generator".into()));
        }
        Ok(HopfPresentation { algebra, coproduct, antipode })
    }

    /// Letters are the non-unit basis elements; products follow the table.
    pub fn from_data(data: &HopfAlgebraData) -> Result<HopfPresentation> {
        let field = data.field().clone();
        let n = data.dim();
        let unit = data.unit();
        let others: Vec<usize> = (0..n).filter(|&i| i != unit).collect();
        let letter_of = |i: usize| -> Option<u32> { others.iter().position(|&j| j == i).map(|p| p as u32) };
        let names: Vec<String> = others.iter().map(|&i| letter_name(&data.labels()[i])).collect();
        let gens: Vec<(&str, u32)> = names.iter().map(|s| (s.as_str(), 0)).collect();
        let mut p = Presentation::new(&field, &gens);
        p.augmentation = others.iter().map(|&i| data.basis_counit(i).clone()).collect();
        let as_poly = |v: &[Scalar]| -> NcPoly {
            let mut f = NcPoly::zero(&field);
            for (k, c) in v.iter().enumerate() {
                let w = letter_of(k).map(|l| vec![l]).unwrap_or_default();
                f.add_term(w, c.clone());
            }
            f
        };
        for (a, &i) in others.iter().enumerate() {
            for (b, &j) in others.iter().enumerate() {
                let lhs = NcPoly::word(&field, vec![a as u32, b as u32]);
                p.relations.push(&lhs - &as_poly(data.basis_mul(i, j)));
            }
        }
        let algebra = groebner_truncated(&p, 3)?;
        let coproduct = others
            .iter()
            .map(|&i| {
                data.coproduct_terms(i)
                    .into_iter()
                    .map(|(c, j, k)| {
                        let u = letter_of(j).map(|l| vec![l]).unwrap_or_default();
                        let v = letter_of(k).map(|l| vec![l]).unwrap_or_default();
                        (c, u, v)
                    })
                    .collect()
            })
            .collect();
        let antipode = others.iter().map(|&i| as_poly(data.basis_antipode(i))).collect();
        HopfPresentation::new(algebra, coproduct, antipode)
    }

    /// `k[g, g⁻¹]` with `g` and `G = g⁻¹` group-like.
    pub fn laurent(field: &Field, g: &str, ginv: &str, cutoff: u32) -> Result<HopfPresentation> {
        let mut p = Presentation::new(field, &[(g, 0), (ginv, 0)]);
        p.augmentation = vec![field.one(), field.one()];
        p.add_relation_str(&format!("{g}*{ginv} - 1"))?;
        p.add_relation_str(&format!("{ginv}*{g} - 1"))?;
        let algebra = groebner_truncated(&p, cutoff.max(2))?;
        let coproduct = vec![vec![(field.one(), vec![0], vec![0])], vec![(field.one(), vec![1], vec![1])]];
        let antipode = vec![NcPoly::var(field, 1), NcPoly::var(field, 0)];
        HopfPresentation::new(algebra, coproduct, antipode)
    }

    /// `kZ_n` as the quotient of `k[g, g⁻¹]` by `gⁿ − 1`.
    pub fn cyclic(field: &Field, n: u32, g: &str, ginv: &str, cutoff: u32) -> Result<HopfPresentation> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut p = Presentation::new(field, &[(g, 0), (ginv, 0)]);
        p.augmentation = vec![field.one(), field.one()];
        p.add_relation_str(&format!("{g}*{ginv} - 1"))?;
        p.add_relation_str(&format!("{ginv}*{g} - 1"))?;
        p.add_relation_str(&format!("{g}^{n} - 1"))?;
        let algebra = groebner_truncated(&p, cutoff.max(n + 1))?;
        let coproduct = vec![vec![(field.one(), vec![0], vec![0])], vec![(field.one(), vec![1], vec![1])]];
        let antipode = vec![NcPoly::var(field, 1), NcPoly::var(field, 0)];
        HopfPresentation::new(algebra, coproduct, antipode)
    }

    /// The one-dimensional Hopf algebra `k`.
    pub fn trivial(field: &Field) -> HopfPresentation {
        let algebra = groebner_truncated(&Presentation::new(field, &[]), 1).expect("free algebra on no letters");
        HopfPresentation { algebra, coproduct: Vec::new(), antipode: Vec::new() }
    }

    pub fn algebra(&self) -> &PresentedAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> &Field {
        self.algebra.field()
    }

    pub fn names(&self) -> Vec<String> {
        self.algebra.names()
    }

    pub fn num_generators(&self) -> usize {
        self.algebra.num_generators()
    }

    pub fn coproduct_gen(&self, i: u32) -> &TensorTerms {
        &self.coproduct[i as usize]
    }

    pub fn antipode_gen(&self, i: u32) -> &NcPoly {
        &self.antipode[i as usize]
    }

    pub fn counit(&self, f: &NcPoly) -> Scalar {
        self.algebra.presentation().augment(f)
    }

    pub fn is_grouplike_gen(&self, i: u32) -> bool {
        let d = &self.coproduct[i as usize];
        d.len() == 1 && d[0].0.is_one() && d[0].1 == [i] && d[0].2 == [i]
    }

    /// `Δ(f)` in normal form.
    pub fn coproduct(&self, f: &NcPoly) -> Result<Tensor> {
        let t = self.coproduct_free(f);
        tensor_normal_form(&self.algebra, &self.algebra, &t)
    }

    /// `Δ` extended multiplicatively on the free algebra.
    pub fn coproduct_free(&self, f: &NcPoly) -> Tensor {
        let mut out = Tensor::new();
        let one = self.field().one();
        for (w, c) in f.terms() {
            let mut t = Tensor::new();
            t.insert((Word::new(), Word::new()), c.clone());
            for &g in w {
                let d: Tensor = self.coproduct[g as usize].iter().map(|(c, u, v)| ((u.clone(), v.clone()), c.clone())).collect();
                t = tensor_mul(&t, &d);
            }
            for (k, v) in t {
                tensor_add(&mut out, k, &v * &one);
            }
        }
        out
    }

    /// `S` extended anti-multiplicatively on the free algebra.
    pub fn antipode_free(&self, f: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero(self.field());
        for (w, c) in f.terms() {
            let mut t = NcPoly::constant(c.clone());
            for &g in w.iter().rev() {
                t = &t * &self.antipode[g as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Checks that `Δ`, `ε`, `S` respect the relations and that the antipode
    /// and counit laws hold on generators. Returns a description of the first failure.
    pub fn check_generators(&self) -> Result<Option<String>> {
        let names = self.names();
        let p = self.algebra.presentation();
        for r in &p.relations {
            if !self.coproduct(r)?.is_empty() {
                return Ok(Some(format!("Δ does not preserve relation {}", r.fmt_with(&names))));
            }
            if !self.algebra.normal_form(&self.antipode_free(r))?.is_zero() {
                return Ok(Some(format!("S does not preserve relation {}", r.fmt_with(&names))));
            }
        }
        let field = self.field();
        for g in 0..self.num_generators() as u32 {
            let eps = &p.augmentation[g as usize];
            let mut left = NcPoly::zero(field);
            let mut right = NcPoly::zero(field);
            let mut cl = NcPoly::zero(field);
            let mut cr = NcPoly::zero(field);
            for (c, u, v) in &self.coproduct[g as usize] {
                let (pu, pv) = (NcPoly::word(field, u.clone()), NcPoly::word(field, v.clone()));
                left = &left + &(&self.antipode_free(&pu) * &pv).scale(c);
                right = &right + &(&pu * &self.antipode_free(&pv)).scale(c);
                cl = &cl + &pv.scale(&(c * &self.counit(&pu)));
                cr = &cr + &pu.scale(&(c * &self.counit(&pv)));
            }
            let target = NcPoly::constant(eps.clone());
            let x = NcPoly::var(field, g);
            if self.algebra.normal_form(&left)? != target || self.algebra.normal_form(&right)? != target {
                return Ok(Some(format!("antipode law fails on {}", names[g as usize])));
            }
            if self.algebra.normal_form(&cl)? != x || self.algebra.normal_form(&cr)? != x {
                return Ok(Some(format!("counit law fails on {}", names[g as usize])));
            }
        }
        Ok(None)
    }

    /// Renders `Δ` of each generator, e.g. `g ⊗ g`.
    pub fn describe_coproduct(&self, i: u32) -> String {
        let names = self.names();
        let parts: Vec<String> = self.coproduct[i as usize]
            .iter()
            .map(|(c, u, v)| {
                let fu = NcPoly::monomial(u.clone(), c.clone()).fmt_with(&names);
                let fv = NcPoly::word(self.field(), v.clone()).fmt_with(&names);
                format!("{fu} ⊗ {fv}")
            })
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::data::{cyclic_group, sweedler};

    #[test]
    fn finite_data_round_trip() {
        let q = Field::rationals();
        let k = HopfPresentation::from_data(&cyclic_group(&q, 3).unwrap()).unwrap();
        assert_eq!(k.names(), ["g", "g2"]);
        assert!(k.algebra().is_finite_dimensional());
        assert_eq!(k.algebra().dimension(), Some(3));
        assert!(k.check_generators().unwrap().is_none());
        assert!(k.is_grouplike_gen(0));
        let sw = HopfPresentation::from_data(&sweedler(&q).unwrap()).unwrap();
        assert_eq!(sw.algebra().dimension(), Some(4));
        assert!(sw.check_generators().unwrap().is_none());
    }

    #[test]
    fn laurent_is_hopf() {
        let q = Field::rationals();
        let h = HopfPresentation::laurent(&q, "g", "G", 8).unwrap();
        assert!(h.algebra().is_complete());
        assert!(!h.algebra().is_finite_dimensional());
        assert!(h.check_generators().unwrap().is_none());
        let g3 = h.algebra().presentation().parse("g^3").unwrap();
        let d = h.coproduct(&g3).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(h.describe_coproduct(0), "g ⊗ g");
    }
}
