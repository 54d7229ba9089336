//! Smash products `R ⋊ K`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::action::{ActionSpec, HopfAction};
use super::presented::HopfPresentation;
use crate::ncalg::{groebner_truncated, NcPoly, PresentedAlgebra, Presentation};
use crate::{Error, Result};

/// `R ⋊ K` presented on the letters of `K` followed by the generators of `R`.
#[derive(Clone, Debug)]
pub struct SmashProductAlgebra {
    pub algebra: PresentedAlgebra,
    pub action: HopfAction,
}

impl SmashProductAlgebra {
    pub fn k_letters(&self) -> usize {
        self.action.hopf().num_generators()
    }

    /// Generator index of the `i`-th generator of `R`.
    pub fn r_gen(&self, i: u32) -> u32 {
        i + self.k_letters() as u32
    }

    /// `f ⊗ 1`.
    pub fn embed_r(&self, f: &NcPoly) -> NcPoly {
        let off = self.k_letters() as u32;
        let mut out = NcPoly::zero(f.field());
        for (w, c) in f.terms() {
            out.add_term(w.iter().map(|x| x + off).collect(), c.clone());
        }
        out
    }

    /// `1 ⊗ h`.
    pub fn embed_k(&self, h: &NcPoly) -> NcPoly {
        h.clone()
    }
}

/// Presentation of `R ⋊ K` with relations of `R`, of `K`, and
/// `a x = Σ (a₁·x) a₂` for letters `a` and generators `x`.
pub fn smash_presentation(action: &HopfAction) -> Result<Presentation> {
    let k = action.hopf();
    let r = action.algebra();
    let field = r.field();
    let kp = k.algebra().presentation();
    let rp = r.presentation();
    let nk = kp.generators.len() as u32;
    let mut gens: Vec<(String, u32)> = kp.generators.iter().map(|g| (g.name.clone(), 0)).collect();
    for g in &rp.generators {
        if kp.gen_index(&g.name).is_some() {
            return Err(Error::Invalid(format!("generator {} occurs in both factors", g.name)));
        }
        gens.push((g.name.clone(), g.degree));
    }
    let refs: Vec<(&str, u32)> = gens.iter().map(|(n, d)| (n.as_str(), *d)).collect();
    let mut p = Presentation::new(field, &refs);
    p.graded = rp.graded;
    p.augmentation = kp.augmentation.iter().chain(rp.augmentation.iter()).cloned().collect();
    p.priority = kp.priority.iter().copied().chain(rp.priority.iter().map(|x| x + nk)).collect();
    let shift = |f: &NcPoly| {
        let mut out = NcPoly::zero(field);
        for (w, c) in f.terms() {
            out.add_term(w.iter().map(|x| x + nk).collect(), c.clone());
        }
        out
    };
    for rel in &rp.relations {
        p.relations.push(shift(rel));
    }
    for rel in &kp.relations {
        p.relations.push(rel.clone());
    }
    for a in 0..nk {
        for x in 0..rp.generators.len() as u32 {
            let mut rhs = NcPoly::zero(field);
            for (c, u, v) in k.coproduct_gen(a) {
                let img = action.act_word(u, &NcPoly::var(field, x))?;
                rhs = &rhs + &(&shift(&img) * &NcPoly::word(field, v.clone())).scale(c);
            }
            let lhs = NcPoly::word(field, alloc::vec![a, x + nk]);
            p.relations.push(&lhs - &rhs);
        }
    }
    Ok(p)
}

/// Builds `R ⋊ K` after checking that the action is a module-algebra action.
pub fn smash_product(r: &PresentedAlgebra, k: &HopfPresentation, spec: &ActionSpec, cutoff: u32) -> Result<SmashProductAlgebra> {
    let action = HopfAction::new(k, r, spec)?;
    smash_from_action(&action, cutoff)
}

pub fn smash_from_action(action: &HopfAction, cutoff: u32) -> Result<SmashProductAlgebra> {
    let p = smash_presentation(action)?;
    let algebra = groebner_truncated(&p, cutoff)?;
    Ok(SmashProductAlgebra { algebra, action: action.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::builders::{jordan_plane, quantum_line};
    use crate::hopf::data::cyclic_group;
    use crate::scalar::Field;

    #[test]
    fn taft_from_quantum_line() {
        let f = Field::cyclotomic(3).unwrap();
        let k = HopfPresentation::from_data(&cyclic_group(&f, 3).unwrap()).unwrap();
        let r = quantum_line(&f, 3, &f.zeta().unwrap(), 8).unwrap();
        let spec = ActionSpec::parse(&k, &r, &[("g", &[("X", "zeta*X")])]).unwrap();
        let s = smash_product(&r, &k, &spec, 8).unwrap();
        assert_eq!(s.algebra.dimension(), Some(9));
        let p = s.algebra.presentation();
        let lhs = s.algebra.normal_form(&p.parse("g*X").unwrap()).unwrap();
        let rhs = s.algebra.normal_form(&p.parse("zeta*X*g").unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let t = smash_product(&r, &k, &ActionSpec::trivial(), 8).unwrap();
        assert_eq!(t.algebra.dimension(), Some(9));
    }

    #[test]
    fn restricted_jordan_smash() {
        let f = Field::prime(3).unwrap();
        let k = HopfPresentation::from_data(&cyclic_group(&f, 3).unwrap()).unwrap();
        let j = jordan_plane(&f, true, 9).unwrap();
        let spec = ActionSpec::parse(&k, &j, &[("g", &[("x", "x"), ("y", "y + x")])]).unwrap();
        let s = smash_product(&j, &k, &spec, 9).unwrap();
        assert_eq!(s.algebra.dimension(), Some(27));
    }
}
