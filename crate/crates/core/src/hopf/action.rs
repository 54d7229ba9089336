//! Module-algebra actions of presented Hopf algebras.

use alloc::collections::BTreeMap;
use core::cell::RefCell;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::presented::HopfPresentation;
use crate::ncalg::{parse_poly, NcPoly, PresentedAlgebra};
use crate::{Error, Result};

/// Images `a·x` of generators `x` of `R` under letters `a` of `K`.
/// Letters that are omitted are derived from products of given ones.
#[derive(Clone, Debug, Default)]
pub struct ActionSpec {
    pub entries: BTreeMap<u32, Vec<NcPoly>>,
}

impl ActionSpec {
    /// `h·x = ε(h)x`.
    pub fn trivial() -> ActionSpec {
        ActionSpec::default()
    }

    /// Parses `[(letter, [(generator, image)])]`; every generator of `r`
    /// must be given for each listed letter.
    pub fn parse(k: &HopfPresentation, r: &PresentedAlgebra, spec: &[(&str, &[(&str, &str)])]) -> Result<ActionSpec> {
        let rnames = r.names();
        let mut entries = BTreeMap::new();
        for (letter, images) in spec {
            let a = k
                .algebra()
                .presentation()
                .gen_index(letter)
                .ok_or_else(|| Error::Unresolved(format!("Hopf generator {letter}")))?;
            let mut row = vec![None; rnames.len()];
            for (x, text) in images.iter() {
                let i = r
                    .presentation()
                    .gen_index(x)
                    .ok_or_else(|| Error::Unresolved(format!("algebra generator {x}")))?;
                row[i as usize] = Some(parse_poly(text, r.field(), &rnames, &BTreeMap::new())?);
            }
            let row: Option<Vec<NcPoly>> = row.into_iter().collect();
            let row = row.ok_or_else(|| Error::Invalid(format!("action of {letter} must be given on every generator")))?;
            entries.insert(a, row);
        }
        Ok(ActionSpec { entries })
    }
}

/// A module-algebra action of `K` on `R`, defined on all letters of `K`.
#[derive(Clone, Debug)]
pub struct HopfAction {
    k: HopfPresentation,
    r: PresentedAlgebra,
    images: Vec<Vec<NcPoly>>,
    /// `a·w` for group-like letters `a` and words `w`.
    memo: RefCell<BTreeMap<(u32, Vec<u32>), NcPoly>>,
}

impl HopfAction {
    /// Extends the spec to every letter and checks the module-algebra axioms.
    pub fn new(k: &HopfPresentation, r: &PresentedAlgebra, spec: &ActionSpec) -> Result<HopfAction> {
        if k.field() != r.field() {
            return Err(Error::FieldMismatch(k.field().to_string(), r.field().to_string()));
        }
        let nk = k.num_generators();
        let nr = r.num_generators();
        let mut known: Vec<Option<Vec<NcPoly>>> = vec![None; nk];
        let trivial = spec.entries.is_empty();
        for a in 0..nk as u32 {
            if trivial {
                let eps = k.counit(&NcPoly::var(k.field(), a));
                known[a as usize] = Some((0..nr as u32).map(|x| NcPoly::var(r.field(), x).scale(&eps)).collect());
            }
        }
        for (&a, row) in &spec.entries {
            if a as usize >= nk || row.len() != nr {
                return Err(Error::DimensionMismatch("action table".into()));
            }
            let row = row.iter().map(|f| r.normal_form(f)).collect::<Result<Vec<_>>>()?;
            known[a as usize] = Some(row);
        }
        loop {
            let mut progress = false;
            for a in 0..nk as u32 {
                for b in 0..nk as u32 {
                    let (Some(_), Some(rb)) = (&known[a as usize], &known[b as usize]) else { continue };
                    let nf = k.algebra().normal_form(&NcPoly::word(k.field(), vec![a, b]))?;
                    if nf.len() != 1 {
                        continue;
                    }
                    let (w, c) = nf.terms().next().map(|(w, c)| (w.clone(), c.clone())).unwrap();
                    if w.len() != 1 || known[w[0] as usize].is_some() {
                        continue;
                    }
                    let usable = k.coproduct_gen(a).iter().all(|(_, u, v)| {
                        u.iter().chain(v.iter()).all(|&l| known[l as usize].is_some())
                    });
                    if !usable {
                        continue;
                    }
                    let table: Vec<Vec<NcPoly>> = known
                        .iter()
                        .map(|o| o.clone().unwrap_or_default())
                        .collect();
                    let partial = HopfAction { k: k.clone(), r: r.clone(), images: table, memo: RefCell::default() };
                    let cinv = c.inv()?;
                    let row = rb
                        .iter()
                        .map(|f| r.normal_form(&partial.act_letter(a, f).scale(&cinv)))
                        .collect::<Result<Vec<_>>>()?;
                    known[w[0] as usize] = Some(row);
                    progress = true;
                }
            }
            if !progress {
                break;
            }
        }
        let names = k.names();
        let images = known
            .into_iter()
            .enumerate()
            .map(|(a, o)| o.ok_or_else(|| Error::Invalid(format!("action of {} is not determined", names[a]))))
            .collect::<Result<Vec<_>>>()?;
        let act = HopfAction { k: k.clone(), r: r.clone(), images, memo: RefCell::default() };
        if let Some(w) = act.module_algebra_witness()? {
            return Err(Error::NotModuleAlgebra(w));
        }
        Ok(act)
    }

    pub fn hopf(&self) -> &HopfPresentation {
        &self.k
    }

    pub fn algebra(&self) -> &PresentedAlgebra {
        &self.r
    }

    /// `a·x` for a letter `a` and generator `x`, in normal form.
    pub fn image(&self, a: u32, x: u32) -> &NcPoly {
        &self.images[a as usize][x as usize]
    }

    pub fn is_trivial(&self) -> bool {
        let field = self.r.field();
        (0..self.images.len() as u32).all(|a| {
            let eps = self.k.counit(&NcPoly::var(field, a));
            (0..self.r.num_generators() as u32).all(|x| self.images[a as usize][x as usize] == NcPoly::var(field, x).scale(&eps))
        })
    }

    fn act_letter_word(&self, a: u32, w: &[u32]) -> NcPoly {
        let field = self.r.field();
        match w.len() {
            0 => NcPoly::constant(self.k.counit(&NcPoly::var(field, a))),
            1 => self.images[a as usize][w[0] as usize].clone(),
            _ => {
                if self.k.is_grouplike_gen(a) {
                    let mut out = NcPoly::one(field);
                    for &x in w {
                        out = &out * &self.images[a as usize][x as usize];
                    }
                    return out;
                }
                let mut out = NcPoly::zero(field);
                let head = NcPoly::var(field, w[0]);
                let tail = NcPoly::word(field, w[1..].to_vec());
                for (c, u, v) in self.k.coproduct_gen(a) {
                    let l = self.act_kword_free(u, &head);
                    let r = self.act_kword_free(v, &tail);
                    out = &out + &(&l * &r).scale(c);
                }
                out
            }
        }
    }

    fn act_letter(&self, a: u32, f: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero(self.r.field());
        for (w, c) in f.terms() {
            out = &out + &self.act_letter_word(a, w).scale(c);
        }
        out
    }

    fn act_kword_free(&self, kw: &[u32], f: &NcPoly) -> NcPoly {
        let mut g = f.clone();
        for &a in kw.iter().rev() {
            g = self.act_letter(a, &g);
        }
        g
    }

    /// `a·f` in normal form; group-like letters are multiplied out with
    /// reduction after every factor.
    fn act_letter_reduced(&self, a: u32, f: &NcPoly) -> Result<NcPoly> {
        if !self.k.is_grouplike_gen(a) {
            return self.r.normal_form(&self.act_letter(a, f));
        }
        let mut out = NcPoly::zero(self.r.field());
        for (w, c) in f.terms() {
            out = &out + &self.grouplike_on_word(a, w)?.scale(c);
        }
        Ok(out)
    }

    fn grouplike_on_word(&self, a: u32, w: &[u32]) -> Result<NcPoly> {
        let key = (a, w.to_vec());
        if let Some(p) = self.memo.borrow().get(&key) {
            return Ok(p.clone());
        }
        let out = match w.split_last() {
            None => NcPoly::one(self.r.field()),
            Some((&x, rest)) => self.r.mul(&self.grouplike_on_word(a, rest)?, &self.images[a as usize][x as usize])?,
        };
        self.memo.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    /// `h·f` for a word `h` in the letters of `K`, in normal form.
    pub fn act_word(&self, kw: &[u32], f: &NcPoly) -> Result<NcPoly> {
        let mut g = self.r.normal_form(f)?;
        for &a in kw.iter().rev() {
            g = self.act_letter_reduced(a, &g)?;
        }
        Ok(g)
    }

    /// `h·f` for an element `h` of `K`.
    pub fn act(&self, h: &NcPoly, f: &NcPoly) -> Result<NcPoly> {
        let mut out = NcPoly::zero(self.r.field());
        for (w, c) in h.terms() {
            out = &out + &self.act_word(w, f)?.scale(c);
        }
        Ok(out)
    }

    /// First violation of the module-algebra axioms on generators and relations.
    pub fn module_algebra_witness(&self) -> Result<Option<String>> {
        let rnames = self.r.names();
        let knames = self.k.names();
        let p = self.r.presentation();
        let field = self.r.field();
        for a in 0..self.images.len() as u32 {
            for (x, img) in self.images[a as usize].iter().enumerate() {
                if p.graded && !img.is_zero() && p.homogeneous_degree(img) != Some(p.generators[x].degree) {
                    return Ok(Some(format!(
                        "{}·{} = {} is not homogeneous of degree {}",
                        knames[a as usize],
                        rnames[x],
                        img.fmt_with(&rnames),
                        p.generators[x].degree
                    )));
                }
                if !p.graded && p.augment(img) != &p.augmentation[x] * &self.k.counit(&NcPoly::var(field, a)) {
                    return Ok(Some(format!("{}·{} does not respect the augmentation", knames[a as usize], rnames[x])));
                }
            }
            for r in &p.relations {
                let img = self.r.normal_form(&self.act_letter(a, r))?;
                if !img.is_zero() {
                    return Ok(Some(format!(
                        "{}·({}) = {} ≠ 0",
                        knames[a as usize],
                        r.fmt_with(&rnames),
                        img.fmt_with(&rnames)
                    )));
                }
            }
        }
        for r in &self.k.algebra().presentation().relations {
            for x in 0..self.r.num_generators() as u32 {
                let img = self.act(r, &NcPoly::var(field, x))?;
                if !img.is_zero() {
                    return Ok(Some(format!(
                        "relation {} of the Hopf algebra acts on {} as {}",
                        r.fmt_with(&knames),
                        rnames[x as usize],
                        img.fmt_with(&rnames)
                    )));
                }
            }
        }
        Ok(None)
    }
}

/// Checks whether the spec extends to a module-algebra action.
pub fn is_module_algebra(k: &HopfPresentation, r: &PresentedAlgebra, spec: &ActionSpec) -> Result<bool> {
    match HopfAction::new(k, r, spec) {
        Ok(_) => Ok(true),
        Err(Error::NotModuleAlgebra(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::builders::{jordan_plane, quantum_line};
    use crate::hopf::data::cyclic_group;
    use crate::scalar::Field;

    #[test]
    fn quantum_line_rotation() {
        let f = Field::cyclotomic(3).unwrap();
        let k = HopfPresentation::from_data(&cyclic_group(&f, 3).unwrap()).unwrap();
        let r = quantum_line(&f, 3, &f.zeta().unwrap(), 8).unwrap();
        let spec = ActionSpec::parse(&k, &r, &[("g", &[("X", "zeta*X")])]).unwrap();
        let act = HopfAction::new(&k, &r, &spec).unwrap();
        let z2 = f.zeta_pow(2).unwrap();
        assert_eq!(act.image(1, 0), &NcPoly::var(&f, 0).scale(&z2));
        let bad = ActionSpec::parse(&k, &r, &[("g", &[("X", "2*X")])]).unwrap();
        assert!(!is_module_algebra(&k, &r, &bad).unwrap());
        assert!(is_module_algebra(&k, &r, &ActionSpec::trivial()).unwrap());
    }

    #[test]
    fn jordan_shear() {
        let f = Field::prime(3).unwrap();
        let k = HopfPresentation::from_data(&cyclic_group(&f, 3).unwrap()).unwrap();
        let j = jordan_plane(&f, false, 9).unwrap();
        let spec = ActionSpec::parse(&k, &j, &[("g", &[("x", "x"), ("y", "y + x")])]).unwrap();
        let act = HopfAction::new(&k, &j, &spec).unwrap();
        let y3 = j.presentation().parse("y^3").unwrap();
        let img = act.act_word(&[0], &y3).unwrap();
        assert_eq!(img, y3);
        let rj = jordan_plane(&f, true, 9).unwrap();
        assert!(HopfAction::new(&k, &rj, &ActionSpec::parse(&k, &rj, &[("g", &[("x", "x"), ("y", "y + x")])]).unwrap()).is_ok());
    }
}
