//! Noncommutative polynomials, presentations and truncated Gröbner bases.
//!
//! Words are sequences of generator indices. The monomial order is
//! weight-then-lexicographic, where the weight of a letter is its degree
//! (degree-0 letters count as weight 1) and letters are compared by the
//! priority list of the presentation.

mod finite;
mod gb;
mod parse;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

pub use finite::FiniteAlgebra;
pub use gb::{groebner_truncated, PresentedAlgebra, Rule};
pub use parse::{parse_poly, parse_scalar};

use crate::scalar::{Field, Scalar};
use crate::{Error, Result};

/// A word in the generators, as generator indices.
pub type Word = Vec<u32>;

/// A noncommutative polynomial: a finite map from words to nonzero scalars.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NcPoly {
    field: Field,
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero(field: &Field) -> NcPoly {
        NcPoly { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn one(field: &Field) -> NcPoly {
        NcPoly::constant(field.one())
    }

    pub fn constant(c: Scalar) -> NcPoly {
        NcPoly::monomial(Word::new(), c)
    }

    pub fn var(field: &Field, g: u32) -> NcPoly {
        NcPoly::monomial(alloc::vec![g], field.one())
    }

    pub fn word(field: &Field, w: Word) -> NcPoly {
        NcPoly::monomial(w, field.one())
    }

    pub fn monomial(w: Word, c: Scalar) -> NcPoly {
        let mut p = NcPoly::zero(c.field());
        p.add_term(w, c);
        p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[u32]) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// The constant term.
    pub fn constant_term(&self) -> Scalar {
        self.coeff(&[])
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        let mut out = NcPoly::zero(&self.field);
        if c.is_zero() {
            return out;
        }
        for (w, v) in &self.terms {
            out.terms.insert(w.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> NcPoly {
        let mut acc = NcPoly::one(&self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Applies a map on generators (as polynomials) multiplicatively.
    pub fn substitute(&self, images: &[NcPoly]) -> NcPoly {
        let mut out = NcPoly::zero(&self.field);
        for (w, c) in &self.terms {
            let mut t = NcPoly::constant(c.clone());
            for &g in w {
                t = &t * &images[g as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Largest word length among the terms.
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Renders in the presentation grammar, e.g. `2*x^2*y - zeta*y`.
    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (w, c) in self.terms.iter().rev() {
            let mono = fmt_word(w, names);
            let (neg, body) = scalar_sign(c);
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match (body.as_str(), mono.is_empty()) {
                (b, true) => out.push_str(b),
                ("1", false) => out.push_str(&mono),
                (b, false) => {
                    out.push_str(b);
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }
}

fn scalar_sign(c: &Scalar) -> (bool, String) {
    let s = c.to_string();
    if let Some(rest) = s.strip_prefix('-') {
        if !rest.contains(' ') {
            return (true, rest.to_string());
        }
    }
    (false, s)
}

/// Renders a word with run-length powers, e.g. `x^2*y`.
pub fn fmt_word(w: &[u32], names: &[String]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let name = &names[w[i] as usize];
        if j - i == 1 {
            parts.push(name.clone());
        } else {
            parts.push(format!("{name}^{}", j - i));
        }
        i = j;
    }
    parts.join("*")
}

impl Add for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        self.scale(&-self.field.one())
    }
}

impl Mul for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero(&self.field);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, x * y);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait for NcPoly {
            type Output = NcPoly;
            fn $method(self, rhs: NcPoly) -> NcPoly {
                (&self).$method(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

/// Generators, relations, augmentation and monomial-order priority.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub field: Field,
    pub generators: Vec<Generator>,
    pub relations: Vec<NcPoly>,
    /// Counit value of each generator.
    pub augmentation: Vec<Scalar>,
    /// Generator indices from largest to smallest letter.
    pub priority: Vec<u32>,
    /// Whether relations must be homogeneous for the internal degree.
    pub graded: bool,
}

impl Presentation {
    /// Free algebra on the given `(name, degree)` generators, zero augmentation,
    /// priority in listing order (first generator largest).
    pub fn new(field: &Field, generators: &[(&str, u32)]) -> Presentation {
        Presentation {
            field: field.clone(),
            generators: generators
                .iter()
                .map(|(n, d)| Generator { name: (*n).to_string(), degree: *d })
                .collect(),
            relations: Vec::new(),
            augmentation: generators.iter().map(|_| field.zero()).collect(),
            priority: (0..generators.len() as u32).collect(),
            graded: true,
        }
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn gen_index(&self, name: &str) -> Option<u32> {
        self.generators.iter().position(|g| g.name == name).map(|i| i as u32)
    }

    pub fn var(&self, name: &str) -> Result<NcPoly> {
        let i = self.gen_index(name).ok_or_else(|| Error::Unresolved(name.to_string()))?;
        Ok(NcPoly::var(&self.field, i))
    }

    /// Parses an expression over this presentation's generators.
    pub fn parse(&self, text: &str) -> Result<NcPoly> {
        parse_poly(text, &self.field, &self.names(), &BTreeMap::new())
    }

    pub fn add_relation(&mut self, r: NcPoly) -> &mut Self {
        self.relations.push(r);
        self
    }

    pub fn add_relation_str(&mut self, text: &str) -> Result<&mut Self> {
        let r = self.parse(text)?;
        self.relations.push(r);
        Ok(self)
    }

    /// Sets the priority from generator names, largest first.
    pub fn set_priority(&mut self, names: &[&str]) -> Result<&mut Self> {
        let mut p = Vec::new();
        for n in names {
            p.push(self.gen_index(n).ok_or_else(|| Error::Unresolved((*n).to_string()))?);
        }
        let mut sorted = p.clone();
        sorted.sort_unstable();
        if sorted != (0..self.generators.len() as u32).collect::<Vec<_>>() {
            return Err(Error::Invalid("priority must list every generator once".into()));
        }
        self.priority = p;
        Ok(self)
    }

    pub fn degree_of(&self, w: &[u32]) -> u32 {
        w.iter().map(|&g| self.generators[g as usize].degree).sum()
    }

    pub fn weight_of(&self, w: &[u32]) -> u32 {
        w.iter().map(|&g| self.generators[g as usize].degree.max(1)).sum()
    }

    /// Largest term weight (0 for constants and zero).
    pub fn weight(&self, f: &NcPoly) -> u32 {
        f.terms().map(|(w, _)| self.weight_of(w)).max().unwrap_or(0)
    }

    /// Internal degree of a homogeneous polynomial.
    pub fn homogeneous_degree(&self, f: &NcPoly) -> Option<u32> {
        let mut it = f.terms().map(|(w, _)| self.degree_of(w));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Value of the augmentation on a polynomial.
    pub fn augment(&self, f: &NcPoly) -> Scalar {
        let mut acc = self.field.zero();
        for (w, c) in f.terms() {
            let mut t = c.clone();
            for &g in w {
                t = &t * &self.augmentation[g as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Checks homogeneity (when graded), that ε kills the relations, and
    /// that all coefficients live in the presentation's field.
    pub fn validate(&self) -> Result<()> {
        self.validate_shape()?;
        self.validate_augmentation()
    }

    pub(crate) fn validate_shape(&self) -> Result<()> {
        if self.augmentation.len() != self.generators.len() {
            return Err(Error::DimensionMismatch("augmentation length".into()));
        }
        for (i, r) in self.relations.iter().enumerate() {
            if r.field() != &self.field {
                return Err(Error::FieldMismatch(r.field().to_string(), self.field.to_string()));
            }
            if let Some((w, _)) = r.terms().find(|(w, _)| w.iter().any(|&g| g as usize >= self.generators.len())) {
                return Err(Error::Invalid(format!("relation {i} uses unknown generator in {w:?}")));
            }
            if self.graded && !r.is_zero() && self.homogeneous_degree(r).is_none() {
                let degs: Vec<u32> = r.terms().map(|(w, _)| self.degree_of(w)).collect();
                return Err(Error::NotHomogeneous {
                    index: i,
                    detail: format!("{} has terms of degrees {:?}", r.fmt_with(&self.names()), degs),
                });
            }
        }
        Ok(())
    }

    pub(crate) fn validate_augmentation(&self) -> Result<()> {
        for r in &self.relations {
            if !self.augment(r).is_zero() {
                return Err(Error::Invalid(format!(
                    "augmentation does not vanish on relation {}",
                    r.fmt_with(&self.names())
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_arith_and_format() {
        let q = Field::rationals();
        let names: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        let x = NcPoly::var(&q, 0);
        let y = NcPoly::var(&q, 1);
        let r = &(&y * &x) - &(&x * &y);
        assert_eq!(r.len(), 2);
        assert_eq!(r.fmt_with(&names), "y*x - x*y");
        let half = q.from_ratio(1, 2).unwrap();
        let s = &r + &x.pow(2).scale(&half);
        assert_eq!(s.fmt_with(&names), "y*x - x*y + 1/2*x^2");
        let back = parse_poly(&s.fmt_with(&names), &q, &names, &BTreeMap::new()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn inhomogeneous_rejected() {
        let q = Field::rationals();
        let mut p = Presentation::new(&q, &[("X", 1)]);
        p.add_relation_str("X^2 - 1").unwrap();
        assert!(matches!(p.validate(), Err(Error::NotHomogeneous { index: 0, .. })));
    }
}
