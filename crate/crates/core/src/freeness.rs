//! Free-module witnesses: an explicit basis of an algebra over a subalgebra,
//! certified by exact linear algebra on normal-word coordinates up to a degree.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::ncalg::{fmt_word, NcPoly, PresentedAlgebra, Word};
use crate::sparse::{self, SVec, SparseEchelon};
use crate::{Error, Result};

/// Assigns coordinates to words as they are met.
#[derive(Clone, Debug, Default)]
pub(crate) struct WordCoords {
    index: BTreeMap<Word, usize>,
}

impl WordCoords {
    pub(crate) fn id(&mut self, w: &[u32]) -> usize {
        let n = self.index.len();
        *self.index.entry(w.to_vec()).or_insert(n)
    }

    pub(crate) fn of(&mut self, f: &NcPoly) -> SVec {
        sparse::collect(f.terms().map(|(w, c)| (self.id(w), c.clone())).collect::<Vec<_>>())
    }
}

/// `HS_A[d] = Σ_{a+b=d} HS_B[a]·HS_C[b]`, coefficient by coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertCheck {
    pub ambient: Vec<usize>,
    pub sub: Vec<usize>,
    pub complement: Vec<usize>,
    pub holds: bool,
}

pub(crate) fn convolve(a: &[usize], b: &[usize], len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j < len {
                out[i + j] += x * y;
            }
        }
    }
    out
}

impl HilbertCheck {
    pub fn new(ambient: Vec<usize>, sub: Vec<usize>, complement: Vec<usize>) -> HilbertCheck {
        let holds = convolve(&sub, &complement, ambient.len()) == ambient;
        HilbertCheck { ambient, sub, complement, holds }
    }
}

/// Result of a freeness check up to `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessWitness {
    pub degree: u32,
    /// The basis over the subalgebra, rendered.
    pub complement: Vec<String>,
    /// The same basis as elements.
    pub basis: Vec<NcPoly>,
    /// Number of products `b·c` that were tested.
    pub products: usize,
    /// Hilbert-series identity, when the grading makes it meaningful.
    pub hilbert: Option<HilbertCheck>,
    /// First obstruction found, if any.
    pub failure: Option<String>,
    /// The offending element: a dependent product or an uncovered normal word.
    pub element: Option<NcPoly>,
}

impl FreenessWitness {
    pub fn holds(&self) -> bool {
        self.failure.is_none() && self.hilbert.as_ref().is_none_or(|h| h.holds)
    }

    pub fn rank(&self) -> usize {
        self.complement.len()
    }

    pub fn label(&self) -> String {
        format!("freeness witnessed to degree {} (rank {})", self.degree, self.rank())
    }
}

/// Whether every generator has positive degree, so weight and degree agree.
pub(crate) fn positively_graded(a: &PresentedAlgebra) -> bool {
    let p = a.presentation();
    p.graded && p.generators.iter().all(|g| g.degree > 0)
}

fn degree_of_poly(a: &PresentedAlgebra, f: &NcPoly) -> Option<u32> {
    a.presentation().homogeneous_degree(f)
}

/// `A` as a left module over the span of `sub`.
///
/// `sub` lists elements of `A` with their weight in the subalgebra. The
/// complement is either given or chosen greedily among normal words of `A`.
/// Products whose weight exceeds the Gröbner cutoff of an incomplete basis are skipped.
pub fn free_basis_witness(
    a: &PresentedAlgebra,
    sub: &[(u32, NcPoly)],
    complement: Option<&[NcPoly]>,
    d: u32,
) -> Result<FreenessWitness> {
    let names = a.names();
    let field = a.field().clone();
    let mut coords = WordCoords::default();
    let mut span = SparseEchelon::new(false);
    let mut family: Vec<NcPoly> = Vec::new();
    let mut chosen: Vec<NcPoly> = Vec::new();
    let mut failure: Option<(String, NcPoly)> = None;

    let add = |c: &NcPoly,
                   coords: &mut WordCoords,
                   span: &mut SparseEchelon,
                   family: &mut Vec<NcPoly>|
     -> Result<Option<(String, NcPoly)>> {
        for (_, b) in sub {
            let prod = &(b * c);
            if !a.is_complete() && a.weight(prod) > a.cutoff() {
                continue;
            }
            let nf = a.normal_form(prod)?;
            let v = coords.of(&nf);
            if span.insert(&v).is_some() {
                let msg = format!(
                    "({})·({}) is a combination of earlier products",
                    b.fmt_with(&names),
                    c.fmt_with(&names)
                );
                return Ok(Some((msg, nf)));
            }
            family.push(nf);
        }
        Ok(None)
    };

    let required = a.normal_words_upto(d)?;
    match complement {
        Some(cs) => {
            for c in cs {
                chosen.push(c.clone());
                if failure.is_none() {
                    failure = add(c, &mut coords, &mut span, &mut family)?;
                }
            }
            if failure.is_none() {
                'outer: for level in &required {
                    for w in level {
                        let v = vec![(coords.id(w), field.one())];
                        if !span.contains(&v) {
                            let msg = format!("normal word {} is not in the span", fmt_word(w, &names));
                            failure = Some((msg, NcPoly::word(&field, w.clone())));
                            break 'outer;
                        }
                    }
                }
            }
        }
        None => {
            'greedy: for level in &required {
                for w in level {
                    let v = vec![(coords.id(w), field.one())];
                    if span.contains(&v) {
                        continue;
                    }
                    let c = NcPoly::word(&field, w.clone());
                    chosen.push(c.clone());
                    failure = add(&c, &mut coords, &mut span, &mut family)?;
                    if failure.is_some() {
                        break 'greedy;
                    }
                }
            }
        }
    }

    let hilbert = if positively_graded(a) && failure.is_none() {
        let len = d as usize + 1;
        let mut sub_hs = vec![0; len];
        for (w, _) in sub {
            if (*w as usize) < len {
                sub_hs[*w as usize] += 1;
            }
        }
        let mut comp_hs = vec![0; len];
        for c in &chosen {
            let deg = degree_of_poly(a, c).ok_or_else(|| Error::NotHomogeneous {
                index: 0,
                detail: format!("complement element {} is not homogeneous", c.fmt_with(&names)),
            })?;
            if (deg as usize) < len {
                comp_hs[deg as usize] += 1;
            }
        }
        Some(HilbertCheck::new(a.hilbert_series(d)?, sub_hs, comp_hs))
    } else {
        None
    };
    let products = family.len();
    let (failure, element) = match failure {
        Some((m, e)) => (Some(m), Some(e)),
        None => (None, None),
    };
    Ok(FreenessWitness {
        degree: d,
        complement: chosen.iter().map(|c| c.fmt_with(&names)).collect(),
        basis: chosen,
        products,
        hilbert,
        failure,
        element,
    })
}

/// A basis, up to weight `d`, of the subalgebra of `a` generated by `gens`,
/// each element tagged with its weight as a product of generators.
///
/// Generators must be homogeneous and have no constant term.
pub fn subalgebra_basis(a: &PresentedAlgebra, gens: &[NcPoly], d: u32) -> Result<Vec<(u32, NcPoly)>> {
    let names = a.names();
    let p = a.presentation();
    let field = a.field();
    let mut weights = Vec::with_capacity(gens.len());
    for g in gens {
        let g = a.normal_form(g)?;
        let deg = if p.graded { p.homogeneous_degree(&g) } else { None };
        let Some(deg) = deg else {
            return Err(Error::InvalidSubalgebra(format!("{} is not homogeneous", g.fmt_with(&names))));
        };
        if !g.constant_term().is_zero() || g.is_zero() {
            return Err(Error::InvalidSubalgebra(format!("{} is not a valid generator", g.fmt_with(&names))));
        }
        weights.push(deg.max(1));
    }
    let mut coords = WordCoords::default();
    let mut span = SparseEchelon::new(false);
    let one = NcPoly::one(field);
    span.insert(&coords.of(&one));
    let mut levels: Vec<Vec<NcPoly>> = vec![Vec::new(); d as usize + 1];
    levels[0].push(one);
    for w in 1..=d {
        let mut level = Vec::new();
        for (g, &gw) in gens.iter().zip(&weights) {
            if gw > w {
                continue;
            }
            for e in levels[(w - gw) as usize].clone() {
                let prod = &(g * &e);
                if !a.is_complete() && a.weight(prod) > a.cutoff() {
                    continue;
                }
                let nf = a.normal_form(prod)?;
                if nf.is_zero() {
                    continue;
                }
                if span.insert(&coords.of(&nf)).is_none() {
                    level.push(nf);
                }
            }
        }
        levels[w as usize] = level;
    }
    Ok(levels
        .into_iter()
        .enumerate()
        .flat_map(|(w, l)| l.into_iter().map(move |f| (w as u32, f)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::presented::HopfPresentation;
    use crate::ncalg::{groebner_truncated, Presentation};
    use crate::scalar::Field;

    #[test]
    fn polynomial_over_power_subalgebra() {
        let q = Field::rationals();
        let a = groebner_truncated(&Presentation::new(&q, &[("X", 1)]), 12).unwrap();
        let x3 = a.presentation().parse("X^3").unwrap();
        let sub = subalgebra_basis(&a, &[x3], 12).unwrap();
        assert_eq!(sub.len(), 5);
        let w = free_basis_witness(&a, &sub, None, 12).unwrap();
        assert!(w.holds(), "{w:?}");
        assert_eq!(w.complement, ["1", "X", "X^2"]);
        assert!(w.hilbert.unwrap().holds);
    }

    #[test]
    fn laurent_over_cubes() {
        let q = Field::rationals();
        let h = HopfPresentation::laurent(&q, "g", "G", 4).unwrap();
        let a = h.algebra();
        let gens = [a.presentation().parse("g^3").unwrap(), a.presentation().parse("G^3").unwrap()];
        let sub = subalgebra_basis(a, &gens, 12).unwrap();
        let w = free_basis_witness(a, &sub, None, 9).unwrap();
        assert!(w.holds(), "{w:?}");
        assert_eq!(w.rank(), 3);
        assert!(w.hilbert.is_none());
    }

    #[test]
    fn wrong_complement_is_caught() {
        let q = Field::rationals();
        let a = groebner_truncated(&Presentation::new(&q, &[("X", 1)]), 12).unwrap();
        let p = a.presentation();
        let sub = subalgebra_basis(&a, &[p.parse("X^2").unwrap()], 8).unwrap();
        let too_many = [p.parse("1").unwrap(), p.parse("X").unwrap(), p.parse("X^2").unwrap()];
        let w = free_basis_witness(&a, &sub, Some(&too_many), 8).unwrap();
        assert!(!w.holds());
        assert!(!a.normal_form(w.element.as_ref().unwrap()).unwrap().is_zero());
        let too_few = [p.parse("1").unwrap()];
        let w = free_basis_witness(&a, &sub, Some(&too_few), 8).unwrap();
        assert_eq!(w.element.unwrap(), p.parse("X").unwrap());
        let bad = subalgebra_basis(&a, &[p.parse("X + X^2").unwrap()], 8);
        assert!(matches!(bad, Err(Error::InvalidSubalgebra(_))));
    }
}
