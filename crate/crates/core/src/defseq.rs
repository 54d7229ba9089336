//! Deformation sequences `Z ↪ Q ↠ R`, their Hopf, `K`-equivariant and
//! `C`-equivariant variants, verification reports certified up to an
//! internal degree, and the smash of a sequence by a Hopf sequence.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cohomology::ExtTable;
use crate::freeness::{free_basis_witness, positively_graded, WordCoords};
use crate::hopf::action::{ActionSpec, HopfAction};
use crate::hopf::presented::{tensor_add, tensor_normal_form, HopfPresentation, Tensor};
use crate::hopf::smash::smash_from_action;
use crate::linalg::Matrix;
use crate::ncalg::{groebner_truncated, parse_poly, FiniteAlgebra, NcPoly, PresentedAlgebra, Presentation, Word};
use crate::sparse::{self, SparseEchelon};
use crate::{Error, Result};

/// An algebra map given by the images of the source generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMapSpec {
    pub images: Vec<NcPoly>,
}

impl AlgebraMapSpec {
    pub fn new(images: Vec<NcPoly>) -> AlgebraMapSpec {
        AlgebraMapSpec { images }
    }

    /// Parses `[(source generator, image in the target grammar)]`; every generator must be listed.
    pub fn parse(source: &PresentedAlgebra, target: &PresentedAlgebra, pairs: &[(&str, &str)]) -> Result<AlgebraMapSpec> {
        let names = target.names();
        let env = alloc::collections::BTreeMap::new();
        let mut images = vec![None; source.num_generators()];
        for (x, text) in pairs {
            let i = source
                .presentation()
                .gen_index(x)
                .ok_or_else(|| Error::Unresolved(format!("source generator {x}")))?;
            images[i as usize] = Some(parse_poly(text, target.field(), &names, &env)?);
        }
        let snames = source.names();
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, o)| o.ok_or_else(|| Error::Invalid(format!("no image given for {}", snames[i]))))
            .collect::<Result<Vec<_>>>()?;
        Ok(AlgebraMapSpec { images })
    }

    /// Sends each source generator to the target generator of the same name.
    pub fn by_name(source: &PresentedAlgebra, target: &PresentedAlgebra) -> Result<AlgebraMapSpec> {
        let tp = target.presentation();
        let images = source
            .names()
            .iter()
            .map(|n| tp.var(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(AlgebraMapSpec { images })
    }

    /// Normal form of the image of `f` in `target`.
    pub fn apply(&self, target: &PresentedAlgebra, f: &NcPoly) -> Result<NcPoly> {
        target.normal_form(&f.substitute(&self.images))
    }

    /// Checks arity, field and, for graded algebras, that images are homogeneous of the right degree.
    pub fn check_shape(&self, source: &PresentedAlgebra, target: &PresentedAlgebra) -> Result<()> {
        let snames = source.names();
        if self.images.len() != source.num_generators() {
            return Err(Error::DimensionMismatch(format!(
                "{} images for {} generators",
                self.images.len(),
                source.num_generators()
            )));
        }
        for img in &self.images {
            if img.field() != target.field() {
                return Err(Error::FieldMismatch(img.field().to_string(), target.field().to_string()));
            }
        }
        let (sp, tp) = (source.presentation(), target.presentation());
        if sp.graded && tp.graded {
            for (i, img) in self.images.iter().enumerate() {
                let nf = target.normal_form(img)?;
                if !nf.is_zero() && tp.homogeneous_degree(&nf) != Some(sp.generators[i].degree) {
                    return Err(Error::Invalid(format!(
                        "image of {} is not homogeneous of degree {}",
                        snames[i], sp.generators[i].degree
                    )));
                }
            }
        }
        Ok(())
    }

    /// First source relation whose image is nonzero, with that image.
    pub fn relation_defect(&self, source: &PresentedAlgebra, target: &PresentedAlgebra) -> Result<Option<(String, NcPoly)>> {
        let snames = source.names();
        for r in &source.presentation().relations {
            let img = self.apply(target, r)?;
            if !img.is_zero() {
                return Ok(Some((format!("relation {} does not map to 0", r.fmt_with(&snames)), img)));
            }
        }
        Ok(None)
    }

    /// Whether this map is an isomorphism of finite-dimensional algebras.
    pub fn is_isomorphism(&self, source: &PresentedAlgebra, target: &PresentedAlgebra) -> Result<bool> {
        self.check_shape(source, target)?;
        if self.relation_defect(source, target)?.is_some() {
            return Ok(false);
        }
        let (Some(m), Some(n)) = (source.dimension(), target.dimension()) else {
            return Err(Error::NotFiniteDimensional);
        };
        if m != n {
            return Ok(false);
        }
        let mut coords = WordCoords::default();
        let mut span = SparseEchelon::new(false);
        for w in source.basis()? {
            let img = self.apply(target, &NcPoly::word(source.field(), w))?;
            if span.insert(&coords.of(&img)).is_some() {
                return Ok(false);
            }
        }
        Ok(span.rank() == n)
    }
}

/// A claim taken on trust, with its justification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assertion {
    pub holds: bool,
    pub reason: String,
}

impl Assertion {
    pub fn yes(reason: &str) -> Assertion {
        Assertion { holds: true, reason: reason.to_string() }
    }

    pub fn no(reason: &str) -> Assertion {
        Assertion { holds: false, reason: reason.to_string() }
    }
}

/// `Z ↪ Q ↠ R` with `Z` commutative and `R` finite-dimensional.
#[derive(Clone, Debug)]
pub struct DeformationSequence {
    pub z: PresentedAlgebra,
    pub q: PresentedAlgebra,
    pub r: PresentedAlgebra,
    pub iota: AlgebraMapSpec,
    pub pi: AlgebraMapSpec,
    pub z_smooth: Option<Assertion>,
    pub q_finite_gldim: Option<Assertion>,
}

impl DeformationSequence {
    pub fn new(
        z: PresentedAlgebra,
        q: PresentedAlgebra,
        r: PresentedAlgebra,
        iota: AlgebraMapSpec,
        pi: AlgebraMapSpec,
    ) -> Result<DeformationSequence> {
        if z.field() != q.field() || q.field() != r.field() {
            return Err(Error::FieldMismatch(z.field().to_string(), r.field().to_string()));
        }
        if !r.is_finite_dimensional() {
            return Err(Error::NotFiniteDimensional);
        }
        iota.check_shape(&z, &q)?;
        pi.check_shape(&q, &r)?;
        Ok(DeformationSequence { z, q, r, iota, pi, z_smooth: None, q_finite_gldim: None })
    }
}

/// Where a witness element lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    Z,
    Q,
    R,
    /// `Q / QZ⁺`.
    QuotientByZ,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Z => "Z",
            Side::Q => "Q",
            Side::R => "R",
            Side::QuotientByZ => "Q/QZ⁺",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub detail: String,
    /// An element with nonzero normal form on the given side.
    pub element: Option<(Side, NcPoly)>,
    /// The element in the presentation grammar.
    pub rendered: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Verified { degree: u32, detail: String },
    Asserted { reason: String },
    Failed(Witness),
}

impl Status {
    pub fn is_failed(&self) -> bool {
        matches!(self, Status::Failed(_))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Status::Verified { .. } => "verified",
            Status::Asserted { .. } => "asserted",
            Status::Failed(_) => "failed",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckEntry {
    pub label: String,
    pub condition: String,
    pub status: Status,
}

/// Per-condition verdicts, in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub degree: u32,
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn new(degree: u32) -> CheckReport {
        CheckReport { degree, entries: Vec::new() }
    }

    fn push(&mut self, label: &str, condition: &str, status: Status) {
        self.entries.push(CheckEntry { label: label.to_string(), condition: condition.to_string(), status });
    }

    pub fn passed(&self) -> bool {
        !self.entries.iter().any(|e| e.status.is_failed())
    }

    pub fn failures(&self) -> Vec<&CheckEntry> {
        self.entries.iter().filter(|e| e.status.is_failed()).collect()
    }

    pub fn entry(&self, label: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    fn absorb(&mut self, prefix: &str, other: CheckReport) {
        for mut e in other.entries {
            e.label = format!("{prefix}{}", e.label);
            self.entries.push(e);
        }
    }
}

fn verified(d: u32, detail: impl Into<String>) -> Status {
    Status::Verified { degree: d, detail: detail.into() }
}

fn failed(detail: impl Into<String>, element: Option<(Side, NcPoly, &PresentedAlgebra)>) -> Status {
    let (element, rendered) = match element {
        Some((side, f, a)) => {
            let r = f.fmt_with(&a.names());
            (Some((side, f)), Some(r))
        }
        None => (None, None),
    };
    Status::Failed(Witness { detail: detail.into(), element, rendered })
}

/// Whitelisted Gröbner-basis shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShapePattern {
    FreeCommutative,
    LaurentPolynomial,
    QuantumAffine,
    /// Quadratic leading words with lower tails: an iterated Ore extension.
    Pbw,
    /// As `Pbw`, with some letters inverted.
    SkewLaurent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub pattern: ShapePattern,
    pub letters: usize,
    pub inverse_pairs: usize,
}

impl Shape {
    /// Upper bound for the global dimension.
    pub fn gldim_bound(&self) -> usize {
        self.letters - self.inverse_pairs
    }

    pub fn is_smooth_commutative(&self) -> bool {
        matches!(self.pattern, ShapePattern::FreeCommutative | ShapePattern::LaurentPolynomial)
    }
}

impl fmt::Display for ShapePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShapePattern::FreeCommutative => "free commutative polynomial algebra",
            ShapePattern::LaurentPolynomial => "Laurent polynomial algebra",
            ShapePattern::QuantumAffine => "quantum affine space",
            ShapePattern::Pbw => "PBW algebra with quadratic leading words",
            ShapePattern::SkewLaurent => "PBW algebra with inverted letters",
        })
    }
}

/// Reads the shape of a complete Gröbner basis: every pair of distinct letters
/// carries one straightening rule, or two rules making the letters mutually inverse.
pub fn classify_shape(a: &PresentedAlgebra) -> Option<Shape> {
    if !a.is_complete() {
        return None;
    }
    let n = a.num_generators();
    let rules = a.rules();
    let mut per_pair: alloc::collections::BTreeMap<(u32, u32), Vec<usize>> = alloc::collections::BTreeMap::new();
    for (k, r) in rules.iter().enumerate() {
        if r.lead.len() != 2 || r.lead[0] == r.lead[1] {
            return None;
        }
        let key = (r.lead[0].min(r.lead[1]), r.lead[0].max(r.lead[1]));
        per_pair.entry(key).or_default().push(k);
    }
    let mut commuting = true;
    let mut q_commuting = true;
    let mut inverse_of = vec![None; n];
    let mut pairs = 0;
    for i in 0..n as u32 {
        for j in i + 1..n as u32 {
            let Some(ks) = per_pair.get(&(i, j)) else { return None };
            match ks.as_slice() {
                [k] => {
                    let r = &rules[*k];
                    let swapped = vec![r.lead[1], r.lead[0]];
                    let mut terms = r.tail.terms();
                    match (terms.next(), terms.next()) {
                        (Some((w, c)), None) if *w == swapped => {
                            if !c.is_one() {
                                commuting = false;
                            }
                        }
                        _ => {
                            commuting = false;
                            q_commuting = false;
                        }
                    }
                }
                [k1, k2] => {
                    let constant = |k: &usize| {
                        let t = &rules[*k].tail;
                        t.len() == 1 && !t.constant_term().is_zero()
                    };
                    if !constant(k1) || !constant(k2) || inverse_of[i as usize].is_some() || inverse_of[j as usize].is_some() {
                        return None;
                    }
                    inverse_of[i as usize] = Some(j);
                    inverse_of[j as usize] = Some(i);
                    pairs += 1;
                }
                _ => return None,
            }
        }
    }
    let pattern = match (pairs > 0, commuting, q_commuting) {
        (false, true, _) => ShapePattern::FreeCommutative,
        (false, false, true) => ShapePattern::QuantumAffine,
        (false, false, false) => ShapePattern::Pbw,
        (true, true, _) => ShapePattern::LaurentPolynomial,
        (true, false, _) => ShapePattern::SkewLaurent,
    };
    Some(Shape { pattern, letters: n, inverse_pairs: pairs })
}

fn lift(f: &NcPoly, sigma: &[u32]) -> NcPoly {
    let images: Vec<NcPoly> = sigma.iter().map(|&i| NcPoly::var(f.field(), i)).collect();
    f.substitute(&images)
}

fn check_cutoff(s: &DeformationSequence, d: u32) -> Result<()> {
    for a in [&s.z, &s.q, &s.r] {
        for rel in &a.presentation().relations {
            let w = a.weight(rel);
            if w > d {
                return Err(Error::CutoffTooSmall { degree: w, cutoff: d });
            }
        }
    }
    Ok(())
}

fn check_injective(s: &DeformationSequence, d: u32) -> Result<Status> {
    let words: Vec<Word> = s.z.normal_words_upto(d)?.into_iter().flatten().collect();
    let mut coords = WordCoords::default();
    let mut e = SparseEchelon::new(true);
    for w in &words {
        let img = s.iota.apply(&s.q, &NcPoly::word(s.z.field(), w.clone()))?;
        if let Some(dep) = e.insert(&coords.of(&img)) {
            let mut z = NcPoly::word(s.z.field(), w.clone());
            for (k, c) in &dep {
                z = &z - &NcPoly::monomial(words[*k].clone(), c.clone());
            }
            let msg = format!("normal word {} of Z has a dependent image", z.fmt_with(&s.z.names()));
            return Ok(failed(msg, Some((Side::Z, z, &s.z))));
        }
    }
    Ok(verified(d, format!("{} normal words of Z have independent images", words.len())))
}

/// `σ`: each generator of `R` as the image of a generator of `Q`.
fn generator_lift(s: &DeformationSequence) -> Result<core::result::Result<Vec<u32>, Status>> {
    let mut sigma = Vec::new();
    let rnames = s.r.names();
    for j in 0..s.r.num_generators() as u32 {
        let target = s.r.normal_form(&NcPoly::var(s.r.field(), j))?;
        let mut found = None;
        for (i, img) in s.pi.images.iter().enumerate() {
            if s.r.normal_form(img)? == target {
                found = Some(i as u32);
                break;
            }
        }
        match found {
            Some(i) => sigma.push(i),
            None => {
                let msg = format!("generator {} of R is not the image of a generator of Q", rnames[j as usize]);
                return Ok(Err(failed(msg, Some((Side::R, target, &s.r)))));
            }
        }
    }
    Ok(Ok(sigma))
}

fn check_kernel(s: &DeformationSequence, sigma: &[u32], d: u32) -> Result<Status> {
    let zp = s.z.presentation();
    let field = s.q.field();
    let mut zplus = Vec::new();
    for i in 0..s.z.num_generators() {
        let eps = NcPoly::constant(zp.augmentation[i].clone());
        let image = &s.iota.images[i] - &eps;
        let down = s.pi.apply(&s.r, &image)?;
        if !down.is_zero() {
            let msg = format!("π(ι({}) − ε) ≠ 0, so QZ⁺ ⊄ ker π", zp.generators[i].name);
            return Ok(failed(msg, Some((Side::R, down, &s.r))));
        }
        zplus.push(image);
    }
    let big = s.q.with_relations(&zplus, d)?;
    let qnames = s.q.names();
    let mut kernel_gens: Vec<NcPoly> = s.r.presentation().relations.iter().map(|r| lift(r, sigma)).collect();
    for (i, img) in s.pi.images.iter().enumerate() {
        let back = lift(&s.r.normal_form(img)?, sigma);
        kernel_gens.push(&NcPoly::var(field, i as u32) - &back);
    }
    for g in &kernel_gens {
        let w = s.q.weight(g);
        if w > d {
            return Err(Error::CutoffTooSmall { degree: w, cutoff: d });
        }
        let nf = big.normal_form(g)?;
        if !nf.is_zero() {
            let msg = format!("{} lies in ker π but not in QZ⁺", g.fmt_with(&qnames));
            return Ok(failed(msg, Some((Side::QuotientByZ, nf, &s.q))));
        }
    }
    Ok(verified(d, format!("ker π and QZ⁺ agree: {} kernel generators reduce to 0 modulo QZ⁺", kernel_gens.len())))
}

fn check_flat(s: &DeformationSequence, sigma: &[u32], d: u32) -> Result<Status> {
    let field = s.q.field();
    let mut sub = Vec::new();
    for w in s.z.normal_words_upto(d)?.into_iter().flatten() {
        let weight = s.z.word_weight(&w);
        sub.push((weight, s.iota.apply(&s.q, &NcPoly::word(field, w))?));
    }
    let complement: Vec<NcPoly> = s.r.basis()?.into_iter().map(|w| lift(&NcPoly::word(field, w), sigma)).collect();
    let mut fw = free_basis_witness(&s.q, &sub, Some(&complement), d)?;
    if !(positively_graded(&s.z) && positively_graded(&s.r)) {
        fw.hilbert = None;
    }
    if let Some(msg) = &fw.failure {
        return Ok(failed(msg.clone(), fw.element.clone().map(|e| (Side::Q, e, &s.q))));
    }
    if let Some(h) = &fw.hilbert {
        if !h.holds {
            let msg = format!("HS_Q = {:?} but HS_Z·HS_R = {:?}", h.ambient, crate::freeness::convolve(&h.sub, &h.complement, h.ambient.len()));
            return Ok(failed(msg, None));
        }
    }
    let hs = if fw.hilbert.is_some() { "; HS_Q = HS_Z·HS_R" } else { "" };
    Ok(verified(d, format!("{}{hs}", fw.label())))
}

fn check_central_smooth(s: &DeformationSequence, d: u32) -> Result<Status> {
    let qnames = s.q.names();
    let znames = s.z.names();
    for (i, img) in s.iota.images.iter().enumerate() {
        let img = s.q.normal_form(img)?;
        if let Some(g) = s.q.central_witness(&img)? {
            let x = NcPoly::var(s.q.field(), g);
            let c = s.q.normal_form(&(&(&img * &x) - &(&x * &img)))?;
            let msg = format!("ι({}) = {} does not commute with {}", znames[i], img.fmt_with(&qnames), qnames[g as usize]);
            return Ok(failed(msg, Some((Side::Q, c, &s.q))));
        }
    }
    let central = format!("ι maps all {} generators of Z into the center of Q", s.iota.images.len());
    if let Some(a) = &s.z_smooth {
        return Ok(if a.holds {
            Status::Asserted { reason: format!("{central}; Z smooth by assertion: {}", a.reason) }
        } else {
            failed(format!("Z declared not smooth: {}", a.reason), None)
        });
    }
    match classify_shape(&s.z) {
        Some(shape) if shape.is_smooth_commutative() => {
            Ok(verified(d, format!("{central}; Z smooth: {} on {} letters", shape.pattern, shape.letters)))
        }
        _ => Ok(failed("Z is not certified smooth: not a free commutative or Laurent polynomial algebra, and no assertion given", None)),
    }
}

fn check_augmentations(s: &DeformationSequence, d: u32) -> Result<Status> {
    let (zp, qp, rp) = (s.z.presentation(), s.q.presentation(), s.r.presentation());
    for (i, img) in s.iota.images.iter().enumerate() {
        let diff = &qp.augment(img) - &zp.augmentation[i];
        if !diff.is_zero() {
            let msg = format!("ε_Q(ι({})) ≠ ε_Z({})", zp.generators[i].name, zp.generators[i].name);
            return Ok(failed(msg, Some((Side::Q, NcPoly::constant(diff), &s.q))));
        }
    }
    for (i, img) in s.pi.images.iter().enumerate() {
        let diff = &rp.augment(img) - &qp.augmentation[i];
        if !diff.is_zero() {
            let msg = format!("ε_R(π({})) ≠ ε_Q({})", qp.generators[i].name, qp.generators[i].name);
            return Ok(failed(msg, Some((Side::R, NcPoly::constant(diff), &s.r))));
        }
    }
    Ok(verified(d, "ε_Q∘ι = ε_Z and ε_R∘π = ε_Q on generators"))
}

/// Whether some `Λ` has `xΛ = ε(x)Λ` for all `x` and `ε(Λ) ≠ 0`.
fn has_normalized_integral(a: &PresentedAlgebra) -> Result<bool> {
    let fa = FiniteAlgebra::from_presented(a)?;
    let n = fa.dim();
    let field = a.field();
    let mut rows = Vec::new();
    for g in 0..a.num_generators() as u32 {
        let x = fa.coords(&NcPoly::var(field, g))?;
        let eps = fa.counit(&x);
        let l = fa.left_mult(&x);
        for i in 0..n {
            let mut row = l.row(i).to_vec();
            row[i] = &row[i] - &eps;
            rows.push(row);
        }
    }
    let m = Matrix::from_rows(field, n, rows);
    Ok(m.kernel().iter().any(|v| !fa.counit(v).is_zero()))
}

fn check_gldim(a: &PresentedAlgebra, assertion: Option<&Assertion>, hopf: bool, d: u32) -> Result<Status> {
    if let Some(shape) = classify_shape(a) {
        return Ok(verified(d, format!("{}: global dimension at most {}", shape.pattern, shape.gldim_bound())));
    }
    if let Some(a) = assertion {
        return Ok(if a.holds {
            Status::Asserted { reason: a.reason.clone() }
        } else {
            failed(format!("declared of infinite global dimension: {}", a.reason), None)
        });
    }
    if a.is_finite_dimensional() {
        let ext = ExtTable::from_presented(a, 1)?.dims();
        if ext[1] > 0 {
            let msg = format!("Ext¹(k, k) has dimension {}: a loop at the trivial module, so the global dimension is infinite", ext[1]);
            return Ok(failed(msg, None));
        }
        if hopf && has_normalized_integral(a)? {
            return Ok(verified(d, "semisimple Hopf algebra (normalized integral): global dimension 0"));
        }
    }
    Ok(failed("global dimension not certified: no whitelisted shape and no assertion", None))
}

fn check_plain(s: &DeformationSequence, d: u32, hopf: bool) -> Result<CheckReport> {
    check_cutoff(s, d)?;
    let mut rep = CheckReport::new(d);
    let injective = match s.iota.relation_defect(&s.z, &s.q)? {
        Some((m, img)) => failed(format!("ι is not an algebra map: {m}"), Some((Side::Q, img, &s.q))),
        None => check_injective(s, d)?,
    };
    rep.push("(a)", "ι is injective", injective);
    let sigma = match s.pi.relation_defect(&s.q, &s.r)? {
        Some((m, img)) => Err(failed(format!("π is not an algebra map: {m}"), Some((Side::R, img, &s.r)))),
        None => generator_lift(s)?,
    };
    let needs_b = || failed("needs a generator lift; see (b)", None);
    match &sigma {
        Ok(_) => rep.push("(b)", "π is surjective", verified(d, "every generator of R is the image of a generator of Q")),
        Err(st) => rep.push("(b)", "π is surjective", st.clone()),
    }
    match &sigma {
        Ok(sg) => rep.push("(c)", "ker π = QZ⁺", check_kernel(s, sg, d)?),
        Err(_) => rep.push("(c)", "ker π = QZ⁺", needs_b()),
    }
    match &sigma {
        Ok(sg) => rep.push("(e)", "Q is finitely generated and flat over Z", check_flat(s, sg, d)?),
        Err(_) => rep.push("(e)", "Q is finitely generated and flat over Z", needs_b()),
    }
    rep.push("(f)", "Z is smooth, finitely generated and central in Q", check_central_smooth(s, d)?);
    rep.push("(g)", "ι and π preserve the augmentations", check_augmentations(s, d)?);
    rep.push("(h)", "Q has finite global dimension", check_gldim(&s.q, s.q_finite_gldim.as_ref(), hopf, d)?);
    Ok(rep)
}

/// Checks the conditions of a deformation sequence up to internal degree `d`.
pub fn check_deformation_sequence(s: &DeformationSequence, d: u32) -> Result<CheckReport> {
    check_plain(s, d, false)
}

/// A Hopf algebra `K` acting on all three terms of a sequence.
#[derive(Clone, Debug)]
pub struct SequenceActions {
    pub on_z: HopfAction,
    pub on_q: HopfAction,
    pub on_r: HopfAction,
}

impl SequenceActions {
    pub fn new(k: &HopfPresentation, s: &DeformationSequence, z: &ActionSpec, q: &ActionSpec, r: &ActionSpec) -> Result<SequenceActions> {
        Ok(SequenceActions {
            on_z: HopfAction::new(k, &s.z, z)?,
            on_q: HopfAction::new(k, &s.q, q)?,
            on_r: HopfAction::new(k, &s.r, r)?,
        })
    }

    pub fn hopf(&self) -> &HopfPresentation {
        self.on_q.hopf()
    }
}

/// Letters of `K`, and all basis words when `K` is finite-dimensional.
fn test_elements(k: &HopfPresentation) -> Result<Vec<Word>> {
    let mut out: Vec<Word> = (0..k.num_generators() as u32).map(|a| vec![a]).collect();
    if k.algebra().is_finite_dimensional() {
        for w in k.algebra().basis()? {
            if !out.contains(&w) {
                out.push(w);
            }
        }
    }
    Ok(out)
}

fn check_linear(
    label: &str,
    map: &AlgebraMapSpec,
    source: &HopfAction,
    target: &HopfAction,
    side: Side,
    d: u32,
) -> Result<Status> {
    let (src, tgt) = (source.algebra(), target.algebra());
    let k = source.hopf();
    let knames = k.names();
    let elems = test_elements(k)?;
    let words: Vec<Word> = src.normal_words_upto(d)?.into_iter().flatten().collect();
    for kw in &elems {
        for w in &words {
            let f = NcPoly::word(src.field(), w.clone());
            let lhs = map.apply(tgt, &source.act_word(kw, &f)?)?;
            let rhs = target.act_word(kw, &map.apply(tgt, &f)?)?;
            let diff = tgt.normal_form(&(&lhs - &rhs))?;
            if !diff.is_zero() {
                let kword = crate::ncalg::fmt_word(kw, &knames);
                let msg = format!(
                    "{label}({kword}·{}) ≠ {kword}·{label}({})",
                    f.fmt_with(&src.names()),
                    f.fmt_with(&src.names())
                );
                return Ok(failed(msg, Some((side, diff, tgt))));
            }
        }
    }
    Ok(verified(d, format!("{} elements of the Hopf algebra on {} normal words", elems.len(), words.len())))
}

/// Checks the sequence, then that `ι` and `π` are `K`-module maps.
pub fn check_k_equivariant(s: &DeformationSequence, actions: &SequenceActions, d: u32) -> Result<CheckReport> {
    let mut rep = check_deformation_sequence(s, d)?;
    rep.push("K-linear ι", "ι is a K-module algebra map", check_linear("ι", &s.iota, &actions.on_z, &actions.on_q, Side::Q, d)?);
    rep.push("K-linear π", "π is a K-module algebra map", check_linear("π", &s.pi, &actions.on_q, &actions.on_r, Side::R, d)?);
    Ok(rep)
}

/// `W ↪ H ↠ K` of Hopf algebras, with `W` commutative and `K` finite-dimensional.
#[derive(Clone, Debug)]
pub struct HopfDefSequence {
    pub w: HopfPresentation,
    pub h: HopfPresentation,
    pub k: HopfPresentation,
    pub j: AlgebraMapSpec,
    pub p: AlgebraMapSpec,
    pub h_finite_gldim: Option<Assertion>,
}

impl HopfDefSequence {
    pub fn new(w: HopfPresentation, h: HopfPresentation, k: HopfPresentation, j: AlgebraMapSpec, p: AlgebraMapSpec) -> Result<HopfDefSequence> {
        let c = HopfDefSequence { w, h, k, j, p, h_finite_gldim: None };
        c.as_sequence()?;
        Ok(c)
    }

    pub fn as_sequence(&self) -> Result<DeformationSequence> {
        let mut s = DeformationSequence::new(
            self.w.algebra().clone(),
            self.h.algebra().clone(),
            self.k.algebra().clone(),
            self.j.clone(),
            self.p.clone(),
        )?;
        s.q_finite_gldim = self.h_finite_gldim.clone();
        Ok(s)
    }
}

fn map_tensor(t: &[(crate::Scalar, Word, Word)], f: &AlgebraMapSpec, field: &crate::Field) -> Tensor {
    let mut out = Tensor::new();
    for (c, u, v) in t {
        let fu = NcPoly::word(field, u.clone()).substitute(&f.images);
        let fv = NcPoly::word(field, v.clone()).substitute(&f.images);
        for (a, x) in fu.terms() {
            for (b, y) in fv.terms() {
                tensor_add(&mut out, (a.clone(), b.clone()), &(c * x) * y);
            }
        }
    }
    out
}

fn bialgebra_defect(name: &str, f: &AlgebraMapSpec, a: &HopfPresentation, b: &HopfPresentation) -> Result<Option<String>> {
    let names = a.names();
    for x in 0..a.num_generators() as u32 {
        let fx = &f.images[x as usize];
        let lhs = b.coproduct(fx)?;
        let rhs = tensor_normal_form(b.algebra(), b.algebra(), &map_tensor(a.coproduct_gen(x), f, a.field()))?;
        if lhs != rhs {
            return Ok(Some(format!("Δ({name}({})) ≠ ({name}⊗{name})Δ({})", names[x as usize], names[x as usize])));
        }
        if b.counit(fx) != a.counit(&NcPoly::var(a.field(), x)) {
            return Ok(Some(format!("ε({name}({})) ≠ ε({})", names[x as usize], names[x as usize])));
        }
    }
    Ok(None)
}

const SEP: u32 = u32::MAX;

fn check_coinvariants(c: &HopfDefSequence, d: u32) -> Result<Status> {
    let h = c.h.algebra();
    let k = c.k.algebra();
    let field = h.field();
    let words: Vec<Word> = h.normal_words_upto(d)?.into_iter().flatten().collect();
    let index: alloc::collections::BTreeMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut coords = WordCoords::default();
    let mut columns = Vec::with_capacity(words.len());
    let mut pimg: alloc::collections::BTreeMap<Word, NcPoly> = alloc::collections::BTreeMap::new();
    for w in &words {
        let delta = c.h.coproduct(&NcPoly::word(field, w.clone()))?;
        let mut col = Vec::new();
        for ((u, v), x) in &delta {
            if !pimg.contains_key(v) {
                pimg.insert(v.clone(), c.p.apply(k, &NcPoly::word(field, v.clone()))?);
            }
            for (kv, y) in pimg[v].terms() {
                let mut key = u.clone();
                key.push(SEP);
                key.extend_from_slice(kv);
                col.push((coords.id(&key), x * y));
            }
        }
        let mut key = w.clone();
        key.push(SEP);
        col.push((coords.id(&key), -field.one()));
        columns.push(sparse::collect(col));
    }
    let kernel = sparse::kernel(field, &columns);
    let mut kspan = SparseEchelon::new(false);
    for v in &kernel {
        kspan.insert(v);
    }
    let mut jspan = SparseEchelon::new(false);
    let wa = c.w.algebra();
    for u in wa.normal_words_upto(d)?.into_iter().flatten() {
        let img = c.j.apply(h, &NcPoly::word(field, u.clone()))?;
        if img.terms().any(|(w, _)| !index.contains_key(w)) {
            continue;
        }
        let v = sparse::collect(img.terms().map(|(w, x)| (index[w], x.clone())).collect::<Vec<_>>());
        if !kspan.contains(&v) {
            let msg = format!("ȷ({}) is not coinvariant", crate::ncalg::fmt_word(&u, &wa.names()));
            return Ok(failed(msg, Some((Side::Q, img, h))));
        }
        jspan.insert(&v);
    }
    for v in &kernel {
        if !jspan.contains(v) {
            let mut f = NcPoly::zero(field);
            for (i, x) in v {
                f.add_term(words[*i].clone(), x.clone());
            }
            let msg = format!("coinvariant {} is not in ȷ(W)", f.fmt_with(&h.names()));
            return Ok(failed(msg, Some((Side::Q, f, h))));
        }
    }
    Ok(verified(d, format!("H^co℘ = ȷ(W) in weight ≤ {d}: both of dimension {}", kernel.len())))
}

/// Checks a Hopf deformation sequence: the plain conditions, coinvariants,
/// and that `ȷ`, `℘` are bialgebra maps on generators.
pub fn check_hopf_def_sequence(c: &HopfDefSequence, d: u32) -> Result<CheckReport> {
    let s = c.as_sequence()?;
    let mut rep = check_plain(&s, d, true)?;
    rep.push("(d)", "W = H^co℘", check_coinvariants(c, d)?);
    let bialg = match (bialgebra_defect("ȷ", &c.j, &c.w, &c.h)?, bialgebra_defect("℘", &c.p, &c.h, &c.k)?) {
        (None, None) => verified(d, "ȷ and ℘ commute with Δ and ε on generators"),
        (Some(m), _) | (None, Some(m)) => failed(m, None),
    };
    rep.push("bialgebra", "ȷ and ℘ are bialgebra maps", bialg);
    let order = ["(a)", "(b)", "(c)", "(d)", "(e)", "(f)", "(g)", "(h)", "bialgebra"];
    rep.entries.sort_by_key(|e| order.iter().position(|l| *l == e.label).unwrap_or(order.len()));
    Ok(rep)
}

/// Checks both sequences and the compatibility conditions of an `H`-action.
pub fn check_c_equivariant(m: &DeformationSequence, c: &HopfDefSequence, actions: &SequenceActions, d: u32) -> Result<CheckReport> {
    if actions.hopf().field() != c.h.field() || actions.hopf().num_generators() != c.h.num_generators() {
        return Err(Error::Invalid("actions must be of the middle Hopf algebra of the sequence".into()));
    }
    let mut rep = CheckReport::new(d);
    rep.absorb("M:", check_deformation_sequence(m, d)?);
    rep.absorb("C:", check_hopf_def_sequence(c, d)?);
    let iota = check_linear("ι", &m.iota, &actions.on_z, &actions.on_q, Side::Q, d)?;
    let pi = check_linear("π", &m.pi, &actions.on_q, &actions.on_r, Side::R, d)?;
    let j = match (iota, pi) {
        (Status::Failed(w), _) | (_, Status::Failed(w)) => Status::Failed(w),
        (Status::Verified { detail, .. }, _) => verified(d, format!("ι and π are H-linear: {detail}")),
        (other, _) => other,
    };
    rep.push("(j)", "ι and π are morphisms of augmented H-module algebras", j);

    let q = &m.q;
    let qwords: Vec<Word> = q.normal_words_upto(d)?.into_iter().flatten().collect();
    let mut k_status = verified(d, format!("ȷ(W) acts by ε on {} normal words of Q", qwords.len()));
    'k: for (i, jw) in c.j.images.iter().enumerate() {
        let eps = c.w.counit(&NcPoly::var(c.w.field(), i as u32));
        for w in &qwords {
            let f = NcPoly::word(q.field(), w.clone());
            let diff = q.normal_form(&(&actions.on_q.act(jw, &f)? - &f.scale(&eps)))?;
            if !diff.is_zero() {
                let msg = format!(
                    "{}·{} ≠ ε({})·{}",
                    jw.fmt_with(&c.h.names()),
                    f.fmt_with(&q.names()),
                    c.w.names()[i],
                    f.fmt_with(&q.names())
                );
                k_status = failed(msg, Some((Side::Q, diff, q)));
                break 'k;
            }
        }
    }
    rep.push("(k)", "W acts trivially on Q", k_status);

    let z = &m.z;
    let zwords: Vec<Word> = z.normal_words_upto(d)?.into_iter().flatten().collect();
    let hnames = c.h.names();
    let mut l_status = verified(d, format!("H acts by ε on {} normal words of Z", zwords.len()));
    'l: for a in 0..c.h.num_generators() as u32 {
        let eps = c.h.counit(&NcPoly::var(c.h.field(), a));
        for w in &zwords {
            let f = NcPoly::word(z.field(), w.clone());
            let diff = z.normal_form(&(&actions.on_z.act_word(&[a], &f)? - &f.scale(&eps)))?;
            if !diff.is_zero() {
                let msg = format!("{}·{} ≠ ε({})·{}", hnames[a as usize], f.fmt_with(&z.names()), hnames[a as usize], f.fmt_with(&z.names()));
                l_status = failed(msg, Some((Side::Z, diff, z)));
                break 'l;
            }
        }
    }
    rep.push("(l)", "H acts trivially on Z", l_status);
    Ok(rep)
}

/// `Z ⊗ W` with the two factors commuting.
pub fn commuting_tensor(z: &PresentedAlgebra, w: &PresentedAlgebra, d: u32) -> Result<PresentedAlgebra> {
    let (zp, wp) = (z.presentation(), w.presentation());
    let nz = zp.generators.len() as u32;
    let mut gens: Vec<(String, u32)> = zp.generators.iter().map(|g| (g.name.clone(), g.degree)).collect();
    for g in &wp.generators {
        if zp.gen_index(&g.name).is_some() {
            return Err(Error::Invalid(format!("generator {} occurs in both factors", g.name)));
        }
        gens.push((g.name.clone(), g.degree));
    }
    let refs: Vec<(&str, u32)> = gens.iter().map(|(n, d)| (n.as_str(), *d)).collect();
    let field = z.field();
    let mut p = Presentation::new(field, &refs);
    p.graded = zp.graded && wp.graded;
    p.augmentation = zp.augmentation.iter().chain(wp.augmentation.iter()).cloned().collect();
    p.priority = zp.priority.iter().copied().chain(wp.priority.iter().map(|x| x + nz)).collect();
    let shift = |f: &NcPoly| {
        let mut out = NcPoly::zero(field);
        for (w, c) in f.terms() {
            out.add_term(w.iter().map(|x| x + nz).collect(), c.clone());
        }
        out
    };
    p.relations.extend(zp.relations.iter().cloned());
    p.relations.extend(wp.relations.iter().map(shift));
    for a in 0..nz {
        for b in 0..wp.generators.len() as u32 {
            let ab = NcPoly::word(field, vec![a, b + nz]);
            let ba = NcPoly::word(field, vec![b + nz, a]);
            p.relations.push(&ab - &ba);
        }
    }
    groebner_truncated(&p, d)
}

/// The sequence `Z ⊗ W ↪ Q ⋊ H ↠ R ⋊ K`, after checking the compatibility conditions.
pub fn smash_sequences(m: &DeformationSequence, c: &HopfDefSequence, actions: &SequenceActions, d: u32) -> Result<DeformationSequence> {
    let rep = check_c_equivariant(m, c, actions, d)?;
    if !rep.passed() {
        let labels: Vec<String> = rep.failures().iter().map(|e| e.label.clone()).collect();
        return Err(Error::Precondition(format!("compatibility check fails at {}", labels.join(", "))));
    }
    let zw = commuting_tensor(&m.z, c.w.algebra(), d)?;
    let qh = smash_from_action(&actions.on_q, d)?;
    let mut spec = ActionSpec::default();
    for a in 0..c.k.num_generators() as u32 {
        let target = c.k.algebra().normal_form(&NcPoly::var(c.k.field(), a))?;
        for (b, img) in c.p.images.iter().enumerate() {
            if c.k.algebra().normal_form(img)? == target {
                let row = (0..m.r.num_generators() as u32).map(|x| actions.on_r.image(b as u32, x).clone()).collect();
                spec.entries.insert(a, row);
                break;
            }
        }
    }
    let k_on_r = HopfAction::new(&c.k, &m.r, &spec)?;
    let rk = smash_from_action(&k_on_r, d)?;
    let mut iota_images: Vec<NcPoly> = m.iota.images.iter().map(|f| qh.embed_r(f)).collect();
    iota_images.extend(c.j.images.iter().map(|f| qh.embed_k(f)));
    let mut pi_images: Vec<NcPoly> = c.p.images.iter().map(|f| rk.embed_k(f)).collect();
    pi_images.extend(m.pi.images.iter().map(|f| rk.embed_r(f)));
    DeformationSequence::new(zw, qh.algebra, rk.algebra, AlgebraMapSpec::new(iota_images), AlgebraMapSpec::new(pi_images))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::builders::{polynomial_line, quantum_line};
    use crate::scalar::Field;

    fn qline(n: u32) -> DeformationSequence {
        let f = Field::cyclotomic(n).unwrap();
        let z = polynomial_line(&f, "Y", n, 12).unwrap();
        let q = polynomial_line(&f, "X", 1, 12).unwrap();
        let r = quantum_line(&f, n, &f.zeta().unwrap(), 12).unwrap();
        let iota = AlgebraMapSpec::parse(&z, &q, &[("Y", &format!("X^{n}"))]).unwrap();
        let pi = AlgebraMapSpec::by_name(&q, &r).unwrap();
        DeformationSequence::new(z, q, r, iota, pi).unwrap()
    }

    #[test]
    fn quantum_line_sequence_passes() {
        let rep = check_deformation_sequence(&qline(3), 12).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let labels: Vec<&str> = rep.entries.iter().map(|e| e.label.as_str()).collect();
        assert_eq!(labels, ["(a)", "(b)", "(c)", "(e)", "(f)", "(g)", "(h)"]);
        assert!(rep.entries.iter().all(|e| matches!(e.status, Status::Verified { degree: 12, .. })));
    }

    #[test]
    fn shapes() {
        let f = Field::rationals();
        let h = HopfPresentation::laurent(&f, "g", "G", 4).unwrap();
        let s = classify_shape(h.algebra()).unwrap();
        assert_eq!(s.pattern, ShapePattern::LaurentPolynomial);
        assert_eq!(s.gldim_bound(), 1);
        let r = quantum_line(&Field::cyclotomic(3).unwrap(), 3, &Field::cyclotomic(3).unwrap().zeta().unwrap(), 6).unwrap();
        assert!(classify_shape(&r).is_none());
    }

    #[test]
    fn corrupted_kernel_has_witness() {
        let s0 = qline(3);
        let f = s0.q.field().clone();
        let mut p = Presentation::new(&f, &[("X", 1)]);
        p.add_relation_str("X^2").unwrap();
        let r = groebner_truncated(&p, 12).unwrap();
        let pi = AlgebraMapSpec::by_name(&s0.q, &r).unwrap();
        let s = DeformationSequence::new(s0.z, s0.q, r, s0.iota, pi).unwrap();
        let rep = check_deformation_sequence(&s, 12).unwrap();
        let c = rep.entry("(c)").unwrap();
        let Status::Failed(w) = &c.status else { panic!("{c:?}") };
        assert_eq!(w.rendered.as_deref(), Some("X^2"));
        assert!(rep.entry("(e)").unwrap().status.is_failed());
    }
}
