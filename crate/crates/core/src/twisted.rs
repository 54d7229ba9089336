//! Twisting maps `τ: H ⊗ Q → Q ⊗ H`, the twisted tensor product `Q ⊗_τ H`,
//! and freeness of `Q ⊗_τ H` over a twisted sub-product `Q' ⊗_τ H'`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::defseq::{CheckReport, Status, Witness};
use crate::freeness::{free_basis_witness, positively_graded, subalgebra_basis, HilbertCheck, WordCoords};
use crate::hopf::action::HopfAction;
use crate::hopf::presented::{tensor_add, tensor_normal_form, Tensor};
use crate::linalg::Matrix;
use crate::ncalg::{fmt_word, NcPoly, PresentedAlgebra, Word};
use crate::scalar::Scalar;
use crate::sparse::SparseEchelon;
use crate::{Error, Result};

/// Random triples checked beyond the exhaustive range.
pub const SAMPLES: usize = 200;
/// Seed of the sampled triples.
pub const SEED: u64 = 0x7a75;
const SEP: u32 = u32::MAX;

/// `τ` on pairs of normal words `(h, q)` with `wt h + wt q ≤ degree`;
/// each value is a tensor keyed by `(q', h')`.
#[derive(Clone, Debug)]
pub struct TwistingMap {
    h: PresentedAlgebra,
    q: PresentedAlgebra,
    degree: u32,
    table: BTreeMap<(Word, Word), Tensor>,
}

fn pairs_upto(h: &PresentedAlgebra, q: &PresentedAlgebra, d: u32) -> Result<Vec<(Word, Word)>> {
    let hw = h.normal_words_upto(d)?;
    let qw = q.normal_words_upto(d)?;
    let mut out = Vec::new();
    for (a, hs) in hw.iter().enumerate() {
        for qs in qw.iter().take(d as usize + 1 - a) {
            for x in hs {
                for y in qs {
                    out.push((x.clone(), y.clone()));
                }
            }
        }
    }
    Ok(out)
}

impl TwistingMap {
    /// `h ⊗ q ↦ q ⊗ h`: the plain tensor product.
    pub fn flip(h: &PresentedAlgebra, q: &PresentedAlgebra, d: u32) -> Result<TwistingMap> {
        let field = q.field();
        let mut table = BTreeMap::new();
        for (x, y) in pairs_upto(h, q, d)? {
            let mut t = Tensor::new();
            tensor_add(&mut t, (y.clone(), x.clone()), field.one());
            table.insert((x, y), t);
        }
        Ok(TwistingMap { h: h.clone(), q: q.clone(), degree: d, table })
    }

    /// `h ⊗ q ↦ Σ h₁·q ⊗ h₂` for a module-algebra action of `H` on `Q`.
    pub fn smash(action: &HopfAction, d: u32) -> Result<TwistingMap> {
        let hopf = action.hopf();
        let (h, q) = (hopf.algebra(), action.algebra());
        let field = q.field();
        let mut table = BTreeMap::new();
        for (x, y) in pairs_upto(h, q, d)? {
            let delta = hopf.coproduct(&NcPoly::word(field, x.clone()))?;
            let qy = NcPoly::word(field, y.clone());
            let mut t = Tensor::new();
            for ((u, v), c) in &delta {
                let moved = action.act_word(u, &qy)?;
                for (w, e) in moved.terms() {
                    tensor_add(&mut t, (w.clone(), v.clone()), c * e);
                }
            }
            table.insert((x, y), t);
        }
        Ok(TwistingMap { h: h.clone(), q: q.clone(), degree: d, table })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn h(&self) -> &PresentedAlgebra {
        &self.h
    }

    pub fn q(&self) -> &PresentedAlgebra {
        &self.q
    }

    /// Multiplies the value on the pair of normal words `(h, q)` by `c`.
    pub fn scale_entry(&mut self, h: &str, q: &str, c: &Scalar) -> Result<()> {
        let hw = word_of(&self.h, h)?;
        let qw = word_of(&self.q, q)?;
        let t = self
            .table
            .get_mut(&(hw, qw))
            .ok_or_else(|| Error::Invalid(format!("τ is not defined on {h} ⊗ {q}")))?;
        for v in t.values_mut() {
            *v = &*v * c;
        }
        t.retain(|_, v| !v.is_zero());
        Ok(())
    }

    /// `τ(h ⊗ q)` for normal words, or `None` beyond the degree.
    pub fn get(&self, h: &[u32], q: &[u32]) -> Option<&Tensor> {
        self.table.get(&(h.to_vec(), q.to_vec()))
    }

    /// `τ` extended bilinearly to `h ⊗ f`.
    fn apply(&self, h: &NcPoly, f: &NcPoly) -> Result<Option<Tensor>> {
        let h = self.h.normal_form(h)?;
        let f = self.q.normal_form(f)?;
        let mut out = Tensor::new();
        for (x, a) in h.terms() {
            for (y, b) in f.terms() {
                let Some(t) = self.get(x, y) else { return Ok(None) };
                for (k, c) in t {
                    tensor_add(&mut out, k.clone(), &(a * b) * c);
                }
            }
        }
        Ok(Some(out))
    }

    /// `(q ⊗ h)(q' ⊗ h') = q τ(h ⊗ q') h'` on `Q ⊗ H`, keys `(q, h)`.
    pub fn multiply(&self, x: &Tensor, y: &Tensor) -> Result<Option<Tensor>> {
        let mut out = Tensor::new();
        for ((q1, h1), a) in x {
            for ((q2, h2), b) in y {
                let Some(t) = self.get(h1, q2) else { return Ok(None) };
                for ((q3, h3), c) in t {
                    let mut qq = q1.clone();
                    qq.extend_from_slice(q3);
                    let mut hh = h3.clone();
                    hh.extend_from_slice(h2);
                    tensor_add(&mut out, (qq, hh), &(a * b) * c);
                }
            }
        }
        Ok(Some(tensor_normal_form(&self.q, &self.h, &out)?))
    }
}

fn word_of(a: &PresentedAlgebra, text: &str) -> Result<Word> {
    let f = a.normal_form(&a.presentation().parse(text)?)?;
    let mut terms = f.terms();
    match (terms.next(), terms.next()) {
        (Some((w, c)), None) if c.is_one() => Ok(w.clone()),
        _ => Err(Error::Invalid(format!("{text} is not a normal word"))),
    }
}

fn fmt_w(w: &[u32], names: &[String]) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        fmt_word(w, names)
    }
}

fn fmt_pair(q: &PresentedAlgebra, h: &PresentedAlgebra, t: &Tensor) -> String {
    if t.is_empty() {
        return "0".into();
    }
    let (qn, hn) = (q.names(), h.names());
    let parts: Vec<String> = t
        .iter()
        .map(|((a, b), c)| format!("({c})*{}⊗{}", fmt_w(a, &qn), fmt_w(b, &hn)))
        .collect();
    parts.join(" + ")
}

fn fail(detail: String) -> Status {
    Status::Failed(Witness { detail, element: None, rendered: None })
}

fn check_unital(t: &TwistingMap) -> Status {
    for ((x, y), v) in &t.table {
        if x.is_empty() || y.is_empty() {
            let mut want = Tensor::new();
            tensor_add(&mut want, (y.clone(), x.clone()), t.q.field().one());
            if *v != want {
                return fail(format!(
                    "τ({} ⊗ {}) = {}",
                    fmt_w(x, &t.h.names()),
                    fmt_w(y, &t.q.names()),
                    fmt_pair(&t.q, &t.h, v)
                ));
            }
        }
    }
    verified(t.degree, "τ(1 ⊗ q) = q ⊗ 1 and τ(h ⊗ 1) = 1 ⊗ h")
}

fn verified(d: u32, detail: impl Into<String>) -> Status {
    Status::Verified { degree: d, detail: detail.into() }
}

enum Triple {
    /// `(h, h', q)`: `τ(hh' ⊗ q)` against `τ` applied twice.
    Hhq(Word, Word, Word),
    /// `(h, q, q')`: `τ(h ⊗ qq')` against `τ` applied twice.
    Hqq(Word, Word, Word),
}

/// The difference of the two sides, or `None` when some value of `τ` is beyond the degree.
fn defect(t: &TwistingMap, triple: &Triple) -> Result<Option<Tensor>> {
    let field = t.q.field();
    let (lhs, rhs) = match triple {
        Triple::Hhq(a, b, y) => {
            let Some(inner) = t.get(b, y) else { return Ok(None) };
            let mut rhs = Tensor::new();
            for ((q1, h1), c) in inner {
                let Some(outer) = t.get(a, q1) else { return Ok(None) };
                for ((q2, h2), e) in outer {
                    let mut hh = h2.clone();
                    hh.extend_from_slice(h1);
                    tensor_add(&mut rhs, (q2.clone(), hh), c * e);
                }
            }
            let mut ab = a.clone();
            ab.extend_from_slice(b);
            let Some(lhs) = t.apply(&NcPoly::word(field, ab), &NcPoly::word(field, y.clone()))? else { return Ok(None) };
            (lhs, tensor_normal_form(&t.q, &t.h, &rhs)?)
        }
        Triple::Hqq(a, y, z) => {
            let Some(first) = t.get(a, y) else { return Ok(None) };
            let mut rhs = Tensor::new();
            for ((q1, h1), c) in first {
                let Some(second) = t.get(h1, z) else { return Ok(None) };
                for ((q2, h2), e) in second {
                    let mut qq = q1.clone();
                    qq.extend_from_slice(q2);
                    tensor_add(&mut rhs, (qq, h2.clone()), c * e);
                }
            }
            let mut yz = y.clone();
            yz.extend_from_slice(z);
            let Some(lhs) = t.apply(&NcPoly::word(field, a.clone()), &NcPoly::word(field, yz))? else { return Ok(None) };
            (lhs, tensor_normal_form(&t.q, &t.h, &rhs)?)
        }
    };
    let mut diff = lhs;
    for (k, c) in rhs {
        tensor_add(&mut diff, k, -c);
    }
    Ok(Some(diff))
}

fn describe(t: &TwistingMap, triple: &Triple, diff: &Tensor) -> String {
    let (hn, qn) = (t.h.names(), t.q.names());
    let (kind, a, b, c) = match triple {
        Triple::Hhq(a, b, y) => ("τ(hh' ⊗ q)", fmt_w(a, &hn), fmt_w(b, &hn), fmt_w(y, &qn)),
        Triple::Hqq(a, y, z) => ("τ(h ⊗ qq')", fmt_w(a, &hn), fmt_w(y, &qn), fmt_w(z, &qn)),
    };
    format!("{kind} differs from τ applied twice on the triple ({a}, {b}, {c}) by {}", fmt_pair(&t.q, &t.h, diff))
}

fn check_associative(t: &TwistingMap) -> Result<Status> {
    let exhaustive = t.degree.min(4);
    let hw: Vec<Word> = t.h.normal_words_upto(t.degree)?.into_iter().flatten().collect();
    let qw: Vec<Word> = t.q.normal_words_upto(t.degree)?.into_iter().flatten().collect();
    let wt_h = |w: &Word| t.h.word_weight(w);
    let wt_q = |w: &Word| t.q.word_weight(w);
    let mut triples = Vec::new();
    for a in hw.iter().filter(|a| wt_h(a) <= exhaustive) {
        for b in hw.iter().filter(|b| wt_h(a) + wt_h(b) <= exhaustive) {
            for y in qw.iter().filter(|y| wt_h(a) + wt_h(b) + wt_q(y) <= exhaustive) {
                triples.push(Triple::Hhq(a.clone(), b.clone(), y.clone()));
            }
        }
        for y in qw.iter().filter(|y| wt_h(a) + wt_q(y) <= exhaustive) {
            for z in qw.iter().filter(|z| wt_h(a) + wt_q(y) + wt_q(z) <= exhaustive) {
                triples.push(Triple::Hqq(a.clone(), y.clone(), z.clone()));
            }
        }
    }
    let exhaustive_count = triples.len();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    if !hw.is_empty() && !qw.is_empty() {
        let mut i = 0;
        let mut draws = 0;
        while i < SAMPLES && draws < 50 * SAMPLES {
            draws += 1;
            let a = &hw[rng.gen_range(0..hw.len())];
            let (u, v) = if i % 2 == 0 {
                (hw[rng.gen_range(0..hw.len())].clone(), qw[rng.gen_range(0..qw.len())].clone())
            } else {
                (qw[rng.gen_range(0..qw.len())].clone(), qw[rng.gen_range(0..qw.len())].clone())
            };
            let weight = wt_h(a) + if i % 2 == 0 { wt_h(&u) } else { wt_q(&u) } + wt_q(&v);
            if weight > t.degree {
                continue;
            }
            triples.push(if i % 2 == 0 { Triple::Hhq(a.clone(), u, v) } else { Triple::Hqq(a.clone(), u, v) });
            i += 1;
        }
    }
    let mut checked = 0;
    for tr in &triples {
        if let Some(diff) = defect(t, tr)? {
            checked += 1;
            if !diff.is_empty() {
                return Ok(fail(describe(t, tr, &diff)));
            }
        }
    }
    Ok(verified(
        t.degree,
        format!("{exhaustive_count} triples of weight ≤ {exhaustive} and {} sampled triples; {checked} within range", triples.len() - exhaustive_count),
    ))
}

/// Inverse of `τ` restricted to each total weight, or a weight where none exists.
fn invert(t: &TwistingMap) -> Result<core::result::Result<BTreeMap<(Word, Word), Tensor>, String>> {
    let field = t.q.field();
    let mut by_weight: BTreeMap<u32, Vec<(Word, Word)>> = BTreeMap::new();
    for (x, y) in t.table.keys() {
        by_weight.entry(t.h.word_weight(x) + t.q.word_weight(y)).or_default().push((x.clone(), y.clone()));
    }
    let mut inverse = BTreeMap::new();
    for (w, dom) in &by_weight {
        let cod: Vec<(Word, Word)> = dom.iter().map(|(x, y)| (y.clone(), x.clone())).collect();
        let col: BTreeMap<&(Word, Word), usize> = cod.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let n = dom.len();
        let mut rows = alloc::vec![alloc::vec![field.zero(); n]; n];
        for (j, k) in dom.iter().enumerate() {
            for (key, c) in &t.table[k] {
                let Some(&i) = col.get(key) else {
                    return Ok(Err(format!("τ does not preserve weight {w}")));
                };
                rows[i][j] = c.clone();
            }
        }
        let m = Matrix::from_rows(field, n, rows);
        let Some(inv) = m.inverse() else {
            return Ok(Err(format!("τ is singular in weight {w}")));
        };
        let id = Matrix::identity(field, n);
        if inv.mul(&m) != id || m.mul(&inv) != id {
            return Ok(Err(format!("inverse fails to be two-sided in weight {w}")));
        }
        for (j, k) in cod.iter().enumerate() {
            let mut v = Tensor::new();
            for (i, d) in dom.iter().enumerate() {
                let c = inv.get(i, j);
                if !c.is_zero() {
                    v.insert(d.clone(), c.clone());
                }
            }
            inverse.insert(k.clone(), v);
        }
    }
    Ok(Ok(inverse))
}

/// Validates unitality, associativity of the twisted product and invertibility.
pub fn validate_twisting_map(t: &TwistingMap) -> Result<CheckReport> {
    let mut rep = CheckReport::new(t.degree);
    let push = |rep: &mut CheckReport, label: &str, condition: &str, status: Status| {
        rep.entries.push(crate::defseq::CheckEntry { label: label.into(), condition: condition.into(), status });
    };
    push(&mut rep, "unitality", "τ is unital", check_unital(t));
    push(&mut rep, "associativity", "Q ⊗_τ H is associative", check_associative(t)?);
    let inv = match invert(t)? {
        Ok(inv) => verified(t.degree, format!("two-sided inverse on {} basis tensors", inv.len())),
        Err(m) => fail(m),
    };
    push(&mut rep, "invertibility", "τ is invertible", inv);
    Ok(rep)
}

/// The inverse of `τ` on all basis tensors in range.
pub fn inverse_twisting(t: &TwistingMap) -> Result<BTreeMap<(Word, Word), Tensor>> {
    invert(t)?.map_err(|_| Error::NotInvertible)
}

fn key(q: &[u32], h: &[u32]) -> Word {
    let mut k = q.to_vec();
    k.push(SEP);
    k.extend_from_slice(h);
    k
}

fn pure(q: &NcPoly, h: &NcPoly) -> Tensor {
    let mut t = Tensor::new();
    for (a, x) in q.terms() {
        for (b, y) in h.terms() {
            tensor_add(&mut t, (a.clone(), b.clone()), x * y);
        }
    }
    t
}

fn max_weight(a: &PresentedAlgebra, f: &NcPoly) -> u32 {
    f.terms().map(|(w, _)| a.word_weight(w)).max().unwrap_or(0)
}

/// `τ` restricted to `left ⊗ right` lands in the span of `target` pure tensors,
/// injectively; `flip` says which factor is the subalgebra.
fn restriction(
    t: &TwistingMap,
    hs: &[NcPoly],
    qs: &[NcPoly],
    q_sub: Option<&[(u32, NcPoly)]>,
    h_sub: Option<&[(u32, NcPoly)]>,
    d: u32,
) -> Result<Status> {
    let mut coords = WordCoords::default();
    let mut target = SparseEchelon::new(false);
    let hw: Vec<Word> = t.h.normal_words_upto(d)?.into_iter().flatten().collect();
    let qw: Vec<Word> = t.q.normal_words_upto(d)?.into_iter().flatten().collect();
    let field = t.q.field();
    let to_poly = |tensor: &Tensor, coords: &mut WordCoords| {
        crate::sparse::collect(tensor.iter().map(|((a, b), c)| (coords.id(&key(a, b)), c.clone())).collect::<Vec<_>>())
    };
    match (q_sub, h_sub) {
        (Some(qb), None) => {
            for (_, b) in qb {
                for w in &hw {
                    target.insert(&to_poly(&pure(b, &NcPoly::word(field, w.clone())), &mut coords));
                }
            }
        }
        (None, Some(hb)) => {
            for w in &qw {
                for (_, b) in hb {
                    target.insert(&to_poly(&pure(&NcPoly::word(field, w.clone()), b), &mut coords));
                }
            }
        }
        _ => return Err(Error::Invalid("exactly one factor is restricted".into())),
    }
    let mut images = SparseEchelon::new(false);
    let mut count = 0;
    for h in hs {
        for q in qs {
            if max_weight(&t.h, h) + max_weight(&t.q, q) > d {
                continue;
            }
            let Some(img) = t.apply(h, q)? else { continue };
            let v = to_poly(&img, &mut coords);
            if !target.contains(&v) {
                return Ok(fail(format!(
                    "τ({} ⊗ {}) = {} leaves the restricted product",
                    h.fmt_with(&t.h.names()),
                    q.fmt_with(&t.q.names()),
                    fmt_pair(&t.q, &t.h, &img)
                )));
            }
            if images.insert(&v).is_some() {
                return Ok(fail(format!("τ is not injective on {} ⊗ {}", h.fmt_with(&t.h.names()), q.fmt_with(&t.q.names()))));
            }
            count += 1;
        }
    }
    Ok(verified(d, format!("bijective on {count} basis tensors of weight ≤ {d}")))
}

/// Checks that `τ` restricts to bijections `H ⊗ Q' → Q' ⊗ H` and
/// `H' ⊗ Q → Q ⊗ H'`, and that `Q ⊗_τ H` is free over `Q' ⊗_τ H'`, up to weight `d`.
///
/// Products are kept when their value has weight at most `d`; with inverted
/// letters these can pass through `τ` in higher weight, so `τ` should be built to about `2d`.
///
/// `Q'` and `H'` are the subalgebras generated by the given homogeneous elements.
pub fn twisted_flatness_check(t: &TwistingMap, q_gens: &[NcPoly], h_gens: &[NcPoly], d: u32) -> Result<CheckReport> {
    if d > t.degree {
        return Err(Error::CutoffTooSmall { degree: d, cutoff: t.degree });
    }
    let field = t.q.field().clone();
    let q_sub = subalgebra_basis(&t.q, q_gens, d)?;
    let h_sub = subalgebra_basis(&t.h, h_gens, d)?;
    let hw: Vec<NcPoly> = t.h.normal_words_upto(d)?.into_iter().flatten().map(|w| NcPoly::word(&field, w)).collect();
    let qw: Vec<NcPoly> = t.q.normal_words_upto(d)?.into_iter().flatten().map(|w| NcPoly::word(&field, w)).collect();
    let q_elems: Vec<NcPoly> = q_sub.iter().map(|(_, f)| f.clone()).collect();
    let h_elems: Vec<NcPoly> = h_sub.iter().map(|(_, f)| f.clone()).collect();

    let mut rep = CheckReport::new(d);
    let push = |rep: &mut CheckReport, label: &str, condition: &str, status: Status| {
        rep.entries.push(crate::defseq::CheckEntry { label: label.into(), condition: condition.into(), status });
    };
    push(&mut rep, "(i) H⊗Q'", "τ restricts to a bijection H ⊗ Q' → Q' ⊗ H", restriction(t, &hw, &q_elems, Some(&q_sub), None, d)?);
    push(&mut rep, "(i) H'⊗Q", "τ restricts to a bijection H' ⊗ Q → Q ⊗ H'", restriction(t, &h_elems, &qw, None, Some(&h_sub), d)?);

    let cq = free_basis_witness(&t.q, &q_sub, None, d)?;
    let ch = free_basis_witness(&t.h, &h_sub, None, d)?;
    let free = if let Some(m) = cq.failure.as_ref().or(ch.failure.as_ref()) {
        fail(format!("a factor is not free over its subalgebra: {m}"))
    } else {
        freeness(t, &q_sub, &h_sub, &cq.basis, &ch.basis, d)?
    };
    push(&mut rep, "(ii) freeness", "Q ⊗_τ H is free over Q' ⊗_τ H'", free);
    Ok(rep)
}

fn freeness(
    t: &TwistingMap,
    q_sub: &[(u32, NcPoly)],
    h_sub: &[(u32, NcPoly)],
    cq: &[NcPoly],
    ch: &[NcPoly],
    d: u32,
) -> Result<Status> {
    let mut coords = WordCoords::default();
    let mut span = SparseEchelon::new(false);
    let to_vec = |tensor: &Tensor, coords: &mut WordCoords| {
        crate::sparse::collect(tensor.iter().map(|((a, b), c)| (coords.id(&key(a, b)), c.clone())).collect::<Vec<_>>())
    };
    let wq = |f: &NcPoly| max_weight(&t.q, f);
    let wh = |f: &NcPoly| max_weight(&t.h, f);
    let mut products = 0;
    for (_, b) in q_sub {
        for (_, b2) in h_sub {
            for c in cq {
                for c2 in ch {
                    if wq(b) + wq(c) > d || wh(b2) + wq(c) > t.degree {
                        continue;
                    }
                    let left = pure(b, b2);
                    let right = pure(c, c2);
                    let Some(prod) = t.multiply(&left, &right)? else { continue };
                    if prod.keys().any(|(x, y)| t.q.word_weight(x) + t.h.word_weight(y) > d) {
                        continue;
                    }
                    if span.insert(&to_vec(&prod, &mut coords)).is_some() {
                        return Ok(fail(format!(
                            "({}⊗{})·({}⊗{}) depends on earlier products",
                            b.fmt_with(&t.q.names()),
                            b2.fmt_with(&t.h.names()),
                            c.fmt_with(&t.q.names()),
                            c2.fmt_with(&t.h.names())
                        )));
                    }
                    products += 1;
                }
            }
        }
    }
    for (x, y) in pairs_upto(&t.q, &t.h, d)? {
        let v = alloc::vec![(coords.id(&key(&x, &y)), t.q.field().one())];
        if !span.contains(&v) {
            return Ok(fail(format!("{} ⊗ {} is not in the span", fmt_w(&x, &t.q.names()), fmt_w(&y, &t.h.names()))));
        }
    }
    let rank = cq.len() * ch.len();
    let mut detail = format!("freeness witnessed to degree {d} (rank {rank}); {products} products");
    if positively_graded(&t.q) && positively_graded(&t.h) {
        let len = d as usize + 1;
        let mut ambient = alloc::vec![0; len];
        for (x, y) in pairs_upto(&t.q, &t.h, d)? {
            ambient[(t.q.word_weight(&x) + t.h.word_weight(&y)) as usize] += 1;
        }
        let mut sub = alloc::vec![0; len];
        for (a, _) in q_sub {
            for (b, _) in h_sub {
                if ((a + b) as usize) < len {
                    sub[(a + b) as usize] += 1;
                }
            }
        }
        let mut comp = alloc::vec![0; len];
        for c in cq {
            for c2 in ch {
                let w = (wq(c) + wh(c2)) as usize;
                if w < len {
                    comp[w] += 1;
                }
            }
        }
        let hs = HilbertCheck::new(ambient, sub, comp);
        if !hs.holds {
            return Ok(fail(format!("Hilbert series do not factor: {:?} vs {:?} · {:?}", hs.ambient, hs.sub, hs.complement)));
        }
        detail.push_str("; Hilbert series factor");
    }
    Ok(verified(d, detail))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::action::ActionSpec;
    use crate::hopf::builders::polynomial_line;
    use crate::hopf::presented::HopfPresentation;
    use crate::scalar::Field;

    #[test]
    fn flip_and_perturbed_flip() {
        let f = Field::rationals();
        let h = polynomial_line(&f, "Y", 1, 6).unwrap();
        let q = polynomial_line(&f, "X", 1, 6).unwrap();
        let t = TwistingMap::flip(&h, &q, 6).unwrap();
        assert!(validate_twisting_map(&t).unwrap().passed());
        let mut bad = t.clone();
        bad.scale_entry("Y", "X", &f.from_int(2)).unwrap();
        let rep = validate_twisting_map(&bad).unwrap();
        assert!(rep.entry("unitality").unwrap().status.kind() == "verified");
        let Status::Failed(w) = &rep.entry("associativity").unwrap().status else { panic!("{rep:?}") };
        assert!(w.detail.contains("triple (Y, Y, X)"), "{}", w.detail);
        let rep = twisted_flatness_check(&t, &[q.presentation().parse("X^2").unwrap()], &[h.presentation().parse("Y").unwrap()], 6).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn smash_twisting_over_laurent() {
        let f = Field::cyclotomic(3).unwrap();
        let hopf = HopfPresentation::laurent(&f, "g", "G", 12).unwrap();
        let q = polynomial_line(&f, "X", 1, 12).unwrap();
        let spec = ActionSpec::parse(&hopf, &q, &[("g", &[("X", "zeta*X")]), ("G", &[("X", "zeta^2*X")])]).unwrap();
        let act = HopfAction::new(&hopf, &q, &spec).unwrap();
        let t = TwistingMap::smash(&act, 24).unwrap();
        let rep = validate_twisting_map(&t).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let inv = inverse_twisting(&t).unwrap();
        assert_eq!(inv.len(), t.table.len());
        let hp = hopf.algebra().presentation();
        let rep = twisted_flatness_check(
            &t,
            &[q.presentation().parse("X^3").unwrap()],
            &[hp.parse("g^3").unwrap(), hp.parse("G^3").unwrap()],
            12,
        )
        .unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(matches!(&rep.entry("(ii) freeness").unwrap().status, Status::Verified { detail, .. } if detail.contains("rank 9")));
        let all = twisted_flatness_check(&t, &[q.presentation().parse("X").unwrap()], &[hp.parse("g").unwrap(), hp.parse("G").unwrap()], 8).unwrap();
        assert!(matches!(&all.entry("(ii) freeness").unwrap().status, Status::Verified { detail, .. } if detail.contains("rank 1")));
        let bad = twisted_flatness_check(&t, &[q.presentation().parse("X + X^2").unwrap()], &[], 8);
        assert!(matches!(bad, Err(Error::InvalidSubalgebra(_))));
    }
}
