//! Truncated two-sided Gröbner bases by overlap resolution.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{NcPoly, Presentation, Word};
use crate::scalar::{Field, Scalar};
use crate::{Error, Result};

/// Internal monomial: weight first, then letters as priority ranks, so the
/// derived `Ord` is the monomial order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Key {
    pub(crate) weight: u32,
    pub(crate) letters: Vec<u32>,
}

pub(crate) type IPoly = BTreeMap<Key, Scalar>;

fn add_to(p: &mut IPoly, k: Key, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match p.get_mut(&k) {
        Some(old) => {
            let s = &*old + &c;
            if s.is_zero() {
                p.remove(&k);
            } else {
                *old = s;
            }
        }
        None => {
            p.insert(k, c);
        }
    }
}

fn weight_of(letters: &[u32], wt: &[u32]) -> u32 {
    letters.iter().map(|&l| wt[l as usize]).sum()
}

/// `lead → tail`, with every tail term smaller than the lead.
#[derive(Clone, Debug)]
struct IRule {
    lead: Vec<u32>,
    weight: u32,
    tail: IPoly,
}

impl IRule {
    fn as_poly(&self, one: &Scalar) -> IPoly {
        let mut p: IPoly = self.tail.iter().map(|(k, c)| (k.clone(), -c)).collect();
        p.insert(Key { weight: self.weight, letters: self.lead.clone() }, one.clone());
        p
    }
}

#[derive(Clone, Debug)]
struct RuleSet {
    rules: Vec<Option<IRule>>,
    by_first: Vec<Vec<usize>>,
    by_last: Vec<Vec<usize>>,
}

impl RuleSet {
    fn new(letters: usize) -> RuleSet {
        RuleSet { rules: Vec::new(), by_first: vec![Vec::new(); letters], by_last: vec![Vec::new(); letters] }
    }

    fn push(&mut self, r: IRule) -> usize {
        let i = self.rules.len();
        self.by_first[r.lead[0] as usize].push(i);
        self.by_last[*r.lead.last().expect("nonempty lead") as usize].push(i);
        self.rules.push(Some(r));
        i
    }

    fn remove(&mut self, i: usize) -> IRule {
        let r = self.rules[i].take().expect("live rule");
        self.by_first[r.lead[0] as usize].retain(|&j| j != i);
        self.by_last[*r.lead.last().expect("nonempty lead") as usize].retain(|&j| j != i);
        r
    }

    fn get(&self, i: usize) -> &IRule {
        self.rules[i].as_ref().expect("live rule")
    }

    fn live(&self) -> impl Iterator<Item = (usize, &IRule)> {
        self.rules.iter().enumerate().filter_map(|(i, r)| r.as_ref().map(|r| (i, r)))
    }

    fn find_match(&self, letters: &[u32]) -> Option<(usize, usize)> {
        for pos in 0..letters.len() {
            for &ri in &self.by_first[letters[pos] as usize] {
                if letters[pos..].starts_with(&self.get(ri).lead) {
                    return Some((ri, pos));
                }
            }
        }
        None
    }

    /// Whether some lead is a suffix of `letters`.
    fn suffix_reducible(&self, letters: &[u32]) -> bool {
        let Some(&last) = letters.last() else {
            return false;
        };
        self.by_last[last as usize].iter().any(|&ri| letters.ends_with(&self.get(ri).lead))
    }

    fn reduce(&self, f: IPoly) -> IPoly {
        let mut work = f;
        let mut out = IPoly::new();
        while let Some((k, c)) = work.pop_last() {
            match self.find_match(&k.letters) {
                Some((ri, pos)) => {
                    let rule = self.get(ri);
                    let left = &k.letters[..pos];
                    let right = &k.letters[pos + rule.lead.len()..];
                    let base = k.weight - rule.weight;
                    for (tk, tc) in &rule.tail {
                        let mut letters = Vec::with_capacity(left.len() + tk.letters.len() + right.len());
                        letters.extend_from_slice(left);
                        letters.extend_from_slice(&tk.letters);
                        letters.extend_from_slice(right);
                        add_to(&mut work, Key { weight: base + tk.weight, letters }, &c * tc);
                    }
                }
                None => {
                    out.insert(k, c);
                }
            }
        }
        out
    }
}

/// `c · left · p · right`, accumulated into `out`.
fn sandwich(left: &[u32], lw: u32, p: &IPoly, right: &[u32], rw: u32, c: &Scalar, out: &mut IPoly) {
    for (k, v) in p {
        let mut letters = Vec::with_capacity(left.len() + k.letters.len() + right.len());
        letters.extend_from_slice(left);
        letters.extend_from_slice(&k.letters);
        letters.extend_from_slice(right);
        add_to(out, Key { weight: lw + k.weight + rw, letters }, c * v);
    }
}

/// Proper overlaps `u = a·b`, `v = b·c` with `a, b, c` nonempty; returns `|b|`.
fn overlaps(u: &[u32], v: &[u32]) -> Vec<usize> {
    (1..u.len().min(v.len())).filter(|&k| u[u.len() - k..] == v[..k]).collect()
}

/// S-polynomial `a·tail_v − tail_u·c` of the overlap of `u` and `v` along `k` letters.
fn s_poly(u: &IRule, v: &IRule, k: usize, wt: &[u32], one: &Scalar) -> (u32, IPoly) {
    let a = &u.lead[..u.lead.len() - k];
    let c = &v.lead[k..];
    let aw = weight_of(a, wt);
    let cw = weight_of(c, wt);
    let mut s = IPoly::new();
    sandwich(a, aw, &v.tail, &[], 0, one, &mut s);
    sandwich(&[], 0, &u.tail, c, cw, &-one, &mut s);
    (u.weight + cw, s)
}

/// Monomial-order data derived from a presentation.
#[derive(Clone, Debug)]
struct Order {
    rank_of: Vec<u32>,
    gen_of: Vec<u32>,
    wt: Vec<u32>,
}

impl Order {
    fn new(p: &Presentation) -> Order {
        let n = p.generators.len();
        let mut rank_of = vec![0u32; n];
        let mut gen_of = vec![0u32; n];
        for (pos, &g) in p.priority.iter().enumerate() {
            let r = (n - 1 - pos) as u32;
            rank_of[g as usize] = r;
            gen_of[r as usize] = g;
        }
        let wt = gen_of.iter().map(|&g| p.generators[g as usize].degree.max(1)).collect();
        Order { rank_of, gen_of, wt }
    }

    fn key(&self, w: &[u32]) -> Key {
        let letters: Vec<u32> = w.iter().map(|&g| self.rank_of[g as usize]).collect();
        Key { weight: weight_of(&letters, &self.wt), letters }
    }

    fn word(&self, k: &Key) -> Word {
        k.letters.iter().map(|&r| self.gen_of[r as usize]).collect()
    }

    fn to_ipoly(&self, f: &NcPoly) -> IPoly {
        f.terms().map(|(w, c)| (self.key(w), c.clone())).collect()
    }

    fn to_poly(&self, field: &Field, p: &IPoly) -> NcPoly {
        let mut out = NcPoly::zero(field);
        for (k, c) in p {
            out.add_term(self.word(k), c.clone());
        }
        out
    }
}

/// A rewrite rule `lead → tail` in generator indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lead: Word,
    pub tail: NcPoly,
}

/// A presentation together with a Gröbner basis valid up to a weight cutoff.
#[derive(Clone, Debug)]
pub struct PresentedAlgebra {
    pres: Presentation,
    order: Order,
    rules: RuleSet,
    cutoff: u32,
    complete: bool,
    finite: bool,
}

struct Builder<'a> {
    rules: RuleSet,
    wt: &'a [u32],
    one: Scalar,
    cutoff: u32,
    pending: BTreeMap<(u32, u64), IPoly>,
    seq: u64,
    skipped: bool,
}

impl Builder<'_> {
    fn queue(&mut self, weight: u32, p: IPoly) {
        if p.is_empty() {
            return;
        }
        self.pending.insert((weight, self.seq), p);
        self.seq += 1;
    }

    fn run(&mut self) -> Result<()> {
        while let Some((_, f)) = self.pending.pop_first() {
            let r = self.rules.reduce(f);
            let Some((lk, lc)) = r.last_key_value() else {
                continue;
            };
            if lk.letters.is_empty() {
                return Err(Error::Inconsistent);
            }
            let inv = lc.inv().expect("nonzero leading coefficient");
            let lead = lk.clone();
            let mut tail = IPoly::new();
            for (k, c) in r.iter().rev().skip(1) {
                tail.insert(k.clone(), -&(c * &inv));
            }
            let stale: Vec<usize> = self
                .rules
                .live()
                .filter(|(_, old)| old.lead.windows(lead.letters.len()).any(|w| w == lead.letters.as_slice()))
                .map(|(i, _)| i)
                .collect();
            for i in stale {
                let old = self.rules.remove(i);
                let p = old.as_poly(&self.one);
                self.queue(old.weight, p);
            }
            let new = IRule { lead: lead.letters, weight: lead.weight, tail };
            let ni = self.rules.push(new);
            let partners: Vec<usize> = self.rules.live().map(|(i, _)| i).collect();
            let mut new_s = Vec::new();
            for j in partners {
                for (a, b) in [(ni, j), (j, ni)] {
                    if a == b && j != ni {
                        continue;
                    }
                    let (u, v) = (self.rules.get(a), self.rules.get(b));
                    for k in overlaps(&u.lead, &v.lead) {
                        let ow = u.weight + weight_of(&v.lead[k..], self.wt);
                        if ow > self.cutoff {
                            self.skipped = true;
                            continue;
                        }
                        new_s.push(s_poly(u, v, k, self.wt, &self.one));
                    }
                    if a == b {
                        break;
                    }
                }
            }
            for (w, s) in new_s {
                self.queue(w, s);
            }
        }
        let ids: Vec<usize> = self.rules.live().map(|(i, _)| i).collect();
        for i in ids {
            let tail = core::mem::take(&mut self.rules.rules[i].as_mut().expect("live").tail);
            let reduced = self.rules.reduce(tail);
            self.rules.rules[i].as_mut().expect("live").tail = reduced;
        }
        Ok(())
    }

    /// Whether every overlap of the final rules, at any weight, resolves.
    fn all_overlaps_resolve(&self) -> bool {
        let live: Vec<&IRule> = self.rules.live().map(|(_, r)| r).collect();
        for u in &live {
            for v in &live {
                for k in overlaps(&u.lead, &v.lead) {
                    let (_, s) = s_poly(u, v, k, self.wt, &self.one);
                    if !self.rules.reduce(s).is_empty() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Computes a Gröbner basis of `p` resolving every overlap of weight at most `d`.
///
/// The result is flagged complete when every overlap of the final rules
/// resolves, whatever its weight.
pub fn groebner_truncated(p: &Presentation, d: u32) -> Result<PresentedAlgebra> {
    p.validate_shape()?;
    let order = Order::new(p);
    let one = p.field.one();
    let mut b = Builder {
        rules: RuleSet::new(p.generators.len()),
        wt: &order.wt,
        one,
        cutoff: d,
        pending: BTreeMap::new(),
        seq: 0,
        skipped: false,
    };
    for r in &p.relations {
        let w = p.weight(r);
        if w > d {
            return Err(Error::CutoffTooSmall { degree: w, cutoff: d });
        }
        b.queue(w, order.to_ipoly(r));
    }
    b.run()?;
    p.validate_augmentation()?;
    let complete = !b.skipped || b.all_overlaps_resolve();
    let rules = b.rules;
    let mut alg = PresentedAlgebra { pres: p.clone(), order, rules, cutoff: d, complete, finite: false };
    alg.finite = complete && !alg.has_infinite_normal_word();
    Ok(alg)
}

impl PresentedAlgebra {
    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn field(&self) -> &Field {
        &self.pres.field
    }

    pub fn names(&self) -> Vec<String> {
        self.pres.names()
    }

    pub fn num_generators(&self) -> usize {
        self.pres.generators.len()
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    /// True when the rules form a full (untruncated) Gröbner basis.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// True when the basis is complete and there are finitely many normal words.
    pub fn is_finite_dimensional(&self) -> bool {
        self.finite
    }

    /// The reduced rules, in increasing order of leading word.
    pub fn rules(&self) -> Vec<Rule> {
        let mut live: Vec<&IRule> = self.rules.live().map(|(_, r)| r).collect();
        live.sort_by(|a, b| (a.weight, &a.lead).cmp(&(b.weight, &b.lead)));
        live.into_iter()
            .map(|r| Rule {
                lead: r.lead.iter().map(|&l| self.order.gen_of[l as usize]).collect(),
                tail: self.order.to_poly(&self.pres.field, &r.tail),
            })
            .collect()
    }

    pub fn weight(&self, f: &NcPoly) -> u32 {
        self.pres.weight(f)
    }

    pub fn word_weight(&self, w: &[u32]) -> u32 {
        self.pres.weight_of(w)
    }

    pub fn degree_of(&self, w: &[u32]) -> u32 {
        self.pres.degree_of(w)
    }

    /// Compares two words in the monomial order.
    pub fn cmp_words(&self, a: &[u32], b: &[u32]) -> Ordering {
        self.order.key(a).cmp(&self.order.key(b))
    }

    /// The order-largest word of `f`.
    pub fn leading_word(&self, f: &NcPoly) -> Option<Word> {
        f.terms().map(|(w, _)| self.order.key(w)).max().map(|k| self.order.word(&k))
    }

    fn check_weight(&self, w: u32) -> Result<()> {
        if !self.complete && w > self.cutoff {
            return Err(Error::CutoffExceeded { degree: w, cutoff: self.cutoff });
        }
        Ok(())
    }

    pub fn normal_form(&self, f: &NcPoly) -> Result<NcPoly> {
        if f.field() != self.field() {
            return Err(Error::FieldMismatch(f.field().to_string(), self.field().to_string()));
        }
        self.check_weight(self.weight(f))?;
        let r = self.rules.reduce(self.order.to_ipoly(f));
        Ok(self.order.to_poly(&self.pres.field, &r))
    }

    /// Normal form of a product.
    pub fn mul(&self, a: &NcPoly, b: &NcPoly) -> Result<NcPoly> {
        self.normal_form(&(a * b))
    }

    pub fn is_normal_word(&self, w: &[u32]) -> bool {
        let k = self.order.key(w);
        self.rules.find_match(&k.letters).is_none()
    }

    fn normal_keys_upto(&self, d: u32) -> Vec<Vec<Key>> {
        let n = self.order.wt.len();
        let mut levels: Vec<Vec<Key>> = vec![Vec::new(); d as usize + 1];
        levels[0].push(Key { weight: 0, letters: Vec::new() });
        for w in 0..=d as usize {
            let cur = core::mem::take(&mut levels[w]);
            for k in &cur {
                for a in 0..n as u32 {
                    let nw = w as u32 + self.order.wt[a as usize];
                    if nw > d {
                        continue;
                    }
                    let mut letters = k.letters.clone();
                    letters.push(a);
                    if !self.rules.suffix_reducible(&letters) {
                        levels[nw as usize].push(Key { weight: nw, letters });
                    }
                }
            }
            levels[w] = cur;
        }
        for l in &mut levels {
            l.sort();
        }
        levels
    }

    /// Normal words of weight exactly `d`, in increasing monomial order.
    pub fn normal_words(&self, d: u32) -> Result<Vec<Word>> {
        self.check_weight(d)?;
        let levels = self.normal_keys_upto(d);
        Ok(levels[d as usize].iter().map(|k| self.order.word(k)).collect())
    }

    /// Normal words of each weight `0..=d`.
    pub fn normal_words_upto(&self, d: u32) -> Result<Vec<Vec<Word>>> {
        self.check_weight(d)?;
        Ok(self
            .normal_keys_upto(d)
            .iter()
            .map(|l| l.iter().map(|k| self.order.word(k)).collect())
            .collect())
    }

    /// Number of normal words of each weight `0..=d`.
    pub fn hilbert_series(&self, d: u32) -> Result<Vec<usize>> {
        self.check_weight(d)?;
        Ok(self.normal_keys_upto(d).iter().map(Vec::len).collect())
    }

    fn normal_keys_of_length(&self, len: usize) -> Vec<Vec<u32>> {
        let n = self.order.wt.len() as u32;
        let mut level: Vec<Vec<u32>> = vec![Vec::new()];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &level {
                for a in 0..n {
                    let mut x = w.clone();
                    x.push(a);
                    if !self.rules.suffix_reducible(&x) {
                        next.push(x);
                    }
                }
            }
            level = next;
        }
        level
    }

    /// Cycle detection on the graph of normal words of length `m`, where `m`
    /// is one less than the longest leading word.
    fn has_infinite_normal_word(&self) -> bool {
        let n = self.order.wt.len() as u32;
        let Some(m) = self.rules.live().map(|(_, r)| r.lead.len()).max().map(|l| l - 1) else {
            return n > 0;
        };
        let verts = self.normal_keys_of_length(m);
        let index: BTreeMap<&[u32], usize> = verts.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
        let succ = |i: usize| -> Vec<usize> {
            let mut out = Vec::new();
            for a in 0..n {
                let mut x = verts[i].clone();
                x.push(a);
                if !self.rules.suffix_reducible(&x) {
                    out.push(index[&x[1..]]);
                }
            }
            out
        };
        // 0 = unseen, 1 = on stack, 2 = done
        let mut color = vec![0u8; verts.len()];
        for s in 0..verts.len() {
            if color[s] != 0 {
                continue;
            }
            let mut stack: Vec<(usize, Vec<usize>)> = vec![(s, succ(s))];
            color[s] = 1;
            while let Some((v, next)) = stack.last_mut() {
                match next.pop() {
                    Some(w) => match color[w] {
                        1 => return true,
                        0 => {
                            color[w] = 1;
                            let sw = succ(w);
                            stack.push((w, sw));
                        }
                        _ => {}
                    },
                    None => {
                        color[*v] = 2;
                        stack.pop();
                    }
                }
            }
        }
        false
    }

    /// All normal words, sorted by monomial order; only for finite-dimensional algebras.
    pub fn basis(&self) -> Result<Vec<Word>> {
        if !self.finite {
            return Err(Error::NotFiniteDimensional);
        }
        let mut out = Vec::new();
        let mut len = 0;
        loop {
            let level = self.normal_keys_of_length(len);
            if level.is_empty() {
                break;
            }
            out.extend(level.into_iter().map(|letters| Key { weight: weight_of(&letters, &self.order.wt), letters }));
            len += 1;
        }
        out.sort();
        Ok(out.iter().map(|k| self.order.word(k)).collect())
    }

    pub fn dimension(&self) -> Option<usize> {
        self.basis().ok().map(|b| b.len())
    }

    /// First generator `g` with `f·g ≠ g·f`, if any.
    pub fn central_witness(&self, f: &NcPoly) -> Result<Option<u32>> {
        let maxw = self.order.wt.iter().copied().max().unwrap_or(0);
        self.check_weight(self.weight(f) + maxw)?;
        for g in 0..self.num_generators() as u32 {
            let x = NcPoly::var(self.field(), g);
            let c = &(f * &x) - &(&x * f);
            if !self.normal_form(&c)?.is_zero() {
                return Ok(Some(g));
            }
        }
        Ok(None)
    }

    pub fn is_central(&self, f: &NcPoly) -> Result<bool> {
        Ok(self.central_witness(f)?.is_none())
    }

    /// The same presentation with extra relations, truncated at `d`.
    pub fn with_relations(&self, extra: &[NcPoly], d: u32) -> Result<PresentedAlgebra> {
        let mut p = self.pres.clone();
        p.relations.extend(extra.iter().cloned());
        groebner_truncated(&p, d)
    }

    /// Whether `f` lies in the two-sided ideal generated by `gens`, decided by
    /// reduction against a Gröbner basis of the enlarged presentation.
    pub fn ideal_contains_truncated(&self, f: &NcPoly, gens: &[NcPoly], d: u32) -> Result<bool> {
        let w = self.weight(f);
        if w > d {
            return Err(Error::CutoffExceeded { degree: w, cutoff: d });
        }
        let big = self.with_relations(gens, d)?;
        Ok(big.normal_form(f)?.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jordan(p: u64, restricted: bool) -> PresentedAlgebra {
        let f = Field::prime(p).unwrap();
        let mut pr = Presentation::new(&f, &[("x", 1), ("y", 1)]);
        pr.set_priority(&["y", "x"]).unwrap();
        pr.add_relation_str("y*x - x*y + (1/2)*x^2").unwrap();
        if restricted {
            pr.add_relation(pr.parse(&alloc::format!("x^{p}")).unwrap());
            pr.add_relation(pr.parse(&alloc::format!("y^{p}")).unwrap());
        }
        groebner_truncated(&pr, 3 * p as u32).unwrap()
    }

    #[test]
    fn quantum_plane_single_rule() {
        let f = Field::cyclotomic(3).unwrap();
        let mut p = Presentation::new(&f, &[("X1", 1), ("X2", 1)]);
        p.add_relation_str("X1*X2 - zeta*X2*X1").unwrap();
        let a = groebner_truncated(&p, 6).unwrap();
        assert!(a.is_complete());
        assert_eq!(a.rules().len(), 1);
        let nf = a.normal_form(&p.parse("X1*X2").unwrap()).unwrap();
        assert_eq!(nf, p.parse("zeta*X2*X1").unwrap());
        assert_eq!(a.hilbert_series(6).unwrap(), vec![1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn jordan_words() {
        let j = jordan(3, false);
        assert!(j.is_complete());
        assert!(!j.is_finite_dimensional());
        assert_eq!(j.rules().len(), 1);
        let names = j.names();
        let w2: Vec<String> = j.normal_words(2).unwrap().iter().map(|w| super::super::fmt_word(w, &names)).collect();
        assert_eq!(w2, ["x^2", "x*y", "y^2"]);
        assert_eq!(j.hilbert_series(5).unwrap(), vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn restricted_jordan() {
        let j = jordan(3, true);
        assert!(j.is_finite_dimensional());
        assert_eq!(j.dimension(), Some(9));
        assert_eq!(j.hilbert_series(6).unwrap(), vec![1, 2, 3, 2, 1, 0, 0]);
    }

    #[test]
    fn inconsistency_and_cutoff() {
        let q = Field::rationals();
        let mut p = Presentation::new(&q, &[("a", 0), ("b", 0)]);
        p.graded = false;
        p.augmentation = vec![q.one(), q.one()];
        p.add_relation_str("a*b - 1").unwrap();
        p.add_relation_str("b*a - 1").unwrap();
        let a = groebner_truncated(&p, 6).unwrap();
        assert!(a.is_complete());
        p.add_relation_str("a - 2").unwrap();
        p.add_relation_str("b - 1").unwrap();
        assert_eq!(groebner_truncated(&p, 6).unwrap_err(), Error::Inconsistent);

        let mut x = Presentation::new(&q, &[("X", 1)]);
        x.add_relation_str("X^3").unwrap();
        assert_eq!(groebner_truncated(&x, 2).unwrap_err(), Error::CutoffTooSmall { degree: 3, cutoff: 2 });
        let free = groebner_truncated(&Presentation::new(&q, &[("X", 1)]), 5).unwrap();
        let x3 = x.parse("X^3").unwrap();
        assert!(free.ideal_contains_truncated(&x3, core::slice::from_ref(&x3), 5).unwrap());
        assert!(!free.ideal_contains_truncated(&x.parse("X^2").unwrap(), &[x3], 5).unwrap());
    }
}
