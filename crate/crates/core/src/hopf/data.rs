//! Finite-dimensional Hopf algebras by structure constants.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::Matrix;
use crate::scalar::{Field, Scalar};
use crate::{Error, Result};

/// Structure constants on a basis `b_0, …, b_{n-1}`.
///
/// Tensors `b_j ⊗ b_k` are indexed by `j·n + k`.
#[derive(Clone, Debug)]
pub struct HopfAlgebraData {
    field: Field,
    labels: Vec<String>,
    mult: Vec<Vec<Vec<Scalar>>>,
    comult: Vec<Vec<Scalar>>,
    counit: Vec<Scalar>,
    antipode: Vec<Vec<Scalar>>,
    unit: usize,
}

/// Outcome of one axiom over all basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    /// Basis indices of a failing instance.
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfAxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl HopfAxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.witness.is_none())
    }

    pub fn failure(&self, axiom: &str) -> Option<&[usize]> {
        self.checks.iter().find(|c| c.axiom == axiom).and_then(|c| c.witness.as_deref())
    }
}

impl HopfAlgebraData {
    /// Assembles structure constants after checking shapes only.
    pub fn new(
        field: &Field,
        labels: Vec<String>,
        mult: Vec<Vec<Vec<Scalar>>>,
        comult: Vec<Vec<Scalar>>,
        counit: Vec<Scalar>,
        antipode: Vec<Vec<Scalar>>,
        unit: usize,
    ) -> Result<HopfAlgebraData> {
        let n = labels.len();
        let bad = |what: &str| Err(Error::DimensionMismatch(format!("{what} for a {n}-dimensional algebra")));
        if mult.len() != n || mult.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return bad("multiplication table");
        }
        if comult.len() != n || comult.iter().any(|v| v.len() != n * n) {
            return bad("comultiplication");
        }
        if counit.len() != n || antipode.len() != n || antipode.iter().any(|v| v.len() != n) || unit >= n {
            return bad("counit/antipode/unit");
        }
        Ok(HopfAlgebraData { field: field.clone(), labels, mult, comult, counit, antipode, unit })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn basis_mul(&self, i: usize, j: usize) -> &[Scalar] {
        &self.mult[i][j]
    }

    pub fn basis_coproduct(&self, i: usize) -> &[Scalar] {
        &self.comult[i]
    }

    pub fn basis_counit(&self, i: usize) -> &Scalar {
        &self.counit[i]
    }

    pub fn basis_antipode(&self, i: usize) -> &[Scalar] {
        &self.antipode[i]
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![self.field.zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in self.mult[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&xy * c);
                    }
                }
            }
        }
        out
    }

    fn linear(&self, a: &[Scalar], images: &[Vec<Scalar>], len: usize) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); len];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (k, c) in images[i].iter().enumerate() {
                if !c.is_zero() {
                    out[k] = &out[k] + &(x * c);
                }
            }
        }
        out
    }

    pub fn coproduct(&self, a: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        self.linear(a, &self.comult, n * n)
    }

    pub fn counit(&self, a: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for (x, e) in a.iter().zip(&self.counit) {
            acc = &acc + &(x * e);
        }
        acc
    }

    pub fn antipode(&self, a: &[Scalar]) -> Vec<Scalar> {
        self.linear(a, &self.antipode, self.dim())
    }

    /// `(Δ ⊗ id)Δ(b_i)` and `(id ⊗ Δ)Δ(b_i)` as vectors indexed by `(a·n + b)·n + c`.
    fn double_coproducts(&self, i: usize) -> (Vec<Scalar>, Vec<Scalar>) {
        let n = self.dim();
        let mut left = vec![self.field.zero(); n * n * n];
        let mut right = left.clone();
        for (t, c) in self.comult[i].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (j, k) = (t / n, t % n);
            for (s, d) in self.comult[j].iter().enumerate() {
                if !d.is_zero() {
                    let idx = s * n + k;
                    left[idx] = &left[idx] + &(c * d);
                }
            }
            for (s, d) in self.comult[k].iter().enumerate() {
                if !d.is_zero() {
                    let idx = j * n * n + s;
                    right[idx] = &right[idx] + &(c * d);
                }
            }
        }
        (left, right)
    }

    /// Terms `(c, a, b, d)` of `Δ²(b_i) = Σ c · b_a ⊗ b_b ⊗ b_d`.
    pub fn double_coproduct_terms(&self, i: usize) -> Vec<(Scalar, usize, usize, usize)> {
        let n = self.dim();
        let (left, _) = self.double_coproducts(i);
        left.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, c)| (c, t / (n * n), (t / n) % n, t % n))
            .collect()
    }

    /// Terms `(c, j, k)` of `Δ(b_i)`.
    pub fn coproduct_terms(&self, i: usize) -> Vec<(Scalar, usize, usize)> {
        let n = self.dim();
        self.comult[i]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, c)| (c.clone(), t / n, t % n))
            .collect()
    }

    fn tensor_mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![self.field.zero(); n * n];
        for (s, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (t, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                let l = &self.mult[s / n][t / n];
                let r = &self.mult[s % n][t % n];
                for (p, lc) in l.iter().enumerate() {
                    if lc.is_zero() {
                        continue;
                    }
                    let f = &ab * lc;
                    for (q, rc) in r.iter().enumerate() {
                        if !rc.is_zero() {
                            out[p * n + q] = &out[p * n + q] + &(&f * rc);
                        }
                    }
                }
            }
        }
        out
    }

    /// Checks every Hopf axiom on basis elements, recording a witness per failure.
    pub fn check_axioms(&self) -> HopfAxiomReport {
        let n = self.dim();
        let mut checks = Vec::new();
        let e = |i: usize| self.basis(i);

        let mut w = None;
        'a: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let l = self.mul(&self.mul(&e(i), &e(j)), &e(k));
                    let r = self.mul(&e(i), &self.mul(&e(j), &e(k)));
                    if l != r {
                        w = Some(vec![i, j, k]);
                        break 'a;
                    }
                }
            }
        }
        checks.push(AxiomCheck { axiom: "associativity", witness: w });

        let w = (0..n)
            .find(|&i| self.mul(&e(self.unit), &e(i)) != e(i) || self.mul(&e(i), &e(self.unit)) != e(i))
            .map(|i| vec![i]);
        checks.push(AxiomCheck { axiom: "unit", witness: w });

        let w = (0..n)
            .find(|&i| {
                let (l, r) = self.double_coproducts(i);
                l != r
            })
            .map(|i| vec![i]);
        checks.push(AxiomCheck { axiom: "coassociativity", witness: w });

        let w = (0..n)
            .find(|&i| {
                let mut l = vec![self.field.zero(); n];
                let mut r = vec![self.field.zero(); n];
                for (c, j, k) in self.coproduct_terms(i) {
                    l[k] = &l[k] + &(&c * &self.counit[j]);
                    r[j] = &r[j] + &(&c * &self.counit[k]);
                }
                l != e(i) || r != e(i)
            })
            .map(|i| vec![i]);
        checks.push(AxiomCheck { axiom: "counit", witness: w });

        let w = (0..n)
            .find(|&i| {
                let target: Vec<Scalar> = e(self.unit).iter().map(|x| x * &self.counit[i]).collect();
                let mut l = vec![self.field.zero(); n];
                let mut r = vec![self.field.zero(); n];
                for (c, j, k) in self.coproduct_terms(i) {
                    let sl = self.mul(&self.antipode[j], &e(k));
                    let sr = self.mul(&e(j), &self.antipode[k]);
                    for t in 0..n {
                        l[t] = &l[t] + &(&c * &sl[t]);
                        r[t] = &r[t] + &(&c * &sr[t]);
                    }
                }
                l != target || r != target
            })
            .map(|i| vec![i]);
        checks.push(AxiomCheck { axiom: "antipode", witness: w });

        let mut w = None;
        let mut one_one = vec![self.field.zero(); n * n];
        one_one[self.unit * n + self.unit] = self.field.one();
        if self.comult[self.unit] != one_one || !self.counit[self.unit].is_one() {
            w = Some(vec![self.unit]);
        }
        'b: for i in 0..n {
            if w.is_some() {
                break;
            }
            for j in 0..n {
                let ij = self.mul(&e(i), &e(j));
                let lhs = self.coproduct(&ij);
                let rhs = self.tensor_mul(&self.comult[i], &self.comult[j]);
                if lhs != rhs || self.counit(&ij) != &self.counit[i] * &self.counit[j] {
                    w = Some(vec![i, j]);
                    break 'b;
                }
            }
        }
        checks.push(AxiomCheck { axiom: "bialgebra", witness: w });
        HopfAxiomReport { checks }
    }

    /// Fails with the first violated axiom.
    pub fn validated(self) -> Result<HopfAlgebraData> {
        let r = self.check_axioms();
        if let Some(c) = r.checks.iter().find(|c| c.witness.is_some()) {
            let w: Vec<&str> = c.witness.as_ref().expect("failed").iter().map(|&i| self.labels[i].as_str()).collect();
            return Err(Error::Invalid(format!("{} fails at {:?}", c.axiom, w)));
        }
        Ok(self)
    }

    pub fn is_cocommutative(&self) -> bool {
        let n = self.dim();
        self.comult.iter().all(|d| (0..n * n).all(|t| d[t] == d[(t % n) * n + t / n]))
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.mult[i][j] == self.mult[j][i]))
    }

    pub fn is_grouplike(&self, i: usize) -> bool {
        let n = self.dim();
        let mut gg = vec![self.field.zero(); n * n];
        gg[i * n + i] = self.field.one();
        self.comult[i] == gg
    }

    /// Whether every basis element is group-like (a group algebra in its group basis).
    pub fn has_grouplike_basis(&self) -> bool {
        (0..self.dim()).all(|i| self.is_grouplike(i))
    }

    /// Basis index of `b_i b_j` when the product is a single basis element.
    pub fn product_index(&self, i: usize, j: usize) -> Option<usize> {
        let v = &self.mult[i][j];
        let mut nz = v.iter().enumerate().filter(|(_, c)| !c.is_zero());
        let (k, c) = nz.next()?;
        (nz.next().is_none() && c.is_one()).then_some(k)
    }

    /// A nonzero left integral `Λ` (`hΛ = ε(h)Λ`).
    pub fn left_integral(&self) -> Option<Vec<Scalar>> {
        let n = self.dim();
        let mut rows = Vec::new();
        for i in 0..n {
            let mut m = Matrix::zero(&self.field, n, n);
            for j in 0..n {
                let col = self.mul(&self.basis(i), &self.basis(j));
                for (k, c) in col.into_iter().enumerate() {
                    let v = if j == k { &c - &self.counit[i] } else { c };
                    m.set(k, j, v);
                }
            }
            for k in 0..n {
                rows.push(m.row(k).to_vec());
            }
        }
        let big = Matrix::from_rows(&self.field, n, rows);
        big.kernel().into_iter().next()
    }

    /// Maschke: semisimple iff `ε(Λ) ≠ 0`.
    pub fn is_semisimple(&self) -> bool {
        self.left_integral().is_some_and(|l| !self.counit(&l).is_zero())
    }
}

fn unit_vec(field: &Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

/// Group algebra from a multiplication table of basis indices.
pub fn group_algebra(field: &Field, labels: Vec<String>, table: &[Vec<usize>]) -> Result<HopfAlgebraData> {
    let n = labels.len();
    if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&k| k >= n)) {
        return Err(Error::DimensionMismatch("group table".into()));
    }
    let unit = (0..n)
        .find(|&e| (0..n).all(|i| table[e][i] == i && table[i][e] == i))
        .ok_or_else(|| Error::Invalid("group table has no identity".into()))?;
    let mut antipode = Vec::with_capacity(n);
    for i in 0..n {
        let inv = (0..n)
            .find(|&j| table[i][j] == unit && table[j][i] == unit)
            .ok_or_else(|| Error::Invalid(format!("{} has no inverse", labels[i])))?;
        antipode.push(unit_vec(field, n, inv));
    }
    let mult = (0..n).map(|i| (0..n).map(|j| unit_vec(field, n, table[i][j])).collect()).collect();
    let comult = (0..n).map(|i| unit_vec(field, n * n, i * n + i)).collect();
    let counit = vec![field.one(); n];
    HopfAlgebraData::new(field, labels, mult, comult, counit, antipode, unit)
}

/// `kZ_n` with basis `1, g, g^2, …`.
pub fn cyclic_group(field: &Field, n: usize) -> Result<HopfAlgebraData> {
    if n == 0 {
        return Err(Error::Invalid("cyclic group of order 0".into()));
    }
    let labels = (0..n).map(|k| power_label("g", k)).collect();
    let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    group_algebra(field, labels, &table)
}

/// Group algebra of `Z_{n_1} × … × Z_{n_r}`, basis ordered lexicographically.
pub fn abelian_group(field: &Field, orders: &[usize], names: &[&str]) -> Result<HopfAlgebraData> {
    if orders.len() != names.len() || orders.contains(&0) {
        return Err(Error::Invalid("abelian group orders".into()));
    }
    let elems = exponent_tuples(orders);
    let index = |t: &[usize]| elems.iter().position(|e| e == t).expect("tuple");
    let labels = elems.iter().map(|e| monomial_label(names, e)).collect();
    let table: Vec<Vec<usize>> = elems
        .iter()
        .map(|a| {
            elems
                .iter()
                .map(|b| {
                    let s: Vec<usize> = a.iter().zip(b).zip(orders).map(|((x, y), o)| (x + y) % o).collect();
                    index(&s)
                })
                .collect()
        })
        .collect();
    group_algebra(field, labels, &table)
}

/// `k^G` for abelian `G = Z_{n_1} × …`, realized in the basis of characters
/// (so it is the group algebra of the character group). Requires the field
/// to contain primitive `n_i`-th roots of unity.
pub fn dual_abelian(field: &Field, orders: &[usize]) -> Result<HopfAlgebraData> {
    for &o in orders {
        let has = match field.spec() {
            crate::FieldSpec::Prime(p) => (p - 1) % o as u64 == 0,
            crate::FieldSpec::Cyclotomic(m) => field.unit_exponent().is_multiple_of(o as u64) || (m as usize).is_multiple_of(o),
        };
        if !has {
            return Err(Error::InvalidField(format!("{field} lacks primitive {o}-th roots of unity")));
        }
    }
    let names: Vec<String> = (0..orders.len()).map(|i| format!("chi{}", i + 1)).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    abelian_group(field, orders, &refs)
}

fn exponent_tuples(orders: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for &o in orders {
        let mut next = Vec::new();
        for t in &out {
            for e in 0..o {
                let mut x = t.clone();
                x.push(e);
                next.push(x);
            }
        }
        out = next;
    }
    out
}

fn power_label(name: &str, k: usize) -> String {
    match k {
        0 => "1".to_string(),
        1 => name.to_string(),
        _ => format!("{name}^{k}"),
    }
}

fn monomial_label(names: &[&str], exps: &[usize]) -> String {
    let parts: Vec<String> = names.iter().zip(exps).filter(|(_, &e)| e > 0).map(|(n, &e)| power_label(n, e)).collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("")
    }
}

/// The symmetric group `S_3` with basis `e, (12), (13), (23), (123), (132)`.
pub fn symmetric_group_s3(field: &Field) -> Result<HopfAlgebraData> {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
    let labels = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"].iter().map(|s| s.to_string()).collect();
    let table: Vec<Vec<usize>> = perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| {
                    // (a∘b)(i) = a(b(i))
                    let c = [a[b[0]], a[b[1]], a[b[2]]];
                    perms.iter().position(|p| *p == c).expect("closed")
                })
                .collect()
        })
        .collect();
    group_algebra(field, labels, &table)
}

/// The Taft algebra `T_n(q)`: `g^n = 1`, `x^n = 0`, `gx = q·xg`,
/// `Δg = g⊗g`, `Δx = x⊗1 + g⊗x`. Basis `g^i x^j`, index `i·n + j`.
pub fn taft_hopf(field: &Field, n: usize, q: &Scalar) -> Result<HopfAlgebraData> {
    if q.field() != field {
        return Err(Error::FieldMismatch(q.field().to_string(), field.to_string()));
    }
    if n < 2 || q.order_of_unity()? != Some(n as u64) {
        return Err(Error::NotRootOfUnity(format!("{q} is not a primitive {n}-th root of unity")));
    }
    let dim = n * n;
    let idx = |i: usize, j: usize| (i % n) * n + j;
    let qinv = q.inv()?;
    // g^i x^j · g^k x^l = q^{-jk} g^{i+k} x^{j+l}
    let mut mult = vec![vec![vec![field.zero(); dim]; dim]; dim];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    if j + l < n {
                        mult[idx(i, j)][idx(k, l)][idx(i + k, j + l)] = qinv.pow((j * k) as u64);
                    }
                }
            }
        }
    }
    let labels: Vec<String> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let mut s = String::new();
            if i > 0 {
                s.push_str(&power_label("g", i));
            }
            if j > 0 {
                s.push_str(&power_label("x", j));
            }
            if s.is_empty() {
                s.push('1');
            }
            s
        })
        .collect();
    let proto = HopfAlgebraData {
        field: field.clone(),
        labels: labels.clone(),
        mult: mult.clone(),
        comult: vec![vec![field.zero(); dim * dim]; dim],
        counit: vec![field.zero(); dim],
        antipode: vec![vec![field.zero(); dim]; dim],
        unit: 0,
    };
    let g = proto.basis(idx(1, 0));
    let x = proto.basis(idx(0, 1));
    let one = proto.basis(0);
    let tensor = |a: &[Scalar], b: &[Scalar]| -> Vec<Scalar> {
        let mut t = vec![field.zero(); dim * dim];
        for (s, u) in a.iter().enumerate() {
            for (r, v) in b.iter().enumerate() {
                if !u.is_zero() && !v.is_zero() {
                    t[s * dim + r] = u * v;
                }
            }
        }
        t
    };
    let dg = tensor(&g, &g);
    let dx: Vec<Scalar> = tensor(&x, &one).iter().zip(tensor(&g, &x)).map(|(a, b)| a + &b).collect();
    let ginv = proto.basis(idx(n - 1, 0));
    let sx: Vec<Scalar> = proto.mul(&ginv, &x).iter().map(|c| -c).collect();
    let mut comult = Vec::with_capacity(dim);
    let mut counit = Vec::with_capacity(dim);
    let mut antipode = Vec::with_capacity(dim);
    for i in 0..n {
        for j in 0..n {
            let mut d = tensor(&one, &one);
            let mut s = one.clone();
            for _ in 0..i {
                d = proto.tensor_mul(&d, &dg);
                s = proto.mul(&ginv, &s);
            }
            let mut sxj = one.clone();
            for _ in 0..j {
                d = proto.tensor_mul(&d, &dx);
                sxj = proto.mul(&sx, &sxj);
            }
            // S(g^i x^j) = S(x)^j S(g)^i
            antipode.push(proto.mul(&sxj, &s));
            comult.push(d);
            counit.push(if j == 0 { field.one() } else { field.zero() });
        }
    }
    HopfAlgebraData::new(field, labels, mult, comult, counit, antipode, 0)
}

/// Sweedler's 4-dimensional Hopf algebra, the Taft algebra at `n = 2`.
pub fn sweedler(field: &Field) -> Result<HopfAlgebraData> {
    if field.characteristic() == 2 {
        return Err(Error::InvalidField("Sweedler algebra needs characteristic ≠ 2".into()));
    }
    taft_hopf(field, 2, &field.from_int(-1))
}
