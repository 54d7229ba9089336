//! `Ext_A(k, k)`: dimensions, class bases, Yoneda products and generators.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::resolution::FreeResolution;
use crate::linalg::{EchelonBasis, Matrix};
use crate::ncalg::PresentedAlgebra;
use crate::scalar::{Field, Scalar};
use crate::sparse::{self, SVec};
use crate::{Error, Result};

/// A cocycle on the generators of `P_n`, homogeneous of internal degree `internal`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtClass {
    pub degree: usize,
    pub internal: u32,
    pub cocycle: Vec<Scalar>,
}

/// Coboundaries followed by the chosen class representatives.
#[derive(Clone, Debug)]
struct Coordinates {
    echelon: EchelonBasis,
    reps: Vec<usize>,
}

/// `ab` for basis classes `a = (degree, index)`, `b = (degree, index)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductEntry {
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub result: Vec<Scalar>,
}

/// Degrees in which new algebra generators of `Ext` appear, up to `up_to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorReport {
    pub degrees: Vec<usize>,
    pub counts: Vec<(usize, usize)>,
    pub up_to: usize,
}

impl GeneratorReport {
    pub fn certificate(&self) -> String {
        let ds: Vec<String> = self.degrees.iter().map(|d| format!("{d}")).collect();
        format!("generated in degrees {{{}}} up to {}", ds.join(", "), self.up_to)
    }
}

/// Chain map `G_i : P_{n+i} → P_i` lifting a cocycle of degree `n`.
#[derive(Clone, Debug)]
pub struct ChainLift {
    pub degree: usize,
    pub internal: u32,
    pub maps: Vec<Vec<SVec>>,
}

#[derive(Clone, Debug)]
pub struct ExtTable {
    resolution: FreeResolution,
    top: usize,
    classes: Vec<Vec<ExtClass>>,
    coords: Vec<Coordinates>,
    products: Vec<ProductEntry>,
    product_index: BTreeMap<((usize, usize), (usize, usize)), usize>,
}

fn restrict(m: &[Vec<Scalar>], rows: &[usize], cols: &[usize], field: &Field) -> Matrix {
    let mut out = Matrix::zero(field, rows.len(), cols.len());
    for (a, &i) in rows.iter().enumerate() {
        for (b, &j) in cols.iter().enumerate() {
            out.set(a, b, m[i][j].clone());
        }
    }
    out
}

impl ExtTable {
    /// Class bases of `Ext^n` for `n ≤ top`.
    pub fn new(resolution: FreeResolution, top: usize) -> Result<ExtTable> {
        let field = resolution.field().clone();
        let minimal = resolution.is_minimal();
        let have = resolution.length();
        if top > have || (!minimal && top + 1 > have) {
            return Err(Error::InsufficientDepth { have, need: if minimal { top } else { top + 1 } });
        }
        let mut classes = Vec::new();
        let mut coords = Vec::new();
        for n in 0..=top {
            let b = resolution.rank(n);
            let degs = resolution.generator_degrees(n).to_vec();
            let mut echelon = EchelonBasis::new(&field, b);
            let mut reps = Vec::new();
            let mut list = Vec::new();
            let ts: BTreeSet<u32> = degs.iter().copied().collect();
            let into = |local: &[usize], v: &[Scalar]| {
                let mut full = vec![field.zero(); b];
                for (k, &i) in local.iter().enumerate() {
                    full[i] = v[k].clone();
                }
                full
            };
            if n > 0 && !minimal {
                let e = resolution.epsilon_matrix(n);
                for i in 0..resolution.rank(n - 1) {
                    let col: Vec<Scalar> = (0..b).map(|j| e[j][i].clone()).collect();
                    echelon.insert(&col);
                }
            }
            for t in ts {
                let here: Vec<usize> = (0..b).filter(|&j| degs[j] == t).collect();
                let cocycles: Vec<Vec<Scalar>> = if minimal {
                    (0..here.len())
                        .map(|k| {
                            let mut v = vec![field.zero(); here.len()];
                            v[k] = field.one();
                            v
                        })
                        .collect()
                } else {
                    let e = resolution.epsilon_matrix(n + 1);
                    let next: Vec<usize> =
                        (0..resolution.rank(n + 1)).filter(|&j| resolution.generator_degrees(n + 1)[j] == t).collect();
                    if next.is_empty() {
                        (0..here.len())
                            .map(|k| {
                                let mut v = vec![field.zero(); here.len()];
                                v[k] = field.one();
                                v
                            })
                            .collect()
                    } else {
                        restrict(&e, &next, &here, &field).kernel()
                    }
                };
                for z in cocycles {
                    let full = into(&here, &z);
                    let idx = echelon.inserted_count();
                    if echelon.insert(&full) {
                        reps.push(idx);
                        list.push(ExtClass { degree: n, internal: t, cocycle: full });
                    }
                }
            }
            classes.push(list);
            coords.push(Coordinates { echelon, reps });
        }
        Ok(ExtTable { resolution, top, classes, coords, products: Vec::new(), product_index: BTreeMap::new() })
    }

    pub fn from_presented(a: &PresentedAlgebra, top: usize) -> Result<ExtTable> {
        ExtTable::new(FreeResolution::from_presented(a, top)?, top)
    }

    pub fn resolution(&self) -> &FreeResolution {
        &self.resolution
    }

    pub fn field(&self) -> &Field {
        self.resolution.field()
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn dims(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn classes(&self, n: usize) -> &[ExtClass] {
        &self.classes[n]
    }

    /// Multiplicities of internal degrees in `Ext^n`.
    pub fn internal_dims(&self, n: usize) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for c in &self.classes[n] {
            *m.entry(c.internal).or_insert(0) += 1;
        }
        m
    }

    /// Coordinates of a cocycle of degree `n` in the class basis.
    pub fn class_coords(&self, n: usize, cocycle: &[Scalar]) -> Result<Vec<Scalar>> {
        let c = &self.coords[n];
        let all = c.echelon.express(cocycle).ok_or_else(|| Error::Invalid(format!("not a cocycle of degree {n}")))?;
        Ok(c.reps.iter().map(|&i| all[i].clone()).collect())
    }

    /// Cocycle with the given class coordinates.
    pub fn cocycle_of(&self, n: usize, coords: &[Scalar]) -> Vec<Scalar> {
        let b = self.resolution.rank(n);
        let mut out = vec![self.field().zero(); b];
        for (c, cls) in coords.iter().zip(&self.classes[n]) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(&cls.cocycle) {
                *o = &*o + &(c * x);
            }
        }
        out
    }

    /// Lifts the cocycle `g` (degree `n`, internal degree `t`) to a chain map
    /// of depth `depth`. `perturb(i, j, t)` may return `x ∈ P_{i+1}`; then
    /// `d_{i+1}(x)` is added to `G_i(e_j)`, giving another valid lift.
    pub fn lift_with(
        &self,
        n: usize,
        t: u32,
        g: &[Scalar],
        depth: usize,
        mut perturb: impl FnMut(usize, usize, u32) -> SVec,
    ) -> Result<ChainLift> {
        let res = &self.resolution;
        if n + depth > res.length() {
            return Err(Error::InsufficientDepth { have: res.length(), need: n + depth });
        }
        let dim = res.algebra().dim();
        let unit = res.algebra().unit();
        let mut maps: Vec<Vec<SVec>> = Vec::with_capacity(depth + 1);
        let mut adjust = |i: usize, j: usize, t_target: u32, v: SVec| -> SVec {
            if i + 1 > res.length() {
                return v;
            }
            let x = perturb(i, j, t_target);
            if x.is_empty() {
                return v;
            }
            sparse::axpy(&v, &res.field().one(), &res.apply(i + 1, &x))
        };
        let g0: Vec<SVec> = (0..res.rank(n))
            .map(|j| {
                let base = if g[j].is_zero() { SVec::new() } else { vec![(unit, g[j].clone())] };
                let tj = res.generator_degrees(n)[j];
                if tj < t {
                    return base;
                }
                adjust(0, j, tj - t, base)
            })
            .collect();
        maps.push(g0);
        for i in 1..=depth {
            let mut row = Vec::with_capacity(res.rank(n + i));
            for j in 0..res.rank(n + i) {
                let mut y = SVec::new();
                for (idx, c) in res.differential(n + i, j) {
                    let (l, k) = (idx / dim, idx % dim);
                    let prev = &maps[i - 1][l];
                    if prev.is_empty() {
                        continue;
                    }
                    y = sparse::axpy(&y, c, &res.left_mul_basis(k, prev));
                }
                let tj = res.generator_degrees(n + i)[j];
                if tj < t {
                    if !y.is_empty() {
                        return Err(Error::Invalid("inhomogeneous lift".into()));
                    }
                    row.push(SVec::new());
                    continue;
                }
                let x = res.solve(i, tj - t, &y)?;
                row.push(adjust(i, j, tj - t, x));
            }
            maps.push(row);
        }
        Ok(ChainLift { degree: n, internal: t, maps })
    }

    pub fn lift(&self, class: &ExtClass, depth: usize) -> Result<ChainLift> {
        self.lift_with(class.degree, class.internal, &class.cocycle, depth, |_, _, _| SVec::new())
    }

    /// `f ∘ G_m` where `f` has degree `m` and `G` lifts a class of degree `n`.
    pub fn compose_at(&self, m: usize, f: &[Scalar], lift: &ChainLift) -> Result<Vec<Scalar>> {
        if m >= lift.maps.len() {
            return Err(Error::InsufficientDepth { have: lift.degree + lift.maps.len() - 1, need: lift.degree + m });
        }
        let dim = self.resolution.algebra().dim();
        let aug = self.resolution.algebra().augmentation();
        Ok(lift.maps[m]
            .iter()
            .map(|v| {
                let mut acc = self.field().zero();
                for (idx, c) in v {
                    let e = &aug[idx % dim];
                    if !e.is_zero() {
                        acc = &acc + &(&(c * e) * &f[idx / dim]);
                    }
                }
                acc
            })
            .collect())
    }

    /// Yoneda product `ab` in class coordinates of `Ext^{|a|+|b|}`.
    pub fn yoneda_product(&self, a: &ExtClass, b: &ExtClass) -> Result<Vec<Scalar>> {
        let d = a.degree + b.degree;
        if d > self.top {
            return Err(Error::InsufficientDepth { have: self.top, need: d });
        }
        let lift = self.lift(b, a.degree)?;
        let h = self.compose_at(a.degree, &a.cocycle, &lift)?;
        self.class_coords(d, &h)
    }

    /// All products of basis classes landing in degrees `≤ top`.
    pub fn compute_products(&mut self) -> Result<()> {
        if !self.products.is_empty() {
            return Ok(());
        }
        let mut out = Vec::new();
        for n in 0..=self.top {
            for (j, b) in self.classes[n].iter().enumerate() {
                let depth = self.top - n;
                let lift = self.lift(b, depth)?;
                for m in 0..=depth {
                    for (i, a) in self.classes[m].iter().enumerate() {
                        let h = self.compose_at(m, &a.cocycle, &lift)?;
                        let result = self.class_coords(m + n, &h)?;
                        out.push(ProductEntry { left: (m, i), right: (n, j), result });
                    }
                }
            }
        }
        out.sort_by_key(|p| (p.left.0 + p.right.0, p.left, p.right));
        self.product_index = out.iter().enumerate().map(|(k, p)| ((p.left, p.right), k)).collect();
        self.products = out;
        Ok(())
    }

    pub fn products(&self) -> &[ProductEntry] {
        &self.products
    }

    /// Product of basis classes from the computed table.
    pub fn product(&self, left: (usize, usize), right: (usize, usize)) -> Option<&[Scalar]> {
        self.product_index.get(&(left, right)).map(|&k| self.products[k].result.as_slice())
    }

    /// Degrees where the products of lower-degree classes fail to span `Ext^d`.
    pub fn detect_generators(&mut self) -> Result<GeneratorReport> {
        self.compute_products()?;
        let dims = self.dims();
        let mut degrees = Vec::new();
        let mut counts = Vec::new();
        for d in 1..=self.top {
            let mut span = EchelonBasis::new(self.field(), dims[d]);
            for p in &self.products {
                if p.left.0 >= 1 && p.right.0 >= 1 && p.left.0 + p.right.0 == d {
                    span.insert(&p.result);
                }
            }
            if span.rank() < dims[d] {
                degrees.push(d);
                counts.push((d, dims[d] - span.rank()));
            }
        }
        Ok(GeneratorReport { degrees, counts, up_to: self.top })
    }

    /// A pair of basis classes with `ab ≠ (−1)^{|a||b|} ba`.
    pub fn graded_commutativity_witness(&mut self) -> Result<Option<((usize, usize), (usize, usize))>> {
        self.compute_products()?;
        for p in &self.products {
            let (m, n) = (p.left.0, p.right.0);
            let other = self.product(p.right, p.left).expect("both orders computed");
            let sign = if (m * n) % 2 == 1 { -self.field().one() } else { self.field().one() };
            if p.result.iter().zip(other).any(|(x, y)| *x != &sign * y) {
                return Ok(Some((p.left, p.right)));
            }
        }
        Ok(None)
    }

    /// A basis triple with `(ab)c ≠ a(bc)`, or a class with `1·a ≠ a` or `a·1 ≠ a`.
    pub fn associativity_witness(&mut self) -> Result<Option<String>> {
        self.compute_products()?;
        let field = self.field().clone();
        let expand = |this: &ExtTable, coords: &[Scalar], n: usize, right: (usize, usize), left_side: bool| {
            let d = n + right.0;
            let mut acc = vec![field.zero(); this.classes[d].len()];
            for (k, c) in coords.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let r = if left_side { this.product((n, k), right) } else { this.product(right, (n, k)) };
                for (a, x) in acc.iter_mut().zip(r.expect("product computed")) {
                    *a = &*a + &(c * x);
                }
            }
            acc
        };
        for n in 0..=self.top {
            for i in 0..self.classes[n].len() {
                let mut e = vec![field.zero(); self.classes[n].len()];
                e[i] = field.one();
                if self.product((0, 0), (n, i)) != Some(e.as_slice()) || self.product((n, i), (0, 0)) != Some(e.as_slice()) {
                    return Ok(Some(format!("unit law fails on class ({n}, {i})")));
                }
            }
        }
        for p in &self.products {
            let (a, b) = (p.left, p.right);
            for c_deg in 0..=self.top.saturating_sub(a.0 + b.0) {
                for c in 0..self.classes[c_deg].len() {
                    let ab_c = expand(self, &p.result, a.0 + b.0, (c_deg, c), true);
                    let bc = self.product(b, (c_deg, c)).expect("computed");
                    let a_bc = expand(self, bc, b.0 + c_deg, a, false);
                    if ab_c != a_bc {
                        return Ok(Some(format!("({a:?}·{b:?})·{:?} ≠ {a:?}·({b:?}·{:?})", (c_deg, c), (c_deg, c))));
                    }
                }
            }
        }
        Ok(None)
    }
}

/// `dim Ext^n_A(k, k)` for `n ≤ top`.
pub fn ext_dims(a: &PresentedAlgebra, top: usize) -> Result<Vec<usize>> {
    Ok(ExtTable::from_presented(a, top)?.dims())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::builders::{qls, quantum_line};
    use crate::hopf::data::{sweedler, taft_hopf};
    use crate::hopf::presented::HopfPresentation;

    #[test]
    fn quantum_line_ext() {
        let f = Field::cyclotomic(3).unwrap();
        let a = quantum_line(&f, 3, &f.zeta().unwrap(), 5).unwrap();
        let mut t = ExtTable::from_presented(&a, 8).unwrap();
        assert_eq!(t.dims(), vec![1; 9]);
        assert_eq!(t.detect_generators().unwrap().degrees, vec![1, 2]);
        let f2 = Field::cyclotomic(2).unwrap();
        let a2 = quantum_line(&f2, 2, &f2.from_int(-1), 4).unwrap();
        let mut t2 = ExtTable::from_presented(&a2, 6).unwrap();
        let eta = t2.classes(1)[0].clone();
        assert_eq!(t2.yoneda_product(&eta, &eta).unwrap(), vec![f2.one()]);
        assert_eq!(t2.detect_generators().unwrap().degrees, vec![1]);
        assert!(t2.associativity_witness().unwrap().is_none());
    }

    #[test]
    fn exterior_ext() {
        let q = Field::rationals();
        let m1 = q.from_int(-1);
        let a = qls(&[vec![m1.clone(), m1.clone()], vec![m1.clone(), m1.clone()]], 4).unwrap();
        let t = ExtTable::from_presented(&a, 6).unwrap();
        assert_eq!(t.dims(), vec![1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn hopf_inputs_are_graded_commutative() {
        let q = Field::rationals();
        let sw = HopfPresentation::from_data(&sweedler(&q).unwrap()).unwrap();
        let mut t = ExtTable::from_presented(sw.algebra(), 6).unwrap();
        assert_eq!(t.dims(), vec![1, 0, 1, 0, 1, 0, 1]);
        assert!(t.graded_commutativity_witness().unwrap().is_none());
        let f = Field::cyclotomic(3).unwrap();
        let taft = HopfPresentation::from_data(&taft_hopf(&f, 3, &f.zeta().unwrap()).unwrap()).unwrap();
        let mut t = ExtTable::from_presented(taft.algebra(), 4).unwrap();
        assert_eq!(t.dims(), vec![1, 0, 1, 0, 1]);
        assert!(t.graded_commutativity_witness().unwrap().is_none());
    }
}
