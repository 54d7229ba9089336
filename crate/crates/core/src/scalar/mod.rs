//! Exact scalars in `F_p` and `Q(ζ_n)`.
//!
//! A cyclotomic element is stored as its remainder modulo the `n`-th
//! cyclotomic polynomial, so equal elements always have equal
//! representations.

mod poly;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Which field the scalars live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Prime(u64),
    Cyclotomic(u32),
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Cyclotomic(_) => 0,
        }
    }

    /// Parses `F5`, `F_5`, `Q`, `Q(zeta4)` or `Q(zeta_4)`.
    pub fn parse(text: &str) -> Result<FieldSpec> {
        let t = text.trim();
        let bad = || Error::InvalidField(t.to_string());
        if t == "Q" {
            return Ok(FieldSpec::Cyclotomic(1));
        }
        if let Some(rest) = t.strip_prefix('F') {
            let rest = rest.strip_prefix('_').unwrap_or(rest);
            let p: u64 = rest.parse().map_err(|_| bad())?;
            return Ok(FieldSpec::Prime(p));
        }
        if let Some(inner) = t.strip_prefix("Q(").and_then(|r| r.strip_suffix(')')) {
            let inner = inner.trim();
            let num = inner
                .strip_prefix("zeta")
                .map(|r| r.strip_prefix('_').unwrap_or(r))
                .ok_or_else(bad)?;
            let n: u32 = num.parse().map_err(|_| bad())?;
            return Ok(FieldSpec::Cyclotomic(n));
        }
        Err(bad())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F{p}"),
            FieldSpec::Cyclotomic(1) => write!(f, "Q"),
            FieldSpec::Cyclotomic(n) => write!(f, "Q(zeta{n})"),
        }
    }
}

#[derive(Debug)]
struct FieldInner {
    spec: FieldSpec,
    // monic Φ_n, low degree first; empty for prime fields
    phi: Vec<BigRational>,
}

/// A shared handle to a field. Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.spec)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.spec)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}
impl Eq for Field {}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    out.sort_unstable();
    out
}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Field> {
        let phi = match spec {
            FieldSpec::Prime(p) => {
                if !is_prime(p) {
                    return Err(Error::InvalidField(format!("{p} is not prime")));
                }
                if p > u32::MAX as u64 {
                    return Err(Error::InvalidField(format!("prime {p} too large")));
                }
                Vec::new()
            }
            FieldSpec::Cyclotomic(n) => {
                if n == 0 {
                    return Err(Error::InvalidField("Q(zeta0)".into()));
                }
                poly::cyclotomic(n as u64)
                    .into_iter()
                    .map(BigRational::from_integer)
                    .collect()
            }
        };
        Ok(Field(Arc::new(FieldInner { spec, phi })))
    }

    pub fn prime(p: u64) -> Result<Field> {
        Field::new(FieldSpec::Prime(p))
    }

    pub fn cyclotomic(n: u32) -> Result<Field> {
        Field::new(FieldSpec::Cyclotomic(n))
    }

    pub fn rationals() -> Field {
        Field::new(FieldSpec::Cyclotomic(1)).expect("Q is a field")
    }

    pub fn parse(text: &str) -> Result<Field> {
        Field::new(FieldSpec::parse(text)?)
    }

    pub fn spec(&self) -> FieldSpec {
        self.0.spec
    }

    pub fn characteristic(&self) -> u64 {
        self.0.spec.characteristic()
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        match self.0.spec {
            FieldSpec::Prime(_) => 1,
            FieldSpec::Cyclotomic(_) => self.0.phi.len() - 1,
        }
    }

    /// Exponent of the group of roots of unity (bound for multiplicative orders).
    pub fn unit_exponent(&self) -> u64 {
        match self.0.spec {
            FieldSpec::Prime(p) => p - 1,
            FieldSpec::Cyclotomic(n) => {
                let n = n as u64;
                if n.is_multiple_of(2) {
                    n
                } else {
                    2 * n
                }
            }
        }
    }

    pub fn zero(&self) -> Scalar {
        let repr = match self.0.spec {
            FieldSpec::Prime(_) => Repr::Mod(0),
            FieldSpec::Cyclotomic(_) => Repr::Cyc(vec![BigRational::zero(); self.degree()]),
        };
        Scalar { field: self.clone(), repr }
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> Scalar {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self.0.spec {
            FieldSpec::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar { field: self.clone(), repr: Repr::Mod(r.to_u64().unwrap_or(0)) }
            }
            FieldSpec::Cyclotomic(_) => {
                let mut c = vec![BigRational::zero(); self.degree()];
                c[0] = BigRational::from_integer(v.clone());
                Scalar { field: self.clone(), repr: Repr::Cyc(c) }
            }
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        let d = self.from_int(den);
        self.from_int(num).try_div(&d)
    }

    pub fn from_rational(&self, r: &BigRational) -> Result<Scalar> {
        let n = self.from_bigint(r.numer());
        let d = self.from_bigint(r.denom());
        n.try_div(&d)
    }

    /// `ζ^k` for the distinguished primitive root of `Q(ζ_n)`.
    pub fn zeta_pow(&self, k: i64) -> Result<Scalar> {
        match self.0.spec {
            FieldSpec::Prime(p) => Err(Error::InvalidField(format!("zeta is not defined in F{p}"))),
            FieldSpec::Cyclotomic(n) => {
                let e = k.rem_euclid(n as i64) as usize;
                let mut c = vec![BigRational::zero(); 2 * self.degree().max(e + 1)];
                c[e] = BigRational::one();
                Ok(Scalar { field: self.clone(), repr: Repr::Cyc(self.reduce(c)) })
            }
        }
    }

    pub fn zeta(&self) -> Result<Scalar> {
        self.zeta_pow(1)
    }

    fn reduce(&self, mut c: Vec<BigRational>) -> Vec<BigRational> {
        let phi = &self.0.phi;
        let d = phi.len() - 1;
        if c.len() > d {
            for i in (d..c.len()).rev() {
                if c[i].is_zero() {
                    continue;
                }
                let t = c[i].clone();
                for j in 0..d {
                    let s = &t * &phi[j];
                    c[i - d + j] -= s;
                }
                c[i] = BigRational::zero();
            }
        }
        c.resize(d, BigRational::zero());
        c
    }

    fn modulus(&self) -> u64 {
        match self.0.spec {
            FieldSpec::Prime(p) => p,
            FieldSpec::Cyclotomic(_) => 0,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
enum Repr {
    Mod(u64),
    Cyc(Vec<BigRational>),
}

/// An element of a [`Field`] in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    field: Field,
    repr: Repr,
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

impl Scalar {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Mod(v) => *v == 0,
            Repr::Cyc(c) => c.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Mod(v) => *v == 1,
            Repr::Cyc(c) => c[0].is_one() && c[1..].iter().all(Zero::is_zero),
        }
    }

    /// The residue for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Mod(v) => Some(*v),
            Repr::Cyc(_) => None,
        }
    }

    /// Coefficients in the power basis `1, ζ, ζ², …` for cyclotomic elements.
    pub fn coefficients(&self) -> Option<&[BigRational]> {
        match &self.repr {
            Repr::Mod(_) => None,
            Repr::Cyc(c) => Some(c),
        }
    }

    fn check(&self, other: &Scalar) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()))
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.add_unchecked(&other.neg_ref()))
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    fn add_unchecked(&self, other: &Scalar) -> Scalar {
        let repr = match (&self.repr, &other.repr) {
            (Repr::Mod(a), Repr::Mod(b)) => {
                let p = self.field.modulus();
                Repr::Mod((a + b) % p)
            }
            (Repr::Cyc(a), Repr::Cyc(b)) => Repr::Cyc(a.iter().zip(b).map(|(x, y)| x + y).collect()),
            _ => unreachable!("field checked"),
        };
        Scalar { field: self.field.clone(), repr }
    }

    fn neg_ref(&self) -> Scalar {
        let repr = match &self.repr {
            Repr::Mod(a) => {
                let p = self.field.modulus();
                Repr::Mod((p - a) % p)
            }
            Repr::Cyc(a) => Repr::Cyc(a.iter().map(|x| -x).collect()),
        };
        Scalar { field: self.field.clone(), repr }
    }

    fn mul_unchecked(&self, other: &Scalar) -> Scalar {
        let repr = match (&self.repr, &other.repr) {
            (Repr::Mod(a), Repr::Mod(b)) => {
                let p = self.field.modulus();
                Repr::Mod(((*a as u128 * *b as u128) % p as u128) as u64)
            }
            (Repr::Cyc(a), Repr::Cyc(b)) => {
                if a.len() == 1 {
                    Repr::Cyc(vec![&a[0] * &b[0]])
                } else {
                    let mut c = vec![BigRational::zero(); a.len() + b.len() - 1];
                    for (i, x) in a.iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        for (j, y) in b.iter().enumerate() {
                            if !y.is_zero() {
                                c[i + j] += x * y;
                            }
                        }
                    }
                    Repr::Cyc(self.field.reduce(c))
                }
            }
            _ => unreachable!("field checked"),
        };
        Scalar { field: self.field.clone(), repr }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let repr = match &self.repr {
            Repr::Mod(a) => {
                let p = self.field.modulus();
                Repr::Mod(mod_pow(*a, p - 2, p))
            }
            Repr::Cyc(a) => {
                let inv = poly::inverse_mod(a, &self.field.0.phi);
                Repr::Cyc(self.field.reduce(inv))
            }
        };
        Ok(Scalar { field: self.field.clone(), repr })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    pub fn powi(&self, e: i64) -> Result<Scalar> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Least `m ≥ 1` with `selfᵐ = 1`, or `None` when `self` is not a root of unity.
    pub fn order_of_unity(&self) -> Result<Option<u64>> {
        if self.is_zero() {
            return Err(Error::ZeroOrder);
        }
        let bound = self.field.unit_exponent();
        for d in divisors(bound) {
            if self.pow(d).is_one() {
                return Ok(Some(d));
            }
        }
        Ok(None)
    }
}

/// `N(q)`: the characteristic when `q = 1` in positive characteristic,
/// otherwise the multiplicative order of `q`.
pub fn compute_big_n(q: &Scalar, characteristic: u64) -> Result<u64> {
    if characteristic > 0 && q.is_one() {
        return Ok(characteristic);
    }
    if characteristic == 0 && q.is_one() {
        return Err(Error::NotRootOfUnity(
            "1 in characteristic 0 (the Nichols algebra is infinite-dimensional)".into(),
        ));
    }
    q.order_of_unity()?.ok_or_else(|| Error::NotRootOfUnity(q.to_string()))
}

macro_rules! binop {
    ($trait:ident, $method:ident, $inner:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                assert!(self.field == rhs.field, "field mismatch: {} vs {}", self.field, rhs.field);
                $inner(self, rhs)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, |a: &Scalar, b: &Scalar| a.add_unchecked(b));
binop!(Sub, sub, |a: &Scalar, b: &Scalar| a.add_unchecked(&b.neg_ref()));
binop!(Mul, mul, |a: &Scalar, b: &Scalar| a.mul_unchecked(b));

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    /// Prime-field elements print as their residue; cyclotomic elements as a
    /// polynomial in `zeta`, highest power first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Mod(v) => write!(f, "{v}"),
            Repr::Cyc(c) => {
                let mut out = String::new();
                for (i, coef) in c.iter().enumerate().rev() {
                    if coef.is_zero() {
                        continue;
                    }
                    let neg = coef.is_negative();
                    let abs = coef.abs();
                    if out.is_empty() {
                        if neg {
                            out.push('-');
                        }
                    } else {
                        out.push_str(if neg { " - " } else { " + " });
                    }
                    let mono = match i {
                        0 => String::new(),
                        1 => "zeta".to_string(),
                        _ => format!("zeta^{i}"),
                    };
                    if i == 0 {
                        out.push_str(&fmt_rational(&abs));
                    } else if abs.is_one() {
                        out.push_str(&mono);
                    } else {
                        out.push_str(&fmt_rational(&abs));
                        out.push('*');
                        out.push_str(&mono);
                    }
                }
                if out.is_empty() {
                    out.push('0');
                }
                if c.iter().filter(|x| !x.is_zero()).count() > 1 {
                    write!(f, "({out})")
                } else {
                    write!(f, "{out}")
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_examples() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(&f5.from_int(3) + &f5.from_int(4), f5.from_int(2));
        assert_eq!(f5.from_int(1).try_div(&f5.from_int(2)).unwrap(), f5.from_int(3));
        assert_eq!(f5.from_int(-1).order_of_unity().unwrap(), Some(2));
        assert_eq!(f5.from_int(2).try_div(&f5.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn cyclotomic_examples() {
        let q4 = Field::cyclotomic(4).unwrap();
        let z = q4.zeta().unwrap();
        assert_eq!(&z * &z, q4.from_int(-1));
        let q6 = Field::cyclotomic(6).unwrap();
        assert_eq!(q6.zeta().unwrap().order_of_unity().unwrap(), Some(6));
        assert_eq!(q6.one().order_of_unity().unwrap(), Some(1));
        assert_eq!(q6.from_int(2).order_of_unity().unwrap(), None);
    }

    #[test]
    fn mismatch_and_zero_order() {
        let a = Field::prime(5).unwrap().one();
        let b = Field::prime(7).unwrap().one();
        assert!(matches!(a.try_add(&b), Err(Error::FieldMismatch(..))));
        assert_eq!(Field::prime(5).unwrap().zero().order_of_unity(), Err(Error::ZeroOrder));
    }

    #[test]
    fn big_n_convention() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(compute_big_n(&f3.one(), 3).unwrap(), 3);
        let q4 = Field::cyclotomic(4).unwrap();
        assert_eq!(compute_big_n(&q4.zeta().unwrap(), 0).unwrap(), 4);
        let f5 = Field::prime(5).unwrap();
        assert_eq!(compute_big_n(&f5.from_int(-1), 5).unwrap(), 2);
        assert!(compute_big_n(&Field::rationals().from_int(2), 0).is_err());
    }

    #[test]
    fn field_literals() {
        assert_eq!(FieldSpec::parse("F5").unwrap(), FieldSpec::Prime(5));
        assert_eq!(FieldSpec::parse("Q(zeta4)").unwrap(), FieldSpec::Cyclotomic(4));
        assert_eq!(FieldSpec::parse("Q").unwrap(), FieldSpec::Cyclotomic(1));
        assert!(Field::parse("F6").is_err());
        assert_eq!(Field::parse("Q(zeta12)").unwrap().to_string(), "Q(zeta12)");
    }

    #[test]
    fn display_round_values() {
        let q3 = Field::cyclotomic(3).unwrap();
        let z = q3.zeta().unwrap();
        // ζ² = -ζ - 1
        assert_eq!((&z * &z).to_string(), "(-zeta - 1)");
        assert_eq!(q3.from_ratio(1, 2).unwrap().to_string(), "1/2");
    }
}
