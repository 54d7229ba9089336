//! Univariate polynomial helpers for cyclotomic arithmetic.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Exact division of integer polynomials with monic divisor.
fn div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quo = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quo.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        quo[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quo
}

/// The `n`-th cyclotomic polynomial, low degree first.
pub(crate) fn cyclotomic(n: u64) -> Vec<BigInt> {
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = div_exact(&num, &cyclotomic(d));
        }
    }
    num
}

fn divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().expect("nonempty") / &lead;
        for (j, bj) in b.iter().enumerate() {
            let s = &c * bj;
            r[shift + j] -= s;
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    (q, r)
}

fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    trim(&mut c);
    c
}

fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut c = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        c[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        c[i] -= y;
    }
    trim(&mut c);
    c
}

/// Inverse of a nonzero `a` modulo the irreducible `phi`.
pub(crate) fn inverse_mod(a: &[BigRational], phi: &[BigRational]) -> Vec<BigRational> {
    let mut r0 = phi.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut s0: Vec<BigRational> = Vec::new();
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = divmod(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    let c = r0[0].clone();
    s0.iter().map(|x| x / &c).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        let as_i = |v: Vec<BigInt>| v.into_iter().map(|x| i64::try_from(x).unwrap()).collect::<Vec<_>>();
        assert_eq!(as_i(cyclotomic(1)), vec![-1, 1]);
        assert_eq!(as_i(cyclotomic(4)), vec![1, 0, 1]);
        assert_eq!(as_i(cyclotomic(6)), vec![1, -1, 1]);
        assert_eq!(as_i(cyclotomic(12)), vec![1, 0, -1, 0, 1]);
    }
}
