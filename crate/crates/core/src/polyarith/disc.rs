//! Resultants and discriminants over integral domains.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::Poly;
use crate::error::{invalid, Result};

/// Integral domain with exact division.
pub trait Domain {
    type E: Clone + PartialEq;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E {
        self.sub(&self.zero(), a)
    }
    fn is_zero(&self, a: &Self::E) -> bool;
    /// `a / b`, exact by assumption.
    fn div_exact(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn from_i64(&self, n: i64) -> Self::E;
}

pub struct IntDomain;

impl Domain for IntDomain {
    type E = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn div_exact(&self, a: &BigInt, b: &BigInt) -> BigInt {
        debug_assert!((a % b).is_zero());
        a / b
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
}

/// `F_p[t]`.
pub struct PolyDomain(pub u64);

impl Domain for PolyDomain {
    type E = Poly;
    fn zero(&self) -> Poly {
        Poly::zero(self.0)
    }
    fn one(&self) -> Poly {
        Poly::one(self.0)
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b)
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.sub(b)
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b)
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
    fn div_exact(&self, a: &Poly, b: &Poly) -> Poly {
        let (q, r) = a.div_rem(b);
        debug_assert!(r.is_zero());
        q
    }
    fn from_i64(&self, n: i64) -> Poly {
        Poly::from_i64(self.0, &[n])
    }
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant<D: Domain>(d: &D, mut m: Vec<Vec<D::E>>) -> D::E {
    let n = m.len();
    if n == 0 {
        return d.one();
    }
    let mut sign = false;
    let mut prev = d.one();
    for k in 0..n - 1 {
        if d.is_zero(&m[k][k]) {
            match (k + 1..n).find(|&i| !d.is_zero(&m[i][k])) {
                Some(i) => {
                    m.swap(i, k);
                    sign = !sign;
                }
                None => return d.zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = d.sub(&d.mul(&m[i][j], &m[k][k]), &d.mul(&m[i][k], &m[k][j]));
                m[i][j] = d.div_exact(&v, &prev);
            }
        }
        prev = m[k][k].clone();
    }
    let r = m[n - 1][n - 1].clone();
    if sign {
        d.neg(&r)
    } else {
        r
    }
}

/// Resultant with formal degrees `len(f)-1` and `len(g)-1` (coefficients
/// ascending; leading entries may be zero).
pub fn resultant<D: Domain>(d: &D, f: &[D::E], g: &[D::E]) -> D::E {
    let n = f.len() - 1;
    let m = g.len() - 1;
    let size = n + m;
    if size == 0 {
        return d.one();
    }
    let mut s = vec![vec![d.zero(); size]; size];
    for i in 0..m {
        for (j, c) in f.iter().rev().enumerate() {
            s[i][i + j] = c.clone();
        }
    }
    for i in 0..n {
        for (j, c) in g.iter().rev().enumerate() {
            s[m + i][i + j] = c.clone();
        }
    }
    determinant(d, s)
}

/// Discriminant of `sum f_i y^i` (degree `>= 1`, nonzero leading term).
pub fn discriminant<D: Domain>(d: &D, f: &[D::E]) -> Result<D::E> {
    let mut f: Vec<D::E> = f.to_vec();
    while f.len() > 1 && d.is_zero(f.last().unwrap()) {
        f.pop();
    }
    let n = f.len() - 1;
    if n == 0 {
        return invalid("discriminant of a constant");
    }
    if n == 1 {
        return Ok(d.one());
    }
    let df: Vec<D::E> = (1..=n).map(|i| d.mul(&d.from_i64(i as i64), &f[i])).collect();
    let r = resultant(d, &f, &df);
    let r = d.div_exact(&r, &f[n]);
    Ok(if (n * (n - 1) / 2) % 2 == 1 { d.neg(&r) } else { r })
}
