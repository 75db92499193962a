//! Finite fields `F_p[t]/(h)` with elements encoded as base-`p` digit codes.

use std::fmt;
use std::sync::Arc;

use super::poly::{format_terms, mulp, parse_terms, Poly};
use super::prime::{factor, inv_mod, is_prime, prime_power};
use crate::error::{invalid, Error, Result};

pub(crate) const TABLE_LIMIT: u64 = 1 << 16;
const ADD_TABLE_LIMIT: u64 = 256;

struct Inner {
    p: u64,
    m: usize,
    q: u64,
    modulus: Poly,
    /// Low coefficients of `-modulus` for reduction.
    red: Vec<u64>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Vec<u16>,
}

/// A finite field of order `q = p^m`. Element `sum a_i t^i` has code
/// `sum a_i p^i`; codes `0..q` enumerate the field.
#[derive(Clone)]
pub struct FiniteField(Arc<Inner>);

impl FiniteField {
    /// `F_p[t]/(h)` for a monic irreducible `h`.
    pub fn new(modulus: Poly) -> Result<Self> {
        let p = modulus.p();
        if !is_prime(p) {
            return invalid(format!("{p} is not prime"));
        }
        let m = modulus.degree().ok_or(Error::ZeroPolynomial)?;
        if m == 0 {
            return invalid("modulus must be nonconstant");
        }
        if !super::search::is_irreducible(&modulus)? {
            return invalid(format!("modulus {modulus} is reducible over F_{p}"));
        }
        let modulus = modulus.monic();
        let q = (p as u128).checked_pow(m as u32).filter(|&q| q < 1 << 63);
        let q = q.ok_or_else(|| Error::Unsupported("field order exceeds 2^63".into()))? as u64;
        let red = (0..m).map(|i| (p - modulus.coeff(i)) % p).collect();
        let mut inner = Inner { p, m, q, modulus, red, exp: vec![], log: vec![], add: vec![] };
        if q <= TABLE_LIMIT && m > 1 {
            build_tables(&mut inner);
        }
        if q <= ADD_TABLE_LIMIT && m > 1 && p != 2 {
            let mut add = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = digit_add(&inner, a, b) as u16;
                }
            }
            inner.add = add;
        }
        Ok(FiniteField(Arc::new(inner)))
    }

    pub fn prime(p: u64) -> Result<Self> {
        FiniteField::new(Poly::t(p))
    }

    /// The field of order `q` defined by the first monic irreducible of the
    /// right degree in counting order.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or_else(|| Error::InvalidInput(format!("{q} is not a prime power")))?;
        if m == 1 {
            return FiniteField::prime(p);
        }
        for h in Poly::monics(p, m as usize) {
            if super::search::is_irreducible(&h)? {
                return FiniteField::new(h);
            }
        }
        unreachable!("irreducibles exist in every degree")
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.m
    }

    pub fn order(&self) -> u64 {
        self.0.q
    }

    pub fn modulus(&self) -> &Poly {
        &self.0.modulus
    }

    pub fn same(&self, o: &FiniteField) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || (self.0.p == o.0.p && self.0.modulus == o.0.modulus)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let f = &*self.0;
        if f.m == 1 {
            let s = a + b;
            return if s >= f.p { s - f.p } else { s };
        }
        if f.p == 2 {
            return a ^ b;
        }
        if !f.add.is_empty() {
            return f.add[(a * f.q + b) as usize] as u64;
        }
        digit_add(f, a, b)
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        let f = &*self.0;
        if f.m == 1 {
            return if a == 0 { 0 } else { f.p - a };
        }
        if f.p == 2 {
            return a;
        }
        let mut out = 0;
        let mut pw = 1;
        let mut x = a;
        for _ in 0..f.m {
            let d = x % f.p;
            x /= f.p;
            out += ((f.p - d) % f.p) * pw;
            pw *= f.p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let f = &*self.0;
        if a == 0 || b == 0 {
            return 0;
        }
        if f.m == 1 {
            return mulp(a, b, f.p);
        }
        if !f.exp.is_empty() {
            let s = f.log[a as usize] as u64 + f.log[b as usize] as u64;
            let n = f.q - 1;
            return f.exp[(if s >= n { s - n } else { s }) as usize] as u64;
        }
        slow_mul(f, a, b)
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        r
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u64) -> Option<u64> {
        let f = &*self.0;
        if a == 0 {
            return None;
        }
        if f.m == 1 {
            return Some(inv_mod(a, f.p));
        }
        if !f.exp.is_empty() {
            let n = f.q - 1;
            return Some(f.exp[((n - f.log[a as usize] as u64) % n) as usize] as u64);
        }
        Some(self.pow(a, f.q - 2))
    }

    pub fn div(&self, a: u64, b: u64) -> Option<u64> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn from_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.0.p as i64) as u64
    }

    /// Reduce a polynomial in `t` into the field.
    pub fn from_poly(&self, f: &Poly) -> u64 {
        assert_eq!(f.p(), self.0.p, "characteristic mismatch");
        let r = if f.deg0() >= self.0.m { f.rem(&self.0.modulus) } else { f.clone() };
        r.to_index()
    }

    pub fn to_poly(&self, a: u64) -> Poly {
        Poly::from_index(self.0.p, a)
    }

    /// Power-basis coordinates, length `degree()`.
    pub fn digits(&self, mut a: u64) -> Vec<u64> {
        let p = self.0.p;
        (0..self.0.m)
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, d: &[u64]) -> u64 {
        d.iter().rev().fold(0, |acc, &x| acc * self.0.p + x % self.0.p)
    }

    /// The class of `t`.
    pub fn t_image(&self) -> u64 {
        self.from_poly(&Poly::t(self.0.p))
    }

    pub fn elements(&self) -> std::ops::Range<u64> {
        0..self.0.q
    }

    pub fn format(&self, a: u64) -> String {
        format_terms(&self.digits(a), "t")
    }

    pub fn parse(&self, s: &str) -> Result<u64> {
        let pi = self.0.p as i128;
        let mut acc = Poly::zero(self.0.p);
        for (c, k) in parse_terms(s, "t")? {
            acc = acc.add(&Poly::monomial(self.0.p, c.rem_euclid(pi) as u64, k));
        }
        Ok(self.from_poly(&acc))
    }

    /// Some generator of the multiplicative group.
    pub fn primitive_element(&self) -> u64 {
        let n = self.0.q - 1;
        let fs = factor(n);
        (1..self.0.q)
            .find(|&g| fs.iter().all(|&(r, _)| self.pow(g, n / r) != 1))
            .expect("cyclic group has a generator")
    }
}

fn digit_add(f: &Inner, mut a: u64, mut b: u64) -> u64 {
    let mut out = 0;
    let mut pw = 1;
    for _ in 0..f.m {
        let d = (a % f.p + b % f.p) % f.p;
        a /= f.p;
        b /= f.p;
        out += d * pw;
        pw *= f.p;
    }
    out
}

fn slow_mul(f: &Inner, a: u64, b: u64) -> u64 {
    let m = f.m;
    let p = f.p;
    let mut da = [0u64; 64];
    let mut db = [0u64; 64];
    let (mut x, mut y) = (a, b);
    for i in 0..m {
        da[i] = x % p;
        x /= p;
        db[i] = y % p;
        y /= p;
    }
    let mut prod = [0u128; 128];
    for i in 0..m {
        if da[i] == 0 {
            continue;
        }
        for j in 0..m {
            prod[i + j] += da[i] as u128 * db[j] as u128;
        }
    }
    let pp = p as u128;
    for k in (m..2 * m - 1).rev() {
        let c = prod[k] % pp;
        if c == 0 {
            continue;
        }
        for i in 0..m {
            prod[k - m + i] += c * f.red[i] as u128;
        }
    }
    let mut out = 0u64;
    for i in (0..m).rev() {
        out = out * p + (prod[i] % pp) as u64;
    }
    out
}

fn build_tables(f: &mut Inner) {
    let n = f.q - 1;
    let fs = factor(n);
    let pw = |g: u64, mut e: u64| {
        let mut base = g;
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = slow_mul(f, r, base);
            }
            base = slow_mul(f, base, base);
            e >>= 1;
        }
        r
    };
    let g = (2..f.q)
        .find(|&g| fs.iter().all(|&(r, _)| pw(g, n / r) != 1))
        .expect("generator exists");
    let mut exp = vec![0u32; n as usize];
    let mut log = vec![0u32; f.q as usize];
    let mut x = 1u64;
    for i in 0..n {
        exp[i as usize] = x as u32;
        log[x as usize] = i as u32;
        x = slow_mul(f, x, g);
    }
    f.exp = exp;
    f.log = log;
}

impl PartialEq for FiniteField {
    fn eq(&self, o: &Self) -> bool {
        self.same(o)
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[t]/({})", self.0.p, self.0.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(f: &FiniteField) {
        let q = f.order();
        for a in 0..q {
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for b in 0..q.min(40) {
                assert_eq!(f.mul(a, b), f.from_poly(&f.to_poly(a).mul(&f.to_poly(b))));
                assert_eq!(f.add(a, b), f.from_poly(&f.to_poly(a).add(&f.to_poly(b))));
            }
        }
    }

    #[test]
    fn small_fields() {
        for q in [2, 3, 4, 5, 8, 9, 25, 27, 49, 64, 81, 125] {
            let f = FiniteField::of_order(q).unwrap();
            assert_eq!(f.order(), q);
            check_axioms(&f);
        }
    }

    #[test]
    fn untabulated_field() {
        let f = FiniteField::of_order(1 << 17).unwrap();
        let a = f.t_image();
        assert_eq!(f.pow(a, f.order() - 1), 1);
        let b = f.parse("1+t^5+t^16").unwrap();
        assert_eq!(f.mul(b, f.inv(b).unwrap()), 1);
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(FiniteField::new(Poly::new(2, vec![1, 0, 1])).is_err());
        assert_eq!(FiniteField::of_order(4).unwrap().modulus().to_string(), "1+1*t+1*t^2");
    }
}
