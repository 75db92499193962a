//! Sparse multivariate polynomials over a coefficient ring.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::field::FiniteField;
use super::poly::{mulp, Poly};
use super::prime::inv_mod;

/// Coefficient arithmetic for [`MPoly`].
pub trait CoefRing: Clone + fmt::Debug + Send + Sync {
    type E: Clone + PartialEq + fmt::Debug + Send + Sync;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn from_i64(&self, n: i64) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }
    fn fmt_coef(&self, a: &Self::E) -> String;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Integers;

impl CoefRing for Integers {
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
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn fmt_coef(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

/// `F_p` with `u64` residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField(pub u64);

impl CoefRing for PrimeField {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a % self.0) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulp(*a, *b, self.0)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.0 as i64) as u64
    }
    fn fmt_coef(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl CoefRing for FiniteField {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        FiniteField::add(self, *a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        FiniteField::neg(self, *a)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        FiniteField::mul(self, *a, *b)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_i64(&self, n: i64) -> u64 {
        FiniteField::from_int(self, n)
    }
    fn fmt_coef(&self, a: &u64) -> String {
        format!("({})", self.format(*a))
    }
}

pub type Monomial = Vec<u32>;

/// Polynomial in `nvars` variables, terms keyed by exponent vectors.
#[derive(Clone)]
pub struct MPoly<R: CoefRing> {
    ring: R,
    nvars: usize,
    terms: BTreeMap<Monomial, R::E>,
}

impl<R: CoefRing> PartialEq for MPoly<R> {
    fn eq(&self, o: &Self) -> bool {
        self.nvars == o.nvars && self.terms == o.terms
    }
}

impl<R: CoefRing> MPoly<R> {
    pub fn zero(ring: &R, nvars: usize) -> Self {
        MPoly { ring: ring.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(ring: &R, nvars: usize, c: R::E) -> Self {
        let mut f = MPoly::zero(ring, nvars);
        f.add_term(vec![0; nvars], c);
        f
    }

    pub fn one(ring: &R, nvars: usize) -> Self {
        MPoly::constant(ring, nvars, ring.one())
    }

    pub fn var(ring: &R, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut f = MPoly::zero(ring, nvars);
        f.add_term(e, ring.one());
        f
    }

    pub fn from_terms(ring: &R, nvars: usize, terms: impl IntoIterator<Item = (Monomial, R::E)>) -> Self {
        let mut f = MPoly::zero(ring, nvars);
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, R::E> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Monomial, c: R::E) {
        assert_eq!(m.len(), self.nvars);
        if self.ring.is_zero(&c) {
            return;
        }
        let r = &self.ring;
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = r.add(v, &c);
                if r.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn constant_term(&self) -> R::E {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut f = self.clone();
        for (m, c) in &o.terms {
            f.add_term(m.clone(), c.clone());
        }
        f
    }

    pub fn neg(&self) -> Self {
        let r = &self.ring;
        MPoly { ring: r.clone(), nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), r.neg(c))).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, a: &R::E) -> Self {
        let r = &self.ring;
        MPoly::from_terms(r, self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), r.mul(c, a))))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let r = &self.ring;
        let mut f = MPoly::zero(r, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                f.add_term(m, r.mul(c1, c2));
            }
        }
        f
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut r = MPoly::one(&self.ring, self.nvars);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    /// Total degree in the variables `vars`.
    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        self.terms.keys().map(|m| vars.iter().map(|&v| m[v]).sum()).max().unwrap_or(0)
    }

    pub fn eval(&self, point: &[R::E]) -> R::E {
        assert_eq!(point.len(), self.nvars);
        let r = &self.ring;
        let mut acc = r.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t = r.mul(&t, &point[v]);
                }
            }
            acc = r.add(&acc, &t);
        }
        acc
    }

    /// Replace variable `v` by `g` (same ring and arity).
    pub fn substitute(&self, v: usize, g: &Self) -> Self {
        let r = &self.ring;
        let maxe = self.terms.keys().map(|m| m[v]).max().unwrap_or(0);
        let mut powers = vec![MPoly::one(r, self.nvars)];
        for i in 1..=maxe as usize {
            let next = powers[i - 1].mul(g);
            powers.push(next);
        }
        let mut out = MPoly::zero(r, self.nvars);
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = rest[v] as usize;
            rest[v] = 0;
            let mono = MPoly::from_terms(r, self.nvars, [(rest, c.clone())]);
            out = out.add(&mono.mul(&powers[e]));
        }
        out
    }

    /// Coefficient map into another ring.
    pub fn map_coeffs<S: CoefRing>(&self, ring: &S, f: impl Fn(&R::E) -> S::E) -> MPoly<S> {
        MPoly::from_terms(ring, self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Group terms by the exponents of `outer`; each part is a polynomial in
    /// the remaining variables (still in the full arity).
    pub fn split_by(&self, outer: &[usize]) -> BTreeMap<Monomial, Self> {
        let mut out: BTreeMap<Monomial, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Monomial = outer.iter().map(|&v| m[v]).collect();
            let mut inner = m.clone();
            for &v in outer {
                inner[v] = 0;
            }
            out.entry(key).or_insert_with(|| MPoly::zero(&self.ring, self.nvars)).add_term(inner, c.clone());
        }
        out
    }

    pub fn format(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut s = self.ring.fmt_coef(c);
                for (v, &e) in m.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => s.push_str(&format!("*{}", names[v])),
                        _ => s.push_str(&format!("*{}^{}", names[v], e)),
                    }
                }
                s
            })
            .collect();
        parts.join("+")
    }
}

impl<R: CoefRing> fmt::Debug for MPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        f.write_str(&self.format(&refs))
    }
}

/// Polynomials over `F_p[t][x_1..x_s]`; variable 0 is `t`.
pub type MultiPoly = MPoly<PrimeField>;

impl MPoly<PrimeField> {
    /// View as a polynomial in `t` (requires no other variable to occur).
    pub fn as_t_poly(&self) -> Option<Poly> {
        let p = self.ring.0;
        let mut c = Vec::new();
        for (m, &a) in &self.terms {
            if m.iter().skip(1).any(|&e| e != 0) {
                return None;
            }
            let k = m[0] as usize;
            if c.len() <= k {
                c.resize(k + 1, 0);
            }
            c[k] = a;
        }
        Some(Poly::new(p, c))
    }

    pub fn from_t_poly(f: &Poly, nvars: usize) -> Self {
        let ring = PrimeField(f.p());
        MPoly::from_terms(
            &ring,
            nvars,
            f.coeffs().iter().enumerate().map(|(k, &a)| {
                let mut m = vec![0; nvars];
                m[0] = k as u32;
                (m, a)
            }),
        )
    }

    /// Height: largest `t`-degree of a coefficient.
    pub fn height(&self) -> u32 {
        self.terms.keys().map(|m| m[0]).max().unwrap_or(0)
    }

    /// Degree in the `x` variables.
    pub fn x_degree(&self) -> u32 {
        self.terms.keys().map(|m| m[1..].iter().sum()).max().unwrap_or(0)
    }

    pub fn div_scalar(&self, a: u64) -> Self {
        self.scale(&inv_mod(a % self.ring.0, self.ring.0))
    }
}

impl MPoly<Integers> {
    /// Reduction modulo a prime.
    pub fn reduce_mod(&self, p: u64) -> MPoly<PrimeField> {
        let pb = BigInt::from(p);
        self.map_coeffs(&PrimeField(p), |c| {
            let r = ((c % &pb) + &pb) % &pb;
            r.iter_u64_digits().next().unwrap_or(0)
        })
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_ops() {
        let r = PrimeField(3);
        let t = MPoly::var(&r, 2, 0);
        let x = MPoly::var(&r, 2, 1);
        let f = t.add(&x).pow(3);
        // Frobenius in characteristic 3
        assert_eq!(f, t.pow(3).add(&x.pow(3)));
        let g = f.substitute(1, &t);
        assert_eq!(g.as_t_poly().unwrap(), Poly::new(3, vec![0, 0, 0, 2]));
        assert_eq!(f.eval(&[1, 1]), 2);
        let parts = f.split_by(&[1]);
        assert_eq!(parts.len(), 2);
    }

    #[test]
    fn integer_reduction() {
        let z = Integers;
        let x = MPoly::var(&z, 1, 0);
        let f = x.scale(&BigInt::from(-7)).add(&MPoly::constant(&z, 1, BigInt::from(10)));
        let g = f.reduce_mod(5);
        assert_eq!(g.eval(&[1]), 3);
        assert_eq!(f.max_abs_coeff(), BigInt::from(10));
    }
}
