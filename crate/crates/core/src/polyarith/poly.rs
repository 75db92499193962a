//! Univariate polynomials over a prime field `F_p`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::prime::{inv_mod, is_prime};
use crate::error::{Error, Result};

/// Polynomial in `t` over `F_p`, coefficients ascending, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u64,
    c: Vec<u64>,
}

impl Poly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut c: Vec<u64> = coeffs.into_iter().map(|x| x % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { p, c }
    }

    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        let pi = p as i64;
        Poly::new(p, coeffs.iter().map(|&x| x.rem_euclid(pi) as u64).collect())
    }

    pub fn zero(p: u64) -> Self {
        Poly { p, c: vec![] }
    }

    pub fn one(p: u64) -> Self {
        Poly::constant(p, 1)
    }

    pub fn constant(p: u64, a: u64) -> Self {
        Poly::new(p, vec![a])
    }

    /// The indeterminate `t`.
    pub fn t(p: u64) -> Self {
        Poly::new(p, vec![0, 1])
    }

    pub fn monomial(p: u64, a: u64, k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[k] = a;
        Poly::new(p, c)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with `deg 0 = -1` convention folded to 0 for bounds.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p);
        self.scale(inv)
    }

    pub fn scale(&self, a: u64) -> Poly {
        let p = self.p;
        Poly::new(p, self.c.iter().map(|&x| mulp(x, a, p)).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let p = self.p;
        let n = self.c.len().max(o.c.len());
        Poly::new(p, (0..n).map(|i| (self.coeff(i) + o.coeff(i)) % p).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let p = self.p;
        let n = self.c.len().max(o.c.len());
        Poly::new(p, (0..n).map(|i| (self.coeff(i) + p - o.coeff(i)) % p).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::zero(self.p).sub(self)
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.p);
        }
        let p = self.p;
        let mut acc = vec![0u128; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                acc[i + j] += a as u128 * b as u128;
                if acc[i + j] >= 1 << 120 {
                    acc[i + j] %= p as u128;
                }
            }
        }
        Poly::new(p, acc.into_iter().map(|x| (x % p as u128) as u64).collect())
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut r = Poly::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        r
    }

    /// Division with remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let p = self.p;
        let dd = d.c.len() - 1;
        if self.c.len() <= dd {
            return (Poly::zero(p), self.clone());
        }
        let inv = inv_mod(d.leading(), p);
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let coef = mulp(r[i + dd], inv, p);
            if coef == 0 {
                continue;
            }
            q[i] = coef;
            for j in 0..=dd {
                r[i + j] = (r[i + j] + p - mulp(coef, d.c[j], p)) % p;
            }
        }
        r.truncate(dd);
        (Poly::new(p, q), Poly::new(p, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    pub fn divides(&self, f: &Poly) -> bool {
        f.rem(self).is_zero()
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.p);
        }
        self.mul(o).div_rem(&self.gcd(o)).0.monic()
    }

    pub fn derivative(&self) -> Poly {
        let p = self.p;
        Poly::new(
            p,
            self.c.iter().enumerate().skip(1).map(|(i, &a)| mulp(a, i as u64 % p, p)).collect(),
        )
    }

    pub fn mul_mod(&self, o: &Poly, m: &Poly) -> Poly {
        self.mul(o).rem(m)
    }

    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut r = Poly::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul_mod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        r
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.c.iter().rev().fold(0, |acc, &a| (mulp(acc, x, p) + a) % p)
    }

    /// Composition `self(g)`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let p = self.p;
        self.c
            .iter()
            .rev()
            .fold(Poly::zero(p), |acc, &a| acc.mul(g).add(&Poly::constant(p, a)))
    }

    /// Largest `e` with `pi^e | self` (self nonzero, `pi` nonconstant).
    pub fn multiplicity(&self, pi: &Poly) -> u32 {
        assert!(!self.is_zero() && pi.deg0() > 0);
        let mut e = 0;
        let mut f = self.clone();
        loop {
            let (q, r) = f.div_rem(pi);
            if !r.is_zero() {
                return e;
            }
            f = q;
            e += 1;
        }
    }

    /// Digit code `sum c_i p^i`; fits in `u64` by assumption.
    pub fn to_index(&self) -> u64 {
        self.c.iter().rev().fold(0, |acc, &a| acc * self.p + a)
    }

    pub fn from_index(p: u64, mut idx: u64) -> Poly {
        let mut c = Vec::new();
        while idx > 0 {
            c.push(idx % p);
            idx /= p;
        }
        Poly::new(p, c)
    }

    /// The `j`-th monic polynomial of degree `d`, lower coefficients in
    /// counting order (constant term fastest).
    pub fn monic_from_index(p: u64, d: usize, mut j: u64) -> Poly {
        let mut c = vec![0; d + 1];
        for slot in c.iter_mut().take(d) {
            *slot = j % p;
            j /= p;
        }
        c[d] = 1;
        Poly::new(p, c)
    }

    /// All monic polynomials of degree `d` in counting order.
    pub fn monics(p: u64, d: usize) -> impl Iterator<Item = Poly> {
        let n = p.pow(d as u32);
        (0..n).map(move |j| Poly::monic_from_index(p, d, j))
    }

    pub fn to_poly_string(&self) -> String {
        self.to_string()
    }

    pub fn parse(p: u64, s: &str) -> Result<Poly> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        let terms = parse_terms(s, "t")?;
        let pi = p as i128;
        let mut c: Vec<u64> = Vec::new();
        for (coef, k) in terms {
            if c.len() <= k {
                c.resize(k + 1, 0);
            }
            c[k] = ((c[k] as i128 + coef.rem_euclid(pi)) % pi) as u64;
        }
        Ok(Poly::new(p, c))
    }
}

pub(crate) fn mulp(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Parse `c0+c1*t+c2*t^2-...` into `(coefficient, exponent)` terms.
pub(crate) fn parse_terms(s: &str, var: &str) -> Result<Vec<(i128, usize)>> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut out = Vec::new();
    let mut rest = s.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let mut sign = 1i128;
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            rest = r;
            sign = -1;
        } else if !first {
            return Err(Error::Parse(format!("expected + or - in {s:?}")));
        }
        first = false;
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let term = &rest[..end];
        rest = &rest[end..];
        let (coef, exp) = parse_term(term, var).ok_or_else(|| Error::Parse(format!("bad term {term:?}")))?;
        out.push((sign * coef, exp));
    }
    Ok(out)
}

fn parse_term(term: &str, var: &str) -> Option<(i128, usize)> {
    if term.is_empty() {
        return None;
    }
    let (coef_str, var_part) = match term.find(var) {
        None => (term, None),
        Some(pos) => {
            let c = term[..pos].trim_end_matches('*');
            (c, Some(&term[pos + var.len()..]))
        }
    };
    let coef = if coef_str.is_empty() {
        if var_part.is_none() {
            return None;
        }
        1
    } else {
        coef_str.parse::<i128>().ok()?
    };
    let exp = match var_part {
        None => 0,
        Some("") => 1,
        Some(e) => e.strip_prefix('^')?.parse::<usize>().ok()?,
    };
    Some((coef, exp))
}

pub(crate) fn format_terms(c: &[u64], var: &str) -> String {
    let mut parts = Vec::new();
    for (i, &a) in c.iter().enumerate() {
        if a == 0 {
            continue;
        }
        parts.push(match i {
            0 => format!("{a}"),
            1 => format!("{a}*{var}"),
            _ => format!("{a}*{var}^{i}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(&self.c, "t"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[F{}]({})", self.p, self)
    }
}

impl Ord for Poly {
    fn cmp(&self, o: &Self) -> Ordering {
        self.p
            .cmp(&o.p)
            .then(self.c.len().cmp(&o.c.len()))
            .then_with(|| self.c.iter().rev().cmp(o.c.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Serialized as the bare coefficient string; the characteristic is carried
/// by the surrounding document.
impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses with the characteristic given as `p:poly`, e.g. `2:1+1*t`.
impl FromStr for Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (p, body) = s.split_once(':').ok_or_else(|| Error::Parse("expected p:poly".into()))?;
        let p: u64 = p.trim().parse().map_err(|_| Error::Parse("bad characteristic".into()))?;
        Poly::parse(p, body)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_strings() {
        let f = Poly::new(3, vec![2, 0, 1, 1]);
        assert_eq!(f.to_string(), "2+1*t^2+1*t^3");
        assert_eq!(Poly::parse(3, "2+t^2+1*t^3").unwrap(), f);
        assert_eq!(Poly::parse(3, "t^3 + t^2 - 1").unwrap(), f);
        assert_eq!(Poly::parse(2, "0").unwrap(), Poly::zero(2));
        assert_eq!(serde_json::to_string(&f).unwrap(), "\"2+1*t^2+1*t^3\"");
        assert_eq!("3:2+t^2+t^3".parse::<Poly>().unwrap(), f);
    }

    #[test]
    fn division_identity() {
        let a = Poly::new(5, vec![1, 2, 3, 4, 0, 1]);
        let b = Poly::new(5, vec![3, 0, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.deg0() < 2);
        assert_eq!(Poly::new(2, vec![1, 0, 1]).gcd(&Poly::new(2, vec![1, 1])), Poly::new(2, vec![1, 1]));
    }

    #[test]
    fn index_roundtrip() {
        for i in 0..200 {
            assert_eq!(Poly::from_index(3, i).to_index(), i);
        }
        let m: Vec<String> = Poly::monics(2, 2).map(|f| f.to_string()).collect();
        assert_eq!(m, ["1*t^2", "1+1*t^2", "1*t+1*t^2", "1+1*t+1*t^2"]);
    }
}
