//! Finite commutative rings with `u64` element codes.

use std::fmt;

use super::field::FiniteField;
use super::poly::Poly;
use super::prime::is_prime;
use crate::error::{invalid, Error, Result};

pub trait FiniteRing: Send + Sync {
    fn size(&self) -> u64;
    fn characteristic(&self) -> u64;
    fn add(&self, a: u64, b: u64) -> u64;
    fn neg(&self, a: u64) -> u64;
    fn mul(&self, a: u64, b: u64) -> u64;
    fn from_int(&self, n: i64) -> u64;
    fn is_unit(&self, a: u64) -> bool;
    fn inv(&self, a: u64) -> Option<u64>;
    /// Generators of the additive group.
    fn additive_basis(&self) -> Vec<u64>;
    fn format(&self, a: u64) -> String;
    fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        self.from_int(1)
    }
}

impl FiniteRing for FiniteField {
    fn size(&self) -> u64 {
        self.order()
    }
    fn characteristic(&self) -> u64 {
        self.p()
    }
    fn add(&self, a: u64, b: u64) -> u64 {
        FiniteField::add(self, a, b)
    }
    fn neg(&self, a: u64) -> u64 {
        FiniteField::neg(self, a)
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        FiniteField::mul(self, a, b)
    }
    fn from_int(&self, n: i64) -> u64 {
        FiniteField::from_int(self, n)
    }
    fn is_unit(&self, a: u64) -> bool {
        a != 0
    }
    fn inv(&self, a: u64) -> Option<u64> {
        FiniteField::inv(self, a)
    }
    fn additive_basis(&self) -> Vec<u64> {
        (0..self.degree()).map(|i| self.p().pow(i as u32)).collect()
    }
    fn format(&self, a: u64) -> String {
        FiniteField::format(self, a)
    }
}

/// `O/pi^k` for `O = Z` (integer codes) or `O = F_p[t]` (digit codes).
#[derive(Clone)]
pub enum ResidueRing {
    IntMod { p: u64, k: u32, m: u64 },
    PolyMod { pi: Poly, k: u32, modulus: Poly, size: u64, residue: FiniteField },
}

impl ResidueRing {
    pub fn integers(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) || k == 0 {
            return invalid("need a prime p and k >= 1");
        }
        let m = p.checked_pow(k).filter(|&m| m < 1 << 31).ok_or_else(|| Error::Unsupported("modulus too large".into()))?;
        Ok(ResidueRing::IntMod { p, k, m })
    }

    pub fn polys(pi: Poly, k: u32) -> Result<Self> {
        if k == 0 || !super::search::is_irreducible(&pi)? {
            return invalid("need an irreducible pi and k >= 1");
        }
        let pi = pi.monic();
        let deg = pi.deg0() as u32 * k;
        let size = pi.p().checked_pow(deg).filter(|&s| s < 1 << 40).ok_or_else(|| Error::Unsupported("ring too large".into()))?;
        let residue = FiniteField::new(pi.clone())?;
        Ok(ResidueRing::PolyMod { modulus: pi.pow(k as u64), pi, k, size, residue })
    }

    pub fn k(&self) -> u32 {
        match self {
            ResidueRing::IntMod { k, .. } | ResidueRing::PolyMod { k, .. } => *k,
        }
    }

    /// The residue field `O/pi`.
    pub fn residue_field(&self) -> FiniteField {
        match self {
            ResidueRing::IntMod { p, .. } => FiniteField::prime(*p).unwrap(),
            ResidueRing::PolyMod { residue, .. } => residue.clone(),
        }
    }

    /// Order of the residue field.
    pub fn residue_order(&self) -> u64 {
        match self {
            ResidueRing::IntMod { p, .. } => *p,
            ResidueRing::PolyMod { residue, .. } => residue.order(),
        }
    }

    /// Code of the uniformiser `pi`.
    pub fn uniformizer(&self) -> u64 {
        match self {
            ResidueRing::IntMod { p, m, .. } => p % m,
            ResidueRing::PolyMod { pi, modulus, .. } => pi.rem(modulus).to_index(),
        }
    }

    fn to_poly(&self, a: u64) -> Poly {
        match self {
            ResidueRing::PolyMod { pi, .. } => Poly::from_index(pi.p(), a),
            _ => unreachable!(),
        }
    }

    /// `min(k, v_pi(a))`.
    pub fn valuation(&self, a: u64) -> u32 {
        match self {
            ResidueRing::IntMod { p, k, .. } => {
                let mut v = 0;
                let mut x = a;
                while v < *k && x % p == 0 {
                    x /= p;
                    v += 1;
                }
                v
            }
            ResidueRing::PolyMod { pi, k, .. } => {
                let f = self.to_poly(a);
                if f.is_zero() {
                    *k
                } else {
                    f.multiplicity(pi).min(*k)
                }
            }
        }
    }

    /// For `a` divisible by `pi^i`, the residue of `a / pi^i` mod `pi`.
    pub fn level_digit(&self, a: u64, i: u32) -> u64 {
        match self {
            ResidueRing::IntMod { p, .. } => (a / p.pow(i)) % p,
            ResidueRing::PolyMod { pi, residue, .. } => {
                let f = self.to_poly(a);
                let (q, r) = f.div_rem(&pi.pow(i as u64));
                debug_assert!(r.is_zero());
                residue.from_poly(&q)
            }
        }
    }

    /// Reduction to `O/pi^j` for `j <= k`.
    pub fn reduce_to(&self, a: u64, j: u32) -> u64 {
        match self {
            ResidueRing::IntMod { p, .. } => a % p.pow(j),
            ResidueRing::PolyMod { pi, .. } => self.to_poly(a).rem(&pi.pow(j as u64)).to_index(),
        }
    }

    /// Reduce an element of `O` given as an integer or polynomial.
    pub fn from_poly(&self, f: &Poly) -> u64 {
        match self {
            ResidueRing::PolyMod { modulus, .. } => f.rem(modulus).to_index(),
            _ => panic!("polynomial into an integer residue ring"),
        }
    }
}

impl FiniteRing for ResidueRing {
    fn size(&self) -> u64 {
        match self {
            ResidueRing::IntMod { m, .. } => *m,
            ResidueRing::PolyMod { size, .. } => *size,
        }
    }
    fn characteristic(&self) -> u64 {
        match self {
            ResidueRing::IntMod { m, .. } => *m,
            ResidueRing::PolyMod { pi, .. } => pi.p(),
        }
    }
    fn add(&self, a: u64, b: u64) -> u64 {
        match self {
            ResidueRing::IntMod { m, .. } => (a + b) % m,
            ResidueRing::PolyMod { .. } => self.to_poly(a).add(&self.to_poly(b)).to_index(),
        }
    }
    fn neg(&self, a: u64) -> u64 {
        match self {
            ResidueRing::IntMod { m, .. } => (m - a % m) % m,
            ResidueRing::PolyMod { .. } => self.to_poly(a).neg().to_index(),
        }
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        match self {
            ResidueRing::IntMod { m, .. } => a * b % m,
            ResidueRing::PolyMod { modulus, .. } => self.to_poly(a).mul_mod(&self.to_poly(b), modulus).to_index(),
        }
    }
    fn from_int(&self, n: i64) -> u64 {
        match self {
            ResidueRing::IntMod { m, .. } => n.rem_euclid(*m as i64) as u64,
            ResidueRing::PolyMod { pi, .. } => n.rem_euclid(pi.p() as i64) as u64,
        }
    }
    fn is_unit(&self, a: u64) -> bool {
        self.valuation(a) == 0
    }
    fn inv(&self, a: u64) -> Option<u64> {
        if !self.is_unit(a) {
            return None;
        }
        match self {
            ResidueRing::IntMod { m, .. } => {
                let (g, x, _) = ext_gcd(a as i64, *m as i64);
                debug_assert_eq!(g, 1);
                Some(x.rem_euclid(*m as i64) as u64)
            }
            ResidueRing::PolyMod { size, .. } => {
                // unit group order divides size - size/q; brute force by power
                let mut x = a;
                let mut prev = 1;
                let mut steps = 0;
                while x != 1 {
                    prev = x;
                    x = self.mul(x, a);
                    steps += 1;
                    if steps > *size {
                        return None;
                    }
                }
                Some(if a == 1 { 1 } else { prev })
            }
        }
    }
    fn additive_basis(&self) -> Vec<u64> {
        match self {
            ResidueRing::IntMod { .. } => vec![1],
            ResidueRing::PolyMod { pi, k, .. } => {
                let n = pi.deg0() as u32 * k;
                (0..n).map(|i| pi.p().pow(i)).collect()
            }
        }
    }
    fn format(&self, a: u64) -> String {
        match self {
            ResidueRing::IntMod { .. } => a.to_string(),
            ResidueRing::PolyMod { .. } => self.to_poly(a).to_string(),
        }
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

impl fmt::Debug for ResidueRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueRing::IntMod { p, k, .. } => write!(f, "Z/{p}^{k}"),
            ResidueRing::PolyMod { pi, k, .. } => write!(f, "F_{}[t]/({})^{k}", pi.p(), pi),
        }
    }
}

/// A ring of order at most 256 with tabulated arithmetic.
#[derive(Clone)]
pub struct TableRing {
    size: u64,
    char: u64,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<Option<u8>>,
    basis: Vec<u64>,
    names: Vec<String>,
}

impl TableRing {
    pub fn new<R: FiniteRing>(r: &R) -> Result<Self> {
        let n = r.size();
        if n > 256 {
            return invalid("table ring needs order <= 256");
        }
        let mut add = vec![0u8; (n * n) as usize];
        let mut mul = vec![0u8; (n * n) as usize];
        for a in 0..n {
            for b in 0..n {
                add[(a * n + b) as usize] = r.add(a, b) as u8;
                mul[(a * n + b) as usize] = r.mul(a, b) as u8;
            }
        }
        Ok(TableRing {
            size: n,
            char: r.characteristic(),
            add,
            mul,
            neg: (0..n).map(|a| r.neg(a) as u8).collect(),
            inv: (0..n).map(|a| r.inv(a).map(|x| x as u8)).collect(),
            basis: r.additive_basis(),
            names: (0..n).map(|a| r.format(a)).collect(),
        })
    }
}

impl FiniteRing for TableRing {
    fn size(&self) -> u64 {
        self.size
    }
    fn characteristic(&self) -> u64 {
        self.char
    }
    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        self.add[(a * self.size + b) as usize] as u64
    }
    #[inline]
    fn neg(&self, a: u64) -> u64 {
        self.neg[a as usize] as u64
    }
    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.mul[(a * self.size + b) as usize] as u64
    }
    fn from_int(&self, n: i64) -> u64 {
        let c = self.char as i64;
        let r = n.rem_euclid(c) as u64;
        // repeated addition of one maps integers in [0, char) to codes
        let mut acc = 0;
        for _ in 0..r {
            acc = self.add(acc, 1);
        }
        acc
    }
    fn is_unit(&self, a: u64) -> bool {
        self.inv[a as usize].is_some()
    }
    fn inv(&self, a: u64) -> Option<u64> {
        self.inv[a as usize].map(|x| x as u64)
    }
    fn additive_basis(&self) -> Vec<u64> {
        self.basis.clone()
    }
    fn format(&self, a: u64) -> String {
        self.names[a as usize].clone()
    }
    fn one(&self) -> u64 {
        1
    }
}
