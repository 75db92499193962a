//! Univariate polynomials over a [`FiniteField`].

use std::fmt;

use super::field::FiniteField;
use super::poly::Poly;

#[derive(Clone, PartialEq, Eq)]
pub struct FieldPoly {
    field: FiniteField,
    c: Vec<u64>,
}

impl FieldPoly {
    pub fn new(field: &FiniteField, mut c: Vec<u64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        FieldPoly { field: field.clone(), c }
    }

    pub fn zero(field: &FiniteField) -> Self {
        FieldPoly::new(field, vec![])
    }

    pub fn one(field: &FiniteField) -> Self {
        FieldPoly::new(field, vec![1])
    }

    /// The indeterminate `y`.
    pub fn y(field: &FiniteField) -> Self {
        FieldPoly::new(field, vec![0, 1])
    }

    /// Lift an `F_p[y]` polynomial into `F[y]`.
    pub fn from_prime_poly(field: &FiniteField, f: &Poly) -> Self {
        FieldPoly::new(field, f.coeffs().iter().map(|&a| field.from_int(a as i64)).collect())
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
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

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> FieldPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).unwrap();
        self.scale(inv)
    }

    pub fn scale(&self, a: u64) -> FieldPoly {
        let f = &self.field;
        FieldPoly::new(f, self.c.iter().map(|&x| f.mul(x, a)).collect())
    }

    pub fn add(&self, o: &FieldPoly) -> FieldPoly {
        let f = &self.field;
        let n = self.c.len().max(o.c.len());
        FieldPoly::new(f, (0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &FieldPoly) -> FieldPoly {
        let f = &self.field;
        let n = self.c.len().max(o.c.len());
        FieldPoly::new(f, (0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn mul(&self, o: &FieldPoly) -> FieldPoly {
        let f = &self.field;
        if self.is_zero() || o.is_zero() {
            return FieldPoly::zero(f);
        }
        let mut out = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        FieldPoly::new(f, out)
    }

    pub fn div_rem(&self, d: &FieldPoly) -> (FieldPoly, FieldPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let f = &self.field;
        let dd = d.c.len() - 1;
        if self.c.len() <= dd {
            return (FieldPoly::zero(f), self.clone());
        }
        let inv = f.inv(d.leading()).unwrap();
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let coef = f.mul(r[i + dd], inv);
            if coef == 0 {
                continue;
            }
            q[i] = coef;
            for j in 0..=dd {
                r[i + j] = f.sub(r[i + j], f.mul(coef, d.c[j]));
            }
        }
        r.truncate(dd);
        (FieldPoly::new(f, q), FieldPoly::new(f, r))
    }

    pub fn rem(&self, d: &FieldPoly) -> FieldPoly {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &FieldPoly) -> FieldPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> FieldPoly {
        let f = &self.field;
        FieldPoly::new(
            f,
            self.c.iter().enumerate().skip(1).map(|(i, &a)| f.mul(a, f.from_int(i as i64))).collect(),
        )
    }

    pub fn mul_mod(&self, o: &FieldPoly, m: &FieldPoly) -> FieldPoly {
        self.mul(o).rem(m)
    }

    /// `self^e mod m` with exponent given as little-endian `u64` limbs.
    pub fn pow_mod_big(&self, e: &num_bigint::BigUint, m: &FieldPoly) -> FieldPoly {
        let mut r = FieldPoly::one(&self.field).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            r = r.mul_mod(&r, m);
            if e.bit(i) {
                r = r.mul_mod(&base, m);
            }
        }
        r
    }

    pub fn pow_mod(&self, e: u64, m: &FieldPoly) -> FieldPoly {
        self.pow_mod_big(&num_bigint::BigUint::from(e), m)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = &self.field;
        self.c.iter().rev().fold(0, |acc, &a| f.add(f.mul(acc, x), a))
    }
}

impl fmt::Debug for FieldPoly {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(i, &a)| format!("({})*y^{i}", self.field.format(a)))
            .collect();
        write!(fm, "{}", if terms.is_empty() { "0".into() } else { terms.join("+") })
    }
}
