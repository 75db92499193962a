//! Square matrices over a tabulated finite local ring.

use crate::error::{invalid, Result};
use crate::polyarith::{FiniteRing, TableRing};

/// Row-major entries, each a ring code below 256.
pub type Mat = Vec<u8>;

/// `d x d` matrices over a ring of order at most 256.
#[derive(Clone)]
pub struct MatCtx {
    pub ring: TableRing,
    pub d: usize,
}

impl MatCtx {
    pub fn new<R: FiniteRing>(ring: &R, d: usize) -> Result<Self> {
        if d == 0 {
            return invalid("matrix size must be positive");
        }
        Ok(MatCtx { ring: TableRing::new(ring)?, d })
    }

    pub fn identity(&self) -> Mat {
        let d = self.d;
        let mut m = vec![0u8; d * d];
        for i in 0..d {
            m[i * d + i] = 1;
        }
        m
    }

    pub fn is_identity(&self, m: &[u8]) -> bool {
        let d = self.d;
        m.iter().enumerate().all(|(k, &x)| x == (k / d == k % d) as u8)
    }

    pub fn from_codes(&self, v: &[u64]) -> Mat {
        v.iter().map(|&x| x as u8).collect()
    }

    pub fn mul(&self, a: &[u8], b: &[u8]) -> Mat {
        let d = self.d;
        let r = &self.ring;
        let mut out = vec![0u8; d * d];
        for i in 0..d {
            for k in 0..d {
                let x = a[i * d + k] as u64;
                if x == 0 {
                    continue;
                }
                for j in 0..d {
                    let y = b[k * d + j] as u64;
                    if y != 0 {
                        let o = &mut out[i * d + j];
                        *o = r.add(*o as u64, r.mul(x, y)) as u8;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, a: &[u8], b: &[u8]) -> Mat {
        a.iter().zip(b).map(|(&x, &y)| self.ring.add(x as u64, y as u64) as u8).collect()
    }

    pub fn sub(&self, a: &[u8], b: &[u8]) -> Mat {
        a.iter().zip(b).map(|(&x, &y)| self.ring.sub(x as u64, y as u64) as u8).collect()
    }

    pub fn scale(&self, c: u64, a: &[u8]) -> Mat {
        a.iter().map(|&x| self.ring.mul(c, x as u64) as u8).collect()
    }

    /// Gauss-Jordan with unit pivots; over a local ring a matrix is
    /// invertible iff this succeeds.
    pub fn inverse(&self, a: &[u8]) -> Option<Mat> {
        let d = self.d;
        let r = &self.ring;
        let mut m: Vec<u64> = a.iter().map(|&x| x as u64).collect();
        let mut inv: Vec<u64> = self.identity().iter().map(|&x| x as u64).collect();
        for c in 0..d {
            let piv = (c..d).find(|&i| r.is_unit(m[i * d + c]))?;
            if piv != c {
                for j in 0..d {
                    m.swap(piv * d + j, c * d + j);
                    inv.swap(piv * d + j, c * d + j);
                }
            }
            let s = r.inv(m[c * d + c])?;
            for j in 0..d {
                m[c * d + j] = r.mul(s, m[c * d + j]);
                inv[c * d + j] = r.mul(s, inv[c * d + j]);
            }
            for i in 0..d {
                let f = m[i * d + c];
                if i == c || f == 0 {
                    continue;
                }
                let nf = r.neg(f);
                for j in 0..d {
                    m[i * d + j] = r.add(m[i * d + j], r.mul(nf, m[c * d + j]));
                    inv[i * d + j] = r.add(inv[i * d + j], r.mul(nf, inv[c * d + j]));
                }
            }
        }
        Some(inv.into_iter().map(|x| x as u8).collect())
    }

    /// Determinant by elimination with unit pivots (zero if none exists in
    /// some column, which over a local ring means a non-unit determinant;
    /// the returned value is then only meaningful as "not a unit").
    pub fn det(&self, a: &[u8]) -> u64 {
        let d = self.d;
        let r = &self.ring;
        let mut m: Vec<u64> = a.iter().map(|&x| x as u64).collect();
        let mut det = r.one();
        for c in 0..d {
            let Some(piv) = (c..d).find(|&i| r.is_unit(m[i * d + c])) else { return 0 };
            if piv != c {
                for j in 0..d {
                    m.swap(piv * d + j, c * d + j);
                }
                det = r.neg(det);
            }
            let pv = m[c * d + c];
            det = r.mul(det, pv);
            let s = r.inv(pv).expect("unit pivot");
            for i in c + 1..d {
                let f = r.mul(m[i * d + c], s);
                if f == 0 {
                    continue;
                }
                let nf = r.neg(f);
                for j in c..d {
                    m[i * d + j] = r.add(m[i * d + j], r.mul(nf, m[c * d + j]));
                }
            }
        }
        det
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(&self, a: &[u8], b: &[u8]) -> Mat {
        let ai = self.inverse(a).expect("invertible");
        let bi = self.inverse(b).expect("invertible");
        self.mul(&self.mul(&ai, &bi), &self.mul(a, b))
    }

    /// `g x g^-1`.
    pub fn conj(&self, g: &[u8], x: &[u8]) -> Mat {
        let gi = self.inverse(g).expect("invertible");
        self.mul(&self.mul(g, x), &gi)
    }

    pub fn pow(&self, a: &[u8], mut e: u64) -> Mat {
        let mut base = a.to_vec();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Entries formatted by the ring, as nested rows.
    pub fn format(&self, a: &[u8]) -> Vec<Vec<String>> {
        a.chunks(self.d).map(|row| row.iter().map(|&x| self.ring.format(x as u64)).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyarith::{FiniteField, ResidueRing};

    #[test]
    fn inverse_and_det() {
        let z8 = ResidueRing::integers(2, 3).unwrap();
        let m = MatCtx::new(&z8, 2).unwrap();
        let a = m.from_codes(&[3, 2, 4, 1]);
        assert_eq!(m.det(&a), 3);
        let ai = m.inverse(&a).unwrap();
        assert!(m.is_identity(&m.mul(&a, &ai)));
        assert!(m.inverse(&m.from_codes(&[2, 0, 0, 1])).is_none());
        let f4 = FiniteField::of_order(4).unwrap();
        let m = MatCtx::new(&f4, 3).unwrap();
        let a = m.from_codes(&[0, 1, 0, 2, 0, 0, 3, 3, 1]);
        let ai = m.inverse(&a).unwrap();
        assert!(m.is_identity(&m.mul(&ai, &a)));
        assert_eq!(m.pow(&a, 0), m.identity());
        assert_eq!(m.det(&m.mul(&a, &a)), f4.mul(m.det(&a), m.det(&a)));
    }
}
