//! Subspaces of `F_p^n` in reduced row echelon form.

use serde::Serialize;

use crate::polyarith::prime::inv_mod;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FpSubspace {
    pub p: u64,
    pub ambient: usize,
    /// Reduced echelon basis, sorted by pivot column.
    pub rows: Vec<Vec<u64>>,
    #[serde(skip)]
    pivots: Vec<usize>,
}

impl FpSubspace {
    pub fn zero(p: u64, ambient: usize) -> Self {
        FpSubspace { p, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(p: u64, ambient: usize) -> Self {
        let mut s = Self::zero(p, ambient);
        for i in 0..ambient {
            let mut v = vec![0; ambient];
            v[i] = 1;
            s.insert(&v);
        }
        s
    }

    pub fn span<'a, I: IntoIterator<Item = &'a Vec<u64>>>(p: u64, ambient: usize, vecs: I) -> Self {
        let mut s = Self::zero(p, ambient);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    /// Span of coordinate vectors.
    pub fn coordinate(p: u64, ambient: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::zero(p, ambient);
        for i in idx {
            let mut v = vec![0; ambient];
            v[i] = 1;
            s.insert(&v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut w: Vec<u64> = v.iter().map(|x| x % p).collect();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = w[c];
            if f != 0 {
                let m = p - f;
                for (x, &r) in w.iter_mut().zip(row) {
                    *x = (*x + m * r) % p;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length");
        let p = self.p;
        let mut w = self.reduce(v);
        let Some(c) = w.iter().position(|&x| x != 0) else { return false };
        let inv = inv_mod(w[c], p);
        w.iter_mut().for_each(|x| *x = *x * inv % p);
        for row in self.rows.iter_mut() {
            let f = row[c];
            if f != 0 {
                let m = p - f;
                for (x, &r) in row.iter_mut().zip(&w) {
                    *x = (*x + m * r) % p;
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < c);
        self.pivots.insert(pos, c);
        self.rows.insert(pos, w);
        true
    }

    pub fn is_subspace_of(&self, o: &FpSubspace) -> bool {
        self.rows.iter().all(|r| o.contains(r))
    }

    pub fn sum(&self, o: &FpSubspace) -> FpSubspace {
        let mut s = self.clone();
        for r in &o.rows {
            s.insert(r);
        }
        s
    }

    /// Zassenhaus: rows `(u|u)` and `(v|0)`; rows with vanishing left half
    /// span the intersection.
    pub fn intersect(&self, o: &FpSubspace) -> FpSubspace {
        let n = self.ambient;
        let mut z = FpSubspace::zero(self.p, 2 * n);
        for u in &self.rows {
            let mut w = u.clone();
            w.extend_from_slice(u);
            z.insert(&w);
        }
        for v in &o.rows {
            let mut w = v.clone();
            w.extend(std::iter::repeat(0).take(n));
            z.insert(&w);
        }
        let mut out = FpSubspace::zero(self.p, n);
        for (row, &c) in z.rows.iter().zip(&z.pivots) {
            if c >= n {
                out.insert(&row[n..]);
            }
        }
        out
    }

    /// Kernel of the linear map sending the `i`-th standard basis vector to
    /// `images[i]`.
    pub fn kernel(p: u64, images: &[Vec<u64>]) -> FpSubspace {
        let n = images.len();
        let m = images.first().map_or(0, |v| v.len());
        let mut z = FpSubspace::zero(p, m + n);
        for (i, img) in images.iter().enumerate() {
            let mut w = img.clone();
            w.extend((0..n).map(|j| (i == j) as u64));
            z.insert(&w);
        }
        let mut out = FpSubspace::zero(p, n);
        for (row, &c) in z.rows.iter().zip(&z.pivots) {
            if c >= m {
                out.insert(&row[m..]);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rand_space(rng: &mut ChaCha8Rng, p: u64, n: usize, k: usize) -> FpSubspace {
        let vs: Vec<Vec<u64>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect()).collect();
        FpSubspace::span(p, n, &vs)
    }

    #[test]
    fn dimension_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &p in &[2u64, 3, 5] {
            for _ in 0..50 {
                let n = rng.gen_range(1..9);
                let (ka, kb) = (rng.gen_range(0..n + 1), rng.gen_range(0..n + 1));
                let a = rand_space(&mut rng, p, n, ka);
                let b = rand_space(&mut rng, p, n, kb);
                let s = a.sum(&b);
                let i = a.intersect(&b);
                assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
                assert!(i.is_subspace_of(&a) && i.is_subspace_of(&b));
                // brute-force membership against enumeration for tiny cases
                if p == 2 && n <= 6 {
                    for code in 0..(1u64 << n) {
                        let v: Vec<u64> = (0..n).map(|j| (code >> j) & 1).collect();
                        assert_eq!(i.contains(&v), a.contains(&v) && b.contains(&v));
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_and_kernel() {
        let a = FpSubspace::span(3, 3, &[vec![1, 2, 0], vec![0, 1, 1]]);
        let b = FpSubspace::span(3, 3, &[vec![1, 0, 1], vec![0, 2, 2]]);
        assert_eq!(a, b);
        let k = FpSubspace::kernel(2, &[vec![1, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(k.rows, vec![vec![1, 1, 0]]);
        let f = FpSubspace::full(5, 4);
        assert_eq!(f.codim(), 0);
        assert!(f.contains(&[4, 3, 2, 1]));
    }
}
