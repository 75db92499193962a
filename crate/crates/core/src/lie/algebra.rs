//! The Chevalley Lie algebra over the integers and over finite fields.

use std::fmt;
use std::sync::Arc;

use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::{Error, Result};
use crate::polyarith::{FiniteField, FiniteRing};
use crate::rootsys::{compute_structure_constants, RootDatum, StructureConstants};

type Sparse = Vec<(usize, i64)>;

/// `g(Z)` with basis `e_alpha` (root indices `0..nr`) followed by `h_1..h_l`.
pub struct LieAlgebra {
    pub datum: RootDatum,
    pub constants: StructureConstants,
    n: usize,
    nr: usize,
    table: Vec<Sparse>,
    // ad(e_alpha)^j / j! for j = 1, 2, 3, stored by column
    ad: Vec<[Vec<Sparse>; 3]>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g({})", self.datum.label())
    }
}

fn axpy(out: &mut [i64], c: i64, v: &[(usize, i64)]) {
    for &(i, x) in v {
        out[i] += c * x;
    }
}

fn to_sparse(v: &[i64]) -> Sparse {
    v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x)).collect()
}

impl LieAlgebra {
    pub fn new(datum: RootDatum) -> Arc<Self> {
        let constants = compute_structure_constants(&datum);
        let nr = datum.num_roots();
        let l = datum.rank;
        let n = nr + l;
        let mut table = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = match (i < nr, j < nr) {
                    (true, true) => {
                        if j == datum.neg(i) {
                            datum.coroot_coords(i).iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (nr + k, c)).collect()
                        } else if let Some(c) = datum.sum(i, j) {
                            vec![(c, constants.get(i, j))]
                        } else {
                            Vec::new()
                        }
                    }
                    (true, false) => {
                        let c = datum.pairing(i, datum.simple(j - nr));
                        if c == 0 { Vec::new() } else { vec![(i, -c)] }
                    }
                    (false, true) => {
                        let c = datum.pairing(j, datum.simple(i - nr));
                        if c == 0 { Vec::new() } else { vec![(j, c)] }
                    }
                    (false, false) => Vec::new(),
                };
            }
        }
        let mut alg = LieAlgebra { datum, constants, n, nr, table, ad: Vec::new() };
        let mut ad = Vec::with_capacity(nr);
        for a in 0..nr {
            let mut e = vec![0i64; n];
            e[a] = 1;
            let mut cols: [Vec<Sparse>; 3] = Default::default();
            for b in 0..n {
                let mut w = vec![0i64; n];
                w[b] = 1;
                for (j, col) in cols.iter_mut().enumerate() {
                    w = alg.bracket(&e, &w);
                    let fact = [1, 2, 6][j];
                    assert!(w.iter().all(|x| x % fact == 0), "inexact divided power");
                    col.push(to_sparse(&w.iter().map(|x| x / fact).collect::<Vec<_>>()));
                }
            }
            ad.push(cols);
        }
        alg.ad = ad;
        Arc::new(alg)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn num_roots(&self) -> usize {
        self.nr
    }

    pub fn rank(&self) -> usize {
        self.n - self.nr
    }

    /// Index of `h_k` in the basis.
    pub fn h(&self, k: usize) -> usize {
        self.nr + k
    }

    /// `[b_i, b_j]` for basis elements.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.table[i * self.n + j]
    }

    pub fn bracket(&self, u: &[i64], v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.n];
        for (i, &x) in u.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (j, &y) in v.iter().enumerate().filter(|(_, &y)| y != 0) {
                axpy(&mut out, x * y, self.bracket_basis(i, j));
            }
        }
        out
    }

    /// `ad(e_alpha)^j v / j!`, with the division checked to be exact.
    pub fn divided_power_term(&self, alpha: usize, j: u32, v: &[i64]) -> Result<Vec<i64>> {
        let mut e = vec![0; self.n];
        e[alpha] = 1;
        let mut w = v.to_vec();
        let mut fact = 1;
        for k in 1..=j {
            w = self.bracket(&e, &w);
            fact *= k as i64;
        }
        if w.iter().any(|x| x % fact != 0) {
            return Err(Error::TheoremViolation(format!(
                "divided power of order {j} along {} is not integral",
                self.datum.describe(alpha)
            )));
        }
        Ok(w.iter().map(|x| x / fact).collect())
    }

    /// Column `b` of `ad(e_alpha)^j / j!` for `j` in `1..=3`.
    pub fn ad_column(&self, alpha: usize, j: usize, b: usize) -> &[(usize, i64)] {
        &self.ad[alpha][j - 1][b]
    }

    /// Matrix of `x_alpha(t)` acting on `g(R)`, row-major, columns are images
    /// of basis vectors.
    pub fn ad_exp_matrix<R: FiniteRing + ?Sized>(&self, r: &R, alpha: usize, t: u64) -> Vec<u64> {
        let n = self.n;
        let mut m = vec![0u64; n * n];
        for i in 0..n {
            m[i * n + i] = r.one();
        }
        let mut tp = r.one();
        for j in 1..=3 {
            tp = r.mul(tp, t);
            for b in 0..n {
                for &(c, x) in self.ad_column(alpha, j, b) {
                    let idx = c * n + b;
                    m[idx] = r.add(m[idx], r.mul(tp, r.from_int(x)));
                }
            }
        }
        m
    }

    /// Basis label: `e(1,1)` style for roots, `h1..hl` for the torus.
    pub fn basis_name(&self, i: usize) -> String {
        if i < self.nr {
            format!("e{}", self.datum.describe(i))
        } else {
            format!("h{}", i - self.nr + 1)
        }
    }
}

/// `g(F)` for a finite field `F`.
#[derive(Clone, Debug)]
pub struct ChevalleyAlgebra {
    pub alg: Arc<LieAlgebra>,
    pub field: FiniteField,
}

impl ChevalleyAlgebra {
    pub fn new(datum: RootDatum, field: FiniteField) -> Self {
        ChevalleyAlgebra { alg: LieAlgebra::new(datum), field }
    }

    pub fn over(alg: Arc<LieAlgebra>, field: FiniteField) -> Self {
        ChevalleyAlgebra { alg, field }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.alg.datum
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    /// `[F:F_p]`.
    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    /// Dimension over the prime field.
    pub fn fp_dim(&self) -> usize {
        self.dim() * self.degree()
    }

    pub fn same(&self, o: &ChevalleyAlgebra) -> bool {
        Arc::ptr_eq(&self.alg, &o.alg) && self.field.same(&o.field)
    }

    pub fn zero(&self) -> LieVector {
        LieVector { space: self.clone(), coords: vec![0; self.dim()] }
    }

    pub fn basis(&self, i: usize, c: u64) -> LieVector {
        let mut v = self.zero();
        v.coords[i] = c;
        v
    }

    pub fn vector(&self, coords: Vec<u64>) -> Result<LieVector> {
        if coords.len() != self.dim() || coords.iter().any(|&c| c >= self.field.order()) {
            return Err(Error::InvalidInput("coordinates do not fit the algebra".into()));
        }
        Ok(LieVector { space: self.clone(), coords })
    }

    pub fn e(&self, alpha: usize) -> LieVector {
        self.basis(alpha, 1)
    }

    /// `h_alpha` as a combination of the simple coroots.
    pub fn h_root(&self, alpha: usize) -> LieVector {
        let mut v = self.zero();
        for (k, c) in self.datum().coroot_coords(alpha).into_iter().enumerate() {
            v.coords[self.alg.h(k)] = self.field.from_int(c);
        }
        v
    }

    pub fn bracket_raw(&self, u: &[u64], v: &[u64]) -> Vec<u64> {
        let f = &self.field;
        let mut out = vec![0; self.dim()];
        for (i, &x) in u.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (j, &y) in v.iter().enumerate().filter(|(_, &y)| y != 0) {
                let xy = f.mul(x, y);
                for &(c, n) in self.alg.bracket_basis(i, j) {
                    out[c] = f.add(out[c], f.mul(xy, f.from_int(n)));
                }
            }
        }
        out
    }

    pub fn bracket(&self, u: &LieVector, v: &LieVector) -> Result<LieVector> {
        if !self.same(&u.space) || !self.same(&v.space) {
            return Err(Error::InvalidInput("vectors live in different algebras".into()));
        }
        Ok(LieVector { space: self.clone(), coords: self.bracket_raw(&u.coords, &v.coords) })
    }

    /// `x_alpha(t) . v = v + t[e,v] + t^2 [e,[e,v]]/2 + t^3 [e,[e,[e,v]]]/6`.
    pub fn act_raw(&self, alpha: usize, t: u64, v: &[u64]) -> Vec<u64> {
        let f = &self.field;
        let mut out = v.to_vec();
        let mut tp = 1;
        for j in 1..=3 {
            tp = f.mul(tp, t);
            if tp == 0 {
                break;
            }
            for (b, &x) in v.iter().enumerate().filter(|(_, &x)| x != 0) {
                let s = f.mul(tp, x);
                for &(c, n) in self.alg.ad_column(alpha, j, b) {
                    out[c] = f.add(out[c], f.mul(s, f.from_int(n)));
                }
            }
        }
        out
    }

    pub fn adjoint_action(&self, alpha: usize, t: u64, v: &LieVector) -> LieVector {
        LieVector { space: self.clone(), coords: self.act_raw(alpha, t, &v.coords) }
    }

    pub fn scale_raw(&self, c: u64, v: &[u64]) -> Vec<u64> {
        v.iter().map(|&x| self.field.mul(c, x)).collect()
    }

    /// Coordinates over `F_p`: entry `b * m + j` is digit `j` of coordinate `b`.
    pub fn flatten(&self, v: &[u64]) -> Vec<u64> {
        v.iter().flat_map(|&x| self.field.digits(x)).collect()
    }

    pub fn unflatten(&self, w: &[u64]) -> Vec<u64> {
        w.chunks(self.degree()).map(|c| self.field.from_digits(c)).collect()
    }

    /// Root elements `x_alpha(b)` with `b` running over the power basis of `F`;
    /// these generate `G(F)`.
    pub fn root_generators(&self) -> Vec<(usize, u64)> {
        let basis = FiniteRing::additive_basis(&self.field);
        (0..self.alg.num_roots()).flat_map(|a| basis.iter().map(move |&b| (a, b))).collect()
    }
}

/// An element of `g(F)`, dense over the Chevalley basis.
#[derive(Clone, Debug)]
pub struct LieVector {
    pub space: ChevalleyAlgebra,
    pub coords: Vec<u64>,
}

impl PartialEq for LieVector {
    fn eq(&self, o: &Self) -> bool {
        self.space.same(&o.space) && self.coords == o.coords
    }
}

impl LieVector {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, o: &LieVector) -> LieVector {
        let f = &self.space.field;
        let coords = self.coords.iter().zip(&o.coords).map(|(&a, &b)| f.add(a, b)).collect();
        LieVector { space: self.space.clone(), coords }
    }

    pub fn scale(&self, c: u64) -> LieVector {
        LieVector { space: self.space.clone(), coords: self.space.scale_raw(c, &self.coords) }
    }

    pub fn neg(&self) -> LieVector {
        self.scale(self.space.field.from_int(-1))
    }

    pub fn sub(&self, o: &LieVector) -> LieVector {
        self.add(&o.neg())
    }
}

impl Serialize for LieVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let nz: Vec<_> = self.coords.iter().enumerate().filter(|(_, &c)| c != 0).collect();
        let mut m = s.serialize_map(Some(nz.len()))?;
        for (i, &c) in nz {
            m.serialize_entry(&self.space.alg.basis_name(i), &self.space.field.format(c))?;
        }
        m.end()
    }
}
