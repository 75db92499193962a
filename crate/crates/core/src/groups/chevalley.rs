//! Root elements of `G(R)` in the defining (type A) or adjoint representation.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::matrix::{Mat, MatCtx};
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::polyarith::{FiniteField, FiniteRing};
use crate::rootsys::{CartanType, RootDatum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    /// `SL_{l+1}` for type `A_l`.
    Defining,
    /// Action on the Chevalley lattice, dimension `dim(G)`.
    Adjoint,
}

#[derive(Clone)]
pub struct ChevalleyGroup {
    pub alg: Arc<LieAlgebra>,
    pub rep: Representation,
    pub m: MatCtx,
    // c_alpha with E_ij = c_alpha e_alpha under sl_d = g (type A only)
    signs: Vec<i64>,
}

/// `(i, j)` with `alpha = eps_i - eps_j` in type A.
fn eps_pair(d: &RootDatum, a: usize) -> (usize, usize) {
    let v = &d.roots[a].ambient;
    let i = v.iter().position(|&x| x == 1).expect("type A root");
    let j = v.iter().position(|&x| x == -1).expect("type A root");
    (i, j)
}

fn type_a_signs(alg: &LieAlgebra) -> Vec<i64> {
    let d = &alg.datum;
    let c = &alg.constants;
    let np = d.num_positive();
    let mut s = vec![0i64; d.num_roots()];
    for xi in 0..np {
        if d.roots[xi].height == 1 {
            s[xi] = 1;
            continue;
        }
        let (a, b) = c.extraspecial(xi).expect("extraspecial pair");
        let sigma = matrix_sign(d, a, b);
        s[xi] = s[a] * s[b] * sigma * c.get(a, b);
    }
    for a in 0..np {
        s[d.neg(a)] = s[a];
    }
    s
}

/// `[E_a, E_b] = sigma E_{a+b}` for type A roots with `a+b` a root.
fn matrix_sign(d: &RootDatum, a: usize, b: usize) -> i64 {
    let (_, j) = eps_pair(d, a);
    let (k, _) = eps_pair(d, b);
    if j == k {
        1
    } else {
        -1
    }
}

impl ChevalleyGroup {
    pub fn new<R: FiniteRing>(datum: RootDatum, rep: Representation, ring: &R) -> Result<Self> {
        Self::with_algebra(LieAlgebra::new(datum), rep, ring)
    }

    pub fn with_algebra<R: FiniteRing>(alg: Arc<LieAlgebra>, rep: Representation, ring: &R) -> Result<Self> {
        let kind = alg.datum.kind;
        let d = match (rep, kind) {
            (Representation::Defining, CartanType::A) => alg.datum.rank + 1,
            (Representation::Adjoint, CartanType::A | CartanType::B | CartanType::C | CartanType::D | CartanType::G) => {
                alg.dim()
            }
            _ => {
                return Err(Error::Unsupported(format!("{:?} representation of {}", rep, alg.datum.label())));
            }
        };
        let signs = if kind == CartanType::A { type_a_signs(&alg) } else { Vec::new() };
        Ok(ChevalleyGroup { m: MatCtx::new(ring, d)?, alg, rep, signs })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.alg.datum
    }

    pub fn d(&self) -> usize {
        self.m.d
    }

    /// `c_alpha` of the identification `E_ij = c_alpha e_alpha` (type A).
    pub fn sign(&self, alpha: usize) -> i64 {
        self.signs[alpha]
    }

    /// `x_alpha(t)`.
    pub fn root_element(&self, alpha: usize, t: u64) -> Mat {
        let r = &self.m.ring;
        match self.rep {
            Representation::Defining => {
                let (i, j) = eps_pair(self.datum(), alpha);
                let mut m = self.m.identity();
                m[i * self.d() + j] = r.mul(r.from_int(self.signs[alpha]), t) as u8;
                m
            }
            Representation::Adjoint => self.m.from_codes(&self.alg.ad_exp_matrix(r, alpha, t)),
        }
    }

    /// `x_alpha(b)` for every root and every additive generator `b`.
    pub fn generators(&self) -> Vec<Mat> {
        let basis = self.m.ring.additive_basis();
        (0..self.datum().num_roots()).flat_map(|a| basis.iter().map(move |&b| (a, b))).map(|(a, b)| self.root_element(a, b)).collect()
    }

    /// Root elements with parameters in `c * R`.
    pub fn generators_scaled(&self, c: u64) -> Vec<Mat> {
        let r = &self.m.ring;
        let basis = r.additive_basis();
        let mut out = Vec::new();
        for a in 0..self.datum().num_roots() {
            for &b in &basis {
                out.push(self.root_element(a, r.mul(c, b)));
            }
        }
        out
    }

    /// Lie coordinates of a trace-zero matrix over `field` (type A).
    pub fn sl_to_lie(&self, field: &FiniteField, x: &[u64]) -> Vec<u64> {
        let d = self.d();
        let dat = self.datum();
        let mut v = vec![0u64; self.alg.dim()];
        for a in 0..dat.num_roots() {
            let (i, j) = eps_pair(dat, a);
            v[a] = field.mul(field.from_int(self.signs[a]), x[i * d + j]);
        }
        let mut acc = 0;
        for k in 0..d - 1 {
            acc = field.add(acc, x[k * d + k]);
            v[self.alg.h(k)] = acc;
        }
        v
    }

    /// Type A: conjugating each basis matrix by every root element agrees
    /// with the adjoint action. `field` must be the coefficient ring.
    pub fn conjugation_matches_action(&self, field: &FiniteField) -> bool {
        let lie = crate::lie::ChevalleyAlgebra::over(self.alg.clone(), field.clone());
        let n = lie.dim();
        (0..self.datum().num_roots()).all(|a| {
            field.elements().all(|t| {
                let x = self.root_element(a, t);
                (0..n).all(|b| {
                    let e = lie.basis(b, 1).coords;
                    let conj = self.m.conj(&x, &self.m.from_codes(&self.lie_to_sl(field, &e)));
                    self.sl_to_lie(field, &conj.iter().map(|&c| c as u64).collect::<Vec<_>>()) == lie.act_raw(a, t, &e)
                })
            })
        })
    }

    /// Inverse of [`sl_to_lie`](Self::sl_to_lie).
    pub fn lie_to_sl(&self, field: &FiniteField, v: &[u64]) -> Vec<u64> {
        let d = self.d();
        let dat = self.datum();
        let mut x = vec![0u64; d * d];
        for a in 0..dat.num_roots() {
            let (i, j) = eps_pair(dat, a);
            x[i * d + j] = field.mul(field.from_int(self.signs[a]), v[a]);
        }
        for k in 0..d - 1 {
            let c = v[self.alg.h(k)];
            x[k * d + k] = field.add(x[k * d + k], c);
            x[(k + 1) * d + k + 1] = field.sub(x[(k + 1) * d + k + 1], c);
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::ChevalleyAlgebra;

    #[test]
    fn signs_make_an_isomorphism() {
        for l in 1..=4 {
            let g = ChevalleyGroup::new(RootDatum::new(CartanType::A, l).unwrap(), Representation::Defining, &FiniteField::prime(2).unwrap()).unwrap();
            let d = g.datum();
            for a in 0..d.num_roots() {
                for b in 0..d.num_roots() {
                    if let Some(c) = d.sum(a, b) {
                        assert_eq!(g.sign(c) * g.alg.constants.get(a, b), g.sign(a) * g.sign(b) * matrix_sign(d, a, b));
                    }
                }
            }
        }
    }

    #[test]
    fn sl2_root_element_and_inverse() {
        let f3 = FiniteField::prime(3).unwrap();
        let g = ChevalleyGroup::new(RootDatum::new(CartanType::A, 1).unwrap(), Representation::Defining, &f3).unwrap();
        assert_eq!(g.root_element(0, 1), vec![1, 1, 0, 1]);
        let x = g.root_element(0, 2);
        let y = g.root_element(0, 1);
        assert!(g.m.is_identity(&g.m.mul(&x, &y)));
    }

    #[test]
    fn adjoint_matches_conjugation_type_a() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let f = FiniteField::of_order(q).unwrap();
            let g = ChevalleyGroup::new(RootDatum::new(CartanType::A, 2).unwrap(), Representation::Defining, &f).unwrap();
            let lie = ChevalleyAlgebra::over(g.alg.clone(), f.clone());
            let n = lie.dim();
            for a in 0..g.datum().num_roots() {
                for t in f.elements() {
                    let x = g.root_element(a, t);
                    for b in 0..n {
                        let mb = g.lie_to_sl(&f, &lie.basis(b, 1).coords);
                        let conj = g.m.conj(&x, &g.m.from_codes(&mb));
                        let got = g.sl_to_lie(&f, &conj.iter().map(|&c| c as u64).collect::<Vec<_>>());
                        assert_eq!(got, lie.act_raw(a, t, &lie.basis(b, 1).coords), "q={q} a={a} t={t} b={b}");
                    }
                }
            }
        }
    }

    #[test]
    fn adjoint_representation_matches_lie() {
        let f = FiniteField::of_order(4).unwrap();
        for (k, l) in [(CartanType::A, 2), (CartanType::C, 2), (CartanType::G, 2)] {
            let g = ChevalleyGroup::new(RootDatum::new(k, l).unwrap(), Representation::Adjoint, &f).unwrap();
            let lie = ChevalleyAlgebra::over(g.alg.clone(), f.clone());
            let n = lie.dim();
            for a in 0..g.datum().num_roots() {
                let x = g.root_element(a, 3);
                for b in 0..n {
                    let col: Vec<u64> = (0..n).map(|r| x[r * n + b] as u64).collect();
                    assert_eq!(col, lie.act_raw(a, 3, &lie.basis(b, 1).coords));
                }
            }
        }
        assert!(ChevalleyGroup::new(RootDatum::new(CartanType::F, 4).unwrap(), Representation::Adjoint, &f).is_err());
        assert!(ChevalleyGroup::new(RootDatum::new(CartanType::C, 2).unwrap(), Representation::Defining, &f).is_err());
    }

    #[test]
    fn chevalley_commutator_formula() {
        for q in [2u64, 3, 4, 5] {
            let f = FiniteField::of_order(q).unwrap();
            let g = ChevalleyGroup::new(RootDatum::new(CartanType::A, 2).unwrap(), Representation::Defining, &f).unwrap();
            let d = g.datum().clone();
            for a in 0..d.num_roots() {
                for b in 0..d.num_roots() {
                    let Some(c) = d.sum(a, b) else { continue };
                    let n = g.alg.constants.get(a, b);
                    for s in f.elements() {
                        for t in f.elements() {
                            let lhs = g.m.commutator(&g.root_element(a, s), &g.root_element(b, t));
                            let st = f.mul(s, t);
                            let plus = g.root_element(c, f.mul(f.from_int(n), st));
                            let minus = g.root_element(c, f.mul(f.from_int(-n), st));
                            assert!(lhs == plus || lhs == minus);
                        }
                    }
                }
            }
        }
    }
}
