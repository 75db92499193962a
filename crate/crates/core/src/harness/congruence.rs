//! Smallest congruence quotient detecting an element.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::group_order_mod;
use crate::polyarith::prime::primes_up_to;
use crate::polyarith::search::irreducibles_of_degree;
use crate::polyarith::{FactoredElement, Poly};
use crate::rootsys::RootDatum;

/// `p^k` in `Z`, or `f^k` in `F_p[t]` with `f` monic irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Modulus {
    Int { p: u64, k: u32 },
    Poly { f: Poly, k: u32 },
}

impl Modulus {
    /// Size of the residue field.
    pub fn residue_order(&self) -> u64 {
        match self {
            Modulus::Int { p, .. } => *p,
            Modulus::Poly { f, .. } => f.p().pow(f.deg0() as u32),
        }
    }

    pub fn k(&self) -> u32 {
        match self {
            Modulus::Int { k, .. } | Modulus::Poly { k, .. } => *k,
        }
    }

    /// `|O / m|`.
    pub fn norm(&self) -> u128 {
        (self.residue_order() as u128).pow(self.k())
    }

    pub fn label(&self) -> String {
        match self {
            Modulus::Int { p, k } => format!("{p}^{k}"),
            Modulus::Poly { f, k } => format!("({f})^{k}"),
        }
    }
}

/// All moduli of norm `<= budget`, by increasing norm.
pub fn moduli_int(budget: u64) -> Vec<Modulus> {
    let mut out = Vec::new();
    for p in primes_up_to(budget) {
        let mut q = p;
        let mut k = 1;
        while q <= budget {
            out.push(Modulus::Int { p, k });
            k += 1;
            q = match q.checked_mul(p) {
                Some(v) => v,
                None => break,
            };
        }
    }
    out.sort_by_key(|m| (m.norm(), m.label()));
    out
}

pub fn moduli_poly(p: u64, budget: u64) -> Vec<Modulus> {
    let mut out = Vec::new();
    let mut e = 1;
    while (p as u128).pow(e as u32) <= budget as u128 {
        for f in irreducibles_of_degree(p, e) {
            let mut k = 1;
            while (p as u128).pow((e * k) as u32) <= budget as u128 {
                out.push(Modulus::Poly { f: f.clone(), k: k as u32 });
                k += 1;
            }
        }
        e += 1;
    }
    out.sort_by_key(|m| m.norm());
    out
}

/// Element of `G(O)` whose reductions are tested.
#[derive(Clone, Debug)]
pub enum CongruenceElement {
    /// Matrix over `Z` in the defining representation.
    IntMatrix { d: usize, entries: Vec<BigInt> },
    /// Matrix over `F_p[t]`.
    PolyMatrix { d: usize, entries: Vec<Poly> },
    /// `x_alpha(L)` (or a product of root elements with the same `L`) with
    /// `L` factored over `Z`.
    IntRootElement(FactoredElement<u64>),
    /// Same over `F_p[t]`.
    PolyRootElement { p: u64, l: FactoredElement<Poly> },
}

/// `(nontrivial, scalar)` image modulo `m`.
pub fn image_mod(g: &CongruenceElement, m: &Modulus) -> Result<(bool, bool)> {
    Ok(match (g, m) {
        (CongruenceElement::IntMatrix { d, entries }, Modulus::Int { p, k }) => {
            let n = BigInt::from(*p).pow(*k);
            let r: Vec<BigInt> = entries.iter().map(|e| ((e % &n) + &n) % &n).collect();
            scalar_flags(*d, &r, |x| x.is_zero(), |x| x.is_one(), |a, b| a == b)
        }
        (CongruenceElement::PolyMatrix { d, entries }, Modulus::Poly { f, k }) => {
            let n = f.pow(*k as u64);
            let r: Vec<Poly> = entries.iter().map(|e| e.rem(&n)).collect();
            scalar_flags(*d, &r, |x| x.is_zero(), |x| x.is_one(), |a, b| a == b)
        }
        (CongruenceElement::IntRootElement(l), Modulus::Int { p, k }) => (l.multiplicity(p) < *k as u64, false),
        (CongruenceElement::PolyRootElement { l, .. }, Modulus::Poly { f, k }) => (l.multiplicity(f) < *k as u64, false),
        _ => return Err(Error::InvalidInput("element and modulus live over different rings".into())),
    })
}

fn scalar_flags<T>(d: usize, r: &[T], zero: impl Fn(&T) -> bool, one: impl Fn(&T) -> bool, eq: impl Fn(&T, &T) -> bool) -> (bool, bool) {
    let diag_ok = |k: usize| k / d != k % d || eq(&r[k], &r[0]);
    let scalar = (0..d * d).all(|k| if k / d == k % d { diag_ok(k) } else { zero(&r[k]) });
    let identity = scalar && one(&r[0]);
    (!identity, scalar)
}

#[derive(Clone, Debug, Serialize)]
pub struct CongruenceHit {
    pub modulus: Modulus,
    pub norm: u128,
    #[serde(serialize_with = "crate::serde_big::as_string")]
    pub order: BigUint,
    pub image_scalar: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CongruenceSearch {
    /// Smallest `|G(O/m)|` with nontrivial image.
    pub hit: CongruenceHit,
    /// Smallest with non-scalar image, if different.
    pub nonscalar: Option<CongruenceHit>,
    pub moduli_tried: usize,
}

/// Smallest-order `G(O/m)` over the moduli of norm `<= budget` in which `g`
/// survives. Ties go to the smaller norm.
pub fn min_detecting_congruence_quotient(d: &RootDatum, g: &CongruenceElement, budget: u64) -> Result<CongruenceSearch> {
    let moduli = match g {
        CongruenceElement::IntMatrix { .. } | CongruenceElement::IntRootElement(_) => moduli_int(budget),
        CongruenceElement::PolyMatrix { entries, .. } => {
            moduli_poly(entries.first().map(Poly::p).ok_or_else(|| Error::InvalidInput("empty matrix".into()))?, budget)
        }
        CongruenceElement::PolyRootElement { p, .. } => moduli_poly(*p, budget),
    };
    let mut best: Option<CongruenceHit> = None;
    let mut best_ns: Option<CongruenceHit> = None;
    for m in &moduli {
        let (nontrivial, scalar) = image_mod(g, m)?;
        if !nontrivial {
            continue;
        }
        let order = group_order_mod(d, m.residue_order(), m.k())?;
        let hit = CongruenceHit { modulus: m.clone(), norm: m.norm(), order, image_scalar: scalar };
        if best.as_ref().map_or(true, |b| hit.order < b.order) {
            best = Some(hit.clone());
        }
        if !scalar && best_ns.as_ref().map_or(true, |b| hit.order < b.order) {
            best_ns = Some(hit);
        }
    }
    let hit = best.ok_or_else(|| Error::NotFound(format!("no detecting modulus of norm <= {budget}")))?;
    let nonscalar = best_ns.filter(|h| h.modulus != hit.modulus);
    Ok(CongruenceSearch { hit, nonscalar, moduli_tried: moduli.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::CartanType;

    fn xa(d: usize, t: i64) -> CongruenceElement {
        let mut e: Vec<BigInt> = (0..d * d).map(|k| BigInt::from((k / d == k % d) as i64)).collect();
        e[1] = t.into();
        CongruenceElement::IntMatrix { d, entries: e }
    }

    #[test]
    fn sl3_examples() {
        let a2 = RootDatum::new(CartanType::A, 2).unwrap();
        let r = min_detecting_congruence_quotient(&a2, &xa(3, 2), 50).unwrap();
        assert_eq!(r.hit.modulus, Modulus::Int { p: 3, k: 1 });
        assert_eq!(r.hit.order, 5616u32.into());
        let r = min_detecting_congruence_quotient(&a2, &xa(3, 1), 50).unwrap();
        assert_eq!(r.hit.modulus, Modulus::Int { p: 2, k: 1 });
        let l = crate::polyarith::lcm_up_to(4).pow(24);
        let r = min_detecting_congruence_quotient(&a2, &CongruenceElement::IntRootElement(l), 50).unwrap();
        assert_eq!(r.hit.modulus, Modulus::Int { p: 5, k: 1 });
    }

    #[test]
    fn monotone_in_budget() {
        let a1 = RootDatum::new(CartanType::A, 1).unwrap();
        let g = xa(2, 720);
        let mut last: Option<BigUint> = None;
        for b in [7, 8, 16, 30, 64, 128] {
            if let Ok(r) = min_detecting_congruence_quotient(&a1, &g, b) {
                if let Some(o) = &last {
                    assert!(r.hit.order <= *o);
                }
                last = Some(r.hit.order);
            }
        }
        assert!(min_detecting_congruence_quotient(&a1, &g, 6).is_err());
        // -I: scalar everywhere except mod 2, where it is trivial
        let minus = CongruenceElement::IntMatrix { d: 2, entries: vec![(-1).into(), 0.into(), 0.into(), (-1).into()] };
        let r = min_detecting_congruence_quotient(&a1, &minus, 20).unwrap();
        assert!(r.hit.image_scalar && r.nonscalar.is_none());
    }

    #[test]
    fn poly_moduli() {
        let m = moduli_poly(2, 16);
        // t, t+1 (k = 1..4), t^2+t+1 (k = 1, 2), two cubics, three quartics
        assert_eq!(m.len(), 4 + 4 + 2 + 2 + 3);
        let a1 = RootDatum::new(CartanType::A, 1).unwrap();
        let f = crate::polyarith::lcm_polys_up_to_degree(2, 2);
        let r = min_detecting_congruence_quotient(&a1, &CongruenceElement::PolyRootElement { p: 2, l: f }, 16).unwrap();
        assert_eq!(r.hit.norm, 8);
    }
}
