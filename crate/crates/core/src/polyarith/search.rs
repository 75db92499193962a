//! Irreducibility, counting and the field/point searches.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

use super::factored::FactoredElement;
use super::field::{FiniteField, TABLE_LIMIT};
use super::fpoly::FieldPoly;
use super::mpoly::MultiPoly;
use super::poly::Poly;
use super::prime::{divisors, mobius, prime_power, primes_up_to};
use crate::error::{invalid, Error, Result};
use crate::par;

/// Ben-Or test over `F_p`. Constants (units) are not irreducible.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    if d == 0 {
        return Ok(false);
    }
    if d == 1 {
        return Ok(true);
    }
    let f = f.monic();
    let p = f.p();
    let t = Poly::t(p);
    let mut x = t.clone();
    for _ in 1..=d / 2 {
        x = x.pow_mod(p, &f);
        if !f.gcd(&x.sub(&t)).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Ben-Or test over an arbitrary finite field.
pub fn is_irreducible_over(f: &FieldPoly) -> Result<bool> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    if d == 0 {
        return Ok(false);
    }
    if d == 1 {
        return Ok(true);
    }
    let f = f.monic();
    let field = f.field().clone();
    let y = FieldPoly::y(&field);
    let mut x = y.clone();
    for _ in 1..=d / 2 {
        x = x.pow_mod(field.order(), &f);
        if f.gcd(&x.sub(&y)).degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Monic irreducibles of degree `d` over `F_p`, in counting order.
pub fn irreducibles_of_degree(p: u64, d: usize) -> Vec<Poly> {
    let n = p.pow(d as u32);
    let flags = par::map_range(n as usize, |j| is_irreducible(&Poly::monic_from_index(p, d, j as u64)).unwrap());
    (0..n).filter(|&j| flags[j as usize]).map(|j| Poly::monic_from_index(p, d, j)).collect()
}

/// Number of monic irreducibles of degree `k` over `F_q`.
pub fn count_irreducibles(q: u64, k: u64) -> Result<BigUint> {
    if prime_power(q).is_none() {
        return invalid(format!("q = {q} is not a prime power"));
    }
    if k == 0 {
        return invalid("degree must be positive");
    }
    let qb = BigInt::from(q);
    let mut s = BigInt::zero();
    for d in divisors(k) {
        let mu = mobius(k / d);
        if mu != 0 {
            s += BigInt::from(mu) * qb.pow(d as u32);
        }
    }
    let s = s / BigInt::from(k);
    Ok(s.abs().to_biguint().unwrap())
}

/// Result of the detecting-field search.
#[derive(Clone, Debug)]
pub struct DetectingField {
    pub field: FiniteField,
    /// Image of `t` in the field.
    pub t_image: u64,
    pub f_image: u64,
}

/// Find a field `F_q[t]/(h)` with `2n < |F| <= 2nq` in which `f` is nonzero.
///
/// `h` is the first monic irreducible (counting order) of degree `M` with
/// `q^(M-1)/2 <= n < q^M/2` that does not divide `f`.
pub fn find_detecting_field(f: &Poly, n: u64) -> Result<DetectingField> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if n == 0 || (f.deg0() as u64) > n {
        return invalid(format!("need 1 <= deg f <= n, got deg {} and n = {n}", f.deg0()));
    }
    let q = f.p();
    let mut m = 1u32;
    while !((q as u128).pow(m) > 2 * n as u128) {
        m += 1;
    }
    let qm = q.checked_pow(m).ok_or_else(|| Error::Unsupported("field too large".into()))?;
    let count = q.pow(m);
    let mut found = None;
    for j in 0..count {
        let h = Poly::monic_from_index(q, m as usize, j);
        if !h.divides(f) && is_irreducible(&h)? {
            found = Some(h);
            break;
        }
    }
    let h = found.ok_or_else(|| Error::NotFound("no admissible irreducible".into()))?;
    debug_assert!(2 * n < qm && qm <= 2 * n * q);
    let field = FiniteField::new(h)?;
    let t_image = field.t_image();
    let f_image = field.from_poly(f);
    Ok(DetectingField { field, t_image, f_image })
}

/// Substitute polynomials `g_i(t)` of degree `<= m` for `x_s, ..., x_1` (in
/// that order) keeping `f` nonzero.
pub fn find_nonvanishing_point(f: &MultiPoly, m: u32) -> Result<Vec<Poly>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = f.ring().0;
    let s = f.nvars() - 1;
    if (p as f64).powi(m as i32) < f.x_degree() as f64 {
        return invalid(format!("degree {} exceeds p^m = {}", f.x_degree(), p.pow(m)));
    }
    let mut cur = f.clone();
    let mut out = vec![Poly::zero(p); s];
    let cands = p.checked_pow(m + 1).ok_or_else(|| Error::Unsupported("search space too large".into()))?;
    for v in (1..=s).rev() {
        let mut hit = None;
        for j in 0..cands {
            let g = Poly::from_index(p, j);
            let sub = cur.substitute(v, &MultiPoly::from_t_poly(&g, cur.nvars()));
            if !sub.is_zero() {
                hit = Some((g, sub));
                break;
            }
        }
        let (g, sub) = hit.ok_or_else(|| Error::NotFound(format!("no value for x_{v}")))?;
        out[v - 1] = g;
        cur = sub;
    }
    Ok(out)
}

/// `lcm(1, ..., r)` factored.
pub fn lcm_up_to(r: u64) -> FactoredElement<u64> {
    FactoredElement::from_pairs(primes_up_to(r).into_iter().map(|p| {
        let mut e = 0;
        let mut pk = 1u64;
        while pk * p <= r {
            pk *= p;
            e += 1;
        }
        (p, e)
    }))
}

/// lcm of all nonzero polynomials of degree `<= r` over `F_p`, factored.
pub fn lcm_polys_up_to_degree(p: u64, r: usize) -> FactoredElement<Poly> {
    let mut f = FactoredElement::new();
    for d in 1..=r {
        for g in irreducibles_of_degree(p, d) {
            f.insert(g, (r / d) as u64);
        }
    }
    f
}

/// True iff `f` has `deg f` distinct roots in its field.
pub fn splits_distinct_linear(f: &FieldPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.field().order() <= TABLE_LIMIT {
        Ok(splits_by_enumeration(f))
    } else {
        Ok(splits_by_frobenius(f))
    }
}

pub fn splits_by_enumeration(f: &FieldPoly) -> bool {
    let d = f.degree().unwrap();
    let roots = f.field().elements().filter(|&x| f.eval(x) == 0).count();
    roots == d
}

/// `y^q == y mod f` and `f` squarefree.
pub fn splits_by_frobenius(f: &FieldPoly) -> bool {
    let d = f.degree().unwrap();
    if d == 0 {
        return true;
    }
    let field = f.field().clone();
    let g = f.monic();
    let y = FieldPoly::y(&field);
    let fr = y.pow_mod_big(&BigUint::from(field.order()), &g);
    fr.sub(&y.rem(&g)).is_zero() && g.gcd(&g.derivative()).degree() == Some(0)
}

/// `k I_q(k) / q^k`.
pub fn density_ratio(q: u64, k: u64) -> f64 {
    let i = count_irreducibles(q, k).unwrap();
    let num = (i * BigUint::from(k)).to_f64().unwrap();
    num / (q as f64).powi(k as i32)
}
