//! Polynomials in `y` over `F_p[t]` and the splitting-prime counts.

use std::fmt;

use super::disc::{discriminant, PolyDomain};
use super::expr::parse_poly;
use super::field::FiniteField;
use super::fpoly::FieldPoly;
use super::poly::Poly;
use super::search::{irreducibles_of_degree, splits_distinct_linear};
use crate::error::{invalid, Error, Result};
use crate::par;

/// `f = sum c_i(t) y^i` with `c_i in F_p[t]`.
#[derive(Clone, PartialEq, Eq)]
pub struct YPoly {
    p: u64,
    c: Vec<Poly>,
}

impl YPoly {
    pub fn new(p: u64, mut c: Vec<Poly>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        YPoly { p, c }
    }

    /// Parse an expression in `t` and `y`, e.g. `y^2 - t`.
    pub fn parse(p: u64, s: &str) -> Result<Self> {
        let vars = vec!["t".to_string(), "y".to_string()];
        let z = parse_poly(s, &vars)?.reduce_mod(p);
        let mut c: Vec<Poly> = Vec::new();
        for (m, &a) in z.terms() {
            let (i, k) = (m[1] as usize, m[0] as usize);
            if c.len() <= i {
                c.resize(i + 1, Poly::zero(p));
            }
            c[i] = c[i].add(&Poly::monomial(p, a, k));
        }
        Ok(YPoly::new(p, c))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.c
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn discriminant(&self) -> Result<Poly> {
        if self.c.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        discriminant(&PolyDomain(self.p), &self.c)
    }

    pub fn is_separable(&self) -> Result<bool> {
        Ok(!self.discriminant()?.is_zero())
    }

    /// Reduce coefficients into `F_p[t]/(g)`.
    pub fn reduce(&self, field: &FiniteField) -> FieldPoly {
        FieldPoly::new(field, self.c.iter().map(|c| field.from_poly(c)).collect())
    }
}

impl fmt::Debug for YPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})*y^{i}"))
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

fn splits_mod(f: &YPoly, g: &Poly) -> Result<bool> {
    let lead = f.c.last().unwrap();
    if g.divides(lead) {
        return Ok(false);
    }
    let field = FiniteField::new(g.clone())?;
    splits_distinct_linear(&f.reduce(&field))
}

/// First irreducible `g` (by degree, then counting order) with `g` not
/// dividing `h` and `f` splitting into distinct linear factors mod `g`.
pub fn chebotarev_search(h: &Poly, f: &YPoly, d_max: usize) -> Result<Poly> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree().unwrap_or(0) == 0 {
        return invalid("f must have positive degree in y");
    }
    if !f.is_separable()? {
        return invalid("f is not separable");
    }
    for d in 1..=d_max {
        let cands = irreducibles_of_degree(f.p, d);
        let hits = par::map(&cands, |g| !g.divides(h) && splits_mod(f, g).unwrap_or(false));
        if let Some(i) = hits.iter().position(|&b| b) {
            return Ok(cands[i].clone());
        }
    }
    Err(Error::NotFound(format!("no splitting prime of degree <= {d_max}")))
}

/// Number of monic irreducible `g` of degree `x` with `g` not dividing
/// `disc(f)` and `f` splitting into distinct linear factors mod `g`.
pub fn count_splitting_primes(f: &YPoly, x: usize) -> Result<u64> {
    let disc = f.discriminant()?;
    if disc.is_zero() {
        return invalid("f is not separable");
    }
    let cands = irreducibles_of_degree(f.p, x);
    let hits = par::map(&cands, |g| !g.divides(&disc) && splits_mod(f, g).unwrap());
    Ok(hits.into_iter().filter(|&b| b).count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn search_example() {
        let f = YPoly::parse(3, "y^2 - t").unwrap();
        assert_eq!(f.discriminant().unwrap(), Poly::t(3));
        let g = chebotarev_search(&Poly::one(3), &f, 3).unwrap();
        assert_eq!(g, Poly::from_i64(3, &[-1, 1]));
        assert!(chebotarev_search(&Poly::one(3), &YPoly::parse(3, "y^2").unwrap(), 2).is_err());
    }

    #[test]
    fn linear_counts_everything() {
        let f = YPoly::parse(2, "y + t").unwrap();
        for x in 1..=6 {
            let i = super::super::search::count_irreducibles(2, x as u64).unwrap();
            assert_eq!(count_splitting_primes(&f, x).unwrap().to_string(), i.to_string());
        }
    }
}
