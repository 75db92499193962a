//! Splitting-prime counts against the effective function-field density bound.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyarith::search::irreducibles_of_degree;
use crate::polyarith::{count_irreducibles, count_splitting_primes, Poly, YPoly};

#[derive(Clone, Debug, Serialize)]
pub struct ChebotarevRow {
    pub x: usize,
    pub observed: u64,
    /// `(m / |G|) I_p(x)`.
    pub predicted: f64,
    /// `p^{x/2}(2 + D)/(|G| x) + D(1 + 1/x)`.
    pub bound: f64,
    pub within: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChebotarevTable {
    pub f: String,
    pub p: u64,
    pub galois_order: u64,
    pub constant_degree: u64,
    /// Degree of the product of the primes dividing the discriminant.
    pub d_ramified: u64,
    pub rows: Vec<ChebotarevRow>,
}

impl ChebotarevTable {
    pub fn violations(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| !r.within).map(|r| r.x).collect()
    }
}

/// Sum of the degrees of the distinct irreducible factors of `g`.
pub fn radical_degree(g: &Poly) -> u64 {
    (1..=g.deg0()).flat_map(|d| irreducibles_of_degree(g.p(), d)).filter(|h| h.divides(g)).map(|h| h.deg0() as u64).sum()
}

/// Counts for `x` in `xs`; only `x` divisible by `m` (the degree of the
/// constant field of the splitting field) are tabulated.
pub fn chebotarev_experiment(f: &YPoly, galois_order: u64, m: u64, xs: impl IntoIterator<Item = usize>) -> Result<ChebotarevTable> {
    if galois_order == 0 || m == 0 {
        return Err(Error::InvalidInput("need |G| >= 1 and m >= 1".into()));
    }
    if !f.is_separable()? {
        return Err(Error::InvalidInput("f is not separable".into()));
    }
    let p = f.p();
    let d = radical_degree(&f.discriminant()?) as f64;
    let g = galois_order as f64;
    let mut rows = Vec::new();
    for x in xs {
        if x == 0 || x as u64 % m != 0 {
            continue;
        }
        let ip: f64 = count_irreducibles(p, x as u64)?.to_string().parse().unwrap();
        let observed = count_splitting_primes(f, x)?;
        let predicted = m as f64 / g * ip;
        let xf = x as f64;
        let bound = (p as f64).powf(xf / 2.0) * (2.0 + d) / (g * xf) + d * (1.0 + 1.0 / xf);
        rows.push(ChebotarevRow { x, observed, predicted, bound, within: (observed as f64 - predicted).abs() <= bound });
    }
    Ok(ChebotarevTable { f: format!("{f:?}"), p, galois_order, constant_degree: m, d_ramified: d as u64, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_root_of_t() {
        let f = YPoly::parse(3, "y^2 - t").unwrap();
        let t = chebotarev_experiment(&f, 2, 1, 1..=6).unwrap();
        assert_eq!(t.d_ramified, 1);
        assert!(t.violations().is_empty());
        assert_eq!(t.rows[0].observed, 1);
    }

    #[test]
    fn linear_is_exact() {
        let f = YPoly::parse(5, "y - t").unwrap();
        let t = chebotarev_experiment(&f, 1, 1, 1..=4).unwrap();
        for r in &t.rows {
            assert_eq!(r.observed as f64, r.predicted);
        }
    }

    #[test]
    fn inseparable_rejected() {
        assert!(chebotarev_experiment(&YPoly::parse(2, "y^2 - t").unwrap(), 2, 1, 1..=3).is_err());
    }
}
