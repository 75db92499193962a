//! Structure constants of a Chevalley basis.
//!
//! Signs come from extraspecial pairs: for each non-simple positive root
//! `xi` the pair `(alpha, beta)` with `alpha` simple and minimal in the root
//! order gets `N = +(p+1)`; everything else follows from the standard
//! relations, with `N_{-a,-b} = -N_{a,b}`.

use std::collections::HashMap;

use super::datum::RootDatum;

#[derive(Clone, Debug)]
pub struct StructureConstants {
    n: usize,
    table: Vec<i8>,
    extraspecial: HashMap<usize, (usize, usize)>,
}

impl StructureConstants {
    /// `N_{a,b}` (zero when `a+b` is not a root).
    pub fn get(&self, a: usize, b: usize) -> i64 {
        self.table[a * self.n + b] as i64
    }

    pub fn extraspecial(&self, xi: usize) -> Option<(usize, usize)> {
        self.extraspecial.get(&xi).copied()
    }
}

struct Builder<'a> {
    d: &'a RootDatum,
    memo: HashMap<(usize, usize), i64>,
    extra: HashMap<usize, (usize, usize)>,
}

impl<'a> Builder<'a> {
    fn norm(&self, a: usize) -> i64 {
        self.d.roots[a].norm
    }

    fn n(&mut self, a: usize, b: usize) -> i64 {
        let d = self.d;
        if d.sum(a, b).is_none() {
            return 0;
        }
        if let Some(&v) = self.memo.get(&(a, b)) {
            return v;
        }
        let pa = d.is_positive(a);
        let pb = d.is_positive(b);
        let v = if pa && pb {
            if a > b {
                -self.n(b, a)
            } else {
                self.positive(a, b)
            }
        } else if !pa && !pb {
            -self.n(d.neg(a), d.neg(b))
        } else if !pa {
            -self.n(b, a)
        } else {
            // a > 0 > b; c = -(a+b), N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b)
            let s = d.sum(a, b).unwrap();
            let c = d.neg(s);
            if d.is_positive(s) {
                // c < 0: N_{b,c} = -N_{-b,-c}, both positive
                let num = -self.norm(c) * self.n(d.neg(b), d.neg(c));
                exact(num, self.norm(a))
            } else {
                let num = self.norm(c) * self.n(c, a);
                exact(num, self.norm(b))
            }
        };
        self.memo.insert((a, b), v);
        v
    }

    fn positive(&mut self, a: usize, b: usize) -> i64 {
        let d = self.d;
        let xi = d.sum(a, b).unwrap();
        let (g, e) = self.extra[&xi];
        if (a, b) == (g, e) {
            return d.string_down(g, e) + 1;
        }
        // four-root relation with (a, b, -g, -e)
        let ng = d.neg(g);
        let ne = d.neg(e);
        let mut num = 0i64;
        let mut den = 1i64;
        if let Some(s) = d.sum(b, ng) {
            let t = self.n(b, ng) * self.n(a, ne);
            let w = self.norm(s);
            num = num * w + t * den;
            den *= w;
        }
        if let Some(s) = d.sum(ng, a) {
            let t = self.n(ng, a) * self.n(b, ne);
            let w = self.norm(s);
            num = num * w + t * den;
            den *= w;
        }
        // N_{a,b} N_{-g,-e} / (xi,xi) = -(num/den), with N_{-g,-e} = -N_{g,e}
        let nge = -(d.string_down(g, e) + 1);
        exact(-num * self.norm(xi), den * nge)
    }
}

fn exact(num: i64, den: i64) -> i64 {
    assert!(den != 0 && num % den == 0, "inexact structure constant {num}/{den}");
    num / den
}

pub fn compute_structure_constants(d: &RootDatum) -> StructureConstants {
    let np = d.num_positive();
    let mut extra = HashMap::new();
    for xi in 0..np {
        if d.roots[xi].height == 1 {
            continue;
        }
        // alpha minimal in the root order with xi - alpha positive
        for a in 0..np {
            let b = match d.combo(&[(1, xi), (-1, a)]) {
                Some(b) if d.is_positive(b) => b,
                _ => continue,
            };
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            extra.insert(xi, (lo, hi));
            break;
        }
    }
    let mut b = Builder { d, memo: HashMap::new(), extra };
    let n = d.num_roots();
    let mut table = vec![0i8; n * n];
    for x in 0..n {
        for y in 0..n {
            table[x * n + y] = b.n(x, y) as i8;
        }
    }
    StructureConstants { n, table, extraspecial: b.extra }
}

#[cfg(test)]
mod tests {
    use super::super::datum::CartanType;
    use super::*;

    fn all() -> Vec<RootDatum> {
        use CartanType::*;
        [(A, 1), (A, 2), (A, 3), (B, 2), (B, 3), (C, 2), (C, 3), (D, 4), (G, 2), (F, 4), (E, 6), (E, 7), (E, 8)]
            .iter()
            .map(|&(k, l)| RootDatum::new(k, l).unwrap())
            .collect()
    }

    #[test]
    fn magnitudes_and_antisymmetry() {
        for d in all() {
            let c = compute_structure_constants(&d);
            let n = d.num_roots();
            for a in 0..n {
                for b in 0..n {
                    let v = c.get(a, b);
                    assert_eq!(v, -c.get(b, a));
                    if d.sum(a, b).is_some() {
                        assert_eq!(v.abs(), d.string_down(a, b) + 1, "{} {a} {b}", d.label());
                        assert_eq!(c.get(d.neg(a), d.neg(b)), -v);
                    } else {
                        assert_eq!(v, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn g2_has_three() {
        let d = RootDatum::new(CartanType::G, 2).unwrap();
        let c = compute_structure_constants(&d);
        let n = d.num_roots();
        assert!((0..n).any(|a| (0..n).any(|b| c.get(a, b).abs() == 3)));
    }
}
