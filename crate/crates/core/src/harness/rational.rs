//! Worst-case certificate primes for `SL2` over `Z`, by meet in the middle.

use std::collections::HashMap;

use serde::Serialize;

use super::ball::{ball, int_mul, positive_ball, BallEntry, IntMat};
use crate::error::{Error, Result};
use crate::par;
use crate::polyarith::prime::{inv_mod, next_prime};

/// Certificate prime of a `2x2` integer matrix under the detection pipeline
/// (integral generators, so `g = 1`): the least prime not dividing the
/// selected invariant. `None` for `+-I`.
pub fn certificate_prime(m: &[i64]) -> Option<u64> {
    let f = if m[1] != 0 {
        m[1]
    } else if m[2] != 0 {
        m[2]
    } else if m[0] != m[3] {
        m[0] - m[3]
    } else {
        return None;
    };
    let f = f.unsigned_abs();
    let mut p = 2;
    while f % p == 0 {
        p = next_prime(p);
    }
    Some(p)
}

#[derive(Clone, Debug, Serialize)]
pub struct WorstCase {
    pub n: usize,
    /// Largest certificate prime over all words of length `<= n`.
    pub max_prime: u64,
    pub word: Vec<i64>,
    /// `max_prime / n`.
    pub ratio: f64,
}

/// Point of `P^1(Z/M)` for squarefree `M = prod primes`, one coordinate per
/// prime (`u64::MAX` for the point at infinity).
fn p1_key(c: i64, d: i64, primes: &[u64]) -> Vec<u64> {
    primes
        .iter()
        .map(|&q| {
            let (cq, dq) = (c.rem_euclid(q as i64) as u64, d.rem_euclid(q as i64) as u64);
            if dq == 0 {
                u64::MAX
            } else {
                cq * inv_mod(dq, q) % q
            }
        })
        .collect()
}

/// Exact `max` of the certificate prime over the ball of radius `n`.
///
/// A prime above `P` is certified iff the invariant is divisible by every
/// prime up to `P`. Writing `g = u v` with `|u| <= ceil(n/2)`,
/// `|v| <= floor(n/2)`, the entry `(0,1)` of `g` vanishes mod a prime `q`
/// iff `(v01 : v11) = (-u01 : u00)` in `P^1(F_q)`; every candidate pair is
/// then checked exactly.
pub fn worst_case_prime(gens: &[IntMat], n: usize) -> Result<WorstCase> {
    if gens.iter().any(|g| g.len() != 4) {
        return Err(Error::Unsupported("worst-case search is for 2x2 matrices".into()));
    }
    if n == 0 {
        return Err(Error::InvalidInput("need n >= 1".into()));
    }
    let (ra, rb) = (n.div_ceil(2), n / 2);
    let big = ball(2, gens, ra, i64::MAX / 4)?;
    let left: Vec<&BallEntry> = big.entries.iter().collect();
    let right: Vec<&BallEntry> = big.entries.iter().filter(|e| e.length <= rb).collect();
    let (max_prime, word) = match split_search(&left, &right) {
        Some(h) => h,
        None => {
            let e = big
                .entries
                .iter()
                .find(|e| certificate_prime(&e.element).is_some())
                .ok_or_else(|| Error::NotFound("ball has only scalar elements".into()))?;
            (certificate_prime(&e.element).unwrap(), e.word.clone())
        }
    };
    Ok(WorstCase { n, max_prime, ratio: max_prime as f64 / n as f64, word })
}

/// Largest certificate prime of a product `u v` over the given halves, if
/// some product has one above 2.
fn split_search(left: &[&BallEntry], right: &[&BallEntry]) -> Option<(u64, Vec<i64>)> {
    let mut best = None;
    let mut primes: Vec<u64> = Vec::new();
    let mut p = 2;
    loop {
        primes.push(p);
        let mut index: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
        for (i, v) in right.iter().enumerate() {
            index.entry(p1_key(v.element[1], v.element[3], &primes)).or_default().push(i);
        }
        let hit = |u: &&BallEntry| -> Option<(u64, Vec<i64>)> {
            let key = p1_key(-u.element[1], u.element[0], &primes);
            for &j in index.get(&key)? {
                let v = right[j];
                let g = int_mul(2, &u.element, &v.element)?;
                if let Some(c) = certificate_prime(&g) {
                    if c > p {
                        let mut w = u.word.clone();
                        w.extend(&v.word);
                        return Some((c, w));
                    }
                }
            }
            None
        };
        match par::find_first(left, |u| hit(u).is_some()).and_then(|i| hit(&left[i])) {
            Some(h) => {
                best = Some(h);
                p = next_prime(p);
            }
            None => return best,
        }
    }
}

/// Worst-case certificate prime for the elementary generators
/// `[[1,1],[0,1]]`, `[[1,0],[1,1]]` of `SL2(Z)`, bracketed without
/// enumerating the full ball.
#[derive(Clone, Debug, Serialize)]
pub struct ElementaryWorstCase {
    pub n: usize,
    /// Attained by `witness`, a positive word of length `<= n`.
    pub lower: u64,
    pub witness: Vec<i64>,
    /// Every entry of a word of length `n` is at most `F_{n+1}`, and the
    /// primes below a certificate prime divide a nonzero off-diagonal entry.
    pub upper: u64,
}

impl ElementaryWorstCase {
    pub fn exact(&self) -> bool {
        self.lower == self.upper
    }
}

pub fn elementary_generators() -> Vec<IntMat> {
    vec![vec![1, 1, 0, 1], vec![1, 0, 1, 1]]
}

fn fibonacci(n: usize) -> u128 {
    let (mut a, mut b) = (0u128, 1u128);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

fn primorial_bound(limit: u128) -> u64 {
    let mut prod = 1u128;
    let mut p = 2;
    loop {
        let q = next_prime(p);
        prod *= p as u128;
        if prod > limit {
            return p;
        }
        p = q;
    }
}

pub fn elementary_worst_case(n: usize) -> Result<ElementaryWorstCase> {
    if n == 0 || n > 150 {
        return Err(Error::InvalidInput("need 1 <= n <= 150".into()));
    }
    let gens = elementary_generators();
    let (ra, rb) = (n.div_ceil(2), n / 2);
    let big = positive_ball(2, &gens, ra, i64::MAX / 4)?;
    let left: Vec<&BallEntry> = big.entries.iter().collect();
    let right: Vec<&BallEntry> = big.entries.iter().filter(|e| e.length <= rb).collect();
    let direct = big
        .entries
        .iter()
        .filter_map(|e| certificate_prime(&e.element).map(|c| (c, e.word.clone())))
        .max_by_key(|h| h.0)
        .ok_or_else(|| Error::NotFound("empty ball".into()))?;
    let (lower, witness) = match split_search(&left, &right) {
        Some(h) if h.0 > direct.0 => h,
        _ => direct,
    };
    Ok(ElementaryWorstCase { n, lower, witness, upper: primorial_bound(fibonacci(n + 1)) })
}

/// Interval of constants `C` with every ratio inside `[0.8 C, 1.2 C]`.
pub fn stable_constant(ratios: &[f64], tol: f64) -> Option<(f64, f64)> {
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().cloned().fold(0.0, f64::max);
    let (a, b) = (hi / (1.0 + tol), lo / (1.0 - tol));
    (a <= b).then_some((a, b))
}

#[cfg(test)]
mod tests {
    use super::super::ball::eval_word;
    use super::*;

    fn elementary() -> Vec<IntMat> {
        vec![vec![1, 1, 0, 1], vec![1, 0, 1, 1]]
    }

    #[test]
    fn matches_brute_force() {
        let gens = elementary();
        for n in [1, 2, 5, 8, 9] {
            let b = ball(2, &gens, n, i64::MAX / 4).unwrap();
            let brute = b.entries.iter().filter_map(|e| certificate_prime(&e.element)).max().unwrap();
            let w = worst_case_prime(&gens, n).unwrap();
            assert_eq!(w.max_prime, brute, "n = {n}");
            assert!(w.word.len() <= n);
            assert_eq!(certificate_prime(&eval_word(2, &gens, &w.word).unwrap()), Some(brute));
        }
        assert_eq!(worst_case_prime(&gens, 8).unwrap().max_prime, 7);
    }

    #[test]
    fn elementary_bracket() {
        let gens = elementary();
        for n in [1, 2, 5, 8, 12, 16] {
            let e = elementary_worst_case(n).unwrap();
            let w = worst_case_prime(&gens, n).unwrap();
            assert!(e.lower <= w.max_prime && w.max_prime <= e.upper, "n = {n}");
            assert_eq!(certificate_prime(&eval_word(2, &gens, &e.witness).unwrap()), Some(e.lower));
        }
        assert_eq!(fibonacci(9), 34);
        assert_eq!(primorial_bound(34), 7);
    }

    #[test]
    fn constant_interval() {
        assert!(stable_constant(&[1.0, 1.4], 0.2).is_some());
        assert!(stable_constant(&[1.0, 1.6], 0.2).is_none());
    }
}
