//! Word-metric balls in integer matrix groups.

use indexmap::IndexMap;
use serde::Serialize;

use crate::detect::{Coeffs, GeneratorSet};
use crate::error::{Error, Result};

/// Row-major `d x d` integer matrix.
pub type IntMat = Vec<i64>;

#[derive(Clone, Debug, Serialize)]
pub struct BallEntry {
    pub element: IntMat,
    pub length: usize,
    /// A shortest word (letters `i` / `-i`).
    pub word: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Ball {
    pub d: usize,
    pub radius: usize,
    /// In BFS order, so lengths are nondecreasing.
    pub entries: Vec<BallEntry>,
    /// Products dropped because an entry exceeded the cap.
    pub pruned: usize,
}

pub fn int_mul(d: usize, a: &[i64], b: &[i64]) -> Option<IntMat> {
    let mut out = vec![0i64; d * d];
    for i in 0..d {
        for k in 0..d {
            let x = a[i * d + k];
            if x == 0 {
                continue;
            }
            for j in 0..d {
                out[i * d + j] = out[i * d + j].checked_add(x.checked_mul(b[k * d + j])?)?;
            }
        }
    }
    Some(out)
}

pub fn int_identity(d: usize) -> IntMat {
    (0..d * d).map(|k| (k / d == k % d) as i64).collect()
}

fn int_det(d: usize, a: &[i128]) -> i128 {
    if d == 1 {
        return a[0];
    }
    (0..d)
        .filter(|&j| a[j] != 0)
        .map(|j| {
            let minor: Vec<i128> = (d..d * d).filter(|k| k % d != j).map(|k| a[k]).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * a[j] * int_det(d - 1, &minor)
        })
        .sum()
}

/// Inverse of a matrix with determinant `+-1`, via the adjugate.
pub fn int_inverse(d: usize, a: &[i64]) -> Result<IntMat> {
    let w: Vec<i128> = a.iter().map(|&x| x as i128).collect();
    let det = int_det(d, &w);
    if det != 1 && det != -1 {
        return Err(Error::InvalidInput("generator is not invertible over Z".into()));
    }
    if d == 1 {
        return Ok(vec![det as i64]);
    }
    let mut out = vec![0i64; d * d];
    for i in 0..d {
        for j in 0..d {
            let minor: Vec<i128> = (0..d * d).filter(|k| k / d != j && k % d != i).map(|k| w[k]).collect();
            let c = if (i + j) % 2 == 0 { 1 } else { -1 } * int_det(d - 1, &minor) * det;
            out[i * d + j] = i64::try_from(c).map_err(|_| Error::InvalidInput("inverse entry too large".into()))?;
        }
    }
    Ok(out)
}

/// Symmetric letter set: `(letter, matrix)` for `1..=k` and `-1..=-k`.
pub fn symmetric(d: usize, gens: &[IntMat]) -> Result<Vec<(i64, IntMat)>> {
    let mut out: Vec<(i64, IntMat)> = gens.iter().enumerate().map(|(i, g)| (i as i64 + 1, g.clone())).collect();
    for (i, g) in gens.iter().enumerate() {
        out.push((-(i as i64 + 1), int_inverse(d, g)?));
    }
    Ok(out)
}

/// Integer generators of a rational generator set without variables.
pub fn integer_generators(set: &GeneratorSet) -> Result<Vec<IntMat>> {
    let Coeffs::Rational(c) = &set.coeffs else {
        return Err(Error::InvalidInput("need a generator set over Q".into()));
    };
    if set.s() != 0 || !c.g.is_constant() || c.g.constant_term() != 1.into() {
        return Err(Error::InvalidInput("need integral generators without variables".into()));
    }
    c.mats[..set.ngens]
        .iter()
        .map(|m| {
            m.iter()
                .map(|e| i64::try_from(e.constant_term()).map_err(|_| Error::InvalidInput("entry too large".into())))
                .collect()
        })
        .collect()
}

/// All elements of word length `<= n` with entries of absolute value
/// `<= cap`, with exact BFS distances.
pub fn ball(d: usize, gens: &[IntMat], n: usize, cap: i64) -> Result<Ball> {
    ball_over(d, &symmetric(d, gens)?, n, cap)
}

/// Ball in the monoid generated by `gens` (no inverse letters).
pub fn positive_ball(d: usize, gens: &[IntMat], n: usize, cap: i64) -> Result<Ball> {
    let letters: Vec<(i64, IntMat)> = gens.iter().enumerate().map(|(i, g)| (i as i64 + 1, g.clone())).collect();
    ball_over(d, &letters, n, cap)
}

fn ball_over(d: usize, letters: &[(i64, IntMat)], n: usize, cap: i64) -> Result<Ball> {
    let mut seen: IndexMap<IntMat, (usize, Vec<i64>)> = IndexMap::new();
    seen.insert(int_identity(d), (0, vec![]));
    let mut frontier = vec![0usize];
    let mut pruned = 0;
    for len in 1..=n {
        let mut next = Vec::new();
        for &idx in &frontier {
            let (x, (_, w)) = seen.get_index(idx).map(|(k, v)| (k.clone(), v.clone())).unwrap();
            for (l, g) in letters {
                match int_mul(d, &x, g) {
                    Some(y) if y.iter().all(|e| e.abs() <= cap) => {
                        if !seen.contains_key(&y) {
                            let mut w2 = w.clone();
                            w2.push(*l);
                            let (i, _) = seen.insert_full(y, (len, w2));
                            next.push(i);
                        }
                    }
                    _ => pruned += 1,
                }
            }
        }
        frontier = next;
    }
    let entries = seen.into_iter().map(|(element, (length, word))| BallEntry { element, length, word }).collect();
    Ok(Ball { d, radius: n, entries, pruned })
}

/// Evaluate a word over integer generators.
pub fn eval_word(d: usize, gens: &[IntMat], word: &[i64]) -> Result<IntMat> {
    let letters = symmetric(d, gens)?;
    let mut acc = int_identity(d);
    for &w in word {
        let idx = if w > 0 { w as usize - 1 } else { gens.len() + (-w) as usize - 1 };
        let g = &letters.get(idx).ok_or_else(|| Error::InvalidInput(format!("letter {w} out of range")))?.1;
        acc = int_mul(d, &acc, g).ok_or_else(|| Error::InvalidInput("entry overflow".into()))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts() -> Vec<IntMat> {
        vec![vec![1, 1, 0, 1], vec![0, -1, 1, 0]]
    }

    #[test]
    fn small_balls() {
        assert_eq!(ball(2, &ts(), 0, 100).unwrap().entries.len(), 1);
        let b = ball(2, &ts(), 2, 100).unwrap();
        // 1 + 4 + 11: the only coincidences are T T^-1 = S S^-1 = 1 and S^2 = S^-2
        assert_eq!(b.entries.len(), 16);
        assert_eq!(b.pruned, 0);
        for e in &b.entries {
            assert_eq!(eval_word(2, &ts(), &e.word).unwrap(), e.element);
            assert_eq!(e.word.len(), e.length);
        }
        let capped = ball(2, &ts(), 3, 2).unwrap();
        assert!(capped.pruned > 0);
    }

    #[test]
    fn inverses() {
        assert_eq!(int_inverse(2, &[2, 1, 1, 1]).unwrap(), vec![1, -1, -1, 2]);
        assert_eq!(int_inverse(3, &[1, 2, 0, 0, 1, 0, 0, 0, 1]).unwrap(), vec![1, -2, 0, 0, 1, 0, 0, 0, 1]);
        assert!(int_inverse(2, &[2, 0, 0, 1]).is_err());
    }
}
