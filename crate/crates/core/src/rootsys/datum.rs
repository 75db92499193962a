//! Root data for the irreducible types.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanType {
    pub fn parse(s: &str) -> Result<(CartanType, usize)> {
        let s = s.trim();
        let (head, tail) = s.split_at(1.min(s.len()));
        let t = match head.to_ascii_uppercase().as_str() {
            "A" => CartanType::A,
            "B" => CartanType::B,
            "C" => CartanType::C,
            "D" => CartanType::D,
            "E" => CartanType::E,
            "F" => CartanType::F,
            "G" => CartanType::G,
            _ => return invalid(format!("unknown type {s:?}")),
        };
        let rank = tail.parse().map_err(|_| crate::Error::InvalidInput(format!("bad rank in {s:?}")))?;
        Ok((t, rank))
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Root {
    /// Coordinates in the base of simple roots.
    pub coords: Vec<i64>,
    /// Vector in the ambient lattice.
    pub ambient: Vec<i64>,
    pub height: i64,
    /// `(alpha, alpha)` in ambient units.
    pub norm: i64,
}

/// Root system with its base, ordered roots and the constants `(dim, a)`.
///
/// Positive roots are indices `0..n_pos` sorted by height and then by
/// descending simple coordinates; index `n_pos + i` is the negative of `i`.
#[derive(Clone, Debug, Serialize)]
pub struct RootDatum {
    pub kind: CartanType,
    pub rank: usize,
    pub dim: usize,
    pub a: usize,
    /// `cartan[i][j] = <alpha_i, alpha_j^vee>`.
    pub cartan: Vec<Vec<i64>>,
    pub roots: Vec<Root>,
    #[serde(skip)]
    index: HashMap<Vec<i64>, usize>,
    #[serde(skip)]
    sum: Vec<i32>,
    max_norm: i64,
}

fn unit(n: usize, i: usize, scale: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = scale;
    v
}

fn eps_diff(n: usize, i: usize, j: usize, scale: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = scale;
    v[j] = -scale;
    v
}

fn simple_ambient(kind: CartanType, l: usize) -> Vec<Vec<i64>> {
    use CartanType::*;
    match kind {
        A => (0..l).map(|i| eps_diff(l + 1, i, i + 1, 1)).collect(),
        B => {
            let mut s: Vec<_> = (0..l - 1).map(|i| eps_diff(l, i, i + 1, 1)).collect();
            s.push(unit(l, l - 1, 1));
            s
        }
        C => {
            let mut s: Vec<_> = (0..l - 1).map(|i| eps_diff(l, i, i + 1, 1)).collect();
            s.push(unit(l, l - 1, 2));
            s
        }
        D => {
            let mut s: Vec<_> = (0..l - 1).map(|i| eps_diff(l, i, i + 1, 1)).collect();
            let mut last = vec![0; l];
            last[l - 2] = 1;
            last[l - 1] = 1;
            s.push(last);
            s
        }
        G => vec![vec![1, -1, 0], vec![-2, 1, 1]],
        F => vec![vec![0, 2, -2, 0], vec![0, 0, 2, -2], vec![0, 0, 0, 2], vec![1, -1, -1, -1]],
        E => {
            // doubled Bourbaki E8 base; E6, E7 are the first 6, 7 roots
            let mut s = vec![vec![1, -1, -1, -1, -1, -1, -1, 1], {
                let mut v = vec![0; 8];
                v[0] = 2;
                v[1] = 2;
                v
            }];
            for i in 0..6 {
                s.push(eps_diff(8, i + 1, i, 1).iter().map(|x| x * 2).collect());
            }
            s.truncate(l);
            s
        }
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `(dim, a)`: algebra dimension and minimal parabolic codimension.
fn table_one(kind: CartanType, l: usize) -> (usize, usize) {
    use CartanType::*;
    match kind {
        A => (l * l + 2 * l, l),
        B | C => (2 * l * l + l, 2 * l - 1),
        D => (2 * l * l - l, 2 * l - 2),
        G => (14, 5),
        F => (52, 15),
        E => match l {
            6 => (78, 16),
            7 => (133, 27),
            _ => (248, 57),
        },
    }
}

pub fn admissible(kind: CartanType, l: usize) -> bool {
    use CartanType::*;
    match kind {
        A => l >= 1,
        B | C => l >= 2,
        D => l >= 4,
        E => (6..=8).contains(&l),
        F => l == 4,
        G => l == 2,
    }
}

impl RootDatum {
    pub fn new(kind: CartanType, rank: usize) -> Result<Self> {
        if !admissible(kind, rank) {
            return invalid(format!("inadmissible type {kind}{rank}"));
        }
        let simple = simple_ambient(kind, rank);
        let l = rank;
        let cartan: Vec<Vec<i64>> = (0..l)
            .map(|i| (0..l).map(|j| 2 * dot(&simple[i], &simple[j]) / dot(&simple[j], &simple[j])).collect())
            .collect();
        // positive roots by raising along simple root strings
        let mut pos: Vec<Vec<i64>> = (0..l).map(|i| unit(l, i, 1)).collect();
        let mut seen: HashMap<Vec<i64>, ()> = pos.iter().map(|v| (v.clone(), ())).collect();
        let mut layer = pos.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for b in &layer {
                for i in 0..l {
                    // p = how far b - k alpha_i stays a root
                    let mut p = 0;
                    let mut c = b.clone();
                    loop {
                        c[i] -= 1;
                        if seen.contains_key(&c) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing: i64 = (0..l).map(|j| b[j] * cartan[j][i]).sum();
                    let q = p - pairing;
                    if q > 0 {
                        let mut up = b.clone();
                        up[i] += 1;
                        if !seen.contains_key(&up) {
                            seen.insert(up.clone(), ());
                            next.push(up);
                        }
                    }
                }
            }
            pos.extend(next.iter().cloned());
            layer = next;
        }
        pos.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let amb_dim = simple[0].len();
        let make = |c: &Vec<i64>| {
            let mut amb = vec![0; amb_dim];
            for (i, &k) in c.iter().enumerate() {
                for d in 0..amb_dim {
                    amb[d] += k * simple[i][d];
                }
            }
            let norm = dot(&amb, &amb);
            Root { coords: c.clone(), ambient: amb, height: c.iter().sum(), norm }
        };
        let mut roots: Vec<Root> = pos.iter().map(make).collect();
        let negs: Vec<Root> = pos.iter().map(|c| make(&c.iter().map(|x| -x).collect())).collect();
        roots.extend(negs);
        let index: HashMap<Vec<i64>, usize> = roots.iter().enumerate().map(|(i, r)| (r.coords.clone(), i)).collect();
        let n = roots.len();
        let mut sum = vec![-1i32; n * n];
        for i in 0..n {
            for j in 0..n {
                let s: Vec<i64> = roots[i].coords.iter().zip(&roots[j].coords).map(|(a, b)| a + b).collect();
                if let Some(&k) = index.get(&s) {
                    sum[i * n + j] = k as i32;
                }
            }
        }
        let max_norm = roots.iter().map(|r| r.norm).max().unwrap();
        let (dim, a) = table_one(kind, rank);
        Ok(RootDatum { kind, rank, dim, a, cartan, roots, index, sum, max_norm })
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn simple(&self, i: usize) -> usize {
        debug_assert!(i < self.rank);
        self.index[&unit(self.rank, i, 1)]
    }

    pub fn index_of(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    /// Root with the given ambient vector.
    pub fn index_of_ambient(&self, v: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r.ambient == v)
    }

    pub fn neg(&self, a: usize) -> usize {
        let n = self.num_positive();
        if a < n {
            a + n
        } else {
            a - n
        }
    }

    pub fn is_positive(&self, a: usize) -> bool {
        a < self.num_positive()
    }

    /// Index of `alpha + beta` if it is a root.
    pub fn sum(&self, a: usize, b: usize) -> Option<usize> {
        let k = self.sum[a * self.num_roots() + b];
        (k >= 0).then_some(k as usize)
    }

    pub fn combo(&self, terms: &[(i64, usize)]) -> Option<usize> {
        let mut c = vec![0; self.rank];
        for &(k, a) in terms {
            for (ci, x) in c.iter_mut().zip(&self.roots[a].coords) {
                *ci += k * x;
            }
        }
        self.index_of(&c)
    }

    pub fn inner(&self, a: usize, b: usize) -> i64 {
        dot(&self.roots[a].ambient, &self.roots[b].ambient)
    }

    /// `<beta, alpha^vee> = 2(beta, alpha)/(alpha, alpha)`.
    pub fn pairing(&self, beta: usize, alpha: usize) -> i64 {
        2 * self.inner(beta, alpha) / self.roots[alpha].norm
    }

    pub fn is_long(&self, a: usize) -> bool {
        self.roots[a].norm == self.max_norm
    }

    pub fn is_simply_laced(&self) -> bool {
        self.roots.iter().all(|r| r.norm == self.max_norm)
    }

    /// Largest `p` with `beta - p alpha` a root.
    pub fn string_down(&self, alpha: usize, beta: usize) -> i64 {
        let mut p = 0;
        let mut c = self.roots[beta].coords.clone();
        loop {
            for (x, y) in c.iter_mut().zip(&self.roots[alpha].coords) {
                *x -= y;
            }
            if self.index.contains_key(&c) {
                p += 1;
            } else {
                return p;
            }
        }
    }

    /// Largest `q` with `beta + q alpha` a root.
    pub fn string_up(&self, alpha: usize, beta: usize) -> i64 {
        self.string_down(self.neg(alpha), beta)
    }

    /// Coefficients of the coroot `h_alpha` in the simple coroots `h_i`.
    pub fn coroot_coords(&self, a: usize) -> Vec<i64> {
        let r = &self.roots[a];
        (0..self.rank)
            .map(|i| {
                let si = self.simple(i);
                let num = r.coords[i] * self.roots[si].norm;
                debug_assert_eq!(num % r.norm, 0);
                num / r.norm
            })
            .collect()
    }

    /// Ambient vector printed in units of the base lattice used here.
    pub fn describe(&self, a: usize) -> String {
        let c: Vec<String> = self.roots[a].coords.iter().map(|x| x.to_string()).collect();
        format!("({})", c.join(","))
    }
}

pub fn build_root_datum(kind: CartanType, rank: usize) -> Result<RootDatum> {
    RootDatum::new(kind, rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expected_roots(kind: CartanType, l: usize) -> usize {
        use CartanType::*;
        match kind {
            A => l * l + l,
            B | C => 2 * l * l,
            D => 2 * l * l - 2 * l,
            G => 12,
            F => 48,
            E => [72, 126, 240][l - 6],
        }
    }

    #[test]
    fn root_counts_and_dim() {
        use CartanType::*;
        let mut cases = vec![(G, 2), (F, 4), (E, 6), (E, 7), (E, 8)];
        for l in 1..=6 {
            cases.push((A, l));
        }
        for l in 2..=6 {
            cases.push((B, l));
            cases.push((C, l));
        }
        for l in 4..=6 {
            cases.push((D, l));
        }
        for (k, l) in cases {
            let d = RootDatum::new(k, l).unwrap();
            assert_eq!(d.num_roots(), expected_roots(k, l), "{k}{l}");
            assert_eq!(d.dim, l + d.num_roots(), "{k}{l}");
            for a in 0..d.num_roots() {
                let na = d.neg(a);
                assert_eq!(d.roots[na].coords, d.roots[a].coords.iter().map(|x| -x).collect::<Vec<_>>());
                // only multiples are +-alpha
                for m in [2, 3] {
                    let c: Vec<i64> = d.roots[a].coords.iter().map(|x| m * x).collect();
                    assert!(d.index_of(&c).is_none());
                }
            }
        }
    }

    #[test]
    fn inadmissible_rejected() {
        assert!(RootDatum::new(CartanType::D, 3).is_err());
        assert!(RootDatum::new(CartanType::G, 3).is_err());
        assert!(RootDatum::new(CartanType::E, 5).is_err());
    }

    #[test]
    fn g2_strings() {
        let d = RootDatum::new(CartanType::G, 2).unwrap();
        let s = d.simple(0);
        let l = d.simple(1);
        assert!(!d.is_long(s) && d.is_long(l));
        assert_eq!(d.string_up(s, l), 3);
        assert_eq!(d.cartan, vec![vec![2, -1], vec![-3, 2]]);
    }
}
