//! Exact residual finiteness growth on small finite groups, and slope fits.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{closure, Mat, MatCtx, SmallGroup, Subset};
use crate::par;

#[derive(Clone, Debug, Serialize)]
pub struct GrowthRecord {
    pub n: usize,
    /// `max D^normal(g)` over nontrivial `g` of length `<= n`.
    pub max_normal_index: u64,
    /// `max D^subgroup(g)` over the same elements.
    pub max_subgroup_index: u64,
    /// Word attaining `max_normal_index`.
    pub argmax_word: Vec<i64>,
    pub search_space: String,
}

/// Exact detection indices of every element of a small group.
pub struct SmallGrowth {
    pub group: SmallGroup,
    /// BFS length and a shortest word per element.
    pub lengths: Vec<(usize, Vec<i64>)>,
    /// `D^normal(g)`: least `|G/N|` over normal `N` missing `g`.
    pub normal_index: Vec<u64>,
    /// `D^subgroup(g)`: least `[G:H]` over subgroups `H` missing `g`.
    pub subgroup_index: Vec<u64>,
    pub num_normal: usize,
    pub num_subgroups: usize,
}

fn least_index(g: &SmallGroup, subs: &[Subset], x: usize) -> u64 {
    let n = g.order();
    subs.iter().filter(|s| !SmallGroup::contains(s, x)).map(|s| (n / SmallGroup::size(s)) as u64).min().unwrap_or(0)
}

impl SmallGrowth {
    /// Letters `i` and `-i` stand for `gens[i-1]` and its inverse.
    pub fn new(m: &MatCtx, gens: &[Mat], cap: usize) -> Result<Self> {
        let elements = closure(m, gens, cap)?;
        if elements.len() > SmallGroup::MAX_ORDER {
            return Err(Error::Infeasible(format!("group of order {} is too large for exact growth", elements.len())));
        }
        let group = SmallGroup::new(m, &elements)?;
        let idx: Vec<usize> = gens.iter().map(|g| elements.get_index_of(g).unwrap()).collect();
        let mut letters: Vec<(i64, usize)> = idx.iter().enumerate().map(|(i, &g)| (i as i64 + 1, g)).collect();
        letters.extend(idx.iter().enumerate().map(|(i, &g)| (-(i as i64) - 1, group.inv(g))));
        let n = group.order();
        let mut lengths: Vec<Option<(usize, Vec<i64>)>> = vec![None; n];
        lengths[group.identity] = Some((0, vec![]));
        let mut queue = std::collections::VecDeque::from([group.identity]);
        while let Some(x) = queue.pop_front() {
            let (l, w) = lengths[x].clone().unwrap();
            for &(c, g) in &letters {
                let y = group.mul(x, g);
                if lengths[y].is_none() {
                    let mut w2 = w.clone();
                    w2.push(c);
                    lengths[y] = Some((l + 1, w2));
                    queue.push_back(y);
                }
            }
        }
        let normals = group.normal_subgroups();
        let subs = group.all_subgroups();
        let normal_index = par::map_range(n, |x| least_index(&group, &normals, x));
        let subgroup_index = par::map_range(n, |x| least_index(&group, &subs, x));
        Ok(SmallGrowth {
            lengths: lengths.into_iter().map(|l| l.expect("generators generate")).collect(),
            num_normal: normals.len(),
            num_subgroups: subs.len(),
            group,
            normal_index,
            subgroup_index,
        })
    }

    pub fn diameter(&self) -> usize {
        self.lengths.iter().map(|l| l.0).max().unwrap_or(0)
    }

    pub fn records(&self, n_max: usize) -> Vec<GrowthRecord> {
        let space = format!("all {} normal subgroups and {} subgroups", self.num_normal, self.num_subgroups);
        (1..=n_max)
            .map(|n| {
                let cands: Vec<usize> =
                    (0..self.group.order()).filter(|&x| x != self.group.identity && self.lengths[x].0 <= n).collect();
                let arg = cands.iter().copied().max_by_key(|&x| (self.normal_index[x], std::cmp::Reverse(x)));
                GrowthRecord {
                    n,
                    max_normal_index: arg.map_or(0, |x| self.normal_index[x]),
                    max_subgroup_index: cands.iter().map(|&x| self.subgroup_index[x]).max().unwrap_or(0),
                    argmax_word: arg.map_or(vec![], |x| self.lengths[x].1.clone()),
                    search_space: space.clone(),
                }
            })
            .collect()
    }
}

/// Growth records for `n = 1..=n_max` in a group small enough for its full
/// subgroup lattice.
pub fn exact_growth_small(m: &MatCtx, gens: &[Mat], n_max: usize, cap: usize) -> Result<Vec<GrowthRecord>> {
    Ok(SmallGrowth::new(m, gens, cap)?.records(n_max))
}

#[derive(Clone, Debug, Serialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root mean square residual.
    pub residual: f64,
}

/// Least-squares slope of `log y` against `log x`.
pub fn growth_slope(points: &[(f64, f64)]) -> Result<SlopeFit> {
    let mut xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.dedup();
    if xs.len() < 4 {
        return Err(Error::InvalidInput("need at least 4 records with distinct n".into()));
    }
    if points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return Err(Error::InvalidInput("values must be positive".into()));
    }
    if points.iter().all(|p| p.1 == points[0].1) {
        return Err(Error::InvalidInput("degenerate data: constant values".into()));
    }
    let lx: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (lx.iter().zip(&ly).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum::<f64>() / n).sqrt();
    Ok(SlopeFit { slope, intercept, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{ChevalleyGroup, Representation, DEFAULT_CAP};
    use crate::polyarith::FiniteField;
    use crate::rootsys::{CartanType, RootDatum};
    use std::collections::HashSet;

    fn sl(l: usize, q: u64) -> ChevalleyGroup {
        let f = FiniteField::of_order(q).unwrap();
        ChevalleyGroup::new(RootDatum::new(CartanType::A, l).unwrap(), Representation::Defining, &f).unwrap()
    }

    #[test]
    fn sl2_f3_exact() {
        let g = sl(1, 3);
        let sg = SmallGrowth::new(&g.m, &g.generators(), DEFAULT_CAP).unwrap();
        let minus = sg.group.elements.iter().position(|x| *x == g.m.from_codes(&[2, 0, 0, 2])).unwrap();
        // only the trivial normal subgroup misses -I; the order-3 subgroups do too
        assert_eq!(sg.normal_index[minus], 24);
        assert_eq!(sg.subgroup_index[minus], 8);
        // oracle: subgroups generated by pairs of elements
        let n = sg.group.order();
        let mut pairs: HashSet<Subset> = HashSet::new();
        for a in 0..n {
            for b in a..n {
                pairs.insert(sg.group.generate(&[a, b]));
            }
        }
        assert_eq!(pairs.len(), sg.num_subgroups);
        let pairs: Vec<Subset> = pairs.into_iter().collect();
        for x in 0..n {
            assert_eq!(least_index(&sg.group, &pairs, x), sg.subgroup_index[x]);
            assert!(sg.subgroup_index[x] <= sg.normal_index[x]);
        }
        let recs = sg.records(sg.diameter());
        for w in recs.windows(2) {
            assert!(w[0].max_normal_index <= w[1].max_normal_index);
            assert!(w[0].max_subgroup_index <= w[1].max_subgroup_index);
        }
        for r in &recs {
            assert!(r.max_subgroup_index <= r.max_normal_index);
        }
        assert_eq!(recs.last().unwrap().max_normal_index, 24);
    }

    #[test]
    fn sl3_f2_exact() {
        let g = sl(2, 2);
        let sg = SmallGrowth::new(&g.m, &g.generators(), DEFAULT_CAP).unwrap();
        assert_eq!(sg.num_normal, 2);
        let recs = sg.records(sg.diameter());
        let last = recs.last().unwrap();
        assert_eq!((last.max_normal_index, last.max_subgroup_index), (168, 7));
    }

    #[test]
    fn slopes() {
        let pts: Vec<(f64, f64)> = (1..=6).map(|n| (n as f64, (n * n * n) as f64)).collect();
        let f = growth_slope(&pts).unwrap();
        assert!((f.slope - 3.0).abs() < 1e-9 && f.residual < 1e-9);
        assert!(growth_slope(&pts[..3]).is_err());
        let flat: Vec<(f64, f64)> = (1..=6).map(|n| (n as f64, 5.0)).collect();
        assert!(growth_slope(&flat).is_err());
    }
}
