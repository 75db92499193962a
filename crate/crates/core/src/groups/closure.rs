//! Subgroup closures by breadth-first search, normal closures and Cayley
//! tables for very small groups.

use std::collections::HashSet;

use indexmap::IndexSet;

use super::matrix::{Mat, MatCtx};
use crate::error::{Error, Result};
use crate::par;

pub const DEFAULT_CAP: usize = 1_000_000;

/// The subgroup generated by `gens`, in BFS order from the identity.
///
/// Each frontier is multiplied out in parallel and merged in order, so the
/// result is identical in both execution modes.
pub fn closure(m: &MatCtx, gens: &[Mat], cap: usize) -> Result<IndexSet<Mat>> {
    let mut set = IndexSet::new();
    set.insert(m.identity());
    let mut start = 0;
    while start < set.len() {
        let end = set.len();
        let frontier: Vec<&Mat> = (start..end).map(|i| &set[i]).collect();
        let prods: Vec<Vec<Mat>> = par::map(&frontier, |x| gens.iter().map(|g| m.mul(x, g)).collect());
        for y in prods.into_iter().flatten() {
            if !set.contains(&y) {
                if set.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                set.insert(y);
            }
        }
        start = end;
    }
    Ok(set)
}

/// Smallest subgroup containing `seeds` and normalised by `group_gens`.
/// Returns the subgroup and a generating set for it.
pub fn normal_closure(m: &MatCtx, seeds: &[Mat], group_gens: &[Mat], cap: usize) -> Result<(IndexSet<Mat>, Vec<Mat>)> {
    let mut gens: Vec<Mat> = seeds.iter().filter(|s| !m.is_identity(s)).cloned().collect();
    let inv: Vec<Mat> = group_gens.iter().map(|g| m.inverse(g).expect("invertible generator")).collect();
    loop {
        let set = closure(m, &gens, cap)?;
        let mut added = false;
        let mut i = 0;
        while i < gens.len() {
            for (g, gi) in group_gens.iter().zip(&inv) {
                let c = m.mul(&m.mul(g, &gens[i]), gi);
                if !set.contains(&c) && !gens.contains(&c) {
                    gens.push(c);
                    added = true;
                }
            }
            if added {
                break;
            }
            i += 1;
        }
        if !added {
            return Ok((set, gens));
        }
    }
}

/// Closure of the commutators of pairs of generators, normalised by the
/// generators: the derived subgroup.
pub fn derived_subgroup(m: &MatCtx, gens: &[Mat], cap: usize) -> Result<IndexSet<Mat>> {
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = m.commutator(a, b);
            if !m.is_identity(&c) && !comms.contains(&c) {
                comms.push(c);
            }
        }
    }
    Ok(normal_closure(m, &comms, gens, cap)?.0)
}

/// Normality check: conjugates of subgroup generators by group generators
/// stay inside.
pub fn is_normalised(m: &MatCtx, sub: &IndexSet<Mat>, sub_gens: &[Mat], group_gens: &[Mat]) -> bool {
    group_gens.iter().all(|g| {
        let gi = m.inverse(g).expect("invertible");
        sub_gens.iter().all(|h| sub.contains(&m.mul(&m.mul(g, h), &gi)))
    })
}

/// Subsets of a small group as bit vectors.
pub type Subset = Vec<u64>;

fn bit(s: &Subset, i: usize) -> bool {
    s[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(s: &mut Subset, i: usize) {
    s[i / 64] |= 1 << (i % 64);
}

/// A group with a full multiplication table.
pub struct SmallGroup {
    pub elements: Vec<Mat>,
    table: Vec<u32>,
    inv: Vec<u32>,
    pub identity: usize,
}

impl SmallGroup {
    pub const MAX_ORDER: usize = 6000;

    pub fn new(m: &MatCtx, elements: &IndexSet<Mat>) -> Result<Self> {
        let n = elements.len();
        if n > Self::MAX_ORDER {
            return Err(Error::Infeasible(format!("Cayley table for order {n}")));
        }
        let rows: Vec<Vec<u32>> = par::map_range(n, |i| {
            (0..n).map(|j| elements.get_index_of(&m.mul(&elements[i], &elements[j])).expect("closed set") as u32).collect()
        });
        let table: Vec<u32> = rows.into_iter().flatten().collect();
        let identity = elements.get_index_of(&m.identity()).expect("identity present");
        let inv = (0..n).map(|i| (0..n).find(|&j| table[i * n + j] as usize == identity).expect("inverse") as u32).collect();
        Ok(SmallGroup { elements: elements.iter().cloned().collect(), table, inv, identity })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn empty(&self) -> Subset {
        vec![0; self.order().div_ceil(64)]
    }

    pub fn contains(s: &Subset, i: usize) -> bool {
        bit(s, i)
    }

    pub fn size(s: &Subset) -> usize {
        s.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn members(&self, s: &Subset) -> Vec<usize> {
        (0..self.order()).filter(|&i| bit(s, i)).collect()
    }

    /// Subgroup generated by a subset.
    pub fn generate(&self, gens: &[usize]) -> Subset {
        let mut s = self.empty();
        set_bit(&mut s, self.identity);
        let mut list = vec![self.identity];
        let mut k = 0;
        while k < list.len() {
            let x = list[k];
            for &g in gens {
                let y = self.mul(x, g);
                if !bit(&s, y) {
                    set_bit(&mut s, y);
                    list.push(y);
                }
            }
            k += 1;
        }
        s
    }

    pub fn join(&self, a: &Subset, b: &Subset) -> Subset {
        let mut gens = self.members(a);
        gens.extend(self.members(b));
        self.generate(&gens)
    }

    pub fn normal_closure(&self, gens: &[usize]) -> Subset {
        let mut all: Vec<usize> = Vec::new();
        for &h in gens {
            for g in 0..self.order() {
                all.push(self.mul(self.mul(g, h), self.inv(g)));
            }
        }
        all.sort_unstable();
        all.dedup();
        self.generate(&all)
    }

    pub fn is_normal(&self, s: &Subset) -> bool {
        let mem = self.members(s);
        (0..self.order()).all(|g| mem.iter().all(|&h| bit(s, self.mul(self.mul(g, h), self.inv(g)))))
    }

    /// Every subgroup, as joins of cyclic subgroups.
    pub fn all_subgroups(&self) -> Vec<Subset> {
        let mut seen: HashSet<Subset> = HashSet::new();
        let cyclic: Vec<Subset> = {
            let mut c = Vec::new();
            let mut cs = HashSet::new();
            for g in 0..self.order() {
                let s = self.generate(&[g]);
                if cs.insert(s.clone()) {
                    c.push(s);
                }
            }
            c
        };
        let mut list: Vec<Subset> = Vec::new();
        for c in &cyclic {
            if seen.insert(c.clone()) {
                list.push(c.clone());
            }
        }
        let mut k = 0;
        while k < list.len() {
            let cur = list[k].clone();
            for c in &cyclic {
                let j = self.join(&cur, c);
                if seen.insert(j.clone()) {
                    list.push(j);
                }
            }
            k += 1;
        }
        list.sort_by_key(|s| (Self::size(s), s.clone()));
        list
    }

    /// Every normal subgroup, as joins of normal closures of single elements.
    pub fn normal_subgroups(&self) -> Vec<Subset> {
        let mut seen: HashSet<Subset> = HashSet::new();
        let mut minimal: Vec<Subset> = Vec::new();
        for g in 0..self.order() {
            let s = self.normal_closure(&[g]);
            if seen.insert(s.clone()) {
                minimal.push(s);
            }
        }
        let mut list = minimal.clone();
        let mut k = 0;
        while k < list.len() {
            let cur = list[k].clone();
            for c in &minimal {
                let j = self.join(&cur, c);
                if seen.insert(j.clone()) {
                    list.push(j);
                }
            }
            k += 1;
        }
        list.sort_by_key(|s| (Self::size(s), s.clone()));
        list
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::chevalley::{ChevalleyGroup, Representation};
    use crate::polyarith::FiniteField;
    use crate::rootsys::{CartanType, RootDatum};

    fn sl(n: usize, q: u64) -> ChevalleyGroup {
        ChevalleyGroup::new(RootDatum::new(CartanType::A, n - 1).unwrap(), Representation::Defining, &FiniteField::of_order(q).unwrap()).unwrap()
    }

    #[test]
    fn closure_examples() {
        let g = sl(2, 3);
        let s = closure(&g.m, &[g.root_element(0, 1), g.root_element(1, 1)], DEFAULT_CAP).unwrap();
        assert_eq!(s.len(), 24);
        let g = sl(3, 2);
        let s = closure(&g.m, &g.generators(), DEFAULT_CAP).unwrap();
        assert_eq!(s.len(), 168);
        assert_eq!(closure(&g.m, &[g.m.identity()], DEFAULT_CAP).unwrap().len(), 1);
        assert!(matches!(closure(&g.m, &g.generators(), 100), Err(Error::CapExceeded { cap: 100 })));
    }

    #[test]
    fn modes_give_identical_closures() {
        let g = sl(3, 2);
        par::set_mode(par::Mode::Sequential);
        let a = closure(&g.m, &g.generators(), DEFAULT_CAP).unwrap();
        par::set_mode(par::Mode::Parallel);
        let b = closure(&g.m, &g.generators(), DEFAULT_CAP).unwrap();
        assert!(a.iter().eq(b.iter()));
    }

    #[test]
    fn subgroup_lattices() {
        let g = sl(2, 3);
        let s = closure(&g.m, &g.generators(), DEFAULT_CAP).unwrap();
        let sg = SmallGroup::new(&g.m, &s).unwrap();
        let subs = sg.all_subgroups();
        // SL(2,3): 15 subgroups, normal ones {1}, Z, Q8, G
        assert_eq!(subs.len(), 15);
        let normal = sg.normal_subgroups();
        let sizes: Vec<usize> = normal.iter().map(SmallGroup::size).collect();
        assert_eq!(sizes, vec![1, 2, 8, 24]);
        assert!(normal.iter().all(|n| sg.is_normal(n)));
        // pairs generate every subgroup
        let mut pairs: HashSet<Subset> = HashSet::new();
        for a in 0..24 {
            for b in 0..24 {
                pairs.insert(sg.generate(&[a, b]));
            }
        }
        assert_eq!(pairs.len(), 15);
    }

    #[test]
    fn normal_closure_and_derived() {
        let g = sl(2, 3);
        let gens = g.generators();
        let minus = g.m.from_codes(&[2, 0, 0, 2]);
        let (z, _) = normal_closure(&g.m, &[minus], &gens, DEFAULT_CAP).unwrap();
        assert_eq!(z.len(), 2);
        assert_eq!(derived_subgroup(&g.m, &gens, DEFAULT_CAP).unwrap().len(), 8);
    }
}
