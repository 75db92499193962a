//! Canonical prime-power factorisations, used for huge witness parameters.

use std::collections::BTreeMap;
use std::fmt::Display;

use num_bigint::BigUint;
use num_traits::One;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredElement<K: Ord> {
    factors: BTreeMap<K, u64>,
}

impl<K: Ord + Clone> Default for FactoredElement<K> {
    fn default() -> Self {
        FactoredElement { factors: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> FactoredElement<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (K, u64)>) -> Self {
        let mut f = Self::new();
        for (k, e) in pairs {
            f.insert(k, e);
        }
        f
    }

    pub fn insert(&mut self, k: K, e: u64) {
        if e > 0 {
            *self.factors.entry(k).or_insert(0) += e;
        }
    }

    pub fn factors(&self) -> &BTreeMap<K, u64> {
        &self.factors
    }

    pub fn multiplicity(&self, k: &K) -> u64 {
        self.factors.get(k).copied().unwrap_or(0)
    }

    pub fn pow(&self, e: u64) -> Self {
        FactoredElement { factors: self.factors.iter().map(|(k, &v)| (k.clone(), v * e)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut f = self.clone();
        for (k, &e) in &o.factors {
            f.insert(k.clone(), e);
        }
        f
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }
}

impl FactoredElement<u64> {
    pub fn expand(&self) -> BigUint {
        self.factors.iter().fold(BigUint::one(), |acc, (&p, &e)| acc * BigUint::from(p).pow(e as u32))
    }

    /// Natural logarithm of the value.
    pub fn ln(&self) -> f64 {
        self.factors.iter().map(|(&p, &e)| e as f64 * (p as f64).ln()).sum()
    }
}

impl FactoredElement<Poly> {
    pub fn expand(&self, p: u64) -> Poly {
        self.factors.iter().fold(Poly::one(p), |acc, (f, &e)| acc.mul(&f.pow(e)))
    }

    pub fn degree(&self) -> u64 {
        self.factors.iter().map(|(f, &e)| f.deg0() as u64 * e).sum()
    }
}

/// JSON object `{"factor": exponent}`.
impl<K: Ord + Display> Serialize for FactoredElement<K> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.factors.len()))?;
        for (k, e) in &self.factors {
            m.serialize_entry(&k.to_string(), e)?;
        }
        m.end()
    }
}
