//! Orders of finite Chevalley groups and minimal indices of proper subgroups.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{CartanType, RootDatum};

/// Degrees of the basic invariants of the Weyl group.
pub fn weyl_degrees(d: &RootDatum) -> Vec<u32> {
    let l = d.rank as u32;
    match d.kind {
        CartanType::A => (2..=l + 1).collect(),
        CartanType::B | CartanType::C => (1..=l).map(|i| 2 * i).collect(),
        CartanType::D => {
            let mut v: Vec<u32> = (1..l).map(|i| 2 * i).collect();
            v.push(l);
            v.sort_unstable();
            v
        }
        CartanType::G => vec![2, 6],
        CartanType::F => vec![2, 6, 8, 12],
        CartanType::E => match l {
            6 => vec![2, 5, 6, 8, 9, 12],
            7 => vec![2, 6, 8, 10, 12, 14, 18],
            _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
        },
    }
}

fn check_q(q: u64) -> Result<()> {
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    let p = if q % p == 0 { p } else { q };
    let mut r = q;
    while r % p == 0 {
        r /= p;
    }
    if q < 2 || r != 1 {
        return Err(Error::InvalidInput(format!("{q} is not a prime power")));
    }
    Ok(())
}

/// `|G(F_q)|` for the simply connected group: `q^N prod (q^{d_i} - 1)`.
pub fn group_order(d: &RootDatum, q: u64) -> Result<BigUint> {
    check_q(q)?;
    let qb = BigUint::from(q);
    let mut o = Pow::pow(&qb, d.num_positive() as u32);
    for e in weyl_degrees(d) {
        o *= Pow::pow(&qb, e) - BigUint::one();
    }
    Ok(o)
}

/// `|G(O/pi^k)|` with residue field of order `q`: `|G(F_q)| q^{dim (k-1)}`.
pub fn group_order_mod(d: &RootDatum, q: u64, k: u32) -> Result<BigUint> {
    let base = group_order(d, q)?;
    Ok(base * Pow::pow(&BigUint::from(q), d.dim as u32 * (k.max(1) - 1)))
}

/// Order of the center of the simply connected group over `F_q`.
pub fn center_order(d: &RootDatum, q: u64) -> Result<u64> {
    check_q(q)?;
    let l = d.rank as u64;
    Ok(match d.kind {
        CartanType::A => (l + 1).gcd(&(q - 1)),
        CartanType::B | CartanType::C => 2u64.gcd(&(q - 1)),
        CartanType::D => {
            let ql = (0..l).fold(1u64, |a, _| a.wrapping_mul(q) % 4);
            4u64.gcd(&((ql + 3) % 4))
        }
        CartanType::E if l == 6 => 3u64.gcd(&(q - 1)),
        CartanType::E if l == 7 => 2u64.gcd(&(q - 1)),
        _ => 1,
    })
}

/// Dimension of the representation used for `G`: defining for type A,
/// adjoint otherwise.
pub fn embedding_dim(d: &RootDatum) -> usize {
    if d.kind == CartanType::A {
        d.rank + 1
    } else {
        d.dim
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderReport {
    pub label: String,
    pub q: u64,
    #[serde(serialize_with = "crate::serde_big::as_string")]
    pub order: BigUint,
    pub center: u64,
    pub dim: usize,
    /// `|G/Z| >= q^dim / (2d)`
    pub lower_holds: bool,
    /// `|G| <= q^dim`, i.e. the constant 1 suffices in the upper bound.
    pub upper_holds: bool,
}

pub fn order_report(d: &RootDatum, q: u64) -> Result<OrderReport> {
    let order = group_order(d, q)?;
    let center = center_order(d, q)?;
    let qd = Pow::pow(&BigUint::from(q), d.dim as u32);
    let quot = &order / center;
    let dd = embedding_dim(d) as u64;
    Ok(OrderReport {
        label: d.label(),
        q,
        center,
        dim: d.dim,
        lower_holds: quot * BigUint::from(2 * dd) >= qd,
        upper_holds: order <= qd,
        order,
    })
}

/// Minimal index of a proper subgroup of `G(F_q)`, for types A and C2.
pub fn minimal_index(d: &RootDatum, q: u64) -> Result<BigUint> {
    check_q(q)?;
    let qb = BigUint::from(q);
    let proj = |n: u32| (Pow::pow(&qb, n) - BigUint::one()) / (&qb - BigUint::one());
    match (d.kind, d.rank) {
        (CartanType::A, 1) => Ok(match q {
            2 => 2u32.into(),
            3 => 3u32.into(),
            5 | 7 | 11 => q.into(),
            9 => 6u32.into(),
            _ => BigUint::from(q + 1),
        }),
        (CartanType::A, 3) if q == 2 => Ok(8u32.into()),
        (CartanType::A, l) => Ok(proj(l as u32 + 1)),
        (CartanType::B | CartanType::C, 2) => Ok(match q {
            2 => 2u32.into(),
            3 => 27u32.into(),
            _ => proj(4),
        }),
        _ => Err(Error::Unsupported(format!("minimal index for {}", d.label()))),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IndexReport {
    pub label: String,
    pub q: u64,
    #[serde(serialize_with = "crate::serde_big::as_string")]
    pub index: BigUint,
    pub a: usize,
    /// `index >= q^a / 2`
    pub lower_holds: bool,
    /// `index <= 2 q^a`
    pub upper_holds: bool,
}

impl IndexReport {
    pub fn holds(&self) -> bool {
        self.lower_holds && self.upper_holds
    }
}

pub fn index_report(d: &RootDatum, q: u64) -> Result<IndexReport> {
    let index = minimal_index(d, q)?;
    let qa = Pow::pow(&BigUint::from(q), d.a as u32);
    Ok(IndexReport {
        label: d.label(),
        q,
        lower_holds: &index * 2u32 >= qa,
        upper_holds: index <= &qa * 2u32,
        a: d.a,
        index,
    })
}
