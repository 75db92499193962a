//! Tables of constants and invariant ideals.

use serde::Serialize;

use crate::error::Result;
use crate::lie::{classify_invariant_ideals, ChevalleyAlgebra};
use crate::polyarith::FiniteField;
use crate::rootsys::{CartanType, RootDatum};

#[derive(Clone, Debug, Serialize)]
pub struct ConstantsRow {
    pub family: &'static str,
    pub rank: usize,
    /// `rank + |roots|`.
    pub dim: usize,
    pub a: usize,
    pub expected_dim: usize,
    pub expected_a: usize,
}

impl ConstantsRow {
    pub fn matches(&self) -> bool {
        self.dim == self.expected_dim && self.a == self.expected_a
    }
}

fn expected(kind: CartanType, l: usize) -> (usize, usize) {
    match kind {
        CartanType::A => (l * l + 2 * l, l),
        CartanType::B | CartanType::C => (2 * l * l + l, 2 * l - 1),
        CartanType::D => (2 * l * l - l, 2 * l - 2),
        CartanType::G => (14, 5),
        CartanType::F => (52, 15),
        CartanType::E => match l {
            6 => (78, 16),
            7 => (133, 27),
            _ => (248, 57),
        },
    }
}

/// `(dim, a)` for the nine families at their smallest listed rank.
pub fn constants_table() -> Result<Vec<ConstantsRow>> {
    let rows = [
        ("A_l", CartanType::A, 2),
        ("B_l", CartanType::B, 2),
        ("C_l", CartanType::C, 3),
        ("D_l", CartanType::D, 4),
        ("G_2", CartanType::G, 2),
        ("F_4", CartanType::F, 4),
        ("E_6", CartanType::E, 6),
        ("E_7", CartanType::E, 7),
        ("E_8", CartanType::E, 8),
    ];
    rows.iter()
        .map(|&(family, kind, l)| {
            let d = RootDatum::new(kind, l)?;
            let (expected_dim, expected_a) = expected(kind, l);
            Ok(ConstantsRow { family, rank: l, dim: d.rank + d.num_roots(), a: d.a, expected_dim, expected_a })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealRow {
    pub label: String,
    pub p: u64,
    /// Largest proper invariant ideal among the candidates, if any.
    pub max_dim: Option<usize>,
    pub expected: Option<usize>,
    pub description: Option<String>,
}

impl IdealRow {
    pub fn matches(&self) -> bool {
        self.max_dim == self.expected
    }
}

/// Invariant ideals of `g(F_p)` for small exceptional characteristics.
pub fn ideal_table() -> Result<Vec<IdealRow>> {
    let cases = [
        (CartanType::A, 2, 3, Some(1)),
        (CartanType::C, 2, 2, Some(6)),
        (CartanType::G, 2, 3, Some(7)),
        (CartanType::A, 2, 2, None),
        (CartanType::A, 2, 5, None),
        (CartanType::G, 2, 2, None),
    ];
    cases
        .iter()
        .map(|&(kind, l, p, expected)| {
            let d = RootDatum::new(kind, l)?;
            let g = ChevalleyAlgebra::new(d.clone(), FiniteField::prime(p)?);
            let ideals = classify_invariant_ideals(&g);
            Ok(IdealRow {
                label: d.label(),
                p,
                max_dim: ideals.first().map(|i| i.dim),
                expected,
                description: ideals.first().map(|i| i.description.clone()),
            })
        })
        .collect()
}
