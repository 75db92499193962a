//! Polynomial and finite-ring arithmetic.

pub mod cheb;
pub mod disc;
pub mod expr;
pub mod factored;
pub mod field;
pub mod fpoly;
pub mod mpoly;
pub mod poly;
pub mod prime;
pub mod ring;
pub mod search;

pub use cheb::{chebotarev_search, count_splitting_primes, YPoly};
pub use disc::discriminant;
pub use factored::FactoredElement;
pub use field::FiniteField;
pub use fpoly::FieldPoly;
pub use mpoly::{CoefRing, Integers, MPoly, MultiPoly, PrimeField};
pub use poly::Poly;
pub use ring::{FiniteRing, ResidueRing, TableRing};
pub use search::{
    count_irreducibles, find_detecting_field, find_nonvanishing_point, is_irreducible, lcm_polys_up_to_degree,
    lcm_up_to, splits_distinct_linear, DetectingField,
};
