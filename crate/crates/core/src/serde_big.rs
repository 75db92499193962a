use num_bigint::BigUint;
use serde::Serializer;

/// Decimal string form for big integers in reports.
pub(crate) fn as_string<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}
