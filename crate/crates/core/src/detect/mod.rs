//! Detecting finite quotients for words in finitely generated linear groups.

pub mod gens;
pub mod pipeline;

pub use gens::{sl2_fpt_elementary, sl2_z_elementary, sl2_z_ts, Coeffs, FieldSpec, GeneratorFile, GeneratorSet};
pub use pipeline::{
    detect, detect_all, detect_function_field, detect_rational, evaluate_word, image_at, select_invariant, verify_certificate,
    DetectionCertificate, Invariant, InvariantKind, Target, WordAudit, PRIME_LIMIT,
};
