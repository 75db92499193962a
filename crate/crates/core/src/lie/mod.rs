//! Chevalley Lie algebras, `F_p`-subspaces and graded subalgebras.

pub mod algebra;
pub mod graded;
pub mod lemmas;
pub mod subspace;

pub use algebra::{ChevalleyAlgebra, LieAlgebra, LieVector};
pub use graded::{graded_codim, GradedSubalgebra};
pub use lemmas::{check_action_formulas, check_codim_lemma, check_invariant_span, classify_invariant_ideals, random_small_codim_pair, CodimReport, IdealRecord};
pub use subspace::FpSubspace;

#[cfg(test)]
mod tests;
