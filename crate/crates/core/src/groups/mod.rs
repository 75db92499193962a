//! Matrix groups over finite rings: Chevalley groups, closures, orders and
//! congruence filtrations.

pub mod chevalley;
pub mod closure;
pub mod filtration;
pub mod lemmas;
pub mod matrix;
pub mod order;

pub use chevalley::{ChevalleyGroup, Representation};
pub use closure::{closure, derived_subgroup, normal_closure, SmallGroup, Subset, DEFAULT_CAP};
pub use filtration::{
    congruence_image_check, graded_from_subgroup, log_index_in_g1, CongruenceFiltration, CongruenceSubgroupSpec, Level,
};
pub use lemmas::{b2_instance, generation_check, perfect_image_check, perfectness_check};
pub use matrix::{Mat, MatCtx};
pub use order::{center_order, group_order, group_order_mod, index_report, minimal_index, order_report};
